#pragma once

#include <string>
#include <utility>

namespace testutil {

// Run f, which must throw E; return the exception message (or a marker that
// fails any substring check if nothing was thrown).
template <class E, class F>
std::string thrown_message(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const E& e) {
    return e.what();
  }
  return "<no exception thrown>";
}

inline bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace testutil
