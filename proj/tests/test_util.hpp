#pragma once

#include <optional>
#include <utility>

#include "vpow/error.hpp"

namespace test_util {

// Runs f and reports which error category it threw, if any.
template <class F>
std::optional<vpow::ErrorCategory> thrown_category(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const vpow::Error& e) {
    return e.category();
  }
  return std::nullopt;
}

}  // namespace test_util
