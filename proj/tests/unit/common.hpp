#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include <gtest/gtest.h>

#include "cfsgauge/error.hpp"
#include "cfsgauge/random.hpp"

namespace testutil {

// Error code thrown by fn, or nullopt if it returned normally.
inline std::optional<cfsgauge::Errc> thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const cfsgauge::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define EXPECT_ERRC(expr, code) \
  EXPECT_EQ(::testutil::thrown_code([&] { (void)(expr); }), std::optional<cfsgauge::Errc>(code))

// Runs a property over `cases` seeded generators.
inline void for_seeds(int cases, std::uint64_t base, const std::function<void(cfsgauge::Random&)>& prop) {
  for (int i = 0; i < cases; ++i) {
    cfsgauge::Random rng(base + static_cast<std::uint64_t>(i));
    SCOPED_TRACE("seed " + std::to_string(base + i));
    prop(rng);
  }
}

}  // namespace testutil
