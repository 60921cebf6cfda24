#pragma once

#include <gtest/gtest.h>

#include <random>

#include "liesphere/error.hpp"

#define EXPECT_ERROR(stmt, expected_kind)                                                    \
  do {                                                                                       \
    try {                                                                                    \
      stmt;                                                                                  \
      ADD_FAILURE() << "expected " << liesphere::to_string(expected_kind);                  \
    } catch (const liesphere::Error& e) {                                                    \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                                        \
    }                                                                                        \
  } while (0)

inline std::mt19937_64 test_rng(std::uint64_t salt = 0) { return std::mt19937_64(20240917u + salt); }
