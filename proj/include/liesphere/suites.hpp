#pragma once

// Verification suites shared by the command-line tool and the acceptance
// runner. Each returns a pass flag and one report line per case.

#include <cstdint>
#include <string>
#include <vector>

#include "liesphere/reconstruction.hpp"

namespace liesphere {

struct SuiteReport {
  bool pass = true;
  std::vector<std::string> lines;
  double max_value = 0.0;  // suite-specific headline number
};

// Smooth non-constant specs with kappa1 >= 0.5 on intervals of length <= 2.
std::vector<CurvatureSpec> roundtrip_specs();

struct LabelledSpec {
  std::string name;
  CurvatureSpec spec;
  bool critical = false;
};

// Six critical and six non-critical specs on [0, 1].
std::vector<LabelledSpec> criticality_specs();

// analyze(reconstruct(spec)) recovers kappa within 1e-6 and the congruence
// element between copies started at I and g is recovered within 1e-8.
SuiteReport run_roundtrip_suite(std::uint64_t seed);

// analyze(g . gamma) matches analyze(gamma) in s and kappa within 1e-8 for
// `count` random g, on an orbit and on a reconstructed curve.
SuiteReport run_invariance_suite(std::uint64_t seed, int count = 20);

// Cartan residuals along critical orbits with the momentum fiber stay below
// 1e-6; perturbing any single p_a by 0.1 pushes one above 1e-2.
SuiteReport run_cartan_suite();

// is_critical, the Euler-Lagrange residuals and the first-variation basis
// sweep classify every spec identically and as labelled.
SuiteReport run_criticality_suite();

std::string format_short(double x);

}  // namespace liesphere
