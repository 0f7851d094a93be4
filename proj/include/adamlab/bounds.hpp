#pragma once

#include <cstdint>
#include <vector>

#include "adamlab/derived_constants.hpp"
#include "adamlab/parallel.hpp"

namespace adamlab {

/// Membership of (beta1, beta2) in the scopes of the two bounds and the two
/// supporting per-step results. All four are decided by exact rational
/// comparisons, so boundary cases like beta2 = 2*beta1 - beta1^2 (inclusive)
/// versus beta2 = 2*beta1^2 (exclusive) classify correctly.
struct RegionClass {
  bool bock_scope = false;       // gamma = beta1^2/sqrt(beta2) < 1
  bool result33_scope = false;   // beta2 < 2*beta1^2 and beta2 >= 2*beta1 - beta1^2
  bool lemma31_ok = false;       // rho = beta2/beta1^2 in (1, 2)
  bool lemma32_ok = false;       // beta2 >= 2*beta1 - beta1^2
};

RegionClass classify_region(const Rational& beta1, const Rational& beta2);
RegionClass classify_region(double beta1, double beta2);

/// (2/(1-gamma)) * (1/sqrt(1-beta2)) * g_norm.
/// Throws ScopeError when gamma is undefined or gamma >= 1.
double kb_bound(const DerivedConstants& constants, double g_norm);

/// (2 + sqrt(tau)) * sqrt(1 + K*(x1^2/x2)*ln T) * g_norm.
/// Throws ScopeError naming the violated constraint when (beta1, beta2) is
/// outside the proven region.
double new_bound(const DerivedConstants& constants, std::int64_t T, double g_norm);

struct RegionCell {
  double beta1 = 0.0;
  double beta2 = 0.0;
  RegionClass cls;
};

/// resolution x resolution cell centers of (0,1)^2, row-major with beta2
/// varying fastest. Cell centers are formed as exact rationals
/// (2i+1)/(2*resolution) before classification.
std::vector<RegionCell> region_grid(int resolution,
                                    ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace adamlab
