// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <nbzeta/frac_net.hpp>
#include <nbzeta/types.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nbzeta {

enum class RegionSource
{
    exact_d1,
    exact_dd,
    empirical
};

std::string to_string(RegionSource source);
RegionSource convert_region_source(const std::string& name);

/**
 * The zero-free region {Re z > (1 + delta_eff |z|^2) / 2}.
 *
 * delta_eff already carries the exponent of its source: delta^2 (exact,
 * d = 1), delta^{2/d} (exact, d >= 1) or Delta_N^{1/d} (empirical).
 */
struct ZeroFreeRegion
{
    double delta_eff = 1.0;
    RegionSource source = RegionSource::exact_d1;
    int d = 1;
    std::optional<double> alpha;
};

/// Region from a known distance delta = ||1 - f||_2.
ZeroFreeRegion exact_region(double delta, int d);

/// Region from a high-probability bound Delta_N on ||1 - f||^2.
ZeroFreeRegion empirical_region(double delta_n, int d, double alpha);

bool contains(const ZeroFreeRegion& region, const Complex& z);

/// Boundary threshold (1 + delta_eff |z|^2)/2 for membership.
double boundary_threshold(const ZeroFreeRegion& region, const Complex& z);

struct BoundaryPoint
{
    double a = 0.0;
    double b_plus = 0.0;
    double b_minus = 0.0;
};

/// b(a) = sqrt(max(0, (2a - 1)/delta_eff - a^2)) on n_pts equally spaced a in [a_min, a_max].
std::vector<BoundaryPoint> boundary_polyline(const ZeroFreeRegion& region, double a_min, double a_max, int n_pts);

/// sup |Im z| over the region within Re z in (0, 1]: sqrt(max(0, 1/delta_eff - 1)).
double max_height_in_strip(const ZeroFreeRegion& region);

enum class RegionOrder
{
    larger,
    smaller,
    equal
};

std::string to_string(RegionOrder order);

/// Regions are nested: smaller delta_eff means a larger region.
RegionOrder compare_regions(const ZeroFreeRegion& r1, const ZeroFreeRegion& r2);

/// Monte-Carlo record behind an empirical region.
struct Certificate
{
    std::string net_hash;
    std::uint64_t N = 0;
    double alpha = 0.1;
    std::uint64_t seed = 0;
    double empirical_risk = 0.0;
    double penalty = 0.0;
    double delta_N = 0.0;
    double c_l1 = 0.0;
    ZeroFreeRegion region;
};

/// (1 + c_l1^2) sqrt(2 ln(2/alpha) / N).
double hoeffding_penalty(double c_l1, std::uint64_t n, double alpha);

/**
 * Draws N uniform points on (0,1)^d (chunked, seeded by (seed, chunk)),
 * averages (1 - f(x))^2 and adds the Hoeffding penalty. The result does not
 * depend on `workers`.
 */
Certificate monte_carlo_certificate(const FracNet& net, std::uint64_t N, double alpha, std::uint64_t seed,
                                    int workers = 1);

/// Number of samples above which a run is reported infeasible (about 1e15 evaluations).
inline constexpr double kFeasibleSampleBudget = 1e15;

struct SamplePlan
{
    /// ceil(2 ln(2/alpha) (1 + c_l1^2)^2 / target^{2d}) as a real number.
    double n_real = 0.0;
    /// The same count when it fits in 64 bits.
    std::optional<std::uint64_t> n_exact;
    bool saturated = false;
    bool infeasible = false;
};

/**
 * Smallest N for which the penalty alone is at most target^d. A lower bound
 * on the samples needed for delta_eff = target (empirical risk taken as 0).
 */
SamplePlan plan_samples(double target_delta_eff, int d, double alpha, double c_l1);

} // namespace nbzeta
