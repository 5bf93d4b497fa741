// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/certificates.hpp>

#include <nbzeta/error.hpp>
#include <nbzeta/io.hpp>
#include <nbzeta/sampling.hpp>

#include <cmath>
#include <limits>

namespace nbzeta {
namespace {

void check_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
}

} // namespace

std::string to_string(RegionSource source)
{
    switch (source) {
    case RegionSource::exact_d1: return "exact_d1";
    case RegionSource::exact_dd: return "exact_dd";
    case RegionSource::empirical: return "empirical";
    }
    return "unknown";
}

RegionSource convert_region_source(const std::string& name)
{
    if (name == "exact_d1") return RegionSource::exact_d1;
    if (name == "exact_dd") return RegionSource::exact_dd;
    if (name == "empirical") return RegionSource::empirical;
    throw DomainError("unknown region source: " + name);
}

ZeroFreeRegion exact_region(double delta, int d)
{
    if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("exact_region: delta must be > 0");
    if (d < 1) throw DomainError("exact_region: d must be >= 1");
    ZeroFreeRegion r;
    r.d = d;
    if (d == 1) {
        r.delta_eff = delta * delta;
        r.source = RegionSource::exact_d1;
    } else {
        r.delta_eff = std::pow(delta, 2.0 / d);
        r.source = RegionSource::exact_dd;
    }
    return r;
}

ZeroFreeRegion empirical_region(double delta_n, int d, double alpha)
{
    if (!(delta_n > 0.0) || !std::isfinite(delta_n)) throw DomainError("empirical_region: Delta_N must be > 0");
    if (d < 1) throw DomainError("empirical_region: d must be >= 1");
    check_alpha(alpha);
    ZeroFreeRegion r;
    r.d = d;
    r.delta_eff = d == 1 ? delta_n : std::pow(delta_n, 1.0 / d);
    r.source = RegionSource::empirical;
    r.alpha = alpha;
    return r;
}

double boundary_threshold(const ZeroFreeRegion& region, const Complex& z)
{
    return 0.5 * (1.0 + region.delta_eff * std::norm(z));
}

bool contains(const ZeroFreeRegion& region, const Complex& z)
{
    return z.real() > boundary_threshold(region, z);
}

std::vector<BoundaryPoint> boundary_polyline(const ZeroFreeRegion& region, double a_min, double a_max, int n_pts)
{
    if (!(a_min >= 0.5 && a_min < a_max)) throw DomainError("boundary_polyline: need 1/2 <= a_min < a_max");
    if (n_pts < 2) throw DomainError("boundary_polyline: n_pts must be >= 2");
    std::vector<BoundaryPoint> out;
    out.reserve(static_cast<std::size_t>(n_pts));
    const double step = (a_max - a_min) / (n_pts - 1);
    for (int k = 0; k < n_pts; ++k) {
        const double a = k == n_pts - 1 ? a_max : a_min + step * k;
        const double b = std::sqrt(std::max(0.0, (2.0 * a - 1.0) / region.delta_eff - a * a));
        out.push_back({a, b, b == 0.0 ? 0.0 : -b});
    }
    return out;
}

double max_height_in_strip(const ZeroFreeRegion& region)
{
    if (!(region.delta_eff > 0.0)) throw DomainError("max_height_in_strip: delta_eff must be > 0");
    return std::sqrt(std::max(0.0, 1.0 / region.delta_eff - 1.0));
}

std::string to_string(RegionOrder order)
{
    switch (order) {
    case RegionOrder::larger: return "larger";
    case RegionOrder::smaller: return "smaller";
    case RegionOrder::equal: return "equal";
    }
    return "unknown";
}

RegionOrder compare_regions(const ZeroFreeRegion& r1, const ZeroFreeRegion& r2)
{
    if (r1.delta_eff < r2.delta_eff) return RegionOrder::larger;
    if (r1.delta_eff > r2.delta_eff) return RegionOrder::smaller;
    return RegionOrder::equal;
}

double hoeffding_penalty(double c_l1, std::uint64_t n, double alpha)
{
    check_alpha(alpha);
    if (n < 1) throw DomainError("hoeffding_penalty: N must be >= 1");
    return (1.0 + c_l1 * c_l1) * std::sqrt(2.0 * std::log(2.0 / alpha) / static_cast<double>(n));
}

Certificate monte_carlo_certificate(const FracNet& net, std::uint64_t N, double alpha, std::uint64_t seed,
                                    int workers)
{
    check_alpha(alpha);
    if (N < 1) throw DomainError("monte_carlo_certificate: N must be >= 1");

    const int d = net.dim();
    const SampleMoments mom =
        sample_moments(N, seed, d, 1, workers, [&](std::span<const double> x, Eigen::Ref<Vector> out) {
            const double f = eval(net, Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size())));
            out[0] = (1.0 - f) * (1.0 - f);
        });

    Certificate c;
    c.net_hash = net_hash(net);
    c.N = N;
    c.alpha = alpha;
    c.seed = seed;
    c.c_l1 = net.coeff_l1();
    c.empirical_risk = mom.sum[0] / static_cast<double>(N);
    c.penalty = hoeffding_penalty(c.c_l1, N, alpha);
    c.delta_N = c.empirical_risk + c.penalty;
    c.region = empirical_region(c.delta_N, d, alpha);
    return c;
}

SamplePlan plan_samples(double target_delta_eff, int d, double alpha, double c_l1)
{
    if (!(target_delta_eff > 0.0 && target_delta_eff < 1.0)) {
        throw DomainError("plan_samples: target delta_eff must lie in (0,1)");
    }
    if (d < 1) throw DomainError("plan_samples: d must be >= 1");
    check_alpha(alpha);
    if (!(c_l1 >= 0.0)) throw DomainError("plan_samples: c_l1 must be >= 0");

    const double scale = 1.0 + c_l1 * c_l1;
    // log N = log(2 ln(2/alpha)) + 2 log(1 + c_l1^2) - 2 d log(target)
    const double log_n = std::log(2.0 * std::log(2.0 / alpha)) + 2.0 * std::log(scale)
                         - 2.0 * d * std::log(target_delta_eff);

    SamplePlan plan;
    if (log_n > std::log(std::numeric_limits<double>::max())) {
        plan.n_real = std::numeric_limits<double>::infinity();
        plan.saturated = true;
        plan.infeasible = true;
        return plan;
    }
    const double numer = 2.0 * std::log(2.0 / alpha) * scale * scale;
    const double denom = std::pow(target_delta_eff, 2.0 * d);
    plan.n_real = std::ceil(denom > 0.0 ? numer / denom : std::exp(log_n));
    constexpr double two64 = 18446744073709551616.0;
    if (plan.n_real < two64) {
        plan.n_exact = static_cast<std::uint64_t>(plan.n_real);
    } else {
        plan.saturated = true;
    }
    plan.infeasible = plan.n_real > kFeasibleSampleBudget;
    return plan;
}

} // namespace nbzeta
