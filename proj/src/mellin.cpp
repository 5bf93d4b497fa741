// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/mellin.hpp>

#include <nbzeta/error.hpp>
#include <nbzeta/quadrature.hpp>
#include <nbzeta/summation.hpp>

#include <array>
#include <cmath>
#include <string>

namespace nbzeta {
namespace {

// B_{2j} / (2j)!, j = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    0.083333333333333333333,
    -0.0013888888888888888889,
    0.000033068783068783068783,
    -8.2671957671957671958e-7,
    2.0876756987868098979e-8,
    -5.2841901386874931848e-10,
    1.3382536530684678833e-11,
    -3.3896802963225828668e-13,
    8.5860620562778445641e-15,
    -2.174868698558061873e-16,
};

void check_theta(double theta, const char* who)
{
    if (!(theta > 0.0 && theta < 1.0)) {
        throw DomainError(std::string(who) + ": theta must lie in (0,1), got " + std::to_string(theta));
    }
}

// |(w)_n| for the rising factorial w (w+1) ... (w+n-1).
double abs_rising(const Complex& w, int n)
{
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= std::abs(w + static_cast<double>(k));
    return r;
}

} // namespace

QuadResult mellin_rho(double theta, const Complex& z, double tol, const MellinOptions& opts)
{
    check_theta(theta, "mellin_rho");
    if (!is_finite(z) || !(z.real() > 0.0)) throw DomainError("mellin_rho: requires Re(z) > 0");
    if (!(tol > 0.0)) throw DomainError("mellin_rho: tol must be > 0");
    const int p = opts.tail_order;
    if (p < 1 || p > static_cast<int>(kBernoulliOverFactorial.size())) {
        throw DomainError("mellin_rho: tail_order must be in [1, 10]");
    }

    const double sigma = z.real();
    const double log_theta = std::log(theta);
    const double expo = sigma + 2.0 * p - 1.0;
    const double remainder_scale = std::abs(kBernoulliOverFactorial[static_cast<std::size_t>(p) - 1])
                                   * abs_rising(z + 1.0, 2 * p - 1) * std::pow(theta, sigma) / expo;
    double u_real = std::pow(remainder_scale / (0.25 * tol), 1.0 / expo);
    u_real = std::max(1.0, std::ceil(u_real));
    if (u_real > static_cast<double>(opts.panel_budget)) {
        throw ToleranceError("mellin_rho: tail cut would need more than the panel budget");
    }
    const auto big_u = static_cast<long>(u_real);
    const double tail_remainder = remainder_scale * std::pow(u_real, -expo);

    QuadResult out;
    out.tail_cut = theta / u_real;

    // Tail: theta^z [U^{-z}/(2z) - sum_j B_{2j}/(2j)! (z+1)_{2j-2} U^{-z-2j+1}].
    {
        const Complex u_pow = std::exp(-z * std::log(u_real)); // U^{-z}
        NeumaierSum<Complex> t;
        t.add(u_pow / (2.0 * z));
        Complex rising = 1.0;
        double u_neg = 1.0 / u_real; // U^{-(2j-1)}
        for (int j = 1; j <= p; ++j) {
            t.add(-kBernoulliOverFactorial[static_cast<std::size_t>(j) - 1] * rising * u_pow * u_neg);
            rising *= (z + (2.0 * j - 1.0)) * (z + 2.0 * j);
            u_neg /= u_real * u_real;
        }
        out.value = std::exp(z * log_theta) * t.value();
    }
    out.err_bound = tail_remainder;

    const Complex zm1 = z - 1.0;
    long budget = opts.panel_budget;
    const double quad_tol = 0.5 * tol;
    const double span = 1.0 - out.tail_cut;
    NeumaierSum<Complex> acc;
    acc.add(out.value);

    // [theta, 1]: frac(theta/x) = theta/x.
    {
        auto f = [&](double x) { return (theta / x) * std::exp(zm1 * std::log(x)); };
        const auto r = adaptive_gauss(f, theta, 1.0, quad_tol * (1.0 - theta) / span, budget);
        acc.add(r.value);
        out.err_bound += r.err;
        out.panels += r.panels;
    }
    // [theta/(k+1), theta/k]: frac(theta/x) = theta/x - k.
    for (long k = 1; k < big_u; ++k) {
        const double kd = static_cast<double>(k);
        const double a = theta / (kd + 1.0);
        const double b = theta / kd;
        auto f = [&](double x) { return (theta / x - kd) * std::exp(zm1 * std::log(x)); };
        const auto r = adaptive_gauss(f, a, b, quad_tol * (b - a) / span, budget);
        acc.add(r.value);
        out.err_bound += r.err;
        out.panels += r.panels;
    }
    out.value = acc.value();

    if (!(out.err_bound <= tol)) {
        throw ToleranceError("mellin_rho: error bound " + std::to_string(out.err_bound) + " exceeds tol "
                             + std::to_string(tol));
    }
    return out;
}

Complex mellin_rho_closed_form(double theta, const Complex& z, const ZetaEvalPolicy& policy)
{
    check_theta(theta, "mellin_rho_closed_form");
    return theta / (z - 1.0) - std::exp(z * std::log(theta)) * zeta(z, policy) / z;
}

double identity_residual(double theta, const Complex& z, double tol, const ZetaEvalPolicy& policy,
                         const MellinOptions& opts)
{
    check_theta(theta, "identity_residual");
    if (std::abs(z - 1.0) <= policy.singular_guard_radius) {
        throw PoleError("identity_residual: z is within the guard radius of 1");
    }
    const QuadResult lhs = mellin_rho(theta, z, tol, opts);
    return std::abs(lhs.value - mellin_rho_closed_form(theta, z, policy));
}

double rho_integral_at_one(double theta)
{
    check_theta(theta, "rho_integral_at_one");
    return theta * (1.0 - kEulerGamma - std::log(theta));
}

QuadResult mellin_net(const FracNet& net, const Complex& z, double tol, const MellinOptions& opts)
{
    if (!(tol > 0.0)) throw DomainError("mellin_net: tol must be > 0");
    const int d = net.dim();
    const Complex scale = std::exp(-static_cast<double>(d - 1) * std::log(z)); // z^{1-d}
    const double abs_scale = std::abs(scale);
    const double l1 = net.coeff_l1();

    QuadResult out;
    out.tail_cut = net.beta().minCoeff();
    if (l1 == 0.0) return out;

    NeumaierSum<Complex> acc;
    double err = 0.0;
    bool first = true;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < net.width(); ++i) {
            const double c = net.coeff()(i, j);
            if (c == 0.0) continue;
            const QuadResult r = mellin_rho(net.beta()(i, j), z, tol / (l1 * abs_scale), opts);
            acc.add(c * r.value);
            err += std::abs(c) * r.err_bound;
            out.panels += r.panels;
            out.tail_cut = first ? r.tail_cut : std::min(out.tail_cut, r.tail_cut);
            first = false;
        }
    }
    out.value = scale * acc.value();
    out.err_bound = abs_scale * err;
    return out;
}

Complex mellin_net_closed_form(const FracNet& net, const Complex& z, const ZetaEvalPolicy& policy)
{
    NeumaierSum<Complex> s;
    for (int j = 0; j < net.dim(); ++j) {
        for (int i = 0; i < net.width(); ++i) {
            s.add(net.coeff()(i, j) * std::exp(z * std::log(net.beta()(i, j))));
        }
    }
    const Complex z_neg_d = std::exp(-static_cast<double>(net.dim()) * std::log(z));
    return -z_neg_d * zeta(z, policy) * s.value();
}

double weighted_power_norm(const Complex& z, int d)
{
    if (d < 1) throw DomainError("weighted_power_norm: d must be >= 1");
    if (!(z.real() > 0.5)) throw DomainError("weighted_power_norm: requires Re(z) > 1/2");
    return std::pow(2.0 * z.real() - 1.0, -0.5 * d);
}

} // namespace nbzeta
