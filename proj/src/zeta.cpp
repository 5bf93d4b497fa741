// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/zeta.hpp>

#include <nbzeta/error.hpp>
#include <nbzeta/summation.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace nbzeta {
namespace {

// B_{2k} / (2k)!, k = 1..16.
constexpr std::array<double, 16> kBernoulliOverFactorial = {
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
    5.5090028283602295152e-18,
    -1.3954464685812523341e-19,
    3.5347070396294674717e-21,
    -8.9535174270375468504e-23,
    2.2679524523376830603e-24,
    -5.7447906688722024453e-26,
};

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;
constexpr double kLogPi = 1.14472988584940017414342735135305871;
const double kChebyshevRate = std::log(3.0 + std::sqrt(8.0));

// Below this |1 - 2^{1-z}| the eta route loses more than one digit to the
// division, so zeta switches to Euler-Maclaurin.
constexpr double kEtaFactorSwitch = 0.1;

bool is_nonpositive_integer(const Complex& z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log Gamma(z) for Re z >= 1/2 (principal branch up to a multiple of 2 pi i,
// which exp() does not see).
Complex log_gamma_lanczos(Complex z)
{
    z -= 1.0;
    Complex x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        x += kLanczos[i] / (z + static_cast<double>(i));
    }
    const Complex t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

double log_abs_gamma(const Complex& z)
{
    if (z.real() >= 0.5) return log_gamma_lanczos(z).real();
    return kLogPi - std::log(std::abs(sin_pi(z))) - log_abs_gamma(1.0 - z);
}

Complex power_of(double base_log, const Complex& exponent)
{
    return std::exp(exponent * base_log);
}

Complex require_finite(const Complex& v, const char* what)
{
    if (!is_finite(v)) {
        throw OverflowError(std::string(what) + ": result is not representable in double precision");
    }
    return v;
}

} // namespace

void ZetaEvalPolicy::validate() const
{
    if (!(target_abs_tol > 0.0)) throw DomainError("ZetaEvalPolicy: target_abs_tol must be > 0");
    if (!(singular_guard_radius > 0.0)) {
        throw DomainError("ZetaEvalPolicy: singular_guard_radius must be > 0");
    }
    if (max_terms < 1) throw DomainError("ZetaEvalPolicy: max_terms must be >= 1");
}

double sin_pi(double x)
{
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    double r = std::remainder(x, 2.0); // [-1, 1]
    if (r > 0.5) {
        r = 1.0 - r;
    } else if (r < -0.5) {
        r = -1.0 - r;
    }
    if (r == 0.0) return 0.0;
    return std::sin(kPi * r);
}

double cos_pi(double x)
{
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    const double r = std::abs(std::remainder(x, 2.0)); // [0, 1]
    return sin_pi(0.5 - r);
}

Complex sin_pi(const Complex& z)
{
    const double b = kPi * z.imag();
    return {sin_pi(z.real()) * std::cosh(b), cos_pi(z.real()) * std::sinh(b)};
}

Complex gamma(const Complex& z)
{
    if (!is_finite(z)) throw DomainError("gamma: argument is not finite");
    if (is_nonpositive_integer(z)) {
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(z.real()));
    }
    if (z.real() < 0.5) {
        return require_finite(kPi / (sin_pi(z) * gamma(1.0 - z)), "gamma");
    }
    return require_finite(std::exp(log_gamma_lanczos(z)), "gamma");
}

int eta_term_count(const Complex& z, double abs_tol, const ZetaEvalPolicy& policy)
{
    const double sigma = z.real();
    // log of 2 Gamma(sigma) / |Gamma(z)|, the total variation of the
    // (complex) moment weight behind (k+1)^{-z}.
    const double log_weight = std::log(2.0) + log_abs_gamma(Complex(sigma, 0.0)) - log_abs_gamma(z);
    const double needed = (log_weight - std::log(abs_tol)) / kChebyshevRate;
    // Two extra terms absorb rounding in the weights.
    const int n = std::max(1, static_cast<int>(std::ceil(needed)) + 2);
    return n > policy.max_terms ? -1 : n;
}

Complex eta(const Complex& z, const ZetaEvalPolicy& policy)
{
    policy.validate();
    if (!is_finite(z)) throw DomainError("eta: argument is not finite");
    if (!(z.real() > 0.0)) throw DomainError("eta: requires Re(z) > 0");

    const int n = eta_term_count(z, policy.target_abs_tol, policy);
    if (n < 0) {
        throw ConvergenceError("eta: tolerance " + std::to_string(policy.target_abs_tol)
                               + " needs more than max_terms = " + std::to_string(policy.max_terms)
                               + " terms at Im(z) = " + std::to_string(z.imag()));
    }

    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built by term ratios.
    std::vector<double> d(static_cast<std::size_t>(n) + 1);
    double term = 1.0 / n;
    double acc = term;
    d[0] = n * acc;
    for (int i = 0; i < n; ++i) {
        term *= 4.0 * (n + i) * static_cast<double>(n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
        acc += term;
        d[static_cast<std::size_t>(i) + 1] = n * acc;
    }
    const double dn = d[static_cast<std::size_t>(n)];

    NeumaierSum<Complex> sum;
    for (int k = 0; k < n; ++k) {
        const double weight = (dn - d[static_cast<std::size_t>(k)]) / dn;
        const Complex power = power_of(-std::log(static_cast<double>(k + 1)), z);
        sum.add((k % 2 == 0 ? weight : -weight) * power);
    }
    return require_finite(sum.value(), "eta");
}

Complex zeta_euler_maclaurin(const Complex& z, const ZetaEvalPolicy& policy)
{
    policy.validate();
    if (!is_finite(z)) throw DomainError("zeta_euler_maclaurin: argument is not finite");
    if (!(z.real() > -1.0)) throw DomainError("zeta_euler_maclaurin: requires Re(z) > -1");
    if (std::abs(z - 1.0) <= policy.singular_guard_radius) {
        throw PoleError("zeta_euler_maclaurin: z is within the guard radius of the pole at 1");
    }

    const double sigma = z.real();
    const double tol = policy.target_abs_tol;
    const int max_order = static_cast<int>(kBernoulliOverFactorial.size()) - 1;

    long cutoff = std::max(15L, static_cast<long>(std::ceil(0.5 * std::abs(z + 30.0))) + 5);
    for (int attempt = 0; attempt < 4; ++attempt, cutoff *= 2) {
        const double big_n = static_cast<double>(cutoff);
        const double log_n = std::log(big_n);

        NeumaierSum<Complex> sum;
        for (long k = cutoff - 1; k >= 1; --k) {
            sum.add(power_of(-std::log(static_cast<double>(k)), z));
        }
        const Complex n_pow = power_of(-log_n, z); // N^{-z}
        sum.add(big_n * n_pow / (z - 1.0));
        sum.add(0.5 * n_pow);

        // T_k = B_{2k}/(2k)! * z (z+1) ... (z+2k-2) * N^{-z-2k+1}
        Complex rising = z;
        Complex n_power = n_pow / big_n;
        for (int k = 1; k <= max_order; ++k) {
            sum.add(kBernoulliOverFactorial[static_cast<std::size_t>(k) - 1] * rising * n_power);
            // Advance to the next term; its size times |z+2k+1|/(sigma+2k+1)
            // bounds the remainder.
            rising *= (z + (2.0 * k - 1.0)) * (z + 2.0 * k);
            n_power /= big_n * big_n;
            const double next = std::abs(kBernoulliOverFactorial[static_cast<std::size_t>(k)] * rising * n_power);
            const double bound = next * std::abs(z + (2.0 * k + 1.0)) / (sigma + 2.0 * k + 1.0);
            if (bound <= 0.5 * tol) return require_finite(sum.value(), "zeta_euler_maclaurin");
        }
    }
    throw ConvergenceError("zeta_euler_maclaurin: remainder bound not met at Im(z) = "
                           + std::to_string(z.imag()));
}

long nearest_eta_singular_index(const Complex& z)
{
    const long n = std::lround(z.imag() * kLn2 / (2.0 * kPi));
    return n == 0 ? (z.imag() >= 0.0 ? 1 : -1) : n;
}

Complex zeta(const Complex& z, const ZetaEvalPolicy& policy)
{
    policy.validate();
    if (!is_finite(z)) throw DomainError("zeta: argument is not finite");
    if (std::abs(z - 1.0) <= policy.singular_guard_radius) {
        throw PoleError("zeta: z is within the guard radius of the pole at 1");
    }
    if (z == Complex(0.0, 0.0)) return {-0.5, 0.0};

    if (z.real() > 0.0) {
        const Complex factor = 1.0 - power_of(kLn2, 1.0 - z);
        if (std::abs(factor) < kEtaFactorSwitch) return zeta_euler_maclaurin(z, policy);
        ZetaEvalPolicy inner = policy;
        inner.target_abs_tol = policy.target_abs_tol * std::min(1.0, std::abs(factor));
        return require_finite(eta(z, inner) / factor, "zeta");
    }

    // 1 - z sits inside the pole guard; Euler-Maclaurin is valid here.
    if (std::abs(z) <= policy.singular_guard_radius) return zeta_euler_maclaurin(z, policy);

    const Complex w = 1.0 - z;
    const Complex prefactor = std::exp(z * kLn2 + (z - 1.0) * kLogPi);
    return require_finite(prefactor * sin_pi(0.5 * z) * gamma(w) * zeta(w, policy), "zeta");
}

double functional_equation_residual(const Complex& z, const ZetaEvalPolicy& policy)
{
    if (!(z.real() > 0.0 && z.real() < 1.0)) {
        throw DomainError("functional_equation_residual: requires Re(z) in (0, 1)");
    }
    const Complex lhs = zeta(z, policy);
    const Complex w = 1.0 - z;
    const Complex prefactor = std::exp(z * kLn2 + (z - 1.0) * kLogPi);
    const Complex rhs = prefactor * sin_pi(0.5 * z) * gamma(w) * zeta(w, policy);
    return std::abs(lhs - rhs);
}

} // namespace nbzeta
