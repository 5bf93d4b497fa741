// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <nbzeta/types.hpp>

namespace nbzeta {

/**
 * Controls evaluation of zeta and eta.
 *
 * target_abs_tol is the absolute accuracy requested from the eta series
 * (after accounting for the 1/(1 - 2^{1-z}) factor when zeta is evaluated
 * through eta). The declared accuracy holds for |Im z| <= 50; the series
 * keeps working beyond that but the term count grows linearly in |Im z|.
 */
struct ZetaEvalPolicy
{
    double target_abs_tol = 1e-10;
    int max_terms = 300;
    /// Exclusion radius around z = 1 and around the points 1 + 2 pi i n / ln 2.
    double singular_guard_radius = 1e-6;

    void validate() const;
};

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);
/// cos(pi x) with exact zeros at the half-integers.
double cos_pi(double x);
/// sin(pi z) for complex z, built on sin_pi / cos_pi so that sin(pi k) == 0.
Complex sin_pi(const Complex& z);

/**
 * Gamma function on the complex plane.
 *
 * Lanczos approximation (g = 7, 9 coefficients) for Re z >= 1/2 and the
 * reflection formula below that. Relative error is below 1e-12 for |z| <= 50.
 * Throws PoleError at the non-positive integers and OverflowError when the
 * value is not representable.
 */
Complex gamma(const Complex& z);

/**
 * Dirichlet eta function sum_{n>=1} (-1)^{n+1} n^{-z}, Re z > 0.
 *
 * Uses the Chebyshev acceleration of Cohen, Rodriguez-Villegas and Zagier.
 * The number of terms is fixed a priori from the bound
 * 2 Gamma(Re z) / (|Gamma(z)| (3 + sqrt 8)^n).
 */
Complex eta(const Complex& z, const ZetaEvalPolicy& policy = {});

/// Number of eta terms selected for z at the given tolerance, or -1 when
/// more than policy.max_terms would be required.
int eta_term_count(const Complex& z, double abs_tol, const ZetaEvalPolicy& policy = {});

/**
 * Riemann zeta via Euler-Maclaurin summation, valid for Re z > 0, z != 1.
 *
 * Used near the zeros of 1 - 2^{1-z} where the eta route divides by a
 * vanishing factor, and as an independent second route in tests.
 */
Complex zeta_euler_maclaurin(const Complex& z, const ZetaEvalPolicy& policy = {});

/**
 * Analytically continued Riemann zeta function.
 *
 * Re z > 0: eta route (Euler-Maclaurin near the points 1 + 2 pi i n / ln 2).
 * Re z <= 0: functional equation applied to zeta(1 - z). zeta(0) = -1/2.
 * Throws PoleError within policy.singular_guard_radius of z = 1.
 */
Complex zeta(const Complex& z, const ZetaEvalPolicy& policy = {});

/// |zeta(z) - 2^z pi^{z-1} sin(pi z / 2) Gamma(1 - z) zeta(1 - z)| for Re z in (0, 1).
double functional_equation_residual(const Complex& z, const ZetaEvalPolicy& policy = {});

/// Index n of the nearest eta singular point 1 + 2 pi i n / ln 2 (n != 0).
long nearest_eta_singular_index(const Complex& z);

} // namespace nbzeta
