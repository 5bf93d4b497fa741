// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <nbzeta/frac_net.hpp>
#include <nbzeta/types.hpp>
#include <nbzeta/zeta.hpp>

namespace nbzeta {

/// A breakpoint-aware integral over (0,1).
struct QuadResult
{
    Complex value{0.0, 0.0};
    /// Sum of panel error estimates plus the rigorous bound on the tail expansion remainder.
    double err_bound = 0.0;
    long panels = 0;
    /// Below this point the integral was taken from the tail expansion.
    double tail_cut = 0.5;
};

struct MellinOptions
{
    long panel_budget = 2'000'000;
    /// Number of Bernoulli corrections in the tail expansion.
    int tail_order = 8;
};

/**
 * integral_0^1 frac(theta/x) x^{z-1} dx for theta in (0,1), Re z > 0.
 *
 * Panels [theta/(k+1), theta/k] are integrated by adaptive Gauss-Legendre.
 * Below the cut eps = theta/U (U an integer), the substitution u = theta/x
 * turns the piece into theta^z integral_U^inf frac(u) u^{-z-1} du, which is
 * expanded with periodic Bernoulli functions:
 *
 *   U^{-z}/(2z) - sum_{j=1}^{p} B_{2j}/(2j)! (z+1)_{2j-2} U^{-z-2j+1} + R,
 *   |R| <= |B_{2p}|/(2p)! |(z+1)_{2p-1}| U^{1-Re z-2p} / (Re z + 2p - 1).
 *
 * U is the smallest integer for which theta^{Re z} |R| <= tol/4.
 */
QuadResult mellin_rho(double theta, const Complex& z, double tol, const MellinOptions& opts = {});

/// theta/(z-1) - theta^z zeta(z)/z.
Complex mellin_rho_closed_form(double theta, const Complex& z, const ZetaEvalPolicy& policy = {});

/// |mellin_rho(theta, z) - mellin_rho_closed_form(theta, z)|; PoleError near z = 1.
double identity_residual(double theta, const Complex& z, double tol, const ZetaEvalPolicy& policy = {},
                         const MellinOptions& opts = {});

/// integral_0^1 frac(theta/x) dx = theta (1 - gamma - ln theta), the z -> 1 limit.
double rho_integral_at_one(double theta);

/**
 * integral over (0,1)^d of f(x) prod_j x_j^{z-1} dx.
 *
 * Each term c_ij frac(beta_ij/x_j) integrates against x_j^{z-1} as a 1-d
 * transform and against the other coordinates as 1/z, so the result is
 * z^{1-d} sum_ij c_ij mellin_rho(beta_ij, z).
 */
QuadResult mellin_net(const FracNet& net, const Complex& z, double tol, const MellinOptions& opts = {});

/// -z^{-d} zeta(z) sum_ij c_ij beta_ij^z, valid under the constraint.
Complex mellin_net_closed_form(const FracNet& net, const Complex& z, const ZetaEvalPolicy& policy = {});

/// L2 norm of prod_j x_j^{z-1} on (0,1)^d: (2 Re z - 1)^{-d/2}. Requires Re z > 1/2.
double weighted_power_norm(const Complex& z, int d);

} // namespace nbzeta
