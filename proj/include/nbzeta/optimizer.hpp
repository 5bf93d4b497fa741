// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <nbzeta/frac_net.hpp>
#include <nbzeta/types.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace nbzeta {

enum class GramMethod
{
    quadrature,
    monte_carlo
};

GramMethod convert_gram_method(const std::string& name);
std::string to_string(GramMethod method);

struct GramOptions
{
    /// Target absolute error per entry (quadrature).
    double tol = 1e-9;
    /// Smallest tail cut the quadrature will go down to; bounds the panel count.
    double min_tail_cut = 1e-5;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    int workers = 1;
};

/// One inner product integral_0^1 frac(a/x) frac(b/x) dx with its error estimate.
struct GramEntry
{
    double value = 0.0;
    double err = 0.0;
};

/**
 * integral_0^1 frac(a/x) frac(b/x) dx.
 *
 * Panels between the merged breakpoints {a/k} and {b/k} above a cut eps are
 * integrated by Gauss-Legendre. Below eps, with B1(t) = frac(t) - 1/2,
 *
 *   frac(a/x) frac(b/x) = frac(a/x)/2 + frac(b/x)/2 - 1/4 + B1(a/x) B1(b/x),
 *
 * the single terms come from a periodic Bernoulli expansion and the product
 * term from its mean: 1/(12 p q) when a/b = p/q in lowest terms (error at
 * most T eps^2 / 3 with period T = p/a), 0 otherwise (error at most eps/4).
 */
GramEntry gram_entry(double a, double b, double tol, double min_tail_cut);

/// Inner products behind ||1 - f||^2 for a fixed beta, one block per dimension.
struct GramSystem
{
    /// G[j](i,k) = integral frac(beta_ij/x) frac(beta_kj/x) dx.
    std::vector<Matrix> G;
    /// b[j](i) = integral frac(beta_ij/x) dx.
    std::vector<Vector> b;
    GramMethod method = GramMethod::quadrature;
    /// Largest per-entry error estimate (standard error for Monte-Carlo).
    double est_entry_err = 0.0;
    ParamMatrix beta;

    int width() const { return static_cast<int>(beta.rows()); }
    int dim() const { return static_cast<int>(beta.cols()); }
};

GramSystem assemble_gram(const ParamMatrix& beta, GramMethod method, const GramOptions& opts = {});

/// Throws DomainError when symmetry, PSD (down to -1e-9) or 0 < b < 1 fails.
void validate_gram(const GramSystem& gram);

/// Q and q with ||1 - f||^2 = 1 - 2 q.c + c.Q c over the flattened coefficients.
struct QuadraticForm
{
    Matrix Q;
    Vector q;
};

/// Q = blockdiag(G_j - b_j b_j^T) + b b^T, q = b (b stacked over dimensions).
QuadraticForm quadratic_form(const GramSystem& gram);

/// ||1 - f||_2^2 on (0,1)^d for flattened coefficients.
double objective(const Eigen::Ref<const Vector>& coeff_flat, const GramSystem& gram);
double objective(const FracNet& net, const GramSystem& gram);

struct FitOptions
{
    double cond_limit = 1e12;
    std::array<double, 3> ridge_ladder = {1e-12, 1e-10, 1e-8};
    /// Proximal passes toward the unregularized optimum when a ridge is used.
    int max_refinements = 200;
};

struct FitResult
{
    ParamMatrix coeff;
    double lagrange = 0.0;
    double delta_sq = 1.0;
    double cond_estimate = 1.0;
    double ridge_used = 0.0;
    int refinements = 0;
    std::vector<std::string> warnings;
};

/**
 * Minimizes ||1 - f||^2 over c subject to c . beta = 0.
 *
 * Solves [2Q beta; beta^T 0] [c; lambda] = [2q; 0]. When the condition
 * estimate of that matrix exceeds cond_limit, Q is regularized with the first
 * ridge from the ladder that brings it under the limit, and proximal steps
 * argmin f(c) + r |c - c_k|^2 (started at c = 0) walk the solution back
 * toward the unregularized optimum. Throws SingularSystemError when no ridge
 * on the ladder suffices.
 */
FitResult fit_coefficients(const ParamMatrix& beta, const GramSystem& gram, const FitOptions& opts = {});

enum class ScheduleKind
{
    harmonic,
    random,
    file
};

ScheduleKind convert_schedule(const std::string& name);
std::string to_string(ScheduleKind kind);

/**
 * beta for a fit. harmonic: beta_k = 1/(k+1) in every column; random: i.i.d.
 * uniform on [1e-3, 1 - 1e-3] from `seed`; file: a JSON matrix (rows i,
 * columns j) or an object with a "beta" member. For file, m and d are
 * checked when positive.
 */
ParamMatrix beta_schedule(ScheduleKind kind, int m, int d, std::uint64_t seed, const std::string& path = {});

} // namespace nbzeta
