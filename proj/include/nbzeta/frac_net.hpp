// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <nbzeta/types.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace nbzeta {

/// Fractional part x - floor(x), always in [0, 1).
template <class Scalar_>
Scalar_ frac(Scalar_ x)
{
    const Scalar_ r = x - std::floor(x);
    // x just below an integer can round up to exactly 1.
    if (r >= Scalar_(1)) return std::nextafter(Scalar_(1), Scalar_(0));
    return r;
}

inline constexpr double kDefaultConstraintTol = 1e-12;
/// Entries of beta must lie in [kBetaMargin, 1 - kBetaMargin].
inline constexpr double kBetaMargin = 1e-9;

/**
 * A network f(x) = sum_j sum_i c_ij frac(beta_ij / x_j) on (0,1)^d with the
 * flattened constraint sum_ij c_ij beta_ij = 0.
 *
 * beta and coeff are m x d. The object is immutable and validated on
 * construction: every beta entry lies in the open interval (0,1) (with the
 * margin kBetaMargin) and |c . beta| <= constraint_tol.
 */
class FracNet
{
public:
    FracNet(ParamMatrix beta, ParamMatrix coeff, double constraint_tol = kDefaultConstraintTol);

    int dim() const { return static_cast<int>(beta_.cols()); }
    int width() const { return static_cast<int>(beta_.rows()); }
    const ParamMatrix& beta() const { return beta_; }
    const ParamMatrix& coeff() const { return coeff_; }
    double constraint_tol() const { return constraint_tol_; }

    /// sum_ij |c_ij| over all m*d coefficients.
    double coeff_l1() const { return coeff_.cwiseAbs().sum(); }
    /// Flattened c . beta (compensated).
    double constraint_residual() const;
    /// Largest beta entry in column j.
    double max_beta(int j) const { return beta_.col(j).maxCoeff(); }

private:
    ParamMatrix beta_;
    ParamMatrix coeff_;
    double constraint_tol_;
};

/// Validating factory; d and m must match the matrix shapes.
FracNet make_net(int d, int m, const ParamMatrix& beta, const ParamMatrix& coeff,
                 double constraint_tol = kDefaultConstraintTol);

/// The all-zero network on a given beta.
FracNet zero_net(const ParamMatrix& beta);

/// Throws DomainError unless every entry is in [kBetaMargin, 1 - kBetaMargin].
void validate_beta(const ParamMatrix& beta);

/// Compensated flattened dot product sum_ij a_ij b_ij.
double flat_dot(const ParamMatrix& a, const ParamMatrix& b);

/// Orthogonal projection of coeff onto {c : c . beta = 0} (flattened).
ParamMatrix project_constraint(const ParamMatrix& coeff, const ParamMatrix& beta);

/// f(x); every x_j must lie in (0,1).
double eval(const FracNet& net, const Eigen::Ref<const Vector>& x);

/**
 * The floor-sum form -sum_ij c_ij floor(beta_ij / x_j). It differs from eval
 * by sum_j (sum_i c_ij beta_ij) / x_j, so the two agree for d = 1 and for
 * d >= 2 when every column satisfies the constraint on its own.
 */
double eval_step_form(const FracNet& net, const Eigen::Ref<const Vector>& x);

inline double eval(const FracNet& net, double x)
{
    return eval(net, Vector::Constant(1, x));
}

inline double eval_step_form(const FracNet& net, double x)
{
    return eval_step_form(net, Vector::Constant(1, x));
}

/// Discontinuities {beta_{i,dim} / k : k >= 1} in (xmin, 1), strictly increasing.
struct Breakpoints
{
    std::vector<double> points;
    double xmin = 0.0;
};

Breakpoints breakpoints(const FracNet& net, int dim, double xmin);

/// The network f(x) = frac(0.7/x) - frac(0.3/x) - 4 frac(0.1/x).
FracNet example_net();

} // namespace nbzeta
