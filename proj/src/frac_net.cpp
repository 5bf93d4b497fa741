// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/frac_net.hpp>

#include <nbzeta/error.hpp>
#include <nbzeta/summation.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nbzeta {
namespace {

void check_point(const FracNet& net, const Eigen::Ref<const Vector>& x)
{
    if (x.size() != net.dim()) {
        throw ShapeError("eval: point has " + std::to_string(x.size()) + " components, network expects "
                         + std::to_string(net.dim()));
    }
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (!(x[j] > 0.0 && x[j] < 1.0)) {
            std::ostringstream os;
            os << "eval: component " << j << " = " << x[j] << " is outside (0,1)";
            throw DomainError(os.str());
        }
    }
}

// floor(b/x) and frac(b/x) from the exactly representable remainder
// b - t x (t = fl(b/x)), so the fractional part is not degraded by |t|.
struct Quotient
{
    double whole;
    double part;
};

Quotient split_quotient(double b, double x)
{
    const double t = b / x;
    const double r = std::fma(-t, x, b);
    double whole = std::floor(t);
    double part = (t - whole) + r / x;
    if (part < 0.0) {
        whole -= 1.0;
        part += 1.0;
    } else if (part >= 1.0) {
        whole += 1.0;
        part -= 1.0;
    }
    return {whole, std::min(part, std::nextafter(1.0, 0.0))};
}

} // namespace

void validate_beta(const ParamMatrix& beta)
{
    if (beta.size() == 0) throw ShapeError("beta must have at least one entry");
    for (Eigen::Index j = 0; j < beta.cols(); ++j) {
        for (Eigen::Index i = 0; i < beta.rows(); ++i) {
            const double b = beta(i, j);
            if (!(b >= kBetaMargin && b <= 1.0 - kBetaMargin)) {
                std::ostringstream os;
                os << "beta(" << i << "," << j << ") = " << b << " is outside (0,1)";
                throw DomainError(os.str());
            }
        }
    }
}

double flat_dot(const ParamMatrix& a, const ParamMatrix& b)
{
    NeumaierSum<double> s;
    for (Eigen::Index k = 0; k < a.size(); ++k) s.add(a.data()[k] * b.data()[k]);
    return s.value();
}

FracNet::FracNet(ParamMatrix beta, ParamMatrix coeff, double constraint_tol)
    : beta_(std::move(beta)), coeff_(std::move(coeff)), constraint_tol_(constraint_tol)
{
    if (beta_.rows() != coeff_.rows() || beta_.cols() != coeff_.cols()) {
        throw ShapeError("FracNet: beta and coeff must have the same m x d shape");
    }
    if (!(constraint_tol_ >= 0.0)) throw DomainError("FracNet: constraint_tol must be >= 0");
    validate_beta(beta_);
    if (!coeff_.allFinite()) throw DomainError("FracNet: coefficients must be finite");
    const double r = constraint_residual();
    if (!(std::abs(r) <= constraint_tol_)) {
        std::ostringstream os;
        os.precision(17);
        os << "FracNet: |c . beta| = " << std::abs(r) << " exceeds constraint_tol " << constraint_tol_;
        throw ConstraintViolation(os.str());
    }
}

double FracNet::constraint_residual() const { return flat_dot(coeff_, beta_); }

FracNet make_net(int d, int m, const ParamMatrix& beta, const ParamMatrix& coeff, double constraint_tol)
{
    if (d < 1 || m < 1) throw ShapeError("make_net: d and m must be >= 1");
    if (beta.rows() != m || beta.cols() != d || coeff.rows() != m || coeff.cols() != d) {
        throw ShapeError("make_net: beta and coeff must be " + std::to_string(m) + " x " + std::to_string(d));
    }
    return FracNet(beta, coeff, constraint_tol);
}

FracNet zero_net(const ParamMatrix& beta)
{
    return FracNet(beta, ParamMatrix::Zero(beta.rows(), beta.cols()));
}

ParamMatrix project_constraint(const ParamMatrix& coeff, const ParamMatrix& beta)
{
    if (coeff.rows() != beta.rows() || coeff.cols() != beta.cols()) {
        throw ShapeError("project_constraint: shape mismatch");
    }
    const double beta_sq = flat_dot(beta, beta);
    ParamMatrix out = coeff - (flat_dot(coeff, beta) / beta_sq) * beta;
    // A second pass removes what rounding left of the first correction.
    out -= (flat_dot(out, beta) / beta_sq) * beta;
    return out;
}

double eval(const FracNet& net, const Eigen::Ref<const Vector>& x)
{
    check_point(net, x);
    const auto& beta = net.beta();
    const auto& coeff = net.coeff();
    NeumaierSum<double> f;
    for (int j = 0; j < net.dim(); ++j) {
        for (int i = 0; i < net.width(); ++i) {
            f.add(coeff(i, j) * split_quotient(beta(i, j), x[j]).part);
        }
    }
    return f.value();
}

double eval_step_form(const FracNet& net, const Eigen::Ref<const Vector>& x)
{
    check_point(net, x);
    const auto& beta = net.beta();
    const auto& coeff = net.coeff();
    // Products c n can be large; keep their rounding errors (fma) in the sum.
    NeumaierSum<double> f;
    for (int j = 0; j < net.dim(); ++j) {
        for (int i = 0; i < net.width(); ++i) {
            const double n = split_quotient(beta(i, j), x[j]).whole;
            const double p = coeff(i, j) * n;
            f.add(-p);
            f.add(-std::fma(coeff(i, j), n, -p));
        }
    }
    return f.value();
}

Breakpoints breakpoints(const FracNet& net, int dim, double xmin)
{
    if (dim < 0 || dim >= net.dim()) throw ShapeError("breakpoints: dimension index out of range");
    if (!(xmin > 0.0 && xmin < 1.0)) throw DomainError("breakpoints: xmin must lie in (0,1)");

    Breakpoints out;
    out.xmin = xmin;
    for (int i = 0; i < net.width(); ++i) {
        const double b = net.beta()(i, dim);
        const auto k_max = static_cast<long>(std::ceil(b / xmin));
        for (long k = 1; k <= k_max; ++k) {
            const double p = b / static_cast<double>(k);
            if (p > xmin && p < 1.0) out.points.push_back(p);
        }
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    return out;
}

FracNet example_net()
{
    ParamMatrix beta(3, 1);
    beta << 0.7, 0.3, 0.1;
    ParamMatrix coeff(3, 1);
    coeff << 1.0, -1.0, -4.0;
    return FracNet(beta, coeff);
}

} // namespace nbzeta
