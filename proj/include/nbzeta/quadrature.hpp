// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <nbzeta/error.hpp>
#include <nbzeta/summation.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace nbzeta {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule of order n (n in {4, 8, 12, 16}); computed once, shared read-only.
const GaussRule& gauss_legendre(int n);

/// Applies a rule to f on [a, b].
template <class Fn>
auto apply_rule(const GaussRule& rule, const Fn& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    using value_type = decltype(f(mid));
    NeumaierSum<value_type> s;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        s.add(rule.weights[k] * f(mid + half * rule.nodes[k]));
    }
    return half * s.value();
}

template <class T>
struct PanelIntegral
{
    T value{};
    double err = 0.0;
    long panels = 0;
};

/**
 * Adaptive order-16 Gauss-Legendre on [a, b] for an integrand that is
 * smooth there. The order-8 result on the same panel gives the error
 * estimate; panels whose estimate exceeds their share of tol are bisected.
 * Every evaluated panel decrements panel_budget; running out throws
 * ToleranceError.
 */
template <class Fn>
auto adaptive_gauss(const Fn& f, double a, double b, double tol, long& panel_budget)
{
    using value_type = decltype(f(a));
    const GaussRule& hi = gauss_legendre(16);
    const GaussRule& lo = gauss_legendre(8);

    PanelIntegral<value_type> out;
    NeumaierSum<value_type> acc;
    struct Task
    {
        double a, b, tol;
        int depth;
    };
    // Depth-first, left to right: the summation order is fixed by (a, b, tol).
    std::vector<Task> stack{{a, b, tol, 0}};
    while (!stack.empty()) {
        const Task t = stack.back();
        stack.pop_back();
        if (--panel_budget < 0) {
            throw ToleranceError("adaptive_gauss: panel budget exhausted on [" + std::to_string(a) + ", "
                                 + std::to_string(b) + "]");
        }
        const value_type v16 = apply_rule(hi, f, t.a, t.b);
        const value_type v8 = apply_rule(lo, f, t.a, t.b);
        const double est = std::abs(v16 - v8);
        const double width = t.b - t.a;
        if (est <= t.tol || t.depth >= 48 || width <= 4.0 * std::abs(t.a) * 2.2e-16) {
            acc.add(v16);
            out.err += est;
            ++out.panels;
            continue;
        }
        const double m = 0.5 * (t.a + t.b);
        stack.push_back({m, t.b, 0.5 * t.tol, t.depth + 1});
        stack.push_back({t.a, m, 0.5 * t.tol, t.depth + 1});
    }
    out.value = acc.value();
    return out;
}

} // namespace nbzeta
