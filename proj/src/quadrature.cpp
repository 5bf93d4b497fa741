// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/quadrature.hpp>

#include <nbzeta/types.hpp>

#include <array>

namespace nbzeta {
namespace {

// Newton iteration on P_n from the Chebyshev initial guesses.
GaussRule build_rule(int n)
{
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-17) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n)
{
    static const std::array<GaussRule, 4> rules = {build_rule(4), build_rule(8), build_rule(12), build_rule(16)};
    switch (n) {
    case 4: return rules[0];
    case 8: return rules[1];
    case 12: return rules[2];
    case 16: return rules[3];
    default: throw DomainError("gauss_legendre: supported orders are 4, 8, 12, 16");
    }
}

} // namespace nbzeta
