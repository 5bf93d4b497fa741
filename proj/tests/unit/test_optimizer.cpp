// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/error.hpp>
#include <nbzeta/optimizer.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using nbzeta::ParamMatrix;
using nbzeta::Vector;

namespace {

// integral_0^1 frac(a/x)^2 dx = a (ln 2 pi - gamma - a).
double gram_diag(double a)
{
    return a * (std::log(2.0 * nbzeta::kPi) - nbzeta::kEulerGamma - a);
}

ParamMatrix column(std::initializer_list<double> v)
{
    ParamMatrix m(static_cast<Eigen::Index>(v.size()), 1);
    Eigen::Index i = 0;
    for (double x : v) m(i++, 0) = x;
    return m;
}

} // namespace

TEST_SUITE("optimizer")
{
    TEST_CASE("Gram entries against reference values")
    {
        CHECK(std::abs(nbzeta::gram_entry(0.5, 0.5, 1e-11, 1e-6).value - 0.38033070075) < 1e-10);
        CHECK(std::abs(nbzeta::gram_entry(0.5, 1.0 / 3.0, 1e-10, 1e-5).value - 0.27443684265) < 1e-9);
        CHECK(std::abs(nbzeta::gram_entry(1.0 / 3.0, 0.25, 1e-10, 1e-5).value - 0.2321146333) < 1e-9);
        for (double a : {0.9, 0.37, 0.05}) {
            const auto e = nbzeta::gram_entry(a, a, 1e-10, 1e-5);
            CHECK(std::abs(e.value - gram_diag(a)) < 1e-9);
            CHECK(e.err <= 1e-9);
        }
        const auto s1 = nbzeta::gram_entry(0.61, 0.27, 1e-9, 1e-5);
        const auto s2 = nbzeta::gram_entry(0.27, 0.61, 1e-9, 1e-5);
        CHECK(std::abs(s1.value - s2.value) < 1e-9);
        CHECK_THROWS_AS(nbzeta::gram_entry(0.0, 0.5, 1e-9, 1e-5), nbzeta::DomainError);
    }

    TEST_CASE("assembled system is valid")
    {
        const ParamMatrix beta = nbzeta::beta_schedule(nbzeta::ScheduleKind::harmonic, 4, 2, 0);
        const auto gram = nbzeta::assemble_gram(beta, nbzeta::GramMethod::quadrature);
        CHECK(gram.width() == 4);
        CHECK(gram.dim() == 2);
        CHECK_NOTHROW(nbzeta::validate_gram(gram));
        CHECK(gram.b[0][0] == doctest::Approx(0.557965757829206).epsilon(1e-12));
        CHECK(gram.G[1](0, 0) == doctest::Approx(gram_diag(0.5)).epsilon(1e-9));
        CHECK(gram.est_entry_err <= 1e-9);
    }

    TEST_CASE("Monte-Carlo Gram agrees with quadrature")
    {
        const ParamMatrix beta = column({0.8, 0.45, 0.2});
        nbzeta::GramOptions opts;
        opts.samples = 200'000;
        opts.seed = 3;
        const auto q = nbzeta::assemble_gram(beta, nbzeta::GramMethod::quadrature);
        const auto mc = nbzeta::assemble_gram(beta, nbzeta::GramMethod::monte_carlo, opts);
        CHECK(mc.method == nbzeta::GramMethod::monte_carlo);
        CHECK((q.G[0] - mc.G[0]).cwiseAbs().maxCoeff() < 6.0 * mc.est_entry_err);
        CHECK((q.b[0] - mc.b[0]).cwiseAbs().maxCoeff() < 6.0 * mc.est_entry_err);
    }

    TEST_CASE("single term is forced to zero")
    {
        const ParamMatrix beta = column({0.5});
        const auto gram = nbzeta::assemble_gram(beta, nbzeta::GramMethod::quadrature);
        const auto fit = nbzeta::fit_coefficients(beta, gram);
        CHECK(fit.coeff(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(fit.delta_sq == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("two harmonic terms match the one-parameter optimum")
    {
        const ParamMatrix beta = column({0.5, 1.0 / 3.0});
        const auto gram = nbzeta::assemble_gram(beta, nbzeta::GramMethod::quadrature);
        const auto fit = nbzeta::fit_coefficients(beta, gram);
        CHECK(std::abs(fit.delta_sq - 0.837236246317745) < 1e-8);
        // The feasible line is c = t (2, -3).
        CHECK(fit.coeff(0, 0) / fit.coeff(1, 0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
    }

    TEST_CASE("KKT solution is a constrained minimum")
    {
        const ParamMatrix beta = nbzeta::beta_schedule(nbzeta::ScheduleKind::random, 5, 2, 11);
        const auto gram = nbzeta::assemble_gram(beta, nbzeta::GramMethod::quadrature);
        const auto fit = nbzeta::fit_coefficients(beta, gram);
        const Vector c = fit.coeff.reshaped();
        const Vector bflat = beta.reshaped();
        CHECK(std::abs(c.dot(bflat)) < 1e-10);
        const double base = nbzeta::objective(c, gram);
        CHECK(base == doctest::Approx(fit.delta_sq).epsilon(1e-10));
        CHECK(base <= 1.0);

        std::mt19937_64 rng(5);
        std::normal_distribution<double> n01;
        for (int trial = 0; trial < 100; ++trial) {
            Vector v(c.size());
            for (auto& x : v) x = n01(rng);
            v -= (v.dot(bflat) / bflat.squaredNorm()) * bflat;
            CHECK(nbzeta::objective(Vector(c + 1e-4 * v), gram) >= base - 1e-10);
        }
    }

    TEST_CASE("nested harmonic schedules do not get worse")
    {
        double prev = 1.0;
        for (int m = 1; m <= 8; ++m) {
            const ParamMatrix beta = nbzeta::beta_schedule(nbzeta::ScheduleKind::harmonic, m, 1, 0);
            const auto fit = nbzeta::fit_coefficients(beta, nbzeta::assemble_gram(beta, nbzeta::GramMethod::quadrature));
            CHECK(fit.delta_sq <= prev + 1e-12);
            prev = fit.delta_sq;
        }
    }

    TEST_CASE("duplicate betas warn but still fit")
    {
        const ParamMatrix beta = column({0.5, 0.5, 0.25});
        const auto gram = nbzeta::assemble_gram(beta, nbzeta::GramMethod::quadrature);
        const auto fit = nbzeta::fit_coefficients(beta, gram);
        CHECK(!fit.warnings.empty());
        CHECK(fit.delta_sq <= 1.0);
        CHECK(std::isfinite(fit.delta_sq));
    }

    TEST_CASE("objective shape checks")
    {
        const ParamMatrix beta = column({0.5, 0.25});
        const auto gram = nbzeta::assemble_gram(beta, nbzeta::GramMethod::quadrature);
        CHECK(nbzeta::objective(Vector::Zero(2), gram) == 1.0);
        CHECK_THROWS_AS(nbzeta::objective(Vector::Zero(3), gram), nbzeta::ShapeError);
        CHECK_THROWS_AS(nbzeta::fit_coefficients(column({0.5, 0.25, 0.1}), gram), nbzeta::ShapeError);
    }

    TEST_CASE("schedules")
    {
        const ParamMatrix h = nbzeta::beta_schedule(nbzeta::ScheduleKind::harmonic, 3, 2, 0);
        CHECK(h(2, 1) == 0.25);
        const ParamMatrix r1 = nbzeta::beta_schedule(nbzeta::ScheduleKind::random, 4, 3, 9);
        const ParamMatrix r2 = nbzeta::beta_schedule(nbzeta::ScheduleKind::random, 4, 3, 9);
        CHECK(r1 == r2);
        CHECK(r1.minCoeff() >= 1e-3);
        CHECK(r1.maxCoeff() <= 1.0 - 1e-3);
        CHECK(nbzeta::convert_schedule("random") == nbzeta::ScheduleKind::random);
        CHECK_THROWS_AS(nbzeta::convert_schedule("golden"), nbzeta::DomainError);
        CHECK(nbzeta::to_string(nbzeta::convert_gram_method("monte_carlo")) == "monte_carlo");
        CHECK_THROWS_AS(nbzeta::beta_schedule(nbzeta::ScheduleKind::harmonic, 0, 1, 0), nbzeta::DomainError);
    }
}
