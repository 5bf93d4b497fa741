// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <nbzeta/certificates.hpp>
#include <nbzeta/cli.hpp>
#include <nbzeta/frac_net.hpp>
#include <nbzeta/io.hpp>
#include <nbzeta/mellin.hpp>
#include <nbzeta/optimizer.hpp>
#include <nbzeta/sampling.hpp>
#include <nbzeta/summation.hpp>
#include <nbzeta/zeta.hpp>

#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nbzeta;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---- 1 ----------------------------------------------------------------------

Outcome zeta_continuation()
{
    Outcome o;
    const auto t0 = Clock::now();
    const double z0 = zeta(Complex(0.0, 0.0)).real();
    o.require(std::abs(z0 + 0.5) <= 1e-10, "zeta(0) = -1/2");
    double worst = 0.0;
    for (int k = 1; k <= 5; ++k) worst = std::max(worst, std::abs(zeta(Complex(-2.0 * k, 0.0))));
    o.require(worst < 1e-8, "trivial zeros");
    const double elapsed = seconds_since(t0);

    // sum_{n<=N} n^-2 plus the midpoint of the tail bracket [1/(N+1), 1/N].
    const long n_terms = 1'000'000;
    NeumaierSum<double> s;
    for (long n = n_terms; n >= 1; --n) s.add(1.0 / (static_cast<double>(n) * static_cast<double>(n)));
    const double lo = 1.0 / (n_terms + 1.0);
    const double hi = 1.0 / n_terms;
    const double oracle = s.value() + 0.5 * (lo + hi);
    const double oracle_err = 0.5 * (hi - lo);
    const double z2 = zeta(Complex(2.0, 0.0)).real();
    o.require(std::abs(z2 - oracle) <= 1e-10 + oracle_err, "zeta(2) vs series oracle");
    o.require(std::abs(z2 - kPi * kPi / 6.0) <= 1e-10, "zeta(2) = pi^2/6");
    o.require(elapsed < 1.0, "runtime < 1 s");
    o.note("|zeta(0)+0.5|=" + sci(std::abs(z0 + 0.5)) + ", max|zeta(-2k)|=" + sci(worst) + ", |zeta(2)-pi^2/6|="
           + sci(std::abs(z2 - kPi * kPi / 6.0)) + ", " + sci(elapsed) + " s");
    return o;
}

// ---- 2 ----------------------------------------------------------------------

Outcome functional_equation()
{
    Outcome o;
    const ZetaEvalPolicy policy;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ure(0.0, 1.0);
    std::uniform_real_distribution<double> uim(-20.0, 20.0);
    const auto t0 = Clock::now();
    double worst = 0.0;
    int n = 0;
    while (n < 100) {
        const Complex z(ure(rng), uim(rng));
        if (!(z.real() > 0.0 && z.real() < 1.0)) continue;
        if (std::abs(z) <= policy.singular_guard_radius || std::abs(z - 1.0) <= policy.singular_guard_radius) continue;
        worst = std::max(worst, functional_equation_residual(z, policy));
        ++n;
    }
    const double elapsed = seconds_since(t0);
    o.require(worst < 1e-8, "residual < 1e-8");
    o.require(elapsed < 10.0, "runtime < 10 s");
    o.note("max residual " + sci(worst) + " over 100 points, " + sci(elapsed) + " s");
    return o;
}

// ---- 3 ----------------------------------------------------------------------

Outcome mellin_identity()
{
    Outcome o;
    ZetaEvalPolicy policy;
    policy.target_abs_tol = 1e-9;
    const auto t0 = Clock::now();
    double worst = 0.0;
    int count = 0;
    for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int i = 0; i < 5; ++i) {
            const double re = 0.2 + 1.8 * i / 4.0;
            for (int k = 0; k < 10; ++k) {
                const double im = -20.0 + 40.0 * k / 9.0;
                worst = std::max(worst, identity_residual(theta, Complex(re, im), 1e-8, policy));
                ++count;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    o.require(worst < 1e-6, "residual < 1e-6");
    o.require(elapsed < 60.0, "runtime < 60 s");
    o.note("max residual " + sci(worst) + " over " + std::to_string(count) + " (theta, z), " + sci(elapsed) + " s");
    return o;
}

// ---- 4 ----------------------------------------------------------------------

// Random net whose columns satisfy the constraint exactly in binary:
// dyadic beta and c on a 2^-20 grid (all products and sums exact), the last
// term on beta = 2^-e so that its coefficient -S 2^e is exact as well.
FracNet exact_net(std::mt19937_64& rng, int d, int m)
{
    constexpr double grid = 0x1.0p-20;
    std::uniform_int_distribution<long> ub(1, (1L << 20) - 1);
    std::uniform_int_distribution<long> uc(-5L << 20, 5L << 20);
    std::uniform_int_distribution<int> ue(1, 8);
    ParamMatrix beta(m, d);
    ParamMatrix coeff(m, d);
    for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int i = 0; i + 1 < m; ++i) {
            beta(i, j) = static_cast<double>(ub(rng)) * grid;
            coeff(i, j) = static_cast<double>(uc(rng)) * grid;
            s += coeff(i, j) * beta(i, j);
        }
        const int e = ue(rng);
        beta(m - 1, j) = std::ldexp(1.0, -e);
        coeff(m - 1, j) = -std::ldexp(s, e);
    }
    return make_net(d, m, beta, coeff);
}

// Random net projected column by column: the constraint holds up to rounding.
FracNet projected_net(std::mt19937_64& rng, int d, int m)
{
    std::uniform_real_distribution<double> ub(kBetaMargin, 1.0 - kBetaMargin);
    std::uniform_real_distribution<double> uc(-5.0, 5.0);
    ParamMatrix beta(m, d);
    ParamMatrix coeff(m, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < m; ++i) {
            beta(i, j) = ub(rng);
            coeff(i, j) = uc(rng);
        }
        coeff.col(j) = project_constraint(coeff.col(j), beta.col(j));
    }
    return make_net(d, m, beta, coeff);
}

Outcome step_form()
{
    Outcome o;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    double worst_tail = 0.0;
    double worst_identity = 0.0;
    double worst_generic = 0.0;
    for (int trial = 0; trial < 10'000; ++trial) {
        const int d = 1 + trial % 3;
        const int m = 1 + static_cast<int>(u(rng) * 10.0);
        const FracNet net = exact_net(rng, d, m);
        Vector x(d);
        Vector x_tail(d);
        for (int j = 0; j < d; ++j) {
            x[j] = std::max(u(rng), 1e-300);
            const double top = net.max_beta(j);
            x_tail[j] = std::min(top + u(rng) * (1.0 - top), std::nextafter(1.0, 0.0));
            if (!(x_tail[j] > top)) x_tail[j] = std::nextafter(top, 1.0);
        }
        worst = std::max(worst, std::abs(eval(net, x) - eval_step_form(net, x)));
        worst_tail = std::max(worst_tail, std::abs(eval(net, x_tail)));

        // Generic nets: the gap is sum_j (c_j . beta_j) / x_j to rounding.
        const FracNet g = projected_net(rng, d, m);
        double predicted = 0.0;
        for (int j = 0; j < d; ++j) predicted += flat_dot(g.coeff().col(j), g.beta().col(j)) / x[j];
        const double gap = eval(g, x) - eval_step_form(g, x);
        worst_identity = std::max(worst_identity, std::abs(gap - predicted));
        worst_generic = std::max(worst_generic, std::abs(gap));
    }
    o.require(worst <= 1e-12, "|eval - eval_step_form| <= 1e-12");
    o.require(worst_tail <= 1e-12, "f = 0 beyond max beta");
    o.require(worst_identity <= 1e-12, "generic gap equals residual / x");
    o.note("max step-form gap " + sci(worst) + ", max |f| beyond max beta " + sci(worst_tail)
           + " on 10^4 exactly constrained pairs; projected nets: max gap " + sci(worst_generic)
           + ", max |gap - residual/x| " + sci(worst_identity));
    return o;
}

// ---- 5 ----------------------------------------------------------------------

// Coarse-to-fine grid search for the minimum of the objective over c = N t,
// N an orthonormal basis of {c : c . beta = 0}.
double grid_search(const GramSystem& gram, const ParamMatrix& beta)
{
    const Vector b = beta.reshaped();
    const Eigen::Index n = b.size();
    if (n == 1) return objective(Vector::Zero(1), gram);
    Eigen::JacobiSVD<Matrix> svd(Matrix(b.transpose()), Eigen::ComputeFullV);
    const Matrix basis = svd.matrixV().rightCols(n - 1);
    const int k = static_cast<int>(n - 1);

    Vector center = Vector::Zero(k);
    double half_width = 40.0;
    double best = objective(Vector::Zero(n), gram);
    const int steps = k == 1 ? 2000 : 200;
    for (int level = 0; level < 8; ++level) {
        Vector best_t = center;
        const double h = 2.0 * half_width / steps;
        std::vector<int> idx(static_cast<std::size_t>(k), 0);
        while (true) {
            Vector t(k);
            for (int q = 0; q < k; ++q) t[q] = center[q] - half_width + h * idx[static_cast<std::size_t>(q)];
            const double v = objective(Vector(basis * t), gram);
            if (v < best) {
                best = v;
                best_t = t;
            }
            int q = 0;
            while (q < k && ++idx[static_cast<std::size_t>(q)] > steps) idx[static_cast<std::size_t>(q++)] = 0;
            if (q == k) break;
        }
        center = best_t;
        half_width = 4.0 * h;
    }
    return best;
}

Outcome optimizer_oracle()
{
    Outcome o;
    double worst_gap = 0.0;
    double worst_sq = 0.0;
    std::vector<ParamMatrix> cases;
    for (int m = 1; m <= 3; ++m) {
        cases.push_back(beta_schedule(ScheduleKind::harmonic, m, 1, 0));
        cases.push_back(beta_schedule(ScheduleKind::random, m, 1, 100 + m));
        cases.push_back(beta_schedule(ScheduleKind::random, m, 1, 200 + m));
    }
    for (const auto& beta : cases) {
        const GramSystem gram = assemble_gram(beta, GramMethod::quadrature);
        const FitResult fit = fit_coefficients(beta, gram);
        worst_gap = std::max(worst_gap, std::abs(fit.delta_sq - grid_search(gram, beta)));
        worst_sq = std::max(worst_sq, fit.delta_sq);
    }
    o.require(worst_gap <= 1e-3, "KKT vs grid search within 1e-3");

    double prev = 2.0;
    bool monotone = true;
    std::string trail;
    for (int m = 1; m <= 20; ++m) {
        const ParamMatrix beta = beta_schedule(ScheduleKind::harmonic, m, 1, 0);
        const FitResult fit = fit_coefficients(beta, assemble_gram(beta, GramMethod::quadrature));
        if (fit.delta_sq > prev) monotone = false;
        prev = fit.delta_sq;
        worst_sq = std::max(worst_sq, fit.delta_sq);
    }
    for (int d = 1; d <= 3; ++d) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const ParamMatrix beta = beta_schedule(ScheduleKind::random, 6, d, seed);
            worst_sq = std::max(worst_sq, fit_coefficients(beta, assemble_gram(beta, GramMethod::quadrature)).delta_sq);
        }
    }
    o.require(monotone, "nested harmonic delta_sq nonincreasing for m = 1..20");
    o.require(worst_sq <= 1.0, "delta_sq <= 1");
    o.note("max |KKT - grid| " + sci(worst_gap) + " on " + std::to_string(cases.size())
           + " cases; harmonic m=20 delta_sq " + sci(prev) + "; max delta_sq " + sci(worst_sq));
    return o;
}

// ---- 6 ----------------------------------------------------------------------

Outcome multi_d_objective()
{
    Outcome o;
    ParamMatrix beta(3, 2);
    beta << 0.8, 0.55, 0.4, 0.3, 0.15, 0.2;
    const GramSystem gram = assemble_gram(beta, GramMethod::quadrature);
    const FitResult fit = fit_coefficients(beta, gram);
    const FracNet net = make_net(2, 3, beta, fit.coeff);
    const double analytic = objective(net, gram);

    const SampleMoments mom = sample_moments(1'000'000, 17, 2, 1, 1, [&](std::span<const double> x, Eigen::Ref<Vector> out) {
        const double f = eval(net, Eigen::Map<const Vector>(x.data(), 2));
        out[0] = (1.0 - f) * (1.0 - f);
    });
    const double mc = mom.mean()[0];
    const double se = mom.std_error()[0];
    o.require(std::abs(analytic - mc) <= 4.0 * se, "objective within 4 standard errors");
    o.note("objective " + sci(analytic) + ", Monte-Carlo " + sci(mc) + " +- " + sci(se) + " ("
           + sci(std::abs(analytic - mc) / se) + " SE)");
    return o;
}

// ---- 7 ----------------------------------------------------------------------

Outcome certificate_soundness()
{
    Outcome o;
    const FracNet example = example_net();
    const ParamMatrix beta = beta_schedule(ScheduleKind::harmonic, 6, 1, 0);
    const GramSystem gram = assemble_gram(beta, GramMethod::quadrature);
    const FracNet fitted = make_net(1, 6, beta, fit_coefficients(beta, gram).coeff);

    for (const FracNet* net : {&example, &fitted}) {
        const double truth = objective(*net, assemble_gram(net->beta(), GramMethod::quadrature));
        int violations = 0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            if (monte_carlo_certificate(*net, 10'000, 0.1, seed).delta_N < truth) ++violations;
        }
        o.require(violations / 200.0 <= 0.1, "violation rate <= alpha");
        o.note("truth " + sci(truth) + ": violations " + std::to_string(violations) + "/200");
    }
    const Certificate c = monte_carlo_certificate(example, 10'000, 0.1, 0);
    const double expected = 37.0 * std::sqrt(2.0 * std::log(20.0) / 1e4);
    o.require(c.penalty == expected, "penalty = 37 sqrt(2 ln 20 / 10^4)");
    o.note("penalty " + format_double(c.penalty));
    return o;
}

// ---- 8 ----------------------------------------------------------------------

Outcome region_geometry()
{
    Outcome o;
    ZeroFreeRegion r;
    r.delta_eff = 0.25;
    const double h = max_height_in_strip(r);
    o.require(std::abs(h - std::sqrt(3.0)) <= 1e-9, "max height sqrt(3)");
    double top = 0.0;
    for (const auto& p : boundary_polyline(r, 0.5, 1.0, 1001)) top = std::max(top, std::abs(p.b_plus));
    o.require(std::abs(top - std::sqrt(3.0)) <= 1e-4, "polyline max within 1e-4");

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ure(0.0, 1.5);
    std::uniform_real_distribution<double> uim(-4.0, 4.0);
    const double levels[] = {1.0, 0.5, 0.25, 0.1, 0.01};
    bool nested = true;
    for (int k = 0; k < 1000; ++k) {
        const Complex z(ure(rng), uim(rng));
        for (std::size_t a = 0; a + 1 < std::size(levels); ++a) {
            ZeroFreeRegion big;
            ZeroFreeRegion small;
            big.delta_eff = levels[a + 1];
            small.delta_eff = levels[a];
            if (compare_regions(big, small) != RegionOrder::larger) nested = false;
            if (contains(small, z) && !contains(big, z)) nested = false;
        }
    }
    o.require(nested, "regions nested in delta_eff");
    o.note("height " + format_double(h) + ", polyline max " + format_double(top));
    return o;
}

// ---- 9 ----------------------------------------------------------------------

Outcome infeasibility()
{
    Outcome o;
    const SamplePlan plan = plan_samples(1e-12, 1, 0.1, 0.0);
    o.require(plan.n_real >= 1e24 && plan.n_real <= 1e26, "N in [1e24, 1e26]");
    o.require(plan.infeasible, "infeasible flag");
    o.note("N = " + sci(plan.n_real));
    return o;
}

// ---- 10 ---------------------------------------------------------------------

std::string run_cli_text(const std::vector<std::string>& args, int& code)
{
    std::ostringstream out;
    std::ostringstream err;
    code = run_cli(args, out, err);
    return out.str();
}

Outcome determinism()
{
    Outcome o;
    const std::string dir = NBZETA_TEST_SCRATCH_DIR;
    const std::string net = dir + "/acceptance_example.json";
    write_text_file(net, net_to_json(example_net()).dump(2));

    const std::vector<std::vector<std::string>> commands = {
        {"certify", "--net", net, "--N", "200000", "--alpha", "0.1", "--seed", "7"},
        {"fit", "--d", "2", "--m", "4", "--scheme", "harmonic"},
        {"fit", "--d", "1", "--m", "4", "--scheme", "random", "--seed", "3"},
        {"fit", "--d", "2", "--m", "3", "--method", "monte_carlo", "--samples", "300000", "--seed", "5"},
    };
    int identical = 0;
    for (const auto& cmd : commands) {
        auto one = cmd;
        one.insert(one.end(), {"--workers", "1"});
        auto eight = cmd;
        eight.insert(eight.end(), {"--workers", "8"});
        int c1 = -1;
        int c8 = -1;
        int c1b = -1;
        const std::string a = run_cli_text(one, c1);
        const std::string b = run_cli_text(eight, c8);
        const std::string again = run_cli_text(one, c1b);
        if (c1 == 0 && c8 == 0 && c1b == 0 && a == b && a == again && !a.empty()) ++identical;
    }
    o.require(identical == static_cast<int>(commands.size()), "byte-identical across 1 and 8 workers");
    o.note(std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical");
    return o;
}

} // namespace

int main()
{
    struct Criterion
    {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"zeta continuation", zeta_continuation},
        {"functional equation", functional_equation},
        {"Mellin identity", mellin_identity},
        {"step-function equivalence", step_form},
        {"optimizer oracle equivalence", optimizer_oracle},
        {"multi-d objective", multi_d_objective},
        {"Hoeffding certificate soundness", certificate_soundness},
        {"region geometry", region_geometry},
        {"sample-size infeasibility", infeasibility},
        {"determinism", determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::printf("criterion %2d %-32s %s  %s\n", index, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed;
}
