// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/optimizer.hpp>

#include <nbzeta/error.hpp>
#include <nbzeta/io.hpp>
#include <nbzeta/mellin.hpp>
#include <nbzeta/quadrature.hpp>
#include <nbzeta/sampling.hpp>
#include <nbzeta/summation.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace nbzeta {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Ratio
{
    long p;
    long q;
};

// Continued-fraction convergents of r; the first p/q within a few ulps of r.
std::optional<Ratio> detect_rational(double r, long q_max = 1'000'000)
{
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = r;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_real = std::floor(x);
        if (a_real > 1e12) break;
        const auto a = static_cast<long>(a_real);
        const long p2 = a * p1 + p0;
        const long q2 = a * q1 + q0;
        if (q2 > q_max) break;
        if (std::abs(r - static_cast<double>(p2) / static_cast<double>(q2)) <= 8.0 * kEps * r) {
            return Ratio{p2, q2};
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double f = x - a_real;
        if (f <= 0.0) break;
        x = 1.0 / f;
    }
    return std::nullopt;
}

// integral_0^eps frac(c/x) dx through the periodic Bernoulli expansion at V = c/eps.
double rho_tail(double c, double eps)
{
    const double v = c / eps;
    const double t = v - std::floor(v);
    const double b2 = t * t - t + 1.0 / 6.0;
    const double b3 = t * (t - 0.5) * (t - 1.0);
    return c * (0.5 / v - b2 / (2.0 * v * v) - b3 / (3.0 * v * v * v));
}

double gram_panels(double a, double b, double eps, long& n_panels)
{
    std::vector<double> pts{eps, 1.0};
    for (double c : {a, b}) {
        const auto k_max = static_cast<long>(std::floor(c / eps));
        for (long k = 1; k <= k_max; ++k) {
            const double p = c / static_cast<double>(k);
            if (p > eps && p < 1.0) pts.push_back(p);
        }
    }
    // Keep every panel's endpoint ratio <= 2 above the largest breakpoint.
    for (double x = 2.0 * std::max(a, b); x < 1.0; x *= 2.0) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const GaussRule& coarse = gauss_legendre(4);
    const GaussRule& fine = gauss_legendre(12);
    NeumaierSum<double> acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double x0 = pts[i];
        const double x1 = pts[i + 1];
        const double mid = 0.5 * (x0 + x1);
        const double ka = std::floor(a / mid);
        const double kb = std::floor(b / mid);
        auto f = [&](double x) { return (a / x - ka) * (b / x - kb); };
        acc.add(apply_rule(x1 > 1.05 * x0 ? fine : coarse, f, x0, x1));
    }
    n_panels = static_cast<long>(pts.size()) - 1;
    return acc.value();
}

void check_schedule_shape(const ParamMatrix& beta, int m, int d)
{
    if ((m > 0 && beta.rows() != m) || (d > 0 && beta.cols() != d)) {
        std::ostringstream os;
        os << "beta_schedule: file holds a " << beta.rows() << " x " << beta.cols() << " matrix, expected " << m
           << " x " << d;
        throw ShapeError(os.str());
    }
}

Vector flatten(const ParamMatrix& m)
{
    return Eigen::Map<const Vector>(m.data(), m.size());
}

ParamMatrix unflatten(const Vector& v, int m, int d)
{
    return Eigen::Map<const ParamMatrix>(v.data(), m, d);
}

Matrix kkt_matrix(const Matrix& q_mat, const Vector& beta_flat, double ridge)
{
    const Eigen::Index n = q_mat.rows();
    Matrix k = Matrix::Zero(n + 1, n + 1);
    k.topLeftCorner(n, n) = 2.0 * q_mat;
    k.topLeftCorner(n, n).diagonal().array() += 2.0 * ridge;
    k.block(0, n, n, 1) = beta_flat;
    k.block(n, 0, 1, n) = beta_flat.transpose();
    return k;
}

double condition_number(const Matrix& k)
{
    Eigen::JacobiSVD<Matrix> svd(k);
    const auto& s = svd.singularValues();
    const double smin = s[s.size() - 1];
    if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
    return s[0] / smin;
}

} // namespace

GramMethod convert_gram_method(const std::string& name)
{
    if (name == "quadrature") return GramMethod::quadrature;
    if (name == "monte_carlo" || name == "monte-carlo") return GramMethod::monte_carlo;
    throw DomainError("unknown Gram method: " + name);
}

std::string to_string(GramMethod method)
{
    return method == GramMethod::quadrature ? "quadrature" : "monte_carlo";
}

GramEntry gram_entry(double a, double b, double tol, double min_tail_cut)
{
    if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) throw DomainError("gram_entry: beta outside (0,1)");
    if (!(tol > 0.0) || !(min_tail_cut > 0.0)) throw DomainError("gram_entry: tol and min_tail_cut must be > 0");

    double cross_mean = 0.0;
    double eps = 0.0;
    double period = 0.0;
    const auto ratio = detect_rational(a / b);
    if (ratio) {
        cross_mean = 1.0 / (12.0 * static_cast<double>(ratio->p) * static_cast<double>(ratio->q));
        period = static_cast<double>(ratio->p) / a;
        eps = std::max(std::sqrt(1.5 * tol / period), min_tail_cut);
    } else {
        eps = std::max(2.0 * tol, min_tail_cut);
    }
    // The Bernoulli expansion of the single terms wants c/eps >= 1000.
    eps = std::min(eps, 1e-3 * std::min(a, b));

    long n_panels = 0;
    const double body = gram_panels(a, b, eps, n_panels);
    const double tail = 0.5 * rho_tail(a, eps) + 0.5 * rho_tail(b, eps) - 0.25 * eps + cross_mean * eps;

    GramEntry out;
    out.value = body + tail;
    const double cross_err = ratio ? period * eps * eps / 3.0 : 0.25 * eps;
    out.err = cross_err + static_cast<double>(n_panels) * kEps * eps + 64.0 * kEps;
    return out;
}

GramSystem assemble_gram(const ParamMatrix& beta, GramMethod method, const GramOptions& opts)
{
    validate_beta(beta);
    const int m = static_cast<int>(beta.rows());
    const int d = static_cast<int>(beta.cols());

    GramSystem g;
    g.method = method;
    g.beta = beta;
    g.G.assign(static_cast<std::size_t>(d), Matrix::Zero(m, m));
    g.b.assign(static_cast<std::size_t>(d), Vector::Zero(m));

    if (method == GramMethod::quadrature) {
        // b_i = integral frac(beta_i/x) dx has a closed form.
        struct Job
        {
            int j, i, k;
        };
        std::vector<Job> jobs;
        for (int j = 0; j < d; ++j) {
            for (int i = 0; i < m; ++i) {
                jobs.push_back({j, i, -1});
                for (int k = i; k < m; ++k) jobs.push_back({j, i, k});
            }
        }
        std::vector<GramEntry> results(jobs.size());
        parallel_for(jobs.size(), opts.workers, [&](std::size_t n) {
            const Job& job = jobs[n];
            const double a = beta(job.i, job.j);
            if (job.k < 0) {
                results[n] = {rho_integral_at_one(a), 0.0};
            } else {
                results[n] = gram_entry(a, beta(job.k, job.j), opts.tol, opts.min_tail_cut);
            }
        });
        for (std::size_t n = 0; n < jobs.size(); ++n) {
            const Job& job = jobs[n];
            const auto j = static_cast<std::size_t>(job.j);
            if (job.k < 0) {
                g.b[j][job.i] = results[n].value;
            } else {
                g.G[j](job.i, job.k) = results[n].value;
                g.G[j](job.k, job.i) = results[n].value;
            }
            g.est_entry_err = std::max(g.est_entry_err, results[n].err);
        }
        return g;
    }

    // Monte-Carlo: per dimension, m means and m(m+1)/2 product means.
    const int per_dim = m + m * (m + 1) / 2;
    const SampleMoments mom = sample_moments(
        opts.samples, opts.seed, d, per_dim * d, opts.workers, [&](std::span<const double> x, Eigen::Ref<Vector> out) {
            std::vector<double> r(static_cast<std::size_t>(m));
            for (int j = 0; j < d; ++j) {
                const int base = j * per_dim;
                for (int i = 0; i < m; ++i) {
                    r[static_cast<std::size_t>(i)] = frac(beta(i, j) / x[static_cast<std::size_t>(j)]);
                    out[base + i] = r[static_cast<std::size_t>(i)];
                }
                int o = base + m;
                for (int i = 0; i < m; ++i) {
                    for (int k = i; k < m; ++k) {
                        out[o++] = r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(k)];
                    }
                }
            }
        });
    const Vector mean = mom.mean();
    const Vector se = mom.std_error();
    for (int j = 0; j < d; ++j) {
        const int base = j * per_dim;
        const auto jj = static_cast<std::size_t>(j);
        for (int i = 0; i < m; ++i) g.b[jj][i] = mean[base + i];
        int o = base + m;
        for (int i = 0; i < m; ++i) {
            for (int k = i; k < m; ++k, ++o) {
                g.G[jj](i, k) = mean[o];
                g.G[jj](k, i) = mean[o];
            }
        }
    }
    g.est_entry_err = se.maxCoeff();
    return g;
}

void validate_gram(const GramSystem& gram)
{
    for (std::size_t j = 0; j < gram.G.size(); ++j) {
        const Matrix& g = gram.G[j];
        if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
            throw DomainError("Gram block " + std::to_string(j) + " is not symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-9) {
            throw DomainError("Gram block " + std::to_string(j) + " is not positive semidefinite");
        }
        const Vector& b = gram.b[j];
        if (!((b.array() > 0.0).all() && (b.array() < 1.0).all())) {
            throw DomainError("Gram vector " + std::to_string(j) + " has entries outside (0,1)");
        }
    }
}

QuadraticForm quadratic_form(const GramSystem& gram)
{
    const int m = gram.width();
    const int d = gram.dim();
    const int n = m * d;
    QuadraticForm qf{Matrix::Zero(n, n), Vector::Zero(n)};
    for (int j = 0; j < d; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        qf.Q.block(j * m, j * m, m, m) = gram.G[jj] - gram.b[jj] * gram.b[jj].transpose();
        qf.q.segment(j * m, m) = gram.b[jj];
    }
    qf.Q += qf.q * qf.q.transpose();
    return qf;
}

double objective(const Eigen::Ref<const Vector>& coeff_flat, const GramSystem& gram)
{
    const int m = gram.width();
    const int d = gram.dim();
    if (coeff_flat.size() != static_cast<Eigen::Index>(m) * d) {
        throw ShapeError("objective: coefficient vector does not match the Gram system");
    }
    // 1 - 2S + sum_j (c_j' G_j c_j - m_j^2) + S^2 with m_j = c_j' b_j, S = sum m_j.
    NeumaierSum<double> acc;
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const auto c = coeff_flat.segment(j * m, m);
        const double mj = c.dot(gram.b[jj]);
        acc.add(c.dot(gram.G[jj] * c));
        acc.add(-mj * mj);
        s += mj;
    }
    acc.add(1.0);
    acc.add(-2.0 * s);
    acc.add(s * s);
    return acc.value();
}

double objective(const FracNet& net, const GramSystem& gram)
{
    if (net.width() != gram.width() || net.dim() != gram.dim()) {
        throw ShapeError("objective: network shape does not match the Gram system");
    }
    return objective(flatten(net.coeff()), gram);
}

FitResult fit_coefficients(const ParamMatrix& beta, const GramSystem& gram, const FitOptions& opts)
{
    validate_beta(beta);
    if (beta.rows() != gram.width() || beta.cols() != gram.dim()) {
        throw ShapeError("fit_coefficients: beta does not match the Gram system");
    }
    const int m = gram.width();
    const int d = gram.dim();
    const Eigen::Index n = static_cast<Eigen::Index>(m) * d;
    const QuadraticForm qf = quadratic_form(gram);
    const Vector beta_flat = flatten(beta);

    FitResult out;
    for (int j = 0; j < d; ++j) {
        std::vector<double> col(beta.col(j).data(), beta.col(j).data() + m);
        std::sort(col.begin(), col.end());
        if (std::adjacent_find(col.begin(), col.end()) != col.end()) {
            out.warnings.push_back("duplicate beta entries in dimension " + std::to_string(j)
                                   + "; the Gram matrix is rank deficient");
        }
    }

    auto solve = [&](const Matrix& kkt, const Vector& center, double ridge) {
        Vector rhs(n + 1);
        rhs.head(n) = 2.0 * qf.q + 2.0 * ridge * center;
        rhs[n] = 0.0;
        Eigen::FullPivLU<Matrix> lu(kkt);
        Vector sol = lu.solve(rhs);
        // One step of iterative refinement on the same factorization.
        sol += lu.solve(rhs - kkt * sol);
        return sol;
    };
    auto finish = [&](const Vector& c, double lagrange) {
        out.coeff = project_constraint(unflatten(c, m, d), beta);
        out.lagrange = lagrange;
        out.delta_sq = objective(flatten(out.coeff), gram);
    };

    const Matrix kkt0 = kkt_matrix(qf.Q, beta_flat, 0.0);
    const double cond0 = condition_number(kkt0);
    if (cond0 <= opts.cond_limit) {
        const Vector sol = solve(kkt0, Vector::Zero(n), 0.0);
        if (sol.allFinite()) {
            finish(sol.head(n), sol[n]);
            out.cond_estimate = cond0;
            if (out.delta_sq <= 1.0) return out;
        }
    }

    for (double ridge : opts.ridge_ladder) {
        const Matrix kkt = kkt_matrix(qf.Q, beta_flat, ridge);
        const double cond = condition_number(kkt);
        if (!(cond <= opts.cond_limit)) continue;

        Eigen::FullPivLU<Matrix> lu(kkt);
        Vector center = Vector::Zero(n);
        double best = objective(center, gram);
        Vector best_sol = Vector::Zero(n + 1);
        int steps = 0;
        for (; steps < opts.max_refinements; ++steps) {
            Vector rhs(n + 1);
            rhs.head(n) = 2.0 * qf.q + 2.0 * ridge * center;
            rhs[n] = 0.0;
            Vector sol = lu.solve(rhs);
            sol += lu.solve(rhs - kkt * sol);
            const Vector c = flatten(project_constraint(unflatten(sol.head(n), m, d), beta));
            const double obj = objective(c, gram);
            if (!(obj < best)) break;
            const double gain = best - obj;
            best = obj;
            best_sol = sol;
            center = c;
            if (gain <= 1e-15 * std::max(1.0, std::abs(obj))) break;
        }
        // Report the unregularized multiplier: 2(Qc - q) + lambda beta = 0.
        finish(best_sol.head(n), best_sol[n]);
        const Vector grad = 2.0 * (qf.Q * flatten(out.coeff) - qf.q);
        out.lagrange = -grad.dot(beta_flat) / beta_flat.squaredNorm();
        out.cond_estimate = cond;
        out.ridge_used = ridge;
        out.refinements = steps;
        out.warnings.push_back("KKT condition estimate " + std::to_string(cond0) + " exceeded the limit; ridge "
                               + std::to_string(ridge) + " applied");
        return out;
    }
    throw SingularSystemError("fit_coefficients: KKT system stays singular after the full ridge ladder");
}

ScheduleKind convert_schedule(const std::string& name)
{
    if (name == "harmonic") return ScheduleKind::harmonic;
    if (name == "random") return ScheduleKind::random;
    if (name == "file") return ScheduleKind::file;
    throw DomainError("unknown beta schedule: " + name);
}

std::string to_string(ScheduleKind kind)
{
    switch (kind) {
    case ScheduleKind::harmonic: return "harmonic";
    case ScheduleKind::random: return "random";
    case ScheduleKind::file: return "file";
    }
    return "unknown";
}

ParamMatrix beta_schedule(ScheduleKind kind, int m, int d, std::uint64_t seed, const std::string& path)
{
    if (kind == ScheduleKind::file) {
        ParamMatrix beta = load_beta_file(path);
        check_schedule_shape(beta, m, d);
        validate_beta(beta);
        return beta;
    }
    if (m < 1 || d < 1) throw DomainError("beta_schedule: m and d must be >= 1");
    ParamMatrix beta(m, d);
    if (kind == ScheduleKind::harmonic) {
        for (int j = 0; j < d; ++j) {
            for (int k = 1; k <= m; ++k) beta(k - 1, j) = 1.0 / (k + 1.0);
        }
        return beta;
    }
    std::mt19937_64 rng(seed);
    constexpr double lo = 1e-3;
    constexpr double hi = 1.0 - 1e-3;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < m; ++i) beta(i, j) = lo + (hi - lo) * uniform_open(rng());
    }
    return beta;
}

} // namespace nbzeta
