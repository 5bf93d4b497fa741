// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/cli.hpp>

#include <nbzeta/certificates.hpp>
#include <nbzeta/error.hpp>
#include <nbzeta/frac_net.hpp>
#include <nbzeta/io.hpp>
#include <nbzeta/mellin.hpp>
#include <nbzeta/optimizer.hpp>
#include <nbzeta/zeta.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace nbzeta {
namespace {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Range
{
    double lo = 0.0;
    double hi = 0.0;
    int n = 1;

    double at(int k) const { return n == 1 ? lo : lo + (hi - lo) * k / (n - 1); }
};

Range parse_range(const std::vector<double>& v, const char* flag)
{
    if (v.size() != 3) throw UsageError(std::string(flag) + " takes MIN MAX COUNT");
    const double n = v[2];
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6) throw UsageError(std::string(flag) + ": COUNT must be a positive integer");
    return {v[0], v[1], static_cast<int>(n)};
}

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path)
{
    std::istringstream in(read_text_file(path));
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

// Fills options of `sub` not given on the command line: config first, then the seed variable.
void apply_defaults(CLI::App& sub, const std::map<std::string, std::string>& config)
{
    for (const auto& [key, value] : config) {
        CLI::Option* opt = nullptr;
        try {
            opt = sub.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            continue;
        }
        if (opt->count() > 0) continue;
        std::istringstream words(value);
        std::string w;
        while (words >> w) opt->add_result(w);
        opt->run_callback();
    }
    if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
        try {
            CLI::Option* opt = sub.get_option("--seed");
            if (opt->count() == 0) {
                opt->add_result(env);
                opt->run_callback();
            }
        } catch (const CLI::OptionNotFound&) {
        }
    }
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

void check_workers(int workers)
{
    if (workers < 1) throw UsageError("--workers must be >= 1");
}

void check_format(const std::string& format)
{
    if (format != "text" && format != "csv" && format != "json") {
        throw UsageError("--format must be one of text, csv, json");
    }
}

// ---- zeta -------------------------------------------------------------------

struct ZetaArgs
{
    double re = 0.0;
    double im = 0.0;
    std::vector<double> re_range;
    std::vector<double> im_range;
    double tol = 1e-10;
    std::string format = "text";
    std::string out;
};

int cmd_zeta(const ZetaArgs& a, std::ostream& out)
{
    check_format(a.format);
    if (!(a.tol > 0.0)) throw UsageError("--tol must be > 0");
    ZetaEvalPolicy policy;
    policy.target_abs_tol = a.tol;

    const bool grid = !a.re_range.empty() || !a.im_range.empty();
    if (!grid) {
        const Complex z(a.re, a.im);
        const Complex v = zeta(z, policy);
        std::string text;
        if (a.format == "json") {
            text = dump(json{{"re", a.re}, {"im", a.im}, {"zeta_re", v.real()}, {"zeta_im", v.imag()}});
        } else if (a.format == "csv") {
            text = "re,im,zeta_re,zeta_im\n" + format_double(a.re) + "," + format_double(a.im) + ","
                   + format_double(v.real()) + "," + format_double(v.imag()) + "\n";
        } else if (a.im == 0.0 && v.imag() == 0.0) {
            text = format_double(v.real()) + "\n";
        } else {
            text = format_double(v.real()) + " " + format_double(v.imag()) + "\n";
        }
        emit(a.out, text, out);
        return kExitOk;
    }

    const Range rr = a.re_range.empty() ? Range{a.re, a.re, 1} : parse_range(a.re_range, "--re-range");
    const Range ir = a.im_range.empty() ? Range{a.im, a.im, 1} : parse_range(a.im_range, "--im-range");
    json rows = json::array();
    std::string csv = "re,im,zeta_re,zeta_im\n";
    for (int i = 0; i < rr.n; ++i) {
        for (int k = 0; k < ir.n; ++k) {
            const Complex z(rr.at(i), ir.at(k));
            const Complex v = zeta(z, policy);
            csv += format_double(z.real()) + "," + format_double(z.imag()) + "," + format_double(v.real()) + ","
                   + format_double(v.imag()) + "\n";
            rows.push_back({{"re", z.real()}, {"im", z.imag()}, {"zeta_re", v.real()}, {"zeta_im", v.imag()}});
        }
    }
    emit(a.out, a.format == "json" ? dump(rows) : csv, out);
    return kExitOk;
}

// ---- verify-identity --------------------------------------------------------

struct IdentityArgs
{
    double theta = 0.5;
    double tol = 1e-6;
    std::vector<double> re_range;
    std::vector<double> im_range;
    std::string format = "csv";
    std::string out;
};

int cmd_verify_identity(const IdentityArgs& a, std::ostream& out, std::ostream& err)
{
    check_format(a.format);
    if (!(a.theta > 0.0 && a.theta < 1.0)) throw UsageError("--theta must lie in (0,1)");
    if (!(a.tol > 0.0)) throw UsageError("--tol must be > 0");
    const Range rr = a.re_range.empty() ? Range{0.2, 2.0, 5} : parse_range(a.re_range, "--re-range");
    const Range ir = a.im_range.empty() ? Range{-20.0, 20.0, 10} : parse_range(a.im_range, "--im-range");
    if (!(std::min(rr.lo, rr.hi) > 0.0)) throw UsageError("--re-range must stay in Re z > 0");

    ZetaEvalPolicy policy;
    policy.target_abs_tol = 0.01 * a.tol;
    const double quad_tol = 0.1 * a.tol;

    std::string csv = "re,im,residual\n";
    json rows = json::array();
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < rr.n; ++i) {
        for (int k = 0; k < ir.n; ++k) {
            const Complex z(rr.at(i), ir.at(k));
            const double r = identity_residual(a.theta, z, quad_tol, policy);
            worst = std::max(worst, r);
            if (!(r < a.tol)) ++failures;
            csv += format_double(z.real()) + "," + format_double(z.imag()) + "," + format_double(r) + "\n";
            rows.push_back({{"re", z.real()}, {"im", z.imag()}, {"residual", r}});
        }
    }
    if (a.format == "json") {
        emit(a.out, dump(json{{"theta", a.theta}, {"tol", a.tol}, {"max_residual", worst}, {"rows", rows}}), out);
    } else {
        emit(a.out, csv, out);
    }
    if (failures > 0) {
        err << "verify-identity: " << failures << " residual(s) >= tol " << format_double(a.tol)
            << " (max " << format_double(worst) << ")\n";
        return kExitTolerance;
    }
    return kExitOk;
}

// ---- fit --------------------------------------------------------------------

struct FitArgs
{
    int d = 1;
    int m = 5;
    std::string scheme = "harmonic";
    std::string beta_file;
    std::string method = "quadrature";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    int workers = 1;
    double tol = 1e-9;
    std::string out;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err)
{
    check_workers(a.workers);
    if (a.d < 1) throw UsageError("--d must be >= 1");
    ScheduleKind kind;
    GramMethod method;
    try {
        kind = convert_schedule(a.scheme);
        method = convert_gram_method(a.method);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (kind == ScheduleKind::file && a.beta_file.empty()) throw UsageError("--scheme file needs --beta-file");
    if (kind != ScheduleKind::file && a.m < 1) throw UsageError("--m must be >= 1");

    const ParamMatrix beta = beta_schedule(kind, kind == ScheduleKind::file ? 0 : a.m,
                                           kind == ScheduleKind::file ? 0 : a.d, a.seed, a.beta_file);
    GramOptions gopts;
    gopts.tol = a.tol;
    gopts.samples = a.samples;
    gopts.seed = a.seed;
    gopts.workers = a.workers;
    const GramSystem gram = assemble_gram(beta, method, gopts);
    validate_gram(gram);

    FitRecord rec;
    rec.fit = fit_coefficients(beta, gram);
    rec.gram_method = to_string(gram.method);
    rec.est_entry_err = gram.est_entry_err;
    rec.schedule = to_string(kind);
    for (const auto& w : rec.fit.warnings) err << "fit: warning: " << w << "\n";

    const FracNet net = make_net(static_cast<int>(beta.cols()), static_cast<int>(beta.rows()), beta, rec.fit.coeff);
    emit(a.out, dump(fit_to_json(net, rec)), out);
    return kExitOk;
}

// ---- certify ----------------------------------------------------------------

struct CertifyArgs
{
    std::string net;
    std::uint64_t n = 10'000;
    double alpha = 0.1;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out)
{
    check_workers(a.workers);
    if (a.n < 1) throw UsageError("--N must be >= 1");
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0,1)");
    const FracNet net = net_from_json(read_json_file(a.net));
    const Certificate cert = monte_carlo_certificate(net, a.n, a.alpha, a.seed, a.workers);
    emit(a.out, dump(certificate_to_json(cert)), out);
    return kExitOk;
}

// ---- region -----------------------------------------------------------------

struct RegionArgs
{
    std::string certificate;
    std::string fit;
    double delta = 0.0;
    int d = 1;
    double a_min = 0.5;
    double a_max = 1.0;
    int n_pts = 1001;
    std::string out;
};

int cmd_region(const RegionArgs& a, std::ostream& out)
{
    const int sources = int(!a.certificate.empty()) + int(!a.fit.empty()) + int(a.delta != 0.0);
    if (sources != 1) throw UsageError("region needs exactly one of --certificate, --fit, --delta");
    if (!(a.a_min >= 0.5 && a.a_min < a.a_max)) throw UsageError("need 1/2 <= --a-min < --a-max");
    if (a.n_pts < 2) throw UsageError("--n-pts must be >= 2");

    ZeroFreeRegion region;
    if (!a.certificate.empty()) {
        region = certificate_from_json(read_json_file(a.certificate)).region;
    } else if (!a.fit.empty()) {
        const json j = read_json_file(a.fit);
        const FracNet net = net_from_json(j);
        const FitRecord rec = fit_from_json(j);
        region = exact_region(std::sqrt(rec.fit.delta_sq), net.dim());
    } else {
        if (a.d < 1) throw UsageError("--d must be >= 1");
        region = exact_region(a.delta, a.d);
    }
    std::ostringstream os;
    write_polyline_csv(os, boundary_polyline(region, a.a_min, a.a_max, a.n_pts));
    emit(a.out, os.str(), out);
    return kExitOk;
}

// ---- plan -------------------------------------------------------------------

struct PlanArgs
{
    double epsilon = 0.0;
    int d = 1;
    double alpha = 0.1;
    double c_l1 = 0.0;
    std::string out;
};

int cmd_plan(const PlanArgs& a, std::ostream& out)
{
    if (!(a.epsilon > 0.0 && a.epsilon < 1.0)) throw UsageError("--epsilon must lie in (0,1)");
    if (a.d < 1) throw UsageError("--d must be >= 1");
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0,1)");
    if (!(a.c_l1 >= 0.0)) throw UsageError("--c-l1 must be >= 0");
    const SamplePlan plan = plan_samples(a.epsilon, a.d, a.alpha, a.c_l1);
    json j{{"epsilon", a.epsilon}, {"d", a.d},          {"alpha", a.alpha},           {"c_l1", a.c_l1},
           {"N", plan.n_real},     {"N_exact", nullptr}, {"saturated", plan.saturated}, {"infeasible", plan.infeasible},
           {"budget", kFeasibleSampleBudget}};
    if (plan.n_exact) j["N_exact"] = *plan.n_exact;
    if (!std::isfinite(plan.n_real)) j["N"] = nullptr;
    emit(a.out, dump(j), out);
    return kExitOk;
}

// ---- figure -----------------------------------------------------------------

constexpr int kFigureGrid = 10'000;

struct FigureArgs
{
    std::string name;
    std::vector<double> delta_eff = {1.0, 0.5, 0.25, 0.1};
    std::string out;
};

int cmd_figure(const FigureArgs& a, std::ostream& out)
{
    std::string csv;
    if (a.name == "rho-curves") {
        csv = "x,rho(0.1/x),rho(0.5/x)\n";
        for (int i = 1; i < kFigureGrid; ++i) {
            const double x = static_cast<double>(i) / kFigureGrid;
            csv += format_double(x) + "," + format_double(frac(0.1 / x)) + "," + format_double(frac(0.5 / x)) + "\n";
        }
    } else if (a.name == "net-steps") {
        const FracNet net = example_net();
        csv = "x,f\n";
        for (int i = 1; i < kFigureGrid; ++i) {
            const double x = static_cast<double>(i) / kFigureGrid;
            csv += format_double(x) + "," + format_double(eval(net, x)) + "\n";
        }
    } else if (a.name == "regions") {
        csv = "delta_eff,a,b_plus,b_minus\n";
        for (double de : a.delta_eff) {
            ZeroFreeRegion r;
            if (!(de > 0.0)) throw UsageError("--delta-eff values must be > 0");
            r.delta_eff = de;
            for (const auto& p : boundary_polyline(r, 0.5, 1.0, kFigureGrid + 1)) {
                csv += format_double(de) + "," + format_double(p.a) + "," + format_double(p.b_plus) + ","
                       + format_double(p.b_minus) + "\n";
            }
        }
    } else {
        throw UsageError("unknown figure: " + a.name);
    }
    emit(a.out, csv, out);
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Nyman-Beurling zeta toolkit", "nbzeta"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "Flat key = value file with option defaults");

    ZetaArgs za;
    auto* zeta_cmd = app.add_subcommand("zeta", "Evaluate the Riemann zeta function");
    zeta_cmd->add_option("--re", za.re, "Real part");
    zeta_cmd->add_option("--im", za.im, "Imaginary part");
    zeta_cmd->add_option("--re-range", za.re_range, "Grid: MIN MAX COUNT")->expected(3);
    zeta_cmd->add_option("--im-range", za.im_range, "Grid: MIN MAX COUNT")->expected(3);
    zeta_cmd->add_option("--tol", za.tol, "Absolute tolerance");
    zeta_cmd->add_option("--format", za.format, "text, csv or json");
    zeta_cmd->add_option("--out", za.out, "Output file (default stdout)");

    IdentityArgs ia;
    auto* id_cmd = app.add_subcommand("verify-identity", "Check the Mellin identity for frac(theta/x)");
    id_cmd->add_option("--theta", ia.theta, "theta in (0,1)")->required();
    id_cmd->add_option("--tol", ia.tol, "Residual tolerance");
    id_cmd->add_option("--re-range", ia.re_range, "Grid: MIN MAX COUNT")->expected(3);
    id_cmd->add_option("--im-range", ia.im_range, "Grid: MIN MAX COUNT")->expected(3);
    id_cmd->add_option("--format", ia.format, "csv or json");
    id_cmd->add_option("--out", ia.out, "Output file (default stdout)");

    FitArgs fa;
    auto* fit_cmd = app.add_subcommand("fit", "Fit coefficients for a fixed beta schedule");
    fit_cmd->add_option("--d", fa.d, "Dimension");
    fit_cmd->add_option("--m", fa.m, "Terms per dimension");
    fit_cmd->add_option("--scheme", fa.scheme, "harmonic, random or file");
    fit_cmd->add_option("--beta-file", fa.beta_file, "JSON beta matrix for --scheme file");
    fit_cmd->add_option("--method", fa.method, "quadrature or monte_carlo");
    fit_cmd->add_option("--samples", fa.samples, "Monte-Carlo samples");
    fit_cmd->add_option("--seed", fa.seed, "Seed for random schedules and sampling");
    fit_cmd->add_option("--workers", fa.workers, "Worker threads");
    fit_cmd->add_option("--tol", fa.tol, "Per-entry quadrature tolerance");
    fit_cmd->add_option("--out", fa.out, "Output file (default stdout)");

    CertifyArgs ca;
    auto* cert_cmd = app.add_subcommand("certify", "Monte-Carlo certificate for a network");
    cert_cmd->add_option("--net", ca.net, "Network or fit JSON")->required();
    cert_cmd->add_option("--N", ca.n, "Sample count");
    cert_cmd->add_option("--alpha", ca.alpha, "Failure probability");
    cert_cmd->add_option("--seed", ca.seed, "Seed");
    cert_cmd->add_option("--workers", ca.workers, "Worker threads");
    cert_cmd->add_option("--out", ca.out, "Output file (default stdout)");

    RegionArgs ra;
    auto* region_cmd = app.add_subcommand("region", "Boundary polyline of a zero-free region");
    region_cmd->add_option("--certificate", ra.certificate, "Certificate JSON");
    region_cmd->add_option("--fit", ra.fit, "Fit JSON");
    region_cmd->add_option("--delta", ra.delta, "Known distance ||1 - f||");
    region_cmd->add_option("--d", ra.d, "Dimension for --delta");
    region_cmd->add_option("--a-min", ra.a_min, "Smallest Re z");
    region_cmd->add_option("--a-max", ra.a_max, "Largest Re z");
    region_cmd->add_option("--n-pts", ra.n_pts, "Number of points");
    region_cmd->add_option("--out", ra.out, "Output file (default stdout)");

    PlanArgs pa;
    auto* plan_cmd = app.add_subcommand("plan", "Sample size for a target delta_eff");
    plan_cmd->add_option("--epsilon", pa.epsilon, "Target delta_eff")->required();
    plan_cmd->add_option("--d", pa.d, "Dimension");
    plan_cmd->add_option("--alpha", pa.alpha, "Failure probability");
    plan_cmd->add_option("--c-l1", pa.c_l1, "l1 norm of the coefficients");
    plan_cmd->add_option("--out", pa.out, "Output file (default stdout)");

    FigureArgs ga;
    auto* fig_cmd = app.add_subcommand("figure", "CSV data for rho-curves, net-steps or regions");
    fig_cmd->add_option("name", ga.name, "rho-curves, net-steps or regions")->required();
    fig_cmd->add_option("--delta-eff", ga.delta_eff, "delta_eff values for regions");
    fig_cmd->add_option("--out", ga.out, "Output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        CLI::App* sub = app.get_subcommands().front();
        apply_defaults(*sub, config_path.empty() ? std::map<std::string, std::string>{} : read_config(config_path));

        if (sub == zeta_cmd) return cmd_zeta(za, out);
        if (sub == id_cmd) return cmd_verify_identity(ia, out, err);
        if (sub == fit_cmd) return cmd_fit(fa, out, err);
        if (sub == cert_cmd) return cmd_certify(ca, out);
        if (sub == region_cmd) return cmd_region(ra, out);
        if (sub == plan_cmd) return cmd_plan(pa, out);
        return cmd_figure(ga, out);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "nbzeta: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "nbzeta: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PoleError& e) {
        err << "nbzeta: pole: " << e.what() << "\n";
        return kExitDomain;
    } catch (const DomainError& e) {
        err << "nbzeta: domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const IoError& e) {
        err << "nbzeta: I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const nbzeta_error& e) {
        // Convergence, tolerance and singular-system failures.
        err << "nbzeta: " << e.what() << "\n";
        return kExitTolerance;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

} // namespace nbzeta
