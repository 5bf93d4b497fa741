// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/io.hpp>

#include <nbzeta/error.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nbzeta {
namespace {

template <class T>
T get_field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw DomainError(std::string("field \"") + key + "\": " + e.what());
    }
}

} // namespace

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json matrix_to_json(const ParamMatrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

ParamMatrix matrix_from_json(const json& rows, const char* what)
{
    if (!rows.is_array() || rows.empty()) throw DomainError(std::string(what) + ": expected a non-empty array of rows");
    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = rows[0].is_array() ? rows[0].size() : 0;
    if (n_cols == 0) throw DomainError(std::string(what) + ": rows must be non-empty arrays");
    ParamMatrix m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    for (std::size_t i = 0; i < n_rows; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != n_cols) {
            throw ShapeError(std::string(what) + ": ragged row " + std::to_string(i));
        }
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (!row[j].is_number()) throw DomainError(std::string(what) + ": non-numeric entry");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
        }
    }
    return m;
}

json net_to_json(const FracNet& net)
{
    json j;
    j["d"] = net.dim();
    j["m"] = net.width();
    j["beta"] = matrix_to_json(net.beta());
    j["coeff"] = matrix_to_json(net.coeff());
    j["constraint_tol"] = net.constraint_tol();
    return j;
}

FracNet net_from_json(const json& j)
{
    if (j.is_object() && j.contains("net")) return net_from_json(j.at("net"));
    const int d = get_field<int>(j, "d");
    const int m = get_field<int>(j, "m");
    if (!j.contains("beta") || !j.contains("coeff")) throw DomainError("network JSON needs \"beta\" and \"coeff\"");
    const ParamMatrix beta = matrix_from_json(j.at("beta"), "beta");
    const ParamMatrix coeff = matrix_from_json(j.at("coeff"), "coeff");
    const double tol = j.contains("constraint_tol") ? get_field<double>(j, "constraint_tol") : kDefaultConstraintTol;
    return make_net(d, m, beta, coeff, tol);
}

std::string net_hash(const FracNet& net)
{
    const std::string text = net_to_json(net).dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

json fit_to_json(const FracNet& net, const FitRecord& record)
{
    json f;
    f["delta_sq"] = record.fit.delta_sq;
    f["lagrange"] = record.fit.lagrange;
    f["cond_estimate"] = record.fit.cond_estimate;
    f["ridge_used"] = record.fit.ridge_used;
    f["refinements"] = record.fit.refinements;
    f["warnings"] = record.fit.warnings;
    f["gram_method"] = record.gram_method;
    f["est_entry_err"] = record.est_entry_err;
    f["schedule"] = record.schedule;
    json j;
    j["net"] = net_to_json(net);
    j["fit"] = std::move(f);
    return j;
}

FitRecord fit_from_json(const json& j)
{
    const FracNet net = net_from_json(j);
    if (!j.contains("fit")) throw DomainError("fit JSON needs a \"fit\" member");
    const json& f = j.at("fit");
    FitRecord r;
    r.fit.coeff = net.coeff();
    r.fit.delta_sq = get_field<double>(f, "delta_sq");
    r.fit.lagrange = get_field<double>(f, "lagrange");
    r.fit.cond_estimate = get_field<double>(f, "cond_estimate");
    r.fit.ridge_used = get_field<double>(f, "ridge_used");
    r.fit.refinements = f.contains("refinements") ? get_field<int>(f, "refinements") : 0;
    r.fit.warnings = f.contains("warnings") ? get_field<std::vector<std::string>>(f, "warnings")
                                            : std::vector<std::string>{};
    r.gram_method = f.contains("gram_method") ? get_field<std::string>(f, "gram_method") : "";
    r.est_entry_err = f.contains("est_entry_err") ? get_field<double>(f, "est_entry_err") : 0.0;
    r.schedule = f.contains("schedule") ? get_field<std::string>(f, "schedule") : "";
    if (!(r.fit.delta_sq >= 0.0)) throw DomainError("fit JSON: delta_sq must be >= 0");
    if (!(r.fit.ridge_used >= 0.0)) throw DomainError("fit JSON: ridge_used must be >= 0");
    return r;
}

json region_to_json(const ZeroFreeRegion& region)
{
    json j;
    j["delta_eff"] = region.delta_eff;
    j["source"] = to_string(region.source);
    j["d"] = region.d;
    if (region.alpha) j["alpha"] = *region.alpha;
    return j;
}

json certificate_to_json(const Certificate& cert)
{
    json j;
    j["net_hash"] = cert.net_hash;
    j["N"] = cert.N;
    j["alpha"] = cert.alpha;
    j["seed"] = cert.seed;
    j["empirical_risk"] = cert.empirical_risk;
    j["penalty"] = cert.penalty;
    j["delta_N"] = cert.delta_N;
    j["delta_eff"] = cert.region.delta_eff;
    j["d"] = cert.region.d;
    j["source"] = to_string(cert.region.source);
    j["c_l1"] = cert.c_l1;
    return j;
}

Certificate certificate_from_json(const json& j)
{
    Certificate c;
    c.net_hash = get_field<std::string>(j, "net_hash");
    c.N = get_field<std::uint64_t>(j, "N");
    c.alpha = get_field<double>(j, "alpha");
    c.seed = get_field<std::uint64_t>(j, "seed");
    c.empirical_risk = get_field<double>(j, "empirical_risk");
    c.penalty = get_field<double>(j, "penalty");
    c.delta_N = get_field<double>(j, "delta_N");
    c.c_l1 = get_field<double>(j, "c_l1");
    const int d = get_field<int>(j, "d");
    const double delta_eff = get_field<double>(j, "delta_eff");
    if (convert_region_source(get_field<std::string>(j, "source")) != RegionSource::empirical) {
        throw DomainError("certificate JSON: source must be \"empirical\"");
    }
    if (!(c.empirical_risk >= 0.0)) throw DomainError("certificate JSON: empirical_risk must be >= 0");
    if (hoeffding_penalty(c.c_l1, c.N, c.alpha) != c.penalty) {
        throw DomainError("certificate JSON: penalty disagrees with (1 + c_l1^2) sqrt(2 ln(2/alpha)/N)");
    }
    if (c.empirical_risk + c.penalty != c.delta_N) {
        throw DomainError("certificate JSON: delta_N != empirical_risk + penalty");
    }
    c.region = empirical_region(c.delta_N, d, c.alpha);
    if (c.region.delta_eff != delta_eff) throw DomainError("certificate JSON: delta_eff != delta_N^{1/d}");
    return c;
}

void write_polyline_csv(std::ostream& os, const std::vector<BoundaryPoint>& points)
{
    os << "a,b_plus,b_minus\n";
    for (const auto& p : points) {
        os << format_double(p.a) << ',' << format_double(p.b_plus) << ',' << format_double(p.b_minus) << '\n';
    }
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path);
    return ss.str();
}

json read_json_file(const std::string& path)
{
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("error writing " + path);
}

ParamMatrix load_beta_file(const std::string& path)
{
    const json j = read_json_file(path);
    if (j.is_object()) {
        if (!j.contains("beta")) throw DomainError(path + ": expected a \"beta\" member");
        return matrix_from_json(j.at("beta"), "beta");
    }
    return matrix_from_json(j, "beta");
}

} // namespace nbzeta
