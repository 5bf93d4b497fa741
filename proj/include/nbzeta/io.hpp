// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <nbzeta/certificates.hpp>
#include <nbzeta/frac_net.hpp>
#include <nbzeta/optimizer.hpp>

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace nbzeta {

using json = nlohmann::json;

/// 17 significant digits: round-trips every double.
std::string format_double(double v);

/// {"d", "m", "beta": [[...]], "coeff": [[...]], "constraint_tol"}; row i, column j.
json net_to_json(const FracNet& net);
/// Validates shapes, the beta domain and the constraint; accepts a fit document too.
FracNet net_from_json(const json& j);

/// 64-bit FNV-1a of the canonical JSON text of the network, as 16 hex digits.
std::string net_hash(const FracNet& net);

struct FitRecord
{
    FitResult fit;
    std::string gram_method;
    double est_entry_err = 0.0;
    std::string schedule;
};

/// {"net": ..., "fit": {...}}.
json fit_to_json(const FracNet& net, const FitRecord& record);
FitRecord fit_from_json(const json& j);

/// {net_hash, N, alpha, seed, empirical_risk, penalty, delta_N, delta_eff, d, source, c_l1}.
json certificate_to_json(const Certificate& cert);
/// Rejects documents whose penalty, delta_N or delta_eff disagree with the closed forms.
Certificate certificate_from_json(const json& j);

json region_to_json(const ZeroFreeRegion& region);

/// Header "a,b_plus,b_minus" then one row per point.
void write_polyline_csv(std::ostream& os, const std::vector<BoundaryPoint>& points);

json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Matrix of rows (i) by columns (j), or an object with a "beta" member.
ParamMatrix load_beta_file(const std::string& path);
ParamMatrix matrix_from_json(const json& rows, const char* what);
json matrix_to_json(const ParamMatrix& m);

} // namespace nbzeta
