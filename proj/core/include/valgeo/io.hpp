#pragma once

#include <string>

#include <json.hpp>

#include "valgeo/counterexample.hpp"
#include "valgeo/membership.hpp"
#include "valgeo/polytope.hpp"
#include "valgeo/radii.hpp"
#include "valgeo/subspace.hpp"
#include "valgeo/transforms.hpp"
#include "valgeo/valuation.hpp"

namespace valgeo::io {

using json = nlohmann::json;

// {"n": int, "vertices": [[...], ...]}; also accepts
// {"n": int, "generators": [[...], ...]} for zonotopes.
json to_json(const Polytope& P);
Polytope polytope_from_json(const json& j);

// {"n": int, "dim": int, "frame": [[...], ...]} row-major unit rows.
json to_json(const Subspace& E);
Subspace subspace_from_json(const json& j);

// {"n": int, "dim": int, "atoms": [{"frame": [[...],...], "w": real}, ...]}
json to_json(const AtomicGrassMeasure& mu);
AtomicGrassMeasure measure_from_json(const json& j);

// {"n": int, "degree": int|null, "terms": [...]} with term kinds
// "mixed" | "hintegral" | "intrinsic" | "const".
json to_json(const ValuationSpec& phi);
ValuationSpec spec_from_json(const json& j);

json to_json(const MembershipCertificate& cert);
json to_json(const ZonoidWitness& w);
json to_json(const RadiiReport& rep);
json to_json(const std::vector<RadiiReport>& reps);
json to_json(const CounterexampleReport& rep);

json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);
Polytope load_polytope(const std::string& path);
Subspace load_subspace(const std::string& path);
ValuationSpec load_spec(const std::string& path);
AtomicGrassMeasure load_measure(const std::string& path);

// CSV with a header row and 12 significant digits, stable column order.
std::string csv_row(const std::vector<std::string>& cells);
std::string format_sig(double v);  // %.12g

std::string radii_csv(const std::vector<RadiiReport>& reps);
std::string decomposition_csv(const std::vector<double>& components);
std::string face_counts_csv(const Polytope& P);

}  // namespace valgeo::io
