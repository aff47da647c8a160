#include "valgeo/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "valgeo/bodies.hpp"
#include "valgeo/errors.hpp"

namespace valgeo::io {

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (int k = 0; k < v.size(); ++k) a.push_back(v[k]);
    return a;
}

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + ": expected a number array");
    Eigen::VectorXd v(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_number()) throw ParseError(std::string(what) + ": non-numeric entry");
        v[static_cast<int>(k)] = j[k].get<double>();
    }
    return v;
}

json rows_to_json(const Eigen::MatrixXd& m) {  // columns serialized as rows
    json a = json::array();
    for (int c = 0; c < m.cols(); ++c) a.push_back(vector_to_json(m.col(c)));
    return a;
}

int require_int(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw ParseError(std::string("missing integer field \"") + field + "\"");
    return j[field].get<int>();
}

}  // namespace

json to_json(const Polytope& P) {
    json j;
    j["n"] = P.ambient_dim();
    j["vertices"] = rows_to_json(P.vertices());
    return j;
}

Polytope polytope_from_json(const json& j) {
    const int n = require_int(j, "n");
    const char* key = j.contains("vertices") ? "vertices" : "generators";
    if (!j.contains(key)) throw ParseError("polytope: need \"vertices\" or \"generators\"");
    const json& arr = j[key];
    if (!arr.is_array() || arr.empty()) throw ParseError("polytope: empty point list");
    std::vector<Eigen::VectorXd> pts;
    for (const auto& row : arr) {
        Eigen::VectorXd v = vector_from_json(row, key);
        if (v.size() != n) throw ParseError("polytope: row length disagrees with \"n\"");
        pts.push_back(std::move(v));
    }
    if (std::string(key) == "generators") return bodies::zonotope(pts);
    return Polytope::from_points(pts);
}

json to_json(const Subspace& E) {
    json j;
    j["n"] = E.ambient_dim();
    j["dim"] = E.dim();
    j["frame"] = rows_to_json(E.frame());
    return j;
}

Subspace subspace_from_json(const json& j) {
    const int n = require_int(j, "n");
    const int dim = require_int(j, "dim");
    if (!j.contains("frame")) throw ParseError("subspace: missing \"frame\"");
    const json& rows = j["frame"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw ParseError("subspace: \"frame\" must have dim rows");
    Eigen::MatrixXd frame(n, dim);
    for (int c = 0; c < dim; ++c) {
        Eigen::VectorXd v = vector_from_json(rows[c], "frame");
        if (v.size() != n) throw ParseError("subspace: frame row length disagrees with \"n\"");
        frame.col(c) = v;
    }
    // accept mildly non-orthonormal frames from hand-written files
    const Eigen::MatrixXd gram = frame.transpose() * frame;
    const double err = (gram - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (err > 1e-6) throw ParseError("subspace: frame rows are far from orthonormal");
    if (err > 1e-12) return orthonormalize_columns(frame);
    return Subspace(frame);
}

json to_json(const AtomicGrassMeasure& mu) {
    json j;
    j["n"] = mu.ambient_dim;
    j["dim"] = mu.dim;
    json atoms = json::array();
    for (const auto& [E, w] : mu.atoms) {
        json a;
        a["frame"] = rows_to_json(E.frame());
        a["w"] = w;
        atoms.push_back(a);
    }
    j["atoms"] = atoms;
    return j;
}

AtomicGrassMeasure measure_from_json(const json& j) {
    AtomicGrassMeasure mu;
    mu.ambient_dim = require_int(j, "n");
    mu.dim = require_int(j, "dim");
    if (!j.contains("atoms") || !j["atoms"].is_array())
        throw ParseError("measure: missing \"atoms\"");
    for (const auto& a : j["atoms"]) {
        json sub;
        sub["n"] = mu.ambient_dim;
        sub["dim"] = mu.dim;
        sub["frame"] = a.at("frame");
        if (!a.contains("w") || !a["w"].is_number()) throw ParseError("measure: atom missing \"w\"");
        mu.atoms.emplace_back(subspace_from_json(sub), a["w"].get<double>());
    }
    return mu;
}

json to_json(const ValuationSpec& phi) {
    json j;
    j["n"] = phi.ambient_dim;
    const auto deg = phi.homogeneous_degree();
    if (deg)
        j["degree"] = *deg;
    else
        j["degree"] = nullptr;
    json terms = json::array();
    for (const auto& term : phi.terms) {
        json t;
        if (std::holds_alternative<MixedVolumeTerm>(term)) {
            const auto& m = std::get<MixedVolumeTerm>(term);
            t["kind"] = "mixed";
            t["coeff"] = m.coeff;
            json bodies = json::array();
            for (const auto& L : m.bodies) bodies.push_back(to_json(L));
            t["bodies"] = bodies;
        } else if (std::holds_alternative<HIntegralTerm>(term)) {
            const auto& h = std::get<HIntegralTerm>(term);
            t["kind"] = "hintegral";
            json atoms = json::array();
            for (const auto& [u, w] : h.atoms) atoms.push_back(json::array({vector_to_json(u), w}));
            t["atoms"] = atoms;
        } else if (std::holds_alternative<IntrinsicTerm>(term)) {
            const auto& i = std::get<IntrinsicTerm>(term);
            t["kind"] = "intrinsic";
            t["i"] = i.index;
            t["coeff"] = i.coeff;
        } else {
            t["kind"] = "const";
            t["value"] = std::get<ConstantTerm>(term).value;
        }
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

ValuationSpec spec_from_json(const json& j) {
    ValuationSpec phi;
    phi.ambient_dim = require_int(j, "n");
    if (!j.contains("terms") || !j["terms"].is_array())
        throw ParseError("spec: missing \"terms\"");
    for (const auto& t : j["terms"]) {
        const std::string kind = t.value("kind", "");
        if (kind == "mixed") {
            MixedVolumeTerm m;
            m.coeff = t.value("coeff", 1.0);
            if (!t.contains("bodies") || !t["bodies"].is_array() || t["bodies"].empty())
                throw ParseError("spec: mixed term needs \"bodies\"");
            for (const auto& b : t["bodies"]) m.bodies.push_back(polytope_from_json(b));
            m.degree = phi.ambient_dim - static_cast<int>(m.bodies.size());
            if (m.degree < 1) throw ParseError("spec: mixed term has too many bodies");
            phi.terms.push_back(std::move(m));
        } else if (kind == "hintegral") {
            HIntegralTerm h;
            if (!t.contains("atoms")) throw ParseError("spec: hintegral term needs \"atoms\"");
            for (const auto& a : t["atoms"]) {
                if (!a.is_array() || a.size() != 2)
                    throw ParseError("spec: hintegral atoms are [u, w] pairs");
                h.atoms.emplace_back(vector_from_json(a[0], "hintegral atom"),
                                     a[1].get<double>());
            }
            // evenness: every atom needs a matching -u partner of equal weight
            for (const auto& [u, w] : h.atoms) {
                bool paired = false;
                for (const auto& [v, x] : h.atoms)
                    if ((u + v).cwiseAbs().maxCoeff() < 1e-9 && std::abs(w - x) < 1e-12) {
                        paired = true;
                        break;
                    }
                if (!paired)
                    throw ParseError("spec: hintegral atoms must come in +-u pairs of equal weight");
            }
            phi.terms.push_back(std::move(h));
        } else if (kind == "intrinsic") {
            IntrinsicTerm i;
            i.index = require_int(t, "i");
            i.coeff = t.value("coeff", 1.0);
            phi.terms.push_back(i);
        } else if (kind == "const") {
            ConstantTerm c;
            if (!t.contains("value") || !t["value"].is_number())
                throw ParseError("spec: const term needs \"value\"");
            c.value = t["value"].get<double>();
            phi.terms.push_back(c);
        } else {
            throw ParseError("spec: unknown term kind \"" + kind + "\"");
        }
    }
    if (j.contains("degree") && j["degree"].is_number_integer()) {
        const auto deg = phi.homogeneous_degree();
        if (!deg || *deg != j["degree"].get<int>())
            throw ParseError("spec: declared \"degree\" disagrees with the terms");
    }
    return phi;
}

json to_json(const MembershipCertificate& cert) {
    json j;
    j["i"] = cert.i;
    j["verdict"] = cert.member ? "member" : "non-member";
    if (cert.member) {
        j["measure"] = to_json(*cert.measure);
        j["projection_residual"] = cert.projection_residual;
        j["klain_residual"] = cert.klain_residual;
    } else {
        j["violating_faces"] = cert.violating_faces;
    }
    return j;
}

json to_json(const ZonoidWitness& w) {
    json j;
    j["grid_size"] = w.grid_size;
    j["objective"] = w.objective;
    j["min_cosine"] = w.min_cosine;
    j["lp_iterations"] = w.lp_iterations;
    j["audit_grid_size"] = w.audit_grid_size;
    j["audit_min"] = w.audit_min;
    json atoms = json::array();
    for (const auto& [u, weight] : w.atoms)
        atoms.push_back(json::array({vector_to_json(u), weight}));
    j["atoms"] = atoms;
    return j;
}

json to_json(const RadiiReport& rep) {
    json j;
    j["i"] = rep.i;
    j["R_upper"] = rep.R_upper;
    j["r_lower"] = rep.r_lower;
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    return j;
}

json to_json(const std::vector<RadiiReport>& reps) {
    json j = json::array();
    for (const auto& r : reps) j.push_back(to_json(r));
    return j;
}

json to_json(const CounterexampleReport& rep) {
    json j;
    j["psi"] = to_json(rep.psi);
    j["phi"] = to_json(rep.phi);
    j["witness_body"] = to_json(rep.witness_body);
    j["components"] = rep.components;
    j["component_sum_residual"] = rep.component_sum_residual;
    j["c0"] = rep.constants.c0;
    j["c1"] = rep.constants.c1;
    j["epsilon_hat"] = rep.constants.epsilon_hat;
    j["eta_hat"] = rep.constants.eta_hat;
    j["norm_upper"] = rep.constants.norm_upper;
    j["norm_lower_sampled"] = rep.constants.norm_lower;
    j["shift_t"] = rep.shift_t;
    j["klain_audit_min"] = rep.klain_audit_min;
    j["positivity_trials"] = rep.positivity_trials;
    j["min_psi_observed"] = rep.min_psi_observed;
    j["positivity"] = "sampled";  // eta_hat is statistical, not a certificate
    j["grid_size"] = rep.grid_size;
    j["seed"] = rep.seed;
    return j;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IOError("write failed: " + path);
}

Polytope load_polytope(const std::string& path) { return polytope_from_json(load_json(path)); }
Subspace load_subspace(const std::string& path) { return subspace_from_json(load_json(path)); }
ValuationSpec load_spec(const std::string& path) { return spec_from_json(load_json(path)); }
AtomicGrassMeasure load_measure(const std::string& path) {
    return measure_from_json(load_json(path));
}

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out += ',';
        out += cells[k];
    }
    out += '\n';
    return out;
}

std::string radii_csv(const std::vector<RadiiReport>& reps) {
    std::string out = csv_row({"i", "R_upper", "r_lower", "samples", "seed"});
    for (const auto& r : reps)
        out += csv_row({std::to_string(r.i), format_sig(r.R_upper), format_sig(r.r_lower),
                        std::to_string(r.samples), std::to_string(r.seed)});
    return out;
}

std::string decomposition_csv(const std::vector<double>& components) {
    std::string out = csv_row({"degree", "value"});
    for (std::size_t d = 0; d < components.size(); ++d)
        out += csv_row({std::to_string(d), format_sig(components[d])});
    return out;
}

std::string face_counts_csv(const Polytope& P) {
    std::string out = csv_row({"dim", "count"});
    const auto& lat = P.lattice();
    for (int k = 0; k < static_cast<int>(lat.faces_by_dim.size()); ++k)
        out += csv_row({std::to_string(k), std::to_string(lat.faces_by_dim[k].size())});
    return out;
}

}  // namespace valgeo::io
