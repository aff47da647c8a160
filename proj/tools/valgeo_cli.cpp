// Command line front end: every subcommand maps 1:1 onto a library
// operation, stochastic commands require an explicit --seed, and outputs are
// deterministic given the full flag set.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "valgeo/bodies.hpp"
#include "valgeo/counterexample.hpp"
#include "valgeo/errors.hpp"
#include "valgeo/io.hpp"
#include "valgeo/membership.hpp"
#include "valgeo/radii.hpp"
#include "valgeo/transforms.hpp"
#include "valgeo/valuation.hpp"

using namespace valgeo;
using io::json;

namespace {

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        io::save_text(out_path, text);
}

void emit_json(const std::string& out_path, const json& j) { emit(out_path, j.dump(2) + "\n"); }

GrassFunction klain_of_spec(const ValuationSpec& spec) {
    const KlainFunction k = klain_function(spec);
    return GrassFunction{k.ambient_dim, k.degree, k.eval};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"valgeo: valuations, transforms and membership on convex polytopes"};
    app.require_subcommand(1);

    std::string body_path, spec_path, subspace_path, measure_path, out_path;
    std::string format = "json";
    std::vector<std::string> body_paths;
    int i_flag = 1, j_flag = 2, n_flag = 3;
    std::uint64_t seed = 0;
    int samples = 100000;
    int grid = 240;
    int trials = 10000;
    double tol = 1e-6;

    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output file (stdout when omitted)");
        cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* c_faces = app.add_subcommand("faces", "face lattice summary of a polytope");
    c_faces->add_option("--body", body_path, "polytope JSON")->required();
    add_out(c_faces);

    auto* c_project = app.add_subcommand("project", "orthogonal projection onto a subspace");
    c_project->add_option("--body", body_path)->required();
    c_project->add_option("--subspace", subspace_path, "subspace JSON")->required();
    add_out(c_project);

    auto* c_volume = app.add_subcommand("volume", "n-dimensional volume");
    c_volume->add_option("--body", body_path)->required();
    add_out(c_volume);

    auto* c_mixed = app.add_subcommand("mixed", "mixed volume of n bodies");
    c_mixed->add_option("--bodies", body_paths, "n polytope JSON paths")->required();
    add_out(c_mixed);

    auto* c_intr = app.add_subcommand("intrinsic", "intrinsic volume V_i");
    c_intr->add_option("--body", body_path)->required();
    c_intr->add_option("--i", i_flag)->required();
    add_out(c_intr);

    auto* c_area = app.add_subcommand("areameasure", "polytopal area measure S_i");
    c_area->add_option("--body", body_path)->required();
    c_area->add_option("--i", i_flag)->required();
    add_out(c_area);

    auto* c_klain = app.add_subcommand("klain", "Klain function of a spec at a subspace");
    c_klain->add_option("--spec", spec_path, "valuation spec JSON")->required();
    c_klain->add_option("--subspace", subspace_path)->required();
    add_out(c_klain);

    auto* c_dec = app.add_subcommand("decompose", "homogeneous components of a spec at a body");
    c_dec->add_option("--spec", spec_path)->required();
    c_dec->add_option("--body", body_path)->required();
    add_out(c_dec);

    auto* c_radon = app.add_subcommand("radon", "Radon transform of a spec's Klain function");
    c_radon->add_option("--spec", spec_path)->required();
    c_radon->add_option("--subspace", subspace_path)->required();
    c_radon->add_option("--samples", samples);
    c_radon->add_option("--seed", seed)->required();
    add_out(c_radon);

    auto* c_cos = app.add_subcommand("cosine", "cosine transform of a measure or Klain function");
    c_cos->add_option("--measure", measure_path, "atomic measure JSON (exact route)");
    c_cos->add_option("--spec", spec_path, "spec JSON (Monte Carlo route)");
    c_cos->add_option("--subspace", subspace_path)->required();
    c_cos->add_option("--samples", samples);
    c_cos->add_option("--seed", seed, "required for the Monte Carlo route");
    add_out(c_cos);

    auto* c_adj = app.add_subcommand("adjointcheck", "two-route Radon adjointness check");
    c_adj->add_option("--n", n_flag);
    c_adj->add_option("--i", i_flag);
    c_adj->add_option("--j", j_flag);
    c_adj->add_option("--samples", samples);
    c_adj->add_option("--seed", seed)->required();
    add_out(c_adj);

    auto* c_mem = app.add_subcommand("membership", "polytopal G(i)/K(i) membership certificate");
    c_mem->add_option("--body", body_path)->required();
    c_mem->add_option("--i", i_flag)->required();
    c_mem->add_option("--seed", seed)->required();
    add_out(c_mem);

    auto* c_wit = app.add_subcommand("witness", "zonoid separation witness (i = 1)");
    c_wit->add_option("--body", body_path)->required();
    c_wit->add_option("--grid", grid);
    c_wit->add_option("--seed", seed)->required();
    c_wit->add_option("--tol", tol, "witness objective threshold magnitude");
    add_out(c_wit);

    auto* c_radii = app.add_subcommand("radii", "sampled successive radii bounds");
    c_radii->add_option("--body", body_path)->required();
    c_radii->add_option("--samples", samples);
    c_radii->add_option("--seed", seed)->required();
    add_out(c_radii);

    auto* c_cex = app.add_subcommand("counterexample",
                                     "positive valuation with a negative homogeneous component");
    c_cex->add_option("--n", n_flag);
    c_cex->add_option("--grid", grid);
    c_cex->add_option("--seed", seed)->required();
    c_cex->add_option("--body", body_path, "witness body (default: cross-polytope)");
    c_cex->add_option("--trials", trials, "positivity stress trials");
    add_out(c_cex);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_faces->parsed()) {
            const Polytope P = io::load_polytope(body_path);
            if (format == "csv") {
                emit(out_path, io::face_counts_csv(P));
            } else {
                const auto& lat = P.lattice();
                json j;
                j["dim"] = P.dim();
                json counts = json::array(), faces = json::array();
                for (const auto& lvl : lat.faces_by_dim) {
                    counts.push_back(lvl.size());
                    json level = json::array();
                    for (const auto& f : lvl) level.push_back(f.vertex_ids);
                    faces.push_back(level);
                }
                j["counts"] = counts;
                j["faces_by_dim"] = faces;
                emit_json(out_path, j);
            }
        } else if (c_project->parsed()) {
            const Polytope P = io::load_polytope(body_path);
            const Subspace E = io::load_subspace(subspace_path);
            emit_json(out_path, io::to_json(project(P, E)));
        } else if (c_volume->parsed()) {
            json j;
            j["volume"] = volume(io::load_polytope(body_path));
            emit_json(out_path, j);
        } else if (c_mixed->parsed()) {
            std::vector<Polytope> bodies_in;
            for (const auto& p : body_paths) bodies_in.push_back(io::load_polytope(p));
            double cond = 0.0;
            json j;
            j["value"] = mixed_volume(bodies_in, &cond);
            j["condition"] = cond;
            emit_json(out_path, j);
        } else if (c_intr->parsed()) {
            json j;
            j["i"] = i_flag;
            j["value"] = intrinsic_volume(io::load_polytope(body_path), i_flag);
            emit_json(out_path, j);
        } else if (c_area->parsed()) {
            const Polytope P = io::load_polytope(body_path);
            const auto pieces = area_measure(P, i_flag);
            json j;
            j["i"] = i_flag;
            json arr = json::array();
            for (const auto& p : pieces) {
                json pj;
                pj["face_id"] = p.face_id;
                pj["density"] = p.density;
                pj["region_measure"] = p.region_measure;
                pj["region_stderr"] = p.region_stderr;
                arr.push_back(pj);
            }
            j["pieces"] = arr;
            j["total_mass"] = area_measure_total(pieces);
            emit_json(out_path, j);
        } else if (c_klain->parsed()) {
            json j;
            j["value"] = klain(io::load_spec(spec_path), io::load_subspace(subspace_path));
            emit_json(out_path, j);
        } else if (c_dec->parsed()) {
            const auto comp =
                homogeneous_components(io::load_spec(spec_path), io::load_polytope(body_path));
            if (format == "csv") {
                emit(out_path, io::decomposition_csv(comp));
            } else {
                json j;
                j["components"] = comp;
                emit_json(out_path, j);
            }
        } else if (c_radon->parsed()) {
            RandomStream rng(seed);
            const auto f = klain_of_spec(io::load_spec(spec_path));
            const auto F = io::load_subspace(subspace_path);
            const auto r = radon(f, F, samples, rng);
            json j;
            j["value"] = r.value;
            j["stderr"] = r.stderr_;
            j["samples"] = r.samples;
            j["seed"] = seed;
            emit_json(out_path, j);
        } else if (c_cos->parsed()) {
            const Subspace E = io::load_subspace(subspace_path);
            json j;
            if (!measure_path.empty()) {
                j["value"] = cosine_transform(io::load_measure(measure_path), E);
                j["exact"] = true;
            } else if (!spec_path.empty()) {
                if (c_cos->count("--seed") == 0)
                    throw Error("cosine --spec is stochastic: --seed is required");
                RandomStream rng(seed);
                const auto r =
                    cosine_transform(klain_of_spec(io::load_spec(spec_path)), E, samples, rng);
                j["value"] = r.value;
                j["stderr"] = r.stderr_;
                j["samples"] = r.samples;
                j["seed"] = seed;
            } else {
                throw Error("cosine: need --measure or --spec");
            }
            emit_json(out_path, j);
        } else if (c_adj->parsed()) {
            RandomStream rng(seed);
            RandomStream setup = rng.fork(1);
            const Subspace L0 = sample_uniform(n_flag, i_flag, setup);
            const Subspace P0 = sample_uniform(n_flag, j_flag, setup);
            GrassFunction f{n_flag, i_flag, [L0](const Subspace& E) {
                                const double c = cos_angle(E, L0);
                                return c * c;
                            }};
            GrassFunction g{n_flag, j_flag, [P0](const Subspace& F) {
                                const double c = cos_angle(F, P0);
                                return c * c;
                            }};
            const auto chk = check_adjoint(f, g, samples, rng);
            json j;
            j["lhs"] = chk.lhs;
            j["rhs"] = chk.rhs;
            j["diff"] = chk.diff;
            j["sigma"] = chk.sigma;
            j["within_3_sigma"] = std::abs(chk.diff) <= 3.0 * chk.sigma + 1e-12;
            j["seed"] = seed;
            emit_json(out_path, j);
        } else if (c_mem->parsed()) {
            RandomStream rng(seed);
            const Polytope P = io::load_polytope(body_path);
            const auto cert = decide_G(P, i_flag, rng);
            json j = io::to_json(cert);
            j["seed"] = seed;
            emit_json(out_path, j);
            return cert.member ? 0 : 2;
        } else if (c_wit->parsed()) {
            RandomStream rng(seed);
            const Polytope K = io::load_polytope(body_path);
            std::string reason;
            const auto w = zonoid_witness(K, grid, rng, -std::abs(tol), &reason);
            json j;
            j["seed"] = seed;
            if (!w) {
                j["verdict"] = "none-found";
                j["reason"] = reason;
                emit_json(out_path, j);
                return 2;
            }
            j["verdict"] = "witness";
            j["witness"] = io::to_json(*w);
            double t = 0.0;
            const auto shifted =
                shift_to_strict(w->spec(K.ambient_dim()), K, w->audit_grid_size, &t);
            j["shift_t"] = t;
            j["shifted_spec"] = io::to_json(shifted);
            j["evaluate_on_body"] = evaluate(shifted, K);
            emit_json(out_path, j);
        } else if (c_radii->parsed()) {
            RandomStream rng(seed);
            const auto reps = successive_radii(io::load_polytope(body_path), samples, rng);
            if (format == "csv")
                emit(out_path, io::radii_csv(reps));
            else
                emit_json(out_path, io::to_json(reps));
        } else if (c_cex->parsed()) {
            RandomStream rng(seed);
            std::optional<Polytope> K;
            if (!body_path.empty()) K = io::load_polytope(body_path);
            const auto rep =
                build_counterexample(n_flag, grid, rng, K ? &*K : nullptr, trials, trials);
            emit_json(out_path, io::to_json(rep));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
