#include <cmath>

#include "doctest.h"
#include "valgeo/bodies.hpp"
#include "valgeo/errors.hpp"
#include "valgeo/io.hpp"
#include "valgeo/radii.hpp"

using namespace valgeo;
using io::json;

TEST_CASE("polytope json round trip") {
    RandomStream rng(1);
    auto P = bodies::random_polytope(3, 12, rng);
    const json j = io::to_json(P);
    const Polytope Q = io::polytope_from_json(j);
    REQUIRE(Q.vertex_count() == P.vertex_count());
    CHECK((Q.vertices() - P.vertices()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(io::to_json(Q) == j);
}

TEST_CASE("zonotope generator files") {
    json j;
    j["n"] = 3;
    j["generators"] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const Polytope Z = io::polytope_from_json(j);
    CHECK(Z.vertex_count() == 8);  // a cube of side 2
    CHECK(Z.intrinsic_volume_measure() == doctest::Approx(8.0));
}

TEST_CASE("subspace json round trip and re-orthonormalization") {
    RandomStream rng(2);
    auto E = sample_uniform(4, 2, rng);
    const json j = io::to_json(E);
    const Subspace F = io::subspace_from_json(j);
    CHECK(Subspace::projector_distance(E, F) < 1e-12);
    CHECK(io::to_json(F) == j);

    json skew;
    skew["n"] = 3;
    skew["dim"] = 2;
    skew["frame"] = {{1, 1e-7, 0}, {0, 1, 0}};  // mildly non-orthonormal
    const Subspace G = io::subspace_from_json(skew);
    CHECK(G.dim() == 2);

    json bad = skew;
    bad["frame"] = {{1, 1, 0}, {0, 1, 0}};
    CHECK_THROWS_AS(io::subspace_from_json(bad), ParseError);
}

TEST_CASE("measure json round trip") {
    RandomStream rng(3);
    AtomicGrassMeasure mu;
    mu.ambient_dim = 3;
    mu.dim = 1;
    mu.atoms = {{sample_uniform(3, 1, rng), 0.4}, {sample_uniform(3, 1, rng), -1.2}};
    const json j = io::to_json(mu);
    const auto back = io::measure_from_json(j);
    REQUIRE(back.atoms.size() == 2);
    CHECK(back.atoms[1].second == -1.2);
    CHECK(Subspace::projector_distance(back.atoms[0].first, mu.atoms[0].first) < 1e-12);
    CHECK(io::to_json(back) == j);
}

TEST_CASE("valuation spec json round trip") {
    ValuationSpec phi;
    phi.ambient_dim = 3;
    MixedVolumeTerm m;
    m.degree = 1;
    m.bodies = {bodies::cube(3), bodies::cross_polytope(3)};
    m.coeff = 1.5;
    phi.terms.push_back(m);
    HIntegralTerm h;
    Eigen::VectorXd e1(3);
    e1 << 1, 0, 0;
    h.atoms = {{e1, 0.5}, {-e1, 0.5}};
    phi.terms.push_back(h);
    phi.terms.push_back(IntrinsicTerm{1, -0.25});
    phi.terms.push_back(ConstantTerm{2.0});

    const json j = io::to_json(phi);
    CHECK(j["degree"].is_null());  // mixed degrees: const + degree-1 terms
    const auto back = io::spec_from_json(j);
    REQUIRE(back.terms.size() == 4);
    CHECK(std::get<MixedVolumeTerm>(back.terms[0]).degree == 1);
    CHECK(io::to_json(back) == j);

    // evaluation agrees after the round trip
    auto K = bodies::cube(3);
    CHECK(evaluate(back, K) == doctest::Approx(evaluate(phi, K)).epsilon(1e-12));
}

TEST_CASE("parse errors carry field context") {
    json j;
    j["vertices"] = {{0, 0}, {1, 0}};
    CHECK_THROWS_WITH_AS(io::polytope_from_json(j), doctest::Contains("\"n\""), ParseError);

    json s;
    s["n"] = 3;
    s["dim"] = 2;
    CHECK_THROWS_WITH_AS(io::subspace_from_json(s), doctest::Contains("frame"), ParseError);

    json t;
    t["n"] = 3;
    t["terms"] = {{{"kind", "unknown-kind"}}};
    CHECK_THROWS_AS(io::spec_from_json(t), ParseError);
}

TEST_CASE("csv emission") {
    auto C = bodies::cube(3);
    const std::string faces = io::face_counts_csv(C);
    CHECK(faces.substr(0, 10) == "dim,count\n");
    CHECK(faces.find("2,6\n") != std::string::npos);

    RandomStream r1(77), r2(77);
    auto a = successive_radii(C, 200, r1);
    auto b = successive_radii(C, 200, r2);
    CHECK(io::radii_csv(a) == io::radii_csv(b));  // byte-identical determinism

    const std::string dec = io::decomposition_csv({0.0, 3.0, 0.0, 0.0});
    CHECK(dec.find("degree,value\n") == 0);
    CHECK(dec.find("1,3\n") != std::string::npos);

    // 12 significant digits
    CHECK(io::format_sig(M_PI) == "3.14159265359");
}

TEST_CASE("json artifacts are deterministic") {
    RandomStream r1(5), r2(5);
    auto w1 = zonoid_witness(bodies::cross_polytope(3), 120, r1);
    auto w2 = zonoid_witness(bodies::cross_polytope(3), 120, r2);
    REQUIRE(w1.has_value());
    REQUIRE(w2.has_value());
    CHECK(io::to_json(*w1).dump() == io::to_json(*w2).dump());
}

TEST_CASE("spec validation on parse") {
    json j;
    j["n"] = 3;
    j["terms"] = json::array();
    json t;
    t["kind"] = "hintegral";
    t["atoms"] = {{{1, 0, 0}, 0.5}};  // unpaired atom
    j["terms"].push_back(t);
    CHECK_THROWS_AS(io::spec_from_json(j), ParseError);

    json good;
    good["n"] = 3;
    good["degree"] = 2;  // disagrees with the degree-1 term
    json h;
    h["kind"] = "hintegral";
    h["atoms"] = {{{1, 0, 0}, 0.5}, {{-1, 0, 0}, 0.5}};
    good["terms"] = json::array({h});
    CHECK_THROWS_AS(io::spec_from_json(good), ParseError);
    good["degree"] = 1;
    CHECK(io::spec_from_json(good).terms.size() == 1);
}
