#include "valgeo/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "valgeo/bodies.hpp"
#include "valgeo/errors.hpp"

namespace valgeo {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double multinomial(int n, const std::vector<int>& alpha) {
    double f = factorial(n);
    for (int a : alpha) f /= factorial(a);
    return f;
}

// Deterministic grouping of equal bodies: compare lexicographically sorted
// vertex lists within 1e-12.
bool same_body(const Polytope& a, const Polytope& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.vertex_count() != b.vertex_count()) return false;
    const int n = a.ambient_dim(), m = a.vertex_count();
    std::vector<int> ia(m), ib(m);
    for (int j = 0; j < m; ++j) ia[j] = ib[j] = j;
    auto lex = [n](const Eigen::MatrixXd& v, int x, int y) {
        for (int k = 0; k < n; ++k) {
            if (v(k, x) < v(k, y)) return true;
            if (v(k, x) > v(k, y)) return false;
        }
        return false;
    };
    std::sort(ia.begin(), ia.end(), [&](int x, int y) { return lex(a.vertices(), x, y); });
    std::sort(ib.begin(), ib.end(), [&](int x, int y) { return lex(b.vertices(), x, y); });
    const double scale = std::max(1.0, a.vertices().cwiseAbs().maxCoeff());
    for (int j = 0; j < m; ++j)
        if ((a.vertices().col(ia[j]) - b.vertices().col(ib[j])).cwiseAbs().maxCoeff() >
            1e-12 * scale)
            return false;
    return true;
}

// Monomial exponent vectors with |alpha| = total over m variables.
void enumerate_exponents(int m, int total, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == m - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    int used = 0;
    for (int a : cur) used += a;
    (void)used;
    for (int a = 0; a <= total; ++a) {
        cur.push_back(a);
        enumerate_exponents(m, total - a, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> homogeneous_exponents(int m, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    enumerate_exponents(m, degree, cur, out);
    return out;
}

double gauss_legendre_32(const std::function<double(double)>& f) {
    // 16 positive nodes of the 32-point rule on [-1, 1]
    static const double x[] = {
        0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
        0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
        0.5877157572407623290, 0.6630442669302152010, 0.7321821187402896804,
        0.7944837959679424070, 0.8493676137325699701, 0.8963211557660521240,
        0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354,
        0.9972638618494815635};
    static const double w[] = {
        0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
        0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
        0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
        0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
        0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
        0.0070186100094700966};
    double s = 0.0;
    for (int k = 0; k < 16; ++k) s += w[k] * (f(x[k]) + f(-x[k]));
    return s;
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

int term_degree(const ValuationTerm& t) {
    if (std::holds_alternative<MixedVolumeTerm>(t)) return std::get<MixedVolumeTerm>(t).degree;
    if (std::holds_alternative<HIntegralTerm>(t)) return 1;
    if (std::holds_alternative<IntrinsicTerm>(t)) return std::get<IntrinsicTerm>(t).index;
    return 0;
}

std::optional<int> ValuationSpec::homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& t : terms) {
        const int d = term_degree(t);
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

double volume(const Polytope& P) {
    return (P.dim() == P.ambient_dim()) ? P.intrinsic_volume_measure() : 0.0;
}

double mixed_volume(const std::vector<Polytope>& bodies, double* condition) {
    if (bodies.empty()) throw BadDimension("mixed_volume: no bodies");
    const int n = bodies.front().ambient_dim();
    if (static_cast<int>(bodies.size()) != n)
        throw DimensionMismatch("mixed_volume: need exactly n bodies in R^n");
    for (const auto& b : bodies)
        if (b.ambient_dim() != n) throw DimensionMismatch("mixed_volume: mixed ambient dims");

    // group equal bodies
    std::vector<const Polytope*> distinct;
    std::vector<int> mult;
    std::vector<int> group_of(n);
    for (int j = 0; j < n; ++j) {
        int g = -1;
        for (std::size_t k = 0; k < distinct.size(); ++k)
            if (same_body(*distinct[k], bodies[j])) {
                g = static_cast<int>(k);
                break;
            }
        if (g < 0) {
            distinct.push_back(&bodies[j]);
            mult.push_back(0);
            g = static_cast<int>(distinct.size()) - 1;
        }
        ++mult[g];
        group_of[j] = g;
    }
    const int m = static_cast<int>(distinct.size());

    const auto exponents = homogeneous_exponents(m, n);
    const int ncoef = static_cast<int>(exponents.size());

    // grid lambda in {1..n}^m
    int npts = 1;
    for (int j = 0; j < m; ++j) npts *= n;
    if (npts < ncoef) throw IllConditioned("mixed_volume: grid smaller than coefficient count");

    Eigen::MatrixXd A(npts, ncoef);
    Eigen::VectorXd y(npts);
    std::vector<int> lambda(m, 1);
    for (int p = 0; p < npts; ++p) {
        // decode p in base n, digits 1..n
        int q = p;
        for (int j = 0; j < m; ++j) {
            lambda[j] = 1 + (q % n);
            q /= n;
        }
        Polytope sum = distinct[0]->scaled(static_cast<double>(lambda[0]));
        for (int j = 1; j < m; ++j)
            sum = minkowski_sum(sum, distinct[j]->scaled(static_cast<double>(lambda[j])));
        y[p] = volume(sum);
        for (int c = 0; c < ncoef; ++c) {
            double mono = 1.0;
            for (int j = 0; j < m; ++j)
                for (int e = 0; e < exponents[c][j]; ++e) mono *= lambda[j];
            A(p, c) = mono;
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    const Eigen::VectorXd coef = qr.solve(y);
    const double resid = (A * coef - y).cwiseAbs().maxCoeff() / std::max(1.0, y.cwiseAbs().maxCoeff());
    const Eigen::VectorXd rdiag = qr.matrixR().diagonal().cwiseAbs();
    const double cond = rdiag.maxCoeff() / std::max(rdiag.minCoeff(), 1e-300);
    if (condition) *condition = cond;
    if (resid > 1e-6)
        throw IllConditioned("mixed_volume: interpolation residual " + std::to_string(resid) +
                             " (condition estimate " + std::to_string(cond) + ")");

    // target exponent = multiplicities of the input list
    std::vector<int> alpha(m, 0);
    for (int j = 0; j < n; ++j) ++alpha[group_of[j]];
    for (int c = 0; c < ncoef; ++c)
        if (exponents[c] == alpha) return coef[c] / multinomial(n, alpha);
    throw Error("mixed_volume: target coefficient not found");
}

double intrinsic_volume(const Polytope& P, int i) {
    const int d = P.dim();
    if (i < 0 || i > P.ambient_dim()) throw BadDimension("intrinsic_volume: bad index");
    if (i == 0) return 1.0;
    if (i > d) return 0.0;
    if (i == d) return P.intrinsic_volume_measure();
    double total = 0.0;
    const auto& lvl = P.lattice().faces_by_dim[i];
    for (const auto& f : lvl) total += exterior_angle(P, f) * face_volume(P, f);
    return total;
}

double projection_volume(const Polytope& P, const Subspace& E) {
    const Polytope proj = project(P, E);
    return (proj.dim() == E.dim()) ? proj.intrinsic_volume_measure() : 0.0;
}

double projection_volume_mixed_route(const Polytope& P, const Subspace& E) {
    const int n = P.ambient_dim();
    const int i = E.dim();
    if (i == n) return volume(P);
    const Polytope box = bodies::box_in_subspace(perp(E), 1.0);
    std::vector<Polytope> args;
    for (int k = 0; k < i; ++k) args.push_back(P);
    for (int k = 0; k < n - i; ++k) args.push_back(box);
    return binomial(n, i) * mixed_volume(args);
}

std::vector<FaceMeasurePiece> area_measure(const Polytope& P, int i) {
    const int n = P.ambient_dim();
    if (P.dim() != n)
        throw BadDimension("area_measure: polytope must be full-dimensional");
    if (i < 0 || i >= n) throw BadDimension("area_measure: need 0 <= i < n");
    const double coeff = (1.0 / binomial(n, i)) * static_cast<double>(n) / (n - i);
    std::vector<FaceMeasurePiece> out;
    const auto& lvl = P.lattice().faces_by_dim[i];
    for (int j = 0; j < static_cast<int>(lvl.size()); ++j) {
        const Face& F = lvl[j];
        FaceMeasurePiece piece;
        piece.face_id = j;
        piece.density = coeff * face_volume(P, F);
        piece.region = normal_cone(P, F);
        const int c = n - i;  // dimension of the cone's span
        if (c == 1) {
            piece.region_measure = 1.0;  // single point of S^0
        } else if (c == 2) {
            const Eigen::VectorXd a = piece.region.generators.col(0);
            const Eigen::VectorXd b = piece.region.generators.col(1);
            piece.region_measure = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
        } else {
            const int samples = 1000000;
            const double gamma = exterior_angle(P, F, samples);
            const double sphere = c * bodies::unit_ball_volume(c);
            piece.region_measure = gamma * sphere;
            piece.region_stderr = std::sqrt(std::max(gamma * (1 - gamma), 0.0) / samples) * sphere;
        }
        out.push_back(std::move(piece));
    }
    return out;
}

double area_measure_total(const std::vector<FaceMeasurePiece>& pieces) {
    double t = 0.0;
    for (const auto& p : pieces) t += p.density * p.region_measure;
    return t;
}

double integrate_against_area_measure(const Polytope& P, int i,
                                      const std::function<double(const Eigen::VectorXd&)>& f,
                                      RandomStream& rng, int mc_samples, double* stderr_out) {
    const int n = P.ambient_dim();
    if (P.dim() != n)
        throw BadDimension("integrate_against_area_measure: polytope must be full-dimensional");
    if (i < 0 || i >= n) throw BadDimension("integrate_against_area_measure: need 0 <= i < n");
    const auto& lvl = P.lattice().faces_by_dim[i];
    const double coeff = (1.0 / binomial(n, i)) * static_cast<double>(n) / (n - i);
    double total = 0.0, var = 0.0;
    for (const Face& F : lvl) {
        const double density = coeff * face_volume(P, F);
        const Cone cone = normal_cone(P, F);
        const int c = n - i;
        if (c == 1) {
            total += density * f(cone.generators.col(0));
        } else if (c == 2) {
            const Eigen::VectorXd a = cone.generators.col(0);
            const Eigen::VectorXd b = cone.generators.col(1);
            const double theta = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
            if (theta < 1e-14) {
                total += 0.0;
                continue;
            }
            // arc-length parametrization between the two normals
            const Eigen::VectorXd e1 = a;
            Eigen::VectorXd e2 = b - a.dot(b) * a;
            e2 /= e2.norm();
            const double integral = gauss_legendre_32([&](double t) {
                const double ang = theta * (t + 1.0) / 2.0;
                return f(std::cos(ang) * e1 + std::sin(ang) * e2);
            });
            total += density * (theta / 2.0) * integral;
        } else {
            // rejection Monte Carlo over the sphere of the cone's span
            Eigen::MatrixXd dirs = F.direction_frame;
            Eigen::MatrixXd span;
            if (F.dim == 0) {
                span = Eigen::MatrixXd::Identity(n, n);
            } else {
                Eigen::HouseholderQR<Eigen::MatrixXd> qr(dirs);
                span = (qr.householderQ() * Eigen::MatrixXd::Identity(n, n)).rightCols(c);
            }
            const double sphere = c * bodies::unit_ball_volume(c);
            double s = 0.0, ssq = 0.0;
            for (int t = 0; t < mc_samples; ++t) {
                const Eigen::VectorXd u = span * rng.unit_vector(c);
                double v = 0.0;
                if (in_normal_cone(P, F, u)) v = f(u);
                s += v;
                ssq += v * v;
            }
            const double mean = s / mc_samples;
            total += density * sphere * mean;
            const double se = std::sqrt(std::max(ssq / mc_samples - mean * mean, 0.0) / mc_samples);
            var += density * density * sphere * sphere * se * se;
        }
    }
    if (stderr_out) *stderr_out = std::sqrt(var);
    return total;
}

double evaluate(const ValuationSpec& phi, const Polytope& K) {
    const int n = K.ambient_dim();
    if (phi.ambient_dim != n)
        throw DimensionMismatch("evaluate: spec and body ambient dims differ");
    double total = 0.0;
    for (const auto& term : phi.terms) {
        if (std::holds_alternative<MixedVolumeTerm>(term)) {
            const auto& t = std::get<MixedVolumeTerm>(term);
            if (t.degree + static_cast<int>(t.bodies.size()) != n)
                throw DimensionMismatch("evaluate: mixed volume term arity mismatch");
            std::vector<Polytope> args;
            for (int k = 0; k < t.degree; ++k) args.push_back(K);
            for (const auto& L : t.bodies) args.push_back(L);
            total += t.coeff * mixed_volume(args);
        } else if (std::holds_alternative<HIntegralTerm>(term)) {
            const auto& t = std::get<HIntegralTerm>(term);
            for (const auto& [u, w] : t.atoms) total += w * K.support(u);
        } else if (std::holds_alternative<IntrinsicTerm>(term)) {
            const auto& t = std::get<IntrinsicTerm>(term);
            total += t.coeff * intrinsic_volume(K, t.index);
        } else {
            total += std::get<ConstantTerm>(term).value;
        }
    }
    return total;
}

double klain(const ValuationSpec& phi, const Subspace& E) {
    const int n = phi.ambient_dim;
    const int i = E.dim();
    if (E.ambient_dim() != n) throw DimensionMismatch("klain: ambient dims differ");
    const auto deg = phi.homogeneous_degree();
    if (!deg || *deg != i)
        throw MixedDegrees("klain: spec is not homogeneous of the argument's dimension");
    double total = 0.0;
    for (const auto& term : phi.terms) {
        if (std::holds_alternative<MixedVolumeTerm>(term)) {
            const auto& t = std::get<MixedVolumeTerm>(term);
            // Klain(E) = coeff binom(n,i)^{-1} V(L_1,...,L_{n-i} : E^perp)
            const Subspace Eperp = perp(E);
            std::vector<Polytope> projected;
            for (const auto& L : t.bodies) projected.push_back(project(L, Eperp));
            total += t.coeff * mixed_volume(projected) / binomial(n, i);
        } else if (std::holds_alternative<HIntegralTerm>(term)) {
            const auto& t = std::get<HIntegralTerm>(term);
            const Eigen::VectorXd u0 = E.frame().col(0);
            double s = 0.0;
            for (const auto& [u, w] : t.atoms) s += w * std::abs(u.dot(u0));
            total += 0.5 * s;
        } else if (std::holds_alternative<IntrinsicTerm>(term)) {
            total += std::get<IntrinsicTerm>(term).coeff;
        } else {
            throw MixedDegrees("klain: constant term in a positive-degree spec");
        }
    }
    return total;
}

KlainFunction klain_function(const ValuationSpec& phi) {
    const auto deg = phi.homogeneous_degree();
    if (!deg) throw MixedDegrees("klain_function: spec not homogeneous");
    KlainFunction g;
    g.ambient_dim = phi.ambient_dim;
    g.degree = *deg;
    g.eval = [phi](const Subspace& E) { return klain(phi, E); };
    return g;
}

std::vector<double> homogeneous_components(const std::function<double(const Polytope&)>& phi,
                                           const Polytope& K, int n) {
    Eigen::MatrixXd V(n + 1, n + 1);
    Eigen::VectorXd y(n + 1);
    for (int t = 0; t <= n; ++t) {
        y[t] = phi(K.scaled(static_cast<double>(t)));
        double p = 1.0;
        for (int j = 0; j <= n; ++j) {
            V(t, j) = p;
            p *= t;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
    const Eigen::VectorXd coef = qr.solve(y);
    const double resid = (V * coef - y).cwiseAbs().maxCoeff() / std::max(1.0, y.cwiseAbs().maxCoeff());
    if (resid > 1e-8) {
        const Eigen::VectorXd rdiag = qr.matrixR().diagonal().cwiseAbs();
        throw IllConditioned("homogeneous_components: residual " + std::to_string(resid) +
                             " (condition estimate " +
                             std::to_string(rdiag.maxCoeff() / std::max(rdiag.minCoeff(), 1e-300)) +
                             ")");
    }
    return std::vector<double>(coef.data(), coef.data() + n + 1);
}

std::vector<double> homogeneous_components(const ValuationSpec& phi, const Polytope& K) {
    return homogeneous_components([&phi](const Polytope& M) { return evaluate(phi, M); }, K,
                                  K.ambient_dim());
}

double angular_evaluate(const KlainFunction& g, const Polytope& P, int i) {
    if (i < 1) throw BadDimension("angular_evaluate: degree must be >= 1");
    if (g.degree != i) throw MixedDegrees("angular_evaluate: Klain function degree mismatch");
    if (i > P.dim()) return 0.0;
    double total = 0.0;
    for (const Face& F : P.lattice().faces_by_dim[i]) {
        const double gamma = (F.dim == P.dim()) ? 1.0 : exterior_angle(P, F);
        total += g.eval(face_direction(P, F)) * gamma * face_volume(P, F);
    }
    return total;
}

double inverse_klain_top(const std::function<double(const Subspace&)>& f, const Polytope& P) {
    const int n = P.ambient_dim();
    if (P.dim() != n) throw BadDimension("inverse_klain_top: polytope must be full-dimensional");
    double total = 0.0;
    for (const Face& F : P.lattice().faces_by_dim[n - 1])
        total += f(face_direction(P, F)) * face_volume(P, F);
    return 0.5 * total;
}

TwoRouteCheck radon_projection_check(const Polytope& K, const Subspace& E, RandomStream& rng,
                             int samples) {
    const int i = E.dim();
    if (!is_centrally_symmetric(K)) throw NotCentrallySymmetric("radon_projection_check: K not symmetric");
    // center K at the origin so that h_K is even
    const Polytope K0 = K.translated((-K.centroid()).eval());

    // lhs: V(K, B[i-1] : E) in E, with the projected ball approximant
    const Polytope KE = project(K0, E);
    const Polytope BE = project(bodies::ball_approx(K.ambient_dim()), E);
    std::vector<Polytope> args;
    args.push_back(KE);
    for (int k = 0; k < i - 1; ++k) args.push_back(BE);
    const double lhs = mixed_volume(args);

    // rhs: omega_i times the Radon average of h_K over lines in E
    TwoRouteCheck out;
    const double omega_i = bodies::unit_ball_volume(i);
    if (i == 1) {
        out.rhs = omega_i * K0.support(E.frame().col(0));
        out.sigma = 0.0;
    } else {
        double s = 0.0, ssq = 0.0;
        for (int t = 0; t < samples; ++t) {
            const Subspace L = sample_incident(E, 1, rng);
            const double v = K0.support(L.frame().col(0));
            s += v;
            ssq += v * v;
        }
        const double mean = s / samples;
        out.rhs = omega_i * mean;
        out.sigma =
            omega_i * std::sqrt(std::max(ssq / samples - mean * mean, 0.0) / samples);
    }
    out.lhs = lhs;
    out.diff = out.lhs - out.rhs;
    return out;
}

}  // namespace valgeo
