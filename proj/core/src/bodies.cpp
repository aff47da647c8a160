#include "valgeo/bodies.hpp"

#include <cmath>

#include "valgeo/errors.hpp"

namespace valgeo::bodies {

namespace {

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    int i = index;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

// Acklam's rational approximation of the standard normal quantile.
double inverse_normal_cdf(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double unit_ball_volume(int n) {
    if (n < 0) throw BadDimension("unit_ball_volume: negative dimension");
    return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

Polytope cube(int n) {
    if (n < 1 || n > 20) throw BadDimension("cube: bad dimension");
    Eigen::MatrixXd v(n, 1 << n);
    for (int mask = 0; mask < (1 << n); ++mask)
        for (int k = 0; k < n; ++k) v(k, mask) = (mask >> k) & 1;
    return Polytope::from_points(v);
}

Polytope cross_polytope(int n) {
    if (n < 1) throw BadDimension("cross_polytope: bad dimension");
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, 2 * n);
    for (int k = 0; k < n; ++k) {
        v(k, 2 * k) = 1.0;
        v(k, 2 * k + 1) = -1.0;
    }
    return Polytope::from_points(v);
}

Polytope segment(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::MatrixXd v(a.size(), 2);
    v.col(0) = a;
    v.col(1) = b;
    return Polytope::from_points(v);
}

Polytope point(const Eigen::VectorXd& p) {
    Eigen::MatrixXd v(p.size(), 1);
    v.col(0) = p;
    return Polytope::from_points(v);
}

std::vector<Eigen::VectorXd> sphere_grid(int n, int count) {
    if (count < 1) throw BadDimension("sphere_grid: empty grid");
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);
    if (n == 2) {
        for (int i = 0; i < count; ++i) {
            const double t = M_PI * (i + 0.5) / count;  // half circle
            Eigen::VectorXd u(2);
            u << std::cos(t), std::sin(t);
            out.push_back(u);
        }
        return out;
    }
    if (n == 3) {
        // Fibonacci points on the upper hemisphere; +-pairs tile the sphere
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int i = 0; i < count; ++i) {
            const double z = (i + 0.5) / count;  // (0,1)
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = 2.0 * M_PI * i / golden;
            Eigen::VectorXd u(3);
            u << r * std::cos(phi), r * std::sin(phi), z;
            out.push_back(u);
        }
        return out;
    }
    // quantile grid: low-discrepancy points mapped through the normal
    // quantile, normalized, canonical sign
    static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19};
    if (n > 8) throw BadDimension("sphere_grid: dimension above 8 unsupported");
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd g(n);
        for (int k = 0; k < n; ++k) {
            double p = halton(i + 1, bases[k]);
            p = std::min(std::max(p, 1e-9), 1.0 - 1e-9);
            g[k] = inverse_normal_cdf(p);
        }
        double nrm = g.norm();
        if (nrm < 1e-9) {
            g.setZero();
            g[0] = 1.0;
            nrm = 1.0;
        }
        g /= nrm;
        for (int k = 0; k < n; ++k) {
            if (std::abs(g[k]) > 1e-12) {
                if (g[k] < 0) g = -g;
                break;
            }
        }
        out.push_back(g);
    }
    return out;
}

Polytope ball_approx(int n) {
    int half;
    switch (n) {
        case 2:
            half = 64;
            break;
        case 3:
            half = 64;
            break;
        case 4:
            half = 128;
            break;
        default:
            throw BadDimension("ball_approx: supported for n = 2, 3, 4");
    }
    const auto dirs = sphere_grid(n, half);
    Eigen::MatrixXd v(n, 2 * half);
    for (int i = 0; i < half; ++i) {
        v.col(2 * i) = dirs[i];
        v.col(2 * i + 1) = -dirs[i];
    }
    // volume-calibrated: the inscribed hull is scaled so its volume matches
    // the ball exactly; the remaining error is the support deviation
    const Polytope inscribed = Polytope::from_points(v);
    const double s = std::pow(unit_ball_volume(n) / inscribed.intrinsic_volume_measure(), 1.0 / n);
    return inscribed.scaled(s);
}

double ball_approx_deficit(int n) {
    const Polytope b = ball_approx(n);
    return 1.0 - b.intrinsic_volume_measure() / unit_ball_volume(n);
}

double ball_approx_support_deviation(int n) {
    const Polytope b = ball_approx(n);
    const auto grid = sphere_grid(n, 4096);
    double dev = 0.0;
    for (const auto& u : grid) dev = std::max(dev, std::abs(b.support(u) - 1.0));
    // vertices are the support maxima; include them directly
    for (int j = 0; j < b.vertex_count(); ++j)
        dev = std::max(dev, std::abs(b.vertex(j).norm() - 1.0));
    return dev;
}

Polytope zonotope(const std::vector<Eigen::VectorXd>& generators) {
    if (generators.empty()) throw BadDimension("zonotope: no generators");
    Polytope z = segment(-generators[0], generators[0]);
    for (std::size_t k = 1; k < generators.size(); ++k)
        z = minkowski_sum(z, segment(-generators[k], generators[k]));
    return z;
}

Polytope random_polytope(int n, int points, RandomStream& rng) {
    if (points < 1) throw BadDimension("random_polytope: need points");
    Eigen::MatrixXd v(n, points);
    for (int j = 0; j < points; ++j) {
        const Eigen::VectorXd u = rng.unit_vector(n);
        const double r = std::pow(rng.uniform(), 1.0 / n);
        v.col(j) = r * u;
    }
    return Polytope::from_points(v);
}

Polytope random_zonotope(int n, int generators, RandomStream& rng) {
    std::vector<Eigen::VectorXd> gens;
    gens.reserve(generators);
    for (int k = 0; k < generators; ++k)
        gens.push_back(rng.unit_vector(n) * rng.uniform(0.3, 1.0));
    return zonotope(gens);
}

Polytope box_in_subspace(const Subspace& E, double side) {
    const int i = E.dim();
    const int n = E.ambient_dim();
    Eigen::MatrixXd v(n, 1 << i);
    for (int mask = 0; mask < (1 << i); ++mask) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
        for (int k = 0; k < i; ++k)
            if ((mask >> k) & 1) p += side * E.frame().col(k);
        v.col(mask) = p;
    }
    return Polytope::from_points(v);
}

}  // namespace valgeo::bodies
