#include "valgeo/simplex.hpp"

#include <cmath>
#include <limits>

#include "valgeo/errors.hpp"

namespace valgeo {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr int kMaxIterations = 2000000;
constexpr int kStallLimit = 200;

struct Tableau {
    Eigen::MatrixXd t;        // m+1 rows (last = objective), ncols+1 cols (last = rhs)
    std::vector<int> basis;   // basic variable per row
    int m;
    int ncols;

    double& obj(int j) { return t(m, j); }
    double& rhs(int i) { return t(i, ncols); }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            const double f = t(i, col);
            if (f != 0.0) t.row(i) -= f * t.row(row);
        }
        basis[row] = col;
    }

    // One simplex step. Entering: Dantzig (most negative reduced cost) by
    // default, Bland (lowest index) when the caller detects stalling --
    // Bland's rule guarantees cycle-free progress through degenerate bases.
    // Returns false when no entering column exists (optimal). Throws on an
    // unbounded direction.
    bool step(const std::vector<bool>& usable, bool bland) {
        int col = -1;
        if (bland) {
            for (int j = 0; j < ncols; ++j)
                if (usable[j] && t(m, j) < -kPivotEps) {
                    col = j;
                    break;
                }
        } else {
            double best = -kPivotEps;
            for (int j = 0; j < ncols; ++j)
                if (usable[j] && t(m, j) < best) {
                    best = t(m, j);
                    col = j;
                }
        }
        if (col < 0) return false;

        int row = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double piv = t(i, col);
            if (piv <= kPivotEps) continue;
            const double ratio = t(i, ncols) / piv;
            if (ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                row = i;
            } else if (ratio <= best_ratio + 1e-12 && row >= 0) {
                if (bland) {
                    if (basis[i] < basis[row]) row = i;
                } else if (piv > t(row, col)) {
                    row = i;
                }
            }
        }
        if (row < 0)
            throw Error("simplex: unbounded direction entering column " + std::to_string(col));
        pivot(row, col);
        return true;
    }

    // Iterate to optimality with stall-triggered Bland fallback.
    int run(const std::vector<bool>& usable) {
        int iters = 0, stall = 0;
        bool bland = false;
        double last = rhs(m);
        while (step(usable, bland)) {
            if (++iters > kMaxIterations) throw Error("simplex: iteration limit");
            if (std::abs(rhs(m) - last) > 1e-12) {
                stall = 0;
                bland = false;
                last = rhs(m);
            } else if (++stall >= kStallLimit) {
                bland = true;
            }
        }
        return iters;
    }
};

}  // namespace

LPResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c, const std::vector<Rel>& rel) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || static_cast<int>(rel.size()) != m || c.size() != n)
        throw DimensionMismatch("solve_lp: inconsistent sizes");

    // Normalize to b >= 0, and flip homogeneous >= rows to <= so their
    // slacks can start basic.
    Eigen::MatrixXd a = A;
    Eigen::VectorXd rhs = b;
    std::vector<Rel> r = rel;
    for (int i = 0; i < m; ++i) {
        const bool flip = rhs[i] < 0 || (rhs[i] == 0.0 && r[i] == Rel::GE);
        if (flip) {
            a.row(i) *= -1.0;
            rhs[i] *= -1.0;
            if (r[i] == Rel::LE)
                r[i] = Rel::GE;
            else if (r[i] == Rel::GE)
                r[i] = Rel::LE;
        }
    }

    int nslack = 0, nart = 0;
    for (int i = 0; i < m; ++i) {
        if (r[i] != Rel::EQ) ++nslack;
        if (r[i] != Rel::LE) ++nart;
    }
    const int ncols = n + nslack + nart;

    Tableau tab;
    tab.m = m;
    tab.ncols = ncols;
    tab.t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
    tab.t.block(0, 0, m, n) = a;
    tab.basis.assign(m, -1);

    int scol = n, acol = n + nslack;
    for (int i = 0; i < m; ++i) {
        if (r[i] == Rel::LE) {
            tab.t(i, scol) = 1.0;
            tab.basis[i] = scol++;
        } else if (r[i] == Rel::GE) {
            tab.t(i, scol++) = -1.0;
        }
        if (r[i] != Rel::LE) {
            tab.t(i, acol) = 1.0;
            tab.basis[i] = acol++;
        }
        tab.rhs(i) = rhs[i];
    }

    std::vector<bool> usable(ncols, true);
    LPResult result;

    // Phase 1: minimize the sum of artificials.
    if (nart > 0) {
        for (int j = n + nslack; j < ncols; ++j) tab.obj(j) = 1.0;
        for (int i = 0; i < m; ++i)
            if (tab.basis[i] >= n + nslack) tab.t.row(m) -= tab.t.row(i);
        result.iterations += tab.run(usable);
        if (-tab.rhs(m) > 1e-7) {
            result.status = LPStatus::Infeasible;
            return result;
        }
        // Pivot remaining artificials out of the basis where possible.
        for (int i = 0; i < m; ++i) {
            if (tab.basis[i] >= n + nslack) {
                int col = -1;
                for (int j = 0; j < n + nslack; ++j)
                    if (std::abs(tab.t(i, j)) > kPivotEps) {
                        col = j;
                        break;
                    }
                if (col >= 0) tab.pivot(i, col);
                // else: redundant row, the artificial stays basic at zero
            }
        }
        for (int j = n + nslack; j < ncols; ++j) usable[j] = false;
    }

    // Phase 2: minimize c over structural + slack variables.
    tab.t.row(m).setZero();
    for (int j = 0; j < n; ++j) tab.obj(j) = c[j];
    for (int i = 0; i < m; ++i) {
        const int bj = tab.basis[i];
        if (bj < n && c[bj] != 0.0) tab.t.row(m) -= c[bj] * tab.t.row(i);
    }
    try {
        result.iterations += tab.run(usable);
    } catch (const Error& e) {
        if (std::string(e.what()).find("unbounded") != std::string::npos) {
            result.status = LPStatus::Unbounded;
            return result;
        }
        throw;
    }

    result.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) result.x[tab.basis[i]] = tab.rhs(i);
    result.objective = c.dot(result.x);
    result.status = LPStatus::Optimal;
    return result;
}

}  // namespace valgeo
