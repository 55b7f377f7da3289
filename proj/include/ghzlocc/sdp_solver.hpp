// sdp_solver.hpp
// Dense primal-dual interior-point solver for small block-diagonal complex
// Hermitian semidefinite programs in standard form
//
//   (P)  min  sum_b Re Tr(C_b X_b)   s.t.  Re Tr(A_k X) = b_k,  X >= 0
//   (D)  max  b^T y                  s.t.  sum_k y_k A_k + S = C,  S >= 0
//
// Infeasible path-following with the HKM search direction and a Mehrotra
// predictor-corrector step. Constraint matrices are Hermitian and stored as
// sparse entry lists; the Schur complement is formed densely.

#pragma once

#include "ghzlocc/qla.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzlocc::sdp {

struct Entry {
    int block = 0;
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    Complex value;
};

// One Hermitian constraint matrix A_k; both (r, c) and (c, r) entries are listed.
struct Constraint {
    std::vector<Entry> entries;
    double rhs = 0.0;
};

struct Problem {
    std::vector<Matrix> cost;  // one Hermitian C_b per block
    std::vector<Constraint> constraints;
};

struct Options {
    int max_iterations = 200;
    double tolerance = 1e-9;   // absolute gap and max-abs residual targets
    // Accepted when progress stalls short of `tolerance` (ill-conditioning
    // near the optimum); the result is then flagged as reduced accuracy.
    double acceptable_tolerance = 1e-7;
    int stall_window = 8;      // iterations without improvement before stopping
    double step_fraction = 0.95;
};

struct Result {
    std::vector<Matrix> x;
    std::vector<Matrix> s;
    Eigen::VectorXd y;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double primal_residual = 0.0;  // max |b - A(X)|
    double dual_residual = 0.0;    // max |C - A^T y - S|
    int iterations = 0;
    bool converged = false;
    bool reduced_accuracy = false;
    std::string message;
};

namespace detail {

using Blocks = std::vector<Matrix>;

inline double real_inner(const Blocks& a, const Blocks& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i].conjugate().cwiseProduct(b[i])).sum().real();
    return acc;
}

inline Matrix herm(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

/// Re Tr(A_k M).
inline double apply(const Constraint& c, const Blocks& m) {
    double acc = 0.0;
    for (const Entry& e : c.entries) acc += (e.value * m[static_cast<std::size_t>(e.block)](e.col, e.row)).real();
    return acc;
}

inline Eigen::VectorXd apply_all(const std::vector<Constraint>& cs, const Blocks& m) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(cs.size()));
    for (std::size_t k = 0; k < cs.size(); ++k) out[static_cast<Eigen::Index>(k)] = apply(cs[k], m);
    return out;
}

/// sum_k y_k A_k.
inline Blocks adjoint(const std::vector<Constraint>& cs, const Eigen::VectorXd& y, const Blocks& shape) {
    Blocks out;
    for (const Matrix& b : shape) out.push_back(Matrix::Zero(b.rows(), b.cols()));
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const double yk = y[static_cast<Eigen::Index>(k)];
        for (const Entry& e : cs[k].entries) out[static_cast<std::size_t>(e.block)](e.row, e.col) += yk * e.value;
    }
    return out;
}

/// Largest step t <= cap with X + t dX >= 0, via the Cholesky factor of X.
inline double max_step(const Blocks& x, const Blocks& dx) {
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        Eigen::LLT<Matrix> llt(x[i]);
        if (llt.info() != Eigen::Success) return 0.0;
        const Matrix linv_dx = llt.matrixL().solve(dx[i]);
        const Matrix w = llt.matrixL().solve(linv_dx.adjoint()).adjoint();
        const double lmin = hermitian_eigenvalues(herm(w)).minCoeff();
        if (lmin < 0.0) step = std::min(step, -1.0 / lmin);
    }
    return step;
}

inline double max_abs(const Blocks& m) {
    double v = 0.0;
    for (const Matrix& b : m) {
        if (b.size() > 0) v = std::max(v, b.cwiseAbs().maxCoeff());
    }
    return v;
}

}  // namespace detail

inline Result solve(const Problem& problem, const Options& opt = {}) {
    using detail::Blocks;
    const auto& cs = problem.constraints;
    const std::size_t nb = problem.cost.size();
    const auto m = static_cast<Eigen::Index>(cs.size());
    Eigen::VectorXd b(m);
    for (Eigen::Index k = 0; k < m; ++k) b[k] = cs[static_cast<std::size_t>(k)].rhs;

    Eigen::Index total_dim = 0;
    for (const Matrix& c : problem.cost) total_dim += c.rows();

    // Starting point scaled to the data.
    double a_norm = 0.0;
    double scale_x = 1.0;
    for (const auto& c : cs) {
        double f = 0.0;
        for (const Entry& e : c.entries) f += std::norm(e.value);
        f = std::sqrt(f);
        a_norm = std::max(a_norm, f);
        scale_x = std::max(scale_x, (1.0 + std::abs(c.rhs)) / (1.0 + f));
    }
    double c_norm = 0.0;
    for (const Matrix& c : problem.cost) c_norm = std::max(c_norm, c.norm());
    const double xi = std::max(1.0, std::sqrt(static_cast<double>(total_dim)) * scale_x);
    const double eta = std::max({1.0, c_norm, a_norm});

    Result res;
    Blocks x, s;
    for (const Matrix& c : problem.cost) {
        x.push_back(xi * Matrix::Identity(c.rows(), c.cols()));
        s.push_back(eta * Matrix::Identity(c.rows(), c.cols()));
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

    auto residuals = [&](Eigen::VectorXd& rp, Blocks& rd) {
        rp = b - detail::apply_all(cs, x);
        const Blocks aty = detail::adjoint(cs, y, problem.cost);
        rd.clear();
        for (std::size_t i = 0; i < nb; ++i) rd.push_back(problem.cost[i] - aty[i] - s[i]);
    };

    // Best iterate by the worst of gap and residuals.
    Result best;
    double best_score = std::numeric_limits<double>::infinity();
    int since_best = 0;
    int stalled = 0;
    for (int iter = 0; iter <= opt.max_iterations; ++iter) {
        Eigen::VectorXd rp;
        Blocks rd;
        residuals(rp, rd);
        res.primal_objective = detail::real_inner(problem.cost, x);
        res.dual_objective = b.dot(y);
        res.primal_residual = m > 0 ? rp.cwiseAbs().maxCoeff() : 0.0;
        res.dual_residual = detail::max_abs(rd);
        res.iterations = iter;
        const double gap = std::abs(res.primal_objective - res.dual_objective);
        const double score = std::max({gap, res.primal_residual, res.dual_residual});
        if (score < best_score) {
            best_score = score;
            best = res;
            best.x = x;
            best.s = s;
            best.y = y;
            since_best = 0;
        } else {
            ++since_best;
        }
        if (score < opt.tolerance) {
            res.converged = true;
            break;
        }
        if (iter == opt.max_iterations || stalled >= 5 || since_best >= opt.stall_window) break;

        const double mu = detail::real_inner(x, s) / static_cast<double>(total_dim);
        Blocks z;
        for (const Matrix& sb : s) {
            Eigen::LLT<Matrix> llt(sb);
            if (llt.info() != Eigen::Success) break;
            z.push_back(detail::herm(llt.solve(Matrix::Identity(sb.rows(), sb.cols()))));
        }
        if (z.size() != nb) {
            res.message = "dual slack lost positive definiteness";
            break;
        }

        {
            // Schur complement M_kl = Re Tr(A_k X A_l Z).
            Eigen::MatrixXd schur(m, m);
            for (Eigen::Index l = 0; l < m; ++l) {
                Blocks g;
                for (const Matrix& xb : x) g.push_back(Matrix::Zero(xb.rows(), xb.cols()));
                for (const Entry& e : cs[static_cast<std::size_t>(l)].entries) {
                    const auto bi = static_cast<std::size_t>(e.block);
                    g[bi] += e.value * x[bi].col(e.row) * z[bi].row(e.col);
                }
                for (Eigen::Index k = 0; k < m; ++k) schur(k, l) = detail::apply(cs[static_cast<std::size_t>(k)], g);
            }
            schur = 0.5 * (schur + schur.transpose()).eval();
            Eigen::LLT<Eigen::MatrixXd> schur_llt(schur);
            if (schur_llt.info() != Eigen::Success) {
                const double shift = 1e-14 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
                schur_llt.compute(schur + shift * Eigen::MatrixXd::Identity(m, m));
                if (schur_llt.info() != Eigen::Success) {
                    res.message = "Schur complement is not positive definite";
                    break;
                }
            }

            Blocks x_rd_z;
            for (std::size_t i = 0; i < nb; ++i) x_rd_z.push_back(x[i] * rd[i] * z[i]);
            const Eigen::VectorXd base = rp + detail::apply_all(cs, x) + detail::apply_all(cs, x_rd_z);
            const Eigen::VectorXd a_z = detail::apply_all(cs, z);

            auto direction = [&](double target, const Blocks* second_order, Eigen::VectorXd& dy, Blocks& dx, Blocks& ds) {
                Eigen::VectorXd rhs = base - target * a_z;
                if (second_order) rhs += detail::apply_all(cs, *second_order);
                dy = schur_llt.solve(rhs);
                dy += schur_llt.solve(rhs - schur * dy);
                const Blocks aty = detail::adjoint(cs, dy, problem.cost);
                dx.clear();
                ds.clear();
                for (std::size_t i = 0; i < nb; ++i) {
                    ds.push_back(rd[i] - aty[i]);
                    Matrix t = target * z[i] - x[i] - x[i] * ds[i] * z[i];
                    if (second_order) t -= (*second_order)[i];
                    dx.push_back(detail::herm(t));
                }
            };

            Eigen::VectorXd dy;
            Blocks dx, ds;
            direction(0.0, nullptr, dy, dx, ds);
            double ap = std::min(1.0, detail::max_step(x, dx));
            double ad = std::min(1.0, detail::max_step(s, ds));
            Blocks xa, sa;
            for (std::size_t i = 0; i < nb; ++i) {
                xa.push_back(x[i] + ap * dx[i]);
                sa.push_back(s[i] + ad * ds[i]);
            }
            const double mu_aff = detail::real_inner(xa, sa) / static_cast<double>(total_dim);
            const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

            Blocks corr;
            for (std::size_t i = 0; i < nb; ++i) corr.push_back(dx[i] * ds[i] * z[i]);
            direction(sigma * mu, &corr, dy, dx, ds);

            ap = std::min(1.0, opt.step_fraction * detail::max_step(x, dx));
            ad = std::min(1.0, opt.step_fraction * detail::max_step(s, ds));
            stalled = (ap < 1e-10 && ad < 1e-10) ? stalled + 1 : 0;
            for (std::size_t i = 0; i < nb; ++i) {
                x[i] = detail::herm(x[i] + ap * dx[i]);
                s[i] = detail::herm(s[i] + ad * ds[i]);
            }
            y += ad * dy;
        }
    }
    if (!res.converged && best_score < opt.acceptable_tolerance) {
        const int last = res.iterations;
        res = std::move(best);
        res.converged = true;
        res.reduced_accuracy = true;
        std::ostringstream os;
        os << "reduced accuracy: best iterate " << res.iterations << " of " << last << ", worst of gap and residuals "
           << best_score;
        res.message = os.str();
        return res;
    }
    if (!res.converged && res.message.empty()) {
        std::ostringstream os;
        os << "no convergence after " << res.iterations << " iterations: gap "
           << std::abs(res.primal_objective - res.dual_objective) << ", primal residual " << res.primal_residual
           << ", dual residual " << res.dual_residual;
        res.message = os.str();
    }
    res.x = std::move(x);
    res.s = std::move(s);
    res.y = std::move(y);
    return res;
}

}  // namespace ghzlocc::sdp
