// ppt_sdp.hpp
// Optimal success probability of discriminating an ensemble with PPT
// measurements across a cut:
//
//   maximize   sum_i p_i Tr(M_i rho_i)
//   subject to M_i >= 0,  M_i^{T_B} >= 0,  sum_i M_i = I.
//
// LOCC measurements are PPT, so a value below 1 certifies that the ensemble
// is not perfectly LOCC distinguishable across the cut. A value of 1 says
// nothing. Without the T_B constraints the same program gives the global
// (collective measurement) optimum.

#pragma once

#include "ghzlocc/bipartition_blocks.hpp"
#include "ghzlocc/ghz_basis.hpp"
#include "ghzlocc/qla.hpp"
#include "ghzlocc/sdp_solver.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzlocc {

inline constexpr int kMaxSdpDimension = 64;
inline constexpr double kCertificateMargin = 1e-4;

struct DiscriminationInstance {
    std::vector<DensityOperator> states;
    std::vector<double> priors;
    Bipartition cut;

    void check() const {
        if (states.empty()) throw std::invalid_argument("discrimination instance: no states");
        if (priors.size() != states.size()) throw std::invalid_argument("discrimination instance: one prior per state");
        double total = 0.0;
        for (double p : priors) {
            if (p < 0.0) throw std::invalid_argument("discrimination instance: negative prior");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("discrimination instance: priors must sum to 1");
        const int n = states.front().num_qubits();
        for (const auto& s : states) {
            if (s.num_qubits() != n) throw std::invalid_argument("discrimination instance: states differ in dimension");
        }
        if (states.front().dim() > kMaxSdpDimension) {
            throw std::invalid_argument("discrimination instance: dimension exceeds " + std::to_string(kMaxSdpDimension));
        }
        if (cut.num_qubits() != n) throw std::invalid_argument("discrimination instance: cut does not match states");
    }

    static DiscriminationInstance uniform(std::vector<DensityOperator> states, const Bipartition& cut) {
        const auto k = states.size();
        return {std::move(states), std::vector<double>(k, k ? 1.0 / static_cast<double>(k) : 0.0), cut};
    }
};

struct SdpSolution {
    double primal_value = 0.0;
    double dual_value = 0.0;
    std::vector<Matrix> measurement;
    int iterations = 0;
    bool converged = false;
    bool reduced_accuracy = false;  // converged within the acceptable, not the target, tolerance
    double primal_residual = 0.0;
    double dual_residual = 0.0;

    double gap() const { return dual_value - primal_value; }
    /// True when the value certifies that LOCC cannot discriminate perfectly.
    bool certifies_not_perfect() const { return converged && primal_value < 1.0 - kCertificateMargin; }
};

class SdpNotConverged : public std::runtime_error {
  public:
    SdpNotConverged(const std::string& what, SdpSolution partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const SdpSolution& partial() const { return partial_; }

  private:
    SdpSolution partial_;
};

namespace detail {

// Orthonormal basis of d x d Hermitian matrices under Re Tr(A B), as sparse entries.
inline std::vector<std::vector<sdp::Entry>> hermitian_basis(Eigen::Index d) {
    std::vector<std::vector<sdp::Entry>> out;
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index a = 0; a < d; ++a) {
        out.push_back({{0, a, a, 1.0}});
        for (Eigen::Index b = a + 1; b < d; ++b) {
            out.push_back({{0, a, b, r}, {0, b, a, r}});
            out.push_back({{0, a, b, Complex(0.0, r)}, {0, b, a, Complex(0.0, -r)}});
        }
    }
    return out;
}

inline std::vector<sdp::Entry> in_block(std::vector<sdp::Entry> es, int block, double scale = 1.0) {
    for (auto& e : es) {
        e.block = block;
        e.value *= scale;
    }
    return es;
}

/// Partial transpose of a sparse matrix: entries move, values stay.
inline std::vector<sdp::Entry> transpose_entries(std::vector<sdp::Entry> es, const QubitSubset& side) {
    const std::uint64_t s = side.mask();
    for (auto& e : es) {
        const auto r = static_cast<std::uint64_t>(e.row);
        const auto c = static_cast<std::uint64_t>(e.col);
        e.row = static_cast<Eigen::Index>((r & ~s) | (c & s));
        e.col = static_cast<Eigen::Index>((c & ~s) | (r & s));
    }
    return es;
}

inline SdpSolution solve_discrimination(const DiscriminationInstance& inst, bool ppt, const sdp::Options& opt) {
    inst.check();
    const Eigen::Index d = inst.states.front().dim();
    const int k = static_cast<int>(inst.states.size());
    const QubitSubset side = inst.cut.side_b();
    const auto basis = hermitian_basis(d);

    sdp::Problem prob;
    for (int i = 0; i < k; ++i) prob.cost.push_back(-inst.priors[static_cast<std::size_t>(i)] * inst.states[static_cast<std::size_t>(i)].matrix());
    if (ppt) {
        for (int i = 0; i < k; ++i) prob.cost.push_back(Matrix::Zero(d, d));
    }
    // sum_i M_i = I
    for (const auto& e : basis) {
        sdp::Constraint c;
        for (int i = 0; i < k; ++i) {
            const auto es = in_block(e, i);
            c.entries.insert(c.entries.end(), es.begin(), es.end());
        }
        c.rhs = 0.0;
        for (const auto& en : e) {
            if (en.row == en.col) c.rhs += en.value.real();
        }
        prob.constraints.push_back(std::move(c));
    }
    // N_i = M_i^{T_B}, with N_i >= 0 carried as its own block.
    if (ppt) {
        for (int i = 0; i < k; ++i) {
            for (const auto& e : basis) {
                sdp::Constraint c;
                c.entries = in_block(e, k + i);
                const auto pt = in_block(transpose_entries(e, side), i, -1.0);
                c.entries.insert(c.entries.end(), pt.begin(), pt.end());
                prob.constraints.push_back(std::move(c));
            }
        }
    }

    const sdp::Result r = sdp::solve(prob, opt);
    SdpSolution sol;
    sol.primal_value = -r.primal_objective;
    sol.dual_value = -r.dual_objective;
    sol.iterations = r.iterations;
    sol.converged = r.converged;
    sol.reduced_accuracy = r.reduced_accuracy;
    sol.primal_residual = r.primal_residual;
    sol.dual_residual = r.dual_residual;
    sol.measurement.assign(r.x.begin(), r.x.begin() + k);
    if (!r.converged) throw SdpNotConverged("PPT discrimination SDP: " + r.message, sol);
    return sol;
}

}  // namespace detail

inline SdpSolution ppt_success_bound(const DiscriminationInstance& inst, const sdp::Options& opt = {}) {
    return detail::solve_discrimination(inst, true, opt);
}

inline SdpSolution global_success_bound(const DiscriminationInstance& inst, const sdp::Options& opt = {}) {
    return detail::solve_discrimination(inst, false, opt);
}

/// Instance over basis members across a cut. When all members fall inside
/// one block of the cut, the two-qubit compact images are used (cut 0|1);
/// the relabeling preserves every inner product. Otherwise the full space.
inline DiscriminationInstance instance_for_labels(const Basis& basis, const std::vector<StateLabel>& labels,
                                                  const Bipartition& cut, std::vector<double> priors = {}) {
    if (labels.empty()) throw std::invalid_argument("instance_for_labels: no labels");
    check_cut(basis, cut);
    if (priors.empty()) priors.assign(labels.size(), 1.0 / static_cast<double>(labels.size()));
    const Block blk = block_of(basis, cut, labels.front().pair_index);
    const bool one_block =
        std::all_of(labels.begin(), labels.end(), [&](const StateLabel& l) { return blk.contains_pair(l.pair_index); });
    DiscriminationInstance inst;
    inst.priors = std::move(priors);
    if (one_block) {
        const CompactForm cf = compact_form(basis, blk);
        inst.cut = Bipartition::from_qubits(2, {0});
        for (const auto& l : labels) {
            const auto it = std::find(cf.labels.begin(), cf.labels.end(), l);
            if (it == cf.labels.end()) throw std::invalid_argument("instance_for_labels: label not in basis");
            const Vector v = cf.states[static_cast<std::size_t>(it - cf.labels.begin())];
            inst.states.push_back(DensityOperator::pure(StateVector(2, v)));
        }
    } else {
        inst.cut = cut;
        for (const auto& l : labels) inst.states.push_back(DensityOperator::pure(basis.state_vector(l)));
    }
    return inst;
}

}  // namespace ghzlocc
