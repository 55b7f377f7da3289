// bounds.hpp
// Cardinality bounds and distinguishability verdicts for sets of GHZ /
// hybrid basis states.
//
// Indistinguishability across a cut is decided by two block patterns, taken
// as known two-qubit facts:
//   three_in_block   any 3 of the 4 members of a block of two entangled
//                    pairs are not perfectly LOCC distinguishable;
//   pair_plus_product  both members of an entangled pair together with a
//                    product state of the same block are not either.
// A pattern across a cut rules out every configuration whose parties do not
// straddle that cut.

#pragma once

#include "ghzlocc/bipartition_blocks.hpp"
#include "ghzlocc/ghz_basis.hpp"
#include "ghzlocc/locc_sim.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace ghzlocc {

/// floor(D / mean 2^E) over the set's members.
inline std::uint64_t hayashi_bound(const StateSet& set) {
    if (set.empty()) throw std::invalid_argument("hayashi_bound: empty set");
    double mean = 0.0;
    for (const auto& l : set.labels()) mean += std::exp2(member_entanglement(set.basis(), l));
    mean /= static_cast<double>(set.size());
    const double d = static_cast<double>(set.basis().dimension());
    // Cardinality: floor, guarded against round-off just below an integer.
    return static_cast<std::uint64_t>(std::floor(d / mean + 1e-9));
}

/// 2^(N-1) for an all-entangled basis, 2^N - K for a hybrid basis with K entangled pairs.
inline std::uint64_t structural_bound(const Basis& basis) {
    if (basis.kind() == BasisKind::all_entangled) return basis.dimension() / 2;
    return basis.dimension() - static_cast<std::uint64_t>(basis.entangled_pairs());
}

enum class WitnessPattern : std::uint8_t { three_in_block, pair_plus_product };

inline const char* to_string(WitnessPattern p) {
    return p == WitnessPattern::three_in_block ? "three_in_block" : "pair_plus_product";
}

struct Witness {
    Block block;
    WitnessPattern pattern = WitnessPattern::three_in_block;
    std::vector<StateLabel> offending;
};

/// Witnesses for one cut; empty means the block patterns say nothing there.
inline std::vector<Witness> witnesses_for_cut(const StateSet& set, const Bipartition& bp) {
    const Basis& basis = set.basis();
    std::vector<Witness> out;
    for (const Block& blk : blocks_for(basis, bp)) {
        auto mi = set.members_in_pair(blk.pair_i);
        auto mj = set.members_in_pair(blk.pair_j);
        std::vector<StateLabel> inside = mi;
        inside.insert(inside.end(), mj.begin(), mj.end());
        switch (blk.kind) {
            case BlockKind::two_entangled_pairs:
                if (inside.size() >= 3) out.push_back({blk, WitnessPattern::three_in_block, inside});
                break;
            case BlockKind::one_pair_two_products: {
                const bool i_entangled = !basis.pair(blk.pair_i).degenerate();
                const auto& ent = i_entangled ? mi : mj;
                const auto& prod = i_entangled ? mj : mi;
                if (ent.size() == 2 && !prod.empty()) out.push_back({blk, WitnessPattern::pair_plus_product, inside});
                break;
            }
            case BlockKind::four_products: break;
        }
    }
    return out;
}

struct CutReport {
    Bipartition bipartition;
    std::vector<Witness> witnesses;
};

enum class VerdictStatus : std::uint8_t { perfect_ok, not_perfect, conclusive_only, unknown };

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::perfect_ok: return "perfect_ok";
        case VerdictStatus::not_perfect: return "not_perfect";
        case VerdictStatus::conclusive_only: return "conclusive_only";
        case VerdictStatus::unknown: return "unknown";
    }
    return "?";
}

struct ConclusiveResult {
    bool conclusive = false;
    std::vector<StateLabel> identified;
};

/// Members provably identifiable with nonzero probability by a computational
/// basis readout: product members, and members whose pair partner is absent.
inline ConclusiveResult conclusive_check(const StateSet& set) {
    ConclusiveResult out;
    for (const auto& l : set.labels()) {
        if (!is_sign(l.member) || set.members_in_pair(l.pair_index).size() == 1) out.identified.push_back(l);
    }
    out.conclusive = !out.identified.empty();
    return out;
}

struct Verdict {
    VerdictStatus status = VerdictStatus::unknown;
    std::string config;
    std::vector<CutReport> cuts;           // every canonical cut, witnesses or not
    bool all_cuts_flagged = false;         // not perfect in any configuration short of a single party
    std::uint64_t hayashi = 0;
    std::uint64_t structural = 0;
    double avg_entanglement = 0.0;
    std::string protocol;                  // "pair-id" or "block" when perfect_ok
    std::vector<StateLabel> conclusive_labels;

    std::size_t witness_count() const {
        std::size_t c = 0;
        for (const auto& cut : cuts) c += cut.witnesses.size();
        return c;
    }
    const CutReport& cut(const Bipartition& bp) const {
        for (const auto& c : cuts) {
            if (c.bipartition == bp) return c;
        }
        throw std::out_of_range("Verdict: no report for cut " + bp.str());
    }
};

/// Scans every canonical cut, then judges the set for `config`:
/// not_perfect if a cut compatible with config carries a witness,
/// perfect_ok if a protocol for config is verified by simulation,
/// conclusive_only if neither but some member is identifiable, else unknown.
inline Verdict analyze_set(const StateSet& set, const SpatialConfiguration& config) {
    const Basis& basis = set.basis();
    if (config.num_qubits() != basis.num_qubits()) {
        throw std::invalid_argument("analyze_set: configuration does not match basis");
    }
    Verdict v;
    v.config = config.str();
    v.hayashi = set.empty() ? basis.dimension() : hayashi_bound(set);
    v.structural = structural_bound(basis);
    v.avg_entanglement = set.empty() ? 0.0 : average_entanglement(set);

    bool flagged_for_config = false;
    v.all_cuts_flagged = true;
    for (const Bipartition& bp : enumerate_bipartitions(basis.num_qubits())) {
        CutReport cr{bp, witnesses_for_cut(set, bp)};
        if (cr.witnesses.empty()) v.all_cuts_flagged = false;
        else if (config.refines(bp)) flagged_for_config = true;
        v.cuts.push_back(std::move(cr));
    }
    const ConclusiveResult cc = conclusive_check(set);
    v.conclusive_labels = cc.identified;

    if (flagged_for_config) {
        v.status = VerdictStatus::not_perfect;
        return v;
    }
    if (verify_perfect(build_pair_id_protocol(config, set), set).perfect) {
        v.status = VerdictStatus::perfect_ok;
        v.protocol = "pair-id";
        return v;
    }
    if (config.num_parties() == 2 && verify_perfect(build_block_protocol(config, set), set).perfect) {
        v.status = VerdictStatus::perfect_ok;
        v.protocol = "block";
        return v;
    }
    v.status = cc.conclusive ? VerdictStatus::conclusive_only : VerdictStatus::unknown;
    return v;
}

inline Verdict analyze_set(const StateSet& set) {
    return analyze_set(set, SpatialConfiguration::fully_separated(set.basis().num_qubits()));
}

/// One member of every entangled pair (sign chosen per pair, default "+")
/// together with every product member.
inline StateSet construct_max_perfect_set(std::shared_ptr<const Basis> basis, const std::vector<Member>& signs = {}) {
    std::vector<StateLabel> labels;
    for (const auto& p : basis->pairs()) {
        if (p.degenerate()) {
            labels.push_back({p.index, Member::k});
            labels.push_back({p.index, Member::kbar});
            continue;
        }
        Member s = Member::plus;
        if (!signs.empty()) {
            if (signs.size() != basis->num_pairs()) {
                throw std::invalid_argument("construct_max_perfect_set: need one sign per pair");
            }
            s = signs[static_cast<std::size_t>(p.index - 1)];
            if (!is_sign(s)) throw std::invalid_argument("construct_max_perfect_set: sign must be + or -");
        }
        labels.push_back({p.index, s});
    }
    return StateSet(std::move(basis), std::move(labels));
}

}  // namespace ghzlocc
