// locc_sim.hpp
// LOCC protocols as finite measurement trees, simulated exactly.
//
// A node names the acting party and a complete set of Kraus operators on
// that party's qubits; each outcome has its own subtree. Classical
// communication is implicit: every node sits below the full history of
// outcomes on its path. Leaves carry a guess, or none for "inconclusive".

#pragma once

#include "ghzlocc/bipartition_blocks.hpp"
#include "ghzlocc/ghz_basis.hpp"
#include "ghzlocc/qla.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ghzlocc {

class SpatialConfiguration {
  public:
    SpatialConfiguration() = default;
    SpatialConfiguration(int num_qubits, std::vector<QubitSubset> parties)
        : n_(num_qubits), parties_(std::move(parties)) {
        if (parties_.empty()) throw std::invalid_argument("configuration: no parties");
        std::uint64_t seen = 0;
        for (const auto& p : parties_) {
            if (p.num_qubits() != n_ || p.empty()) {
                throw std::invalid_argument("configuration: parties must be nonempty subsets of the qubits");
            }
            if (seen & p.mask()) throw std::invalid_argument("configuration: parties overlap");
            seen |= p.mask();
        }
        if (seen != full_mask(n_)) throw std::invalid_argument("configuration: parties do not cover all qubits");
    }

    static SpatialConfiguration fully_separated(int num_qubits) {
        std::vector<QubitSubset> parties;
        for (int q = 0; q < num_qubits; ++q) parties.push_back(QubitSubset::of(num_qubits, {q}));
        return SpatialConfiguration(num_qubits, std::move(parties));
    }
    static SpatialConfiguration from_bipartition(const Bipartition& bp) {
        return SpatialConfiguration(bp.num_qubits(), {bp.side_a(), bp.side_b()});
    }

    int num_qubits() const { return n_; }
    const std::vector<QubitSubset>& parties() const { return parties_; }
    std::size_t num_parties() const { return parties_.size(); }

    /// True when no party straddles the cut, i.e. LOCC here is LOCC across bp.
    bool refines(const Bipartition& bp) const {
        const std::uint64_t a = bp.side_a().mask();
        for (const auto& p : parties_) {
            if ((p.mask() & a) != 0 && (p.mask() & ~a) != 0) return false;
        }
        return true;
    }

    std::string str() const {
        std::string out;
        const bool wide = n_ > 10;
        for (std::size_t i = 0; i < parties_.size(); ++i) {
            if (i) out += '|';
            std::string group;
            for (int q : parties_[i].qubits()) {
                if (wide && !group.empty()) group += ',';
                group += std::to_string(q);
            }
            out += group;
        }
        return out;
    }

  private:
    int n_ = 0;
    std::vector<QubitSubset> parties_;
};

struct ProtocolNode;

struct Leaf {
    std::optional<StateLabel> guess;  // nullopt: inconclusive
};

struct MeasureNode {
    std::size_t party = 0;
    std::vector<Matrix> kraus;
    std::vector<ProtocolNode> children;  // one per Kraus operator
};

struct ProtocolNode {
    std::variant<Leaf, MeasureNode> content;
};

struct ProtocolTree {
    SpatialConfiguration config;
    ProtocolNode root;
};

inline ProtocolNode make_leaf(std::optional<StateLabel> guess) { return ProtocolNode{Leaf{guess}}; }

namespace detail {

inline void validate_node(const ProtocolNode& node, const SpatialConfiguration& config) {
    if (const auto* m = std::get_if<MeasureNode>(&node.content)) {
        if (m->party >= config.num_parties()) throw std::invalid_argument("protocol: node names an unknown party");
        const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << config.parties()[m->party].size());
        for (const Matrix& k : m->kraus) {
            if (k.rows() != d || k.cols() != d) {
                throw std::invalid_argument("protocol: Kraus operator dimension does not match the party");
            }
        }
        if (m->children.size() != m->kraus.size()) {
            throw std::invalid_argument("protocol: need exactly one child per outcome");
        }
        if (completeness_residual(m->kraus) > kNormTol) {
            throw std::invalid_argument("protocol: measurement is not complete");
        }
        for (const auto& c : m->children) validate_node(c, config);
    }
}

}  // namespace detail

inline void validate(const ProtocolTree& protocol) { detail::validate_node(protocol.root, protocol.config); }

struct LeafHit {
    std::vector<int> path;  // outcome index taken at each node
    std::optional<StateLabel> guess;
    double probability = 0.0;
};

namespace detail {

inline void descend(const ProtocolNode& node, const SpatialConfiguration& config, const Vector& amps,
                    std::vector<int>& path, std::vector<LeafHit>& out) {
    if (const auto* leaf = std::get_if<Leaf>(&node.content)) {
        out.push_back(LeafHit{path, leaf->guess, amps.squaredNorm()});
        return;
    }
    const auto& m = std::get<MeasureNode>(node.content);
    const QubitSubset& party = config.parties()[m.party];
    for (std::size_t i = 0; i < m.kraus.size(); ++i) {
        Vector next = party.is_full() ? Vector(m.kraus[i] * amps) : apply_local(m.kraus[i], party, amps);
        if (next.squaredNorm() <= kBranchPruneTol) continue;
        path.push_back(static_cast<int>(i));
        descend(m.children[i], config, next, path, out);
        path.pop_back();
    }
}

}  // namespace detail

/// Leaf distribution for one input state; zero-probability branches are pruned.
inline std::vector<LeafHit> simulate(const ProtocolTree& protocol, const StateVector& state) {
    if (state.num_qubits() != protocol.config.num_qubits()) {
        throw std::invalid_argument("simulate: state and configuration have different qubit counts");
    }
    validate(protocol);
    std::vector<LeafHit> out;
    std::vector<int> path;
    // Unnormalized branch vectors: the squared norm at a leaf is its probability.
    detail::descend(protocol.root, protocol.config, state.amplitudes() / state.norm(), path, out);
    return out;
}

struct GuessMass {
    StateLabel guess;
    double probability = 0.0;
};

struct LabelReport {
    StateLabel label;
    double success = 0.0;
    double inconclusive = 0.0;
    double error = 0.0;
    std::vector<GuessMass> wrong_guesses;
};

struct RunReport {
    std::string config;
    std::vector<LabelReport> entries;

    const LabelReport& at(const StateLabel& l) const {
        for (const auto& e : entries) {
            if (e.label == l) return e;
        }
        throw std::out_of_range("RunReport: label " + to_string(l) + " not present");
    }
};

inline RunReport run(const ProtocolTree& protocol, const StateSet& set) {
    RunReport report;
    report.config = protocol.config.str();
    for (const auto& label : set.labels()) {
        LabelReport e;
        e.label = label;
        for (const LeafHit& hit : simulate(protocol, set.basis().state_vector(label))) {
            if (!hit.guess) {
                e.inconclusive += hit.probability;
            } else if (*hit.guess == label) {
                e.success += hit.probability;
            } else {
                e.error += hit.probability;
                auto it = std::find_if(e.wrong_guesses.begin(), e.wrong_guesses.end(),
                                       [&](const GuessMass& g) { return g.guess == *hit.guess; });
                if (it == e.wrong_guesses.end()) e.wrong_guesses.push_back({*hit.guess, hit.probability});
                else it->probability += hit.probability;
            }
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

inline constexpr double kPerfectTol = 1e-12;

struct PerfectCheck {
    bool perfect = false;
    RunReport report;
};

inline PerfectCheck verify_perfect(const ProtocolTree& protocol, const StateSet& set) {
    PerfectCheck out{true, run(protocol, set)};
    for (const auto& e : out.report.entries) {
        if (std::abs(e.success - 1.0) > kPerfectTol) out.perfect = false;
    }
    return out;
}

struct ConclusiveCheck {
    bool conclusive = false;
    std::vector<StateLabel> identified;
    RunReport report;
};

/// A member is identified when it is guessed with nonzero probability and
/// no other member of the set ever produces that guess.
inline ConclusiveCheck verify_conclusive(const ProtocolTree& protocol, const StateSet& set) {
    ConclusiveCheck out;
    out.report = run(protocol, set);
    for (const auto& e : out.report.entries) {
        if (e.success <= kPerfectTol) continue;
        double false_positive = 0.0;
        for (const auto& other : out.report.entries) {
            for (const auto& g : other.wrong_guesses) {
                if (g.guess == e.label) false_positive += g.probability;
            }
        }
        if (false_positive <= kPerfectTol) out.identified.push_back(e.label);
    }
    out.conclusive = !out.identified.empty();
    return out;
}

/// Guess for an observed computational-basis string: the set's unique member
/// compatible with it, if any.
inline std::optional<StateLabel> guess_for_string(const StateSet& set, std::uint64_t bits) {
    const Basis& basis = set.basis();
    const ConjugatePair& p = basis.pair_of_string(bits);
    if (p.degenerate()) {
        const StateLabel l{p.index, bits == p.k ? Member::k : Member::kbar};
        if (set.contains(l)) return l;
        return std::nullopt;
    }
    const auto members = set.members_in_pair(p.index);
    if (members.size() == 1) return members.front();
    return std::nullopt;
}

namespace detail {

inline ProtocolNode pair_id_node(const StateSet& set, const SpatialConfiguration& config, std::size_t party,
                                 std::uint64_t bits) {
    if (party == config.num_parties()) return make_leaf(guess_for_string(set, bits));
    const QubitSubset& q = config.parties()[party];
    MeasureNode m;
    m.party = party;
    m.kraus = computational_projectors(q.size());
    for (std::uint64_t local = 0; local < m.kraus.size(); ++local) {
        m.children.push_back(pair_id_node(set, config, party + 1, bits | q.deposit(local)));
    }
    return ProtocolNode{std::move(m)};
}

}  // namespace detail

/// Every party measures its qubits in the computational basis, in party
/// order. The joint string lies in {k, ~k} of exactly one pair, so pair
/// identity is always learned; the guess is the set's member of that pair
/// when it is unique.
inline ProtocolTree build_pair_id_protocol(const SpatialConfiguration& config, const StateSet& set) {
    if (config.num_qubits() != set.basis().num_qubits()) {
        throw std::invalid_argument("build_pair_id_protocol: configuration does not match basis");
    }
    return ProtocolTree{config, detail::pair_id_node(set, config, 0, 0)};
}

namespace detail {

// Local rank-one projector |v><v| on a d-dimensional party space.
inline Matrix rank_one(const Vector& v) { return v * v.adjoint(); }

inline Vector local_ket(Eigen::Index d, std::uint64_t i, Complex c = 1.0) {
    Vector v = Vector::Zero(d);
    v[static_cast<Eigen::Index>(i)] = c;
    return v;
}

}  // namespace detail

/// Two-party protocol across a cut. Bob learns which {b, ~b} class his
/// string lies in, Alice then measures each of her {a, ~a} classes either in
/// the computational basis or in (|a> +- |~a>)/sqrt2, and Bob finishes in the
/// basis fixed by Alice's outcome. The rotated branch is taken in blocks
/// whose set members are exactly the two members of one entangled pair;
/// every other block is read out in the computational basis.
inline ProtocolTree build_block_protocol(const SpatialConfiguration& config, const StateSet& set) {
    if (config.num_parties() != 2) {
        throw std::invalid_argument("build_block_protocol: configuration must have exactly two parties");
    }
    const Basis& basis = set.basis();
    if (config.num_qubits() != basis.num_qubits()) {
        throw std::invalid_argument("build_block_protocol: configuration does not match basis");
    }
    const QubitSubset& alice = config.parties()[0];
    const QubitSubset& bob = config.parties()[1];
    const Bipartition bp = Bipartition::from_side(alice);
    const auto da = static_cast<Eigen::Index>(std::uint64_t{1} << alice.size());
    const auto db = static_cast<Eigen::Index>(std::uint64_t{1} << bob.size());
    const std::uint64_t a_flip = full_mask(alice.size());
    const std::uint64_t b_flip = full_mask(bob.size());
    const double r = 1.0 / std::sqrt(2.0);
    const std::size_t alice_party = 0;
    const std::size_t bob_party = 1;

    // Pair whose two set members make up the whole of the block's set content.
    auto sign_route_pair = [&](std::uint64_t full_string) -> std::optional<int> {
        const int p = basis.pair_of_string(full_string).index;
        const Block blk = block_of(basis, bp, p);
        const auto mi = set.members_in_pair(blk.pair_i);
        const auto mj = set.members_in_pair(blk.pair_j);
        if (mi.size() == 2 && mj.empty() && !basis.pair(blk.pair_i).degenerate()) return blk.pair_i;
        if (mj.size() == 2 && mi.empty() && !basis.pair(blk.pair_j).degenerate()) return blk.pair_j;
        return std::nullopt;
    };

    MeasureNode bob_class;
    bob_class.party = bob_party;
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(db); ++b) {
        if (b & (std::uint64_t{1} << (bob.size() - 1))) continue;  // class representative: leading local bit 0
        const std::uint64_t nb = b ^ b_flip;
        bob_class.kraus.push_back(detail::rank_one(detail::local_ket(db, b)) + detail::rank_one(detail::local_ket(db, nb)));

        MeasureNode alice_m;
        alice_m.party = alice_party;
        for (std::uint64_t a = 0; a < static_cast<std::uint64_t>(da); ++a) {
            if (a & (std::uint64_t{1} << (alice.size() - 1))) continue;
            const std::uint64_t na = a ^ a_flip;
            const std::uint64_t s_ab = alice.deposit(a) | bob.deposit(b);
            const std::optional<int> sign_pair = sign_route_pair(s_ab);

            // Bob's finishing measurement: two outcome vectors in span{|b>,|~b>},
            // plus the (never reached) rest of his space.
            auto finish = [&](const Vector& v0, std::optional<StateLabel> g0, const Vector& v1,
                              std::optional<StateLabel> g1) {
                MeasureNode fin;
                fin.party = bob_party;
                const Matrix p0 = detail::rank_one(v0);
                const Matrix p1 = detail::rank_one(v1);
                fin.kraus.push_back(p0);
                fin.children.push_back(make_leaf(g0));
                fin.kraus.push_back(p1);
                fin.children.push_back(make_leaf(g1));
                const Matrix rest = Matrix::Identity(db, db) - p0 - p1;
                if (rest.cwiseAbs().maxCoeff() > kNormTol) {
                    fin.kraus.push_back(rest);
                    fin.children.push_back(make_leaf(std::nullopt));
                }
                return ProtocolNode{std::move(fin)};
            };

            if (!sign_pair) {
                for (std::uint64_t x : {a, na}) {
                    alice_m.kraus.push_back(detail::rank_one(detail::local_ket(da, x)));
                    const std::uint64_t sx = alice.deposit(x);
                    alice_m.children.push_back(finish(detail::local_ket(db, b), guess_for_string(set, sx | bob.deposit(b)),
                                                      detail::local_ket(db, nb), guess_for_string(set, sx | bob.deposit(nb))));
                }
                continue;
            }

            const ConjugatePair& pair = basis.pair(*sign_pair);
            const std::uint64_t k_a = alice.extract(pair.k);
            const std::uint64_t k_b = bob.extract(pair.k);
            for (double s : {1.0, -1.0}) {
                const Vector phi = detail::local_ket(da, a, r) + detail::local_ket(da, na, s * r);
                alice_m.kraus.push_back(detail::rank_one(phi));
                // Bob's conditional state for a member c_k|k> + c_kbar|~k>.
                auto conditional = [&](const StateLabel& l) {
                    const auto [ck, ckbar] = basis.member_coefficients(l);
                    const double amp_k = (k_a == a) ? r : s * r;
                    const double amp_kbar = (k_a == a) ? s * r : r;
                    Vector v = detail::local_ket(db, k_b, ck * amp_k) + detail::local_ket(db, k_b ^ b_flip, ckbar * amp_kbar);
                    return Vector(v / v.norm());
                };
                const StateLabel lp = plus_of(pair.index);
                const StateLabel lm = minus_of(pair.index);
                alice_m.children.push_back(finish(conditional(lp), lp, conditional(lm), lm));
            }
        }
        bob_class.children.push_back(ProtocolNode{std::move(alice_m)});
    }
    return ProtocolTree{config, ProtocolNode{std::move(bob_class)}};
}

}  // namespace ghzlocc
