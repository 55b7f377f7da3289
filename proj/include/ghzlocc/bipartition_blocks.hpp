// bipartition_blocks.hpp
// Block structure of the GHZ basis under a bipartition A|B.
//
// Across a cut, the pair with representative k is locked to the unique pair
// whose strings agree with k on A and are complemented on B. The two pairs
// span {|a b>, |~a ~b>, |a ~b>, |~a b>}, which the relabeling
// |a>_A -> |0>, |~a>_A -> |1>, |b>_B -> |0>, |~b>_B -> |1> maps onto two
// qubits. Every basis splits into 2^(N-2) such blocks for every cut.

#pragma once

#include "ghzlocc/ghz_basis.hpp"
#include "ghzlocc/qla.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <string>
#include <vector>

namespace ghzlocc {

// Canonical form: |A| <= |B|, and qubit 0 in A when |A| == |B|.
class Bipartition {
  public:
    Bipartition() = default;

    /// Canonicalizes the given side (or its complement).
    static Bipartition from_side(const QubitSubset& side) {
        if (side.empty() || side.is_full()) {
            throw std::invalid_argument("bipartition: both sides must be nonempty");
        }
        const int n = side.num_qubits();
        const int m = side.size();
        bool flip = false;
        if (2 * m > n) {
            flip = true;
        } else if (2 * m == n) {
            flip = !side.contains(0);
        }
        Bipartition bp;
        bp.side_a_ = flip ? side.complement() : side;
        return bp;
    }
    static Bipartition from_qubits(int num_qubits, std::initializer_list<int> side) {
        return from_side(QubitSubset::of(num_qubits, side));
    }

    int num_qubits() const { return side_a_.num_qubits(); }
    const QubitSubset& side_a() const { return side_a_; }
    QubitSubset side_b() const { return side_a_.complement(); }
    int m() const { return side_a_.size(); }

    /// "0|12" style rendering (multi-digit qubits separated by commas).
    std::string str() const {
        auto render = [&](const QubitSubset& s) {
            std::string out;
            const bool wide = num_qubits() > 10;
            for (int q : s.qubits()) {
                if (wide && !out.empty()) out += ',';
                out += std::to_string(q);
            }
            return out;
        };
        return render(side_a_) + "|" + render(side_b());
    }

    friend bool operator==(const Bipartition&, const Bipartition&) = default;

  private:
    QubitSubset side_a_;
};

/// All canonical bipartitions, ordered by |A| and then by A's qubit list.
inline std::vector<Bipartition> enumerate_bipartitions(int num_qubits) {
    if (num_qubits < 2 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("enumerate_bipartitions: need N >= 2");
    }
    std::vector<Bipartition> out;
    const std::uint64_t full = full_mask(num_qubits);
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        const QubitSubset side(num_qubits, mask);
        const Bipartition bp = Bipartition::from_side(side);
        if (bp.side_a().mask() == mask) out.push_back(bp);
    }
    std::sort(out.begin(), out.end(), [](const Bipartition& x, const Bipartition& y) {
        if (x.m() != y.m()) return x.m() < y.m();
        return x.side_a().qubits() < y.side_a().qubits();
    });
    return out;
}

enum class BlockKind : std::uint8_t { two_entangled_pairs, one_pair_two_products, four_products };

inline const char* to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::two_entangled_pairs: return "two_entangled_pairs";
        case BlockKind::one_pair_two_products: return "one_pair_two_products";
        case BlockKind::four_products: return "four_products";
    }
    return "?";
}

struct Block {
    Bipartition bipartition;
    int pair_i = 0;  // smaller pair index
    int pair_j = 0;
    BlockKind kind = BlockKind::two_entangled_pairs;

    bool contains_pair(int p) const { return p == pair_i || p == pair_j; }
};

/// Partner representative: flip the B-side bits, then re-canonicalize.
inline std::uint64_t partner_k(std::uint64_t k, const Bipartition& bp) {
    return canonical_k(k ^ bp.side_b().mask(), bp.num_qubits());
}

inline int partner_pair(const Basis& basis, const Bipartition& bp, int pair_index) {
    return basis.pair_of_string(partner_k(basis.pair(pair_index).k, bp)).index;
}

inline BlockKind classify_hybrid(const Basis& basis, int pair_i, int pair_j) {
    const int degenerate = int{basis.pair(pair_i).degenerate()} + int{basis.pair(pair_j).degenerate()};
    switch (degenerate) {
        case 0: return BlockKind::two_entangled_pairs;
        case 1: return BlockKind::one_pair_two_products;
        default: return BlockKind::four_products;
    }
}

inline BlockKind classify_hybrid(const Basis& basis, const Block& block) {
    return classify_hybrid(basis, block.pair_i, block.pair_j);
}

inline void check_cut(const Basis& basis, const Bipartition& bp) {
    if (bp.num_qubits() != basis.num_qubits()) {
        throw std::invalid_argument("bipartition qubit count does not match basis");
    }
}

inline Block block_of(const Basis& basis, const Bipartition& bp, int pair_index) {
    check_cut(basis, bp);
    const int other = partner_pair(basis, bp, pair_index);
    Block b;
    b.bipartition = bp;
    b.pair_i = std::min(pair_index, other);
    b.pair_j = std::max(pair_index, other);
    b.kind = classify_hybrid(basis, b.pair_i, b.pair_j);
    return b;
}

/// The 2^(N-2) blocks of a cut, ordered by their smaller pair index.
inline std::vector<Block> blocks_for(const Basis& basis, const Bipartition& bp) {
    check_cut(basis, bp);
    std::vector<Block> out;
    out.reserve(basis.num_pairs() / 2);
    for (const auto& p : basis.pairs()) {
        const int other = partner_pair(basis, bp, p.index);
        if (p.index < other) out.push_back(block_of(basis, bp, p.index));
    }
    return out;
}

// Two-qubit images of a block's four members.
struct CompactForm {
    Block block;
    std::array<StateLabel, 4> labels;  // pair_i members, then pair_j members
    std::array<Eigen::Vector4cd, 4> states;
    std::uint64_t reference = 0;  // the string mapped to |00>
};

/// Two-qubit index (A bit is the MSB) of a string under the block relabeling
/// anchored at `reference`; -1 when the string lies outside the block.
inline int compact_index(const Bipartition& bp, std::uint64_t reference, std::uint64_t bits) {
    const std::uint64_t a_mask = bp.side_a().mask();
    const std::uint64_t b_mask = bp.side_b().mask();
    const std::uint64_t diff = bits ^ reference;
    int a_bit = -1;
    if ((diff & a_mask) == 0) a_bit = 0;
    else if ((diff & a_mask) == a_mask) a_bit = 1;
    int b_bit = -1;
    if ((diff & b_mask) == 0) b_bit = 0;
    else if ((diff & b_mask) == b_mask) b_bit = 1;
    if (a_bit < 0 || b_bit < 0) return -1;
    return 2 * a_bit + b_bit;
}

inline CompactForm compact_form(const Basis& basis, const Block& block) {
    check_cut(basis, block.bipartition);
    CompactForm cf;
    cf.block = block;
    cf.reference = basis.pair(block.pair_i).k;
    const int n = basis.num_qubits();
    std::size_t slot = 0;
    for (int p : {block.pair_i, block.pair_j}) {
        const ConjugatePair& pair = basis.pair(p);
        const int ik = compact_index(block.bipartition, cf.reference, pair.k);
        const int ikbar = compact_index(block.bipartition, cf.reference, pair.k ^ full_mask(n));
        if (ik < 0 || ikbar < 0) throw std::logic_error("compact_form: pair outside its block");
        for (const StateLabel& l : basis.members_of(p)) {
            const auto [ck, ckbar] = basis.member_coefficients(l);
            Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
            v[ik] = ck;
            v[ikbar] = ckbar;
            cf.labels[slot] = l;
            cf.states[slot] = v;
            ++slot;
        }
    }
    return cf;
}

}  // namespace ghzlocc
