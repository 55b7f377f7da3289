// ghz_basis.hpp
// The canonical N-qubit GHZ basis: 2^(N-1) conjugate pairs
//   |psi+> = alpha |k> + beta |~k>,   |psi-> = beta |k> - alpha |~k>
// with alpha >= beta >= 0. A pair with beta = 0 degenerates into the two
// product states |k>, |~k>; bases containing such pairs are "hybrid".

#pragma once

#include "ghzlocc/qla.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzlocc {

inline constexpr double kCoeffTol = 1e-12;

/// Coefficients for one pair, stored through alpha^2 so that values such as
/// alpha^2 = 0.9 are pinned without square-root round-off.
struct PairCoefficients {
    double alpha_sq = 0.5;

    static PairCoefficients from_alpha_sq(double alpha_sq) {
        if (!(alpha_sq >= 0.5 - kCoeffTol && alpha_sq <= 1.0 + kCoeffTol)) {
            throw std::invalid_argument("pair coefficients: alpha^2 must lie in [1/2, 1]");
        }
        return {std::clamp(alpha_sq, 0.5, 1.0)};
    }
    static PairCoefficients from_alpha_beta(double alpha, double beta) {
        if (alpha < beta || beta < 0.0) {
            throw std::invalid_argument("pair coefficients: require alpha >= beta >= 0");
        }
        if (std::abs(alpha * alpha + beta * beta - 1.0) > kCoeffTol) {
            throw std::invalid_argument("pair coefficients: alpha^2 + beta^2 must equal 1");
        }
        return {alpha * alpha};
    }
    static PairCoefficients maximal() { return {0.5}; }
    static PairCoefficients product() { return {1.0}; }
};

struct ConjugatePair {
    int index = 0;          // 1-based, ordered by k
    std::uint64_t k = 0;    // canonical representative, leading bit 0
    double alpha_sq = 0.5;

    double beta_sq() const { return 1.0 - alpha_sq; }
    double alpha() const { return std::sqrt(alpha_sq); }
    double beta() const { return std::sqrt(beta_sq()); }
    bool degenerate() const { return beta_sq() <= 0.0; }
};

enum class Member : std::uint8_t { plus, minus, k, kbar };

inline bool is_sign(Member m) { return m == Member::plus || m == Member::minus; }

struct StateLabel {
    int pair_index = 1;
    Member member = Member::plus;

    friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
};

inline StateLabel plus_of(int pair) { return {pair, Member::plus}; }
inline StateLabel minus_of(int pair) { return {pair, Member::minus}; }

inline std::string to_string(const StateLabel& label);

enum class BasisKind : std::uint8_t { all_entangled, hybrid };

/// Renders an N-bit string, qubit 0 first.
inline std::string bitstring(std::uint64_t bits, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q) {
        if (bits & qubit_bit(num_qubits, q)) s[static_cast<std::size_t>(q)] = '1';
    }
    return s;
}

inline std::uint64_t parse_bitstring(const std::string& s) {
    std::uint64_t out = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bitstring: '" + s + "' is not a 0/1 string");
        out = (out << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return out;
}

/// Of {k, ~k}, the one whose qubit-0 bit is 0.
inline std::uint64_t canonical_k(std::uint64_t bits, int num_qubits) {
    return (bits & qubit_bit(num_qubits, 0)) ? (bits ^ full_mask(num_qubits)) : bits;
}

class Basis {
  public:
    Basis() = default;

    int num_qubits() const { return n_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_; }
    std::size_t num_pairs() const { return pairs_.size(); }
    const std::vector<ConjugatePair>& pairs() const { return pairs_; }
    const ConjugatePair& pair(int index) const {
        if (index < 1 || index > static_cast<int>(pairs_.size())) {
            throw std::invalid_argument("basis: pair index " + std::to_string(index) + " out of range");
        }
        return pairs_[static_cast<std::size_t>(index - 1)];
    }
    /// Pair whose support {k, ~k} contains the given N-bit string.
    const ConjugatePair& pair_of_string(std::uint64_t bits) const {
        return pairs_[static_cast<std::size_t>(canonical_k(bits, n_))];
    }

    /// Number of entangled (beta > 0) pairs.
    int entangled_pairs() const {
        return static_cast<int>(std::count_if(pairs_.begin(), pairs_.end(), [](const auto& p) { return !p.degenerate(); }));
    }
    BasisKind kind() const {
        return entangled_pairs() == static_cast<int>(pairs_.size()) ? BasisKind::all_entangled : BasisKind::hybrid;
    }

    bool valid_label(const StateLabel& label) const {
        if (label.pair_index < 1 || label.pair_index > static_cast<int>(pairs_.size())) return false;
        return is_sign(label.member) != pair(label.pair_index).degenerate();
    }
    void check_label(const StateLabel& label) const {
        if (label.pair_index < 1 || label.pair_index > static_cast<int>(pairs_.size())) {
            throw std::invalid_argument("label " + to_string(label) + ": pair index out of range");
        }
        if (pair(label.pair_index).degenerate() && is_sign(label.member)) {
            throw std::invalid_argument("label " + to_string(label) + ": sign addressing on a product pair");
        }
        if (!pair(label.pair_index).degenerate() && !is_sign(label.member)) {
            throw std::invalid_argument("label " + to_string(label) + ": member addressing on an entangled pair");
        }
    }

    /// The two member labels of a pair.
    std::vector<StateLabel> members_of(int pair_index) const {
        if (pair(pair_index).degenerate()) return {{pair_index, Member::k}, {pair_index, Member::kbar}};
        return {plus_of(pair_index), minus_of(pair_index)};
    }
    std::vector<StateLabel> all_labels() const {
        std::vector<StateLabel> out;
        for (const auto& p : pairs_) {
            for (const auto& l : members_of(p.index)) out.push_back(l);
        }
        return out;
    }

    /// Amplitudes on |k> and |~k> for a member.
    std::pair<double, double> member_coefficients(const StateLabel& label) const {
        check_label(label);
        const ConjugatePair& p = pair(label.pair_index);
        switch (label.member) {
            case Member::plus: return {p.alpha(), p.beta()};
            case Member::minus: return {p.beta(), -p.alpha()};
            case Member::k: return {1.0, 0.0};
            case Member::kbar: return {0.0, 1.0};
        }
        return {0.0, 0.0};
    }

    StateVector state_vector(const StateLabel& label) const {
        const auto [ck, ckbar] = member_coefficients(label);
        const ConjugatePair& p = pair(label.pair_index);
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension()));
        v[static_cast<Eigen::Index>(p.k)] = ck;
        v[static_cast<Eigen::Index>(p.k ^ full_mask(n_))] = ckbar;
        return StateVector(n_, std::move(v));
    }

    friend Basis build_basis(int num_qubits, const std::vector<PairCoefficients>& coefficients);

  private:
    int n_ = 0;
    std::vector<ConjugatePair> pairs_;
};

inline std::string to_string(const StateLabel& label) {
    const char* m = "+";
    switch (label.member) {
        case Member::plus: return "pair:" + std::to_string(label.pair_index) + ":+";
        case Member::minus: return "pair:" + std::to_string(label.pair_index) + ":-";
        case Member::k: m = "k"; break;
        case Member::kbar: m = "kbar"; break;
    }
    return "prod:" + std::to_string(label.pair_index) + ":" + m;
}

/// Coefficients are given in lexicographic order of the canonical k.
inline Basis build_basis(int num_qubits, const std::vector<PairCoefficients>& coefficients) {
    if (num_qubits < 2 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("build_basis: need 2 <= N <= " + std::to_string(kMaxQubits));
    }
    const std::size_t npairs = std::size_t{1} << (num_qubits - 1);
    if (coefficients.size() != npairs) {
        throw std::invalid_argument("build_basis: expected " + std::to_string(npairs) + " coefficient pairs, got " +
                                    std::to_string(coefficients.size()));
    }
    Basis b;
    b.n_ = num_qubits;
    b.pairs_.reserve(npairs);
    for (std::size_t i = 0; i < npairs; ++i) {
        const double a2 = coefficients[i].alpha_sq;
        if (!(a2 >= 0.5 && a2 <= 1.0)) {
            throw std::invalid_argument("build_basis: alpha^2 of pair " + std::to_string(i + 1) + " outside [1/2, 1]");
        }
        b.pairs_.push_back(ConjugatePair{static_cast<int>(i) + 1, static_cast<std::uint64_t>(i), a2});
    }
    return b;
}

inline Basis maximal_basis(int num_qubits) {
    return build_basis(num_qubits, std::vector<PairCoefficients>(std::size_t{1} << (num_qubits - 1), PairCoefficients::maximal()));
}

inline Basis computational_basis(int num_qubits) {
    return build_basis(num_qubits, std::vector<PairCoefficients>(std::size_t{1} << (num_qubits - 1), PairCoefficients::product()));
}

/// Hybrid basis whose first K pairs are maximally entangled and the rest product.
inline Basis hybrid_basis(int num_qubits, int entangled) {
    const int npairs = 1 << (num_qubits - 1);
    if (entangled < 0 || entangled > npairs) {
        throw std::invalid_argument("hybrid_basis: K must lie in [0, 2^(N-1)]");
    }
    std::vector<PairCoefficients> c(static_cast<std::size_t>(npairs), PairCoefficients::product());
    for (int i = 0; i < entangled; ++i) c[static_cast<std::size_t>(i)] = PairCoefficients::maximal();
    return build_basis(num_qubits, c);
}

/// Entanglement entropy of either member of a pair: binary entropy of alpha^2.
inline double pair_entanglement(const ConjugatePair& pair) {
    return entropy_term(pair.alpha_sq) + entropy_term(pair.beta_sq());
}

inline double member_entanglement(const Basis& basis, const StateLabel& label) {
    basis.check_label(label);
    return is_sign(label.member) ? pair_entanglement(basis.pair(label.pair_index)) : 0.0;
}

// A subset of basis members. Labels are kept sorted and distinct.
class StateSet {
  public:
    StateSet(std::shared_ptr<const Basis> basis, std::vector<StateLabel> labels) : basis_(std::move(basis)) {
        if (!basis_) throw std::invalid_argument("StateSet: null basis");
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
            throw std::invalid_argument("StateSet: duplicate labels");
        }
        for (const auto& l : labels) basis_->check_label(l);
        labels_ = std::move(labels);
    }

    const Basis& basis() const { return *basis_; }
    const std::shared_ptr<const Basis>& basis_ptr() const { return basis_; }
    const std::vector<StateLabel>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    bool contains(const StateLabel& l) const { return std::binary_search(labels_.begin(), labels_.end(), l); }

    /// Labels of this set belonging to the given pair.
    std::vector<StateLabel> members_in_pair(int pair_index) const {
        std::vector<StateLabel> out;
        for (const auto& l : labels_) {
            if (l.pair_index == pair_index) out.push_back(l);
        }
        return out;
    }

  private:
    std::shared_ptr<const Basis> basis_;
    std::vector<StateLabel> labels_;
};

inline StateSet full_set(std::shared_ptr<const Basis> basis) {
    auto labels = basis->all_labels();
    return StateSet(std::move(basis), std::move(labels));
}

inline double average_entanglement(const StateSet& set) {
    if (set.empty()) throw std::invalid_argument("average_entanglement: empty set");
    double sum = 0.0;
    for (const auto& l : set.labels()) sum += member_entanglement(set.basis(), l);
    return sum / static_cast<double>(set.size());
}

}  // namespace ghzlocc
