// qla.hpp
// Dense complex linear algebra over multiqubit state space.
//
// Conventions: qubit 0 is the most significant bit of an amplitude index,
// so for N qubits the bit of qubit q in index x is (x >> (N-1-q)) & 1.
// Subsystem indices list the bits of the selected qubits in increasing
// qubit order, most significant first.

#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzlocc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kNormTol = 1e-9;
inline constexpr double kEigenFloor = -1e-8;
inline constexpr int kMaxQubits = 16;

/// Thrown when a numerical precondition (e.g. positivity) is violated.
class NumericalDomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

inline std::uint64_t full_mask(int num_qubits) {
    return (std::uint64_t{1} << num_qubits) - 1;
}

/// Bit of qubit q inside an N-qubit mask or index.
inline std::uint64_t qubit_bit(int num_qubits, int q) {
    return std::uint64_t{1} << (num_qubits - 1 - q);
}

// A set of qubits stored as an index-space bitmask (qubit 0 = MSB).
class QubitSubset {
  public:
    QubitSubset() = default;
    QubitSubset(int num_qubits, std::uint64_t mask) : num_qubits_(num_qubits), mask_(mask) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw std::invalid_argument("QubitSubset: qubit count out of range");
        }
        if ((mask & ~full_mask(num_qubits)) != 0) {
            throw std::invalid_argument("QubitSubset: mask exceeds qubit range");
        }
    }

    static QubitSubset of(int num_qubits, std::span<const int> qubits) {
        std::uint64_t mask = 0;
        for (int q : qubits) {
            if (q < 0 || q >= num_qubits) {
                throw std::invalid_argument("QubitSubset: qubit index " + std::to_string(q) + " out of range");
            }
            mask |= qubit_bit(num_qubits, q);
        }
        return QubitSubset(num_qubits, mask);
    }
    static QubitSubset of(int num_qubits, std::initializer_list<int> qubits) {
        return of(num_qubits, std::span<const int>(qubits.begin(), qubits.size()));
    }
    static QubitSubset all(int num_qubits) { return QubitSubset(num_qubits, full_mask(num_qubits)); }

    int num_qubits() const { return num_qubits_; }
    std::uint64_t mask() const { return mask_; }
    int size() const { return std::popcount(mask_); }
    bool empty() const { return mask_ == 0; }
    bool is_full() const { return mask_ == full_mask(num_qubits_); }
    bool contains(int q) const { return (mask_ & qubit_bit(num_qubits_, q)) != 0; }
    QubitSubset complement() const { return QubitSubset(num_qubits_, full_mask(num_qubits_) & ~mask_); }

    /// Qubit indices in increasing order.
    std::vector<int> qubits() const {
        std::vector<int> out;
        for (int q = 0; q < num_qubits_; ++q) {
            if (contains(q)) out.push_back(q);
        }
        return out;
    }

    /// Gathers the bits of `index` selected by this subset into a compact index.
    std::uint64_t extract(std::uint64_t index) const {
        std::uint64_t out = 0;
        for (int q = 0; q < num_qubits_; ++q) {
            std::uint64_t bit = qubit_bit(num_qubits_, q);
            if (mask_ & bit) out = (out << 1) | ((index & bit) ? 1u : 0u);
        }
        return out;
    }

    /// Inverse of extract: scatters a compact index into the subset positions.
    std::uint64_t deposit(std::uint64_t local) const {
        std::uint64_t out = 0;
        int remaining = size();
        for (int q = 0; q < num_qubits_; ++q) {
            std::uint64_t bit = qubit_bit(num_qubits_, q);
            if (mask_ & bit) {
                --remaining;
                if ((local >> remaining) & 1u) out |= bit;
            }
        }
        return out;
    }

    friend bool operator==(const QubitSubset&, const QubitSubset&) = default;

  private:
    int num_qubits_ = 0;
    std::uint64_t mask_ = 0;
};

class StateVector {
  public:
    StateVector() = default;
    StateVector(int num_qubits, Vector amplitudes) : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw std::invalid_argument("StateVector: qubit count out of range");
        }
        if (amps_.size() != static_cast<Eigen::Index>(std::uint64_t{1} << num_qubits)) {
            throw std::invalid_argument("StateVector: amplitude count must be 2^num_qubits");
        }
    }

    /// Computational basis state |index>.
    static StateVector basis(int num_qubits, std::uint64_t index) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << num_qubits));
        if (index >= static_cast<std::uint64_t>(v.size())) {
            throw std::invalid_argument("StateVector::basis: index out of range");
        }
        v[static_cast<Eigen::Index>(index)] = 1.0;
        return StateVector(num_qubits, std::move(v));
    }

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return amps_.size(); }
    const Vector& amplitudes() const { return amps_; }
    Complex operator[](Eigen::Index i) const { return amps_[i]; }

    double norm() const { return amps_.norm(); }
    bool is_normalized(double tol = kNormTol) const { return std::abs(amps_.squaredNorm() - 1.0) <= tol; }
    Complex inner(const StateVector& other) const {
        if (other.num_qubits_ != num_qubits_) {
            throw std::invalid_argument("StateVector::inner: qubit count mismatch");
        }
        return amps_.dot(other.amps_);
    }
    StateVector normalized() const { return StateVector(num_qubits_, amps_ / amps_.norm()); }

  private:
    int num_qubits_ = 0;
    Vector amps_;
};

class DensityOperator {
  public:
    DensityOperator() = default;

    /// Validates Hermiticity and unit trace; positivity is checked lazily by
    /// the operations that need a spectrum.
    DensityOperator(int num_qubits, Matrix matrix) : num_qubits_(num_qubits), m_(std::move(matrix)) {
        const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << num_qubits);
        if (m_.rows() != d || m_.cols() != d) {
            throw std::invalid_argument("DensityOperator: matrix must be 2^N x 2^N");
        }
        if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kNormTol) {
            throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
        }
        if (std::abs(m_.trace() - Complex(1.0)) > kNormTol) {
            throw std::invalid_argument("DensityOperator: trace must be 1");
        }
    }

    static DensityOperator pure(const StateVector& psi) {
        const Vector& v = psi.amplitudes();
        return DensityOperator(psi.num_qubits(), v * v.adjoint());
    }

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

  private:
    int num_qubits_ = 0;
    Matrix m_;
};

/// Kronecker product; a's qubits come first.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    const Eigen::Index db = b.dim();
    Vector out(a.dim() * db);
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        out.segment(i * db, db) = a[i] * b.amplitudes();
    }
    return StateVector(a.num_qubits() + b.num_qubits(), std::move(out));
}

inline DensityOperator partial_trace(const DensityOperator& rho, const QubitSubset& keep) {
    if (keep.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("partial_trace: subset qubit count mismatch");
    }
    if (keep.empty() || keep.is_full()) {
        throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset");
    }
    const QubitSubset traced = keep.complement();
    const auto dk = static_cast<Eigen::Index>(std::uint64_t{1} << keep.size());
    const std::uint64_t dt = std::uint64_t{1} << traced.size();
    Matrix out = Matrix::Zero(dk, dk);
    const Matrix& m = rho.matrix();
    for (Eigen::Index a = 0; a < dk; ++a) {
        const std::uint64_t ia = keep.deposit(static_cast<std::uint64_t>(a));
        for (Eigen::Index b = 0; b < dk; ++b) {
            const std::uint64_t ib = keep.deposit(static_cast<std::uint64_t>(b));
            Complex acc = 0.0;
            for (std::uint64_t r = 0; r < dt; ++r) {
                const std::uint64_t ir = traced.deposit(r);
                acc += m(static_cast<Eigen::Index>(ia | ir), static_cast<Eigen::Index>(ib | ir));
            }
            out(a, b) = acc;
        }
    }
    return DensityOperator(keep.size(), std::move(out));
}

/// Transposes the tensor factor of `side`. Exact: only permutes entries.
inline Matrix partial_transpose(const Matrix& m, const QubitSubset& side) {
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << side.num_qubits());
    if (m.rows() != d || m.cols() != d) {
        throw std::invalid_argument("partial_transpose: matrix dimension does not match subset");
    }
    if (side.empty() || side.is_full()) {
        throw std::invalid_argument("partial_transpose: side must be a nonempty proper subset");
    }
    const std::uint64_t s = side.mask();
    Matrix out(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto ur = static_cast<std::uint64_t>(r);
            const auto uc = static_cast<std::uint64_t>(c);
            const std::uint64_t nr = (ur & ~s) | (uc & s);
            const std::uint64_t nc = (uc & ~s) | (ur & s);
            out(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nc)) = m(r, c);
        }
    }
    return out;
}

inline Matrix partial_transpose(const DensityOperator& rho, const QubitSubset& side) {
    return partial_transpose(rho.matrix(), side);
}

inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// -p log2 p with the 0 log 0 = 0 convention.
inline double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

/// Von Neumann entropy in bits.
inline double entropy(const DensityOperator& rho) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(rho.matrix());
    double s = 0.0;
    for (double lam : ev) {
        if (lam < kEigenFloor) {
            throw NumericalDomainError("entropy: negative eigenvalue " + std::to_string(lam));
        }
        s += entropy_term(std::max(lam, 0.0));
    }
    return s;
}

/// Applies a local operator acting on `subset` to a full state (unnormalized result).
inline Vector apply_local(const Matrix& op, const QubitSubset& subset, const Vector& amps) {
    const auto dl = static_cast<Eigen::Index>(std::uint64_t{1} << subset.size());
    if (op.rows() != dl || op.cols() != dl) {
        throw std::invalid_argument("apply_local: operator dimension does not match subset");
    }
    const QubitSubset rest = subset.complement();
    const std::uint64_t dr = std::uint64_t{1} << rest.size();
    Vector out = Vector::Zero(amps.size());
    Vector local(dl);
    for (std::uint64_t r = 0; r < dr; ++r) {
        const std::uint64_t ir = rest.deposit(r);
        for (Eigen::Index a = 0; a < dl; ++a) {
            local[a] = amps[static_cast<Eigen::Index>(ir | subset.deposit(static_cast<std::uint64_t>(a)))];
        }
        const Vector mapped = op * local;
        for (Eigen::Index a = 0; a < dl; ++a) {
            out[static_cast<Eigen::Index>(ir | subset.deposit(static_cast<std::uint64_t>(a)))] = mapped[a];
        }
    }
    return out;
}

/// Max-abs deviation of sum K^dagger K from identity.
inline double completeness_residual(std::span<const Matrix> ops) {
    if (ops.empty()) return 1.0;
    Matrix sum = Matrix::Zero(ops.front().rows(), ops.front().cols());
    for (const Matrix& k : ops) sum += k.adjoint() * k;
    return (sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

struct MeasurementBranch {
    double probability = 0.0;
    std::optional<StateVector> post_state;  // empty when the branch has zero probability
};

inline constexpr double kBranchPruneTol = 1e-14;

/// Projective (or general Kraus) measurement on a subsystem.
inline std::vector<MeasurementBranch> measure_projective(const StateVector& state, std::span<const Matrix> projectors,
                                                         const QubitSubset& on) {
    if (on.num_qubits() != state.num_qubits() || on.empty()) {
        throw std::invalid_argument("measure_projective: invalid subsystem");
    }
    if (completeness_residual(projectors) > kNormTol) {
        throw std::invalid_argument("measure_projective: measurement operators are not complete");
    }
    std::vector<MeasurementBranch> out;
    out.reserve(projectors.size());
    for (const Matrix& p : projectors) {
        Vector v = on.is_full() ? Vector(p * state.amplitudes()) : apply_local(p, on, state.amplitudes());
        const double prob = v.squaredNorm();
        MeasurementBranch br;
        br.probability = prob;
        if (prob > kBranchPruneTol) br.post_state = StateVector(state.num_qubits(), v / std::sqrt(prob));
        out.push_back(std::move(br));
    }
    return out;
}

/// Rank-one projectors onto the computational basis of an m-qubit system.
inline std::vector<Matrix> computational_projectors(int num_qubits) {
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << num_qubits);
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        Matrix p = Matrix::Zero(d, d);
        p(i, i) = 1.0;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ghzlocc
