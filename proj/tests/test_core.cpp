// Linear algebra, basis construction and block decomposition.

#include "ghzlocc/ghzlocc.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ghzlocc;

namespace {

Vector random_state(std::mt19937_64& rng, Eigen::Index d) {
    std::normal_distribution<double> g;
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = Complex(g(rng), g(rng));
    return v / v.norm();
}

// Kronecker product written out index by index.
Vector kron_oracle(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

// String-level partner search: the pair whose strings agree with k on side A
// and are complementary on side B (or the global complement of that).
std::uint64_t partner_by_search(const Basis& basis, std::uint64_t k, const Bipartition& bp) {
    const int n = basis.num_qubits();
    const std::string ks = bitstring(k, n);
    for (const auto& p : basis.pairs()) {
        for (std::uint64_t cand : {p.k, p.k ^ full_mask(n)}) {
            const std::string cs = bitstring(cand, n);
            bool ok = true;
            for (int q = 0; q < n; ++q) {
                const bool same = cs[static_cast<std::size_t>(q)] == ks[static_cast<std::size_t>(q)];
                if (bp.side_a().contains(q) != same) ok = false;
            }
            if (ok) return p.k;
        }
    }
    throw std::logic_error("no partner");
}

std::vector<PairCoefficients> random_coeffs(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.5, 1.0);
    std::vector<PairCoefficients> c;
    for (int i = 0; i < (1 << (n - 1)); ++i) c.push_back(PairCoefficients::from_alpha_sq(u(rng)));
    return c;
}

}  // namespace

// ---- qla ----

TEST(Qla, TensorMatchesKronOracle) {
    std::mt19937_64 rng(1);
    for (int na = 1; na <= 3; ++na)
        for (int nb = 1; nb <= 3; ++nb) {
            const Vector a = random_state(rng, 1 << na), b = random_state(rng, 1 << nb);
            const StateVector t = tensor(StateVector(na, a), StateVector(nb, b));
            EXPECT_LT((t.amplitudes() - kron_oracle(a, b)).norm(), 1e-14);
        }
}

TEST(Qla, PartialTraceOfProductAndGhz) {
    std::mt19937_64 rng(2);
    const Vector a = random_state(rng, 4), b = random_state(rng, 2);
    const auto rho = DensityOperator::pure(StateVector(3, kron_oracle(a, b)));
    const Matrix ra = partial_trace(rho, QubitSubset::of(3, {0, 1})).matrix();
    EXPECT_LT((ra - a * a.adjoint()).norm(), 1e-14);
    const Matrix rb = partial_trace(rho, QubitSubset::of(3, {2})).matrix();
    EXPECT_LT((rb - b * b.adjoint()).norm(), 1e-14);

    Vector g = Vector::Zero(8);
    g[0] = std::sqrt(0.9);
    g[7] = std::sqrt(0.1);
    const Matrix r0 = partial_trace(DensityOperator::pure(StateVector(3, g)), QubitSubset::of(3, {0})).matrix();
    EXPECT_NEAR(r0(0, 0).real(), 0.9, 1e-15);
    EXPECT_NEAR(r0(1, 1).real(), 0.1, 1e-15);
    EXPECT_NEAR(std::abs(r0(0, 1)), 0.0, 1e-15);
}

TEST(Qla, PartialTraceRejectsTrivialKeep) {
    const auto rho = DensityOperator::pure(StateVector::basis(2, 0));
    EXPECT_THROW(partial_trace(rho, QubitSubset(2, 0)), std::invalid_argument);
    EXPECT_THROW(partial_trace(rho, QubitSubset::all(2)), std::invalid_argument);
}

TEST(Qla, PartialTransposeOfBellState) {
    Vector v = Vector::Zero(4);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    const auto rho = DensityOperator::pure(StateVector(2, v));
    const Matrix pt = partial_transpose(rho, QubitSubset::of(2, {1}));
    Eigen::VectorXd ev = hermitian_eigenvalues(pt);
    std::sort(ev.data(), ev.data() + ev.size());
    EXPECT_NEAR(ev[0], -0.5, 1e-12);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev[i], 0.5, 1e-12);
    EXPECT_THROW(partial_transpose(rho, QubitSubset(2, 0)), std::invalid_argument);
}

TEST(Qla, PartialTransposeIsExactInvolution) {
    std::mt19937_64 rng(3);
    for (int n = 2; n <= 5; ++n) {
        const Vector v = random_state(rng, 1 << n);
        const Matrix m = v * v.adjoint();
        for (std::uint64_t mask = 1; mask < full_mask(n); ++mask) {
            const QubitSubset s(n, mask);
            EXPECT_EQ(partial_transpose(partial_transpose(m, s), s), m);
        }
    }
}

TEST(Qla, EntropyOfNinetyTen) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.9;
    m(1, 1) = 0.1;
    EXPECT_NEAR(entropy(DensityOperator(1, m)), 0.4689955935892812, 1e-15);
    EXPECT_NEAR(entropy(DensityOperator::pure(StateVector::basis(2, 1))), 0.0, 1e-12);
    EXPECT_NEAR(entropy(DensityOperator(2, Matrix::Identity(4, 4) / 4.0)), 2.0, 1e-12);
}

TEST(Qla, EntropyRejectsNegativeSpectrum) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.1;
    m(1, 1) = -0.1;
    EXPECT_THROW(entropy(DensityOperator(1, m)), NumericalDomainError);
}

TEST(Qla, DensityOperatorValidation) {
    Matrix m = Matrix::Identity(2, 2);
    EXPECT_THROW(DensityOperator(1, m), std::invalid_argument);
    m(0, 1) = 0.3;
    m /= 2.0;
    EXPECT_THROW(DensityOperator(1, m), std::invalid_argument);
    EXPECT_THROW(StateVector(2, Vector::Zero(3)), std::invalid_argument);
}

TEST(Qla, SubsetExtractDepositRoundTrip) {
    const QubitSubset s = QubitSubset::of(5, {0, 2, 3});
    EXPECT_EQ(s.size(), 3);
    EXPECT_EQ(s.complement().qubits(), (std::vector<int>{1, 4}));
    for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(s.extract(s.deposit(x)), x);
}

TEST(Qla, ApplyLocalMatchesKron) {
    std::mt19937_64 rng(4);
    const Vector a = random_state(rng, 2), b = random_state(rng, 4);
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    const Vector out = apply_local(x, QubitSubset::of(3, {0}), kron_oracle(a, b));
    EXPECT_LT((out - kron_oracle(x * a, b)).norm(), 1e-14);
}

TEST(Qla, ProjectiveMeasurementProbabilities) {
    Vector v = Vector::Zero(8);
    v[0] = 0.8;
    v[7] = 0.6;
    const auto proj = computational_projectors(1);
    const auto br = measure_projective(StateVector(3, v), proj, QubitSubset::of(3, {1}));
    ASSERT_EQ(br.size(), 2u);
    EXPECT_NEAR(br[0].probability, 0.64, 1e-14);
    EXPECT_NEAR(br[1].probability, 0.36, 1e-14);
    ASSERT_TRUE(br[0].post_state);
    EXPECT_NEAR(std::abs((*br[0].post_state)[0]), 1.0, 1e-14);
    EXPECT_LT(completeness_residual(proj), 1e-15);
}

TEST(Qla, SchmidtSymmetryOnRandomStates) {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 5; ++n) {
        for (int t = 0; t < 20; ++t) {
            const auto rho = DensityOperator::pure(StateVector(n, random_state(rng, 1 << n)));
            const QubitSubset a(n, std::uniform_int_distribution<std::uint64_t>(1, full_mask(n) - 1)(rng));
            EXPECT_NEAR(entropy(partial_trace(rho, a)), entropy(partial_trace(rho, a.complement())), 1e-8);
        }
    }
}

// ---- ghz_basis ----

TEST(GhzBasis, BellBasis) {
    const Basis b = maximal_basis(2);
    ASSERT_EQ(b.num_pairs(), 2u);
    EXPECT_EQ(b.pair(1).k, 0u);
    EXPECT_EQ(b.pair(2).k, 1u);
    const Vector p = b.state_vector(plus_of(1)).amplitudes();
    EXPECT_NEAR(p[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(p[3].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(GhzBasis, ThreeQubitMaximalContainsIntroStates) {
    const Basis b = maximal_basis(3);
    const double r = 1 / std::sqrt(2.0);
    const StateVector p1 = b.state_vector(plus_of(1)), m1 = b.state_vector(minus_of(1));
    EXPECT_NEAR(p1[0].real(), r, 1e-15);
    EXPECT_NEAR(p1[7].real(), r, 1e-15);
    EXPECT_NEAR(m1[0].real(), r, 1e-15);
    EXPECT_NEAR(m1[7].real(), -r, 1e-15);
    EXPECT_EQ(b.pair_of_string(parse_bitstring("100")).k, parse_bitstring("011"));
    const StateVector p4 = b.state_vector(plus_of(4));
    EXPECT_NEAR(p4[3].real(), r, 1e-15);
    EXPECT_NEAR(p4[4].real(), r, 1e-15);
}

TEST(GhzBasis, DegeneratePairAndExplicitCoefficients) {
    const Basis b = build_basis(2, {PairCoefficients::product(), PairCoefficients::maximal()});
    EXPECT_TRUE(b.pair(1).degenerate());
    EXPECT_EQ(b.kind(), BasisKind::hybrid);
    EXPECT_NEAR(std::abs(b.state_vector({1, Member::k})[0]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(b.state_vector({1, Member::kbar})[3]), 1.0, 1e-15);
    EXPECT_THROW(b.check_label(plus_of(1)), std::invalid_argument);
    EXPECT_THROW(b.check_label({2, Member::k}), std::invalid_argument);

    const Basis c = build_basis(2, {PairCoefficients::from_alpha_beta(0.8, 0.6), PairCoefficients::maximal()});
    const StateVector p = c.state_vector(plus_of(1)), m = c.state_vector(minus_of(1));
    EXPECT_NEAR(p[0].real(), 0.8, 1e-15);
    EXPECT_NEAR(p[3].real(), 0.6, 1e-15);
    EXPECT_NEAR(m[0].real(), 0.6, 1e-15);
    EXPECT_NEAR(m[3].real(), -0.8, 1e-15);
    EXPECT_NEAR(std::abs(p.inner(m)), 0.0, 1e-15);
}

TEST(GhzBasis, CoefficientValidation) {
    EXPECT_THROW(PairCoefficients::from_alpha_sq(0.4), std::invalid_argument);
    EXPECT_THROW(PairCoefficients::from_alpha_sq(1.1), std::invalid_argument);
    EXPECT_THROW(PairCoefficients::from_alpha_beta(0.6, 0.8), std::invalid_argument);
    EXPECT_THROW(PairCoefficients::from_alpha_beta(0.8, 0.5), std::invalid_argument);
    EXPECT_THROW(maximal_basis(1), std::invalid_argument);
    EXPECT_THROW(build_basis(3, {PairCoefficients::maximal()}), std::invalid_argument);
}

TEST(GhzBasis, CanonicalKsPartitionStrings) {
    for (int n = 2; n <= 6; ++n) {
        const Basis b = maximal_basis(n);
        std::set<std::uint64_t> seen;
        for (const auto& p : b.pairs()) {
            EXPECT_EQ(p.k & qubit_bit(n, 0), 0u);
            seen.insert(p.k);
            seen.insert(p.k ^ full_mask(n));
        }
        EXPECT_EQ(seen.size(), std::size_t{1} << n);
    }
}

TEST(GhzBasis, MembersOrthonormalForRandomCoefficients) {
    std::mt19937_64 rng(6);
    for (int n = 2; n <= 5; ++n) {
        for (int t = 0; t < 5; ++t) {
            auto c = random_coeffs(rng, n);
            c[0] = PairCoefficients::product();
            const Basis b = build_basis(n, c);
            const auto labels = b.all_labels();
            ASSERT_EQ(labels.size(), std::size_t{1} << n);
            Matrix u(b.dimension(), b.dimension());
            for (std::size_t i = 0; i < labels.size(); ++i)
                u.col(static_cast<Eigen::Index>(i)) = b.state_vector(labels[i]).amplitudes();
            EXPECT_LT((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-9);
        }
    }
}

TEST(GhzBasis, HybridCounts) {
    for (int n = 2; n <= 5; ++n)
        for (int k = 0; k < (1 << (n - 1)); ++k) {
            const Basis b = hybrid_basis(n, k);
            EXPECT_EQ(b.entangled_pairs(), k);
            std::size_t products = 0;
            for (const auto& l : b.all_labels()) products += is_sign(l.member) ? 0 : 1;
            EXPECT_EQ(products, (std::size_t{1} << n) - 2 * static_cast<std::size_t>(k));
        }
}

TEST(GhzBasis, PairEntanglementValues) {
    EXPECT_NEAR(pair_entanglement(maximal_basis(3).pair(2)), 1.0, 1e-15);
    EXPECT_EQ(pair_entanglement(computational_basis(3).pair(2)), 0.0);
    const Basis b = build_basis(2, {PairCoefficients::from_alpha_sq(0.9), PairCoefficients::maximal()});
    EXPECT_NEAR(pair_entanglement(b.pair(1)), 0.4689955935892812, 1e-15);
}

TEST(GhzBasis, PairEntanglementMatchesReducedEntropyOnEveryCut) {
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 5; ++n) {
        const Basis b = build_basis(n, random_coeffs(rng, n));
        for (const auto& bp : enumerate_bipartitions(n))
            for (const auto& l : b.all_labels()) {
                const auto rho = DensityOperator::pure(b.state_vector(l));
                EXPECT_NEAR(entropy(partial_trace(rho, bp.side_a())), member_entanglement(b, l), 1e-9);
            }
    }
}

TEST(GhzBasis, AverageEntanglement) {
    auto maxb = std::make_shared<const Basis>(maximal_basis(3));
    EXPECT_NEAR(average_entanglement(full_set(maxb)), 1.0, 1e-15);
    auto comp = std::make_shared<const Basis>(computational_basis(3));
    EXPECT_EQ(average_entanglement(full_set(comp)), 0.0);
    auto hyb = std::make_shared<const Basis>(hybrid_basis(2, 1));
    EXPECT_NEAR(average_entanglement(StateSet(hyb, {plus_of(1), {2, Member::k}})), 0.5, 1e-15);
    EXPECT_THROW(average_entanglement(StateSet(maxb, {})), std::invalid_argument);
}

TEST(GhzBasis, StateSetValidation) {
    auto b = std::make_shared<const Basis>(maximal_basis(2));
    EXPECT_THROW(StateSet(b, {plus_of(1), plus_of(1)}), std::invalid_argument);
    EXPECT_THROW(StateSet(b, {plus_of(3)}), std::invalid_argument);
    const StateSet s(b, {minus_of(2), plus_of(1)});
    EXPECT_EQ(s.labels().front(), plus_of(1));
    EXPECT_EQ(to_string(minus_of(2)), "pair:2:-");
    EXPECT_EQ(to_string(StateLabel{3, Member::kbar}), "prod:3:kbar");
}

// ---- bipartition_blocks ----

TEST(Blocks, BipartitionEnumeration) {
    for (int n = 2; n <= 7; ++n) EXPECT_EQ(enumerate_bipartitions(n).size(), (std::size_t{1} << (n - 1)) - 1);
    const auto b3 = enumerate_bipartitions(3);
    std::vector<std::string> names;
    for (const auto& bp : b3) names.push_back(bp.str());
    EXPECT_EQ(names, (std::vector<std::string>{"0|12", "1|02", "2|01"}));
    EXPECT_THROW(enumerate_bipartitions(1), std::invalid_argument);
    EXPECT_EQ(Bipartition::from_qubits(4, {1, 2}).str(), "03|12");
}

TEST(Blocks, ComplementInvariance) {
    for (int n = 2; n <= 6; ++n) {
        const Basis b = maximal_basis(n);
        for (std::uint64_t mask = 1; mask < full_mask(n); ++mask) {
            const QubitSubset s(n, mask);
            const auto x = blocks_for(b, Bipartition::from_side(s));
            const auto y = blocks_for(b, Bipartition::from_side(s.complement()));
            ASSERT_EQ(x.size(), y.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                EXPECT_EQ(x[i].pair_i, y[i].pair_i);
                EXPECT_EQ(x[i].pair_j, y[i].pair_j);
            }
        }
    }
}

TEST(Blocks, PartnerMatchesStringSearch) {
    for (int n = 2; n <= 6; ++n) {
        const Basis b = maximal_basis(n);
        for (const auto& bp : enumerate_bipartitions(n))
            for (const auto& p : b.pairs()) EXPECT_EQ(partner_k(p.k, bp), partner_by_search(b, p.k, bp));
    }
}

TEST(Blocks, WorkedPartners) {
    const Basis b2 = maximal_basis(2);
    const auto blk = blocks_for(b2, enumerate_bipartitions(2)[0]);
    ASSERT_EQ(blk.size(), 1u);
    EXPECT_EQ(blk[0].pair_i, 1);
    EXPECT_EQ(blk[0].pair_j, 2);

    EXPECT_EQ(partner_k(0, Bipartition::from_qubits(3, {0})), parse_bitstring("011"));
    EXPECT_EQ(partner_k(0, Bipartition::from_qubits(3, {1})), parse_bitstring("010"));
}

TEST(Blocks, BlocksPartitionPairsAndPartnerIsInvolution) {
    for (int n = 2; n <= 6; ++n) {
        const Basis b = hybrid_basis(n, (1 << (n - 1)) / 2);
        for (const auto& bp : enumerate_bipartitions(n)) {
            const auto blocks = blocks_for(b, bp);
            EXPECT_EQ(blocks.size(), std::size_t{1} << (n - 2));
            std::set<int> seen;
            for (const auto& blk : blocks) {
                EXPECT_NE(blk.pair_i, blk.pair_j);
                seen.insert(blk.pair_i);
                seen.insert(blk.pair_j);
            }
            EXPECT_EQ(seen.size(), b.num_pairs());
            for (const auto& p : b.pairs()) {
                const int q = partner_pair(b, bp, p.index);
                EXPECT_EQ(partner_pair(b, bp, q), p.index);
                const Block x = block_of(b, bp, p.index), y = block_of(b, bp, q);
                EXPECT_EQ(x.pair_i, y.pair_i);
                EXPECT_EQ(x.pair_j, y.pair_j);
            }
        }
    }
}

TEST(Blocks, SameSizeCutsHaveDifferentPartnerMaps) {
    for (int n = 3; n <= 6; ++n) {
        const Basis b = maximal_basis(n);
        const auto cuts = enumerate_bipartitions(n);
        for (std::size_t x = 0; x < cuts.size(); ++x)
            for (std::size_t y = x + 1; y < cuts.size(); ++y) {
                if (cuts[x].m() != cuts[y].m()) continue;
                bool differ = false;
                for (const auto& p : b.pairs())
                    differ |= partner_pair(b, cuts[x], p.index) != partner_pair(b, cuts[y], p.index);
                EXPECT_TRUE(differ) << cuts[x].str() << " vs " << cuts[y].str();
            }
    }
}

TEST(Blocks, KindClassification) {
    const Basis b = hybrid_basis(3, 2);
    const Bipartition bp = Bipartition::from_qubits(3, {0});
    EXPECT_EQ(classify_hybrid(b, 1, 2), BlockKind::two_entangled_pairs);
    EXPECT_EQ(classify_hybrid(b, 1, 3), BlockKind::one_pair_two_products);
    EXPECT_EQ(classify_hybrid(b, 3, 4), BlockKind::four_products);
    for (const auto& blk : blocks_for(b, bp)) EXPECT_EQ(blk.kind, classify_hybrid(b, blk));
}

TEST(Blocks, CompactFormPreservesGram) {
    std::mt19937_64 rng(8);
    for (int n = 2; n <= 5; ++n) {
        auto c = random_coeffs(rng, n);
        c.back() = PairCoefficients::product();
        const Basis b = build_basis(n, c);
        for (const auto& bp : enumerate_bipartitions(n))
            for (const auto& blk : blocks_for(b, bp)) {
                const CompactForm cf = compact_form(b, blk);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        const Complex full = b.state_vector(cf.labels[static_cast<std::size_t>(i)])
                                                 .inner(b.state_vector(cf.labels[static_cast<std::size_t>(j)]));
                        const Complex small = cf.states[static_cast<std::size_t>(i)].dot(cf.states[static_cast<std::size_t>(j)]);
                        EXPECT_LT(std::abs(full - small), 1e-12);
                    }
            }
    }
}

TEST(Blocks, CompactFormShape) {
    // alpha^2 = 0.8 and 0.9 on pairs 000 and 011, cut 0|12.
    const Basis b = build_basis(3, {PairCoefficients::from_alpha_sq(0.8), PairCoefficients::maximal(),
                                    PairCoefficients::maximal(), PairCoefficients::from_alpha_sq(0.9)});
    const Block blk = block_of(b, Bipartition::from_qubits(3, {0}), 1);
    EXPECT_EQ(blk.pair_j, 4);
    const CompactForm cf = compact_form(b, blk);
    EXPECT_NEAR(cf.states[0][0].real(), std::sqrt(0.8), 1e-15);  // |00>
    EXPECT_NEAR(cf.states[0][3].real(), std::sqrt(0.2), 1e-15);  // |11>
    EXPECT_NEAR(cf.states[2][1].real(), std::sqrt(0.9), 1e-15);  // |01>
    EXPECT_NEAR(cf.states[2][2].real(), std::sqrt(0.1), 1e-15);  // |10>

    const Basis h = hybrid_basis(2, 1);
    const CompactForm ch = compact_form(h, blocks_for(h, enumerate_bipartitions(2)[0])[0]);
    EXPECT_EQ(ch.labels[2], (StateLabel{2, Member::k}));
    EXPECT_NEAR(std::abs(ch.states[2][1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(ch.states[3][2]), 1.0, 1e-15);
}
