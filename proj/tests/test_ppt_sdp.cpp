// Interior-point solver and the PPT / global discrimination programs.

#include "ghzlocc/ghzlocc.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ghzlocc;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

DensityOperator ket(std::initializer_list<Complex> amps) {
    Vector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (Complex a : amps) v[i++] = a;
    const int n = v.size() == 4 ? 2 : 3;
    return DensityOperator::pure(StateVector(n, v / v.norm()));
}

std::vector<DensityOperator> bell() {
    return {ket({r2, 0, 0, r2}), ket({r2, 0, 0, -r2}), ket({0, r2, r2, 0}), ket({0, r2, -r2, 0})};
}

const Bipartition cut01 = Bipartition::from_qubits(2, {0});

DiscriminationInstance first(std::vector<DensityOperator> s, std::size_t k) {
    s.resize(k);
    return DiscriminationInstance::uniform(std::move(s), cut01);
}

Matrix random_unitary(std::mt19937_64& rng, Eigen::Index d) {
    std::normal_distribution<double> g;
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
    return Eigen::HouseholderQR<Matrix>(m).householderQ();
}

void expect_feasible(const SdpSolution& s, const Bipartition& cut, bool ppt) {
    ASSERT_FALSE(s.measurement.empty());
    const Eigen::Index d = s.measurement.front().rows();
    Matrix total = Matrix::Zero(d, d);
    for (const Matrix& m : s.measurement) {
        total += m;
        EXPECT_GE(hermitian_eigenvalues(m).minCoeff(), -1e-7);
        if (ppt) EXPECT_GE(hermitian_eigenvalues(partial_transpose(m, cut.side_b())).minCoeff(), -1e-7);
    }
    EXPECT_LT((total - Matrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LT(s.primal_residual, 1e-7);
    EXPECT_LT(s.dual_residual, 1e-7);
}

}  // namespace

TEST(PptOracle, BellSandwich) {
    // Upper bound: Y = I/(2k) is dual feasible because PT(I/2 - rho_i) is PSD.
    // Lower bound: a ZZ readout reaches 2/k. Together they pin the value.
    for (const auto& rho : bell()) {
        const Matrix w = Matrix::Identity(4, 4) / 2.0 - rho.matrix();
        EXPECT_GE(hermitian_eigenvalues(partial_transpose(w, cut01.side_b())).minCoeff(), -1e-12);
    }
    for (std::size_t k : {3u, 4u}) {
        const auto states = bell();
        double zz = 0.0;
        for (Eigen::Index x = 0; x < 4; ++x) {
            double best = 0.0;
            for (std::size_t i = 0; i < k; ++i) best = std::max(best, states[i].matrix()(x, x).real() / static_cast<double>(k));
            zz += best;
        }
        EXPECT_NEAR(zz, 2.0 / static_cast<double>(k), 1e-15);
    }
}

TEST(PptSdp, BellStates) {
    for (std::size_t k : {2u, 3u, 4u}) {
        const auto inst = first(bell(), k);
        const SdpSolution s = ppt_success_bound(inst);
        EXPECT_TRUE(s.converged);
        EXPECT_NEAR(s.primal_value, std::min(1.0, 2.0 / static_cast<double>(k)), 1e-6) << k;
        EXPECT_LT(std::abs(s.gap()), 1e-6);
        expect_feasible(s, cut01, true);
        EXPECT_EQ(s.certifies_not_perfect(), k > 2);
    }
}

TEST(PptSdp, SingleStateAndGlobal) {
    EXPECT_NEAR(ppt_success_bound(first(bell(), 1)).primal_value, 1.0, 1e-6);
    const SdpSolution g = global_success_bound(first(bell(), 4));
    EXPECT_NEAR(g.primal_value, 1.0, 1e-9);
    expect_feasible(g, cut01, false);
    const auto same = DiscriminationInstance::uniform({bell()[0], bell()[0]}, cut01);
    EXPECT_NEAR(global_success_bound(same).primal_value, 0.5, 1e-6);
}

TEST(PptSdp, NonMaximalCrossValues) {
    // Reference values from an independent conic solver.
    const auto b = std::make_shared<const Basis>(
        build_basis(2, {PairCoefficients::from_alpha_sq(0.8), PairCoefficients::from_alpha_sq(0.7)}));
    const auto l4 = b->all_labels();
    const auto four = instance_for_labels(*b, l4, cut01);
    EXPECT_NEAR(ppt_success_bound(four).primal_value, 0.75, 1e-6);
    EXPECT_NEAR(global_success_bound(four).primal_value, 1.0, 1e-9);
    const std::vector<StateLabel> l3(l4.begin(), l4.begin() + 3);
    EXPECT_NEAR(ppt_success_bound(instance_for_labels(*b, l3, cut01)).primal_value, 13.0 / 15.0, 1e-6);
    EXPECT_NEAR(ppt_success_bound(instance_for_labels(*b, l4, cut01, {0.1, 0.2, 0.3, 0.4})).primal_value,
                0.7589124279, 1e-5);

    const auto h = std::make_shared<const Basis>(
        build_basis(2, {PairCoefficients::from_alpha_sq(0.8), PairCoefficients::product()}));
    const auto hl = h->all_labels();
    EXPECT_NEAR(ppt_success_bound(instance_for_labels(*h, hl, cut01)).primal_value, 0.9, 1e-6);
    const std::vector<StateLabel> h3(hl.begin(), hl.begin() + 3);
    EXPECT_NEAR(ppt_success_bound(instance_for_labels(*h, h3, cut01)).primal_value, 0.9074624243, 1e-6);
}

TEST(PptSdp, TwoOrthogonalStatesAlwaysOne) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        const Matrix u = random_unitary(rng, 4);
        const auto inst = DiscriminationInstance::uniform(
            {DensityOperator::pure(StateVector(2, u.col(0))), DensityOperator::pure(StateVector(2, u.col(1)))}, cut01);
        const SdpSolution s = ppt_success_bound(inst);
        EXPECT_NEAR(s.primal_value, 1.0, 1e-6);
        EXPECT_LT(std::abs(s.gap()), 1e-6);
    }
}

TEST(PptSdp, OrderingAndPriorBounds) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 8; ++t) {
        const Matrix q = random_unitary(rng, 4);
        std::vector<DensityOperator> states;
        std::vector<double> priors;
        double sum = 0.0;
        for (int i = 0; i < 3; ++i) {
            states.push_back(DensityOperator::pure(StateVector(2, q.col(i))));
            priors.push_back(u(rng) + 0.05);
            sum += priors.back();
        }
        for (double& p : priors) p /= sum;
        const DiscriminationInstance inst{states, priors, cut01};
        const SdpSolution sol = ppt_success_bound(inst);
        if (sol.reduced_accuracy) {
            EXPECT_LT(std::abs(sol.gap()), 1e-7);
            EXPECT_LT(std::max(sol.primal_residual, sol.dual_residual), 1e-7);
        }
        const double ppt = sol.primal_value;
        EXPECT_GE(ppt, *std::max_element(priors.begin(), priors.end()) - 1e-6);
        EXPECT_GE(global_success_bound(inst).primal_value, ppt - 1e-6);
        EXPECT_LE(ppt, 1.0 + 1e-6);
    }
}

TEST(PptSdp, LocalUnitaryInvariance) {
    std::mt19937_64 rng(23);
    const auto b = std::make_shared<const Basis>(
        build_basis(2, {PairCoefficients::from_alpha_sq(0.8), PairCoefficients::from_alpha_sq(0.7)}));
    const auto labels = b->all_labels();
    const std::vector<StateLabel> three(labels.begin(), labels.begin() + 3);
    const auto base = instance_for_labels(*b, three, cut01);
    const double ref = ppt_success_bound(base).primal_value;
    for (int t = 0; t < 3; ++t) {
        const Matrix ua = random_unitary(rng, 2), ub = random_unitary(rng, 2);
        Matrix u(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) u.block(2 * i, 2 * j, 2, 2) = ua(i, j) * ub;
        DiscriminationInstance rot = base;
        for (auto& s : rot.states) s = DensityOperator(2, u * s.matrix() * u.adjoint());
        EXPECT_NEAR(ppt_success_bound(rot).primal_value, ref, 1e-6);
    }
}

TEST(PptSdp, InstanceForLabelsUsesCompactFormInsideOneBlock) {
    const Basis b = maximal_basis(3);
    const std::vector<StateLabel> intro{plus_of(1), minus_of(1), plus_of(4), minus_of(4)};
    const auto a_bc = instance_for_labels(b, intro, Bipartition::from_qubits(3, {0}));
    EXPECT_EQ(a_bc.states.front().dim(), 4);
    EXPECT_NEAR(ppt_success_bound(a_bc).primal_value, 0.5, 1e-6);
    const auto b_ac = instance_for_labels(b, intro, Bipartition::from_qubits(3, {1}));
    EXPECT_EQ(b_ac.states.front().dim(), 8);
    EXPECT_NEAR(ppt_success_bound(b_ac).primal_value, 1.0, 1e-6);
}

TEST(PptSdp, InstanceValidationAndNonConvergence) {
    auto inst = first(bell(), 2);
    inst.priors = {0.7, 0.7};
    EXPECT_THROW(ppt_success_bound(inst), std::invalid_argument);
    inst.priors = {1.5, -0.5};
    EXPECT_THROW(ppt_success_bound(inst), std::invalid_argument);
    EXPECT_THROW(ppt_success_bound(instance_for_labels(maximal_basis(7), {plus_of(1), plus_of(2)},
                                                     Bipartition::from_qubits(7, {0, 1, 2}))),
                 std::invalid_argument);
    sdp::Options tight;
    tight.max_iterations = 2;
    try {
        ppt_success_bound(first(bell(), 4), tight);
        FAIL() << "expected SdpNotConverged";
    } catch (const SdpNotConverged& e) {
        EXPECT_FALSE(e.partial().converged);
        EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
    }
}
