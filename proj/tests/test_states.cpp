#include "oracles.hpp"

#include "polyent/entropy.hpp"
#include "polyent/states.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace polyent;

TEST(MultipartiteState, ValidatesInvariants) {
  CVector v = CVector::Zero(4);
  v(0) = 1.0;
  EXPECT_NO_THROW(MultipartiteState::pure(v, DimList{2, 2}));
  EXPECT_THROW(MultipartiteState::pure(2.0 * v, DimList{2, 2}), DomainError);
  EXPECT_THROW(MultipartiteState::pure(v, DimList{2, 3}), DimensionError);
  CMatrix rho = CMatrix::Identity(4, 4) / 4.0;
  EXPECT_NO_THROW(MultipartiteState::mixed(rho, DimList{2, 2}));
  EXPECT_THROW(MultipartiteState::mixed(2.0 * rho, DimList{2, 2}), DomainError);
  CMatrix neg = rho;
  neg(0, 0) = -0.25;
  neg(1, 1) = 0.75;
  EXPECT_THROW(MultipartiteState::mixed(neg, DimList{2, 2}), DomainError);
  CMatrix nh = rho;
  nh(0, 1) = 0.1;
  EXPECT_THROW(MultipartiteState::mixed(nh, DimList{2, 2}), DomainError);
  EXPECT_THROW(MultipartiteState::pure(v, DimList{2, 2}, {"A"}), DimensionError);
}

TEST(MultipartiteState, LabelsAndReduced) {
  const MultipartiteState s = ghz(3);
  EXPECT_EQ(s.labels(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(s.index_of("C"), 2);
  EXPECT_EQ(s.index_of("Z"), -1);
  EXPECT_THROW(MultipartiteState::mixed(s.density(), s.dims()).vector(), DomainError);
  EXPECT_NEAR(entropy(s.reduced({0})), 1.0, 1e-12);
  EXPECT_NEAR(entropy(s.reduced({0, 1})), 1.0, 1e-12);
}

TEST(Regroup, MergesAndTraces) {
  const MultipartiteState w = w_state(3);
  const MultipartiteState g = regroup(w, {{0}, {1, 2}});
  EXPECT_TRUE(g.is_pure());
  EXPECT_EQ(g.dims(), (DimList{2, 4}));
  EXPECT_EQ(g.labels(), (std::vector<std::string>{"A", "BC"}));
  const MultipartiteState ab = regroup(w, {{0}, {1}});
  EXPECT_FALSE(ab.is_pure());
  EXPECT_LT(max_abs_diff(ab.density(), w.reduced({0, 1})), 1e-15);
  const MultipartiteState ca = regroup(w, {{2}, {0}});
  EXPECT_LT(max_abs_diff(ca.density(), oracle::partial_trace(w.density(), {2, 2, 2}, {2, 0})), 1e-15);
}

TEST(NamedStates, EntropiesAndConcurrences) {
  const MultipartiteState w = w_state(3);
  // tr rho_A^2 = 5/9 for W.
  const CMatrix ra = w.reduced({0});
  EXPECT_NEAR((ra * ra).trace().real(), 5.0 / 9.0, 1e-14);
  EXPECT_NEAR(entropy(bell().reduced({0})), 1.0, 1e-13);
  EXPECT_NEAR(entropy(max_mixed(DimList{3, 3}).density()), std::log2(9.0), 1e-13);
}

TEST(NamedStates, Remark1Structure) {
  const MultipartiteState s = remark1_state();
  EXPECT_EQ(s.dims(), (DimList{2, 2, 3}));
  EXPECT_NEAR(remark1_x().norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(remark1_x().dot(remark1_y())), 0.0, 1e-15);
  const CMatrix rho_ab = s.reduced({0, 1});
  EXPECT_EQ(numerical_rank(rho_ab), 3);
  EXPECT_GE(min_eigenvalue(partial_transpose(rho_ab, DimList{2, 2}, 1)), -1e-12);
  EXPECT_NEAR(entropy(s.reduced({0})), 1.0, 1e-13);
  // rho_AC = (|x><x| + |y><y|) / 2.
  const CMatrix want = 0.5 * (remark1_x() * remark1_x().adjoint() + remark1_y() * remark1_y().adjoint());
  EXPECT_LT(max_abs_diff(s.reduced({0, 2}), want), 1e-15);
}

TEST(Povm, FromIsometryIsComplete) {
  CounterRng rng(3, 1);
  const CMatrix w = random_isometry(5, 3, rng);
  const Povm p = Povm::from_isometry(w);
  EXPECT_EQ(p.size(), 5u);
  EXPECT_TRUE(p.rank1);
  EXPECT_LT(p.completeness_residual(), 1e-14);
  EXPECT_NO_THROW(p.validate());
  const CMatrix back = isometry_from_povm(p);
  EXPECT_LT(max_abs_diff(Povm::from_isometry(back).elements[2], p.elements[2]), 1e-13);
}

TEST(Povm, ValidateRejectsIncomplete) {
  Povm p = Povm::from_basis(CMatrix::Identity(2, 2));
  p.elements[0] *= 0.5;
  EXPECT_THROW(p.validate(), DomainError);
  Povm full;
  full.rank1 = true;
  full.elements = {CMatrix::Identity(2, 2)};
  EXPECT_THROW(full.validate(), DomainError);
}

TEST(RandomPovm, HasRequestedShape) {
  const Povm p = random_povm(3, 7, 5, 2);
  EXPECT_EQ(p.size(), 7u);
  EXPECT_EQ(p.dim(), 3);
  EXPECT_NO_THROW(p.validate());
}

TEST(FourierAndPaulis, Algebra) {
  for (int d : {2, 3, 4}) {
    const auto f = fourier_basis(d);
    CMatrix fm(d, d);
    for (int j = 0; j < d; ++j) fm.col(j) = f[j];
    EXPECT_LT(max_abs_diff(fm.adjoint() * fm, CMatrix::Identity(d, d)), 1e-14);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) EXPECT_NEAR(std::abs(f[a](b)), 1.0 / std::sqrt(d), 1e-15);
    const CMatrix z = pauli_z(d), x = pauli_x(d);
    const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
    EXPECT_LT(max_abs_diff(z * x, omega * x * z), 1e-14);
    CMatrix zp = CMatrix::Identity(d, d), xp = zp;
    for (int k = 0; k < d; ++k) {
      zp = z * zp;
      xp = x * xp;
    }
    EXPECT_LT(max_abs_diff(zp, CMatrix::Identity(d, d)), 1e-13);
    EXPECT_LT(max_abs_diff(xp, CMatrix::Identity(d, d)), 1e-13);
  }
}

TEST(Channels, TwirlsReproduceDephasing) {
  const MultipartiteState m = random_mixed(DimList{3}, 3, 2, 0);
  const CMatrix sigma = m.density();
  const CMatrix basis = random_unitary(3, 4, 0);
  EXPECT_LT(max_abs_diff(channel_m0(sigma, basis), twirl(sigma, pauli_z(basis))), 1e-13);
  EXPECT_LT(max_abs_diff(channel_m1(sigma, basis), twirl(sigma, pauli_x(basis))), 1e-13);
  // M1 sends any state to one diagonal in the Fourier basis of the eigenbasis.
  const CMatrix e = eig_hermitian(sigma).vectors;
  EXPECT_LT(max_abs_diff(channel_m1(sigma, e), CMatrix::Identity(3, 3) / 3.0), 1e-13);
}

TEST(MeasureOnSubsystem, PureAndMixedRoutesAgree) {
  const MultipartiteState s = random_pure(DimList{2, 3, 2}, 6, 1);
  const MultipartiteState m = MultipartiteState::mixed(s.density(), s.dims());
  const Povm p = random_povm(3, 5, 6, 1);
  const MeasurementRecord a = measure_on_subsystem(s, p, 1);
  const MeasurementRecord b = measure_on_subsystem(m, p, 1);
  ASSERT_EQ(a.post.states.size(), b.post.states.size());
  EXPECT_EQ(a.remaining_dims, (DimList{2, 2}));
  double total = 0.0;
  for (std::size_t i = 0; i < a.post.states.size(); ++i) {
    EXPECT_NEAR(a.post.weights[i], b.post.weights[i], 1e-14);
    EXPECT_LT(max_abs_diff(a.post.states[i], b.post.states[i]), 1e-13);
    total += a.post.weights[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-13);
  // Averaging the post states gives back the marginal.
  EXPECT_LT(max_abs_diff(a.post.average(), s.reduced({0, 2})), 1e-13);
}

TEST(MeasureOnSubsystem, DropsImpossibleOutcomes) {
  const MultipartiteState s = ghz(2);
  Povm p;
  p.rank1 = true;
  CMatrix e0 = CMatrix::Zero(2, 2), e1 = e0, e2 = e0;
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  p.elements = {e0, e1, e2};
  const MeasurementRecord r = measure_on_subsystem(s, p, 0);
  EXPECT_EQ(r.dropped.size(), 1u);
  EXPECT_EQ(r.dropped.front().outcome, 2u);
  EXPECT_EQ(r.kept_outcomes, (std::vector<std::size_t>{0, 1}));
}

TEST(OmegaState, BlocksTraceAndMarginal) {
  const MultipartiteState m = random_mixed(DimList{2, 3}, 4, 9, 0);
  const OmegaState o(m.density(), m.dims());
  EXPECT_NEAR(o.trace(), 1.0, 1e-13);
  const CMatrix rho_a = m.reduced({0});
  EXPECT_LT(max_abs_diff(o.marginal_ab(), tensor(rho_a, CMatrix::Identity(3, 3) / 3.0)), 1e-13);
  EXPECT_NEAR(o.entropy_x(), std::log2(3.0), 1e-13);
  EXPECT_NEAR(o.entropy_xy(), std::log2(9.0), 1e-13);
}

TEST(OmegaState, JointEntropyMatchesFullMatrix) {
  // Build the full block-diagonal XYAB operator and compare S(XYAB).
  const MultipartiteState m = random_mixed(DimList{2, 2}, 3, 1, 3);
  const OmegaState o(m.density(), m.dims());
  const int db = 2, dab = 4;
  CMatrix full = CMatrix::Zero(db * db * dab, db * db * dab);
  for (int x = 0; x < db; ++x)
    for (int y = 0; y < db; ++y) full.block((x * db + y) * dab, (x * db + y) * dab, dab, dab) = o.block(x, y) / 4.0;
  EXPECT_NEAR(o.entropy_xyab(), oracle::entropy(full), 1e-12);
}

TEST(Samplers, DeterministicAndDistinct) {
  const auto a = random_pure(DimList{2, 2, 2}, 5, 0);
  const auto b = random_pure(DimList{2, 2, 2}, 5, 0);
  const auto c = random_pure(DimList{2, 2, 2}, 5, 1);
  EXPECT_EQ(a.vector(), b.vector());
  EXPECT_GT((a.vector() - c.vector()).norm(), 1e-3);
  const auto m = random_mixed(DimList{2, 2}, 2, 5, 0);
  EXPECT_EQ(numerical_rank(m.density()), 2);
  EXPECT_NEAR(m.density().trace().real(), 1.0, 1e-13);
  const auto u = random_unitary(4, 1, 2);
  EXPECT_LT(max_abs_diff(u.adjoint() * u, CMatrix::Identity(4, 4)), 1e-13);
}

TEST(Samplers, ProductAndSeparableStates) {
  const auto p = random_product_pure(DimList{2, 3}, 3, 0);
  EXPECT_NEAR(entropy(p.reduced({0})), 0.0, 1e-12);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto s = random_separable(DimList{2, 2}, 2, 8, i);
    EXPECT_LE(numerical_rank(s.density()), 2);
    EXPECT_GE(min_eigenvalue(partial_transpose(s.density(), DimList{2, 2}, 1)), -1e-12);
  }
}

TEST(Samplers, HaarMarginalPurityMatchesMonteCarloOracle) {
  // Independent sampler: std::mt19937_64 Gaussian vectors.
  std::mt19937_64 gen(12345);
  std::normal_distribution<double> nd;
  const int n = 20000;
  double oracle_mean = 0.0, ours = 0.0;
  for (int i = 0; i < n; ++i) {
    CVector v(4);
    for (int k = 0; k < 4; ++k) v(k) = cplx(nd(gen), nd(gen));
    v.normalize();
    const CMatrix r = reduced_density(v, DimList{2, 2}, {0});
    oracle_mean += (r * r).trace().real();
    const auto s = random_pure(DimList{2, 2}, 77, static_cast<std::uint64_t>(i));
    const CMatrix q = s.reduced({0});
    ours += (q * q).trace().real();
  }
  oracle_mean /= n;
  ours /= n;
  EXPECT_NEAR(oracle_mean, 0.8, 0.01);
  EXPECT_NEAR(ours, oracle_mean, 0.01);
}
