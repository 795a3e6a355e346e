#include <gtest/gtest.h>

#include <random>

#include "ils/experiments.hpp"
#include "ils/spectral.hpp"
#include "ils/symmetric_eigen.hpp"
#include "test_util.hpp"

namespace ils {
namespace {

TEST(ClosedForms, Example1Values) {
  const double mu = 0.4976;
  EXPECT_NEAR(convergence_interval_upper(mu), 3.009, 1e-3);
  EXPECT_NEAR(alpha_opt(mu), 1.1704, 1e-4);
  EXPECT_NEAR(rho_opt(mu), 0.2912, 1e-4);
}

TEST(ClosedForms, TrivialValues) {
  EXPECT_EQ(alpha_opt(0.0), 1.0);
  EXPECT_EQ(rho_opt(0.0), 0.0);
  EXPECT_DOUBLE_EQ(alpha_opt(0.75), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(rho_opt(0.75), 0.5);
  EXPECT_DOUBLE_EQ(convergence_interval_upper(0.5), 3.0);
  const auto [lo, hi] = convergence_interval(0.0);
  EXPECT_EQ(lo, 0.0);
  EXPECT_TRUE(std::isinf(hi));
}

TEST(ClosedForms, DomainErrors) {
  for (double bad : {-0.1, 1.0, 1.5, std::nan("")}) {
    EXPECT_THROW((void)convergence_interval_upper(bad), Error);
    EXPECT_THROW((void)alpha_opt(bad), Error);
    EXPECT_THROW((void)rho_opt(bad), Error);
  }
}

TEST(ClosedForms, AlphaOptMonotoneInMu) {
  double prev = alpha_opt(0.0);
  for (int k = 1; k < 1000; ++k) {
    const double a = alpha_opt(k / 1000.0);
    EXPECT_GT(a, prev);
    EXPECT_LT(a, 2.0);
    prev = a;
  }
}

TEST(QuadRoots, AlphaOneGivesZeroAndMu) {
  for (double mu : {0.1, 0.4976, 0.9}) {
    const auto [r1, r2] = quad_roots(1.0, mu);
    EXPECT_NEAR(r1.real(), mu, 1e-15);
    EXPECT_EQ(r1.imag(), 0.0);
    EXPECT_NEAR(std::abs(r2), 0.0, 1e-15);
  }
}

TEST(QuadRoots, DoubleRootAtAlphaOpt) {
  for (double mu : {0.2, 0.4976, 0.75, 0.99}) {
    const double a = alpha_opt(mu);
    const auto [r1, r2] = quad_roots(a, mu);
    EXPECT_EQ(r1, r2);
    EXPECT_NEAR(r1.real(), a * mu / 2.0, 1e-12);
    EXPECT_NEAR(r1.imag(), 0.0, 1e-12);
  }
}

TEST(QuadRoots, ComplexPairAboveAlphaOpt) {
  for (double mu : {0.3, 0.6}) {
    const double a = alpha_opt(mu) + 0.2;
    const auto [r1, r2] = quad_roots(a, mu);
    EXPECT_NE(r1.imag(), 0.0);
    EXPECT_EQ(r1, std::conj(r2));
    EXPECT_NEAR(std::abs(r1), std::sqrt((a - 1.0) * mu), 1e-14);
  }
}

TEST(QuadRoots, SatisfyQuadratic) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ua(0.01, 4.0), um(0.0, 0.999);
  for (int k = 0; k < 500; ++k) {
    const double a = ua(rng), mu = um(rng);
    const auto [r1, r2] = quad_roots(a, mu);
    for (auto r : {r1, r2}) EXPECT_LE(std::abs(r * r - a * mu * r + (a - 1.0) * mu), 1e-12);
    EXPECT_GE(r1.real(), r2.real());
  }
}

// Both roots inside the unit disc iff 0 < alpha < 1 + 1/mu.
TEST(QuadRoots, UnitDiscCriterionGrid) {
  for (int im = 1; im < 100; ++im) {
    const double mu = im / 100.0;
    const double upper = 1.0 + 1.0 / mu;
    for (int ia = 1; ia <= 1200; ++ia) {
      const double a = ia / 100.0;
      if (std::abs(a - upper) < 1e-9) continue;
      EXPECT_EQ(max_root_modulus(a, mu) < 1.0, a < upper) << "alpha " << a << " mu " << mu;
    }
  }
}

TEST(QuadRoots, RhoOptIsMinimalOverInterval) {
  for (double mu : {0.05, 0.3, 0.4976, 0.75, 0.95}) {
    const double ro = rho_opt(mu);
    EXPECT_NEAR(max_root_modulus(alpha_opt(mu), mu), ro, 1e-12);
    const double upper = convergence_interval_upper(mu);
    for (double a = 1e-3; a < upper; a += 1e-3) EXPECT_GE(max_root_modulus(a, mu), ro - 1e-12) << a;
  }
}

TEST(MuMax, Example1) {
  const IlsProblem ex = gen_example1();
  const MuMaxResult r = mu_max(ex);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.4976, 5e-4);
  const SpectralSummary s = analyze(ex);
  EXPECT_NEAR(s.alpha_upper, 3.009, 1e-3);
  EXPECT_NEAR(s.alpha_opt, 1.1704, 1e-4);
  EXPECT_NEAR(s.rho_opt, 0.2912, 1e-3);
}

TEST(MuMax, ZeroA2) {
  const IlsProblem pr = build_problem(SparseMatrix::identity(3), SparseMatrix(2, 3), {1, 1, 1}, {1, 1});
  EXPECT_EQ(mu_max(pr).value, 0.0);
  EXPECT_TRUE(std::isinf(analyze(pr).alpha_upper));
}

TEST(MuMax, MatchesGeneralizedEigenOracle) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const IlsProblem pr = testing::random_problem(rng, 20, 20, 20, 0.5);
    const double oracle =
        testing::pencil_eigenvalues(testing::dense(pr.a1()), testing::dense(pr.a2())).maxCoeff();
    const MuMaxResult r = mu_max(pr, 1e-13, 200000);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, oracle, 1e-8);
  }
}

TEST(MuMax, InUnitIntervalForSpdProblems) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> scale(0.05, 3.0);
  int spd = 0;
  for (int trial = 0; spd < 100 && trial < 1000; ++trial) {
    const IlsProblem base = testing::random_problem(rng, 9, 6, 4, 0.5);
    const double s = scale(rng);
    const IlsProblem pr = build_problem(base.a1(), add(base.a2(), SparseMatrix(4, 6), s, 0.0), base.b1(), base.b2());
    if (!hessian_is_spd(pr)) continue;
    ++spd;
    const double mu = mu_max(pr).value;
    EXPECT_GE(mu, 0.0);
    EXPECT_LT(mu, 1.0);
  }
  EXPECT_EQ(spd, 100);
}

TEST(PencilSpectrum, EigenvectorsSolvePencil) {
  std::mt19937_64 rng(44);
  const IlsProblem pr = testing::random_problem(rng, 12, 8, 6, 0.7);
  const SymmetricEigen se = pencil_spectrum(pr);
  const SparseMatrix g = gram(pr.a2());
  for (std::size_t k = 0; k < pr.n(); ++k) {
    Vector u(pr.n());
    for (std::size_t i = 0; i < pr.n(); ++i) u[i] = se.vectors(i, k);
    const Vector lhs = matvec(g, u);
    Vector rhs = matvec(pr.p(), u);
    scale(se.values[k], rhs);
    EXPECT_LE(norm2(subtract(lhs, rhs)), 1e-12 * (1.0 + norm2(lhs)));
  }
}

TEST(PredictedRho, Example1) {
  const IlsProblem ex = gen_example1();
  EXPECT_NEAR(predicted_rho(ex, alpha_opt(mu_max(ex).value)), 0.2912, 1e-3);
  EXPECT_NEAR(predicted_rho(ex, 1.0), 0.4976, 5e-4);
}

TEST(PredictedRho, AlphaOneEqualsMuMax) {
  const std::vector<double> mus{0.0, 0.1, 0.35, 0.8};
  EXPECT_DOUBLE_EQ(predicted_rho(mus, 1.0), 0.8);
}

TEST(PredictedRho, MatchesDenseIterationMatrix) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> alpha(0.3, 2.5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial) * 2;
    const IlsProblem pr = testing::random_problem(rng, n + 3, n, n / 2 + 1, 0.6, 0.5);
    double a = alpha(rng);
    // the Jordan block at alpha_opt degrades dense eigenvalue accuracy
    if (std::abs(a - alpha_opt(0.6)) < 0.05) a += 0.1;
    EXPECT_NEAR(predicted_rho(pr, a), testing::dense_spectral_radius(pr, a), 1e-8) << "alpha " << a;
  }
}

TEST(Eigenvalues, InsideUnitDiscAroundOne) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    const IlsProblem pr = testing::random_problem(rng, 10, 6, 4, 0.85);
    const double upper = convergence_interval_upper(0.85);
    for (double a : {0.2, 1.0, 1.6, upper - 0.05}) {
      // eigenvalues of I - M^{-1}A are 1 - lambda
      const Eigen::VectorXcd g = testing::iteration_matrix_eigenvalues(pr, a);
      EXPECT_LT(g.cwiseAbs().maxCoeff(), 1.0) << a;
    }
  }
}

TEST(EigenpairForms, Example1) {
  const IlsProblem ex = gen_example1();
  for (double a : {1.0, 1.3}) {
    const EigenpairReport rep = verify_eigenpair_forms(ex, a);
    EXPECT_TRUE(rep.has(EigenpairCase::GeneralLambda));
    EXPECT_LE(rep.max_defect(EigenpairCase::GeneralLambda), 1e-10);
    if (a == 1.0) {
      EXPECT_TRUE(rep.has(EigenpairCase::AlphaOne));
      EXPECT_LE(rep.max_defect(EigenpairCase::AlphaOne), 1e-12);
    } else {
      // A2 of Example 1 is rank deficient, so the null-space case applies
      ASSERT_TRUE(rep.has(EigenpairCase::NullSpace));
      EXPECT_LE(rep.max_defect(EigenpairCase::NullSpace), 1e-10);
    }
  }
}

TEST(EigenpairForms, FullColumnRankA2SkipsNullSpaceCase) {
  const IlsProblem pr = build_problem(SparseMatrix::identity(3, 2.0), SparseMatrix::identity(3, 1.0), {1, 1, 1},
                                      {1, 1, 1});
  const EigenpairReport rep = verify_eigenpair_forms(pr, 1.3);
  bool skipped = false;
  for (const auto& c : rep.checks)
    if (c.which == EigenpairCase::NullSpace) skipped = c.skipped;
  EXPECT_TRUE(skipped);
  EXPECT_FALSE(rep.has(EigenpairCase::NullSpace));
}

TEST(EigenpairForms, KnownKernel) {
  std::mt19937_64 rng(47);
  Eigen::MatrixXd a1 = testing::dense(testing::random_sparse(rng, 8, 6, 0.6));
  a1 += 3.0 * Eigen::MatrixXd::Identity(8, 6);
  Eigen::MatrixXd a2 = 0.3 * testing::dense(testing::random_sparse(rng, 5, 6, 0.7));
  a2.col(2).setZero();
  const IlsProblem pr = build_problem(testing::from_dense(a1), testing::from_dense(a2), testing::random_vector(rng, 8),
                                      testing::random_vector(rng, 5));
  const DenseMatrix k = null_space(pr.a2());
  ASSERT_GE(k.cols(), 1u);
  const EigenpairReport rep = verify_eigenpair_forms(pr, 1.3);
  ASSERT_TRUE(rep.has(EigenpairCase::NullSpace));
  EXPECT_LE(rep.max_defect(EigenpairCase::NullSpace), 1e-10);
  EXPECT_LE(rep.max_defect(EigenpairCase::GeneralLambda), 1e-10);
}

TEST(NullSpace, OrthonormalKernelBasis) {
  const std::vector<Triplet> t{{0, 0, 1.0}, {0, 1, 1.0}, {1, 2, 2.0}};
  const SparseMatrix a = csr_from_triplets(t, 2, 3);
  const DenseMatrix k = null_space(a);
  ASSERT_EQ(k.cols(), 1u);
  Vector v{k(0, 0), k(1, 0), k(2, 0)};
  EXPECT_NEAR(norm2(v), 1.0, 1e-12);
  EXPECT_LE(norm2(matvec(a, v)), 1e-12);
  EXPECT_EQ(null_space(SparseMatrix::identity(3)).cols(), 0u);
}

TEST(SymmetricEigen, AgreesWithEigen) {
  std::mt19937_64 rng(48);
  const Eigen::MatrixXd b = testing::dense(testing::random_sparse(rng, 15, 15, 0.5));
  const Eigen::MatrixXd s = b + b.transpose();
  DenseMatrix d(15, 15);
  for (std::size_t i = 0; i < 15; ++i)
    for (std::size_t j = 0; j < 15; ++j) d(i, j) = s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  const SymmetricEigen se = symmetric_eigen(d);
  const Eigen::VectorXd oracle = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s).eigenvalues();
  for (std::size_t k = 0; k < 15; ++k) EXPECT_NEAR(se.values[k], oracle(static_cast<Eigen::Index>(k)), 1e-12 * s.norm());
}

}  // namespace
}  // namespace ils
