#include <gtest/gtest.h>

#include <random>

#include "ils/block_operator.hpp"
#include "ils/experiments.hpp"
#include "ils/gmres.hpp"
#include "ils/pbs.hpp"
#include "test_util.hpp"

namespace ils {
namespace {

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd m) : m_(std::move(m)) {}
  [[nodiscard]] std::size_t dim() const noexcept override { return static_cast<std::size_t>(m_.rows()); }
  void apply(std::span<const double> x, std::span<double> y) const override {
    Eigen::Map<Eigen::VectorXd>(y.data(), m_.rows()) =
        m_ * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  }

 private:
  Eigen::MatrixXd m_;
};

Eigen::MatrixXd random_nonsymmetric(std::mt19937_64& rng, std::size_t d, double shift) {
  Eigen::MatrixXd m = testing::dense(testing::random_sparse(rng, d, d, 0.3)) / std::sqrt(static_cast<double>(d));
  m += shift * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  return m;
}

TEST(Gmres, IdentityConvergesInOneStep) {
  const DenseOperator id(Eigen::MatrixXd::Identity(5, 5));
  const GmresResult r = gmres(id, nullptr, Vector{1, 2, 3, 4, 5});
  EXPECT_TRUE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 1u);
  EXPECT_TRUE(r.happy_breakdown);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.solution[i], static_cast<double>(i + 1), 1e-14);
}

TEST(Gmres, SpdTwoByTwoWithinTwoSteps) {
  Eigen::MatrixXd m(2, 2);
  m << 4, 1, 1, 3;
  const GmresResult r = gmres(DenseOperator(m), nullptr, Vector{1, 2});
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.report.iterations, 2u);
  EXPECT_LE(r.report.final_rel_residual, 1e-11);
}

TEST(Gmres, ZeroRhs) {
  const GmresResult r = gmres(DenseOperator(Eigen::MatrixXd::Identity(3, 3)), nullptr, Vector(3, 0.0));
  EXPECT_TRUE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 0u);
  EXPECT_EQ(r.solution, Vector(3, 0.0));
}

TEST(Gmres, ExactPreconditionerOneStep) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd a = random_nonsymmetric(rng, 30, 1.0);
    const DenseOperator op(a), inv(a.inverse());
    const GmresResult r = gmres(op, &inv, testing::random_vector(rng, 30));
    EXPECT_TRUE(r.report.converged);
    EXPECT_EQ(r.report.iterations, 1u);
  }
}

TEST(Gmres, FullGmresWithinDimensionSteps) {
  std::mt19937_64 rng(72);
  for (std::size_t d : {5u, 12u, 25u, 50u}) {
    const Eigen::MatrixXd a = random_nonsymmetric(rng, d, 0.5);
    const GmresResult r = gmres_full(DenseOperator(a), nullptr, testing::random_vector(rng, d), {.tol = 1e-10});
    EXPECT_TRUE(r.report.converged);
    EXPECT_LE(r.report.iterations, d);
  }
}

TEST(Gmres, DimensionMismatchThrows) {
  EXPECT_THROW((void)gmres(DenseOperator(Eigen::MatrixXd::Identity(3, 3)), nullptr, Vector(2, 1.0)), Error);
}

// Single-pass MGS loses orthogonality roughly in proportion to the residual
// reduction, so the operators here keep h_{j+1,j} well away from zero over
// the 10 steps.
TEST(Arnoldi, BasisOrthonormal) {
  std::mt19937_64 rng(73);
  const IlsProblem pde = gen_pde_problem({.n0 = 6});
  const BlockOperator pde_op(pde, BlockKind::Augmented6);
  const IlsProblem pr = testing::random_problem(rng, 40, 30, 20, 0.9, 0.3);
  const BlockOperator op(pr, BlockKind::Augmented6);
  const PbsPreconditioner prec(pr, 0.5);
  const DenseOperator dop(random_nonsymmetric(rng, 60, 1.0));
  for (const auto& [oper, m] : {std::pair<const LinearOperator*, const LinearOperator*>{&op, &prec},
                                {&pde_op, nullptr}, {&dop, nullptr}}) {
    Arnoldi arn(*oper, m, testing::random_vector(rng, oper->dim()));
    for (int j = 0; j < 10; ++j) (void)arn.step();
    const auto& v = arn.basis();
    ASSERT_EQ(v.size(), 11u);
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(dot(v[i], v[k]), i == k ? 1.0 : 0.0, 1e-10);
  }
}

TEST(Arnoldi, HessenbergRelation) {
  std::mt19937_64 rng(74);
  const Eigen::MatrixXd a = random_nonsymmetric(rng, 20, 1.0);
  const DenseOperator op(a);
  Arnoldi arn(op, nullptr, testing::random_vector(rng, 20));
  for (std::size_t j = 0; j < 6; ++j) {
    (void)arn.step();
    const Vector av = op(arn.basis()[j]);
    Vector combo(20, 0.0);
    const Vector& h = arn.hessenberg_column(j);
    ASSERT_EQ(h.size(), j + 2);
    for (std::size_t i = 0; i <= j + 1; ++i) axpy(h[i], arn.basis()[i], combo);
    EXPECT_LE(norm2(subtract(av, combo)), 1e-12 * norm2(av));
  }
}

TEST(Gmres, EstimateMonotoneWithinCycles) {
  const IlsProblem pr = gen_pde_problem({.n0 = 8});
  const BlockOperator op(pr, BlockKind::Augmented6);
  const GmresResult r = gmres(op, nullptr, op.rhs(), {.restart = 10, .maxit = 200});
  ASSERT_GT(r.cycles, 2u);
  const Vector& est = r.preconditioned_estimates;
  for (std::size_t k = 1; k < est.size(); ++k)
    if (k % 10 != 0) EXPECT_LE(est[k], est[k - 1] * (1.0 + 1e-12)) << k;
}

TEST(Gmres, EstimateMatchesExplicitPreconditionedResidual) {
  std::mt19937_64 rng(75);
  const IlsProblem pr = testing::random_problem(rng, 30, 20, 15, 0.9);
  const BlockOperator op(pr, BlockKind::Augmented6);
  const PbsPreconditioner prec(pr, 0.5);
  for (std::size_t k : {3u, 6u, 9u}) {
    const GmresResult r = gmres(op, &prec, op.rhs(), {.restart = k, .tol = 1e-30, .maxit = k});
    ASSERT_EQ(r.report.iterations, k);
    const Vector res = prec(subtract(op.rhs(), op(r.solution)));
    const double expl = norm2(res);
    EXPECT_NEAR(r.preconditioned_estimates.back(), expl, 1e-8 * expl);
  }
}

TEST(Gmres, RestartCountsTotalInnerSteps) {
  const IlsProblem pr = gen_pde_problem({.n0 = 8});
  const BlockOperator op(pr, BlockKind::Augmented6);
  const GmresResult r = gmres(op, nullptr, op.rhs(), {.restart = 5, .maxit = 37});
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.status, SolveStatus::MaxIterations);
  EXPECT_EQ(r.report.iterations, 37u);
  EXPECT_EQ(r.cycles, 8u);
  EXPECT_EQ(r.report.rel_residual_history.size(), 37u);
}

TEST(Gmres, TrueResidualStoppingOnPdeProblem) {
  const IlsProblem pr = gen_pde_problem({.n0 = 10});
  const BlockOperator op(pr, BlockKind::Augmented6);
  const PbsPreconditioner prec(pr, 1.0);
  const GmresResult r = gmres(op, &prec, op.rhs());
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.report.final_rel_residual, 1e-11);
  EXPECT_LE(rel_residual(op, op.rhs(), r.solution), 1e-11);
  EXPECT_LE(rel_error(op.extract_x(r.solution), reference_solution(pr)), 1e-6);
}

TEST(Gmres, CycleEndModeConverges) {
  const IlsProblem pr = gen_pde_problem({.n0 = 10});
  const BlockOperator op(pr, BlockKind::XinMengB);
  const BsPreconditioner prec(pr, BsKind::BS2);
  const GmresResult tracked = gmres(op, &prec, op.rhs());
  const GmresResult cheap = gmres(op, &prec, op.rhs(), {.track_true_residual = false});
  EXPECT_TRUE(cheap.report.converged);
  EXPECT_LE(rel_residual(op, op.rhs(), cheap.solution), 1e-11);
  EXPECT_GE(cheap.report.iterations, tracked.report.iterations);
}

}  // namespace
}  // namespace ils
