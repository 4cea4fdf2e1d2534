#include "zcrit/pointform.hpp"

#include "zcrit/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace zcrit::pointform {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kAlgebraTol = 1e-12;
constexpr double kIdentityTol = 1e-10;

Matrix id(int r) { return Matrix::Identity(r, r); }

int form_degree(const MatrixForm& a) {
  for (int d = 0; d <= 4; ++d)
    if ((a - a.part(d)).max_abs() == 0.0) return d;
  return -1;
}

TEST(Monomials, Signs) {
  EXPECT_EQ(wedge_sign(kDz1, kDz2), 1);
  EXPECT_EQ(wedge_sign(kDz2, kDz1), -1);
  EXPECT_EQ(wedge_sign(kDz1, kDz1), 0);
  EXPECT_EQ(wedge_sign(kDz1 | kDzb1, kDz2 | kDzb2), -1);
  EXPECT_EQ(conjugate(kDz1 | kDzb2), kDz2 | kDzb1);
  // conj(dz1 ^ dzb2) = dzb1 ^ dz2 = -dz2 ^ dzb1.
  EXPECT_EQ(conjugate_sign(kDz1 | kDzb2), -1);
  EXPECT_EQ(conjugate_sign(kDzb1), 1);
}

TEST(Wedge, KahlerSquare) {
  const MatrixForm w2 = wedge(kahler_form(1), kahler_form(1));
  // omega^2 = -2 dz1^dzb1^dz2^dzb2 = 2 dz1^dz2^dzb1^dzb2.
  EXPECT_NEAR(std::abs(top_scalar(w2) - Complex(2.0)), 0.0, kAlgebraTol);
  EXPECT_EQ(form_degree(w2), 4);
}

TEST(Wedge, AssociativeAndBilinear) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const MatrixForm a = random_form(rng, 2, t % 2, (t / 2) % 2);
    const MatrixForm b = random_form(rng, 2, 1, 0);
    const MatrixForm c = random_form(rng, 2, 0, 1);
    EXPECT_LT((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_abs(), kAlgebraTol * 100);
    const Complex s(0.3, -1.7);
    EXPECT_LT((wedge(s * a + c, b) - (s * wedge(a, b) + wedge(c, b))).max_abs(), kAlgebraTol * 100);
  }
}

TEST(Wedge, ScalarEvenFormsCommute) {
  std::mt19937_64 rng(2);
  const MatrixForm s = random_form(rng, 1, 1, 1);
  const MatrixForm m = random_form(rng, 3, 0, 1);
  const MatrixForm S = times_identity(s, 3);
  EXPECT_LT((wedge(S, m) - wedge(m, S)).max_abs(), kAlgebraTol);
}

TEST(Wedge, GradedCommutationNeedsTrace) {
  std::mt19937_64 rng(3);
  const MatrixForm a = random_form(rng, 2, 1, 0);
  const MatrixForm b = random_form(rng, 2, 0, 1);
  EXPECT_GT((wedge(a, b) + wedge(b, a)).max_abs(), 1e-3);
  EXPECT_LT((trace(wedge(a, b)) + trace(wedge(b, a))).max_abs(), kAlgebraTol * 10);
}

TEST(Wedge, RankMismatch) { EXPECT_THROW(wedge(MatrixForm(2), MatrixForm(3)), DimensionMismatch); }

TEST(SymWedge, Basics) {
  std::mt19937_64 rng(4);
  const MatrixForm a = random_form(rng, 2, 1, 1);
  const std::vector<MatrixForm> one{a};
  EXPECT_LT((sym_wedge(one) - a).max_abs(), kAlgebraTol);

  const MatrixForm s = times_identity(random_form(rng, 1, 1, 1), 2);
  const std::vector<MatrixForm> two{s, a};
  EXPECT_LT((sym_wedge(two) - wedge(s, a)).max_abs(), kAlgebraTol);

  for (int t = 0; t < 50; ++t) {
    const MatrixForm p = random_form(rng, 2, 0, 1);
    const MatrixForm q = random_form(rng, 2, 1, 0);
    const std::vector<MatrixForm> pq{p, q};
    EXPECT_LT((trace(sym_wedge(pq)) - trace(wedge(p, q))).max_abs(), kAlgebraTol * 10);
  }
}

TEST(SymWedge, TraceIsSymmetric) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    std::vector<MatrixForm> args{random_form(rng, 2, 1, 0), random_form(rng, 2, 0, 1),
                                 random_form(rng, 2, 1, 1)};
    const MatrixForm base = trace(sym_wedge(args));
    std::array<int, 3> perm{0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end())) {
      const std::vector<MatrixForm> permuted{args[perm[0]], args[perm[1]], args[perm[2]]};
      // Graded sign of the reordering: only the two odd arguments (0 and 1) can swap.
      const int pos0 = static_cast<int>(std::find(perm.begin(), perm.end(), 0) - perm.begin());
      const int pos1 = static_cast<int>(std::find(perm.begin(), perm.end(), 1) - perm.begin());
      const double sign = pos0 < pos1 ? 1.0 : -1.0;
      EXPECT_LT((trace(sym_wedge(permuted)) - Complex(sign) * base).max_abs(), kAlgebraTol * 10);
    }
  }
}

TEST(Adjoint, InvolutionAndAntiAutomorphism) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    const int p = t % 3, q = (t / 3) % 2;
    const MatrixForm a = random_form(rng, 2, p, q);
    const MatrixForm b = random_form(rng, 2, 1, t % 2);
    EXPECT_LT((adjoint(adjoint(a)) - a).max_abs(), kAlgebraTol);
    const double sign = ((p + q) * (1 + t % 2)) % 2 ? -1.0 : 1.0;
    EXPECT_LT((adjoint(wedge(a, b)) - Complex(sign) * wedge(adjoint(b), adjoint(a))).max_abs(), kAlgebraTol * 100);
  }
}

TEST(Adjoint, ChernCurvatureIsSelfAdjoint) {
  const MatrixForm F = fs_curvature_tp2();
  EXPECT_LT((F - adjoint(F)).max_abs(), kAlgebraTol);
  EXPECT_LT((kahler_form(2) - adjoint(kahler_form(2))).max_abs(), kAlgebraTol);
}

TEST(Trace, IdentityTopForm) {
  MatrixForm top(3);
  top[kTop] = id(3);
  EXPECT_NEAR(std::abs(top_scalar(trace(top)) - Complex(3.0)), 0.0, kAlgebraTol);
}

TEST(FubiniStudy, TraceAndSquareIdentities) {
  const MatrixForm F = fs_curvature_tp2();
  EXPECT_LT((trace(F) - 3.0 * kahler_form(1)).max_abs(), kAlgebraTol);
  const MatrixForm w2 = wedge(kahler_form(2), kahler_form(2));
  EXPECT_LT((wedge(F, kahler_form(2)) - 1.5 * w2).max_abs(), kAlgebraTol);
  EXPECT_LT((wedge(F, F) - 1.5 * w2).max_abs(), kAlgebraTol);
}

TEST(FubiniStudy, RescaleInvariance) {
  for (const double s : {0.5, 2.0, 1.0 / (2.0 * 3.141592653589793)}) {
    const MatrixForm F = s * fs_curvature_tp2();
    const MatrixForm w = s * kahler_form(2);
    const MatrixForm w2 = wedge(w, w);
    EXPECT_LT((wedge(F, w) - 1.5 * w2).max_abs(), kAlgebraTol);
    EXPECT_LT((wedge(F, F) - 1.5 * w2).max_abs(), kAlgebraTol);
  }
}

TEST(SecondFundamentalForm, AtOrigin) {
  const MatrixForm A = second_fund_form(0.0, 0.0);
  MatrixForm expected(3);
  expected[kDzb2](0, 2) = -1.0;
  expected[kDzb1](1, 2) = 1.0;
  EXPECT_LT((A - expected).max_abs(), kAlgebraTol);

  MatrixForm expected_star(3);
  expected_star[kDz2](2, 0) = -1.0;
  expected_star[kDz1](2, 1) = 1.0;
  EXPECT_LT((adjoint(A) - expected_star).max_abs(), kAlgebraTol);

  const MatrixForm iAsA = kI * diagonal_block(wedge(adjoint(A), A), 2, 1);
  EXPECT_LT((iAsA - kahler_form(1)).max_abs(), kAlgebraTol);

  // A ^ A* block printed in the example.
  const MatrixForm AAs = diagonal_block(wedge(A, adjoint(A)), 0, 2);
  MatrixForm printed(2);
  printed[kDz2 | kDzb2](0, 0) = -1.0;
  printed[kDz1 | kDzb2](0, 1) = 1.0;
  printed[kDz2 | kDzb1](1, 0) = 1.0;
  printed[kDz1 | kDzb1](1, 1) = -1.0;
  EXPECT_LT((AAs - printed).max_abs(), kAlgebraTol);
}

TEST(SecondFundamentalForm, HolomorphicDerivativeVanishes) {
  EXPECT_LT(second_fund_form_holomorphic_residual(1e-5), 1e-6);
}

TEST(SecondFundamentalForm, AwayFromOriginIsAntiholomorphicType) {
  const MatrixForm A = second_fund_form({0.3, -0.2}, {0.1, 0.4});
  EXPECT_EQ(A.off_type(0, 1), 0.0);
  EXPECT_EQ(outside_block(A, 0, 2, 2, 1), 0.0);
}

TEST(ExtensionFlatness, ProjectiveFlatness) {
  const std::vector<double> xs{-2.0, -1.0, 0.0, 0.5, 1.0, 3.0};
  const FlatnessReport r = extension_flatness_check(xs);
  EXPECT_LT(r.fs_shift_residual, kIdentityTol);
  EXPECT_LT(r.sub_block_residual, kIdentityTol);
  EXPECT_LT(r.quotient_block_residual, kIdentityTol);
  EXPECT_LT(r.full_residual, kIdentityTol);
  EXPECT_LT(r.a_star_a_residual, kAlgebraTol);
  EXPECT_LT(r.holomorphic_residual, 1e-6);
  ASSERT_EQ(r.dhym_residuals.size(), xs.size());
  for (const auto& [x, res] : r.dhym_residuals) EXPECT_LT(res, kIdentityTol) << x;
}

TEST(BlockCurvature, ZeroSecondFundamentalFormIsBlockDiagonal) {
  std::mt19937_64 rng(7);
  const MatrixForm FS = random_form(rng, 2, 1, 1);
  const MatrixForm FQ = random_form(rng, 1, 1, 1);
  const MatrixForm zero(3);
  const MatrixForm F = block_curvature(FS, FQ, zero, zero, zero);
  EXPECT_LT((F - embed_diagonal(FS, 0, 3) - embed_diagonal(FQ, 2, 3)).max_abs(), kAlgebraTol);
}

TEST(BlockCurvature, RejectsMisplacedBlocks) {
  std::mt19937_64 rng(8);
  const MatrixForm FS = random_form(rng, 2, 1, 1);
  const MatrixForm FQ = random_form(rng, 1, 1, 1);
  const MatrixForm zero(3);
  const MatrixForm wrong = random_block_form(rng, 3, 2, 1, 0, 2, 0, 1);
  EXPECT_THROW(block_curvature(FS, FQ, wrong, zero, zero), TypeViolation);
  EXPECT_THROW(block_curvature(FS, FQ, MatrixForm(2), zero, zero), DimensionMismatch);
}

TEST(Subsol1, ZeroAndRandom) {
  std::mt19937_64 rng(9);
  const MatrixForm FS = random_form(rng, 2, 1, 1);
  const MatrixForm FQ = random_form(rng, 1, 1, 1);
  const MatrixForm zero(3);
  const IdentityResidual z = subsol1_pointwise_identity(FS, FQ, zero, zero, zero);
  EXPECT_EQ(z.lhs, Complex(0.0));
  EXPECT_EQ(z.rhs, Complex(0.0));
  for (int t = 0; t < 200; ++t) {
    const MatrixForm A = random_block_form(rng, 3, 0, 2, 2, 1, 0, 1);
    const MatrixForm DpA = random_block_form(rng, 3, 0, 2, 2, 1, 1, 1);
    const MatrixForm DppAs = random_block_form(rng, 3, 2, 1, 0, 2, 1, 1);
    const IdentityResidual r = subsol1_pointwise_identity(FS, FQ, A, DpA, DppAs);
    EXPECT_LT(r.residual, kIdentityTol * (1.0 + std::abs(r.lhs)));
  }
}

TEST(TraceIdentities, Random) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 200; ++t) {
    const MatrixForm A = random_form(rng, 1 + t % 4, 0, 1);
    EXPECT_LT(trace_quartic_residual(A), kIdentityTol * 100);
    const MatrixForm P = random_block_form(rng, 3, 0, 2, 2, 1, 1, 1);
    const MatrixForm Q = random_block_form(rng, 3, 2, 1, 0, 2, 1, 1);
    EXPECT_LT(trace_swap_residual(P, Q), kIdentityTol * 100);
  }
}

TEST(Corank1, Examples) {
  const std::vector<Complex> e1{1.0, 0.0}, e2{0.0, 1.0};
  const Corank1Identities c = corank1_identities(e1, e2);
  EXPECT_DOUBLE_EQ(c.value, 1.0);
  EXPECT_DOUBLE_EQ(c.lagrange_rhs, 1.0);
  // The sum over i != j of |conj(x_i) y_i - x_j conj(y_j)|^2 is 0 here.
  EXPECT_DOUBLE_EQ(c.claimed_rhs, 0.0);

  const std::vector<Complex> x{{1.0, 2.0}, {-0.5, 0.3}, {0.2, 0.0}};
  std::vector<Complex> y;
  for (const auto& v : x) y.push_back(Complex(0.7, -1.1) * v);
  EXPECT_NEAR(corank1_inequality(x, y), 0.0, kAlgebraTol);
  EXPECT_THROW(corank1_inequality(e1, x), DimensionMismatch);
}

TEST(Corank1, NonnegativeRandom) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 10000; ++t) {
    std::vector<Complex> x(1 + t % 5), y(1 + t % 5);
    for (auto& v : x) v = {normal(rng), normal(rng)};
    for (auto& v : y) v = {normal(rng), normal(rng)};
    const Corank1Identities c = corank1_identities(x, y);
    ASSERT_GE(c.value, -1e-12);
    ASSERT_NEAR(c.value, c.lagrange_rhs, 1e-10 * (1.0 + c.value));
  }
}

TEST(CharacteristicPolynomial, Examples) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.5;
  d(1, 1) = -0.75;
  EXPECT_LT(characteristic_solution_check(tensor(kahler_form(1), d)), kAlgebraTol);

  const MatrixForm F = -1.0 * kahler_form(2);
  EXPECT_LT((trace(F) + 2.0 * kahler_form(1)).max_abs(), kAlgebraTol);
  const MatrixForm tr = trace(F);
  const MatrixForm det = 0.5 * (wedge(tr, tr) - trace(wedge(F, F)));
  EXPECT_LT((det - wedge(kahler_form(1), kahler_form(1))).max_abs(), kAlgebraTol);
  EXPECT_LT(characteristic_solution_check(F), kAlgebraTol);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const Matrix m = random_form(rng, 2, 0, 0)[0];
    const MatrixForm single = tensor(random_form(rng, 1, 1, 1), m);
    EXPECT_LT(characteristic_solution_check(single), kIdentityTol * 100);
    const MatrixForm general = random_form(rng, 2, 1, 1);
    EXPECT_LT(characteristic_solution_check(general), kIdentityTol * 100);
  }
  EXPECT_THROW(characteristic_solution_check(random_form(rng, 2, 0, 1)), TypeViolation);
  EXPECT_THROW(characteristic_solution_check(MatrixForm(3)), DimensionMismatch);
}

TEST(PositivityGram, ModelForm) {
  for (const double c : {0.5, 1.0, 3.0}) {
    const PositivityGram g = positivity_gram(c * kahler_form(2));
    EXPECT_LT(g.hermitian_defect, kAlgebraTol);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(g.gram);
    // Eigenvalues against the top monomial omega^2 / 2: each equals 2c.
    EXPECT_NEAR(solver.eigenvalues().minCoeff(), 2.0 * c, 1e-12);
    EXPECT_NEAR(solver.eigenvalues().maxCoeff(), 2.0 * c, 1e-12);
  }
}

TEST(PositivityGram, Zero) {
  const PositivityGram g = positivity_gram(MatrixForm(2));
  EXPECT_NEAR(g.min_eigenvalue, 0.0, 1e-12);
}

TEST(PositivityGram, RejectsWrongType) {
  std::mt19937_64 rng(13);
  EXPECT_THROW(positivity_gram(random_form(rng, 2, 2, 0)), TypeViolation);
}

// Expanded quadratic form of the Fubini-Study curvature in units of the top monomial, with
// u^i_j = U(i, j). The weight-3 group holds |u^2_2|^2; the printed version has |u^1_1|^2 there,
// which disagrees with a direct hand evaluation on xi = E11 dzb1 but has the same spectrum.
double fs_bracket(const Matrix& U, const Matrix& V, bool printed) {
  auto n = [](Complex z) { return std::norm(z); };
  const Complex heavy = printed ? U(0, 0) : U(1, 1);
  const Complex light = printed ? U(1, 1) : U(0, 0);
  return 3 * (n(heavy) + n(U(0, 1)) + n(V(0, 0)) + n(V(1, 0))) + n(U(1, 0)) + n(light) + n(V(0, 1)) +
         n(V(1, 1)) + n(U(0, 0) - V(0, 1)) + n(U(1, 0) - V(1, 1)) + n(V(0, 0) - U(1, 0)) + n(V(0, 1) - U(1, 1));
}

MatrixForm antiholomorphic(const Matrix& U, const Matrix& V) {
  return MatrixForm::monomial(kDzb1, U) + MatrixForm::monomial(kDzb2, V);
}

TEST(PositivityGram, FubiniStudyExpansion) {
  std::mt19937_64 rng(14);
  const MatrixForm F = fs_curvature_tp2();
  for (int t = 0; t < 50; ++t) {
    const Matrix U = random_form(rng, 2, 0, 0)[0];
    const Matrix V = random_form(rng, 2, 0, 0)[0];
    const MatrixForm xi = antiholomorphic(U, V);
    const Complex q = positivity_form(F, xi);
    EXPECT_NEAR(q.imag(), 0.0, 1e-10);
    EXPECT_NEAR(q.real(), fs_bracket(U, V, false), 1e-9);
    // i Tr[xi* xi omega + xi* omega xi] = 2 omega ^ i Tr[xi* ^ xi] = 2 |xi|^2 top.
    EXPECT_NEAR(positivity_form(kahler_form(2), xi).real(), 2.0 * (U.squaredNorm() + V.squaredNorm()), 1e-9);
  }
}

TEST(PositivityGram, FubiniStudyPrintedExpansionIsospectral) {
  Matrix printed(8, 8);
  auto unit = [](int k) {
    Matrix U = Matrix::Zero(2, 2), V = Matrix::Zero(2, 2);
    (k < 4 ? U : V)((k % 4) / 2, k % 2) = 1.0;
    return std::pair{U, V};
  };
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const auto [Ua, Va] = unit(a);
      const auto [Ub, Vb] = unit(b);
      printed(a, b) = 0.25 * (fs_bracket(Ua + Ub, Va + Vb, true) - fs_bracket(Ua - Ub, Va - Vb, true));
    }
  }
  const PositivityGram g = positivity_gram(fs_curvature_tp2());
  const Eigen::VectorXd ours = Eigen::SelfAdjointEigenSolver<Matrix>(g.gram).eigenvalues();
  const Eigen::VectorXd theirs = Eigen::SelfAdjointEigenSolver<Matrix>(printed).eigenvalues();
  EXPECT_LT((ours - theirs).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(g.min_eigenvalue, 3.0 - std::sqrt(3.0), 1e-12);
}

TEST(PositivityGram, DhymCombinationPositive) {
  // 2 a_hat F + b_hat with a_hat = 3/2, b_hat = -omega/2.
  const MatrixForm R = 3.0 * fs_curvature_tp2() - 0.5 * kahler_form(2);
  const PositivityGram g = positivity_gram(R);
  EXPECT_LT(g.hermitian_defect, kAlgebraTol);
  EXPECT_GT(g.min_eigenvalue, 0.0);
}

TEST(PositivityGram, Rank3ExtensionPositive) {
  // R = |Z| (3/2)(1 + (1 + x)^2) omega (x) 1, up to the positive factor |Z|.
  for (const double x : {-2.0, -1.0, 0.0, 1.0}) {
    const double c = 1.5 * (1.0 + (1.0 + x) * (1.0 + x));
    EXPECT_NEAR(positivity_gram(c * kahler_form(3)).min_eigenvalue, 2.0 * c, 1e-12);
  }
}

TEST(Suites, SmallRunHasNoFailures) {
  const IdentitySuites s = run_identity_suites(17, 400, kIdentityTol);
  for (const SuiteResult* r : {&s.trace_quartic, &s.trace_swap, &s.subsol1, &s.cayley_hamilton, &s.corank1}) {
    EXPECT_EQ(r->trials, 400u);
    EXPECT_EQ(r->failures, 0u);
  }
  EXPECT_GT(s.corank1_claimed_identity_worst_gap, 1e-3);
}

TEST(Suites, Deterministic) {
  const IdentitySuites a = run_identity_suites(5, 64, kIdentityTol);
  const IdentitySuites b = run_identity_suites(5, 64, kIdentityTol);
  EXPECT_EQ(a.subsol1.worst, b.subsol1.worst);
  EXPECT_EQ(a.corank1_claimed_identity_worst_gap, b.corank1_claimed_identity_worst_gap);
}

}  // namespace
}  // namespace zcrit::pointform
