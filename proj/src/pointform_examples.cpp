#include "zcrit/pointform.hpp"

#include "zcrit/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>

namespace zcrit::pointform {
namespace {

constexpr Complex kI{0.0, 1.0};

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Coefficients of the Hom(O, S) column: [row][antiholomorphic index] with rows e1, e2.
using SecondFundCoeffs = std::array<std::array<Complex, 2>, 2>;

SecondFundCoeffs second_fund_coeffs(Complex z1, Complex z2) {
  const double r2 = std::norm(z1) + std::norm(z2);
  const double f = 1.0 / ((1.0 + r2) * (1.0 + r2));
  SecondFundCoeffs c;
  c[0][0] = f * z1 * std::conj(z2);
  c[0][1] = -f * (1.0 + std::norm(z1));
  c[1][0] = f * (1.0 + std::norm(z2));
  c[1][1] = -f * std::conj(z1) * z2;
  return c;
}

double relative_gap(double residual, double scale) { return residual / (1.0 + scale); }

// Splits trials into a fixed number of chunks with derived seeds, so results do not depend on
// the thread count.
template <class Trial>
SuiteResult run_suite(std::uint64_t seed, std::uint64_t salt, std::uint64_t trials, double tolerance, Trial trial) {
  constexpr std::uint64_t kChunks = 8;
  std::vector<std::future<SuiteResult>> parts;
  for (std::uint64_t c = 0; c < kChunks; ++c) {
    const std::uint64_t begin = trials * c / kChunks;
    const std::uint64_t end = trials * (c + 1) / kChunks;
    parts.push_back(std::async(std::launch::async, [=] {
      std::seed_seq seq{seed, salt, c};
      std::mt19937_64 rng(seq);
      SuiteResult r;
      for (std::uint64_t t = begin; t < end; ++t) {
        const double gap = trial(rng);
        ++r.trials;
        r.worst = std::max(r.worst, gap);
        if (!(gap <= tolerance)) ++r.failures;
      }
      return r;
    }));
  }
  SuiteResult total;
  for (auto& p : parts) {
    const SuiteResult r = p.get();
    total.trials += r.trials;
    total.failures += r.failures;
    total.worst = std::max(total.worst, r.worst);
  }
  return total;
}

}  // namespace

MatrixForm fs_curvature_tp2() {
  MatrixForm F(2);
  F[kDz1 | kDzb1] = kI * mat2(2, 0, 0, 1);
  F[kDz1 | kDzb2] = kI * mat2(0, 1, 0, 0);
  F[kDz2 | kDzb1] = kI * mat2(0, 0, 1, 0);
  F[kDz2 | kDzb2] = kI * mat2(1, 0, 0, 2);
  return F;
}

MatrixForm second_fund_form(Complex z1, Complex z2) {
  const SecondFundCoeffs c = second_fund_coeffs(z1, z2);
  MatrixForm A(3);
  for (int row = 0; row < 2; ++row) {
    A[kDzb1](row, 2) = c[row][0];
    A[kDzb2](row, 2) = c[row][1];
  }
  return A;
}

double second_fund_form_holomorphic_residual(double step) {
  double worst = 0.0;
  for (int b = 0; b < 2; ++b) {
    auto at = [&](Complex delta) {
      return b == 0 ? second_fund_coeffs(delta, 0.0) : second_fund_coeffs(0.0, delta);
    };
    const SecondFundCoeffs xp = at({step, 0.0}), xm = at({-step, 0.0});
    const SecondFundCoeffs yp = at({0.0, step}), ym = at({0.0, -step});
    for (int row = 0; row < 2; ++row) {
      for (int a = 0; a < 2; ++a) {
        const Complex dx = (xp[row][a] - xm[row][a]) / (2.0 * step);
        const Complex dy = (yp[row][a] - ym[row][a]) / (2.0 * step);
        worst = std::max(worst, std::abs(0.5 * (dx - kI * dy)));
      }
    }
  }
  return worst;
}

FlatnessReport extension_flatness_check(std::span<const double> xs) {
  const Complex origin{0.0, 0.0};
  const MatrixForm A = second_fund_form(origin, origin);
  const MatrixForm Astar = adjoint(A);
  const MatrixForm AAstar = diagonal_block(wedge(A, Astar), 0, 2);
  const MatrixForm AstarA = diagonal_block(wedge(Astar, A), 2, 1);
  const MatrixForm F_tp2 = fs_curvature_tp2();

  FlatnessReport rep{};
  rep.fs_shift_residual = (F_tp2 - kI * AAstar - 2.0 * kahler_form(2)).max_abs();
  const MatrixForm FS = F_tp2 - 3.0 * kahler_form(2);
  rep.sub_block_residual = (FS - kI * AAstar + kahler_form(2)).max_abs();
  rep.quotient_block_residual = (-kI * AstarA + kahler_form(1)).max_abs();
  rep.a_star_a_residual = (kI * AstarA - kahler_form(1)).max_abs();

  const MatrixForm zero(3);
  const MatrixForm F = block_curvature(FS, MatrixForm(1), A, zero, zero);
  rep.full_residual = (F + kahler_form(3)).max_abs();
  rep.holomorphic_residual = second_fund_form_holomorphic_residual(1e-5);

  const MatrixForm w = kahler_form(3);
  const MatrixForm F2 = wedge(F, F);
  const MatrixForm wF = wedge(w, F);
  const MatrixForm w2 = wedge(w, w);
  for (const double x : xs) {
    const MatrixForm lhs = -(1.0 + x) * Complex(1.0) * F2 + Complex(x * x) * wF + Complex(1.0 + x + x * x) * w2;
    rep.dhym_residuals.emplace_back(x, lhs.max_abs());
  }
  return rep;
}

IdentitySuites run_identity_suites(std::uint64_t seed, std::uint64_t trials, double tolerance) {
  IdentitySuites out;

  out.trace_quartic = run_suite(seed, 1, trials, tolerance, [](std::mt19937_64& rng) {
    std::uniform_int_distribution<int> rank(1, 4);
    const MatrixForm A = random_form(rng, rank(rng), 0, 1);
    const MatrixForm As = adjoint(A);
    const double scale = trace(wedge(wedge(As, A), wedge(As, A))).max_abs();
    return relative_gap(trace_quartic_residual(A), scale);
  });

  out.trace_swap = run_suite(seed, 2, trials, tolerance, [](std::mt19937_64& rng) {
    // D'A in the Hom(Q, S) block and D''A* in the Hom(S, Q) block of a 2 + 1 split.
    const MatrixForm P = random_block_form(rng, 3, 0, 2, 2, 1, 1, 1);
    const MatrixForm Q = random_block_form(rng, 3, 2, 1, 0, 2, 1, 1);
    const double scale = trace(wedge(P, Q)).max_abs();
    return relative_gap(trace_swap_residual(P, Q), scale);
  });

  out.subsol1 = run_suite(seed, 3, trials, tolerance, [](std::mt19937_64& rng) {
    const MatrixForm FS = random_form(rng, 2, 1, 1);
    const MatrixForm FQ = random_form(rng, 1, 1, 1);
    const MatrixForm A = random_block_form(rng, 3, 0, 2, 2, 1, 0, 1);
    const MatrixForm DpA = random_block_form(rng, 3, 0, 2, 2, 1, 1, 1);
    const MatrixForm DppAstar = random_block_form(rng, 3, 2, 1, 0, 2, 1, 1);
    const IdentityResidual r = subsol1_pointwise_identity(FS, FQ, A, DpA, DppAstar);
    return relative_gap(r.residual, std::abs(r.lhs) + std::abs(r.rhs));
  });

  out.cayley_hamilton = run_suite(seed, 4, trials, tolerance, [](std::mt19937_64& rng) {
    const MatrixForm F0 = random_form(rng, 2, 1, 1);
    return relative_gap(characteristic_solution_check(F0), wedge(F0, F0).max_abs());
  });

  out.corank1 = run_suite(seed, 5, trials, tolerance, [](std::mt19937_64& rng) {
    std::uniform_int_distribution<int> length(1, 6);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = length(rng);
    std::vector<Complex> x(n), y(n);
    for (auto& v : x) v = {normal(rng), normal(rng)};
    for (auto& v : y) v = {normal(rng), normal(rng)};
    const Corank1Identities c = corank1_identities(x, y);
    const double scale = c.value + std::abs(c.lagrange_rhs);
    // Failure if negative or off the Lagrange form.
    return std::max(relative_gap(-c.value, scale), relative_gap(std::abs(c.value - c.lagrange_rhs), scale));
  });

  // The claimed-identity gap is reported, never asserted; recompute it on its own stream.
  std::seed_seq seq{seed, std::uint64_t{6}};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::uint64_t probes = std::min<std::uint64_t>(trials, 1000);
  for (std::uint64_t t = 0; t < probes; ++t) {
    std::vector<Complex> x(3), y(3);
    for (auto& v : x) v = {normal(rng), normal(rng)};
    for (auto& v : y) v = {normal(rng), normal(rng)};
    const Corank1Identities c = corank1_identities(x, y);
    out.corank1_claimed_identity_worst_gap =
        std::max(out.corank1_claimed_identity_worst_gap, std::abs(c.value - c.claimed_rhs));
  }
  return out;
}

}  // namespace zcrit::pointform
