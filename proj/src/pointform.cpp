#include "zcrit/pointform.hpp"

#include "zcrit/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace zcrit::pointform {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_rank(const MatrixForm& a, const MatrixForm& b) {
  if (a.rank() != b.rank()) {
    throw DimensionMismatch("matrix form ranks differ: " + std::to_string(a.rank()) + " vs " +
                            std::to_string(b.rank()));
  }
}

// Parity of the permutation sorting a sequence of distinct basis indices.
int sorting_sign(const std::vector<int>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) inversions += seq[i] > seq[j];
  return inversions % 2 ? -1 : 1;
}

std::vector<int> indices(Monomial m) {
  std::vector<int> out;
  for (int b = 0; b < 4; ++b)
    if (m & (1u << b)) out.push_back(b);
  return out;
}

bool is_zero(const Matrix& m) { return m.isZero(0.0); }

}  // namespace

int degree(Monomial m) { return std::popcount(m); }
int holomorphic_degree(Monomial m) { return std::popcount(m & 3u); }
int antiholomorphic_degree(Monomial m) { return std::popcount(m & 12u); }

int wedge_sign(Monomial a, Monomial b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int j : indices(b)) inversions += std::popcount(a >> (j + 1));
  return inversions % 2 ? -1 : 1;
}

Monomial conjugate(Monomial m) { return ((m & 3u) << 2) | ((m >> 2) & 3u); }

int conjugate_sign(Monomial m) {
  std::vector<int> seq;
  for (int b : indices(m)) seq.push_back(b < 2 ? b + 2 : b - 2);
  return sorting_sign(seq);
}

MatrixForm::MatrixForm(int rank) : rank_(rank) {
  if (rank < 1) throw RankViolation("matrix form rank must be positive");
  for (auto& c : components_) c = Matrix::Zero(rank, rank);
}

MatrixForm MatrixForm::monomial(Monomial m, const Matrix& coeff) {
  if (coeff.rows() != coeff.cols()) throw DimensionMismatch("coefficient matrix must be square");
  MatrixForm f(static_cast<int>(coeff.rows()));
  f[m] = coeff;
  return f;
}

MatrixForm MatrixForm::scalar(Monomial m, Complex value) {
  MatrixForm f(1);
  f[m](0, 0) = value;
  return f;
}

MatrixForm MatrixForm::identity(int rank) {
  MatrixForm f(rank);
  f[0] = Matrix::Identity(rank, rank);
  return f;
}

MatrixForm MatrixForm::part(int deg) const {
  MatrixForm out(rank_);
  for (Monomial m = 0; m < kMonomials; ++m)
    if (degree(m) == deg) out[m] = components_[m];
  return out;
}

MatrixForm MatrixForm::part(int p, int q) const {
  MatrixForm out(rank_);
  for (Monomial m = 0; m < kMonomials; ++m)
    if (holomorphic_degree(m) == p && antiholomorphic_degree(m) == q) out[m] = components_[m];
  return out;
}

double MatrixForm::off_type(int p, int q) const {
  double worst = 0.0;
  for (Monomial m = 0; m < kMonomials; ++m) {
    if (holomorphic_degree(m) == p && antiholomorphic_degree(m) == q) continue;
    worst = std::max(worst, components_[m].cwiseAbs().maxCoeff());
  }
  return worst;
}

double MatrixForm::max_abs() const {
  double worst = 0.0;
  for (const auto& c : components_) worst = std::max(worst, c.cwiseAbs().maxCoeff());
  return worst;
}

MatrixForm& MatrixForm::operator+=(const MatrixForm& o) {
  require_same_rank(*this, o);
  for (Monomial m = 0; m < kMonomials; ++m) components_[m] += o.components_[m];
  return *this;
}

MatrixForm& MatrixForm::operator-=(const MatrixForm& o) {
  require_same_rank(*this, o);
  for (Monomial m = 0; m < kMonomials; ++m) components_[m] -= o.components_[m];
  return *this;
}

MatrixForm& MatrixForm::operator*=(Complex t) {
  for (auto& c : components_) c *= t;
  return *this;
}

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
  require_same_rank(a, b);
  MatrixForm out(a.rank());
  for (Monomial ma = 0; ma < kMonomials; ++ma) {
    if (is_zero(a[ma])) continue;
    for (Monomial mb = 0; mb < kMonomials; ++mb) {
      const int s = wedge_sign(ma, mb);
      if (s == 0 || is_zero(b[mb])) continue;
      out[ma | mb].noalias() += static_cast<double>(s) * (a[ma] * b[mb]);
    }
  }
  return out;
}

MatrixForm sym_wedge(std::span<const MatrixForm> forms) {
  if (forms.empty()) throw DimensionMismatch("sym_wedge needs at least one argument");
  const int rank = forms.front().rank();
  for (const auto& f : forms) require_same_rank(forms.front(), f);

  // Homogeneous parts of each argument, with their degrees.
  std::vector<std::vector<std::pair<int, MatrixForm>>> parts(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (int d = 0; d <= 4; ++d) {
      MatrixForm p = forms[i].part(d);
      if (p.max_abs() > 0.0) parts[i].emplace_back(d, std::move(p));
    }
  }

  const std::size_t n = forms.size();
  std::vector<std::size_t> perm(n);
  double count = 0.0;
  {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do count += 1.0;
    while (std::next_permutation(perm.begin(), perm.end()));
  }

  MatrixForm out(rank);
  std::vector<std::size_t> choice(n, 0);
  for (const auto& p : parts)
    if (p.empty()) return out;
  while (true) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      int sign = 1;
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
          if (perm[s] > perm[t] && (parts[perm[s]][choice[perm[s]]].first * parts[perm[t]][choice[perm[t]]].first) % 2)
            sign = -sign;
      MatrixForm term = parts[perm[0]][choice[perm[0]]].second;
      for (std::size_t s = 1; s < n; ++s) term = wedge(term, parts[perm[s]][choice[perm[s]]].second);
      out += Complex(sign / count) * term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::size_t k = 0;
    while (k < n && ++choice[k] == parts[k].size()) choice[k++] = 0;
    if (k == n) break;
  }
  return out;
}

MatrixForm adjoint(const MatrixForm& a) {
  MatrixForm out(a.rank());
  for (Monomial m = 0; m < kMonomials; ++m) {
    if (is_zero(a[m])) continue;
    out[conjugate(m)] += static_cast<double>(conjugate_sign(m)) * a[m].adjoint();
  }
  return out;
}

MatrixForm trace(const MatrixForm& a) {
  MatrixForm out(1);
  for (Monomial m = 0; m < kMonomials; ++m) out[m](0, 0) = a[m].trace();
  return out;
}

MatrixForm tensor(const MatrixForm& scalar_form, const Matrix& mat) {
  if (scalar_form.rank() != 1) throw DimensionMismatch("tensor expects a scalar form");
  MatrixForm out(static_cast<int>(mat.rows()));
  for (Monomial m = 0; m < kMonomials; ++m) out[m] = scalar_form[m](0, 0) * mat;
  return out;
}

MatrixForm times_identity(const MatrixForm& scalar_form, int rank) {
  return tensor(scalar_form, Matrix::Identity(rank, rank));
}

MatrixForm embed_diagonal(const MatrixForm& block, int offset, int total) {
  if (offset < 0 || offset + block.rank() > total) throw DimensionMismatch("block does not fit");
  MatrixForm out(total);
  for (Monomial m = 0; m < kMonomials; ++m) out[m].block(offset, offset, block.rank(), block.rank()) = block[m];
  return out;
}

MatrixForm diagonal_block(const MatrixForm& a, int offset, int size) {
  if (offset < 0 || offset + size > a.rank()) throw DimensionMismatch("block out of range");
  MatrixForm out(size);
  for (Monomial m = 0; m < kMonomials; ++m) out[m] = a[m].block(offset, offset, size, size);
  return out;
}

double outside_block(const MatrixForm& a, int r0, int nr, int c0, int nc) {
  double worst = 0.0;
  for (Monomial m = 0; m < kMonomials; ++m) {
    for (int i = 0; i < a.rank(); ++i) {
      for (int j = 0; j < a.rank(); ++j) {
        const bool inside = i >= r0 && i < r0 + nr && j >= c0 && j < c0 + nc;
        if (!inside) worst = std::max(worst, std::abs(a[m](i, j)));
      }
    }
  }
  return worst;
}

Matrix top_coefficient(const MatrixForm& a) { return a[kTop]; }

Complex top_scalar(const MatrixForm& a) {
  if (a.rank() != 1) throw DimensionMismatch("top_scalar expects a scalar form");
  return a[kTop](0, 0);
}

MatrixForm kahler_form(int rank) {
  MatrixForm w(rank);
  w[kDz1 | kDzb1] = kI * Matrix::Identity(rank, rank);
  w[kDz2 | kDzb2] = kI * Matrix::Identity(rank, rank);
  return w;
}

MatrixForm block_curvature(const MatrixForm& FS, const MatrixForm& FQ, const MatrixForm& A,
                           const MatrixForm& DpA, const MatrixForm& DppAstar) {
  const int s = FS.rank();
  const int q = FQ.rank();
  const int n = s + q;
  for (const MatrixForm* f : {&A, &DpA, &DppAstar}) {
    if (f->rank() != n) throw DimensionMismatch("off-diagonal inputs must have rank rank(FS) + rank(FQ)");
  }
  if (outside_block(A, 0, s, s, q) > 0.0 || outside_block(DpA, 0, s, s, q) > 0.0) {
    throw TypeViolation("A and D'A must be supported in the Hom(Q, S) block");
  }
  if (outside_block(DppAstar, s, q, 0, s) > 0.0) {
    throw TypeViolation("D''A* must be supported in the Hom(S, Q) block");
  }
  const MatrixForm Astar = adjoint(A);
  MatrixForm out = embed_diagonal(FS, 0, n) + embed_diagonal(FQ, s, n);
  out -= kI * wedge(A, Astar);
  out -= kI * wedge(Astar, A);
  out += kI * DpA;
  out -= kI * DppAstar;
  return out;
}

IdentityResidual subsol1_pointwise_identity(const MatrixForm& FS, const MatrixForm& FQ, const MatrixForm& A,
                                            const MatrixForm& DpA, const MatrixForm& DppAstar) {
  const int n = FS.rank() + FQ.rank();
  const MatrixForm F = block_curvature(FS, FQ, A, DpA, DppAstar);
  const MatrixForm Astar = adjoint(A);
  const MatrixForm AstarA = wedge(Astar, A);
  const MatrixForm AAstar = wedge(A, Astar);

  const Complex lhs = kI * top_scalar(trace(wedge(AstarA, F) + wedge(wedge(Astar, F), A)));
  const MatrixForm FSe = embed_diagonal(FS, 0, n);
  const MatrixForm FQe = embed_diagonal(FQ, FS.rank(), n);
  const Complex rhs = kI * top_scalar(trace(wedge(FQe, AstarA))) - kI * top_scalar(trace(wedge(FSe, AAstar))) -
                      2.0 * kI * kI * top_scalar(trace(wedge(AstarA, AstarA)));
  return {lhs, rhs, std::abs(lhs - rhs)};
}

double trace_quartic_residual(const MatrixForm& A) {
  const MatrixForm Astar = adjoint(A);
  const MatrixForm AstarA = wedge(Astar, A);
  const MatrixForm AAstar = wedge(A, Astar);
  return std::abs(top_scalar(trace(wedge(AstarA, AstarA) + wedge(AAstar, AAstar))));
}

double trace_swap_residual(const MatrixForm& P, const MatrixForm& Q) {
  return std::abs(top_scalar(trace(wedge(P, Q) - wedge(Q, P))));
}

double corank1_inequality(std::span<const Complex> x, std::span<const Complex> y) {
  return corank1_identities(x, y).value;
}

Corank1Identities corank1_identities(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw DimensionMismatch("corank-1 vectors must have equal length");
  const std::size_t n = x.size();
  Corank1Identities out{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.value += std::norm(x[i]) * std::norm(y[j]) - (std::conj(x[i]) * y[i] * x[j] * std::conj(y[j])).real();
      if (i != j) out.claimed_rhs += std::norm(std::conj(x[i]) * y[i] - x[j] * std::conj(y[j]));
      if (i < j) out.lagrange_rhs += std::norm(x[i] * y[j] - x[j] * y[i]);
    }
  }
  return out;
}

double characteristic_solution_check(const MatrixForm& F0) {
  if (F0.rank() != 2) throw DimensionMismatch("characteristic check is for rank 2");
  if (F0.off_type(1, 1) > 0.0) throw TypeViolation("F0 must be of type (1,1)");
  const MatrixForm tr = trace(F0);
  const MatrixForm det = 0.5 * (wedge(tr, tr) - trace(wedge(F0, F0)));
  const MatrixForm residual = wedge(F0, F0) - wedge(times_identity(tr, 2), F0) + times_identity(det, 2);
  return residual.max_abs();
}

Complex positivity_form(const MatrixForm& R, const MatrixForm& xi) {
  const MatrixForm xs = adjoint(xi);
  return kI * top_scalar(trace(wedge(wedge(xs, xi), R) + wedge(wedge(xs, R), xi)));
}

PositivityGram positivity_gram(const MatrixForm& R) {
  if (R.off_type(1, 1) > 1e-12 * (1.0 + R.max_abs())) throw TypeViolation("R must be of type (1,1)");
  const int r = R.rank();
  const int n = 2 * r * r;
  auto basis = [&](int idx) {
    const int a = idx / (r * r);
    const int ij = idx % (r * r);
    Matrix e = Matrix::Zero(r, r);
    e(ij / r, ij % r) = 1.0;
    return MatrixForm::monomial(a == 0 ? kDzb1 : kDzb2, e);
  };
  std::vector<MatrixForm> e;
  for (int i = 0; i < n; ++i) e.push_back(basis(i));

  Matrix g(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      const Complex plus = positivity_form(R, e[m] + e[k]);
      const Complex minus = positivity_form(R, e[m] - e[k]);
      const Complex iplus = positivity_form(R, e[m] + kI * e[k]);
      const Complex iminus = positivity_form(R, e[m] - kI * e[k]);
      g(m, k) = 0.25 * (plus - minus - kI * iplus + kI * iminus);
    }
  }
  const double defect = (g - g.adjoint()).cwiseAbs().maxCoeff();
  const Matrix herm = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return {g, solver.eigenvalues().minCoeff(), defect};
}

MatrixForm random_form(std::mt19937_64& rng, int rank, int p, int q) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixForm out(rank);
  for (Monomial m = 0; m < kMonomials; ++m) {
    if (holomorphic_degree(m) != p || antiholomorphic_degree(m) != q) continue;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        out[m](i, j) = Complex(re, im);
      }
  }
  return out;
}

MatrixForm random_block_form(std::mt19937_64& rng, int total, int r0, int nr, int c0, int nc, int p, int q) {
  const MatrixForm full = random_form(rng, total, p, q);
  MatrixForm out(total);
  for (Monomial m = 0; m < kMonomials; ++m) out[m].block(r0, c0, nr, nc) = full[m].block(r0, c0, nr, nc);
  return out;
}

}  // namespace zcrit::pointform
