#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace zcrit::pointform {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Monomials are bitmasks over the basis 1-forms in canonical order dz1 < dz2 < dzb1 < dzb2.
using Monomial = unsigned;
inline constexpr Monomial kDz1 = 1u;
inline constexpr Monomial kDz2 = 2u;
inline constexpr Monomial kDzb1 = 4u;
inline constexpr Monomial kDzb2 = 8u;
inline constexpr Monomial kTop = 15u;
inline constexpr std::size_t kMonomials = 16;

int degree(Monomial m);
int holomorphic_degree(Monomial m);
int antiholomorphic_degree(Monomial m);
// Sign of a∧b after reordering into canonical order; 0 when the monomials overlap.
int wedge_sign(Monomial a, Monomial b);
// Complex conjugate monomial (dz <-> dzb) and the sign of reordering it canonically.
Monomial conjugate(Monomial m);
int conjugate_sign(Monomial m);

// Exterior-algebra element at a point of C^2 with r x r complex matrix coefficients.
class MatrixForm {
 public:
  explicit MatrixForm(int rank = 1);

  static MatrixForm monomial(Monomial m, const Matrix& coeff);
  static MatrixForm scalar(Monomial m, Complex value);
  static MatrixForm identity(int rank);

  int rank() const { return rank_; }
  const Matrix& operator[](Monomial m) const { return components_.at(m); }
  Matrix& operator[](Monomial m) { return components_.at(m); }

  // Homogeneous parts; components of other degrees are dropped.
  MatrixForm part(int deg) const;
  MatrixForm part(int p, int q) const;
  // Largest entry modulus outside bidegree (p, q).
  double off_type(int p, int q) const;
  double max_abs() const;

  MatrixForm& operator+=(const MatrixForm& o);
  MatrixForm& operator-=(const MatrixForm& o);
  MatrixForm& operator*=(Complex t);

  friend MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }
  friend MatrixForm operator-(MatrixForm a, const MatrixForm& b) { return a -= b; }
  friend MatrixForm operator-(MatrixForm a) { return a *= Complex(-1.0); }
  friend MatrixForm operator*(Complex t, MatrixForm a) { return a *= t; }
  friend MatrixForm operator*(MatrixForm a, Complex t) { return a *= t; }

 private:
  int rank_;
  std::array<Matrix, kMonomials> components_;
};

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);
// Average over all orderings with the graded (Koszul) sign; inhomogeneous arguments are
// expanded into homogeneous parts first.
MatrixForm sym_wedge(std::span<const MatrixForm> forms);
// (eta (x) M)* = conj(eta) (x) M^dagger.
MatrixForm adjoint(const MatrixForm& a);
MatrixForm trace(const MatrixForm& a);

// Scalar form (rank 1) times a constant matrix.
MatrixForm tensor(const MatrixForm& scalar_form, const Matrix& m);
// Scalar form times the rank-r identity.
MatrixForm times_identity(const MatrixForm& scalar_form, int rank);
// Places a square form as the diagonal block starting at offset inside rank total.
MatrixForm embed_diagonal(const MatrixForm& block, int offset, int total);
// The square diagonal block of the given size starting at offset.
MatrixForm diagonal_block(const MatrixForm& a, int offset, int size);
// Largest entry modulus outside the rectangle rows [r0, r0+nr) x cols [c0, c0+nc).
double outside_block(const MatrixForm& a, int r0, int nr, int c0, int nc);

// Coefficient of the canonical top monomial dz1^dz2^dzb1^dzb2, which equals omega^2 / 2.
Matrix top_coefficient(const MatrixForm& a);
Complex top_scalar(const MatrixForm& a);

// omega = i (dz1^dzb1 + dz2^dzb2) (x) 1, units with 2 pi = 1.
MatrixForm kahler_form(int rank);

// Curvature of the Fubini-Study metric on the tangent bundle of P^2 at the origin of the first chart.
MatrixForm fs_curvature_tp2();

// Second fundamental form of the rank 2 sub-bundle in the rank 3 Example bundle, as the
// Hom(O, S) block of a rank 3 form (S occupies indices 0, 1 and O index 2).
MatrixForm second_fund_form(Complex z1, Complex z2);

// Largest |d/dz^b| of the coefficient functions of second_fund_form at the origin,
// from central differences with the given step.
double second_fund_form_holomorphic_residual(double step);

// Block curvature [[FS - i A^A*, i D'A], [-i D''A*, FQ - i A*^A]]. A and DpA live in the
// upper-right block, DppAstar in the lower-left block of a rank rank(FS) + rank(FQ) form.
MatrixForm block_curvature(const MatrixForm& FS, const MatrixForm& FQ, const MatrixForm& A,
                           const MatrixForm& DpA, const MatrixForm& DppAstar);

struct IdentityResidual {
  Complex lhs;
  Complex rhs;
  double residual;
};

// Pairing of the block curvature against xi = A, compared with
// i Tr(FQ^A*^A) - i Tr(FS^A^A*) - 2 i^2 Tr((A*^A)^2).
IdentityResidual subsol1_pointwise_identity(const MatrixForm& FS, const MatrixForm& FQ, const MatrixForm& A,
                                            const MatrixForm& DpA, const MatrixForm& DppAstar);

// |Tr((A*^A)^2) + Tr((A^A*)^2)| for a (0,1)-form A.
double trace_quartic_residual(const MatrixForm& A);
// |Tr(P^Q) - Tr(Q^P)| for (1,1)-forms P, Q.
double trace_swap_residual(const MatrixForm& P, const MatrixForm& Q);

// sum |x_i|^2 |y_j|^2 - sum conj(x_i) y_i x_j conj(y_j); nonnegative by Cauchy-Schwarz.
double corank1_inequality(std::span<const Complex> x, std::span<const Complex> y);

struct Corank1Identities {
  double value;          // corank1_inequality(x, y)
  double claimed_rhs;    // sum_{i != j} |conj(x_i) y_i - x_j conj(y_j)|^2
  double lagrange_rhs;   // sum_{i < j} |x_i y_j - x_j y_i|^2
};
Corank1Identities corank1_identities(std::span<const Complex> x, std::span<const Complex> y);

// Max entry of F0^2 - Tr(F0)^F0 + det(F0) (x) 1, det = (Tr(F0)^2 - Tr(F0^2)) / 2, for rank 2.
double characteristic_solution_check(const MatrixForm& F0);

struct PositivityGram {
  Matrix gram;
  double min_eigenvalue;
  double hermitian_defect;
};

// Q(xi) = top coefficient of i Tr[xi*^xi^R + xi*^R^xi] for xi = U dzb1 + V dzb2.
Complex positivity_form(const MatrixForm& R, const MatrixForm& xi);
// Gram matrix of Q on the basis dzb^a (x) E_ij (index a r^2 + i r + j), by polarization.
PositivityGram positivity_gram(const MatrixForm& R);

struct FlatnessReport {
  double fs_shift_residual;       // F_TP2 - i A^A* against 2 omega on the S block
  double sub_block_residual;      // F_S - i A^A* against -omega
  double quotient_block_residual; // -i A*^A against -omega
  double full_residual;           // assembled curvature against -omega (x) 1
  double a_star_a_residual;       // i A*^A against omega on the O block
  double holomorphic_residual;    // finite-difference derivative of A at the origin
  std::vector<std::pair<double, double>> dhym_residuals;  // (x, residual of the rank 3 equation)
};

FlatnessReport extension_flatness_check(std::span<const double> xs);

// Random pure (p,q)-form with standard normal real and imaginary parts.
MatrixForm random_form(std::mt19937_64& rng, int rank, int p, int q);
// Random (p,q)-form supported in the given rectangular block of a rank total form.
MatrixForm random_block_form(std::mt19937_64& rng, int total, int r0, int nr, int c0, int nc, int p, int q);

struct SuiteResult {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double worst = 0.0;
};

struct IdentitySuites {
  SuiteResult trace_quartic;
  SuiteResult trace_swap;
  SuiteResult subsol1;
  SuiteResult cayley_hamilton;
  SuiteResult corank1;
  double corank1_claimed_identity_worst_gap = 0.0;
};

IdentitySuites run_identity_suites(std::uint64_t seed, std::uint64_t trials, double tolerance);

}  // namespace zcrit::pointform
