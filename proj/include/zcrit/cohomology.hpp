#pragma once

#include "zcrit/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zcrit {

// A (1,1)-class as a coefficient vector in the basis of its surface.
class CohClass {
 public:
  CohClass() = default;
  explicit CohClass(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}
  CohClass(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) {}

  static CohClass zero(std::size_t dim) { return CohClass(std::vector<Rational>(dim)); }
  static CohClass unit(std::size_t dim, std::size_t index);

  std::size_t dim() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  std::span<const Rational> coeffs() const { return coeffs_; }
  bool is_zero() const;

  CohClass& operator+=(const CohClass& other);
  CohClass& operator-=(const CohClass& other);
  CohClass& operator*=(const Rational& t);

  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator-(CohClass a) { return a *= Rational(-1); }
  friend CohClass operator*(const Rational& t, CohClass a) { return a *= t; }
  friend CohClass operator*(CohClass a, const Rational& t) { return a *= t; }
  friend bool operator==(const CohClass&, const CohClass&) = default;

 private:
  std::vector<Rational> coeffs_;
};

// Chern character (rank, ch1, ch2) of a sheaf on the surface.
class SheafChern {
 public:
  SheafChern(long rank, CohClass ch1, Rational ch2);

  long rank() const { return rank_; }
  const CohClass& ch1() const { return ch1_; }
  const Rational& ch2() const { return ch2_; }

  friend bool operator==(const SheafChern&, const SheafChern&) = default;

 private:
  long rank_;
  CohClass ch1_;
  Rational ch2_;
};

// A sheaf restricted to a curve: rank and degree. Degrees are inputs, never derived.
class CurveSheaf {
 public:
  CurveSheaf(long rank, Rational degree);

  long rank() const { return rank_; }
  const Rational& degree() const { return degree_; }

  friend bool operator==(const CurveSheaf&, const CurveSheaf&) = default;

 private:
  long rank_;
  Rational degree_;
};

struct TestCurve {
  std::string label;
  CohClass cls;
};

struct SurfaceSpec {
  std::vector<std::string> basis_labels;
  std::vector<std::vector<Rational>> intersection;
  CohClass kahler;
  CohClass canonical_c1;
  Rational chi_O;
  std::vector<TestCurve> test_curves;
  // True when the test curves generate the cone of curves, so the curve oracle is complete.
  bool curves_exhaustive = false;
};

// Validated intersection data of a compact Kähler surface.
class SurfaceData {
 public:
  explicit SurfaceData(SurfaceSpec spec);

  std::size_t dim() const { return spec_.basis_labels.size(); }
  const std::vector<std::string>& basis_labels() const { return spec_.basis_labels; }
  const std::vector<std::vector<Rational>>& intersection() const { return spec_.intersection; }
  const CohClass& kahler() const { return spec_.kahler; }
  const CohClass& canonical_c1() const { return spec_.canonical_c1; }
  const Rational& chi_O() const { return spec_.chi_O; }
  const std::vector<TestCurve>& test_curves() const { return spec_.test_curves; }
  bool curves_exhaustive() const { return spec_.curves_exhaustive; }
  const SurfaceSpec& spec() const { return spec_; }

  // Same surface with a different Kähler class (revalidated).
  SurfaceData with_kahler(CohClass kahler) const;
  // Basis class by label, e.g. "H".
  std::optional<CohClass> basis_class(std::string_view label) const;

 private:
  SurfaceSpec spec_;
};

Rational intersect(const CohClass& a, const CohClass& b, const SurfaceData& X);
Rational euler_characteristic(const SheafChern& E, const SurfaceData& X);
SheafChern twist(const SheafChern& E, const CohClass& L, const Rational& k, const SurfaceData& X);
SheafChern sum(const SheafChern& E, const SheafChern& F);

// The trivial bundle and the line bundle with first Chern class L.
SheafChern structure_sheaf(const SurfaceData& X);
SheafChern line_bundle(const CohClass& L, const SurfaceData& X);

enum class Positivity { Positive, NotPositive, Unknown };

struct CurvePairing {
  std::string label;
  Rational value;
};

struct NakaiVerdict {
  Positivity verdict;
  Rational self_intersection;
  Rational kahler_pairing;
  std::vector<CurvePairing> curves;
};

struct NakaiOptions {
  // Report Unknown instead of Positive when the curve list is not known to be complete.
  bool strict = false;
};

NakaiVerdict nakai_positive(const CohClass& a, const SurfaceData& X, NakaiOptions options = {});

namespace presets {
// Projective plane: basis H, H·H = 1, c1 = 3H, chi(O) = 1, curve H, Kähler class H.
SurfaceData projective_plane();
// Blow-up of the plane at a point: basis H, E1, diag(1, -1), c1 = 3H - E1,
// curves H, E1, H - E1. Default Kähler class 3H - E1.
SurfaceData blowup_plane();
SurfaceData blowup_plane(CohClass kahler);
std::optional<SurfaceData> by_name(std::string_view name);
std::vector<std::string> names();
}  // namespace presets

const char* to_string(Positivity p);

}  // namespace zcrit
