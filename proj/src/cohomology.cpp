#include "zcrit/cohomology.hpp"

#include "zcrit/errors.hpp"

#include <algorithm>

namespace zcrit {
namespace {

void require_same_dim(const CohClass& a, const CohClass& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("class sizes differ: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

void require_sized(const CohClass& a, const SurfaceData& X, const char* what) {
  if (a.dim() != X.dim()) {
    throw DimensionMismatch(std::string(what) + " has " + std::to_string(a.dim()) +
                            " coefficients, surface lattice has rank " + std::to_string(X.dim()));
  }
}

}  // namespace

CohClass CohClass::unit(std::size_t dim, std::size_t index) {
  CohClass c = zero(dim);
  c.coeffs_.at(index) = 1;
  return c;
}

bool CohClass::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

CohClass& CohClass::operator+=(const CohClass& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CohClass& CohClass::operator-=(const CohClass& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CohClass& CohClass::operator*=(const Rational& t) {
  for (auto& c : coeffs_) c *= t;
  return *this;
}

SheafChern::SheafChern(long rank, CohClass ch1, Rational ch2)
    : rank_(rank), ch1_(std::move(ch1)), ch2_(std::move(ch2)) {
  if (rank_ < 1) throw RankViolation("sheaf rank must be at least 1, got " + std::to_string(rank_));
}

CurveSheaf::CurveSheaf(long rank, Rational degree) : rank_(rank), degree_(std::move(degree)) {
  if (rank_ < 1) throw RankViolation("curve sheaf rank must be at least 1, got " + std::to_string(rank_));
}

SurfaceData::SurfaceData(SurfaceSpec spec) : spec_(std::move(spec)) {
  const std::size_t n = spec_.basis_labels.size();
  if (n == 0) throw InvalidSurface("surface needs at least one basis class");
  if (spec_.intersection.size() != n) throw InvalidSurface("intersection matrix has wrong number of rows");
  for (const auto& row : spec_.intersection) {
    if (row.size() != n) throw InvalidSurface("intersection matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (spec_.intersection[i][j] != spec_.intersection[j][i]) {
        throw InvalidSurface("intersection matrix is not symmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
    }
  }
  require_sized(spec_.kahler, *this, "kahler class");
  require_sized(spec_.canonical_c1, *this, "c1(X)");
  if (intersect(spec_.kahler, spec_.kahler, *this) <= 0) {
    throw InvalidSurface("kahler class must have positive self-intersection");
  }
  for (const auto& curve : spec_.test_curves) {
    require_sized(curve.cls, *this, "test curve");
    if (intersect(spec_.kahler, curve.cls, *this) <= 0) {
      throw InvalidSurface("kahler class must be positive on test curve " + curve.label);
    }
  }
}

SurfaceData SurfaceData::with_kahler(CohClass kahler) const {
  SurfaceSpec spec = spec_;
  spec.kahler = std::move(kahler);
  return SurfaceData(std::move(spec));
}

std::optional<CohClass> SurfaceData::basis_class(std::string_view label) const {
  auto it = std::find(spec_.basis_labels.begin(), spec_.basis_labels.end(), label);
  if (it == spec_.basis_labels.end()) return std::nullopt;
  return CohClass::unit(dim(), static_cast<std::size_t>(it - spec_.basis_labels.begin()));
}

Rational intersect(const CohClass& a, const CohClass& b, const SurfaceData& X) {
  require_sized(a, X, "left class");
  require_sized(b, X, "right class");
  const auto& m = X.intersection();
  Rational total = 0;
  for (std::size_t i = 0; i < X.dim(); ++i) {
    if (a[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < X.dim(); ++j) row += m[i][j] * b[j];
    total += a[i] * row;
  }
  return total;
}

Rational euler_characteristic(const SheafChern& E, const SurfaceData& X) {
  return Rational(E.rank()) * X.chi_O() + intersect(E.ch1(), X.canonical_c1(), X) / 2 + E.ch2();
}

SheafChern twist(const SheafChern& E, const CohClass& L, const Rational& k, const SurfaceData& X) {
  const Rational r(E.rank());
  CohClass ch1 = E.ch1() + (r * k) * L;
  Rational ch2 = E.ch2() + k * intersect(L, E.ch1(), X) + r * k * k * intersect(L, L, X) / 2;
  return SheafChern(E.rank(), std::move(ch1), std::move(ch2));
}

SheafChern sum(const SheafChern& E, const SheafChern& F) {
  return SheafChern(E.rank() + F.rank(), E.ch1() + F.ch1(), E.ch2() + F.ch2());
}

SheafChern structure_sheaf(const SurfaceData& X) { return SheafChern(1, CohClass::zero(X.dim()), 0); }

SheafChern line_bundle(const CohClass& L, const SurfaceData& X) {
  return SheafChern(1, L, intersect(L, L, X) / 2);
}

NakaiVerdict nakai_positive(const CohClass& a, const SurfaceData& X, NakaiOptions options) {
  NakaiVerdict out{Positivity::Positive, intersect(a, a, X), intersect(a, X.kahler(), X), {}};
  bool pass = out.self_intersection > 0 && out.kahler_pairing > 0;
  for (const auto& curve : X.test_curves()) {
    Rational v = intersect(a, curve.cls, X);
    pass = pass && v > 0;
    out.curves.push_back({curve.label, std::move(v)});
  }
  if (!pass) {
    out.verdict = Positivity::NotPositive;
  } else if (options.strict && !X.curves_exhaustive()) {
    out.verdict = Positivity::Unknown;
  }
  return out;
}

const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::Positive: return "Positive";
    case Positivity::NotPositive: return "NotPositive";
    case Positivity::Unknown: return "Unknown";
  }
  return "?";
}

namespace presets {

SurfaceData projective_plane() {
  SurfaceSpec s;
  s.basis_labels = {"H"};
  s.intersection = {{Rational(1)}};
  s.kahler = CohClass{1};
  s.canonical_c1 = CohClass{3};
  s.chi_O = 1;
  s.test_curves = {{"H", CohClass{1}}};
  // Every curve is a positive multiple of H.
  s.curves_exhaustive = true;
  return SurfaceData(std::move(s));
}

SurfaceData blowup_plane() { return blowup_plane(CohClass{3, -1}); }

SurfaceData blowup_plane(CohClass kahler) {
  SurfaceSpec s;
  s.basis_labels = {"H", "E1"};
  s.intersection = {{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}};
  s.kahler = std::move(kahler);
  s.canonical_c1 = CohClass{3, -1};
  s.chi_O = 1;
  s.test_curves = {{"H", CohClass{1, 0}}, {"E1", CohClass{0, 1}}, {"H-E1", CohClass{1, -1}}};
  // E1 and H - E1 span the cone of curves.
  s.curves_exhaustive = true;
  return SurfaceData(std::move(s));
}

std::optional<SurfaceData> by_name(std::string_view name) {
  if (name == "P2") return projective_plane();
  if (name == "BlowupP2") return blowup_plane();
  return std::nullopt;
}

std::vector<std::string> names() { return {"P2", "BlowupP2"}; }

}  // namespace presets
}  // namespace zcrit
