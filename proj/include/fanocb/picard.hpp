// Picard lattice of Y = P(O + O(2m) + O(2m)) over P^{3m}.
//
// Pic(Y) is free of rank 2 with ordered basis (D, H): D is the tautological
// class O_Y(1) (hyperplane/quotient convention) and H is the pullback of a
// hyperplane of the base. Curve classes are stored by their intersection
// numbers with D and H.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fanocb {

/// Raised when a construction parameter or input is outside its domain.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ConstructionParams {
public:
  static constexpr std::int64_t kMaxM = 100000;

  /// Throws InvalidArgument unless 2 <= m <= kMaxM.
  explicit ConstructionParams(std::int64_t m);

  std::int64_t m() const { return m_; }
  std::int64_t n_base() const { return 3 * m_; }
  std::int64_t dim_Y() const { return 3 * m_ + 2; }
  std::int64_t fiber_twist() const { return 2 * m_; }

  friend bool operator==(const ConstructionParams&, const ConstructionParams&) = default;

private:
  std::int64_t m_;
};

/// The class a*D + b*H.
struct DivisorClassY {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend DivisorClassY operator+(DivisorClassY x, DivisorClassY y) { return {x.a + y.a, x.b + y.b}; }
  friend DivisorClassY operator-(DivisorClassY x, DivisorClassY y) { return {x.a - y.a, x.b - y.b}; }
  friend DivisorClassY operator-(DivisorClassY x) { return {-x.a, -x.b}; }
  friend DivisorClassY operator*(std::int64_t k, DivisorClassY x) { return {k * x.a, k * x.b}; }
  DivisorClassY& operator+=(DivisorClassY o) { a += o.a; b += o.b; return *this; }

  friend auto operator<=>(const DivisorClassY&, const DivisorClassY&) = default;

  bool is_zero() const { return a == 0 && b == 0; }
};

inline constexpr DivisorClassY kD{1, 0};
inline constexpr DivisorClassY kH{0, 1};

/// A curve class, recorded as (D.C, H.C).
struct CurveClassY {
  std::int64_t d_D = 0;
  std::int64_t d_H = 0;
  friend auto operator<=>(const CurveClassY&, const CurveClassY&) = default;
};

/// A line in a fibre of Y -> P^{3m}.
inline constexpr CurveClassY kEllFiber{1, 0};
/// A line in the section V, along which D is trivial.
inline constexpr CurveClassY kEllV{0, 1};

std::int64_t pair(DivisorClassY div, CurveClassY curve);

DivisorClassY antiK_Y(const ConstructionParams& params);

/// D, H, G (= D - 2mH), Delta (discriminant), M (conic twist).
std::map<std::string, DivisorClassY> standard_classes(const ConstructionParams& params);

/// Canonical form "aD+bH" / "aD-bH", always with both coefficients.
std::string to_string(DivisorClassY c);

/// Parses sums of signed terms "[coeff]D" / "[coeff]H"; throws InvalidArgument.
DivisorClassY parse_divisor_class(std::string_view text);

}  // namespace fanocb
