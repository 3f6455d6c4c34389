// The conic bundle X in Z = P_Y(E), E = O(D)^2 + O(D + mH), and the
// certificate assembling every class-level identity of the construction.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "fanocb/chow.hpp"
#include "fanocb/cones.hpp"
#include "fanocb/coxring.hpp"
#include "fanocb/picard.hpp"
#include "json.hpp"

namespace fanocb {

/// Integer multiple of the hyperplane class on P^n.
struct ClassOnP {
  std::int64_t h = 0;
  friend ClassOnP operator-(ClassOnP x, ClassOnP y) { return {x.h - y.h}; }
  friend auto operator<=>(const ClassOnP&, const ClassOnP&) = default;
};

/// xi * (tautological class) + pullback of a base class.
template <class Base>
struct TotalSpaceClass {
  std::int64_t xi = 0;
  Base base{};
  friend auto operator<=>(const TotalSpaceClass&, const TotalSpaceClass&) = default;
};

class SplitBundleOnY {
public:
  explicit SplitBundleOnY(std::vector<DivisorClassY> summands);

  /// O(D)^2 + O(D + mH).
  static SplitBundleOnY conic_bundle_E(const ConstructionParams& params);

  const std::vector<DivisorClassY>& summands() const { return summands_; }
  int rank() const { return static_cast<int>(summands_.size()); }
  DivisorClassY det() const;
  SplitBundleOnY twisted(DivisorClassY by) const;

private:
  std::vector<DivisorClassY> summands_;
};

/// Class in Pic(Z) = Z^3 with ordered basis (xi, p*D, p*H).
struct DivisorClassZ {
  std::int64_t xi = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend DivisorClassZ operator+(DivisorClassZ x, DivisorClassZ y) { return {x.xi + y.xi, x.a + y.a, x.b + y.b}; }
  friend DivisorClassZ operator-(DivisorClassZ x, DivisorClassZ y) { return {x.xi - y.xi, x.a - y.a, x.b - y.b}; }
  friend auto operator<=>(const DivisorClassZ&, const DivisorClassZ&) = default;

  DivisorClassY pullback_part() const { return {a, b}; }
};

/// "3xi+0D-3H"
std::string to_string(DivisorClassZ c);

/// -K of P(bundle) over a base with anticanonical class base_antiK:
/// r * xi + pullback(base_antiK - det(bundle)).
template <class Base>
TotalSpaceClass<Base> projbundle_antiK(const Base& base_antiK, const Base& det, int rank) {
  if (rank < 2) throw InvalidArgument("projective bundle needs rank at least 2");
  return {rank, base_antiK - det};
}

TotalSpaceClass<ClassOnP> projbundle_antiK(const SplitBundleOnP& bundle);
DivisorClassZ projbundle_antiK(DivisorClassY base_antiK, const SplitBundleOnY& bundle);

/// G with K_G = (K_Y + G)|_G, solved in Pic(Y) = Pic(G).
DivisorClassY adjunction_solve_G(const ConstructionParams& params);

/// Summands of Sym^2(bundle (x) O(twist)): all sums L_i + L_j, i <= j.
std::vector<DivisorClassY> sym2_decomposition(const SplitBundleOnY& bundle, DivisorClassY twist);

/// Sufficient criterion: every summand ample on Y.
bool ampleness_via_summands(const SplitBundleOnY& bundle, const ConstructionParams& params);

/// The twist for which -K_X is the tautological class of the bundle:
/// M = -det(bundle) - K_Y.
DivisorClassY anticanonical_twist(const SplitBundleOnY& bundle, const ConstructionParams& params);

/// Discriminant of a conic bundle cut out by a section of 2 xi + p*M in
/// P(bundle): 2 det(bundle) + 3 M.
DivisorClassY discriminant_class(const SplitBundleOnY& bundle, DivisorClassY M);

struct CertificateCheck {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ExampleCertificate {
  std::int64_t m = 0;
  std::vector<std::pair<std::string, DivisorClassY>> standard_classes;
  DivisorClassZ antiK_Z;
  DivisorClassZ X_class;
  DivisorClassZ antiK_Z_minus_X;
  std::vector<DivisorClassY> sym2_summands;
  DivisorClassY conic_twist_M;
  DivisorClassY discriminant;
  std::int64_t dim_Y = 0;
  std::int64_t dim_Z = 0;
  std::int64_t dim_X = 0;
  int rho_Y = 2;
  int rho_X = 3;
  int rho_difference = 1;
  bool Y_is_fano = true;
  bool requires_nonreduced_fibers = false;
  /// Degrees of c_6(Sym^2(E (x) O(-mH))) against H^{3m-4-j} D^j, j = 0, 1, 2.
  std::vector<mpz_class> conic_matrix_top_chern;
  std::vector<CertificateCheck> checks;
  std::vector<std::string> prose_claims;

  bool valid() const;
  std::vector<std::string> failed_checks() const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

ExampleCertificate build_certificate(const ConstructionParams& params);

}  // namespace fanocb
