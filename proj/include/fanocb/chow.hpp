// Chow ring of a split projective bundle P(O(t_1) + ... + O(t_r)) over P^n,
// in the quotient convention:
//
//   A(P(E)) = Z[H, D] / (H^{n+1}, D^r - c_1 D^{r-1} + c_2 D^{r-2} - ...)
//
// with c_k = e_k(t_1, ..., t_r) H^k. Elements are kept fully reduced, i.e.
// every monomial H^i D^j has i <= n and j < r.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fanocb/picard.hpp"

namespace fanocb {

/// A direct sum of line bundles O(t_i) over P^{base_dim}.
class SplitBundleOnP {
public:
  SplitBundleOnP(std::int64_t base_dim, std::vector<std::int64_t> twists);

  /// O + O(2m) + O(2m) over P^{3m}.
  static SplitBundleOnP defining_Y(const ConstructionParams& params);
  /// O + O(2m) over P^{3m}, whose projectivisation is G_i.
  static SplitBundleOnP defining_G(const ConstructionParams& params);

  std::int64_t base_dim() const { return base_dim_; }
  const std::vector<std::int64_t>& twists() const { return twists_; }
  int rank() const { return static_cast<int>(twists_.size()); }
  /// Sum of the twists (the multiple of H representing det).
  std::int64_t det() const;
  /// e_k(twists); e_0 = 1 and e_k = 0 for k > rank.
  mpz_class elementary_symmetric(int k) const;

  friend bool operator==(const SplitBundleOnP&, const SplitBundleOnP&) = default;

private:
  std::int64_t base_dim_;
  std::vector<std::int64_t> twists_;
};

class ChowElement {
public:
  using Monomial = std::pair<int, int>;  // (power of H, power of D)

  explicit ChowElement(SplitBundleOnP ring);

  static ChowElement constant(const SplitBundleOnP& ring, const mpz_class& c);
  static ChowElement H(const SplitBundleOnP& ring);
  static ChowElement D(const SplitBundleOnP& ring);
  static ChowElement divisor(const SplitBundleOnP& ring, DivisorClassY cls);
  static ChowElement monomial(const SplitBundleOnP& ring, int h_power, int d_power,
                              const mpz_class& coeff = 1);

  const SplitBundleOnP& ring() const { return ring_; }
  const std::map<Monomial, mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(int h_power, int d_power) const;
  bool is_zero() const { return coeffs_.empty(); }

  ChowElement& operator+=(const ChowElement& other);
  ChowElement& operator-=(const ChowElement& other);
  friend ChowElement operator+(ChowElement a, const ChowElement& b) { return a += b; }
  friend ChowElement operator-(ChowElement a, const ChowElement& b) { return a -= b; }
  friend ChowElement operator*(const ChowElement& a, const ChowElement& b);
  friend ChowElement operator*(const mpz_class& k, const ChowElement& a);

  ChowElement pow(int k) const;

  friend bool operator==(const ChowElement&, const ChowElement&) = default;

  /// "8*H^1*D^2 - 16*H^2*D^1", terms in lexicographic (i, j) order; "0" if zero.
  std::string to_string() const;

private:
  void add_term(Monomial mono, const mpz_class& c);
  void reduce();

  SplitBundleOnP ring_;
  std::map<Monomial, mpz_class> coeffs_;
};

/// The reduced expression that D^r equals.
ChowElement grothendieck_relation(const SplitBundleOnP& bundle);

/// c_0, ..., c_r of the bundle, pulled back to P(bundle).
std::vector<ChowElement> chern(const SplitBundleOnP& bundle);

/// Coefficient of H^n D^{r-1}; throws InvalidArgument unless e is homogeneous
/// of top degree n + r - 1 (zero is accepted).
mpz_class degree(const ChowElement& e);

/// Product of the given divisor classes in A(Y).
ChowElement product_of_divisors(const ConstructionParams& params,
                                const std::vector<DivisorClassY>& factors);

}  // namespace fanocb
