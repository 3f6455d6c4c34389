// Exact sparse multivariate polynomials over Q and dense univariate ones.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fanocb {

using Exponents = std::vector<std::uint32_t>;

class Polynomial {
public:
  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const mpq_class& c);
  static Polynomial variable(std::size_t num_vars, std::size_t index);
  static Polynomial monomial(Exponents exps, const mpq_class& c = 1);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, mpq_class>& terms() const { return terms_; }

  void add_term(const Exponents& exps, const mpq_class& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const mpq_class& k, const Polynomial& a);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Largest total degree among terms; -1 for the zero polynomial.
  int total_degree() const;

  mpq_class evaluate(std::span<const mpq_class> point) const;
  Polynomial derivative(std::size_t var) const;
  /// Substitutes a constant for one variable; the variable count is unchanged.
  Polynomial substitute(std::size_t var, const mpq_class& value) const;
  /// Re-embeds into a ring with more variables (new ones appended, exponent 0).
  Polynomial extended(std::size_t num_vars) const;

  /// "3*x0^2*x4 - 1/2*x1" style, using the given variable names.
  std::string to_string(std::span<const std::string> names) const;

private:
  std::size_t num_vars_;
  std::map<Exponents, mpq_class> terms_;
};

/// Dense univariate polynomial; coeffs[i] multiplies t^i. Always trimmed.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<mpq_class> coeffs);

  /// Newton interpolation through (xs[i], ys[i]); xs pairwise distinct.
  static UPoly interpolate(std::span<const mpq_class> xs, std::span<const mpq_class> ys);

  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const mpq_class& leading() const { return coeffs_.back(); }

  mpq_class evaluate(const mpq_class& t) const;
  UPoly derivative() const;
  UPoly monic() const;

  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  /// Monic gcd (zero if both inputs are zero).
  static UPoly gcd(UPoly a, UPoly b);

  bool is_squarefree() const;

private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

}  // namespace fanocb
