// Cox ring of Y: C[x_0..x_{3m}, y_0, y_1, y_2] graded by Pic(Y) = Z^2 with
//
//   deg x_i = (0, 1) = H,   deg y_0 = (1, 0) = D,   deg y_1 = deg y_2 = (1, -2m).
//
// Variables are indexed x_0..x_{3m} first, then y_0, y_1, y_2. The irrelevant
// loci are {all x = 0} and {y_0 = y_1 = y_2 = 0}; the section V is
// {y_1 = y_2 = 0}.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fanocb/picard.hpp"
#include "fanocb/polynomial.hpp"
#include "json.hpp"

namespace fanocb {

class CoxGrading {
public:
  explicit CoxGrading(const ConstructionParams& params) : params_(params) {}

  const ConstructionParams& params() const { return params_; }
  std::size_t num_x() const { return static_cast<std::size_t>(params_.n_base() + 1); }
  std::size_t num_vars() const { return num_x() + 3; }
  std::size_t x(std::size_t i) const { return i; }
  std::size_t y(std::size_t i) const { return num_x() + i; }
  bool is_x(std::size_t v) const { return v < num_x(); }

  DivisorClassY degree_of_var(std::size_t v) const;
  DivisorClassY degree(const Exponents& exps) const;
  /// One degree per Cox generator, in variable order.
  std::vector<DivisorClassY> generator_degrees() const;
  std::vector<std::string> variable_names() const;

private:
  ConstructionParams params_;
};

/// A polynomial in the Cox ring, homogeneous of a fixed bidegree.
class BigradedPoly {
public:
  BigradedPoly(const ConstructionParams& params, DivisorClassY degree);
  /// Throws InvalidArgument if some term of poly has a different degree.
  BigradedPoly(const ConstructionParams& params, DivisorClassY degree, Polynomial poly);

  const ConstructionParams& params() const { return params_; }
  DivisorClassY degree() const { return degree_; }
  const Polynomial& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  mpq_class evaluate(std::span<const mpq_class> point) const { return poly_.evaluate(point); }

  friend BigradedPoly operator+(const BigradedPoly& a, const BigradedPoly& b);
  friend BigradedPoly operator*(const BigradedPoly& a, const BigradedPoly& b);

  std::string to_string() const;

  /// Canonical serialisation: {"degree": "aD+bH", "variables": [...],
  /// "terms": [[coeff, [e_x0, ..., e_x3m, e_y0, e_y1, e_y2]], ...]} with
  /// terms in increasing lexicographic order of exponent vectors and
  /// coefficients as decimal strings ("p" or "p/q").
  nlohmann::ordered_json to_json() const;
  static BigradedPoly from_json(const ConstructionParams& params, const nlohmann::ordered_json& doc);

private:
  ConstructionParams params_;
  DivisorClassY degree_;
  Polynomial poly_;
};

BigradedPoly cox_variable(const ConstructionParams& params, std::size_t var);

/// Visits every monomial of degree cls whose (y_1, y_2)-degree is at least
/// min_v_order, i.e. which vanishes to that order along V. The order of visits
/// is fixed: by k1 + k2, then k1, then x-exponents lexicographically descending.
void for_each_monomial(DivisorClassY cls, const ConstructionParams& params,
                       const std::function<void(const Exponents&)>& visit, int min_v_order = 0);

/// h^0(Y, O(cls)), the number of Cox monomials of degree cls.
mpz_class count_sections(DivisorClassY cls, const ConstructionParams& params);

bool is_effective(DivisorClassY cls, const ConstructionParams& params);

enum class Stratum { Empty, V, Y0Divisor, Full };

std::string to_string(Stratum s);

struct BaseLocusResult {
  std::set<Stratum> strata;
  /// Minimal primes surviving the irrelevant-locus filter, as sorted Cox
  /// variable indices. For a non-effective class this is the zero ideal {}.
  std::vector<std::vector<std::size_t>> raw_primes;

  /// Set-theoretic inclusion of the loci.
  bool is_subset_of(const BaseLocusResult& other) const;
  bool is_exactly(Stratum s) const { return strata == std::set<Stratum>{s}; }
};

/// True iff the point with Cox coordinates (x, y) lies on the stratum.
bool stratum_contains(Stratum s, std::span<const mpq_class> x, std::span<const mpq_class> y);

/// All inclusion-minimal subsets of {0..universe-1} meeting every support
/// (bitmasks). An empty support makes the family unhittable: returns {}.
std::vector<std::uint64_t> minimal_hitting_sets(std::span<const std::uint64_t> supports,
                                                int universe);

BaseLocusResult base_locus(DivisorClassY cls, const ConstructionParams& params);

/// Random element of H^0(O(cls)) with nonzero integer coefficients uniform in
/// [-coeff_range, coeff_range] on every monomial vanishing to order at least
/// min_v_order along V. Throws InvalidArgument when there is no such monomial.
BigradedPoly random_section(DivisorClassY cls, const ConstructionParams& params,
                            std::uint64_t seed, std::int64_t coeff_range = 100,
                            int min_v_order = 0);

}  // namespace fanocb
