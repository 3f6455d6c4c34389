#include "fanocb/coxring.hpp"

#include <bit>
#include <stdexcept>

#include "fanocb/rng.hpp"

namespace fanocb {

DivisorClassY CoxGrading::degree_of_var(std::size_t v) const {
  if (v >= num_vars()) throw InvalidArgument("Cox variable index out of range");
  if (is_x(v)) return kH;
  if (v == y(0)) return kD;
  return {1, -params_.fiber_twist()};
}

DivisorClassY CoxGrading::degree(const Exponents& exps) const {
  if (exps.size() != num_vars()) throw InvalidArgument("exponent vector has wrong length");
  DivisorClassY total;
  for (std::size_t v = 0; v < exps.size(); ++v) {
    total += static_cast<std::int64_t>(exps[v]) * degree_of_var(v);
  }
  return total;
}

std::vector<DivisorClassY> CoxGrading::generator_degrees() const {
  std::vector<DivisorClassY> out;
  for (std::size_t v = 0; v < num_vars(); ++v) out.push_back(degree_of_var(v));
  return out;
}

std::vector<std::string> CoxGrading::variable_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_x(); ++i) names.push_back("x" + std::to_string(i));
  for (int i = 0; i < 3; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

BigradedPoly::BigradedPoly(const ConstructionParams& params, DivisorClassY degree)
    : params_(params), degree_(degree), poly_(CoxGrading(params).num_vars()) {}

BigradedPoly::BigradedPoly(const ConstructionParams& params, DivisorClassY degree, Polynomial poly)
    : params_(params), degree_(degree), poly_(std::move(poly)) {
  const CoxGrading grading(params_);
  if (poly_.num_vars() != grading.num_vars()) {
    throw InvalidArgument("polynomial does not live in the Cox ring of Y");
  }
  for (const auto& [e, c] : poly_.terms()) {
    if (grading.degree(e) != degree_) {
      throw InvalidArgument("term of degree " + fanocb::to_string(grading.degree(e)) +
                            " in a polynomial of degree " + fanocb::to_string(degree_));
    }
  }
}

BigradedPoly operator+(const BigradedPoly& a, const BigradedPoly& b) {
  if (!(a.params_ == b.params_) || a.degree_ != b.degree_) {
    throw InvalidArgument("cannot add sections of different classes");
  }
  return BigradedPoly(a.params_, a.degree_, a.poly_ + b.poly_);
}

BigradedPoly operator*(const BigradedPoly& a, const BigradedPoly& b) {
  if (!(a.params_ == b.params_)) throw InvalidArgument("sections for different m");
  return BigradedPoly(a.params_, a.degree_ + b.degree_, a.poly_ * b.poly_);
}

std::string BigradedPoly::to_string() const {
  return poly_.to_string(CoxGrading(params_).variable_names());
}

nlohmann::ordered_json BigradedPoly::to_json() const {
  nlohmann::ordered_json doc;
  doc["degree"] = fanocb::to_string(degree_);
  doc["variables"] = CoxGrading(params_).variable_names();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : poly_.terms()) {
    terms.push_back(nlohmann::ordered_json::array({c.get_str(), e}));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

BigradedPoly BigradedPoly::from_json(const ConstructionParams& params,
                                     const nlohmann::ordered_json& doc) {
  const DivisorClassY degree = parse_divisor_class(doc.at("degree").get<std::string>());
  Polynomial poly(CoxGrading(params).num_vars());
  for (const auto& term : doc.at("terms")) {
    const mpq_class c(term.at(0).get<std::string>());
    poly.add_term(term.at(1).get<Exponents>(), c);
  }
  return BigradedPoly(params, degree, std::move(poly));
}

BigradedPoly cox_variable(const ConstructionParams& params, std::size_t var) {
  const CoxGrading grading(params);
  return BigradedPoly(params, grading.degree_of_var(var),
                      Polynomial::variable(grading.num_vars(), var));
}

namespace {

void for_each_x_part(Exponents& exps, std::size_t idx, std::size_t last, std::uint32_t remaining,
                     const std::function<void(const Exponents&)>& visit) {
  if (idx == last) {
    exps[idx] = remaining;
    visit(exps);
    return;
  }
  for (std::uint32_t e = remaining + 1; e-- > 0;) {
    exps[idx] = e;
    for_each_x_part(exps, idx + 1, last, remaining - e, visit);
  }
  exps[idx] = 0;
}

}  // namespace

void for_each_monomial(DivisorClassY cls, const ConstructionParams& params,
                       const std::function<void(const Exponents&)>& visit, int min_v_order) {
  if (cls.a < 0) return;
  const CoxGrading grading(params);
  const std::int64_t twist = params.fiber_twist();
  Exponents exps(grading.num_vars(), 0);
  for (std::int64_t s = std::max<std::int64_t>(0, min_v_order); s <= cls.a; ++s) {
    const std::int64_t x_degree = cls.b + twist * s;
    if (x_degree < 0) continue;
    for (std::int64_t k1 = s; k1 >= 0; --k1) {
      exps[grading.y(0)] = static_cast<std::uint32_t>(cls.a - s);
      exps[grading.y(1)] = static_cast<std::uint32_t>(k1);
      exps[grading.y(2)] = static_cast<std::uint32_t>(s - k1);
      for_each_x_part(exps, 0, grading.num_x() - 1, static_cast<std::uint32_t>(x_degree), visit);
    }
  }
}

mpz_class count_sections(DivisorClassY cls, const ConstructionParams& params) {
  mpz_class total = 0;
  if (cls.a < 0) return total;
  const auto n = static_cast<unsigned long>(params.n_base());
  for (std::int64_t s = 0; s <= cls.a; ++s) {
    const std::int64_t x_degree = cls.b + params.fiber_twist() * s;
    if (x_degree < 0) continue;
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(x_degree) + n, n);
    total += mpz_class(static_cast<long>(s + 1)) * binom;
  }
  return total;
}

bool is_effective(DivisorClassY cls, const ConstructionParams& params) {
  return cls.a >= 0 && cls.b + params.fiber_twist() * cls.a >= 0;
}

std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::Empty: return "EMPTY";
    case Stratum::V: return "V";
    case Stratum::Y0Divisor: return "Y0_DIVISOR";
    case Stratum::Full: return "FULL";
  }
  return "?";
}

namespace {

bool stratum_inside(Stratum inner, Stratum outer) {
  if (inner == Stratum::Empty || outer == Stratum::Full) return true;
  return inner == outer;
}

}  // namespace

bool BaseLocusResult::is_subset_of(const BaseLocusResult& other) const {
  for (Stratum s : strata) {
    bool covered = false;
    for (Stratum t : other.strata) covered = covered || stratum_inside(s, t);
    if (!covered) return false;
  }
  return true;
}

bool stratum_contains(Stratum s, std::span<const mpq_class> x, std::span<const mpq_class> y) {
  (void)x;
  switch (s) {
    case Stratum::Empty: return false;
    case Stratum::V: return y[1] == 0 && y[2] == 0;
    case Stratum::Y0Divisor: return y[0] == 0;
    case Stratum::Full: return true;
  }
  return false;
}

std::vector<std::uint64_t> minimal_hitting_sets(std::span<const std::uint64_t> supports,
                                                int universe) {
  if (universe < 0 || universe > 24) throw InvalidArgument("hitting-set universe too large");
  std::vector<std::uint64_t> minimal;
  for (auto s : supports) {
    if (s == 0) return minimal;
  }
  const std::uint64_t count = std::uint64_t{1} << universe;
  for (int size = 0; size <= universe; ++size) {
    for (std::uint64_t candidate = 0; candidate < count; ++candidate) {
      if (std::popcount(candidate) != size) continue;
      bool hits_all = true;
      for (auto s : supports) {
        if ((s & candidate) == 0) {
          hits_all = false;
          break;
        }
      }
      if (!hits_all) continue;
      bool has_smaller = false;
      for (auto m : minimal) has_smaller = has_smaller || (m & candidate) == m;
      if (!has_smaller) minimal.push_back(candidate);
    }
  }
  return minimal;
}

// Supports are collapsed to four symbols y0, y1, y2, X. Every x-monomial of a
// given positive degree appears together with the pure powers x_i^d, so a
// prime avoiding the y-part of a support must contain every x_i: the x
// variables enter minimal primes all together or not at all.
BaseLocusResult base_locus(DivisorClassY cls, const ConstructionParams& params) {
  const CoxGrading grading(params);
  BaseLocusResult result;
  if (!is_effective(cls, params)) {
    result.strata = {Stratum::Full};
    result.raw_primes = {{}};
    return result;
  }
  constexpr std::uint64_t kY0 = 1, kY1 = 2, kY2 = 4, kX = 8;
  std::set<std::uint64_t> patterns;
  for (std::int64_t s = 0; s <= cls.a; ++s) {
    const std::int64_t x_degree = cls.b + params.fiber_twist() * s;
    if (x_degree < 0) continue;
    for (std::int64_t k1 = 0; k1 <= s; ++k1) {
      const std::int64_t k2 = s - k1;
      std::uint64_t mask = 0;
      if (cls.a - s > 0) mask |= kY0;
      if (k1 > 0) mask |= kY1;
      if (k2 > 0) mask |= kY2;
      if (x_degree > 0) mask |= kX;
      patterns.insert(mask);
    }
  }
  const std::vector<std::uint64_t> supports(patterns.begin(), patterns.end());
  for (auto prime : minimal_hitting_sets(supports, 4)) {
    if ((prime & kX) != 0) continue;
    if ((prime & (kY0 | kY1 | kY2)) == (kY0 | kY1 | kY2)) continue;
    std::vector<std::size_t> vars;
    if (prime & kY0) vars.push_back(grading.y(0));
    if (prime & kY1) vars.push_back(grading.y(1));
    if (prime & kY2) vars.push_back(grading.y(2));
    result.raw_primes.push_back(vars);
    if (prime == (kY1 | kY2)) {
      result.strata.insert(Stratum::V);
    } else if (prime == kY0) {
      result.strata.insert(Stratum::Y0Divisor);
    } else {
      throw std::logic_error("unexpected minimal prime in base locus of " + to_string(cls));
    }
  }
  if (result.strata.empty()) result.strata.insert(Stratum::Empty);
  return result;
}

BigradedPoly random_section(DivisorClassY cls, const ConstructionParams& params, std::uint64_t seed,
                            std::int64_t coeff_range, int min_v_order) {
  if (coeff_range < 1) throw InvalidArgument("coefficient range must be positive");
  const CoxGrading grading(params);
  Polynomial poly(grading.num_vars());
  Rng rng(seed);
  for_each_monomial(
      cls, params,
      [&](const Exponents& e) { poly.add_term(e, mpq_class(static_cast<long>(rng.nonzero(coeff_range)))); },
      min_v_order);
  if (poly.is_zero()) {
    throw InvalidArgument("no sections of " + to_string(cls) + " vanishing to order " +
                          std::to_string(min_v_order) + " along V");
  }
  return BigradedPoly(params, cls, std::move(poly));
}

}  // namespace fanocb
