#include "fanocb/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "fanocb/picard.hpp"

namespace fanocb {

Polynomial Polynomial::constant(std::size_t num_vars, const mpq_class& c) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw InvalidArgument("variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponents exps, const mpq_class& c) {
  Polynomial p(exps.size());
  p.add_term(exps, c);
  return p;
}

void Polynomial::add_term(const Exponents& exps, const mpq_class& c) {
  if (exps.size() != num_vars_) throw InvalidArgument("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw InvalidArgument("polynomial rings differ");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw InvalidArgument("polynomial rings differ");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw InvalidArgument("polynomial rings differ");
  Polynomial out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial operator*(const mpq_class& k, const Polynomial& a) {
  Polynomial out(a.num_vars_);
  if (k == 0) return out;
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, k * c);
  return out;
}

int Polynomial::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += static_cast<int>(x);
    best = std::max(best, d);
  }
  return best;
}

mpq_class Polynomial::evaluate(std::span<const mpq_class> point) const {
  if (point.size() != num_vars_) throw InvalidArgument("evaluation point has wrong length");
  // powers[v][k] = point[v]^k, filled lazily up to the largest exponent seen.
  std::vector<std::vector<mpq_class>> powers(num_vars_);
  for (std::size_t v = 0; v < num_vars_; ++v) powers[v].push_back(1);
  mpq_class total = 0;
  mpq_class term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t v = 0; v < num_vars_ && term != 0; ++v) {
      const auto k = e[v];
      if (k == 0) continue;
      auto& pw = powers[v];
      while (pw.size() <= k) pw.push_back(pw.back() * point[v]);
      term *= pw[k];
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= num_vars_) throw InvalidArgument("variable index out of range");
  Polynomial out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * mpq_class(e[var]));
  }
  return out;
}

Polynomial Polynomial::substitute(std::size_t var, const mpq_class& value) const {
  if (var >= num_vars_) throw InvalidArgument("variable index out of range");
  Polynomial out(num_vars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    mpq_class factor = 1;
    for (std::uint32_t k = 0; k < e[var]; ++k) factor *= value;
    d[var] = 0;
    out.add_term(d, c * factor);
  }
  return out;
}

Polynomial Polynomial::extended(std::size_t num_vars) const {
  if (num_vars < num_vars_) throw InvalidArgument("cannot shrink a polynomial ring");
  Polynomial out(num_vars);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d.resize(num_vars, 0);
    out.terms_.emplace(std::move(d), c);
  }
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const mpq_class magnitude = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += v < names.size() ? names[v] : "v" + std::to_string(v);
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) {
      out += magnitude.get_str();
    } else if (magnitude == 1) {
      out += mono;
    } else {
      out += magnitude.get_str() + "*" + mono;
    }
    first = false;
  }
  return out;
}

UPoly::UPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UPoly UPoly::interpolate(std::span<const mpq_class> xs, std::span<const mpq_class> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("interpolation data size mismatch");
  const std::size_t n = xs.size();
  // Divided differences in place.
  std::vector<mpq_class> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const mpq_class denom = xs[i] - xs[i - level];
      if (denom == 0) throw InvalidArgument("interpolation nodes must be distinct");
      dd[i] = (dd[i] - dd[i - 1]) / denom;
    }
  }
  // Horner in Newton form: p = dd[n-1]; p = p*(t - x_i) + dd[i].
  std::vector<mpq_class> poly;
  for (std::size_t idx = n; idx-- > 0;) {
    std::vector<mpq_class> next(poly.size() + 1, 0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * xs[idx];
    }
    next[0] += dd[idx];
    poly = std::move(next);
  }
  return UPoly(std::move(poly));
}

mpq_class UPoly::evaluate(const mpq_class& t) const {
  mpq_class acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<mpq_class> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * mpq_class(i));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<mpq_class> c = coeffs_;
  const mpq_class lead = leading();
  for (auto& x : c) x /= lead;
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<mpq_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InvalidArgument("division by the zero polynomial");
  std::vector<mpq_class> rem = a.coeffs_;
  const int db = b.degree();
  if (a.degree() < db) return {UPoly{}, a};
  std::vector<mpq_class> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int k = a.degree() - db; k >= 0; --k) {
    const mpq_class q = rem[static_cast<std::size_t>(k + db)] / b.leading();
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

bool UPoly::is_squarefree() const {
  if (degree() <= 0) return true;
  return gcd(*this, derivative()).degree() == 0;
}

}  // namespace fanocb
