#include "fanocb/chow.hpp"

#include <algorithm>

namespace fanocb {

SplitBundleOnP::SplitBundleOnP(std::int64_t base_dim, std::vector<std::int64_t> twists)
    : base_dim_(base_dim), twists_(std::move(twists)) {
  if (twists_.empty()) throw InvalidArgument("split bundle must have at least one summand");
  if (base_dim_ < 0) throw InvalidArgument("negative base dimension");
}

SplitBundleOnP SplitBundleOnP::defining_Y(const ConstructionParams& params) {
  const std::int64_t t = params.fiber_twist();
  return SplitBundleOnP(params.n_base(), {0, t, t});
}

SplitBundleOnP SplitBundleOnP::defining_G(const ConstructionParams& params) {
  return SplitBundleOnP(params.n_base(), {0, params.fiber_twist()});
}

std::int64_t SplitBundleOnP::det() const {
  std::int64_t sum = 0;
  for (auto t : twists_) sum += t;
  return sum;
}

mpz_class SplitBundleOnP::elementary_symmetric(int k) const {
  if (k < 0 || k > rank()) return 0;
  // e[j] holds e_j of the twists seen so far.
  std::vector<mpz_class> e(static_cast<std::size_t>(rank()) + 1, 0);
  e[0] = 1;
  for (auto t : twists_) {
    for (int j = rank(); j >= 1; --j) e[j] += e[j - 1] * mpz_class(static_cast<long>(t));
  }
  return e[static_cast<std::size_t>(k)];
}

ChowElement::ChowElement(SplitBundleOnP ring) : ring_(std::move(ring)) {}

ChowElement ChowElement::constant(const SplitBundleOnP& ring, const mpz_class& c) {
  return monomial(ring, 0, 0, c);
}

ChowElement ChowElement::H(const SplitBundleOnP& ring) { return monomial(ring, 1, 0); }

ChowElement ChowElement::D(const SplitBundleOnP& ring) { return monomial(ring, 0, 1); }

ChowElement ChowElement::divisor(const SplitBundleOnP& ring, DivisorClassY cls) {
  ChowElement e(ring);
  e.add_term({0, 1}, mpz_class(static_cast<long>(cls.a)));
  e.add_term({1, 0}, mpz_class(static_cast<long>(cls.b)));
  e.reduce();
  return e;
}

ChowElement ChowElement::monomial(const SplitBundleOnP& ring, int h_power, int d_power,
                                  const mpz_class& coeff) {
  if (h_power < 0 || d_power < 0) throw InvalidArgument("negative exponent in Chow monomial");
  ChowElement e(ring);
  e.add_term({h_power, d_power}, coeff);
  e.reduce();
  return e;
}

mpz_class ChowElement::coeff(int h_power, int d_power) const {
  auto it = coeffs_.find({h_power, d_power});
  return it == coeffs_.end() ? mpz_class(0) : it->second;
}

void ChowElement::add_term(Monomial mono, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

// Rewrites D^r via the relation, highest D-power first, and truncates H^{n+1}.
// Each rewrite strictly lowers the D-degree of the rewritten term.
void ChowElement::reduce() {
  const int r = ring_.rank();
  const auto n = static_cast<int>(ring_.base_dim());
  std::vector<mpz_class> relation(static_cast<std::size_t>(r) + 1);
  for (int k = 1; k <= r; ++k) {
    relation[k] = ring_.elementary_symmetric(k);
    if (k % 2 == 0) relation[k] = -relation[k];
  }

  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first.first > n) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }

  for (;;) {
    auto top = std::max_element(coeffs_.begin(), coeffs_.end(), [](const auto& x, const auto& y) {
      return x.first.second < y.first.second;
    });
    if (top == coeffs_.end() || top->first.second < r) break;
    const auto [i, j] = top->first;
    const mpz_class c = top->second;
    coeffs_.erase(top);
    for (int k = 1; k <= r; ++k) {
      if (i + k > n || relation[k] == 0) continue;
      add_term({i + k, j - k}, c * relation[k]);
    }
  }
}

ChowElement& ChowElement::operator+=(const ChowElement& other) {
  if (!(ring_ == other.ring_)) throw InvalidArgument("Chow elements live in different rings");
  for (const auto& [mono, c] : other.coeffs_) add_term(mono, c);
  return *this;
}

ChowElement& ChowElement::operator-=(const ChowElement& other) {
  if (!(ring_ == other.ring_)) throw InvalidArgument("Chow elements live in different rings");
  for (const auto& [mono, c] : other.coeffs_) add_term(mono, -c);
  return *this;
}

ChowElement operator*(const ChowElement& a, const ChowElement& b) {
  if (!(a.ring_ == b.ring_)) throw InvalidArgument("Chow elements live in different rings");
  ChowElement out(a.ring_);
  for (const auto& [ma, ca] : a.coeffs_) {
    for (const auto& [mb, cb] : b.coeffs_) {
      out.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
    }
  }
  out.reduce();
  return out;
}

ChowElement operator*(const mpz_class& k, const ChowElement& a) {
  ChowElement out(a.ring_);
  for (const auto& [mono, c] : a.coeffs_) out.add_term(mono, k * c);
  return out;
}

ChowElement ChowElement::pow(int k) const {
  if (k < 0) throw InvalidArgument("negative power in Chow ring");
  ChowElement result = constant(ring_, 1);
  for (int i = 0; i < k; ++i) result = result * *this;
  return result;
}

std::string ChowElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : coeffs_) {
    mpz_class magnitude = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += magnitude.get_str() + "*H^" + std::to_string(mono.first) + "*D^" +
           std::to_string(mono.second);
    first = false;
  }
  return out;
}

ChowElement grothendieck_relation(const SplitBundleOnP& bundle) {
  return ChowElement::monomial(bundle, 0, bundle.rank());
}

std::vector<ChowElement> chern(const SplitBundleOnP& bundle) {
  std::vector<ChowElement> classes;
  for (int k = 0; k <= bundle.rank(); ++k) {
    classes.push_back(ChowElement::monomial(bundle, k, 0, bundle.elementary_symmetric(k)));
  }
  return classes;
}

mpz_class degree(const ChowElement& e) {
  const auto n = static_cast<int>(e.ring().base_dim());
  const int top = n + e.ring().rank() - 1;
  for (const auto& [mono, c] : e.coeffs()) {
    if (mono.first + mono.second != top) {
      throw InvalidArgument("degree() needs a class of top degree " + std::to_string(top) +
                            ", found H^" + std::to_string(mono.first) + "*D^" +
                            std::to_string(mono.second));
    }
  }
  return e.coeff(n, e.ring().rank() - 1);
}

ChowElement product_of_divisors(const ConstructionParams& params,
                                const std::vector<DivisorClassY>& factors) {
  const auto ring = SplitBundleOnP::defining_Y(params);
  ChowElement result = ChowElement::constant(ring, 1);
  for (const auto& f : factors) result = result * ChowElement::divisor(ring, f);
  return result;
}

}  // namespace fanocb
