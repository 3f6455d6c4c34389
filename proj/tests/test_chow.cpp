#include "doctest.h"
#include "fanocb/chow.hpp"
#include "fanocb/rng.hpp"
#include "oracles.hpp"

using namespace fanocb;

namespace {

ChowElement random_element(const SplitBundleOnP& ring, Rng& rng) {
  ChowElement e(ring);
  const int r = ring.rank();
  for (int t = 0; t < 4; ++t) {
    const int i = static_cast<int>(rng.uniform(0, ring.base_dim()));
    const int j = static_cast<int>(rng.uniform(0, r + 1));
    e += ChowElement::monomial(ring, i, j, mpz_class(static_cast<long>(rng.uniform(-20, 20))));
  }
  return e;
}

}  // namespace

TEST_SUITE("chow") {
  TEST_CASE("Grothendieck relation") {
    const ConstructionParams p(2);
    CHECK(grothendieck_relation(SplitBundleOnP::defining_Y(p)).to_string() == "8*H^1*D^2 - 16*H^2*D^1");
    CHECK(grothendieck_relation(SplitBundleOnP(6, {0, 0, 0})).is_zero());
    CHECK(grothendieck_relation(SplitBundleOnP::defining_G(p)).to_string() == "4*H^1*D^1");
  }

  TEST_CASE("multiplication and truncation") {
    const ConstructionParams p(2);
    const auto ring = SplitBundleOnP::defining_Y(p);
    const auto H = ChowElement::H(ring);
    const auto D = ChowElement::D(ring);
    CHECK((H.pow(6) * H).is_zero());
    CHECK(D.pow(3).to_string() == "8*H^1*D^2 - 16*H^2*D^1");
    CHECK(H.pow(5) * D.pow(3) == ChowElement::monomial(ring, 6, 2, 8));
  }

  TEST_CASE("degrees") {
    for (std::int64_t m = 2; m <= 4; ++m) {
      const ConstructionParams p(m);
      const auto ring = SplitBundleOnP::defining_Y(p);
      const int n = static_cast<int>(3 * m);
      CHECK(degree(ChowElement::monomial(ring, n, 2)) == 1);
      CHECK(degree(ChowElement::H(ring).pow(n + 1) * ChowElement::D(ring)) == 0);
      CHECK(degree(ChowElement::D(ring).pow(n + 2)) == oracle::top_power_of_D({0, 2 * m, 2 * m}, n));
    }
    const auto ring2 = SplitBundleOnP::defining_Y(ConstructionParams(2));
    CHECK(degree(ChowElement::H(ring2).pow(5) * ChowElement::D(ring2).pow(3)) == 8);
    CHECK_THROWS_AS(degree(ChowElement::D(ring2)), InvalidArgument);
  }

  TEST_CASE("top powers of D match complete homogeneous sums") {
    for (const std::vector<std::int64_t>& tw : {std::vector<std::int64_t>{0, 3}, {1, 2, 5}, {0, 0, 4}, {2, 2, 2, 1}}) {
      for (int n = 1; n <= 5; ++n) {
        const SplitBundleOnP ring(n, tw);
        const int r = ring.rank();
        CHECK(degree(ChowElement::D(ring).pow(n + r - 1)) == oracle::top_power_of_D(tw, n));
      }
    }
  }

  TEST_CASE("Chern classes") {
    const ConstructionParams p(3);
    const auto c = chern(SplitBundleOnP::defining_Y(p));
    const auto ring = SplitBundleOnP::defining_Y(p);
    REQUIRE(c.size() == 4);
    CHECK(c[1] == ChowElement::monomial(ring, 1, 0, 12));
    CHECK(c[2] == ChowElement::monomial(ring, 2, 0, 36));
    CHECK(c[3].is_zero());
    const auto triv = chern(SplitBundleOnP(4, {0, 0}));
    CHECK(triv[1].is_zero());
    CHECK(triv[2].is_zero());
  }

  TEST_CASE("ring axioms on random elements") {
    const auto ring = SplitBundleOnP::defining_Y(ConstructionParams(2));
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
      const auto a = random_element(ring, rng);
      const auto b = random_element(ring, rng);
      const auto c = random_element(ring, rng);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }

  TEST_CASE("the section V through G1 G2") {
    // degree((aD + bH) . G^2 . H^{3m-1}) = b: G^2 is the class of V and D is
    // trivial on V, which is the base P^{3m}.
    for (std::int64_t m = 2; m <= 5; ++m) {
      const ConstructionParams p(m);
      const DivisorClassY G{1, -2 * m};
      for (std::int64_t a = -3; a <= 3; ++a) {
        for (std::int64_t b = -3; b <= 3; ++b) {
          std::vector<DivisorClassY> f = {DivisorClassY{a, b}, G, G};
          for (std::int64_t k = 0; k < 3 * m - 1; ++k) f.push_back(kH);
          CHECK(degree(product_of_divisors(p, f)) == b);
        }
      }
    }
  }
}
