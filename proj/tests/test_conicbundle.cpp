#include <algorithm>

#include "doctest.h"
#include "fanocb/chow.hpp"
#include "fanocb/conicbundle.hpp"

using namespace fanocb;

TEST_SUITE("conicbundle") {
  TEST_CASE("the bundle E") {
    const ConstructionParams p(3);
    const auto E = SplitBundleOnY::conic_bundle_E(p);
    CHECK(E.rank() == 3);
    CHECK(E.summands() == std::vector<DivisorClassY>{kD, kD, {1, 3}});
    CHECK(E.det() == DivisorClassY{3, 3});
    CHECK(E.twisted(kH).summands() == std::vector<DivisorClassY>{{1, 1}, {1, 1}, {1, 4}});
  }

  TEST_CASE("anticanonical classes of projective bundles") {
    for (std::int64_t m = 2; m <= 6; ++m) {
      const ConstructionParams p(m);
      const auto kz = projbundle_antiK(antiK_Y(p), SplitBundleOnY::conic_bundle_E(p));
      CHECK(kz == DivisorClassZ{3, 0, 1 - 2 * m});
      const auto ky = projbundle_antiK(SplitBundleOnP::defining_Y(p));
      CHECK(ky.xi == 3);
      CHECK(DivisorClassY{ky.xi, ky.base.h} == antiK_Y(p));
      const auto kg = projbundle_antiK(SplitBundleOnP::defining_G(p));
      CHECK(kg.xi == 2);
      CHECK(kg.base.h == m + 1);
    }
    CHECK_THROWS_AS(projbundle_antiK(ClassOnP{1}, ClassOnP{0}, 1), InvalidArgument);
  }

  TEST_CASE("adjunction") {
    CHECK(adjunction_solve_G(ConstructionParams(2)) == DivisorClassY{1, -4});
    CHECK(adjunction_solve_G(ConstructionParams(5)) == DivisorClassY{1, -10});
  }

  TEST_CASE("symmetric square") {
    const ConstructionParams p(2);
    const auto E = SplitBundleOnY::conic_bundle_E(p);
    CHECK(sym2_decomposition(E, {0, -2}) ==
          std::vector<DivisorClassY>{{2, -4}, {2, -4}, {2, -4}, {2, -2}, {2, -2}, {2, 0}});
    CHECK(sym2_decomposition(SplitBundleOnY({{0, 0}}), {1, 2}) == std::vector<DivisorClassY>{{2, 4}});
    // c_1(Sym^2 F) = (r + 1) c_1(F) for rank r.
    for (std::int64_t m = 2; m <= 6; ++m) {
      const auto F = SplitBundleOnY::conic_bundle_E(ConstructionParams(m)).twisted({0, -m});
      DivisorClassY sum{};
      for (const auto& s : sym2_decomposition(F, {})) sum += s;
      CHECK(sum == 4 * F.det());
    }
  }

  TEST_CASE("ampleness through summands") {
    for (std::int64_t m = 2; m <= 6; ++m) {
      const ConstructionParams p(m);
      const auto E = SplitBundleOnY::conic_bundle_E(p);
      CHECK(ampleness_via_summands(E.twisted(kH), p));
      CHECK_FALSE(ampleness_via_summands(E, p));
    }
    CHECK_FALSE(ampleness_via_summands(SplitBundleOnY({kH}), ConstructionParams(2)));
  }

  TEST_CASE("discriminant") {
    for (std::int64_t m = 2; m <= 6; ++m) {
      const ConstructionParams p(m);
      const auto E = SplitBundleOnY::conic_bundle_E(p);
      const DivisorClassY M{0, -2 * m};
      const auto delta = discriminant_class(E, M);
      CHECK(delta == DivisorClassY{6, -4 * m});
      CHECK(pair(delta, kEllV) == -4 * m);
      CHECK(pair(delta, kEllFiber) == 6);
      // Twisting E by L changes M by -2L and leaves the discriminant alone.
      for (DivisorClassY L : {kH, kD, DivisorClassY{2, -3}}) {
        CHECK(discriminant_class(E.twisted(L), M - 2 * L) == delta);
      }
      // E(H) is normalised by -K_X: its M is -det - K_Y.
      CHECK(anticanonical_twist(E.twisted(kH), p) == M - 2 * kH);
    }
  }

  TEST_CASE("certificate") {
    for (std::int64_t m = 2; m <= 5; ++m) {
      const auto cert = build_certificate(ConstructionParams(m));
      CHECK_MESSAGE(cert.valid(), "failed: ", cert.failed_checks().size());
      CHECK(cert.dim_X == 3 * (m + 1));
      CHECK(cert.dim_Y == 3 * m + 2);
      CHECK(cert.antiK_Z == DivisorClassZ{3, 0, 1 - 2 * m});
      CHECK(cert.X_class == DivisorClassZ{2, 0, -2 * m});
      CHECK(cert.antiK_Z_minus_X == DivisorClassZ{1, 0, 1});
      CHECK(cert.discriminant == DivisorClassY{6, -4 * m});
      CHECK(cert.conic_twist_M == DivisorClassY{0, -2 * m});
      CHECK_FALSE(cert.Y_is_fano);
      CHECK(cert.requires_nonreduced_fibers);
      CHECK(cert.rho_difference == 1);
    }
    const auto c5 = build_certificate(ConstructionParams(5));
    const auto it = std::find_if(c5.standard_classes.begin(), c5.standard_classes.end(),
                                 [](const auto& kv) { return kv.first == "antiK_Y"; });
    REQUIRE(it != c5.standard_classes.end());
    CHECK(it->second == DivisorClassY{3, -4});
  }

  TEST_CASE("certificate serialisation") {
    const auto cert = build_certificate(ConstructionParams(4));
    const auto doc = cert.to_json();
    CHECK(doc.begin().key() == "m");
    CHECK(doc["dims"]["dim_X"] == 15);
    CHECK(doc["discriminant"] == "6D-16H");
    CHECK(doc["classes_Z"]["antiK_Z"] == "3xi+0D-7H");
    CHECK(nlohmann::ordered_json::parse(doc.dump()) == doc);
    for (const auto& c : doc["checks"]) {
      CHECK(c.size() == 4);
      CHECK(c["pass"] == true);
    }
    CHECK(cert.to_text().find("certificate VALID") != std::string::npos);
    CHECK(to_string(DivisorClassZ{1, 0, 1}) == "1xi+0D+1H");
  }

  TEST_CASE("top Chern class of the conic matrix bundle") {
    // c_6 of a sum of six line bundles is the product of their classes; the
    // degrees are products of Chow ring elements and are computed here
    // directly from the summands.
    for (std::int64_t m = 2; m <= 4; ++m) {
      const ConstructionParams p(m);
      const auto cert = build_certificate(p);
      REQUIRE(cert.conic_matrix_top_chern.size() == 3);
      for (int j = 0; j <= 2; ++j) {
        std::vector<DivisorClassY> f = cert.sym2_summands;
        for (int k = 0; k < 3 * m - 4 - j; ++k) f.push_back(kH);
        for (int k = 0; k < j; ++k) f.push_back(kD);
        CHECK(degree(product_of_divisors(p, f)) == cert.conic_matrix_top_chern[static_cast<std::size_t>(j)]);
      }
    }
    const auto c2 = build_certificate(ConstructionParams(2));
    CHECK(c2.conic_matrix_top_chern == std::vector<mpz_class>{9984, 44544, 196608});
    CHECK(build_certificate(ConstructionParams(3)).conic_matrix_top_chern ==
          std::vector<mpz_class>{50544, 338256, 2239488});
  }
}
