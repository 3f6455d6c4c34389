#include "doctest.h"
#include "fanocb/picard.hpp"
#include "fanocb/rng.hpp"

using namespace fanocb;

TEST_SUITE("picard") {
  TEST_CASE("parameter domain") {
    CHECK_THROWS_AS(ConstructionParams(1), InvalidArgument);
    CHECK_THROWS_AS(ConstructionParams(0), InvalidArgument);
    CHECK_THROWS_AS(ConstructionParams(-3), InvalidArgument);
    CHECK_THROWS_AS(ConstructionParams(ConstructionParams::kMaxM + 1), InvalidArgument);
    const ConstructionParams p(4);
    CHECK(p.n_base() == 12);
    CHECK(p.dim_Y() == 14);
    CHECK(p.fiber_twist() == 8);
  }

  TEST_CASE("pairing with the extremal curves") {
    CHECK(pair(kD, kEllFiber) == 1);
    CHECK(pair(kD, kEllV) == 0);
    CHECK(pair(kH, kEllFiber) == 0);
    CHECK(pair(kH, kEllV) == 1);
    CHECK(pair(antiK_Y(ConstructionParams(3)), kEllV) == -2);
  }

  TEST_CASE("pairing is bilinear") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
      const DivisorClassY u{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      const DivisorClassY v{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      const std::int64_t k = rng.uniform(-9, 9);
      for (CurveClassY c : {kEllFiber, kEllV, CurveClassY{3, -2}}) {
        CHECK(pair(u + v, c) == pair(u, c) + pair(v, c));
        CHECK(pair(k * u, c) == k * pair(u, c));
      }
    }
  }

  TEST_CASE("anticanonical class") {
    for (std::int64_t m = 2; m <= 12; ++m) {
      const DivisorClassY k = antiK_Y(ConstructionParams(m));
      CHECK(k == DivisorClassY{3, 1 - m});
      CHECK(pair(k, kEllV) == 1 - m);
      CHECK(pair(k, kEllFiber) == 3);
    }
    CHECK(antiK_Y(ConstructionParams(2)) == DivisorClassY{3, -1});
    CHECK(antiK_Y(ConstructionParams(5)) == DivisorClassY{3, -4});
  }

  TEST_CASE("standard classes") {
    const auto c = standard_classes(ConstructionParams(2));
    CHECK(c.at("D") == kD);
    CHECK(c.at("H") == kH);
    CHECK(c.at("G") == DivisorClassY{1, -4});
    CHECK(c.at("Delta") == DivisorClassY{6, -8});
    CHECK(c.at("M") == DivisorClassY{0, -4});
    CHECK(c.at("antiK_Y") == DivisorClassY{3, -1});
  }

  TEST_CASE("string form") {
    CHECK(to_string(DivisorClassY{2, -4}) == "2D-4H");
    CHECK(to_string(DivisorClassY{1, 0}) == "1D+0H");
    CHECK(to_string(DivisorClassY{-3, 7}) == "-3D+7H");
  }

  TEST_CASE("parsing") {
    CHECK(parse_divisor_class("2D-4H") == DivisorClassY{2, -4});
    CHECK(parse_divisor_class("D") == kD);
    CHECK(parse_divisor_class("-H") == -kH);
    CHECK(parse_divisor_class("3D - 1H") == DivisorClassY{3, -1});
    CHECK(parse_divisor_class("H+2D") == DivisorClassY{2, 1});
    CHECK(parse_divisor_class("6D\xE2\x88\x92" "8H") == DivisorClassY{6, -8});
    for (const char* bad : {"", "2X", "D+", "2", "DD", "1.5D", "--D"}) {
      CHECK_THROWS_AS(parse_divisor_class(bad), InvalidArgument);
    }
  }

  TEST_CASE("parse and print round trip") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
      const DivisorClassY c{rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)};
      CHECK(parse_divisor_class(to_string(c)) == c);
    }
  }
}
