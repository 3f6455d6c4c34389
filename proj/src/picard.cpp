#include "fanocb/picard.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

namespace fanocb {

ConstructionParams::ConstructionParams(std::int64_t m) : m_(m) {
  if (m < 2) {
    throw InvalidArgument("m must be at least 2 (got " + std::to_string(m) + ")");
  }
  if (m > kMaxM) {
    throw InvalidArgument("m exceeds supported maximum " + std::to_string(kMaxM));
  }
}

std::int64_t pair(DivisorClassY div, CurveClassY curve) {
  return div.a * curve.d_D + div.b * curve.d_H;
}

DivisorClassY antiK_Y(const ConstructionParams& params) {
  return {3, 1 - params.m()};
}

std::map<std::string, DivisorClassY> standard_classes(const ConstructionParams& params) {
  const std::int64_t m = params.m();
  return {
      {"D", kD},
      {"H", kH},
      {"G", {1, -2 * m}},
      {"Delta", {6, -4 * m}},
      {"M", {0, -2 * m}},
      {"antiK_Y", antiK_Y(params)},
  };
}

std::string to_string(DivisorClassY c) {
  std::string out = std::to_string(c.a) + "D";
  if (c.b < 0) {
    out += "-" + std::to_string(-c.b);
  } else {
    out += "+" + std::to_string(c.b);
  }
  return out + "H";
}

namespace {

// U+2212 MINUS SIGN
constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

class ClassParser {
public:
  explicit ClassParser(std::string_view text) : text_(text) {}

  DivisorClassY parse() {
    DivisorClassY result;
    skip_ws();
    if (pos_ == text_.size()) fail("empty divisor class");
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      bool had_sign = false;
      if (consume("+")) {
        had_sign = true;
      } else if (consume("-") || consume(kUnicodeMinus)) {
        sign = -1;
        had_sign = true;
      }
      if (!first && !had_sign) fail("expected '+' or '-'");
      skip_ws();
      std::int64_t coeff = 1;
      if (pos_ < text_.size() && is_digit(text_[pos_])) coeff = read_int();
      skip_ws();
      if (pos_ == text_.size()) fail("missing symbol D or H");
      const char sym = text_[pos_++];
      if (sym == 'D') {
        result.a += sign * coeff;
      } else if (sym == 'H') {
        result.b += sign * coeff;
      } else {
        fail(std::string("unknown symbol '") + sym + "'");
      }
      skip_ws();
      first = false;
    }
    return result;
  }

private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      skip_ws();
      return true;
    }
    return false;
  }

  std::int64_t read_int() {
    std::int64_t value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{}) fail("coefficient out of range");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("cannot parse divisor class \"" + std::string(text_) + "\": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DivisorClassY parse_divisor_class(std::string_view text) {
  return ClassParser(text).parse();
}

}  // namespace fanocb
