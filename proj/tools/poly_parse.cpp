#include "poly_parse.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "qcorr/error.hpp"

namespace qcorr::cli {

namespace {

constexpr int kMaxParenDepth = 2;

using Coeffs = std::vector<double>;

Coeffs add(Coeffs a, const Coeffs& b, double sign) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
  return a;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b) {
  Coeffs out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Coeffs parse() {
    Coeffs v = expr();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                "in \"" + std::string(s_) + "\" at " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Coeffs expr() {
    Coeffs v = term();
    for (;;) {
      if (accept('+')) {
        v = add(std::move(v), term(), 1.0);
      } else if (accept('-')) {
        v = add(std::move(v), term(), -1.0);
      } else {
        return v;
      }
    }
  }

  Coeffs term() {
    Coeffs v = unary();
    while (accept('*')) v = multiply(v, unary());
    return v;
  }

  Coeffs unary() {
    if (accept('-')) return add(Coeffs{0.0}, unary(), -1.0);
    if (accept('+')) return unary();
    return primary();
  }

  Coeffs primary() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      if (++depth_ > kMaxParenDepth) fail("parentheses nested deeper than 2");
      Coeffs v = expr();
      if (!accept(')')) fail("missing ')'");
      --depth_;
      return v;
    }
    if (s_[pos_] == 'u') {
      ++pos_;
      return {0.0, 1.0};
    }
    double value = 0.0;
    const char* first = s_.data() + pos_;
    const auto [end, ec] = std::from_chars(first, s_.data() + s_.size(), value);
    if (ec != std::errc() || end == first) fail("expected a number, 'u' or '('");
    pos_ += static_cast<std::size_t>(end - first);
    return {value};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Polynomial parse_polynomial(std::string_view expr) {
  Polynomial p(Parser(expr).parse());
  if (p.degree() > kMaxTrajectoryDegree)
    throw Error(ErrorCode::ParseError, "\"" + std::string(expr) + "\" has degree " +
                                           std::to_string(p.degree()) + " > 3");
  return p;
}

std::array<Polynomial, 3> parse_coordinates(std::string_view spec) {
  std::array<Polynomial, 3> coords;
  std::array<bool, 3> seen{};
  while (!spec.empty()) {
    const std::size_t semi = spec.find(';');
    const std::string_view item = trim(spec.substr(0, semi));
    spec = semi == std::string_view::npos ? std::string_view{} : spec.substr(semi + 1);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "expected cN=expr, got \"" + std::string(item) + "\"");
    const std::string_view name = trim(item.substr(0, eq));
    int idx = -1;
    if (name == "c1") idx = 0;
    if (name == "c2") idx = 1;
    if (name == "c3") idx = 2;
    if (idx < 0) throw Error(ErrorCode::ParseError, "unknown coordinate \"" + std::string(name) + "\"");
    if (seen[static_cast<std::size_t>(idx)])
      throw Error(ErrorCode::ParseError, std::string(name) + " given twice");
    seen[static_cast<std::size_t>(idx)] = true;
    coords[static_cast<std::size_t>(idx)] = parse_polynomial(item.substr(eq + 1));
  }
  for (int i = 0; i < 3; ++i)
    if (!seen[static_cast<std::size_t>(i)])
      throw Error(ErrorCode::ParseError, "missing c" + std::to_string(i + 1));
  return coords;
}

}  // namespace qcorr::cli
