#include "opfactor/expr.hpp"

#include <cctype>
#include <functional>
#include <optional>

namespace opfactor {

namespace {

// Recursive descent over any ring type; generators are resolved by the caller.
template <typename Value>
class Parser {
 public:
  using GenLookup = std::function<std::optional<Value>(std::string_view text, std::size_t& pos)>;

  Parser(std::string_view text, std::function<Value(const Rational&)> lift, GenLookup gen)
      : text_(text), lift_(std::move(lift)), gen_(std::move(gen)) {}

  Value run() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Value v = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpz_class nat() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) throw ParseError("expected a number", start);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+'))
        v = v + term();
      else if (accept('-'))
        v = v - term();
      else
        return v;
    }
  }

  Value term() {
    Value v = factor();
    while (accept('*')) v = v * factor();
    return v;
  }

  // unary minus applies to the whole power: -x1^2 = -(x1^2)
  Value factor() {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      return -factor();
    }
    Value v = atom();
    if (accept('^')) {
      const std::size_t at = pos_;
      const mpz_class k = nat();
      if (!k.fits_uint_p() || k > 10000) throw ParseError("exponent too large", at);
      v = v.pow(static_cast<unsigned>(k.get_ui()));
    }
    return v;
  }

  Value atom() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      const mpz_class num = nat();
      if (accept('/')) {
        const std::size_t at = pos_;
        const mpz_class den = nat();
        if (den == 0) throw ParseError("zero denominator", at);
        return lift_(Rational(num, den));
      }
      return lift_(Rational(num));
    }
    const std::size_t start = pos_;
    if (auto v = gen_(text_, pos_)) return *v;
    pos_ = start;
    throw ParseError("unknown generator", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::function<Value(const Rational&)> lift_;
  GenLookup gen_;
};

std::optional<std::size_t> read_index(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) != 0) ++pos;
  if (start == pos) return std::nullopt;
  const std::string digits(text.substr(start, pos - start));
  if (digits.size() > 9) return std::nullopt;
  return std::stoul(digits);
}

}  // namespace

OrePoly parse(std::string_view input, const AlgebraSpec& algebra) {
  algebra.validate();
  const char dsym = algebra.kind == AlgebraKind::shift ? 's' : 'd';
  auto gen = [&](std::string_view text, std::size_t& pos) -> std::optional<OrePoly> {
    const std::size_t start = pos;
    bool is_x = false;
    if (text[pos] == 'x') {
      is_x = true;
      ++pos;
    } else if (text[pos] == dsym) {
      ++pos;
    } else if (dsym == 'd' && text.substr(pos, 3) == "\xE2\x88\x82") {
      pos += 3;
    } else {
      return std::nullopt;
    }
    const auto idx = read_index(text, pos);
    if (!idx) throw ParseError("generator without index", start);
    if (*idx == 0 || *idx > algebra.n) throw ParseError("generator index exceeds n", start);
    return is_x ? OrePoly::x(algebra, *idx - 1) : OrePoly::d(algebra, *idx - 1);
  };
  Parser<OrePoly> p(input, [&](const Rational& c) { return OrePoly::constant(algebra, c); }, gen);
  return p.run();
}

CommPoly parse_comm(std::string_view input, const VarSet& vars) {
  auto gen = [&](std::string_view text, std::size_t& pos) -> std::optional<CommPoly> {
    const std::size_t start = pos;
    if (std::isalpha(static_cast<unsigned char>(text[pos])) == 0) return std::nullopt;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) != 0 || text[pos] == '_')) ++pos;
    const std::string_view name = text.substr(start, pos - start);
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars.name(i) == name) return CommPoly::variable(vars, i);
    return std::nullopt;
  };
  Parser<CommPoly> p(input, [&](const Rational& c) { return CommPoly::constant(vars, c); }, gen);
  return p.run();
}

std::string print_canonical(const OrePoly& p) { return to_string(p); }

}  // namespace opfactor
