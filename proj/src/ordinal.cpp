#include "rosser/ordinal.hpp"

#include <cctype>

namespace rosser::ord {

Ordinal::Ordinal() = default;
Ordinal::Ordinal(const Ordinal&) = default;
Ordinal::Ordinal(Ordinal&&) noexcept = default;
Ordinal& Ordinal::operator=(const Ordinal&) = default;
Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
Ordinal::~Ordinal() = default;

bool Ordinal::is_zero() const { return parts_.empty(); }

Ordinal Ordinal::finite(const mpz_class& n) {
  Ordinal o;
  if (n > 0) o.parts_.push_back({zero(), n});
  return o;
}

Ordinal Ordinal::omega() { return monomial(finite(1), 1); }

Ordinal Ordinal::monomial(const Ordinal& exponent, const mpz_class& coefficient) {
  Ordinal o;
  if (coefficient > 0) o.parts_.push_back({exponent, coefficient});
  return o;
}

Ordinal Ordinal::plus_monomial(const Ordinal& exponent, const mpz_class& coefficient) const {
  Ordinal out = *this;
  if (coefficient <= 0) return out;
  while (!out.parts_.empty() && compare(out.parts_.back().exponent, exponent) == Cmp::LT)
    out.parts_.pop_back();
  if (!out.parts_.empty() && compare(out.parts_.back().exponent, exponent) == Cmp::EQ)
    out.parts_.back().coefficient += coefficient;
  else
    out.parts_.push_back({exponent, coefficient});
  return out;
}

bool Ordinal::is_finite() const {
  return parts_.empty() || (parts_.size() == 1 && parts_[0].exponent.is_zero());
}

std::optional<mpz_class> Ordinal::finite_value() const {
  if (parts_.empty()) return mpz_class(0);
  if (parts_.size() == 1 && parts_[0].exponent.is_zero()) return parts_[0].coefficient;
  return std::nullopt;
}

Ordinal::Kind Ordinal::kind() const {
  if (parts_.empty()) return Kind::Zero;
  return parts_.back().exponent.is_zero() ? Kind::Successor : Kind::Limit;
}

Ordinal Ordinal::predecessor() const {
  if (kind() != Kind::Successor) throw std::logic_error("predecessor of a non-successor");
  Ordinal out = *this;
  if (out.parts_.back().coefficient == 1)
    out.parts_.pop_back();
  else
    out.parts_.back().coefficient -= 1;
  return out;
}

Ordinal Ordinal::fundamental_sequence(const mpz_class& n) const {
  if (kind() != Kind::Limit) throw NotALimit(to_string());
  // Split off the last CNF term: self = base + w^e * c with e != 0.
  Ordinal base = *this;
  OrdinalPart last = base.parts_.back();
  base.parts_.pop_back();
  if (last.coefficient > 1)
    base.parts_.push_back({last.exponent, mpz_class(last.coefficient - 1)});
  // Now treat base + w^e.
  const Ordinal& e = last.exponent;
  if (e.kind() == Kind::Successor) {
    // base + w^(xi+1): n-th element is base + w^xi * n.
    return base.plus_monomial(e.predecessor(), n);
  }
  // base + w^e with e limit: n-th element is base + w^(e_n).
  return base.plus_monomial(e.fundamental_sequence(n), 1);
}

Cmp compare(const Ordinal& a, const Ordinal& b) {
  const auto& pa = a.parts();
  const auto& pb = b.parts();
  size_t m = std::min(pa.size(), pb.size());
  for (size_t i = 0; i < m; ++i) {
    Cmp ce = compare(pa[i].exponent, pb[i].exponent);
    if (ce != Cmp::EQ) return ce;
    int cc = cmp(pa[i].coefficient, pb[i].coefficient);
    if (cc < 0) return Cmp::LT;
    if (cc > 0) return Cmp::GT;
  }
  if (pa.size() < pb.size()) return Cmp::LT;
  if (pa.size() > pb.size()) return Cmp::GT;
  return Cmp::EQ;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
  switch (compare(*this, other)) {
    case Cmp::LT: return std::strong_ordering::less;
    case Cmp::GT: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

mpz_class Ordinal::weight() const {
  mpz_class w = 0;
  for (const auto& p : parts_) {
    if (!p.exponent.is_zero()) w += 1 + p.exponent.weight();
    w += p.coefficient;
  }
  return w;
}

namespace {

// exponent needs parentheses unless it prints as `w`, `w^...` with a single
// coefficient-1 term, or a plain number.
bool exponent_needs_parens(const Ordinal& e) {
  if (e.is_finite()) return false;
  const auto& ps = e.parts();
  return ps.size() > 1 || ps[0].coefficient != 1;
}

}  // namespace

std::string Ordinal::to_string() const {
  if (parts_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& p : parts_) {
    if (!first) out += "+";
    first = false;
    if (p.exponent.is_zero()) {
      out += p.coefficient.get_str();
      continue;
    }
    out += "w";
    if (!(p.exponent == finite(1))) {
      out += "^";
      if (exponent_needs_parens(p.exponent))
        out += "(" + p.exponent.to_string() + ")";
      else
        out += p.exponent.to_string();
    }
    if (p.coefficient != 1) out += "*" + p.coefficient.get_str();
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Ordinal run() {
    skip_ws();
    Ordinal value = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("expected '+' or end of input");
    return value;
  }

 private:
  Ordinal parse_sum() {
    Ordinal acc;
    while (true) {
      auto [e, c] = parse_part();
      acc = acc.plus_monomial(e, c);
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        ++pos_;
        skip_ws();
        continue;
      }
      break;
    }
    return acc;
  }

  // part := 'w' ('^' exponent)? ('*' nat)? | nat
  std::pair<Ordinal, mpz_class> parse_part() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected 'w' or a number");
    if (text_[pos_] == 'w') {
      ++pos_;
      Ordinal exponent = Ordinal::finite(1);
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        exponent = parse_exponent();
      }
      mpz_class coefficient = 1;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        coefficient = parse_nat();
      }
      return {exponent, coefficient};
    }
    if (std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return {Ordinal::zero(), parse_nat()};
    fail("expected 'w' or a number");
  }

  // exponent := '(' expr ')' | 'w' ('^' exponent)? | nat
  Ordinal parse_exponent() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected exponent");
    if (text_[pos_] == '(') {
      ++pos_;
      Ordinal inner = parse_sum();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (text_[pos_] == 'w') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        return Ordinal::monomial(parse_exponent(), 1);
      }
      return Ordinal::omega();
    }
    if (std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return Ordinal::finite(parse_nat());
    fail("expected exponent");
  }

  mpz_class parse_nat() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::parse(const std::string& text) { return Parser(text).run(); }

namespace {

void extend_universe(const std::vector<Ordinal>& exps, const Ordinal& cur, size_t idx, int budget,
                     std::vector<Ordinal>& out) {
  out.push_back(cur);
  for (size_t i = idx; i < exps.size(); ++i) {
    const Ordinal& e = exps[i];
    if (!cur.parts().empty() && !(e < cur.parts().back().exponent)) continue;
    int ecost = e.is_zero() ? 0 : 1 + static_cast<int>(e.weight().get_si());
    for (int c = 1; ecost + c <= budget; ++c)
      extend_universe(exps, cur.plus_monomial(e, c), i + 1, budget - ecost - c, out);
  }
}

}  // namespace

std::vector<Ordinal> bounded_universe(int max_weight) {
  if (max_weight < 0) return {};
  std::vector<Ordinal> exps =
      (max_weight == 0) ? std::vector<Ordinal>{Ordinal::zero()} : bounded_universe(max_weight - 1);
  std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
  std::vector<Ordinal> out;
  extend_universe(exps, Ordinal::zero(), 0, max_weight, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace rosser::ord
