#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rosser::ord {

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(size_t pos, const std::string& what)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

struct NotALimit : std::logic_error {
  explicit NotALimit(const std::string& spelled)
      : std::logic_error("fundamental sequence requested for non-limit notation " + spelled) {}
};

enum class Cmp { LT, EQ, GT };

struct OrdinalPart;

/// Ordinal notation in Cantor normal form, strictly below epsilon_0.
///
/// The value is a sum of terms w^exponent * coefficient with exponents
/// strictly decreasing and coefficients >= 1; the empty sum is 0.
class Ordinal {
 public:
  Ordinal();  // zero
  Ordinal(const Ordinal&);
  Ordinal(Ordinal&&) noexcept;
  Ordinal& operator=(const Ordinal&);
  Ordinal& operator=(Ordinal&&) noexcept;
  ~Ordinal();

  static Ordinal zero() { return Ordinal(); }
  static Ordinal finite(const mpz_class& n);
  static Ordinal omega();

  /// w^e * c as a single-term notation (c >= 1; c = 0 gives zero).
  static Ordinal monomial(const Ordinal& exponent, const mpz_class& coefficient);

  /// Ordinal sum self + w^e*c, normalizing per CNF (lower trailing terms are
  /// absorbed, equal exponents merge). Used by the parser and by successor
  /// construction; not exposed as general ordinal arithmetic.
  Ordinal plus_monomial(const Ordinal& exponent, const mpz_class& coefficient) const;

  /// self + n for finite n.
  Ordinal plus_finite(const mpz_class& n) const { return plus_monomial(zero(), n); }

  const std::vector<OrdinalPart>& parts() const { return parts_; }
  bool is_zero() const;
  bool is_finite() const;
  /// Value as an integer when finite; nullopt otherwise.
  std::optional<mpz_class> finite_value() const;

  enum class Kind { Zero, Successor, Limit };
  Kind kind() const;
  /// Predecessor when kind() == Successor.
  Ordinal predecessor() const;

  /// The n-th element of the standard fundamental sequence (Wainer-style
  /// assignment). Requires kind() == Limit; throws NotALimit otherwise.
  Ordinal fundamental_sequence(const mpz_class& n) const;

  std::string to_string() const;
  static Ordinal parse(const std::string& text);

  /// Structural measure used to carve out finite sub-universes of notations:
  /// weight(0)=0, each term adds coefficient plus (1 + weight(exponent)) when
  /// the exponent is nonzero.
  mpz_class weight() const;

  friend Cmp compare(const Ordinal& a, const Ordinal& b);
  std::strong_ordering operator<=>(const Ordinal& other) const;
  bool operator==(const Ordinal& other) const { return (*this <=> other) == 0; }

 private:
  std::vector<OrdinalPart> parts_;
};

struct OrdinalPart {
  Ordinal exponent;
  mpz_class coefficient;  // >= 1
};

Cmp compare(const Ordinal& a, const Ordinal& b);

/// All notations of weight <= max_weight, sorted increasing. Finite because
/// coefficients and nesting are bounded by the weight.
std::vector<Ordinal> bounded_universe(int max_weight);

}  // namespace rosser::ord
