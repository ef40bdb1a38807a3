#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rosser/calculus.hpp"
#include "rosser/ordinal.hpp"
#include "rosser/syntax.hpp"

namespace rosser::godel {

// Numbering scheme: the object is flattened to a prefix symbol sequence over
// the fixed table below (category tag first), and the sequence is read as a
// bijective base-K number. Longer sequences always yield strictly larger
// values, and equal-length sequences compare lexicographically. The table and
// packing are normative; see CODING.md.
inline constexpr unsigned kBase = 29;
inline constexpr const char* kCodingVersion = "bb29-v1";

namespace sym {
inline constexpr unsigned kCatTerm = 1;
inline constexpr unsigned kCatFormula = 2;
inline constexpr unsigned kCatProof = 3;
inline constexpr unsigned kZero = 4;
inline constexpr unsigned kSucc = 5;
inline constexpr unsigned kPlus = 6;
inline constexpr unsigned kTimes = 7;
inline constexpr unsigned kEq = 8;
inline constexpr unsigned kLe = 9;
inline constexpr unsigned kNot = 10;
inline constexpr unsigned kOr = 11;
inline constexpr unsigned kAnd = 12;
inline constexpr unsigned kImplies = 13;
inline constexpr unsigned kForAll = 14;
inline constexpr unsigned kExists = 15;
inline constexpr unsigned kVar = 16;
inline constexpr unsigned kDigit0 = 17;  // ..kDigit0+7: base-8 digits
inline constexpr unsigned kEnd = 25;
inline constexpr unsigned kJustLogical = 26;
inline constexpr unsigned kJustNonLogical = 27;
inline constexpr unsigned kJustMP = 28;
inline constexpr unsigned kJustGen = 29;
}  // namespace sym

struct GodelNumber {
  mpz_class value;
  GodelNumber() = default;
  explicit GodelNumber(mpz_class v) : value(std::move(v)) {}
  auto operator<=>(const GodelNumber& o) const { return cmp(value, o.value) <=> 0; }
  bool operator==(const GodelNumber& o) const { return value == o.value; }
  std::string dec() const { return value.get_str(); }
  std::string hex() const { return value.get_str(16); }
};

struct NotACode : std::runtime_error {
  size_t offset;  // symbol position of the failure, SIZE_MAX if structural
  NotACode(const std::string& what, size_t off)
      : std::runtime_error(what + (off == SIZE_MAX ? "" : " (at symbol " + std::to_string(off) + ")")),
        offset(off) {}
};
struct NotATermCode : NotACode {
  using NotACode::NotACode;
};
struct NotAFormulaCode : NotACode {
  using NotACode::NotACode;
};
struct NotAProofCode : NotACode {
  using NotACode::NotACode;
};

GodelNumber encode_term(fol::Term t);
GodelNumber encode_formula(fol::Formula f);
GodelNumber encode_proof(const proofs::Proof& p);

fol::Term decode_term(const GodelNumber& g);
fol::Formula decode_formula(const GodelNumber& g);
proofs::Proof decode_proof(const GodelNumber& g);

ord::Cmp compare_codes(const GodelNumber& a, const GodelNumber& b);

/// Number of symbols in the flattened sequence, category tag included.
/// Cheap (derived from cached sizes, not from the value).
mpz_class code_length_term(fol::Term t);
mpz_class code_length_formula(fol::Formula f);

/// Flattened symbol sequence of a formula (category tag included); intended
/// for tests and small objects.
std::vector<unsigned> flatten_formula(fol::Formula f);

/// Packs a raw symbol sequence (digits in 1..kBase). Exposed so tests can
/// hand-compute expected codes from the documented table.
GodelNumber pack_symbols(const std::vector<unsigned>& symbols);
std::vector<unsigned> unpack_symbols(const GodelNumber& g);

// Closed-form pieces used both by the encoder and by the arithmetized
// decider: the value of a run of `count` copies of `symbol`, and the value
// shift for appending a length-`len` suffix.
mpz_class run_value(unsigned symbol, const mpz_class& count);
mpz_class base_power(const mpz_class& len);

}  // namespace rosser::godel
