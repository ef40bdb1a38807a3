#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rosser::fol {

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(size_t pos, const std::string& what)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

enum class TermKind : uint8_t { Var, Zero, Succ, Plus, Times };
enum class FormulaKind : uint8_t { Eq, Le, Not, Or, And, Implies, ForAll, Exists };

// Variable identity is an index into the canonical name space:
// 0..25 print as a..z, 26+k prints as v<k>. Fresh variables for
// capture-avoiding renaming are drawn from the v-pool in order.
using VarIndex = uint32_t;
std::string var_name(VarIndex v);
VarIndex var_index(const std::string& name);

class Term;
class Formula;

/// Interned, immutable term DAG node handle. Equality is node identity,
/// which coincides with structural equality.
class Term {
 public:
  Term() : id_(UINT32_MAX) {}
  bool valid() const { return id_ != UINT32_MAX; }

  TermKind kind() const;
  VarIndex var() const;          // Var
  uint64_t succ_count() const;   // Succ: length of the collapsed S-run (>= 1)
  Term succ_child() const;       // Succ: subterm under the whole run (never Succ itself)
  Term left() const;             // Plus/Times
  Term right() const;            // Plus/Times
  /// S^(count-1) applied to the child; peels one S off a run.
  Term succ_peel() const;

  /// AST symbol count with S-runs counted per application.
  uint64_t tree_size() const;
  const std::vector<VarIndex>& free_vars() const;
  bool closed() const { return free_vars().empty(); }

  std::string to_string() const;

  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;
  uint32_t raw_id() const { return id_; }
  static Term from_raw(uint32_t id) { return Term(id); }

 private:
  explicit Term(uint32_t id) : id_(id) {}
  friend class Arena;
  uint32_t id_;
};

class Formula {
 public:
  Formula() : id_(UINT32_MAX) {}
  bool valid() const { return id_ != UINT32_MAX; }

  FormulaKind kind() const;
  Term term_left() const;    // Eq/Le
  Term term_right() const;   // Eq/Le
  Formula sub_left() const;  // Not (the child), Or/And/Implies
  Formula sub_right() const;
  VarIndex bound_var() const;  // ForAll/Exists
  Formula body() const;        // ForAll/Exists

  uint64_t tree_size() const;
  const std::vector<VarIndex>& free_vars() const;
  bool closed() const { return free_vars().empty(); }

  std::string to_string() const;

  bool operator==(const Formula&) const = default;
  auto operator<=>(const Formula&) const = default;
  uint32_t raw_id() const { return id_; }
  static Formula from_raw(uint32_t id) { return Formula(id); }

 private:
  explicit Formula(uint32_t id) : id_(id) {}
  friend class Arena;
  uint32_t id_;
};

// Constructors. All construction goes through one global interning table;
// interning is guarded by a mutex (linearizable), nodes are immutable.
Term var(VarIndex v);
Term var(const std::string& name);
Term zero();
Term succ(Term t);
Term succ_run(Term t, uint64_t n);  // S^n(t); n = 0 returns t
Term plus(Term a, Term b);
Term times(Term a, Term b);

Formula eq(Term a, Term b);
Formula le(Term a, Term b);
Formula lnot(Formula a);
Formula lor(Formula a, Formula b);
Formula land(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula forall(VarIndex v, Formula body);
Formula exists(VarIndex v, Formula body);

/// S^n(0).
Term numeral(const mpz_class& n);
/// O(log n)-size closed term denoting n (base-4 Horner with S-wrapped digits).
Term efficient_numeral(const mpz_class& n);
/// numeral(n) below the threshold, efficient_numeral(n) at or above it.
Term embed_numeral(const mpz_class& n, const mpz_class& threshold);

/// Capture-avoiding substitution of t for free occurrences of v in phi.
/// Threatened binders are renamed deterministically from the v-pool.
Formula substitute(Formula phi, VarIndex v, Term t);
Term substitute(Term s, VarIndex v, Term t);

/// Standard-model value of a closed-under-env term. Throws if a free
/// variable has no binding.
mpz_class denote(Term t, const std::map<VarIndex, mpz_class>& env = {});

/// Number of distinct DAG nodes reachable from the formula (terms and
/// subformulas together).
uint64_t dag_size(Formula f);

Formula parse_formula(const std::string& text);
Term parse_term(const std::string& text);

// Balanced conjunction/disjunction over a list (empty conjunction = "0=0",
// used by emitters that build large matrices).
Formula conj_balanced(const std::vector<Formula>& fs);
Formula disj_balanced(const std::vector<Formula>& fs);

}  // namespace rosser::fol
