#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rosser/syntax.hpp"

namespace rosser::proofs {

/// Hilbert-style proof: a flat list of steps, each carrying its claimed
/// justification. A Proof is inert data; only check_proof establishes
/// validity.
struct Justification {
  enum class Kind : uint8_t { AxiomLogical, AxiomNonLogical, ModusPonens, Generalization };
  Kind kind = Kind::AxiomLogical;
  uint32_t schema_id = 0;  // AxiomLogical: registry id, 0 = unspecified
  uint32_t i = 0, j = 0;   // earlier step references (MP: i premise, j implication)
  fol::VarIndex var = 0;   // Generalization

  bool operator==(const Justification&) const = default;
};

struct ProofStep {
  fol::Formula formula;
  Justification just;
  bool operator==(const ProofStep&) const = default;
};

struct Proof {
  std::vector<ProofStep> steps;
  bool operator==(const Proof&) const = default;
};

/// Stable registry of the logical axiom schemas (propositional, quantifier)
/// used for diagnostics and for the schema_id field of proofs.
struct SchemaInfo {
  uint32_t id;
  const char* name;
};
const std::vector<SchemaInfo>& logical_schemas();

// Base-system axiomhood. The base system is a Kleene-style first-order
// number theory over 0, S, +, *, = with <= primitive, plus the full
// induction schema. Everything is decided by structural schema matching;
// there is no proof search.
bool is_logical_axiom(fol::Formula phi);
bool is_nonlogical_base_axiom(fol::Formula phi);  // equality, arithmetic, <=, induction
bool is_base_axiom(fol::Formula phi);             // either of the above
bool is_induction_instance(fol::Formula phi);

/// Builds the induction-schema instance for body A and induction variable x:
/// A[x:=0] -> (all x (A -> A[x:=Sx]) -> all x A). The instance is accepted by
/// the matcher only when x is not re-bound inside A (the builder's canonical
/// discipline).
fol::Formula induction_instance(fol::Formula body, fol::VarIndex x);

using AxiomDecider = std::function<bool(fol::Formula)>;

struct CheckResult {
  bool ok = false;
  std::string diagnostic;      // empty on success
  size_t failing_step = SIZE_MAX;
  explicit operator bool() const { return ok; }
};

/// Validates every step (axiom per the decider / base schemas, modus ponens,
/// generalization over earlier steps) and that the last step equals target.
/// decider covers non-logical axioms beyond the base system; pass nullptr
/// for the bare base system.
CheckResult check_proof(const Proof& p, fol::Formula target, const AxiomDecider& decider);

/// Not(phi), purely syntactic.
fol::Formula negate(fol::Formula phi);

// Proof exchange format (JSON), see FORMATS.md.
std::string proof_to_json(const Proof& p);
Proof proof_from_json(const std::string& text);

}  // namespace rosser::proofs
