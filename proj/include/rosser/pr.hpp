#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rosser::pr {

class PrFunction;
using PrRef = std::shared_ptr<const PrFunction>;

enum class PrKind : uint8_t { Zero, Succ, Proj, Compose, PrimRec, BoundedSearch };

/// Primitive-recursive function description.
///
/// Arity conventions:
///   Compose(f, [g1..gm])    arity of the g's; f has arity m
///   PrimRec(base, step)     arity(base)+1, recursion on the LAST argument:
///                           h(x.., 0) = base(x..), h(x.., k+1) = step(x.., k, h(x.., k))
///   BoundedSearch(p, b)     arity(b); value = least t <= b(x..) with p(x.., t) = 1,
///                           else b(x..) + 1
///
/// A node may carry an intrinsic: an equivalent big-integer fast path used by
/// eval_pr. Compilation always follows the structural definition, and the
/// library's intrinsics are differential-tested against their structures.
class PrFunction {
 public:
  PrKind kind;
  unsigned arity = 0;
  unsigned proj_index = 0;             // Proj
  PrRef f;                             // Compose outer / PrimRec base / BoundedSearch predicate
  PrRef g;                             // PrimRec step / BoundedSearch bound
  std::vector<PrRef> inner;            // Compose arguments
  std::string label;                   // optional name for printing
  std::function<mpz_class(const std::vector<mpz_class>&)> intrinsic;
  std::string intrinsic_name;
  bool intrinsic_lazy_if = false;      // if-zero dispatch: evaluate only the taken branch
};

struct ArityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EvalLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PrRef zero_fn(unsigned arity);
PrRef succ_fn();
PrRef proj(unsigned arity, unsigned index);
PrRef compose(PrRef f, std::vector<PrRef> gs);
PrRef primrec(PrRef base, PrRef step);
PrRef bounded_search(PrRef pred, PrRef bound);

PrRef with_label(PrRef f, std::string label);
PrRef with_intrinsic(PrRef f, std::string name,
                     std::function<mpz_class(const std::vector<mpz_class>&)> fn,
                     bool lazy_if = false);

/// Shorthand for compose(f, args) with arity checking.
PrRef ap(PrRef f, std::vector<PrRef> args);

struct EvalOptions {
  bool use_intrinsics = true;
  // trips EvalLimit when a single PrimRec/BoundedSearch loop exceeds this
  unsigned long loop_limit = 200000000ul;
};

mpz_class eval_pr(const PrRef& f, const std::vector<mpz_class>& args,
                  const EvalOptions& opts = {});

/// Godel's beta function: c mod (1 + (i+1)*d).
mpz_class beta(const mpz_class& c, const mpz_class& d, const mpz_class& i);

/// Witness (c, d) with beta(c, d, i) = seq[i] for all i < |seq| (CRT
/// construction; values can be large).
std::pair<mpz_class, mpz_class> beta_witness(const std::vector<mpz_class>& seq);

// IR text format (see FORMATS.md): a list of `let name = expr` bindings and a
// final `main expr`. Library names are in scope.
PrRef parse_pr_text(const std::string& text);
std::string pr_to_string(const PrRef& f);

}  // namespace rosser::pr
