#include "rosser/coding.hpp"

#include <mutex>
#include <unordered_map>

namespace rosser::godel {

using fol::Formula;
using fol::FormulaKind;
using fol::Term;
using fol::TermKind;
using fol::VarIndex;
using proofs::Justification;
using proofs::Proof;

namespace {

std::vector<unsigned> index_digits(uint64_t n) {
  // base-8 digits, most significant first; empty for 0
  std::vector<unsigned> out;
  while (n > 0) {
    out.push_back(sym::kDigit0 + static_cast<unsigned>(n % 8));
    n /= 8;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

uint64_t var_token_length(VarIndex v) {
  uint64_t digits = 0;
  for (uint64_t n = v; n > 0; n /= 8) ++digits;
  return 2 + digits;  // kVar, digits, kEnd
}

// --- cached flattened lengths (symbols, excluding the category tag) ---

std::mutex len_mutex;
std::unordered_map<uint32_t, uint64_t> term_len_cache;
std::unordered_map<uint32_t, uint64_t> formula_len_cache;

uint64_t term_flat_length(Term t);

uint64_t term_flat_length_uncached(Term t) {
  switch (t.kind()) {
    case TermKind::Var:
      return var_token_length(t.var());
    case TermKind::Zero:
      return 1;
    case TermKind::Succ:
      return t.succ_count() + term_flat_length(t.succ_child());
    case TermKind::Plus:
    case TermKind::Times:
      return 1 + term_flat_length(t.left()) + term_flat_length(t.right());
  }
  return 0;
}

uint64_t term_flat_length(Term t) {
  {
    std::lock_guard lock(len_mutex);
    auto it = term_len_cache.find(t.raw_id());
    if (it != term_len_cache.end()) return it->second;
  }
  // iterative post-order so deep numeral chains do not overflow the stack
  std::vector<Term> todo{t};
  while (!todo.empty()) {
    Term cur = todo.back();
    {
      std::lock_guard lock(len_mutex);
      if (term_len_cache.count(cur.raw_id())) {
        todo.pop_back();
        continue;
      }
    }
    bool ready = true;
    auto need = [&](Term c) {
      std::lock_guard lock(len_mutex);
      if (!term_len_cache.count(c.raw_id())) {
        ready = false;
        return true;
      }
      return false;
    };
    switch (cur.kind()) {
      case TermKind::Succ:
        if (need(cur.succ_child())) todo.push_back(cur.succ_child());
        break;
      case TermKind::Plus:
      case TermKind::Times:
        if (need(cur.left())) todo.push_back(cur.left());
        if (need(cur.right())) todo.push_back(cur.right());
        break;
      default:
        break;
    }
    if (!ready) continue;
    uint64_t len = term_flat_length_uncached(cur);
    std::lock_guard lock(len_mutex);
    term_len_cache.emplace(cur.raw_id(), len);
    todo.pop_back();
  }
  std::lock_guard lock(len_mutex);
  return term_len_cache.at(t.raw_id());
}

uint64_t formula_flat_length(Formula f) {
  {
    std::lock_guard lock(len_mutex);
    auto it = formula_len_cache.find(f.raw_id());
    if (it != formula_len_cache.end()) return it->second;
  }
  uint64_t len = 0;
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Le:
      len = 1 + term_flat_length(f.term_left()) + term_flat_length(f.term_right());
      break;
    case FormulaKind::Not:
      len = 1 + formula_flat_length(f.sub_left());
      break;
    case FormulaKind::Or:
    case FormulaKind::And:
    case FormulaKind::Implies:
      len = 1 + formula_flat_length(f.sub_left()) + formula_flat_length(f.sub_right());
      break;
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      len = 1 + var_token_length(f.bound_var()) + formula_flat_length(f.body());
      break;
  }
  std::lock_guard lock(len_mutex);
  formula_len_cache.emplace(f.raw_id(), len);
  return len;
}

// --- packing ---

mpz_class pow_base(uint64_t e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), kBase, e);
  return out;
}

struct Piece {
  mpz_class value;
  uint64_t length;
};

class Packer {
 public:
  void sym(unsigned s) {
    buf_.push_back(s);
    if (buf_.size() >= kChunk) flush();
  }

  void run(unsigned s, uint64_t count) {
    if (count < 64) {
      for (uint64_t i = 0; i < count; ++i) sym(s);
      return;
    }
    flush();
    // value of s repeated count times: s * (B^count - 1) / (B - 1)
    pieces_.push_back({run_value(s, mpz_class(count)), count});
  }

  void piece(mpz_class v, uint64_t len) {
    flush();
    pieces_.push_back({std::move(v), len});
  }

  GodelNumber finish() {
    flush();
    if (pieces_.empty()) return GodelNumber(mpz_class(0));
    // balanced pairwise reduction keeps the bignum work quasi-linear
    std::vector<Piece> cur = std::move(pieces_);
    while (cur.size() > 1) {
      std::vector<Piece> next;
      next.reserve((cur.size() + 1) / 2);
      for (size_t i = 0; i + 1 < cur.size(); i += 2) {
        Piece combined;
        combined.value = cur[i].value * pow_base(cur[i + 1].length) + cur[i + 1].value;
        combined.length = cur[i].length + cur[i + 1].length;
        next.push_back(std::move(combined));
      }
      if (cur.size() % 2 == 1) next.push_back(std::move(cur.back()));
      cur = std::move(next);
    }
    return GodelNumber(std::move(cur[0].value));
  }

 private:
  static constexpr size_t kChunk = 4096;

  void flush() {
    if (buf_.empty()) return;
    mpz_class v = 0;
    for (unsigned s : buf_) {
      v *= kBase;
      v += s;
    }
    pieces_.push_back({std::move(v), buf_.size()});
    buf_.clear();
  }

  std::vector<unsigned> buf_;
  std::vector<Piece> pieces_;
};

void emit_var_token(Packer& p, VarIndex v) {
  p.sym(sym::kVar);
  for (unsigned d : index_digits(v)) p.sym(d);
  p.sym(sym::kEnd);
}

// Iterative flattening over the term/formula DAG.
struct FlattenItem {
  enum What : uint8_t { TermItem, FormulaItem } what;
  Term t;
  Formula f;
};

void flatten_term_into(Packer& p, Term root) {
  std::vector<Term> stack{root};
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    switch (t.kind()) {
      case TermKind::Var:
        emit_var_token(p, t.var());
        break;
      case TermKind::Zero:
        p.sym(sym::kZero);
        break;
      case TermKind::Succ:
        p.run(sym::kSucc, t.succ_count());
        stack.push_back(t.succ_child());
        break;
      case TermKind::Plus:
        p.sym(sym::kPlus);
        stack.push_back(t.right());
        stack.push_back(t.left());
        break;
      case TermKind::Times:
        p.sym(sym::kTimes);
        stack.push_back(t.right());
        stack.push_back(t.left());
        break;
    }
  }
}

void flatten_formula_into(Packer& p, Formula root) {
  std::vector<FlattenItem> stack{{FlattenItem::FormulaItem, {}, root}};
  while (!stack.empty()) {
    FlattenItem item = stack.back();
    stack.pop_back();
    if (item.what == FlattenItem::TermItem) {
      flatten_term_into(p, item.t);
      continue;
    }
    Formula f = item.f;
    switch (f.kind()) {
      case FormulaKind::Eq:
      case FormulaKind::Le:
        p.sym(f.kind() == FormulaKind::Eq ? sym::kEq : sym::kLe);
        stack.push_back({FlattenItem::TermItem, f.term_right(), {}});
        stack.push_back({FlattenItem::TermItem, f.term_left(), {}});
        break;
      case FormulaKind::Not:
        p.sym(sym::kNot);
        stack.push_back({FlattenItem::FormulaItem, {}, f.sub_left()});
        break;
      case FormulaKind::Or:
      case FormulaKind::And:
      case FormulaKind::Implies: {
        unsigned s = f.kind() == FormulaKind::Or    ? sym::kOr
                     : f.kind() == FormulaKind::And ? sym::kAnd
                                                    : sym::kImplies;
        p.sym(s);
        stack.push_back({FlattenItem::FormulaItem, {}, f.sub_right()});
        stack.push_back({FlattenItem::FormulaItem, {}, f.sub_left()});
        break;
      }
      case FormulaKind::ForAll:
      case FormulaKind::Exists:
        p.sym(f.kind() == FormulaKind::ForAll ? sym::kForAll : sym::kExists);
        emit_var_token(p, f.bound_var());
        stack.push_back({FlattenItem::FormulaItem, {}, f.body()});
        break;
    }
  }
}

void flatten_justification_into(Packer& p, const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::AxiomLogical:
      p.sym(sym::kJustLogical);
      for (unsigned d : index_digits(j.schema_id)) p.sym(d);
      p.sym(sym::kEnd);
      break;
    case Justification::Kind::AxiomNonLogical:
      p.sym(sym::kJustNonLogical);
      break;
    case Justification::Kind::ModusPonens:
      p.sym(sym::kJustMP);
      for (unsigned d : index_digits(j.i)) p.sym(d);
      p.sym(sym::kEnd);
      for (unsigned d : index_digits(j.j)) p.sym(d);
      p.sym(sym::kEnd);
      break;
    case Justification::Kind::Generalization:
      p.sym(sym::kJustGen);
      for (unsigned d : index_digits(j.i)) p.sym(d);
      p.sym(sym::kEnd);
      emit_var_token(p, j.var);
      break;
  }
}

}  // namespace

mpz_class run_value(unsigned symbol, const mpz_class& count) {
  if (!count.fits_ulong_p()) throw std::invalid_argument("run too long");
  mpz_class p = pow_base(count.get_ui());
  return symbol * (p - 1) / (kBase - 1);
}

mpz_class base_power(const mpz_class& len) {
  if (!len.fits_ulong_p()) throw std::invalid_argument("length too large");
  return pow_base(len.get_ui());
}

GodelNumber pack_symbols(const std::vector<unsigned>& symbols) {
  Packer p;
  for (unsigned s : symbols) {
    if (s < 1 || s > kBase) throw std::invalid_argument("symbol out of range");
    p.sym(s);
  }
  return p.finish();
}

std::vector<unsigned> unpack_symbols(const GodelNumber& g) {
  const mpz_class& v = g.value;
  if (v < 0) throw NotACode("negative value", SIZE_MAX);
  if (v == 0) return {};
  // length L satisfies off(L) <= v < off(L+1), off(L) = (B^L - 1)/(B - 1)
  size_t approx = mpz_sizeinbase(v.get_mpz_t(), kBase);
  uint64_t len = approx;
  auto off = [](uint64_t l) { return mpz_class((pow_base(l) - 1) / (kBase - 1)); };
  while (len > 1 && off(len) > v) --len;
  while (off(len + 1) <= v) ++len;
  mpz_class rest = v - off(len);
  // rest written in plain base-K with leading zeros to width len, each digit + 1
  std::string s = rest.get_str(kBase);
  std::vector<unsigned> out(len, 1);
  size_t pad = len - s.size();
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    unsigned d = (c >= '0' && c <= '9') ? c - '0' : c - 'a' + 10;
    out[pad + i] = d + 1;
  }
  return out;
}

GodelNumber encode_term(Term t) {
  Packer p;
  p.sym(sym::kCatTerm);
  flatten_term_into(p, t);
  return p.finish();
}

GodelNumber encode_formula(Formula f) {
  Packer p;
  p.sym(sym::kCatFormula);
  flatten_formula_into(p, f);
  return p.finish();
}

GodelNumber encode_proof(const Proof& pr) {
  Packer p;
  p.sym(sym::kCatProof);
  for (const auto& step : pr.steps) {
    flatten_justification_into(p, step.just);
    flatten_formula_into(p, step.formula);
  }
  return p.finish();
}

mpz_class code_length_term(Term t) { return mpz_class(1) + term_flat_length(t); }
mpz_class code_length_formula(Formula f) { return mpz_class(1) + formula_flat_length(f); }

std::vector<unsigned> flatten_formula(Formula f) {
  GodelNumber g = encode_formula(f);
  return unpack_symbols(g);
}

ord::Cmp compare_codes(const GodelNumber& a, const GodelNumber& b) {
  int c = cmp(a.value, b.value);
  return c < 0 ? ord::Cmp::LT : c > 0 ? ord::Cmp::GT : ord::Cmp::EQ;
}

// --- decoding ---

namespace {

class Decoder {
 public:
  Decoder(const std::vector<unsigned>& syms) : syms_(syms) {}

  size_t pos() const { return pos_; }
  bool done() const { return pos_ == syms_.size(); }

  unsigned peek() const {
    if (pos_ >= syms_.size()) throw NotACode("truncated code", pos_);
    return syms_[pos_];
  }

  unsigned next() {
    unsigned s = peek();
    ++pos_;
    return s;
  }

  uint64_t read_index(const char* what) {
    uint64_t n = 0;
    size_t digits = 0;
    while (true) {
      unsigned s = next();
      if (s == sym::kEnd) break;
      if (s < sym::kDigit0 || s >= sym::kDigit0 + 8)
        throw NotACode(std::string("bad digit in ") + what, pos_ - 1);
      if (digits == 0 && s == sym::kDigit0 && peek() != sym::kEnd)
        throw NotACode(std::string("leading zero in ") + what, pos_ - 1);
      n = n * 8 + (s - sym::kDigit0);
      ++digits;
      if (digits > 21) throw NotACode(std::string("oversized ") + what, pos_ - 1);
    }
    return n;
  }

  VarIndex read_var_token() {
    if (next() != sym::kVar) throw NotACode("expected variable", pos_ - 1);
    return static_cast<VarIndex>(read_index("variable index"));
  }

  // Iterative prefix parser; deep codes (numeral chains) must not recurse.
  struct Frame {
    enum Kind : uint8_t { TSucc, TBin, FAtom, FNot, FBin, FQuant } kind;
    unsigned op = 0;     // original symbol for binary/atom frames
    uint64_t run = 0;    // TSucc
    VarIndex var = 0;    // FQuant
    Term t;              // first collected term
    Formula f;           // first collected formula
    uint8_t got = 0;
  };

  Term parse_term() { return parse_value(false).first; }
  Formula parse_formula() { return parse_value(true).second; }

  std::pair<Term, Formula> parse_value(bool want_formula) {
    std::vector<Frame> frames;
    bool expect_formula = want_formula;
    while (true) {
      Term done_term;
      Formula done_formula;
      bool have_term = false, have_formula = false;

      if (expect_formula) {
        unsigned s = next();
        switch (s) {
          case sym::kEq:
          case sym::kLe:
            frames.push_back({Frame::FAtom, s, 0, 0, {}, {}, 0});
            expect_formula = false;
            continue;
          case sym::kNot:
            frames.push_back({Frame::FNot, s, 0, 0, {}, {}, 0});
            continue;
          case sym::kOr:
          case sym::kAnd:
          case sym::kImplies:
            frames.push_back({Frame::FBin, s, 0, 0, {}, {}, 0});
            continue;
          case sym::kForAll:
          case sym::kExists:
            frames.push_back({Frame::FQuant, s, 0, read_var_token(), {}, {}, 0});
            continue;
          default:
            throw NotACode("expected a formula symbol", pos_ - 1);
        }
      } else {
        unsigned s = next();
        switch (s) {
          case sym::kZero:
            done_term = fol::zero();
            have_term = true;
            break;
          case sym::kVar:
            --pos_;
            done_term = fol::var(read_var_token());
            have_term = true;
            break;
          case sym::kSucc: {
            uint64_t run = 1;
            while (pos_ < syms_.size() && syms_[pos_] == sym::kSucc) {
              ++pos_;
              ++run;
            }
            frames.push_back({Frame::TSucc, s, run, 0, {}, {}, 0});
            continue;
          }
          case sym::kPlus:
          case sym::kTimes:
            frames.push_back({Frame::TBin, s, 0, 0, {}, {}, 0});
            continue;
          default:
            throw NotACode("expected a term symbol", pos_ - 1);
        }
      }

      // reduce completed values through the frame stack
      while (have_term || have_formula) {
        if (frames.empty()) {
          if (have_formula && want_formula) return {Term(), done_formula};
          if (have_term && !want_formula) return {done_term, Formula()};
          throw NotACode("category mismatch", pos_);
        }
        Frame& top = frames.back();
        switch (top.kind) {
          case Frame::TSucc:
            done_term = fol::succ_run(done_term, top.run);
            frames.pop_back();
            break;
          case Frame::TBin:
            if (top.got == 0) {
              top.t = done_term;
              top.got = 1;
              have_term = false;  // await the second term
            } else {
              done_term =
                  top.op == sym::kPlus ? fol::plus(top.t, done_term) : fol::times(top.t, done_term);
              frames.pop_back();
            }
            break;
          case Frame::FAtom:
            if (top.got == 0) {
              top.t = done_term;
              top.got = 1;
              have_term = false;  // await the second term
            } else {
              done_formula = top.op == sym::kEq ? fol::eq(top.t, done_term)
                                                : fol::le(top.t, done_term);
              have_term = false;
              have_formula = true;
              frames.pop_back();
            }
            break;
          case Frame::FNot:
            done_formula = fol::lnot(done_formula);
            frames.pop_back();
            break;
          case Frame::FBin:
            if (top.got == 0) {
              top.f = done_formula;
              top.got = 1;
              have_formula = false;  // await the second formula
            } else {
              done_formula = top.op == sym::kOr    ? fol::lor(top.f, done_formula)
                             : top.op == sym::kAnd ? fol::land(top.f, done_formula)
                                                   : fol::implies(top.f, done_formula);
              frames.pop_back();
            }
            break;
          case Frame::FQuant:
            done_formula = top.op == sym::kForAll ? fol::forall(top.var, done_formula)
                                                  : fol::exists(top.var, done_formula);
            frames.pop_back();
            break;
        }
      }
      // figure out what the next expected category is
      if (!frames.empty()) {
        const Frame& top = frames.back();
        expect_formula = !(top.kind == Frame::TSucc || top.kind == Frame::TBin ||
                           top.kind == Frame::FAtom);
      }
    }
  }

  Justification parse_justification() {
    Justification j;
    unsigned s = next();
    switch (s) {
      case sym::kJustLogical:
        j.kind = Justification::Kind::AxiomLogical;
        j.schema_id = static_cast<uint32_t>(read_index("schema id"));
        break;
      case sym::kJustNonLogical:
        j.kind = Justification::Kind::AxiomNonLogical;
        break;
      case sym::kJustMP:
        j.kind = Justification::Kind::ModusPonens;
        j.i = static_cast<uint32_t>(read_index("step index"));
        j.j = static_cast<uint32_t>(read_index("step index"));
        break;
      case sym::kJustGen:
        j.kind = Justification::Kind::Generalization;
        j.i = static_cast<uint32_t>(read_index("step index"));
        j.var = read_var_token();
        break;
      default:
        throw NotACode("expected a justification tag", pos_ - 1);
    }
    return j;
  }

 private:
  const std::vector<unsigned>& syms_;
  size_t pos_ = 0;
};

}  // namespace

Term decode_term(const GodelNumber& g) {
  std::vector<unsigned> syms = unpack_symbols(g);
  try {
    Decoder d(syms);
    if (syms.empty() || d.next() != sym::kCatTerm) throw NotACode("not a term category", 0);
    Term t = d.parse_term();
    if (!d.done()) throw NotACode("trailing symbols", d.pos());
    return t;
  } catch (const NotACode& e) {
    throw NotATermCode(e.what(), e.offset);
  }
}

Formula decode_formula(const GodelNumber& g) {
  std::vector<unsigned> syms = unpack_symbols(g);
  try {
    Decoder d(syms);
    if (syms.empty() || d.next() != sym::kCatFormula)
      throw NotACode("not a formula category", 0);
    Formula f = d.parse_formula();
    if (!d.done()) throw NotACode("trailing symbols", d.pos());
    return f;
  } catch (const NotACode& e) {
    throw NotAFormulaCode(e.what(), e.offset);
  }
}

Proof decode_proof(const GodelNumber& g) {
  std::vector<unsigned> syms = unpack_symbols(g);
  try {
    Decoder d(syms);
    if (syms.empty() || d.next() != sym::kCatProof) throw NotACode("not a proof category", 0);
    Proof p;
    while (!d.done()) {
      proofs::ProofStep step;
      step.just = d.parse_justification();
      step.formula = d.parse_formula();
      p.steps.push_back(step);
    }
    if (p.steps.empty()) throw NotACode("empty proof", 1);
    return p;
  } catch (const NotACode& e) {
    throw NotAProofCode(e.what(), e.offset);
  }
}

}  // namespace rosser::godel
