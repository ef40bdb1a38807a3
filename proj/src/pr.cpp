#include "rosser/pr.hpp"

#include <cctype>
#include <map>

#include "rosser/pr_library.hpp"

namespace rosser::pr {

namespace {
PrRef make(PrFunction n) { return std::make_shared<PrFunction>(std::move(n)); }
}  // namespace

PrRef zero_fn(unsigned arity) {
  PrFunction n;
  n.kind = PrKind::Zero;
  n.arity = arity;
  return make(std::move(n));
}

PrRef succ_fn() {
  PrFunction n;
  n.kind = PrKind::Succ;
  n.arity = 1;
  return make(std::move(n));
}

PrRef proj(unsigned arity, unsigned index) {
  if (index >= arity) throw ArityError("proj index out of range");
  PrFunction n;
  n.kind = PrKind::Proj;
  n.arity = arity;
  n.proj_index = index;
  return make(std::move(n));
}

PrRef compose(PrRef f, std::vector<PrRef> gs) {
  if (!f) throw ArityError("compose: null outer function");
  if (f->arity != gs.size()) throw ArityError("compose: outer arity != argument count");
  if (gs.empty()) throw ArityError("compose: needs at least one inner function");
  unsigned n = gs[0]->arity;
  for (const auto& g : gs)
    if (!g || g->arity != n) throw ArityError("compose: inner arity mismatch");
  PrFunction node;
  node.kind = PrKind::Compose;
  node.arity = n;
  node.f = std::move(f);
  node.inner = std::move(gs);
  return make(std::move(node));
}

PrRef primrec(PrRef base, PrRef step) {
  if (!base || !step) throw ArityError("primrec: null argument");
  if (step->arity != base->arity + 2)
    throw ArityError("primrec: step arity must be base arity + 2");
  PrFunction n;
  n.kind = PrKind::PrimRec;
  n.arity = base->arity + 1;
  n.f = std::move(base);
  n.g = std::move(step);
  return make(std::move(n));
}

PrRef bounded_search(PrRef pred, PrRef bound) {
  if (!pred || !bound) throw ArityError("bounded_search: null argument");
  if (pred->arity != bound->arity + 1)
    throw ArityError("bounded_search: predicate arity must be bound arity + 1");
  PrFunction n;
  n.kind = PrKind::BoundedSearch;
  n.arity = bound->arity;
  n.f = std::move(pred);
  n.g = std::move(bound);
  return make(std::move(n));
}

PrRef with_label(PrRef f, std::string label) {
  PrFunction n = *f;
  n.label = std::move(label);
  return make(std::move(n));
}

PrRef with_intrinsic(PrRef f, std::string name,
                     std::function<mpz_class(const std::vector<mpz_class>&)> fn, bool lazy_if) {
  PrFunction n = *f;
  n.intrinsic = std::move(fn);
  n.intrinsic_name = name;
  if (n.label.empty()) n.label = name;
  n.intrinsic_lazy_if = lazy_if;
  return make(std::move(n));
}

PrRef ap(PrRef f, std::vector<PrRef> args) { return compose(std::move(f), std::move(args)); }

mpz_class eval_pr(const PrRef& f, const std::vector<mpz_class>& args, const EvalOptions& opts) {
  if (!f) throw std::invalid_argument("eval_pr: null function");
  if (args.size() != f->arity) throw ArityError("eval_pr: argument count mismatch");
  if (opts.use_intrinsics && f->intrinsic && !f->intrinsic_lazy_if) return f->intrinsic(args);
  switch (f->kind) {
    case PrKind::Zero:
      return 0;
    case PrKind::Succ:
      return args[0] + 1;
    case PrKind::Proj:
      return args[f->proj_index];
    case PrKind::Compose: {
      // if-zero dispatch: with intrinsics on, evaluate only the taken branch
      if (opts.use_intrinsics && f->f->intrinsic_lazy_if && f->inner.size() == 3) {
        mpz_class c = eval_pr(f->inner[0], args, opts);
        return eval_pr(f->inner[c == 0 ? 1 : 2], args, opts);
      }
      std::vector<mpz_class> vals;
      vals.reserve(f->inner.size());
      for (const auto& g : f->inner) vals.push_back(eval_pr(g, args, opts));
      return eval_pr(f->f, vals, opts);
    }
    case PrKind::PrimRec: {
      const mpz_class& count = args.back();
      if (count > opts.loop_limit)
        throw EvalLimit("primitive recursion loop exceeds the evaluation limit");
      std::vector<mpz_class> base_args(args.begin(), args.end() - 1);
      mpz_class acc = eval_pr(f->f, base_args, opts);
      std::vector<mpz_class> step_args = base_args;
      step_args.emplace_back(0);
      step_args.emplace_back(0);
      for (mpz_class k = 0; k < count; ++k) {
        step_args[step_args.size() - 2] = k;
        step_args[step_args.size() - 1] = acc;
        acc = eval_pr(f->g, step_args, opts);
      }
      return acc;
    }
    case PrKind::BoundedSearch: {
      mpz_class bound = eval_pr(f->g, args, opts);
      if (bound > opts.loop_limit)
        throw EvalLimit("bounded search exceeds the evaluation limit");
      std::vector<mpz_class> pred_args = args;
      pred_args.emplace_back(0);
      for (mpz_class t = 0; t <= bound; ++t) {
        pred_args.back() = t;
        if (eval_pr(f->f, pred_args, opts) == 1) return t;
      }
      return bound + 1;
    }
  }
  throw std::logic_error("eval_pr: unreachable");
}

mpz_class beta(const mpz_class& c, const mpz_class& d, const mpz_class& i) {
  mpz_class m = 1 + (i + 1) * d;
  return c % m;
}

std::pair<mpz_class, mpz_class> beta_witness(const std::vector<mpz_class>& seq) {
  if (seq.empty()) return {0, 0};
  // choose d divisible by lcm(1..n) and larger than every value so the
  // moduli 1 + (i+1)d are pairwise coprime and big enough
  mpz_class d = 1;
  for (size_t i = 1; i <= seq.size(); ++i) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), d.get_mpz_t(), mpz_class(i).get_mpz_t());
    d = l;
  }
  mpz_class maxv = 0;
  for (const auto& v : seq)
    if (v > maxv) maxv = v;
  d *= (maxv + 1);
  // CRT: c = seq[i] mod m_i
  mpz_class c = 0, m = 1;
  for (size_t i = 0; i < seq.size(); ++i) {
    mpz_class mi = 1 + mpz_class(i + 1) * d;
    // solve c' = c mod m, c' = seq[i] mod mi
    mpz_class minv;
    if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t()) == 0)
      throw std::logic_error("beta_witness: moduli not coprime");
    mpz_class t = ((seq[i] - c) % mi * minv) % mi;
    if (t < 0) t += mi;
    c += m * t;
    m *= mi;
  }
  return {c, d};
}

// --- IR text format ---

namespace {

const std::map<std::string, PrRef>& library_env() {
  static const std::map<std::string, PrRef> env = {
      {"add", lib::add()},        {"mul", lib::mul()},        {"pred", lib::pred1()},
      {"monus", lib::monus()},    {"sign", lib::sign()},      {"eqz", lib::eqz()},
      {"le", lib::le2()},         {"lt", lib::lt2()},         {"eq", lib::eq2()},
      {"and", lib::and2()},       {"or", lib::or2()},         {"not", lib::not1()},
      {"ifz", lib::ifz()},        {"div", lib::divide()},     {"mod", lib::modulo()},
      {"pow", lib::power()},      {"pair", lib::cantor_pair()},
      {"fst", lib::cantor_fst()}, {"snd", lib::cantor_snd()},
  };
  return env;
}

class PrParser {
 public:
  explicit PrParser(const std::string& text) : text_(text) {}

  PrRef run() {
    PrRef main;
    while (true) {
      skip_ws_and_comments();
      if (pos_ >= text_.size()) break;
      std::string word = ident();
      if (word == "let") {
        std::string name = ident();
        expect('=');
        env_[name] = expr();
      } else if (word == "main") {
        main = expr();
      } else {
        fail("expected 'let' or 'main'");
      }
    }
    if (!main) fail("missing 'main' expression");
    return main;
  }

 private:
  PrRef expr() {
    skip_ws_and_comments();
    std::string name = ident();
    if (name == "zero") {
      expect('(');
      unsigned a = number();
      expect(')');
      return zero_fn(a);
    }
    if (name == "succ") return succ_fn();
    if (name == "proj") {
      expect('(');
      unsigned a = number();
      expect(',');
      unsigned i = number();
      expect(')');
      return proj(a, i);
    }
    if (name == "const") {
      expect('(');
      unsigned a = number();
      expect(',');
      unsigned k = number();
      expect(')');
      return lib::constant(a, k);
    }
    if (name == "compose") {
      expect('(');
      PrRef f = expr();
      std::vector<PrRef> gs;
      while (true) {
        skip_ws_and_comments();
        if (peek() == ',') {
          ++pos_;
          gs.push_back(expr());
        } else {
          break;
        }
      }
      expect(')');
      return compose(f, gs);
    }
    if (name == "primrec") {
      expect('(');
      PrRef b = expr();
      expect(',');
      PrRef s = expr();
      expect(')');
      return primrec(b, s);
    }
    if (name == "search") {
      expect('(');
      PrRef p = expr();
      expect(',');
      PrRef b = expr();
      expect(')');
      return bounded_search(p, b);
    }
    auto it = env_.find(name);
    if (it != env_.end()) return it->second;
    auto lit = library_env().find(name);
    if (lit != library_env().end()) return lit->second;
    fail("unknown name: " + name);
  }

  std::string ident() {
    skip_ws_and_comments();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  unsigned number() {
    skip_ws_and_comments();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws_and_comments();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("pr-fn parse error at offset " + std::to_string(pos_) + ": " +
                                msg);
  }

  const std::string& text_;
  size_t pos_ = 0;
  std::map<std::string, PrRef> env_;
};

void print_into(const PrRef& f, std::string& out, int depth) {
  if (!f->label.empty() && depth > 0) {
    out += f->label;
    return;
  }
  switch (f->kind) {
    case PrKind::Zero:
      out += "zero(" + std::to_string(f->arity) + ")";
      break;
    case PrKind::Succ:
      out += "succ";
      break;
    case PrKind::Proj:
      out += "proj(" + std::to_string(f->arity) + "," + std::to_string(f->proj_index) + ")";
      break;
    case PrKind::Compose:
      out += "compose(";
      print_into(f->f, out, depth + 1);
      for (const auto& g : f->inner) {
        out += ", ";
        print_into(g, out, depth + 1);
      }
      out += ")";
      break;
    case PrKind::PrimRec:
      out += "primrec(";
      print_into(f->f, out, depth + 1);
      out += ", ";
      print_into(f->g, out, depth + 1);
      out += ")";
      break;
    case PrKind::BoundedSearch:
      out += "search(";
      print_into(f->f, out, depth + 1);
      out += ", ";
      print_into(f->g, out, depth + 1);
      out += ")";
      break;
  }
}

}  // namespace

PrRef parse_pr_text(const std::string& text) { return PrParser(text).run(); }

std::string pr_to_string(const PrRef& f) {
  std::string out;
  print_into(f, out, 0);
  return out;
}

}  // namespace rosser::pr
