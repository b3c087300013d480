#include "sortsynth/formula.hpp"

#include <functional>

#include "lexer.hpp"

namespace sortsynth {

std::string_view predName(Pred p) {
  switch (p) {
    case Pred::EqMS: return "eqms";
    case Pred::EqT: return "eq";
    case Pred::Neq: return "neq";
    case Pred::Leq: return "leq";
    case Pred::Lt: return "lt";
    case Pred::Sorted: return "sorted";
  }
  return "?";
}

namespace {

void checkAtom(Pred p, const std::vector<Term>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw SortError(std::string(predName(p)) + ": wrong arity");
  };
  switch (p) {
    case Pred::EqMS:
      need(2);
      if (args[0].sort() != Sort::MSet || args[1].sort() != Sort::MSet)
        throw SortError("eqms expects multisets");
      return;
    case Pred::EqT:
    case Pred::Neq:
      need(2);
      if (args[0].sort() != args[1].sort()) throw SortError("eq/neq sort mismatch");
      return;
    case Pred::Leq:
    case Pred::Lt:
      need(2);
      for (const auto& a : args)
        if (a.sort() != Sort::Element && a.sort() != Sort::List)
          throw SortError("ordering expects elements or lists");
      return;
    case Pred::Sorted:
      need(1);
      if (args[0].sort() != Sort::List) throw SortError("sorted expects a list");
      return;
  }
}

}  // namespace

Formula Formula::make(FormulaKind k, Pred p, std::vector<Term> args, std::vector<Formula> subs) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{k, p, std::move(args), std::move(subs)}));
}

Formula Formula::truth() {
  static const Formula f = make(FormulaKind::True, Pred::EqT, {}, {});
  return f;
}

Formula Formula::falsity() {
  static const Formula f = make(FormulaKind::False, Pred::EqT, {}, {});
  return f;
}

Formula Formula::atom(Pred p, std::vector<Term> args) {
  checkAtom(p, args);
  return make(FormulaKind::Atom, p, std::move(args), {});
}

Formula Formula::negate(Formula f) {
  if (f.isTrue()) return falsity();
  if (f.isFalse()) return truth();
  if (f.kind() == FormulaKind::Not) return f.subs().front();
  if (f.isAtom(Pred::EqT)) return neq(f.args()[0], f.args()[1]);
  if (f.isAtom(Pred::Neq)) return eq(f.args()[0], f.args()[1]);
  // Negated element orderings flip; list orderings have no such law.
  if (f.isAtom(Pred::Leq) && f.args()[0].sort() == Sort::Element && f.args()[1].sort() == Sort::Element)
    return lt(f.args()[1], f.args()[0]);
  if (f.isAtom(Pred::Lt) && f.args()[0].sort() == Sort::Element && f.args()[1].sort() == Sort::Element)
    return leq(f.args()[1], f.args()[0]);
  return make(FormulaKind::Not, Pred::EqT, {}, {std::move(f)});
}

Formula Formula::conj(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (f.isTrue()) continue;
    if (f.isFalse()) return falsity();
    if (f.kind() == FormulaKind::And) {
      for (const auto& g : f.subs()) flat.push_back(g);
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return truth();
  if (flat.size() == 1) return flat.front();
  return make(FormulaKind::And, Pred::EqT, {}, std::move(flat));
}

Formula Formula::disj(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (f.isFalse()) continue;
    if (f.isTrue()) return truth();
    if (f.kind() == FormulaKind::Or) {
      for (const auto& g : f.subs()) flat.push_back(g);
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return falsity();
  if (flat.size() == 1) return flat.front();
  return make(FormulaKind::Or, Pred::EqT, {}, std::move(flat));
}

Formula Formula::implies(Formula a, Formula b) {
  if (a.isTrue()) return b;
  return make(FormulaKind::Implies, Pred::EqT, {}, {std::move(a), std::move(b)});
}

Formula Formula::forall(Term var, Formula body) {
  return make(FormulaKind::Forall, Pred::EqT, {std::move(var)}, {std::move(body)});
}

Formula Formula::exists(Term var, Formula body) {
  return make(FormulaKind::Exists, Pred::EqT, {std::move(var)}, {std::move(body)});
}

Formula Formula::forallMany(const std::vector<Term>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

Formula Formula::existsMany(const std::vector<Term>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

int compare(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.isAtom() && a.pred() != b.pred()) return a.pred() < b.pred() ? -1 : 1;
  if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
  if (a.subs().size() != b.subs().size()) return a.subs().size() < b.subs().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.subs().size(); ++i)
    if (int c = compare(a.subs()[i], b.subs()[i]); c != 0) return c;
  return 0;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  return compare(*this, o) == 0;
}

std::string Formula::str() const {
  switch (kind()) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Atom: {
      std::string out(predName(pred()));
      out += "(";
      for (std::size_t i = 0; i < args().size(); ++i) {
        if (i) out += ",";
        out += args()[i].str();
      }
      return out + ")";
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return std::string(kind() == FormulaKind::Forall ? "forall(" : "exists(") + boundVar().str() + "," +
             body().str() + ")";
    default: break;
  }
  std::string out = kind() == FormulaKind::Not ? "not(" :
                    kind() == FormulaKind::And ? "and(" :
                    kind() == FormulaKind::Or  ? "or(" : "implies(";
  for (std::size_t i = 0; i < subs().size(); ++i) {
    if (i) out += ",";
    out += subs()[i].str();
  }
  return out + ")";
}

Formula mapTerms(const Formula& f, const std::function<Term(const Term&)>& fn) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(fn(a));
      return Formula::atom(f.pred(), std::move(args));
    }
    case FormulaKind::Not: return Formula::negate(mapTerms(f.subs().front(), fn));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> subs;
      for (const auto& g : f.subs()) subs.push_back(mapTerms(g, fn));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(subs)) : Formula::disj(std::move(subs));
    }
    case FormulaKind::Implies:
      return Formula::implies(mapTerms(f.subs()[0], fn), mapTerms(f.subs()[1], fn));
    case FormulaKind::Forall: return Formula::forall(f.boundVar(), mapTerms(f.body(), fn));
    case FormulaKind::Exists: return Formula::exists(f.boundVar(), mapTerms(f.body(), fn));
  }
  return f;
}

Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  if (f.kind() == FormulaKind::Forall || f.kind() == FormulaKind::Exists) {
    // Bound variables shadow the substitution.
    Substitution inner = s.restrict([&](const Term& k) { return k != f.boundVar(); });
    Formula body = substitute(f.body(), inner);
    return f.kind() == FormulaKind::Forall ? Formula::forall(f.boundVar(), body) : Formula::exists(f.boundVar(), body);
  }
  if (f.isAtom() || f.isTrue() || f.isFalse()) return mapTerms(f, [&](const Term& t) { return substitute(t, s); });
  std::vector<Formula> subs;
  for (const auto& g : f.subs()) subs.push_back(substitute(g, s));
  switch (f.kind()) {
    case FormulaKind::Not: return Formula::negate(subs.front());
    case FormulaKind::And: return Formula::conj(std::move(subs));
    case FormulaKind::Or: return Formula::disj(std::move(subs));
    default: return Formula::implies(subs[0], subs[1]);
  }
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f.isTrue()) return {};
  if (f.kind() == FormulaKind::And) return f.subs();
  return {f};
}

void collectSymbols(const Formula& f, TermKind kind, std::vector<Term>& out) {
  for (const auto& a : f.args()) collectSymbols(a, kind, out);
  for (const auto& g : f.subs()) collectSymbols(g, kind, out);
}

bool containsMeta(const Formula& f) {
  std::vector<Term> metas;
  collectSymbols(f, TermKind::Meta, metas);
  return !metas.empty();
}

bool isGround(const Formula& f) {
  std::vector<Term> syms;
  collectSymbols(f, TermKind::Meta, syms);
  if (!syms.empty()) return false;
  if (f.kind() == FormulaKind::Forall || f.kind() == FormulaKind::Exists) return false;
  collectSymbols(f, TermKind::Var, syms);
  return syms.empty();
}

namespace {

using detail::Cursor;

Formula parseAt(Cursor& cur, const Signature& sig) {
  std::string id = cur.ident();
  if (id == "true") return Formula::truth();
  if (id == "false") return Formula::falsity();
  cur.expect('(');
  auto subFormulas = [&] {
    std::vector<Formula> fs;
    do {
      fs.push_back(parseAt(cur, sig));
    } while (cur.accept(','));
    cur.expect(')');
    return fs;
  };
  if (id == "not") {
    auto fs = subFormulas();
    if (fs.size() != 1) cur.fail("not/1");
    return Formula::negate(fs.front());
  }
  if (id == "and") return Formula::conj(subFormulas());
  if (id == "or") return Formula::disj(subFormulas());
  if (id == "implies") {
    auto fs = subFormulas();
    if (fs.size() != 2) cur.fail("implies/2");
    return Formula::implies(fs[0], fs[1]);
  }
  if (id == "forall" || id == "exists") {
    Term v = detail::parseTermAt(cur, sig);
    if (!v.isVar()) cur.fail("quantifier needs a variable");
    cur.expect(',');
    Formula body = parseAt(cur, sig);
    cur.expect(')');
    return id == "forall" ? Formula::forall(v, body) : Formula::exists(v, body);
  }
  static const std::pair<std::string_view, Pred> preds[] = {
      {"eqms", Pred::EqMS}, {"eq", Pred::EqT},  {"neq", Pred::Neq},
      {"leq", Pred::Leq},   {"lt", Pred::Lt},   {"sorted", Pred::Sorted}};
  for (const auto& [name, p] : preds) {
    if (id != name) continue;
    std::vector<Term> args;
    do {
      args.push_back(detail::parseTermAt(cur, sig));
    } while (cur.accept(','));
    cur.expect(')');
    try {
      return Formula::atom(p, std::move(args));
    } catch (const SortError& e) {
      cur.fail(e.what());
    }
  }
  cur.fail("unknown predicate or connective '" + id + "'");
}

}  // namespace

namespace detail {
Formula parseFormulaAt(Cursor& cur, const Signature& sig) { return parseAt(cur, sig); }
}  // namespace detail

Formula parseFormula(std::string_view text, const Signature& sig) {
  Cursor cur(text);
  Formula f = parseAt(cur, sig);
  if (!cur.atEnd()) cur.fail("trailing input");
  return f;
}

}  // namespace sortsynth
