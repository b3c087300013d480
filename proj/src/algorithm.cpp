#include "sortsynth/algorithm.hpp"

#include <functional>
#include <map>
#include <set>

#include "lexer.hpp"

namespace sortsynth {

namespace {

bool isBuiltin(const Term& t) {
  for (auto s : {sym::kNil, sym::kCons, sym::kMsEmpty, sym::kMsSingleton, sym::kMsOfList, sym::kMsUnion})
    if (t.name() == s) return true;
  return false;
}

std::string joined(const std::vector<Term>& args, bool pattern, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += sep;
    out += displayTerm(args[i], pattern);
  }
  return out;
}

}  // namespace

std::string displayTerm(const Term& t, bool pattern) {
  switch (t.kind()) {
    case TermKind::Var: return t.name();
    case TermKind::Skolem: return t.name() + std::to_string(t.index());
    case TermKind::Meta: return "?" + t.name() + std::to_string(t.index());
    case TermKind::App: break;
  }
  if (t.args().empty()) return t.name();
  if (pattern || isBuiltin(t)) return t.name() + "(" + joined(t.args(), pattern, ",") + ")";
  return t.name() + "[" + joined(t.args(), pattern, ", ") + "]";
}

std::string displayFormula(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Atom: {
      std::string out(predName(f.pred()));
      out += "(";
      for (std::size_t i = 0; i < f.args().size(); ++i) out += (i ? "," : "") + displayTerm(f.args()[i]);
      return out + ")";
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return std::string(f.kind() == FormulaKind::Forall ? "forall(" : "exists(") + displayTerm(f.boundVar()) + "," +
             displayFormula(f.body()) + ")";
    default: break;
  }
  std::string out = f.kind() == FormulaKind::Not ? "not(" :
                    f.kind() == FormulaKind::And ? "and(" :
                    f.kind() == FormulaKind::Or  ? "or(" : "implies(";
  for (std::size_t i = 0; i < f.subs().size(); ++i) out += (i ? "," : "") + displayFormula(f.subs()[i]);
  return out + ")";
}

std::string RewriteRule::str() const {
  std::string out = head + "[" + joined(lhsArgs, true, ", ") + "] = " + displayTerm(rhs);
  if (guard) out += " | " + displayFormula(*guard);
  return out;
}

std::string Algorithm::str() const {
  std::string out;
  for (const auto& r : rules) out += r.str() + "\n";
  return out;
}

RewriteRule parseRule(std::string_view line, const Signature& sig) {
  detail::Cursor cur(line);
  RewriteRule r;
  r.head = cur.ident();
  cur.expect('[');
  if (!cur.accept(']')) {
    do {
      r.lhsArgs.push_back(detail::parseTermAt(cur, sig));
    } while (cur.accept(','));
    cur.expect(']');
  }
  cur.expect('=');
  r.rhs = detail::parseTermAt(cur, sig);
  if (cur.accept('|')) {
    r.guard = parseFormula(cur.rest(), sig);
  } else if (!cur.atEnd()) {
    cur.fail("trailing input");
  }
  return r;
}

Algorithm parseAlgorithm(std::string_view text, const Signature& sig) {
  Algorithm alg;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    RewriteRule r = parseRule(line, sig);
    if (alg.name.empty()) alg.name = r.head;
    if (r.head != alg.name) throw ParseError("rule for " + r.head + " inside algorithm " + alg.name);
    if (!alg.rules.empty() && r.lhsArgs.size() != alg.arity()) throw ParseError("arity mismatch in " + r.head);
    alg.rules.push_back(std::move(r));
  }
  if (alg.rules.empty()) throw ParseError("empty algorithm");
  finalizeAlgorithm(alg);
  return alg;
}

void finalizeAlgorithm(Algorithm& alg) {
  std::set<std::string> names;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.isApp() && !isBuiltin(t) && !t.args().empty() && t.name() != alg.name) names.insert(t.name());
    for (const auto& a : t.args()) walk(a);
  };
  for (const auto& r : alg.rules) {
    walk(r.rhs);
    if (r.guard) mapTerms(*r.guard, [&](const Term& t) {
        walk(t);
        return t;
      });
  }
  alg.auxiliaries.assign(names.begin(), names.end());
}

// --- alpha equivalence -------------------------------------------------------

namespace {

struct Renaming {
  std::map<Term, Term, TermLess> fwd, bwd;

  bool link(const Term& a, const Term& b) {
    auto f = fwd.find(a);
    auto g = bwd.find(b);
    if (f != fwd.end() || g != bwd.end()) return f != fwd.end() && g != bwd.end() && f->second == b && g->second == a;
    fwd.emplace(a, b);
    bwd.emplace(b, a);
    return true;
  }
};

bool sameUpTo(const Term& a, const Term& b, Renaming& ren) {
  if (a.isVar() || b.isVar()) return a.isVar() && b.isVar() && a.sort() == b.sort() && ren.link(a, b);
  if (a.kind() != b.kind() || a.name() != b.name() || a.args().size() != b.args().size()) return false;
  if (!a.isApp()) return a == b;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!sameUpTo(a.arg(i), b.arg(i), ren)) return false;
  return true;
}

bool sameAtom(const Formula& a, const Formula& b, Renaming& ren) {
  if (!a.isAtom() || !b.isAtom()) return a == b;
  if (a.pred() != b.pred() || a.args().size() != b.args().size()) return false;
  auto tryOrder = [&](bool swap) {
    Renaming r = ren;
    for (std::size_t i = 0; i < a.args().size(); ++i) {
      std::size_t j = swap ? a.args().size() - 1 - i : i;
      if (!sameUpTo(a.args()[i], b.args()[j], r)) return false;
    }
    ren = r;
    return true;
  };
  if (tryOrder(false)) return true;
  bool symmetric = a.pred() == Pred::EqT || a.pred() == Pred::Neq || a.pred() == Pred::EqMS;
  return symmetric && tryOrder(true);
}

std::vector<Formula> guardAtoms(const std::optional<Formula>& g) {
  if (!g) return {};
  std::vector<Formula> out;
  for (const auto& c : conjuncts(*g))
    if (!c.isTrue()) out.push_back(c);
  return out;
}

// Matches guard atoms one-to-one, extending the renaming.
bool sameGuards(const std::vector<Formula>& a, const std::vector<Formula>& b, std::size_t i,
                std::vector<bool>& used, Renaming& ren) {
  if (i == a.size()) return true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    Renaming r = ren;
    if (!sameAtom(a[i], b[j], r)) continue;
    used[j] = true;
    if (sameGuards(a, b, i + 1, used, r)) {
      ren = r;
      return true;
    }
    used[j] = false;
  }
  return false;
}

bool sameRule(const RewriteRule& a, const RewriteRule& b) {
  if (a.head != b.head || a.lhsArgs.size() != b.lhsArgs.size()) return false;
  Renaming ren;
  for (std::size_t i = 0; i < a.lhsArgs.size(); ++i)
    if (!sameUpTo(a.lhsArgs[i], b.lhsArgs[i], ren)) return false;
  auto ga = guardAtoms(a.guard), gb = guardAtoms(b.guard);
  if (ga.size() != gb.size()) return false;
  std::vector<bool> used(gb.size(), false);
  if (!sameGuards(ga, gb, 0, used, ren)) return false;
  return sameUpTo(a.rhs, b.rhs, ren);
}

bool assign(const Algorithm& a, const Algorithm& b, std::size_t i, std::vector<bool>& used) {
  if (i == a.rules.size()) return true;
  for (std::size_t j = 0; j < b.rules.size(); ++j) {
    if (used[j] || !sameRule(a.rules[i], b.rules[j])) continue;
    used[j] = true;
    if (assign(a, b, i + 1, used)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

bool alphaEquivalent(const Algorithm& a, const Algorithm& b) {
  if (a.name != b.name || a.rules.size() != b.rules.size()) return false;
  std::vector<bool> used(b.rules.size(), false);
  return assign(a, b, 0, used);
}

}  // namespace sortsynth
