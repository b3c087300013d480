#include "proof_state.hpp"

#include <algorithm>

#include "sortsynth/theory.hpp"

namespace sortsynth::detail {

MsPoly substitutePoly(const MsPoly& p, const Substitution& s) {
  MsPoly out;
  for (const auto& a : p.atoms()) {
    Term t = substitute(a.term, s);
    if (t == a.term) {
      out.add(a);
    } else {
      out.add(normalize(a.isSingleton() ? Term::mse(t) : Term::ms(t)));
    }
  }
  return out;
}

bool polyHasMeta(const MsPoly& p) {
  return std::any_of(p.atoms().begin(), p.atoms().end(), [](const MsAtom& a) { return containsMeta(a.term); });
}

namespace {

bool hasSingleton(const MsPoly& p) {
  return std::any_of(p.atoms().begin(), p.atoms().end(), [](const MsAtom& a) { return a.isSingleton(); });
}

bool isWrapOf(const MsPoly& p, const Term& t) {
  return p.size() == 1 && p.atoms().front().isListWrap() && p.atoms().front().term == t;
}

Formula relation(Pred p, const Term& x, const Term& y) { return Formula::atom(p, {x, y}); }

}  // namespace

// ---------------------------------------------------------------------------
// Facts

void Facts::add(const Formula& f) {
  for (const auto& c : conjuncts(f)) {
    if (containsMeta(c)) withMeta_.push_back(c);
    addAtom(c, 8);
  }
}

void Facts::instantiate(const Substitution& s) {
  std::vector<Formula> pending;
  pending.swap(withMeta_);
  for (const auto& f : pending) {
    Formula g = substitute(f, s);
    if (g == f) {
      withMeta_.push_back(f);
      continue;
    }
    add(g);
  }
}

bool Facts::has(const Formula& atom) const {
  return std::find(atoms_.begin(), atoms_.end(), atom) != atoms_.end();
}

void Facts::addAtom(const Formula& c, int depth) {
  if (c.isTrue()) return;
  if (c.isFalse()) {
    contradiction_ = true;
    return;
  }
  if (c.kind() == FormulaKind::And) {
    for (const auto& s : c.subs()) addAtom(s, depth);
    return;
  }
  if (!c.isAtom()) return;
  if (c.pred() == Pred::EqMS) {
    auto [l, r] = cancelCommon(normalize(c.args()[0]), normalize(c.args()[1]));
    if (l.empty() && r.empty()) return;
    if ((l.empty() && hasSingleton(r)) || (r.empty() && hasSingleton(l))) {
      contradiction_ = true;
      return;
    }
    for (const auto& e : eqs_)
      if ((e.lhs == l && e.rhs == r) || (e.lhs == r && e.rhs == l)) return;
    eqs_.push_back({l, r});
    return;
  }
  if (has(c)) return;
  if (auto parts = reduceComposite(c)) {
    if (depth > 0)
      for (const auto& p : *parts) addAtom(p, depth - 1);
    if (parts->size() == 1 && parts->front().isFalse()) return;
  }
  atoms_.push_back(c);
}

// ---------------------------------------------------------------------------
// Provability

bool provablyNonEmpty(const Term& list, const Facts& facts, int depth) {
  if (list.isCons()) return true;
  if (list.isNil()) return false;
  if (facts.has(Formula::neq(list, Term::nil())) || facts.has(Formula::neq(Term::nil(), list))) return true;
  if (depth <= 0) return false;
  for (const auto& e : facts.equations()) {
    for (int side = 0; side < 2; ++side) {
      const MsPoly& a = side ? e.rhs : e.lhs;
      const MsPoly& b = side ? e.lhs : e.rhs;
      if (!isWrapOf(a, list)) continue;
      for (const auto& atom : b.atoms())
        if (atom.isSingleton() || provablyNonEmpty(atom.term, facts, depth - 1)) return true;
    }
  }
  return false;
}

namespace {

bool provableOrdering(Pred rel, const Term& x, const Term& y, const Facts& facts, int depth);

// x rel y where x (or y) is a list whose multiset is given by an equation:
// the relation holds iff it holds for every summand.
bool liftThroughEquations(Pred rel, const Term& x, const Term& y, bool onLeft, const Facts& facts, int depth) {
  const Term& list = onLeft ? x : y;
  if (list.sort() != Sort::List) return false;
  for (const auto& e : facts.equations()) {
    for (int side = 0; side < 2; ++side) {
      const MsPoly& a = side ? e.rhs : e.lhs;
      const MsPoly& b = side ? e.lhs : e.rhs;
      if (!isWrapOf(a, list) || b.contains(MsAtom::listWrap(list))) continue;
      bool all = true;
      for (const auto& atom : b.atoms()) {
        bool ok = onLeft ? provableOrdering(rel, atom.term, y, facts, depth - 1)
                         : provableOrdering(rel, x, atom.term, facts, depth - 1);
        if (!ok) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
  }
  return false;
}

bool provableOrdering(Pred rel, const Term& x, const Term& y, const Facts& facts, int depth) {
  Formula atom = relation(rel, x, y);
  if (auto parts = reduceComposite(atom)) {
    for (const auto& p : *parts) {
      if (p.isFalse()) return false;
      if (!provable(p, facts, depth)) return false;
    }
    return true;
  }
  if (facts.has(atom)) return true;
  if (rel == Pred::Leq && facts.has(Formula::lt(x, y))) return true;
  if (depth <= 0) return false;
  if (liftThroughEquations(rel, x, y, true, facts, depth)) return true;
  if (liftThroughEquations(rel, x, y, false, facts, depth)) return true;
  // Transitivity through an element z: x R1 z R2 y.
  for (const auto& f : facts.atoms()) {
    if (!f.isAtom(Pred::Leq) && !f.isAtom(Pred::Lt)) continue;
    const Term& z = f.args()[1];
    if (f.args()[0] != x || z.sort() != Sort::Element || z == y || z == x) continue;
    Pred rest = f.pred() == Pred::Lt ? Pred::Leq : rel;
    if (provableOrdering(rest, z, y, facts, depth - 1)) return true;
  }
  return false;
}

bool provableMsEquation(const Term& a, const Term& b, const Facts& facts) {
  auto [l, r] = cancelCommon(normalize(a), normalize(b));
  if (l.empty() && r.empty()) return true;
  for (const auto& e : facts.equations()) {
    auto [el, er] = cancelCommon(e.lhs, e.rhs);
    if ((el == l && er == r) || (el == r && er == l)) return true;
  }
  return false;
}

}  // namespace

bool provable(const Formula& atom, const Facts& facts, int depth) {
  if (atom.isTrue()) return true;
  if (!atom.isAtom()) {
    if (atom.kind() == FormulaKind::And) {
      for (const auto& s : atom.subs())
        if (!provable(s, facts, depth)) return false;
      return true;
    }
    return false;
  }
  const auto& a = atom.args();
  switch (atom.pred()) {
    case Pred::Leq:
    case Pred::Lt:
      return provableOrdering(atom.pred(), a[0], a[1], facts, depth);
    case Pred::EqMS:
      return provableMsEquation(a[0], a[1], facts);
    default:
      break;
  }
  if (facts.has(atom)) return true;
  if (auto parts = reduceComposite(atom)) {
    for (const auto& p : *parts)
      if (p.isFalse() || !provable(p, facts, depth)) return false;
    return true;
  }
  if (atom.pred() == Pred::Neq) {
    if (facts.has(Formula::neq(a[1], a[0]))) return true;
    if (a[0].sort() == Sort::List) {
      if (a[1].isNil()) return provablyNonEmpty(a[0], facts);
      if (a[0].isNil()) return provablyNonEmpty(a[1], facts);
      return false;
    }
    return provableOrdering(Pred::Lt, a[0], a[1], facts, depth) || provableOrdering(Pred::Lt, a[1], a[0], facts, depth);
  }
  if (atom.pred() == Pred::EqT) return a[0] == a[1] || facts.has(Formula::eq(a[1], a[0]));
  return false;
}

// ---------------------------------------------------------------------------
// Noetherian order

namespace {

bool syntacticallySmaller(const Term& cand, const Term& cover, const Facts& facts) {
  if (cover.isCons()) return cand == cover.arg(1) || syntacticallySmaller(cand, cover.arg(1), facts);
  if (cover.isApp(sym::kConc) && cover.args().size() == 2) {
    for (int i = 0; i < 2; ++i)
      if (cand == cover.arg(i) && provablyNonEmpty(cover.arg(1 - i), facts)) return true;
    return false;
  }
  return false;
}

// Multiset inclusion of the Skolem constants, restricted to list constants.
bool constantsStrictlyIncluded(const Term& cand, const Term& cover) {
  auto lists = [](const Term& t) {
    std::vector<Term> out;
    for (const auto& c : constantMultiset(t))
      if (c.sort() == Sort::List) out.push_back(c);
    return out;
  };
  std::vector<Term> c = lists(cand), all = constantMultiset(cover), l = lists(cover);
  if (c.empty()) return false;
  std::vector<Term> remaining = all;
  for (const auto& x : constantMultiset(cand)) {
    auto it = std::find(remaining.begin(), remaining.end(), x);
    if (it == remaining.end()) return false;
    remaining.erase(it);
  }
  for (const auto& x : c)
    if (std::find(l.begin(), l.end(), x) == l.end()) return false;
  return !remaining.empty();
}

bool nonEmptyPoly(const MsPoly& p, const Facts& facts) {
  for (const auto& a : p.atoms())
    if (a.isSingleton() || provablyNonEmpty(a.term, facts)) return true;
  return false;
}

MsPoly coverPoly(const Term& cover) {
  if (cover.isApp(sym::kConc)) {
    MsPoly p;
    for (const auto& a : cover.args()) p.add(normalize(Term::ms(a)));
    return p;
  }
  return normalize(Term::ms(cover));
}

bool semanticallySmaller(const Term& cand, const Term& cover, const MsPoly& target, const Facts& facts,
                         const std::vector<MsEquation>& eqs, int depth) {
  for (const auto& e : eqs) {
    for (int side = 0; side < 2; ++side) {
      const MsPoly& a = side ? e.rhs : e.lhs;
      MsPoly rest = side ? e.lhs : e.rhs;
      if (!rest.remove(MsAtom::listWrap(cand))) continue;
      if (subBag(a, target)) {
        MsPoly extra = target;
        extra.removeAll(a);
        if (nonEmptyPoly(rest, facts) || nonEmptyPoly(extra, facts)) return true;
      }
      if (depth > 0 && a.size() == 1 && a.atoms().front().isListWrap()) {
        const Term& t = a.atoms().front().term;
        if (t != cand && (syntacticallySmaller(t, cover, facts) ||
                          semanticallySmaller(t, cover, target, facts, eqs, depth - 1)))
          return true;
      }
    }
  }
  return false;
}

}  // namespace

bool strictlySmaller(const Term& candidate, const Term& cover, const Facts& facts,
                     const std::vector<MsEquation>& extra) {
  if (candidate == cover || candidate.sort() != Sort::List) return false;
  if (!containsMeta(candidate)) {
    if (syntacticallySmaller(candidate, cover, facts)) return true;
    if (constantsStrictlyIncluded(candidate, cover)) return true;
  }
  std::vector<MsEquation> eqs = facts.equations();
  eqs.insert(eqs.end(), extra.begin(), extra.end());
  return semanticallySmaller(candidate, cover, coverPoly(cover), facts, eqs, 3);
}

}  // namespace sortsynth::detail
