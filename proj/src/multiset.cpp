#include "sortsynth/multiset.hpp"

#include <algorithm>

namespace sortsynth {

MsAtom MsAtom::singleton(Term e) {
  if (e.sort() != Sort::Element) throw SortError("singleton of non-element " + e.str());
  return MsAtom{Kind::Singleton, std::move(e)};
}

MsAtom MsAtom::listWrap(Term l) {
  if (l.sort() != Sort::List) throw SortError("list wrapper of non-list " + l.str());
  return MsAtom{Kind::ListWrap, std::move(l)};
}

Term MsAtom::asTerm() const { return isSingleton() ? Term::mse(term) : Term::ms(term); }

int compare(const MsAtom& a, const MsAtom& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  return compare(a.term, b.term);
}

namespace {
bool atomLess(const MsAtom& a, const MsAtom& b) { return compare(a, b) < 0; }
}  // namespace

MsPoly::MsPoly(std::vector<MsAtom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end(), atomLess);
}

std::size_t MsPoly::count(const MsAtom& a) const {
  auto [lo, hi] = std::equal_range(atoms_.begin(), atoms_.end(), a, atomLess);
  return static_cast<std::size_t>(hi - lo);
}

void MsPoly::add(MsAtom a) {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), a, atomLess);
  atoms_.insert(it, std::move(a));
}

void MsPoly::add(const MsPoly& p) {
  for (const auto& a : p.atoms_) add(a);
}

bool MsPoly::remove(const MsAtom& a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a, atomLess);
  if (it == atoms_.end() || *it != a) return false;
  atoms_.erase(it);
  return true;
}

bool MsPoly::removeAll(const MsPoly& p) {
  if (!subBag(p, *this)) return false;
  for (const auto& a : p.atoms_) remove(a);
  return true;
}

Term MsPoly::toTerm() const {
  if (atoms_.empty()) return Term::msEmpty();
  Term acc = atoms_.back().asTerm();
  for (auto it = atoms_.rbegin() + 1; it != atoms_.rend(); ++it) acc = Term::munion(it->asTerm(), acc);
  return acc;
}

std::string MsPoly::str() const {
  if (atoms_.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += " + ";
    out += atoms_[i].str();
  }
  return out;
}

namespace {

void expandList(const Term& l, std::vector<MsAtom>& out) {
  Term cur = l;
  while (cur.isCons()) {
    out.push_back(MsAtom::singleton(cur.arg(0)));
    cur = cur.arg(1);
  }
  if (!cur.isNil()) out.push_back(MsAtom::listWrap(cur));
}

void collect(const Term& t, std::vector<MsAtom>& out) {
  if (t.sort() != Sort::MSet) throw SortError("normalize expects a multiset, got " + t.str());
  if (t.isApp(sym::kMsEmpty)) return;
  if (t.isApp(sym::kMsUnion)) {
    collect(t.arg(0), out);
    collect(t.arg(1), out);
    return;
  }
  if (t.isApp(sym::kMsSingleton)) {
    out.push_back(MsAtom::singleton(t.arg(0)));
    return;
  }
  if (t.isApp(sym::kMsOfList)) {
    expandList(t.arg(0), out);
    return;
  }
  throw SortError("unsupported multiset term " + t.str());
}

}  // namespace

MsPoly normalize(const Term& msetTerm) {
  std::vector<MsAtom> atoms;
  collect(msetTerm, atoms);
  return MsPoly(std::move(atoms));
}

MsPoly compress(const MsPoly& p, const MsAtom& single, const MsAtom& wrap) {
  if (!single.isSingleton() || !wrap.isListWrap()) throw AtomMissing("compress needs {e} and ms(L)");
  MsPoly out = p;
  if (!out.remove(single)) throw AtomMissing("missing " + single.str() + " in " + p.str());
  if (!out.remove(wrap)) throw AtomMissing("missing " + wrap.str() + " in " + p.str());
  out.add(MsAtom::listWrap(Term::cons(single.term, wrap.term)));
  return out;
}

std::pair<MsPoly, MsPoly> cancelCommon(const MsPoly& lhs, const MsPoly& rhs) {
  std::vector<MsAtom> l, r;
  std::set_difference(lhs.atoms().begin(), lhs.atoms().end(), rhs.atoms().begin(), rhs.atoms().end(),
                      std::back_inserter(l), atomLess);
  std::set_difference(rhs.atoms().begin(), rhs.atoms().end(), lhs.atoms().begin(), lhs.atoms().end(),
                      std::back_inserter(r), atomLess);
  return {MsPoly(std::move(l)), MsPoly(std::move(r))};
}

bool subBag(const MsPoly& p, const MsPoly& q) {
  return std::includes(q.atoms().begin(), q.atoms().end(), p.atoms().begin(), p.atoms().end(), atomLess);
}

bool strictSubset(const MsPoly& p, const MsPoly& q) { return p.size() < q.size() && subBag(p, q); }

std::optional<Term> listOf(const MsPoly& p) {
  std::optional<Term> tail;
  std::vector<Term> heads;
  for (const auto& a : p.atoms()) {
    if (a.isListWrap()) {
      if (tail) return std::nullopt;
      tail = a.term;
    } else {
      heads.push_back(a.term);
    }
  }
  Term out = tail.value_or(Term::nil());
  for (auto it = heads.rbegin(); it != heads.rend(); ++it) out = Term::cons(*it, out);
  return out;
}

std::optional<Substitution> solveMeta(const MsPoly& lhs, const MsPoly& rhs) {
  if (lhs.size() != 1 || !lhs.atoms().front().term.isMeta()) return std::nullopt;
  for (const auto& a : rhs.atoms())
    if (containsMeta(a.term)) return std::nullopt;
  const MsAtom& m = lhs.atoms().front();
  Substitution s;
  if (m.isSingleton()) {
    if (rhs.size() != 1 || !rhs.atoms().front().isSingleton()) return std::nullopt;
    s.bind(m.term, rhs.atoms().front().term);
    return s;
  }
  auto list = listOf(rhs);
  if (!list) return std::nullopt;
  s.bind(m.term, *list);
  return s;
}

}  // namespace sortsynth
