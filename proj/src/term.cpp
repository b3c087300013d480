#include "sortsynth/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lexer.hpp"

namespace sortsynth {

std::string_view sortName(Sort s) {
  switch (s) {
    case Sort::Element: return "Element";
    case Sort::List: return "List";
    case Sort::MSet: return "MSet";
    case Sort::Bool: return "Bool";
  }
  return "?";
}

namespace {

std::size_t mixHash(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void expectSort(const Term& t, Sort s, std::string_view where) {
  if (t.sort() != s)
    throw SortError(std::string(where) + ": expected " + std::string(sortName(s)) + ", got " +
                    std::string(sortName(t.sort())) + " for " + t.str());
}

}  // namespace

Term Term::make(TermKind kind, Sort sort, std::string name, int index, std::vector<Term> args) {
  std::size_t h = std::hash<std::string>{}(name);
  h = mixHash(h, static_cast<std::size_t>(kind));
  h = mixHash(h, static_cast<std::size_t>(index + 1));
  for (const auto& a : args) h = mixHash(h, a.hash());
  auto node = std::make_shared<const TermNode>(
      TermNode{kind, sort, std::move(name), index, std::move(args), h});
  return Term(std::move(node));
}

Term Term::var(std::string name, Sort sort) { return make(TermKind::Var, sort, std::move(name), -1, {}); }

Term Term::skolem(std::string name, Sort sort, int index) {
  return make(TermKind::Skolem, sort, std::move(name), index, {});
}

Term Term::meta(std::string name, Sort sort, int index) {
  return make(TermKind::Meta, sort, std::move(name), index, {});
}

Term Term::app(std::string name, std::vector<Term> args, Sort result) {
  static const Signature builtins;
  if (const auto* e = builtins.find(name)) {
    if (e->args.size() != args.size())
      throw SortError("arity mismatch for " + name);
    for (std::size_t i = 0; i < args.size(); ++i) expectSort(args[i], e->args[i], name);
    result = e->result;
  }
  return make(TermKind::App, result, std::move(name), -1, std::move(args));
}

Term Term::nil() {
  static const Term t = make(TermKind::App, Sort::List, std::string(sym::kNil), -1, {});
  return t;
}

Term Term::cons(Term head, Term tail) {
  expectSort(head, Sort::Element, "cons head");
  expectSort(tail, Sort::List, "cons tail");
  return make(TermKind::App, Sort::List, std::string(sym::kCons), -1, {std::move(head), std::move(tail)});
}

Term Term::msEmpty() {
  static const Term t = make(TermKind::App, Sort::MSet, std::string(sym::kMsEmpty), -1, {});
  return t;
}

Term Term::mse(Term element) {
  expectSort(element, Sort::Element, "mse");
  return make(TermKind::App, Sort::MSet, std::string(sym::kMsSingleton), -1, {std::move(element)});
}

Term Term::ms(Term list) {
  expectSort(list, Sort::List, "ms");
  return make(TermKind::App, Sort::MSet, std::string(sym::kMsOfList), -1, {std::move(list)});
}

Term Term::munion(Term a, Term b) {
  expectSort(a, Sort::MSet, "union");
  expectSort(b, Sort::MSet, "union");
  return make(TermKind::App, Sort::MSet, std::string(sym::kMsUnion), -1, {std::move(a), std::move(b)});
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash) return false;
  return compare(*this, o) == 0;
}

std::string Term::str() const {
  if (!node_) return "<null>";
  switch (kind()) {
    case TermKind::Var: return name();
    case TermKind::Skolem: return "sk:" + name() + std::to_string(index());
    case TermKind::Meta: return "meta:" + name() + std::to_string(index());
    case TermKind::App: break;
  }
  if (args().empty()) return name();
  std::string out = name() + "(";
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i) out += ",";
    out += args()[i].str();
  }
  return out + ")";
}

int compare(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (a.sort() != b.sort()) return a.sort() < b.sort() ? -1 : 1;
  if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
  return 0;
}

// ---------------------------------------------------------------------------

void Substitution::bind(const Term& key, const Term& value) {
  if (key.isApp()) throw SortError("cannot bind compound term " + key.str());
  if (key.sort() != value.sort())
    throw SortError("sort mismatch binding " + key.str() + " -> " + value.str());
  map_.insert_or_assign(key, value);
}

std::optional<Term> Substitution::lookup(const Term& key) const {
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

bool Substitution::operator==(const Substitution& o) const {
  if (map_.size() != o.map_.size()) return false;
  auto it = o.map_.begin();
  for (const auto& [k, v] : map_) {
    if (k != it->first || v != it->second) return false;
    ++it;
  }
  return true;
}

std::string Substitution::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : map_) {
    if (!first) out += ", ";
    first = false;
    out += k.str() + "->" + v.str();
  }
  return out + "}";
}

namespace {

Term substituteDepth(const Term& t, const Substitution& s, int depth) {
  if (depth > 256) throw SortError("cyclic substitution at " + t.str());
  if (t.isAtomic()) {
    if (auto v = s.lookup(t)) {
      if (*v == t) return t;
      return substituteDepth(*v, s, depth + 1);
    }
    return t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(substituteDepth(a, s, depth));
    changed = changed || args.back() != a;
  }
  if (!changed) return t;
  return Term::app(t.name(), std::move(args), t.sort());
}

}  // namespace

Term substitute(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  return substituteDepth(t, s, 0);
}

bool matchInto(const Term& pattern, const Term& ground, Substitution& s) {
  if (pattern.isVar() || pattern.isMeta()) {
    if (pattern.sort() != ground.sort()) return false;
    if (auto bound = s.lookup(pattern)) return *bound == ground;
    s.bind(pattern, ground);
    return true;
  }
  if (pattern.kind() != ground.kind()) return false;
  if (pattern.isSkolem()) return pattern == ground;
  if (pattern.name() != ground.name() || pattern.args().size() != ground.args().size()) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!matchInto(pattern.args()[i], ground.args()[i], s)) return false;
  return true;
}

std::optional<Substitution> matchPattern(const Term& pattern, const Term& ground) {
  Substitution s;
  if (!matchInto(pattern, ground, s)) return std::nullopt;
  return s;
}

std::vector<Term> constantMultiset(const Term& t) {
  std::vector<Term> out;
  std::function<void(const Term&)> walk = [&](const Term& x) {
    if (x.isSkolem()) out.push_back(x);
    for (const auto& a : x.args()) walk(a);
  };
  walk(t);
  std::sort(out.begin(), out.end(), TermLess{});
  return out;
}

bool occurs(const Term& needle, const Term& hay) {
  if (needle == hay) return true;
  for (const auto& a : hay.args())
    if (occurs(needle, a)) return true;
  return false;
}

bool containsKind(const Term& t, TermKind kind) {
  if (t.kind() == kind) return true;
  for (const auto& a : t.args())
    if (containsKind(a, kind)) return true;
  return false;
}

bool containsMeta(const Term& t) { return containsKind(t, TermKind::Meta); }

void collectSymbols(const Term& t, TermKind kind, std::vector<Term>& out) {
  if (t.kind() == kind && t.isAtomic()) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (const auto& a : t.args()) collectSymbols(a, kind, out);
}

Term replaceSubterm(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  if (t.isAtomic()) return t;
  std::vector<Term> args;
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(replaceSubterm(a, from, to));
    changed = changed || args.back() != a;
  }
  if (!changed) return t;
  return Term::app(t.name(), std::move(args), t.sort());
}

int NameSupply::next(const std::string& key) { return counters_[key]++; }

Term NameSupply::freshSkolem(const std::string& base, Sort sort) {
  return Term::skolem(base, sort, next("sk:" + base));
}

Term NameSupply::freshMeta(const std::string& base, Sort sort) {
  return Term::meta(base, sort, next("meta:" + base));
}

// ---------------------------------------------------------------------------

Signature::Signature() {
  declare(std::string(sym::kNil), {}, Sort::List);
  declare(std::string(sym::kCons), {Sort::Element, Sort::List}, Sort::List);
  declare(std::string(sym::kMsEmpty), {}, Sort::MSet);
  declare(std::string(sym::kMsSingleton), {Sort::Element}, Sort::MSet);
  declare(std::string(sym::kMsOfList), {Sort::List}, Sort::MSet);
  declare(std::string(sym::kMsUnion), {Sort::MSet, Sort::MSet}, Sort::MSet);
}

void Signature::declare(const std::string& name, std::vector<Sort> args, Sort result) {
  entries_.insert_or_assign(name, Entry{std::move(args), result});
}

const Signature::Entry* Signature::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

Sort sortFromName(std::string_view name) {
  if (!name.empty() && std::isupper(static_cast<unsigned char>(name.front()))) return Sort::List;
  return Sort::Element;
}

namespace detail {

namespace {

Term indexedSymbol(Cursor& cur, const std::string& id) {
  bool sk = id.rfind("sk:", 0) == 0;
  std::string body = id.substr(sk ? 3 : 5);
  std::size_t split = body.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(body[split - 1]))) --split;
  if (split == 0 || split == body.size()) cur.fail("indexed symbol needs a name and an index: " + id);
  std::string base = body.substr(0, split);
  int index = std::stoi(body.substr(split));
  Sort sort = sortFromName(base);
  return sk ? Term::skolem(base, sort, index) : Term::meta(base, sort, index);
}

}  // namespace

Term parseTermAt(Cursor& cur, const Signature& sig) {
  std::string id = cur.ident();
  if (id.rfind("sk:", 0) == 0 || id.rfind("meta:", 0) == 0) return indexedSymbol(cur, id);
  // `f(...)` and the display form `f[...]` are interchangeable.
  char close = cur.accept('(') ? ')' : cur.accept('[') ? ']' : '\0';
  if (close) {
    std::vector<Term> args;
    if (!cur.accept(close)) {
      do {
        args.push_back(parseTermAt(cur, sig));
      } while (cur.accept(','));
      cur.expect(close);
    }
    const auto* e = sig.find(id);
    Sort result = e ? e->result : Sort::List;
    if (e && e->args.size() != args.size()) cur.fail("arity mismatch for " + id);
    return Term::app(id, std::move(args), result);
  }
  if (const auto* e = sig.find(id); e && e->args.empty()) return Term::app(id, {}, e->result);
  return Term::var(id, sortFromName(id));
}

}  // namespace detail

Term parseTerm(std::string_view text, const Signature& sig) {
  detail::Cursor cur(text);
  Term t = detail::parseTermAt(cur, sig);
  if (!cur.atEnd()) cur.fail("trailing input");
  return t;
}

}  // namespace sortsynth
