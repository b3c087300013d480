#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sortsynth {

enum class Sort { Element, List, MSet, Bool };

std::string_view sortName(Sort s);

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TermKind { Var, Skolem, Meta, App };

// Builtin symbol names. User and synthesized functions use any other name.
namespace sym {
inline constexpr std::string_view kNil = "nil";
inline constexpr std::string_view kCons = "cons";
inline constexpr std::string_view kMsEmpty = "empty";
inline constexpr std::string_view kMsSingleton = "mse";
inline constexpr std::string_view kMsOfList = "ms";
inline constexpr std::string_view kMsUnion = "union";
// Pattern-only constructor of the divide-and-conquer cover set.
inline constexpr std::string_view kConc = "Conc";
}  // namespace sym

class Term;

struct TermNode {
  TermKind kind;
  Sort sort;
  std::string name;
  int index;  // -1 for Var and App
  std::vector<Term> args;
  std::size_t hash;
};

/// Immutable, structurally shared term. Copying is cheap.
class Term {
 public:
  Term() = default;

  static Term var(std::string name, Sort sort);
  static Term skolem(std::string name, Sort sort, int index);
  static Term meta(std::string name, Sort sort, int index);
  /// Builtins check their argument sorts; other symbols trust `result`.
  static Term app(std::string name, std::vector<Term> args, Sort result);

  static Term nil();
  static Term cons(Term head, Term tail);
  static Term msEmpty();
  static Term mse(Term element);
  static Term ms(Term list);
  static Term munion(Term a, Term b);

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const { return node_->kind; }
  Sort sort() const { return node_->sort; }
  const std::string& name() const { return node_->name; }
  int index() const { return node_->index; }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }
  std::size_t hash() const { return node_->hash; }

  bool isVar() const { return kind() == TermKind::Var; }
  bool isSkolem() const { return kind() == TermKind::Skolem; }
  bool isMeta() const { return kind() == TermKind::Meta; }
  bool isApp() const { return kind() == TermKind::App; }
  bool isAtomic() const { return !isApp(); }
  bool isApp(std::string_view symbol) const { return isApp() && name() == symbol; }
  bool isNil() const { return isApp(sym::kNil); }
  bool isCons() const { return isApp(sym::kCons); }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

  std::string str() const;

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  static Term make(TermKind kind, Sort sort, std::string name, int index, std::vector<Term> args);

  std::shared_ptr<const TermNode> node_;
};

/// Total order: kind, then symbol name, index, arity, then arguments left to right.
int compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// ---------------------------------------------------------------------------
// Substitutions

/// Sort-preserving map from atomic symbols (Var, Meta, or Skolem) to terms.
class Substitution {
 public:
  Substitution() = default;

  /// Throws SortError when the image sort differs from the key's.
  void bind(const Term& key, const Term& value);
  bool contains(const Term& key) const { return map_.count(key) > 0; }
  std::optional<Term> lookup(const Term& key) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  /// Keep only the bindings whose key is accepted by `keep`.
  template <class Pred>
  Substitution restrict(Pred keep) const {
    Substitution out;
    for (const auto& [k, v] : map_)
      if (keep(k)) out.map_.emplace(k, v);
    return out;
  }

  bool operator==(const Substitution& o) const;
  std::string str() const;

 private:
  std::map<Term, Term, TermLess> map_;
};

/// Replaces bound symbols, resolving chains of meta bindings until none remain.
Term substitute(const Term& t, const Substitution& s);

/// One-way first-order matching: Var and Meta occurrences of `pattern` are
/// pattern variables; everything else must coincide with `ground`.
std::optional<Substitution> matchPattern(const Term& pattern, const Term& ground);
/// Extends `s`; returns false on clash.
bool matchInto(const Term& pattern, const Term& ground, Substitution& s);

/// All Skolem constants of `t`, with multiplicity, in term order.
std::vector<Term> constantMultiset(const Term& t);

bool occurs(const Term& needle, const Term& hay);
bool containsMeta(const Term& t);
bool containsKind(const Term& t, TermKind kind);
/// Distinct atomic symbols of a given kind, in first-occurrence order.
void collectSymbols(const Term& t, TermKind kind, std::vector<Term>& out);
/// Replace every occurrence of `from` (a whole subterm) by `to`.
Term replaceSubterm(const Term& t, const Term& from, const Term& to);

/// Fresh indexed symbols. Counters are per base name, so `X` yields X0, X1, ...
class NameSupply {
 public:
  Term freshSkolem(const std::string& base, Sort sort);
  Term freshMeta(const std::string& base, Sort sort);
  void reset() { counters_.clear(); }

 private:
  int next(const std::string& key);
  std::map<std::string, int> counters_;
};

// ---------------------------------------------------------------------------
// Textual syntax

/// Function signatures known to the parser. Builtins are always present.
class Signature {
 public:
  struct Entry {
    std::vector<Sort> args;
    Sort result;
  };
  Signature();
  void declare(const std::string& name, std::vector<Sort> args, Sort result);
  const Entry* find(std::string_view name) const;

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

/// Sort implied by the naming convention: lower-case initial means Element,
/// upper-case means List.
Sort sortFromName(std::string_view name);

Term parseTerm(std::string_view text, const Signature& sig = Signature());

}  // namespace sortsynth
