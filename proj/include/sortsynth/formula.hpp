#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sortsynth/term.hpp"

namespace sortsynth {

enum class Pred {
  EqMS,    // multiset equality
  EqT,     // syntactic/term equality (lists or elements)
  Neq,     // negated term equality
  Leq,     // ordering, lifted to Element x List, List x Element, List x List
  Lt,
  Sorted,
};

std::string_view predName(Pred p);

enum class FormulaKind { True, False, Atom, Not, And, Or, Implies, Forall, Exists };

class Formula;

struct FormulaNode {
  FormulaKind kind;
  Pred pred;                 // Atom only
  std::vector<Term> args;    // Atom arguments, or the bound variable of a quantifier
  std::vector<Formula> subs; // connective operands / quantifier body
};

class Formula {
 public:
  Formula() = default;

  static Formula truth();
  static Formula falsity();
  static Formula atom(Pred p, std::vector<Term> args);
  static Formula eqms(Term a, Term b) { return atom(Pred::EqMS, {std::move(a), std::move(b)}); }
  static Formula eq(Term a, Term b) { return atom(Pred::EqT, {std::move(a), std::move(b)}); }
  static Formula neq(Term a, Term b) { return atom(Pred::Neq, {std::move(a), std::move(b)}); }
  static Formula leq(Term a, Term b) { return atom(Pred::Leq, {std::move(a), std::move(b)}); }
  static Formula lt(Term a, Term b) { return atom(Pred::Lt, {std::move(a), std::move(b)}); }
  static Formula sorted(Term l) { return atom(Pred::Sorted, {std::move(l)}); }
  static Formula negate(Formula f);
  /// n-ary; flattens nested conjunctions and drops `true`. Empty gives `true`.
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula forall(Term var, Formula body);
  static Formula exists(Term var, Formula body);
  static Formula forallMany(const std::vector<Term>& vars, Formula body);
  static Formula existsMany(const std::vector<Term>& vars, Formula body);

  bool valid() const { return node_ != nullptr; }
  FormulaKind kind() const { return node_->kind; }
  Pred pred() const { return node_->pred; }
  const std::vector<Term>& args() const { return node_->args; }
  const std::vector<Formula>& subs() const { return node_->subs; }
  const Term& boundVar() const { return node_->args.front(); }
  const Formula& body() const { return node_->subs.front(); }

  bool isTrue() const { return kind() == FormulaKind::True; }
  bool isFalse() const { return kind() == FormulaKind::False; }
  bool isAtom() const { return kind() == FormulaKind::Atom; }
  bool isAtom(Pred p) const { return isAtom() && pred() == p; }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }
  std::string str() const;

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  static Formula make(FormulaKind k, Pred p, std::vector<Term> args, std::vector<Formula> subs);
  std::shared_ptr<const FormulaNode> node_;
};

int compare(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

Formula substitute(const Formula& f, const Substitution& s);
/// Top-level conjuncts (a non-conjunction yields itself; `true` yields none).
std::vector<Formula> conjuncts(const Formula& f);
/// Applies `fn` to every term argument of every atom.
Formula mapTerms(const Formula& f, const std::function<Term(const Term&)>& fn);
void collectSymbols(const Formula& f, TermKind kind, std::vector<Term>& out);
bool containsMeta(const Formula& f);
bool isGround(const Formula& f);  // no Var or Meta

Formula parseFormula(std::string_view text, const Signature& sig = Signature());

}  // namespace sortsynth
