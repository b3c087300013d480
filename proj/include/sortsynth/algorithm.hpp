#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sortsynth/formula.hpp"
#include "sortsynth/term.hpp"

namespace sortsynth {

/// `head[lhsArgs] = rhs | guard`. Pattern variables are Var terms; the
/// patterns use constructors only (nil, cons, and the Conc split pattern).
struct RewriteRule {
  std::string head;
  std::vector<Term> lhsArgs;
  std::optional<Formula> guard;
  Term rhs;

  std::string str() const;
};

struct Algorithm {
  std::string name;
  std::vector<RewriteRule> rules;
  std::vector<std::string> auxiliaries;  // functions called from rule bodies

  std::size_t arity() const { return rules.empty() ? 0 : rules.front().lhsArgs.size(); }
  /// One rule per line in the display format.
  std::string str() const;
};

/// Display syntax for terms: defined functions use square brackets,
/// constructors use parentheses, e.g. `Insert[a, Sort[U]]`, `cons(a,U)`.
/// In pattern position every application is a constructor (`Conc(U,V)`).
std::string displayTerm(const Term& t, bool pattern = false);
/// Formula syntax with every term in display syntax.
std::string displayFormula(const Formula& f);

/// Parses `Sort[cons(a,U)] = Insert[a, Sort[U]] | guard` lines. Blank lines
/// and lines starting with `#` are skipped. Function result sorts come from
/// `sig`; unknown functions default to List.
Algorithm parseAlgorithm(std::string_view text, const Signature& sig = Signature());
RewriteRule parseRule(std::string_view line, const Signature& sig = Signature());

/// Recomputes the auxiliaries list from the rule bodies and guards.
void finalizeAlgorithm(Algorithm& alg);

/// True iff the rules correspond one-to-one up to variable renaming, rule
/// order, and guard complementation (`leq(a,b)` versus `not(lt(b,a))`).
bool alphaEquivalent(const Algorithm& a, const Algorithm& b);

}  // namespace sortsynth
