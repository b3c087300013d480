#pragma once

#include <string>
#include <vector>

#include "sortsynth/formula.hpp"
#include "sortsynth/multiset.hpp"
#include "sortsynth/term.hpp"

namespace sortsynth::detail {

/// `lhs = rhs` between normalized multisets.
struct MsEquation {
  MsPoly lhs, rhs;
  Formula formula() const { return Formula::eqms(lhs.toTerm(), rhs.toTerm()); }
};

MsPoly substitutePoly(const MsPoly& p, const Substitution& s);
bool polyHasMeta(const MsPoly& p);

/// Atomic facts of one proof branch: the assumptions with conjunctions split,
/// composite atoms reduced, and multiset equations normalized.
class Facts {
 public:
  void add(const Formula& f);
  /// Re-instantiates facts mentioning metavariables after new bindings.
  void instantiate(const Substitution& s);

  bool contradiction() const { return contradiction_; }
  const std::vector<Formula>& atoms() const { return atoms_; }
  const std::vector<MsEquation>& equations() const { return eqs_; }
  bool has(const Formula& atom) const;

 private:
  void addAtom(const Formula& atom, int depth);
  std::vector<Formula> atoms_;
  std::vector<MsEquation> eqs_;
  std::vector<Formula> withMeta_;
  bool contradiction_ = false;
};

/// Decides an atom from the facts: lookups, composite reduction, lifting of
/// orderings through multiset equations, and transitivity through elements.
/// Incomplete by design; false means "not shown".
bool provable(const Formula& atom, const Facts& facts, int depth = 4);
bool provablyNonEmpty(const Term& list, const Facts& facts, int depth = 3);

/// Strict Noetherian order on lists: `candidate` has fewer elements than
/// `cover` (the current value of the induction variable). Tries syntactic
/// subterms and constant multisets first, then inclusions derivable from the
/// multiset equations in `facts` and `extra`.
bool strictlySmaller(const Term& candidate, const Term& cover, const Facts& facts,
                     const std::vector<MsEquation>& extra = {});

}  // namespace sortsynth::detail
