#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sortsynth/term.hpp"

namespace sortsynth {

/// One summand of a normalized multiset: `{e}` or `ms(L)`.
struct MsAtom {
  enum class Kind { Singleton, ListWrap };
  Kind kind;
  Term term;  // Element for Singleton, List for ListWrap

  static MsAtom singleton(Term e);
  static MsAtom listWrap(Term l);
  bool isSingleton() const { return kind == Kind::Singleton; }
  bool isListWrap() const { return kind == Kind::ListWrap; }
  /// The multiset term this atom denotes.
  Term asTerm() const;
  bool operator==(const MsAtom& o) const { return kind == o.kind && term == o.term; }
  bool operator!=(const MsAtom& o) const { return !(*this == o); }
  std::string str() const { return asTerm().str(); }
};

int compare(const MsAtom& a, const MsAtom& b);

struct AtomMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// AC-normal multiset: a sorted bag of atoms. Union is commutative,
/// associative and has unit `empty`, so two polys denote the same multiset
/// expression iff their atom vectors coincide.
class MsPoly {
 public:
  MsPoly() = default;
  explicit MsPoly(std::vector<MsAtom> atoms);

  const std::vector<MsAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  std::size_t count(const MsAtom& a) const;
  bool contains(const MsAtom& a) const { return count(a) > 0; }

  void add(MsAtom a);
  void add(const MsPoly& p);
  /// Removes one occurrence; false if absent.
  bool remove(const MsAtom& a);
  /// Removes `p` as a sub-bag; false (and unchanged) if not included.
  bool removeAll(const MsPoly& p);

  /// Canonical union term (`empty` for the empty bag).
  Term toTerm() const;
  bool operator==(const MsPoly& o) const { return atoms_ == o.atoms_; }
  bool operator!=(const MsPoly& o) const { return !(*this == o); }
  std::string str() const;

 private:
  std::vector<MsAtom> atoms_;
};

/// Flattens unions, drops units and expands list wrappers with
/// `ms(nil) = empty`, `ms(cons(a,U)) = {a} + ms(U)`.
MsPoly normalize(const Term& msetTerm);

/// Replaces `{e} + ms(L)` by `ms(cons(e,L))`. Throws AtomMissing.
MsPoly compress(const MsPoly& p, const MsAtom& single, const MsAtom& wrap);

/// Removes common atoms pairwise, respecting multiplicity.
std::pair<MsPoly, MsPoly> cancelCommon(const MsPoly& lhs, const MsPoly& rhs);

bool subBag(const MsPoly& p, const MsPoly& q);
/// Bag inclusion that is not equality.
bool strictSubset(const MsPoly& p, const MsPoly& q);

/// Solves `lhs = rhs` where `lhs` is a single `ms(M)` or `{m}` with M/m an
/// unbound metavariable and `rhs` is ground. Singletons on the right are
/// prepended (compressed) onto the one remaining list wrapper, or onto nil.
std::optional<Substitution> solveMeta(const MsPoly& lhs, const MsPoly& rhs);

/// The list `cons(e1, cons(e2, ... tail))` whose multiset is `p`, if `p`
/// has at most one list wrapper.
std::optional<Term> listOf(const MsPoly& p);

}  // namespace sortsynth
