#pragma once

// Random term generators shared by the property tests.

#include <random>
#include <vector>

#include "sortsynth/multiset.hpp"
#include "sortsynth/term.hpp"

namespace sortsynth::gen {

class TermGen {
 public:
  explicit TermGen(unsigned seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term element(int depth) {
    switch (pick(depth > 0 ? 4 : 3)) {
      case 0: return Term::skolem("a", Sort::Element, pick(3));
      case 1: return Term::skolem("b", Sort::Element, pick(2));
      case 2: return Term::var(pick(2) ? "a" : "b", Sort::Element);
      default: return Term::app("min", {list(depth - 1)}, Sort::Element);
    }
  }

  Term list(int depth) {
    switch (pick(depth > 0 ? 6 : 3)) {
      case 0: return Term::nil();
      case 1: return Term::skolem("U", Sort::List, pick(3));
      case 2: return Term::var(pick(2) ? "U" : "V", Sort::List);
      case 3: return Term::cons(element(depth - 1), list(depth - 1));
      case 4: return Term::app("Sort", {list(depth - 1)}, Sort::List);
      default: return Term::app("Insert", {element(depth - 1), list(depth - 1)}, Sort::List);
    }
  }

  /// Ground list: no Var occurrences.
  Term groundList(int depth) {
    switch (pick(depth > 0 ? 5 : 2)) {
      case 0: return Term::nil();
      case 1: return Term::skolem("U", Sort::List, pick(3));
      case 2: return Term::cons(Term::skolem("a", Sort::Element, pick(3)), groundList(depth - 1));
      case 3: return Term::app("Sort", {groundList(depth - 1)}, Sort::List);
      default: return Term::app("Trim", {groundList(depth - 1)}, Sort::List);
    }
  }

  Term mset(int depth) {
    switch (pick(depth > 0 ? 4 : 3)) {
      case 0: return Term::msEmpty();
      case 1: return Term::mse(Term::skolem("a", Sort::Element, pick(3)));
      case 2: return Term::ms(groundList(2));
      default: return Term::munion(mset(depth - 1), mset(depth - 1));
    }
  }

  MsPoly groundPoly(int maxAtoms) {
    MsPoly p;
    int n = pick(maxAtoms + 1);
    for (int i = 0; i < n; ++i) {
      if (pick(2))
        p.add(MsAtom::singleton(Term::skolem("a", Sort::Element, pick(3))));
      else
        p.add(MsAtom::listWrap(Term::skolem("U", Sort::List, pick(3))));
    }
    return p;
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace sortsynth::gen
