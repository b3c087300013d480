#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "generators.hpp"
#include "sortsynth/multiset.hpp"

using namespace sortsynth;

namespace {

Term sk(const std::string& n, int i = 0) { return Term::skolem(n, sortFromName(n), i); }
Term mv(const std::string& n, int i = 0) { return Term::meta(n, sortFromName(n), i); }
Term fn(const std::string& f, std::vector<Term> args, Sort s = Sort::List) { return Term::app(f, std::move(args), s); }
MsAtom single(Term e) { return MsAtom::singleton(std::move(e)); }
MsAtom wrap(Term l) { return MsAtom::listWrap(std::move(l)); }

}  // namespace

TEST(Normalize, ExpandsNestedCons) {
  Term a0 = sk("a"), b0 = sk("b"), u0 = sk("U");
  MsPoly p = normalize(Term::ms(Term::cons(a0, Term::cons(b0, u0))));
  EXPECT_EQ(p, MsPoly({single(a0), single(b0), wrap(u0)}));
}

TEST(Normalize, MsOfNilIsEmpty) { EXPECT_TRUE(normalize(Term::ms(Term::nil())).empty()); }

TEST(Normalize, UnitAndAssociativity) {
  Term a = Term::ms(sk("U")), b = Term::mse(sk("a"));
  MsPoly p = normalize(Term::munion(a, Term::munion(Term::msEmpty(), b)));
  EXPECT_EQ(p, MsPoly({wrap(sk("U")), single(sk("a"))}));
}

TEST(Compress, PrefixesElementOntoSortedPart) {
  Term a0 = sk("a"), u0 = sk("U");
  Term bigger = fn("Sort", {fn("Bigger", {a0, u0})});
  MsPoly p({wrap(fn("Sort", {fn("SmEq", {a0, u0})})), single(a0), wrap(bigger)});
  MsPoly q = compress(p, single(a0), wrap(bigger));
  EXPECT_TRUE(q.contains(wrap(Term::cons(a0, bigger))));
  EXPECT_EQ(q.size(), 2u);
}

TEST(Compress, SingleElementOntoTail) {
  Term b0 = sk("b"), v0 = sk("V");
  EXPECT_EQ(compress(MsPoly({single(b0), wrap(v0)}), single(b0), wrap(v0)), MsPoly({wrap(Term::cons(b0, v0))}));
}

TEST(Compress, MissingAtomThrows) {
  EXPECT_THROW(compress(MsPoly({wrap(sk("V"))}), single(sk("b")), wrap(sk("V"))), AtomMissing);
}

TEST(CancelCommon, BagDifference) {
  Term a0 = sk("a"), u0 = sk("U");
  auto [l, r] = cancelCommon(MsPoly({single(a0), wrap(u0)}), MsPoly({wrap(u0), single(sk("b"))}));
  EXPECT_EQ(l, MsPoly({single(a0)}));
  EXPECT_EQ(r, MsPoly({single(sk("b"))}));
}

TEST(CancelCommon, IdentityAndMultiplicity) {
  MsPoly p({single(sk("a")), wrap(sk("U"))});
  auto [l, r] = cancelCommon(p, p);
  EXPECT_TRUE(l.empty());
  EXPECT_TRUE(r.empty());
  auto [l2, r2] = cancelCommon(MsPoly({single(sk("a")), single(sk("a"))}), MsPoly({single(sk("a"))}));
  EXPECT_EQ(l2, MsPoly({single(sk("a"))}));
  EXPECT_TRUE(r2.empty());
}

TEST(StrictSubset, Examples) {
  Term a0 = sk("a"), u0 = sk("U");
  MsPoly target({single(a0), wrap(u0)});
  EXPECT_TRUE(strictSubset(MsPoly({wrap(u0)}), target));
  EXPECT_FALSE(strictSubset(target, target));
  EXPECT_FALSE(strictSubset(MsPoly({wrap(fn("Insert", {a0, u0}))}), target));
}

TEST(SolveMeta, SingleWrapper) {
  Term v = mv("V");
  Term ins = fn("Insert", {sk("a"), fn("Sort", {sk("U")})});
  auto s = solveMeta(MsPoly({wrap(v)}), MsPoly({wrap(ins)}));
  ASSERT_TRUE(s);
  EXPECT_EQ(*s->lookup(v), ins);
}

TEST(SolveMeta, ElementMeta) {
  Term y = mv("y");
  Term m = fn("minA", {sk("a"), sk("U")}, Sort::Element);
  auto s = solveMeta(MsPoly({single(y)}), MsPoly({single(m)}));
  ASSERT_TRUE(s);
  EXPECT_EQ(*s->lookup(y), m);
}

TEST(SolveMeta, CompressesSingletonFirst) {
  Term v = mv("V"), b0 = sk("b");
  Term smeq = fn("SmEq", {sk("a"), sk("U")});
  auto s = solveMeta(MsPoly({wrap(v)}), MsPoly({single(b0), wrap(smeq)}));
  ASSERT_TRUE(s);
  EXPECT_EQ(*s->lookup(v), Term::cons(b0, smeq));
}

TEST(SolveMeta, NoSolutionCases) {
  Term v = mv("V");
  EXPECT_FALSE(solveMeta(MsPoly({wrap(v)}), MsPoly({wrap(sk("U")), wrap(sk("V"))})));
  EXPECT_FALSE(solveMeta(MsPoly({single(mv("y"))}), MsPoly({wrap(sk("U"))})));
  EXPECT_FALSE(solveMeta(MsPoly({wrap(v), single(mv("y"))}), MsPoly({wrap(sk("U"))})));
  auto s = solveMeta(MsPoly({wrap(v)}), MsPoly());
  ASSERT_TRUE(s);
  EXPECT_EQ(*s->lookup(v), Term::nil());
}

// --- properties -----------------------------------------------------------

TEST(MultisetProperties, NormalizeIsIdempotentAndPermutationInvariant) {
  gen::TermGen g(3);
  for (int iter = 0; iter < 10000; ++iter) {
    Term t = g.mset(3);
    MsPoly p = normalize(t);
    EXPECT_EQ(normalize(p.toTerm()), p);
    // Rebuild the union in a shuffled order.
    std::vector<MsAtom> atoms = p.atoms();
    std::shuffle(atoms.begin(), atoms.end(), g.rng());
    Term shuffled = Term::msEmpty();
    for (const auto& a : atoms) shuffled = g.pick(2) ? Term::munion(a.asTerm(), shuffled) : Term::munion(shuffled, a.asTerm());
    EXPECT_EQ(normalize(shuffled), p);
  }
}

TEST(MultisetProperties, CompressThenNormalizeRestores) {
  gen::TermGen g(5);
  int checked = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    MsPoly p = g.groundPoly(5);
    const MsAtom* s = nullptr;
    const MsAtom* w = nullptr;
    for (const auto& a : p.atoms()) {
      if (a.isSingleton() && !s) s = &a;
      if (a.isListWrap() && !w) w = &a;
    }
    if (!s || !w) continue;
    MsPoly c = compress(p, *s, *w);
    EXPECT_EQ(normalize(c.toTerm()), p);
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(MultisetProperties, StrictSubsetIsStrictPartialOrder) {
  gen::TermGen g(9);
  for (int iter = 0; iter < 10000; ++iter) {
    MsPoly p = g.groundPoly(3), q = g.groundPoly(4), r = g.groundPoly(5);
    EXPECT_FALSE(strictSubset(p, p));
    if (strictSubset(p, q) && strictSubset(q, r)) EXPECT_TRUE(strictSubset(p, r));
    if (strictSubset(p, q)) EXPECT_FALSE(strictSubset(q, p));
  }
}

// Property 1 is semantically sound: the bag read off normalize(ms(L)) is the
// bag of integers of L, for every list of length <= 5 over {1,2,3}.
TEST(MultisetProperties, ListMultisetExpansionMatchesIntegers) {
  int lists = 0;
  std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& xs) {
    Term l = Term::nil();
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) l = Term::cons(Term::skolem("c", Sort::Element, *it), l);
    MsPoly p = normalize(Term::ms(l));
    std::vector<int> got;
    for (const auto& a : p.atoms()) {
      ASSERT_TRUE(a.isSingleton());
      got.push_back(a.term.index());
    }
    std::vector<int> want = xs;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
    ++lists;
    if (xs.size() == 5) return;
    for (int v = 1; v <= 3; ++v) {
      xs.push_back(v);
      rec(xs);
      xs.pop_back();
    }
  };
  std::vector<int> xs;
  rec(xs);
  EXPECT_EQ(lists, 364);
}
