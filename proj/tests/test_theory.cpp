#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sortsynth/theory.hpp"

using namespace sortsynth;

namespace {
Term sk(const std::string& n, int i = 0) { return Term::skolem(n, sortFromName(n), i); }
}  // namespace

TEST(Theory, SortConjecture) {
  KnowledgeBase kb = baseTheory();
  const FunctionSpec* s = kb.findSpec("Sort");
  ASSERT_TRUE(s);
  EXPECT_EQ(conjectureOf(*s).str(), "forall(X,exists(V,and(eqms(ms(V),ms(X)),sorted(V))))");
}

TEST(Theory, MultiOutputConjectureNestsExistentials) {
  KnowledgeBase kb = baseTheory();
  const FunctionSpec* s = kb.findSpec("Trim");
  ASSERT_TRUE(s);
  EXPECT_EQ(s->name(), "min/Trim");
  EXPECT_EQ(conjectureOf(*s).str(),
            "forall(X,implies(neq(X,nil),exists(y,exists(V,and(eqms(union(mse(y),ms(V)),ms(X)),leq(y,X))))))");
  EXPECT_EQ(s->call(0, {sk("X")}).sort(), Sort::Element);
}

TEST(Theory, PropertyInstantiatesOutputs) {
  KnowledgeBase kb = baseTheory();
  const FunctionSpec* s = kb.findSpec("Insert");
  ASSERT_TRUE(s);
  EXPECT_EQ(s->postconditionAt({sk("a"), sk("U")}).str(),
            "and(eqms(ms(Insert(sk:a0,sk:U0)),union(mse(sk:a0),ms(sk:U0))),sorted(Insert(sk:a0,sk:U0)))");
  EXPECT_EQ(s->property().str(),
            "forall(a,forall(X,implies(sorted(X),and(eqms(ms(Insert(a,X)),union(mse(a),ms(X))),sorted(Insert(a,X))))))");
}

TEST(Theory, BaseAxiomsAndCoverSets) {
  KnowledgeBase kb = baseTheory();
  bool found = false;
  for (const auto& a : kb.axioms()) found |= a.str() == "eqms(ms(nil),empty)";
  EXPECT_TRUE(found);
  const CoverSet* dac = kb.findCoverSet("dac");
  ASSERT_TRUE(dac);
  ASSERT_EQ(dac->cases.size(), 3u);
  EXPECT_EQ(dac->cases[2].pattern.str(), "Conc(U,V)");
  EXPECT_EQ(dac->cases[2].conditions.size(), 2u);
  EXPECT_EQ(kb.findCoverSet("definition")->cases.size(), 2u);
}

TEST(Theory, ShippedFileMatchesBuiltin) {
  std::ifstream in(std::string(SORTSYNTH_SOURCE_DIR) + "/theories/sorting.thy");
  ASSERT_TRUE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), defaultTheoryText());
}

TEST(Theory, ReduceCompositeSchemata) {
  Term a0 = sk("a"), u0 = sk("U");
  auto r = reduceComposite(Formula::sorted(Term::cons(Term::meta("a", Sort::Element, 0), Term::meta("U", Sort::List, 0))));
  ASSERT_TRUE(r);
  ASSERT_EQ(r->size(), 2u);
  EXPECT_EQ((*r)[0].str(), "leq(meta:a0,meta:U0)");
  EXPECT_EQ((*r)[1].str(), "sorted(meta:U0)");
  EXPECT_TRUE(reduceComposite(Formula::leq(a0, Term::nil()))->empty());
  EXPECT_TRUE(reduceComposite(Formula::sorted(Term::nil()))->empty());
  EXPECT_EQ(reduceComposite(Formula::leq(a0, Term::cons(sk("b"), u0)))->size(), 2u);
  EXPECT_TRUE(reduceComposite(Formula::lt(a0, a0))->front().isFalse());
  EXPECT_TRUE(reduceComposite(Formula::neq(Term::nil(), Term::nil()))->front().isFalse());
  EXPECT_TRUE(reduceComposite(Formula::neq(Term::cons(a0, u0), Term::nil()))->empty());
  EXPECT_FALSE(reduceComposite(Formula::sorted(u0)));
  EXPECT_FALSE(reduceComposite(Formula::leq(a0, u0)));
}

TEST(Theory, CanonicalKeyIgnoresNamingAndOrder) {
  KnowledgeBase kb = baseTheory();
  KnowledgeBase alt = loadTheory(
      "spec Cat(Q,P) requires and(leq(Q,P),sorted(P),sorted(Q)) ensures "
      "exists(W,and(sorted(W),eqms(union(ms(P),ms(Q)),ms(W))))");
  const FunctionSpec* conc = kb.findSpec("Conc");
  EXPECT_EQ(canonicalKey(*conc), canonicalKey(*alt.findSpec("Cat")));
  EXPECT_EQ(kb.findSpecLike(*alt.findSpec("Cat")), conc);
  EXPECT_NE(canonicalKey(*conc), canonicalKey(*kb.findSpec("Merge")));
}

TEST(Theory, RegisterSynthesized) {
  KnowledgeBase kb = baseTheory();
  FunctionSpec ins = *kb.findSpec("Insert");
  KnowledgeBase kb2 = kb.registerSynthesized(ins, {});
  ASSERT_TRUE(kb2.findFunction("Insert"));
  EXPECT_FALSE(kb.findFunction("Insert"));  // the original value is unchanged
  EXPECT_EQ(kb2.registerSynthesized(ins, {}).functions().size(), 1u);
  FunctionSpec other = *kb.findSpec("Merge");
  other.functions = {"Insert"};
  EXPECT_THROW(kb2.registerSynthesized(other, {}), NameClash);
  EXPECT_THROW(kb.registerSynthesized(other, {}), NameClash);
}

TEST(Theory, ParseErrorsCarryLineNumbers) {
  try {
    loadTheory("axiom true\nspec F(X) requires true\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(loadTheory("spec F(X) requires true ensures sorted(X)"), ParseError);
}

TEST(Theory, SpecLineRoundTrip) {
  KnowledgeBase base = baseTheory();
  for (const auto& s : base.specs()) {
    KnowledgeBase kb = loadTheory(s.str());
    EXPECT_EQ(kb.specs().front().str(), s.str());
  }
}

// --- algorithms -------------------------------------------------------------

TEST(Algorithm, DisplayAndParse) {
  Signature sig = baseTheory().signature();
  const char* text =
      "Sort[nil] = nil\n"
      "# comment\n"
      "Sort[cons(a,U)] = Insert[a, Sort[U]]\n";
  Algorithm a = parseAlgorithm(text, sig);
  EXPECT_EQ(a.name, "Sort");
  EXPECT_EQ(a.str(), "Sort[nil] = nil\nSort[cons(a,U)] = Insert[a, Sort[U]]\n");
  EXPECT_EQ(a.auxiliaries, std::vector<std::string>{"Insert"});
  RewriteRule r = parseRule("minA[a, cons(b,U)] = minA[a, U] | leq(a,b)", sig);
  EXPECT_EQ(r.rhs.sort(), Sort::Element);
  EXPECT_EQ(r.str(), "minA[a, cons(b,U)] = minA[a, U] | leq(a,b)");
  EXPECT_EQ(parseRule("Sort[Conc(U,V)] = Merge[Sort[U], Sort[V]]", sig).str(),
            "Sort[Conc(U,V)] = Merge[Sort[U], Sort[V]]");
}

TEST(Algorithm, AlphaEquivalence) {
  Signature sig = baseTheory().signature();
  Algorithm a = parseAlgorithm(
      "Insert[a, nil] = cons(a,nil)\n"
      "Insert[a, cons(b,U)] = cons(a,cons(b,U)) | leq(a,b)\n"
      "Insert[a, cons(b,U)] = cons(b,Insert[a, U]) | lt(b,a)\n",
      sig);
  Algorithm b = parseAlgorithm(
      "Insert[x, cons(y,W)] = cons(y,Insert[x, W]) | lt(y,x)\n"
      "Insert[x, cons(y,W)] = cons(x,cons(y,W)) | not(lt(y,x))\n"
      "Insert[x, nil] = cons(x,nil)\n",
      sig);
  EXPECT_TRUE(alphaEquivalent(a, b));
  Algorithm c = parseAlgorithm(
      "Insert[a, nil] = cons(a,nil)\n"
      "Insert[a, cons(b,U)] = cons(b,cons(a,U)) | leq(a,b)\n"
      "Insert[a, cons(b,U)] = cons(b,Insert[a, U]) | lt(b,a)\n",
      sig);
  EXPECT_FALSE(alphaEquivalent(a, c));
  // Renaming must be a bijection.
  Algorithm d = parseAlgorithm("F[a, b] = a\n", sig), e = parseAlgorithm("F[a, b] = b\n", sig);
  EXPECT_FALSE(alphaEquivalent(d, e));
}
