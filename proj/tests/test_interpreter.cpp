#include <gtest/gtest.h>

#include "reference_algorithms.hpp"
#include "sortsynth/interpreter.hpp"

using namespace sortsynth;

namespace {

Interpreter load(std::initializer_list<const char*> texts) {
  Signature sig = baseTheory().signature();
  Interpreter in;
  for (const char* t : texts) in.add(parseAlgorithm(t, sig));
  return in;
}

std::vector<long> sortWith(Interpreter& in, const std::vector<long>& xs) {
  return in.call("Sort", {Value::list(xs)}).items;
}

}  // namespace

TEST(Interpreter, InsertSortExample) {
  Interpreter in = load({ref::kInsertSort, ref::kInsert});
  EXPECT_EQ(sortWith(in, {3, 1, 2}), (std::vector<long>{1, 2, 3}));
  EXPECT_TRUE(sortWith(in, {}).empty());
}

TEST(Interpreter, EveryReferenceSortAgreesWithOracle) {
  std::vector<Interpreter> sorts;
  sorts.push_back(load({ref::kInsertSort, ref::kInsert}));
  sorts.push_back(load({ref::kQuickSort, ref::kSmEq, ref::kBigger, ref::kConc}));
  sorts.push_back(load({ref::kMinSort, ref::kMin, ref::kTrim, ref::kMinA, ref::kTrimA}));
  sorts.push_back(load({ref::kMergeSort, ref::kMergeClassic}));
  sorts.push_back(load({ref::kMergeSort, ref::kMergeInsert1, ref::kInsert}));
  sorts.push_back(load({ref::kMergeSort, ref::kMergeInsert2, ref::kInsert}));
  auto lists = exhaustiveLists();
  for (auto& xs : randomLists(200, 1)) lists.push_back(xs);
  for (auto& in : sorts)
    for (const auto& xs : lists) ASSERT_EQ(sortWith(in, xs), oracleSort(xs));
}

TEST(Interpreter, ConcPatternSplitsAtMidpoint) {
  Signature sig;
  Interpreter in;
  in.add(parseAlgorithm("Left[Conc(U,V)] = U\n", sig));
  EXPECT_EQ(in.call("Left", {Value::list({1, 2, 3, 4, 5})}).items, (std::vector<long>{1, 2, 3}));
  EXPECT_EQ(in.call("Left", {Value::list({4, 5})}).items, (std::vector<long>{4}));
  EXPECT_THROW(in.call("Left", {Value::list({4})}), EvalError);
}

TEST(Interpreter, LoopingMergeHitsStepLimit) {
  Interpreter in = load({ref::kMergeLooping, ref::kInsert});
  EXPECT_EQ(in.call("Merge", {Value::list({}), Value::list({2})}).items, (std::vector<long>{2}));
  EXPECT_THROW(in.call("Merge", {Value::list({1}), Value::list({})}), StepLimitExceeded);
}

TEST(Interpreter, ValueDisplay) {
  EXPECT_EQ(Value::list({1, 2}).str(), "[1,2]");
  EXPECT_EQ(Value::mset({2, 1}).str(), "{1,2}");
  EXPECT_EQ(Value::element(7).str(), "7");
}

TEST(Interpreter, FormulaSemantics) {
  Interpreter in;
  Term a = Term::var("a", Sort::Element), u = Term::var("U", Sort::List);
  Env env{{a, Value::element(2)}, {u, Value::list({3, 2})}};
  EXPECT_TRUE(in.holds(Formula::leq(a, u), env));
  EXPECT_FALSE(in.holds(Formula::lt(a, u), env));
  EXPECT_FALSE(in.holds(Formula::sorted(u), env));
  EXPECT_TRUE(in.holds(Formula::eqms(Term::ms(Term::cons(a, u)), Term::munion(Term::ms(u), Term::mse(a))), env));
  EXPECT_TRUE(in.holds(Formula::leq(u, Term::nil()), env));
}

TEST(CheckSpec, FindsCounterexample) {
  KnowledgeBase kb = baseTheory();
  const FunctionSpec& sortSpec = *kb.findSpec("Sort");
  Interpreter good = load({ref::kInsertSort, ref::kInsert});
  auto domain = specDomain(sortSpec, exhaustiveLists());
  EXPECT_EQ(domain.size(), 364u);
  EXPECT_FALSE(checkSpec(sortSpec, good, domain));
  // Drops the head: multiset condition fails on [1].
  Interpreter bad = load({"Sort[nil] = nil\nSort[cons(a,U)] = Sort[U]\n"});
  auto cex = checkSpec(sortSpec, bad, domain);
  ASSERT_TRUE(cex);
  EXPECT_EQ(cex->inputs.front().str(), "[1]");
}

TEST(CheckSpec, PreconditionFiltersInputs) {
  KnowledgeBase kb = baseTheory();
  const FunctionSpec& merge = *kb.findSpec("Merge");
  Interpreter in = load({ref::kMergeClassic});
  EXPECT_FALSE(checkSpec(merge, in, specDomain(merge, exhaustiveLists(4))));
  const FunctionSpec& minTrim = *kb.findSpec("min/Trim");
  Interpreter m = load({ref::kMin, ref::kTrim, ref::kMinA, ref::kTrimA});
  EXPECT_FALSE(checkSpec(minTrim, m, specDomain(minTrim, exhaustiveLists())));
}
