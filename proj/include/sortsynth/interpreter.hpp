#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sortsynth/algorithm.hpp"
#include "sortsynth/formula.hpp"
#include "sortsynth/theory.hpp"

namespace sortsynth {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepLimitExceeded : EvalError {
  using EvalError::EvalError;
};

/// Runtime value: an integer element, a list of integers, or a multiset
/// (kept as a sorted list).
struct Value {
  enum class Kind { Element, List, MSet };
  Kind kind = Kind::List;
  long elem = 0;
  std::vector<long> items;

  static Value element(long e) { return Value{Kind::Element, e, {}}; }
  static Value list(std::vector<long> xs) { return Value{Kind::List, 0, std::move(xs)}; }
  static Value mset(std::vector<long> xs);

  bool operator==(const Value& o) const { return kind == o.kind && elem == o.elem && items == o.items; }
  bool operator!=(const Value& o) const { return !(*this == o); }
  std::string str() const;  // 3, [1,2], {1,2}
};

using Env = std::map<Term, Value, TermLess>;

/// Call-by-value evaluator for rewrite-rule algorithms. Rules are tried in
/// order; the first whose pattern matches and whose guard holds fires. The
/// `Conc(U,V)` pattern matches lists of length >= 2, split at the midpoint.
/// Both the number of rule applications and the call nesting depth are
/// bounded; exceeding either throws StepLimitExceeded.
class Interpreter {
 public:
  explicit Interpreter(std::size_t stepLimit = 100000, std::size_t depthLimit = 4000)
      : stepLimit_(stepLimit), depthLimit_(depthLimit) {}

  void add(const Algorithm& alg);
  void addAll(const std::vector<Algorithm>& algs);
  bool knows(const std::string& name) const { return algorithms_.count(name) > 0; }

  /// Evaluates a call with a fresh step budget.
  Value call(const std::string& name, const std::vector<Value>& args);
  /// Evaluates a term; variables and Skolems are looked up in `env`.
  Value eval(const Term& t, const Env& env);
  /// Quantifier-free formulas only.
  bool holds(const Formula& f, const Env& env);

  std::size_t stepsUsed() const { return steps_; }
  void resetSteps() { steps_ = 0; }

 private:
  Value apply(const std::string& name, const std::vector<Value>& args);

  std::map<std::string, Algorithm> algorithms_;
  std::size_t stepLimit_;
  std::size_t depthLimit_;
  std::size_t steps_ = 0;
  std::size_t depth_ = 0;
};

/// Reference sort used as the oracle.
std::vector<long> oracleSort(std::vector<long> xs);

/// All lists of length <= maxLen over {1..alphabet}, in length-then-lexicographic order.
std::vector<std::vector<long>> exhaustiveLists(int maxLen = 5, int alphabet = 3);
/// Seeded random lists of length 0..maxLen over {1..maxValue}.
std::vector<std::vector<long>> randomLists(std::size_t count, unsigned seed, int maxLen = 12, int maxValue = 20);

/// Input tuples for a spec: the cartesian product of `lists` for list inputs
/// and {1..alphabet} for element inputs. Tuples failing the precondition are
/// kept; checkSpec skips them.
std::vector<std::vector<Value>> specDomain(const FunctionSpec& spec, const std::vector<std::vector<long>>& lists,
                                           int alphabet = 3);

/// `count` seeded random input tuples: lists as in randomLists, elements
/// uniform over {1..maxValue}.
std::vector<std::vector<Value>> randomDomain(const FunctionSpec& spec, std::size_t count, unsigned seed,
                                             int maxLen = 12, int maxValue = 100);

struct Counterexample {
  std::vector<Value> inputs;
  std::string detail;
  std::string str() const;
};

/// Runs the spec's functions on every input tuple satisfying the
/// precondition and checks the postcondition. Returns the first violation;
/// `checked` (if given) is incremented per tuple that met the precondition.
std::optional<Counterexample> checkSpec(const FunctionSpec& spec, Interpreter& interp,
                                        const std::vector<std::vector<Value>>& domain, std::size_t* checked = nullptr);

}  // namespace sortsynth
