#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sortsynth/algorithm.hpp"
#include "sortsynth/formula.hpp"
#include "sortsynth/term.hpp"

namespace sortsynth {

struct NameClash : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input/output specification. One function per output: a single-output spec
/// such as Sort names one function, `min/Trim` names two.
struct FunctionSpec {
  std::vector<std::string> functions;
  std::vector<Term> inputs;   // Var terms
  Formula precondition = Formula::truth();
  std::vector<Term> outputs;  // Var terms, existentially quantified in the conjecture
  Formula postcondition = Formula::truth();  // quantifier-free over inputs and outputs

  std::string name() const;  // functions joined with '/'
  Term call(std::size_t output, const std::vector<Term>& args) const;
  Formula preconditionAt(const std::vector<Term>& args) const;
  /// postcondition with inputs := args and each output := its function call.
  Formula postconditionAt(const std::vector<Term>& args) const;
  /// forall inputs (precondition ==> postcondition[outputs := f_i(inputs)])
  Formula property() const;
  void declareIn(Signature& sig) const;
  std::string str() const;  // theory-file `spec` line
};

/// forall inputs (precondition ==> exists outputs. postcondition); the
/// implication is dropped when the precondition is trivially true.
Formula conjectureOf(const FunctionSpec& spec);

/// Key that is equal for specs that differ only in variable names, the order
/// of same-sort inputs/outputs, conjunct order and equation orientation.
std::string canonicalKey(const FunctionSpec& spec);

/// How the inputs/outputs of `candidate` line up with those of `declared`:
/// declared.inputs[i] corresponds to candidate.inputs[inputs[i]], likewise
/// for outputs.
struct SpecMatch {
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;
};
std::optional<SpecMatch> matchSpecs(const FunctionSpec& candidate, const FunctionSpec& declared);

struct KnownFunction {
  FunctionSpec spec;
  std::vector<Algorithm> algorithms;  // one per output
};

struct CoverCase {
  Term pattern;                     // over Vars
  std::vector<Formula> conditions;  // side conditions assumed in the branch
};

struct CoverSet {
  std::string name;
  std::vector<CoverCase> cases;
};

/// Immutable theory: axioms, declared specs, cover sets and synthesized
/// functions. Updates return a new value sharing unchanged parts.
class KnowledgeBase {
 public:
  const std::vector<Formula>& axioms() const { return axioms_; }
  const std::vector<FunctionSpec>& specs() const { return specs_; }
  const std::vector<KnownFunction>& functions() const { return functions_; }
  const std::vector<CoverSet>& coverSets() const { return coverSets_; }
  const Signature& signature() const { return sig_; }

  /// Declared spec by spec name (`min/Trim`) or by one of its function names.
  const FunctionSpec* findSpec(std::string_view name) const;
  /// Declared spec whose canonical key equals the given spec's.
  const FunctionSpec* findSpecLike(const FunctionSpec& spec) const;
  /// Synthesized function providing `fname`.
  const KnownFunction* findFunction(std::string_view fname) const;
  const CoverSet* findCoverSet(std::string_view name) const;

  KnowledgeBase withAxiom(Formula f) const;
  KnowledgeBase withSpec(FunctionSpec spec) const;
  KnowledgeBase withCoverSet(CoverSet cs) const;
  /// Adds a synthesized function. Re-registering the same spec under the same
  /// names is a no-op; a name already bound to a different spec throws.
  KnowledgeBase registerSynthesized(FunctionSpec spec, std::vector<Algorithm> algorithms) const;

 private:
  std::vector<Formula> axioms_;
  std::vector<FunctionSpec> specs_;
  std::vector<KnownFunction> functions_;
  std::vector<CoverSet> coverSets_;
  Signature sig_;
};

/// Text of the built-in sorting theory (also shipped as theories/sorting.thy).
std::string_view defaultTheoryText();

/// Multiset, sortedness and ordering axioms, the standard specs and the
/// `definition` and `dac` cover sets.
KnowledgeBase baseTheory();

/// Theory file syntax, one declaration per line (`#` starts a comment):
///   axiom <formula>
///   spec <f>[/<g>...](<inputs>) requires <formula> ensures exists(V, ...)
///   coverset <name> = { <term> [where <formula>]; ... }
KnowledgeBase loadTheory(std::string_view text, KnowledgeBase base = KnowledgeBase());

/// Definition-level rewriting of composite atoms: sortedness of constructor
/// lists, orderings against nil/cons, and list (dis)equalities between
/// constructors. Returns the replacing conjuncts (empty means true, a single
/// `false` means contradiction), or nothing when no schema applies.
std::optional<std::vector<Formula>> reduceComposite(const Formula& atom);

}  // namespace sortsynth
