#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sortsynth/algorithm.hpp"
#include "sortsynth/formula.hpp"
#include "sortsynth/term.hpp"
#include "sortsynth/theory.hpp"

namespace sortsynth {

struct Limits {
  int maxDepth = 64;            // proof steps along one branch
  int maxCascadeDepth = 3;      // nesting of cascaded sub-proofs
  std::size_t maxAlternatives = 256;  // moves tried per choice point, results per node
};

/// Which induction the top-level proof starts with: on the output
/// (metavariable cover), on the main input (Skolem cover), or both.
enum class Alternative { Meta, Skolem, All };

struct ProveOptions {
  Limits limits;
  Alternative alternative = Alternative::Skolem;
  std::string coverSet = "definition";
  /// Return the best proof below every alternative of the first choice point
  /// of each top-level case instead of the single best proof.
  bool all = false;
};

/// One node of the derivation. Steps carry a rule tag (IR1..IR8, ST1..ST6,
/// or a descriptive tag); grouping nodes carry a label such as
/// "Alternative 2", "Case 2.1" or "Alternative 2.2.1".
struct TraceNode {
  std::string label;
  std::string rule;
  std::string text;
  std::string goal;  // goal after the step, in formula syntax
  std::vector<TraceNode> children;
};

/// One closed leaf of the case analysis: the input terms after cover
/// substitution, the guards that hold there, and a witness per output.
/// Inputs and witnesses are over Skolem constants.
struct ProofBranch {
  std::vector<Term> inputs;
  std::vector<Formula> conditions;
  std::vector<Term> witnesses;
};

/// The closed branches of a cascaded sub-proof.
struct Lemma {
  FunctionSpec spec;
  std::vector<ProofBranch> branches;
};

struct ProofResult {
  FunctionSpec spec;
  std::string alternative;  // "meta" or "skolem"
  std::vector<ProofBranch> branches;
  std::vector<TraceNode> trace;
  /// Functions synthesized by cascaded sub-proofs, callees first.
  std::vector<KnownFunction> cascaded;
  std::vector<Lemma> lemmas;  // parallel to `cascaded`
};

struct Failure {
  std::string reason;
  std::vector<TraceNode> trace;  // deepest attempted path
};

struct ProveOutcome {
  std::vector<ProofResult> results;
  std::optional<Failure> failure;  // set iff results is empty
  /// Induction hypotheses rejected because the argument was not smaller.
  std::vector<std::string> rejectedInductions;
};

/// Proves the spec's conjecture constructively and returns the witnesses.
ProveOutcome prove(const FunctionSpec& spec, const KnowledgeBase& kb, const ProveOptions& options = {});

/// Indented text rendering of a trace.
std::string traceText(const std::vector<TraceNode>& trace);
/// JSON tree rendering of a trace.
std::string traceJson(const std::vector<TraceNode>& trace);

}  // namespace sortsynth
