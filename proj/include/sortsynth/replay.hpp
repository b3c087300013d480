#pragma once

#include <optional>
#include <vector>

#include "sortsynth/interpreter.hpp"
#include "sortsynth/prover.hpp"

namespace sortsynth {

/// Semantic replay of one proof branch. Every assignment of the branch's
/// Skolem constants (lists drawn from `lists`, elements from 1..alphabet)
/// that satisfies the precondition on the branch inputs and the branch
/// conditions must make the postcondition true for the witnesses. `interp`
/// must know every function the witnesses call.
std::optional<Counterexample> replayBranch(const FunctionSpec& spec, const ProofBranch& branch, Interpreter& interp,
                                           const std::vector<std::vector<long>>& lists, int alphabet = 3);

/// Replays every branch of a proof and of its cascaded lemmas with all the
/// algorithms the proof produced loaded.
std::optional<Counterexample> replayProof(const ProofResult& proof, const std::vector<std::vector<long>>& lists,
                                          int alphabet = 3);

}  // namespace sortsynth
