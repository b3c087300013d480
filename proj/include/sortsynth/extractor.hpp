#pragma once

#include <vector>

#include "sortsynth/algorithm.hpp"
#include "sortsynth/prover.hpp"

namespace sortsynth {

/// Turns the closed branches of a proof into rewrite rules, one algorithm
/// per output of the spec. Skolem constants become pattern variables named
/// after their base name; `X = nil` guards on a bare input variable are
/// absorbed into the pattern.
std::vector<Algorithm> extract(const ProofResult& proof);

/// The same for a bare list of branches of `spec`.
std::vector<Algorithm> extractBranches(const FunctionSpec& spec, const std::vector<ProofBranch>& branches);

/// The top-level algorithms of a proof followed by the cascaded ones,
/// without duplicates.
std::vector<Algorithm> allAlgorithms(const ProofResult& proof);

}  // namespace sortsynth
