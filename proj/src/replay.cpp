#include "sortsynth/replay.hpp"

#include <functional>

#include "sortsynth/extractor.hpp"

namespace sortsynth {

namespace {

// Branch inputs are patterns; the Conc pattern denotes concatenation, which
// the interpreter only knows as a pattern.
Value evalInput(const Term& t, Interpreter& interp, const Env& env) {
  if (t.isApp(sym::kConc) && t.args().size() == 2) {
    std::vector<long> xs = evalInput(t.arg(0), interp, env).items;
    std::vector<long> ys = evalInput(t.arg(1), interp, env).items;
    xs.insert(xs.end(), ys.begin(), ys.end());
    return Value::list(std::move(xs));
  }
  if (t.isCons()) {
    std::vector<long> xs{evalInput(t.arg(0), interp, env).elem};
    std::vector<long> rest = evalInput(t.arg(1), interp, env).items;
    xs.insert(xs.end(), rest.begin(), rest.end());
    return Value::list(std::move(xs));
  }
  return interp.eval(t, env);
}

}  // namespace

std::optional<Counterexample> replayBranch(const FunctionSpec& spec, const ProofBranch& branch, Interpreter& interp,
                                           const std::vector<std::vector<long>>& lists, int alphabet) {
  std::vector<Term> consts;
  for (const auto& t : branch.inputs) collectSymbols(t, TermKind::Skolem, consts);
  for (const auto& f : branch.conditions) collectSymbols(f, TermKind::Skolem, consts);
  for (const auto& t : branch.witnesses) collectSymbols(t, TermKind::Skolem, consts);

  Env env;
  std::optional<Counterexample> found;
  auto check = [&]() {
    std::vector<Value> inputs;
    try {
      Env local = env;
      for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
        inputs.push_back(evalInput(branch.inputs[i], interp, env));
        local[spec.inputs[i]] = inputs.back();
      }
      if (!interp.holds(spec.precondition, local)) return;
      for (const auto& c : branch.conditions)
        if (!interp.holds(c, env)) return;
      for (std::size_t o = 0; o < spec.outputs.size(); ++o) {
        interp.resetSteps();
        local[spec.outputs[o]] = interp.eval(branch.witnesses[o], env);
      }
      if (!interp.holds(spec.postcondition, local)) found = Counterexample{inputs, "witness violates postcondition"};
    } catch (const EvalError& e) {
      found = Counterexample{inputs, e.what()};
    }
  };
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (found) return;
    if (i == consts.size()) return check();
    const Term& k = consts[i];
    if (k.sort() == Sort::Element) {
      for (long v = 1; v <= alphabet && !found; ++v) {
        env[k] = Value::element(v);
        assign(i + 1);
      }
    } else {
      for (const auto& xs : lists) {
        if (found) break;
        env[k] = Value::list(xs);
        assign(i + 1);
      }
    }
  };
  assign(0);
  return found;
}

std::optional<Counterexample> replayProof(const ProofResult& proof, const std::vector<std::vector<long>>& lists,
                                          int alphabet) {
  Interpreter interp;
  interp.addAll(allAlgorithms(proof));
  for (const auto& b : proof.branches)
    if (auto c = replayBranch(proof.spec, b, interp, lists, alphabet)) return c;
  for (const auto& l : proof.lemmas)
    for (const auto& b : l.branches)
      if (auto c = replayBranch(l.spec, b, interp, lists, alphabet)) return c;
  return std::nullopt;
}

}  // namespace sortsynth
