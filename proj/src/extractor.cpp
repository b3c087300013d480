#include "sortsynth/extractor.hpp"

#include <algorithm>
#include <map>

namespace sortsynth {

namespace {

// Skolem -> Var renaming for one branch. Names clash only when two distinct
// constants share a base name; the later one keeps its index as a suffix.
Substitution variableNames(const ProofBranch& b) {
  std::vector<Term> skolems;
  for (const auto& t : b.inputs) collectSymbols(t, TermKind::Skolem, skolems);
  for (const auto& t : b.witnesses) collectSymbols(t, TermKind::Skolem, skolems);
  for (const auto& f : b.conditions) collectSymbols(f, TermKind::Skolem, skolems);
  Substitution s;
  std::map<std::string, int> taken;
  for (const auto& k : skolems) {
    std::string name = k.name();
    if (taken[name]++) name += std::to_string(k.index());
    s.bind(k, Term::var(name, k.sort()));
  }
  return s;
}

}  // namespace

std::vector<Algorithm> extractBranches(const FunctionSpec& spec, const std::vector<ProofBranch>& branches) {
  std::vector<Algorithm> out;
  for (std::size_t o = 0; o < spec.functions.size(); ++o) {
    Algorithm alg;
    alg.name = spec.functions[o];
    for (const auto& b : branches) {
      Substitution names = variableNames(b);
      RewriteRule r;
      r.head = alg.name;
      for (const auto& in : b.inputs) r.lhsArgs.push_back(substitute(in, names));
      std::vector<Formula> guards;
      for (const auto& c : b.conditions) {
        Formula g = substitute(c, names);
        if (g.isAtom(Pred::EqT) && g.args()[1].isNil() && g.args()[0].isVar()) {
          auto it = std::find(r.lhsArgs.begin(), r.lhsArgs.end(), g.args()[0]);
          if (it != r.lhsArgs.end()) {
            *it = Term::nil();
            continue;
          }
        }
        guards.push_back(g);
      }
      if (!guards.empty()) r.guard = Formula::conj(guards);
      r.rhs = substitute(b.witnesses.at(o), names);
      alg.rules.push_back(std::move(r));
    }
    finalizeAlgorithm(alg);
    out.push_back(std::move(alg));
  }
  return out;
}

std::vector<Algorithm> extract(const ProofResult& proof) { return extractBranches(proof.spec, proof.branches); }

std::vector<Algorithm> allAlgorithms(const ProofResult& proof) {
  std::vector<Algorithm> out = extract(proof);
  for (const auto& k : proof.cascaded)
    for (const auto& a : k.algorithms)
      if (std::none_of(out.begin(), out.end(), [&](const Algorithm& x) { return x.name == a.name; }))
        out.push_back(a);
  return out;
}

}  // namespace sortsynth
