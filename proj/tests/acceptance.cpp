// End-to-end acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "generators.hpp"
#include "reference_algorithms.hpp"
#include "sortsynth/extractor.hpp"
#include "sortsynth/interpreter.hpp"
#include "sortsynth/multiset.hpp"
#include "sortsynth/prover.hpp"
#include "sortsynth/replay.hpp"

using namespace sortsynth;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); }

const KnowledgeBase& kb() {
  static const KnowledgeBase k = baseTheory();
  return k;
}

struct Synthesis {
  ProveOutcome outcome;
  double seconds = 0;
};

Synthesis synth(const std::string& name, Alternative alt, bool all = false, const std::string& cover = "definition") {
  ProveOptions o;
  o.alternative = alt;
  o.all = all;
  o.coverSet = cover;
  auto t0 = Clock::now();
  Synthesis s{prove(*kb().findSpec(name), kb(), o), 0};
  s.seconds = seconds(t0);
  return s;
}

Algorithm reference(const char* text) { return parseAlgorithm(text, kb().signature()); }

const Algorithm* find(const std::vector<Algorithm>& algs, const char* text) {
  Algorithm want = reference(text);
  for (const auto& a : algs)
    if (alphaEquivalent(a, want)) return &a;
  return nullptr;
}

// The result whose top-level algorithm matches `text`, if any.
const ProofResult* resultFor(const ProveOutcome& out, const char* text) {
  for (const auto& r : out.results)
    if (find(extract(r), text)) return &r;
  return nullptr;
}

// Lists of length <= 5 over {1,2,3}, counted independently of the enumerator.
std::size_t expectedExhaustiveCount() {
  std::size_t total = 0, level = 1;
  for (int len = 0; len <= 5; ++len, level *= 3) total += level;
  return total;
}

class Report {
 public:
  void line(int n, bool ok, const std::string& detail) {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << detail << std::endl;
    failed_ |= !ok;
  }
  bool failed() const { return failed_; }

 private:
  bool failed_ = false;
};

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << "s";
  return os.str();
}

// checkSpec over the exhaustive domain plus 200 seeded random tuples.
bool verifies(const FunctionSpec& spec, Interpreter& interp, std::size_t& exhaustive, std::size_t& random,
              std::string& why) {
  exhaustive = random = 0;
  auto c = checkSpec(spec, interp, specDomain(spec, exhaustiveLists()), &exhaustive);
  if (!c) c = checkSpec(spec, interp, randomDomain(spec, 200, 0), &random);
  if (c) why = c->str();
  return !c;
}

}  // namespace

int main() {
  Report report;
  const FunctionSpec& sortSpec = *kb().findSpec("Sort");

  // 1. Meta alternative: Min-Sort with its min/Trim cascade.
  Synthesis meta = synth("Sort", Alternative::Meta);
  {
    bool ok = false;
    std::string detail = "no proof";
    if (!meta.outcome.results.empty()) {
      auto all = allAlgorithms(meta.outcome.results[0]);
      bool minSort = find(extract(meta.outcome.results[0]), ref::kMinSort);
      bool minA = find(all, ref::kMinA), trimA = find(all, ref::kTrimA);
      bool bridges = find(all, ref::kMin) && find(all, ref::kTrim);
      ok = minSort && minA && trimA && bridges && meta.seconds < 10;
      detail = std::string("Min-Sort ") + (minSort ? "found" : "missing") + ", minA/TrimA " +
               (minA && trimA ? "match" : "mismatch") + ", min/Trim " + (bridges ? "match" : "mismatch") + ", " +
               fmt(meta.seconds);
    }
    report.line(1, ok, detail);
  }

  // 2. Skolem alternatives: Insert-Sort and Quick-Sort with their cascades.
  Synthesis skolem = synth("Sort", Alternative::Skolem, true);
  {
    const ProofResult* ins = resultFor(skolem.outcome, ref::kInsertSort);
    const ProofResult* quick = resultFor(skolem.outcome, ref::kQuickSort);
    bool ok = ins && quick;
    std::string detail = std::string("Insert-Sort ") + (ins ? "found" : "missing") + ", Quick-Sort " +
                         (quick ? "found" : "missing");
    if (quick) {
      auto all = allAlgorithms(*quick);
      bool partition = find(all, ref::kSmEq) && find(all, ref::kBigger);
      ok &= partition;
      detail += std::string(", SmEq/Bigger ") + (partition ? "match" : "mismatch");
    }
    // Insert and Conc have no golden text; they must meet their specs.
    for (auto [name, proof] : {std::pair{"Insert", ins}, std::pair{"Conc", quick}}) {
      if (!proof) continue;
      Interpreter interp;
      interp.addAll(allAlgorithms(*proof));
      const FunctionSpec& spec = *kb().findSpec(name);
      std::size_t ex = 0, rnd = 0;
      std::string why;
      bool good = interp.knows(name) && verifies(spec, interp, ex, rnd, why);
      ok &= good;
      detail += std::string(", ") + name + (good ? " meets spec (" + std::to_string(ex) + " cases)" : " fails: " + why);
    }
    report.line(2, ok, detail + ", " + fmt(skolem.seconds));
  }

  // 3. Divide-and-conquer cover gives Merge-Sort; Merge has three versions.
  Synthesis dac = synth("Sort", Alternative::Skolem, false, "dac");
  Synthesis merge = synth("Merge", Alternative::Skolem, true);
  {
    bool mergeSort = resultFor(dac.outcome, ref::kMergeSort);
    std::vector<Algorithm> merges;
    for (const auto& r : merge.outcome.results) merges.push_back(extract(r).at(0));
    bool v1 = find(merges, ref::kMergeInsert1), v2 = find(merges, ref::kMergeInsert2),
         v3 = find(merges, ref::kMergeClassic);
    bool ok = mergeSort && v1 && v2 && v3 && merges.size() == 3;
    report.line(3, ok,
                std::string("Merge-Sort ") + (mergeSort ? "found" : "missing") + ", " +
                    std::to_string(merges.size()) + " Merge versions (insert-fold " + (v1 ? "yes" : "no") +
                    ", tail-insert " + (v2 ? "yes" : "no") + ", classic " + (v3 ? "yes" : "no") + ")");
  }

  // 4. Insert[a0,U0] is not smaller than the induction variable; the looping
  //    clause appears in no emitted algorithm.
  {
    const auto& rej = merge.outcome.rejectedInductions;
    auto hit = std::find_if(rej.begin(), rej.end(), [](const std::string& s) {
      return s.rfind("NotSmaller: Merge[Insert[a0, U0], Y0]:", 0) == 0;
    });
    RewriteRule looping = reference(ref::kMergeLooping).rules.at(1);
    Algorithm loopingOnly{"Merge", {looping}, {}};
    finalizeAlgorithm(loopingOnly);
    std::size_t emitted = 0, offending = 0;
    for (const auto* o : {&meta.outcome, &skolem.outcome, &dac.outcome, &merge.outcome})
      for (const auto& r : o->results)
        for (const auto& a : allAlgorithms(r)) {
          ++emitted;
          for (const auto& rule : a.rules) {
            Algorithm single{a.name, {rule}, {}};
            finalizeAlgorithm(single);
            if (alphaEquivalent(single, loopingOnly)) ++offending;
          }
        }
    bool ok = hit != rej.end() && offending == 0;
    report.line(4, ok,
                (hit != rej.end() ? "rejected: " + *hit : std::string("no NotSmaller rejection of Insert[a0, U0]")) +
                    "; looping clause in " + std::to_string(offending) + " of " + std::to_string(emitted) +
                    " emitted algorithms");
  }

  // 5. Every synthesized Sort variant meets the spec.
  {
    auto t0 = Clock::now();
    std::vector<const ProofResult*> sorts;
    for (const auto* o : {&meta.outcome, &skolem.outcome, &dac.outcome})
      for (const auto& r : o->results) sorts.push_back(&r);
    bool ok = sorts.size() >= 4;
    std::size_t ex = 0, rnd = 0;
    std::string why;
    for (const auto* r : sorts) {
      Interpreter interp;
      interp.addAll(allAlgorithms(*r));
      // Merge-Sort's Merge comes from the dac proof's cascade.
      if (!verifies(sortSpec, interp, ex, rnd, why) || ex != expectedExhaustiveCount() || rnd != 200) {
        ok = false;
        break;
      }
    }
    double t = seconds(t0) + meta.seconds + skolem.seconds + dac.seconds;
    ok &= t < 60;
    report.line(5, ok,
                std::to_string(sorts.size()) + " Sort variants, each " + std::to_string(ex) + " exhaustive + " +
                    std::to_string(rnd) + " random" + (why.empty() ? "" : ", counterexample " + why) + ", " + fmt(t));
  }

  // 6. Merge v1 and v2 sort unsorted input when the second argument is [].
  {
    bool ok = true;
    std::string detail;
    for (auto [label, text] : {std::pair{"insert-fold", ref::kMergeInsert1}, std::pair{"tail-insert", ref::kMergeInsert2}}) {
      const ProofResult* r = resultFor(merge.outcome, text);
      if (!r) {
        ok = false;
        detail += std::string(label) + " missing; ";
        continue;
      }
      Interpreter interp;
      interp.addAll(allAlgorithms(*r));
      std::size_t n = 0, bad = 0;
      for (const auto& xs : exhaustiveLists()) {
        ++n;
        try {
          if (interp.call("Merge", {Value::list(xs), Value::list({})}).items != oracleSort(xs)) ++bad;
        } catch (const EvalError&) {
          ++bad;
        }
      }
      ok &= bad == 0;
      detail += std::string(label) + " " + std::to_string(n - bad) + "/" + std::to_string(n) + " sorted; ";
    }
    report.line(6, ok, detail.substr(0, detail.size() - 2));
  }

  // 7. Multiset algebra and strict-subset properties on random instances.
  {
    const int n = 10000;
    gen::TermGen g(2024);
    int idem = 0, perm = 0, duality = 0, irreflexive = 0, chains = 0, asym = 0;
    for (int i = 0; i < n; ++i) {
      MsPoly p = normalize(g.mset(3));
      idem += normalize(p.toTerm()) == p;
      std::vector<MsAtom> atoms = p.atoms();
      std::shuffle(atoms.begin(), atoms.end(), g.rng());
      Term t = Term::msEmpty();
      for (const auto& a : atoms) t = g.pick(2) ? Term::munion(a.asTerm(), t) : Term::munion(t, a.asTerm());
      perm += normalize(t) == p;

      // Expand/compress duality: a singleton compressed onto a wrapped list
      // expands back to the same polynomial.
      MsPoly q = g.groundPoly(5);
      q.add(MsAtom::singleton(Term::skolem("a", Sort::Element, g.pick(3))));
      q.add(MsAtom::listWrap(Term::skolem("U", Sort::List, g.pick(3))));
      const MsAtom *s = nullptr, *w = nullptr;
      for (const auto& a : q.atoms()) {
        if (a.isSingleton() && !s) s = &a;
        if (a.isListWrap() && !w) w = &a;
      }
      duality += normalize(compress(q, *s, *w).toTerm()) == q;

      // Strict partial order on chains a < b < c built by adding atoms, plus
      // irreflexivity on unrelated random polys.
      MsPoly a = g.groundPoly(3), b = a, c;
      b.add(MsAtom::singleton(Term::skolem("a", Sort::Element, g.pick(3))));
      c = b;
      c.add(MsAtom::listWrap(Term::skolem("U", Sort::List, g.pick(3))));
      irreflexive += !strictSubset(a, a) && !strictSubset(q, q);
      chains += strictSubset(a, b) && strictSubset(b, c) && strictSubset(a, c);
      asym += !strictSubset(b, a) && !strictSubset(c, a);
    }
    bool ok = idem == n && perm == n && duality == n && irreflexive == n && chains == n && asym == n;
    report.line(7, ok,
                "normalize idempotent " + std::to_string(idem) + "/" + std::to_string(n) + ", AC-invariant " +
                    std::to_string(perm) + ", expand/compress " + std::to_string(duality) + ", irreflexive " +
                    std::to_string(irreflexive) + ", transitive " + std::to_string(chains) + ", asymmetric " +
                    std::to_string(asym));
  }

  // 8. Soundness replay of every proof branch, lemmas included.
  {
    auto lists = exhaustiveLists(4, 3);
    std::size_t proofs = 0, branches = 0;
    std::string why;
    for (const auto* o : {&meta.outcome, &skolem.outcome, &dac.outcome, &merge.outcome})
      for (const auto& r : o->results) {
        ++proofs;
        branches += r.branches.size();
        for (const auto& l : r.lemmas) branches += l.branches.size();
        if (auto c = replayProof(r, lists); c && why.empty()) why = r.spec.name() + ": " + c->str();
      }
    report.line(8, why.empty() && proofs > 0,
                std::to_string(branches) + " branches of " + std::to_string(proofs) + " proofs replayed over " +
                    std::to_string(lists.size()) + " lists" + (why.empty() ? "" : ", counterexample " + why));
  }

  return report.failed() ? 1 : 0;
}
