#include "sortsynth/prover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "proof_state.hpp"
#include "sortsynth/extractor.hpp"
#include "sortsynth/multiset.hpp"

namespace sortsynth {
namespace {

using detail::Facts;
using detail::MsEquation;
using detail::polyHasMeta;
using detail::provable;
using detail::strictlySmaller;
using detail::substitutePoly;

// ---------------------------------------------------------------------------
// Proof state

/// A function whose induction hypothesis is available: the conjecture under
/// proof (and, after a nested cover, the same conjecture with the outer
/// input fixed).
struct Target {
  FunctionSpec spec;
  std::size_t main = 0;            // index of the induction input
  Term cover;                      // current value of that input
  std::map<std::size_t, Term> fixed;  // inputs that must stay as they are
};

struct Goal {
  std::vector<MsEquation> eqs;
  std::vector<Formula> atoms;

  bool empty() const { return eqs.empty() && atoms.empty(); }
  bool hasMeta() const {
    for (const auto& e : eqs)
      if (polyHasMeta(e.lhs) || polyHasMeta(e.rhs)) return true;
    for (const auto& a : atoms)
      if (containsMeta(a)) return true;
    return false;
  }
  Formula formula() const {
    std::vector<Formula> fs;
    for (const auto& e : eqs) fs.push_back(e.formula());
    fs.insert(fs.end(), atoms.begin(), atoms.end());
    return Formula::conj(fs);
  }
  std::string str() const { return formula().str(); }
};

/// Deferred Noetherian check for an induction hypothesis whose argument was
/// a metavariable when it was introduced.
struct Obligation {
  Term candidate;
  Term cover;
};

struct State {
  KnowledgeBase kb;
  std::vector<Formula> assumptions;  // ground, as stated (for cascaded preconditions)
  std::vector<Formula> factSources;  // everything added to `facts`
  Facts facts;
  Goal goal;
  Substitution bindings;
  std::vector<Formula> conditions;
  std::vector<Target> targets;
  std::vector<Obligation> obligations;
  std::set<std::string> used;  // function applications already rewritten with
  std::vector<Term> inputs;    // current values of the top-level inputs
  std::vector<Term> outputs;   // output metavariables
  std::set<std::string> skolemNames;
  NameSupply names;
  int depth = 0;
  bool allowConditions = false;
  bool metaMode = false;
  std::vector<std::string> cascades;  // memo keys of cascaded functions in use

  void addFact(const Formula& f) {
    factSources.push_back(f);
    facts.add(f);
  }
  void rebuildFacts() {
    facts = Facts();
    for (const auto& f : factSources) facts.add(f);
    facts.instantiate(bindings);
  }
  void bind(const Term& meta, const Term& value) {
    bindings.bind(meta, value);
    facts.instantiate(bindings);
  }
  Term freshSkolem(const std::string& base, Sort sort) {
    std::string name = base;
    while (skolemNames.count(name)) {
      char c = name[0];
      bool upper = c >= 'A' && c <= 'Z';
      char last = upper ? 'Z' : 'z';
      name = std::string(1, c == last ? (upper ? 'A' : 'a') : static_cast<char>(c + 1)) + name.substr(1);
      if (name == base) {
        name = base + "'";
        break;
      }
    }
    skolemNames.insert(name);
    return Term::skolem(name, sort, 0);
  }
};

// ---------------------------------------------------------------------------
// Solutions

// Smaller is better: fewer calls, fewer rules, smaller bodies, longer
// constructor prefixes.
struct Cost {
  long calls = 0;
  long rules = 0;
  long size = 0;
  long negPrefix = 0;
  Cost& operator+=(const Cost& o) {
    calls += o.calls;
    rules += o.rules;
    size += o.size;
    negPrefix += o.negPrefix;
    return *this;
  }
  bool operator<(const Cost& o) const {
    return std::tie(calls, rules, size, negPrefix) < std::tie(o.calls, o.rules, o.size, o.negPrefix);
  }
};

bool isConstructor(const Term& t) { return t.isNil() || t.isCons(); }

Cost costOf(const Term& t) {
  Cost c;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    ++c.size;
    if (u.isApp() && !isConstructor(u)) ++c.calls;
    for (const auto& a : u.args()) walk(a);
  };
  walk(t);
  for (Term u = t; u.isCons(); u = u.arg(1)) --c.negPrefix;
  return c;
}

struct Solution {
  Cost cost;
  std::vector<ProofBranch> branches;
  std::vector<TraceNode> trace;
  std::vector<std::string> cascades;
  std::string strategy;  // first strategic move below an enumerated choice point
};

// Moves that decide how the proof goes (induction, cascades, splits) as
// opposed to bookkeeping steps.
bool isStrategic(const std::string& rule) {
  return rule == "ST1" || rule == "ST2" || rule == "ST3" || rule == "ST4" || rule == "ST5" || rule == "IR2";
}

bool relabelAlternative(std::vector<TraceNode>& nodes, const std::string& label) {
  for (auto& n : nodes) {
    if (n.label.rfind("Alternative", 0) == 0) {
      n.label = label;
      return true;
    }
    if (relabelAlternative(n.children, label)) return true;
  }
  return false;
}

void appendUnique(std::vector<std::string>& to, const std::vector<std::string>& from) {
  for (const auto& s : from)
    if (std::find(to.begin(), to.end(), s) == to.end()) to.push_back(s);
}

TraceNode step(std::string rule, std::string text, std::string goal = {}) {
  TraceNode n;
  n.rule = std::move(rule);
  n.text = std::move(text);
  n.goal = std::move(goal);
  return n;
}

// Display of terms in traces: Skolems as `a0`, metavariables as `?V0`.
std::string show(const Term& t) { return displayTerm(t); }

std::string show(const Formula& f) { return displayFormula(f); }

// ---------------------------------------------------------------------------
// Spec decomposition: the multiset equation of a postcondition split into
// the side over inputs (Pin) and the side over outputs (Pout).

struct Property {
  MsPoly in;    // over input Vars
  Term outTerm; // multiset term over output Vars (and inputs)
};

std::optional<Property> propertyOf(const FunctionSpec& spec) {
  for (const auto& c : conjuncts(spec.postcondition)) {
    if (!c.isAtom(Pred::EqMS)) continue;
    auto mentionsOutput = [&](const Term& t) {
      for (const auto& o : spec.outputs)
        if (occurs(o, t)) return true;
      return false;
    };
    bool l = mentionsOutput(c.args()[0]), r = mentionsOutput(c.args()[1]);
    if (l == r) continue;
    const Term& inSide = l ? c.args()[1] : c.args()[0];
    const Term& outSide = l ? c.args()[0] : c.args()[1];
    return Property{normalize(inSide), outSide};
  }
  return std::nullopt;
}

MsPoly instantiateOut(const FunctionSpec& spec, const Property& p, const std::vector<Term>& args) {
  Substitution s;
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) s.bind(spec.inputs[i], args[i]);
  for (std::size_t i = 0; i < spec.outputs.size(); ++i) s.bind(spec.outputs[i], spec.call(i, args));
  return normalize(substitute(p.outTerm, s));
}

struct BagMatch {
  Substitution subst;
  std::vector<std::size_t> atoms;  // indices into the ground bag
};

// All ways of matching the pattern atoms of `pin` against distinct atoms of
// `ground`, extending `s`.
void matchBag(const std::vector<MsAtom>& pin, std::size_t k, const MsPoly& ground, std::vector<bool>& taken,
              BagMatch cur, std::vector<BagMatch>& out) {
  if (k == pin.size()) {
    out.push_back(std::move(cur));
    return;
  }
  const MsAtom& p = pin[k];
  for (std::size_t i = 0; i < ground.atoms().size(); ++i) {
    const MsAtom& g = ground.atoms()[i];
    if (taken[i] || g.kind != p.kind) continue;
    if (i > 0 && !taken[i - 1] && ground.atoms()[i - 1] == g) continue;  // identical atoms
    BagMatch next = cur;
    if (!matchInto(p.term, g.term, next.subst)) continue;
    next.atoms.push_back(i);
    taken[i] = true;
    matchBag(pin, k + 1, ground, taken, next, out);
    taken[i] = false;
  }
}

MsPoly withoutAtoms(const MsPoly& p, const std::vector<std::size_t>& idx) {
  std::vector<MsAtom> keep;
  for (std::size_t i = 0; i < p.atoms().size(); ++i)
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(p.atoms()[i]);
  return MsPoly(keep);
}

// ---------------------------------------------------------------------------
// Simplification

enum class Status { Open, Vacuous, Failed };

// Equation `ms(F(..meta..)) = P` among the facts, used to eliminate
// function applications over metavariables (an induction hypothesis whose
// argument is still unknown).
std::optional<MsPoly> metaFactRewrite(const Term& t, const Facts& facts) {
  if (!t.isApp() || isConstructor(t) || !containsMeta(t)) return std::nullopt;
  for (const auto& e : facts.equations()) {
    for (int side = 0; side < 2; ++side) {
      const MsPoly& a = side ? e.rhs : e.lhs;
      const MsPoly& b = side ? e.lhs : e.rhs;
      if (a.size() == 1 && a.atoms().front() == MsAtom::listWrap(t)) return b;
    }
  }
  return std::nullopt;
}

struct Simplifier {
  State& s;
  std::vector<TraceNode>& notes;

  Status run() {
    for (int round = 0; round < 32; ++round) {
      if (s.facts.contradiction()) return Status::Vacuous;
      bool changed = false;
      Status st = Status::Open;
      if (!equations(changed, st)) return st;
      if (!atoms(changed, st)) return st;
      if (!changed) break;
    }
    return s.facts.contradiction() ? Status::Vacuous : Status::Open;
  }

  bool equations(bool& changed, Status& st) {
    std::vector<MsEquation> out;
    for (auto e : s.goal.eqs) {
      MsPoly l = substitutePoly(e.lhs, s.bindings), r = substitutePoly(e.rhs, s.bindings);
      for (MsPoly* side : {&l, &r}) {
        for (bool again = true; again;) {
          again = false;
          for (const auto& a : side->atoms()) {
            if (!a.isListWrap()) continue;
            if (auto repl = metaFactRewrite(a.term, s.facts)) {
              notes.push_back(step("IR7", "replace " + show(a.asTerm()) + " by " + show(repl->toTerm()) +
                                              " (equal multisets)"));
              MsAtom victim = a;
              side->remove(victim);
              side->add(*repl);
              again = changed = true;
              break;
            }
          }
        }
      }
      auto [cl, cr] = cancelCommon(l, r);
      if (cl != e.lhs || cr != e.rhs) changed = true;
      if (cl.empty() && cr.empty()) continue;
      bool lm = polyHasMeta(cl), rm = polyHasMeta(cr);
      if (!lm && !rm) {
        Formula f = Formula::eqms(cl.toTerm(), cr.toTerm());
        if (provable(f, s.facts)) {
          changed = true;
          continue;
        }
        auto hasSingleton = [](const MsPoly& p) {
          for (const auto& a : p.atoms())
            if (a.isSingleton()) return true;
          return false;
        };
        if ((cl.empty() && hasSingleton(cr)) || (cr.empty() && hasSingleton(cl))) {
          st = Status::Failed;
          return false;
        }
      }
      out.push_back({cl, cr});
    }
    s.goal.eqs = std::move(out);
    return true;
  }

  bool atoms(bool& changed, Status& st) {
    std::vector<Formula> work;
    for (const auto& a : s.goal.atoms) work.push_back(substitute(a, s.bindings));
    std::vector<Formula> out;
    while (!work.empty()) {
      Formula a = work.back();
      work.pop_back();
      if (a.isTrue()) continue;
      if (a.isFalse()) {
        st = Status::Failed;
        return false;
      }
      if (a.kind() == FormulaKind::And) {
        for (const auto& x : a.subs()) work.push_back(x);
        changed = true;
        continue;
      }
      if (auto parts = reduceComposite(a)) {
        notes.push_back(step("IR3", "reduce " + show(a)));
        for (const auto& p : *parts) work.push_back(p);
        changed = true;
        continue;
      }
      if (provable(a, s.facts)) {
        changed = true;
        continue;
      }
      if (auto r = rewriteOrdering(a)) {
        work.push_back(*r);
        changed = true;
        continue;
      }
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    std::reverse(out.begin(), out.end());
    if (out != s.goal.atoms) changed = true;
    s.goal.atoms = std::move(out);
    return true;
  }

  // Orderings over metavariable terms: replace F(..meta..) by a list with the
  // same multiset, and `m <= M` with `{m} + ms(M) = G` by `m <= G`.
  std::optional<Formula> rewriteOrdering(const Formula& a) {
    if (!a.isAtom(Pred::Leq) && !a.isAtom(Pred::Lt)) return std::nullopt;
    for (int i = 0; i < 2; ++i) {
      if (auto repl = metaFactRewrite(a.args()[i], s.facts)) {
        std::vector<Formula> parts;
        for (const auto& atom : repl->atoms()) {
          auto args = a.args();
          args[i] = atom.term;
          parts.push_back(Formula::atom(a.pred(), args));
        }
        notes.push_back(step("IR7", "order-compatible replacement in " + show(a)));
        return Formula::conj(parts);
      }
    }
    if (!a.isAtom(Pred::Leq)) return std::nullopt;
    const Term& m = a.args()[0];
    const Term& M = a.args()[1];
    if (!m.isMeta() || !M.isMeta() || M.sort() != Sort::List) return std::nullopt;
    MsPoly pattern;
    pattern.add(MsAtom::singleton(m));
    pattern.add(MsAtom::listWrap(M));
    for (const auto& e : s.goal.eqs) {
      for (int side = 0; side < 2; ++side) {
        const MsPoly& x = side ? e.rhs : e.lhs;
        const MsPoly& g = side ? e.lhs : e.rhs;
        if (x != pattern || polyHasMeta(g)) continue;
        std::vector<Formula> parts;
        for (const auto& atom : g.atoms()) parts.push_back(Formula::leq(m, atom.term));
        notes.push_back(step("IR7", "rewrite " + show(a) + " through " + show(e.formula())));
        return Formula::conj(parts);
      }
    }
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// Moves

struct Move {
  std::string rule;
  std::string text;
  std::vector<State> cases;  // one state for a plain step, several for a case split
  std::vector<std::string> caseTexts;
  bool split = false;
  std::vector<TraceNode> detail;  // sub-proof of a freshly cascaded function
};

struct MemoEntry {
  bool ok = false;
  FunctionSpec spec;
  std::vector<Algorithm> algorithms;
  std::vector<ProofBranch> branches;
  std::vector<TraceNode> trace;
  std::vector<std::string> cascades;
};

struct Cascaded {
  FunctionSpec spec;                 // declared or generated spec
  std::vector<std::size_t> inputs;   // spec input i <- candidate input inputs[i]
  std::vector<std::size_t> outputs;
  std::string key;
  bool fresh = false;
  std::vector<TraceNode> trace;
};

std::vector<Term> elementSkolems(const State& s) {
  std::vector<Term> all, out;
  collectSymbols(s.goal.formula(), TermKind::Skolem, all);
  for (const auto& t : s.inputs) collectSymbols(t, TermKind::Skolem, all);
  for (const auto& t : all)
    if (t.sort() == Sort::Element && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

bool goalHasSorted(const State& s, const Term& meta) {
  return std::find(s.goal.atoms.begin(), s.goal.atoms.end(), Formula::sorted(meta)) != s.goal.atoms.end();
}

std::string argsKey(const std::string& f, const std::vector<Term>& args) {
  std::string k = f + "(";
  for (const auto& a : args) k += a.str() + ",";
  return k + ")";
}

std::string showCall(const FunctionSpec& spec, const std::vector<Term>& args) {
  std::string out = spec.name() + "[";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + show(args[i]);
  return out + "]";
}

/// Replaces the ground side of goal equation `i`.
void setGroundSide(State& s, std::size_t i, const MsPoly& g) {
  MsEquation& e = s.goal.eqs[i];
  if (polyHasMeta(e.lhs))
    e.rhs = g;
  else
    e.lhs = g;
}

MsPoly expandCover(const MsPoly& p, const Term& cover) {
  if (!cover.isApp(sym::kConc)) return p;
  MsPoly out;
  for (const auto& a : p.atoms()) {
    if (a.isListWrap() && a.term == cover) {
      for (const auto& x : cover.args()) out.add(normalize(Term::ms(x)));
    } else {
      out.add(a);
    }
  }
  return out;
}

/// Substitutes the cover term for an induction constant everywhere in the
/// state and adds the case's side conditions as assumptions.
Term applyCover(State& s, std::size_t ti, const CoverCase& c) {
  std::vector<Term> vars;
  collectSymbols(c.pattern, TermKind::Var, vars);
  for (const auto& f : c.conditions) collectSymbols(f, TermKind::Var, vars);
  Substitution vm;
  for (const auto& v : vars) vm.bind(v, s.freshSkolem(v.name(), v.sort()));
  Term term = substitute(c.pattern, vm);
  Term x = s.targets[ti].cover;
  Substitution sub;
  sub.bind(x, term);
  for (auto& t : s.inputs) t = substitute(t, sub);
  for (auto& f : s.assumptions) f = substitute(f, sub);
  for (auto& f : s.factSources) f = substitute(f, sub);
  for (auto& f : s.conditions) f = substitute(f, sub);
  for (auto& f : s.goal.atoms) f = substitute(f, sub);
  for (auto& e : s.goal.eqs) {
    e.lhs = expandCover(substitutePoly(e.lhs, sub), term);
    e.rhs = expandCover(substitutePoly(e.rhs, sub), term);
  }
  Substitution rebound;
  for (const auto& [k, v] : s.bindings) rebound.bind(k, substitute(v, sub));
  s.bindings = rebound;
  for (auto& t : s.targets) {
    t.cover = substitute(t.cover, sub);
    for (auto& [i, v] : t.fixed) v = substitute(v, sub);
  }
  for (const auto& f : c.conditions) {
    Formula g = substitute(f, vm);
    s.assumptions.push_back(g);
    s.factSources.push_back(g);
  }
  if (term.isApp(sym::kConc)) {
    Formula split = Formula::eqms(Term::ms(term), Term::munion(Term::ms(term.arg(0)), Term::ms(term.arg(1))));
    s.factSources.push_back(split);
  }
  s.rebuildFacts();
  s.targets[ti].cover = term;
  return term;
}

Goal goalOf(const Formula& post) {
  Goal g;
  for (const auto& c : conjuncts(post)) {
    if (c.isAtom(Pred::EqMS)) {
      auto [l, r] = cancelCommon(normalize(c.args()[0]), normalize(c.args()[1]));
      g.eqs.push_back({l, r});
    } else {
      g.atoms.push_back(c);
    }
  }
  return g;
}

// Sort-like spec: one list in, one list out, output sorted and a
// permutation of the input.
bool sortLike(const FunctionSpec& spec) {
  if (spec.inputs.size() != 1 || spec.outputs.size() != 1 || spec.inputs[0].sort() != Sort::List) return false;
  auto p = propertyOf(spec);
  if (!p || p->in.size() != 1 || !p->in.atoms()[0].isListWrap()) return false;
  for (const auto& c : conjuncts(spec.postcondition))
    if (c == Formula::sorted(spec.outputs[0])) return true;
  return false;
}

class Run {
 public:
  explicit Run(const ProveOptions& o) : opts_(o) {}

  std::vector<Solution> proveSpec(const FunctionSpec& spec, const KnowledgeBase& kb, Alternative alt,
                                  const std::string& coverName, bool enumerate);
  std::vector<KnownFunction> collect(const std::vector<std::string>& keys) const;
  std::vector<Lemma> lemmas(const std::vector<std::string>& keys) const;

  void enter(const FunctionSpec& spec) { ancestors_.push_back(canonicalKey(spec)); }
  void leave() { ancestors_.pop_back(); }

  std::vector<std::string> rejected;
  std::vector<TraceNode> deepest;
  std::string deepestReason = "no proof found";

 private:
  std::vector<Solution> solve(State s, bool enumerate);
  std::vector<Solution> evalMove(const Move& m, bool enumerate);
  std::vector<Solution> conjunction(const std::string& rule, const std::string& text,
                                    std::vector<std::vector<Solution>> perCase,
                                    const std::vector<std::string>& caseTexts);
  std::vector<Solution> leaf(State& s, std::vector<TraceNode> notes);
  std::vector<Solution> twoConstants(State& s, const Term& x, const Term& y, bool enumerate,
                                     std::vector<TraceNode> notes);
  std::vector<Move> moves(const State& s);
  void solveMoves(const State& s, std::size_t i, const MsPoly& M, const MsPoly& G, std::vector<Move>& out);
  void splitMoves(const State& s, std::size_t i, const MsPoly& M, const MsPoly& G, std::vector<Move>& out);
  void rewriteMoves(const State& s, std::size_t i, const MsPoly& G, std::vector<Move>& out);
  void sortingMoves(const State& s, std::size_t i, const MsPoly& G, std::vector<Move>& out);
  void introduceMoves(const State& s, std::vector<Move>& out);
  void nestedCoverMoves(const State& s, std::vector<Move>& out);
  std::optional<Move> wholeGoalCascade(const State& s);
  std::optional<Move> applyFunction(const State& s, std::size_t i, const MsPoly& G, const std::vector<std::size_t>& atoms,
                                    const FunctionSpec& candidate, const std::vector<Term>& candArgs,
                                    const std::string& rule);
  std::optional<Cascaded> cascade(const FunctionSpec& candidate, const KnowledgeBase& kb);
  void fail(const State& s, const std::string& why);
  std::string stateKey(const State& s, bool enumerate) const;

  const ProveOptions& opts_;
  std::map<std::string, MemoEntry> memo_;
  std::vector<std::string> memoOrder_;
  std::vector<std::string> ancestors_;
  std::map<std::string, std::vector<Solution>> table_;
  std::vector<TraceNode> path_;
  int deepestDepth_ = -1;
  int aux_ = 0;
};

void Run::fail(const State& s, const std::string& why) {
  if (s.depth < deepestDepth_) return;
  deepestDepth_ = s.depth;
  deepest = path_;
  deepest.push_back(step("FAIL", why, s.goal.str()));
  deepestReason = why;
}

std::string Run::stateKey(const State& s, bool enumerate) const {
  std::string k = enumerate ? "E|" : "B|";
  k += s.goal.str() + "|";
  std::vector<std::string> fs;
  for (const auto& f : s.factSources) fs.push_back(substitute(f, s.bindings).str());
  std::sort(fs.begin(), fs.end());
  for (const auto& f : fs) k += f + ";";
  k += "|";
  for (const auto& u : s.used) k += u + ";";
  k += "|";
  for (const auto& t : s.targets) {
    k += t.spec.name() + ":" + t.cover.str();
    for (const auto& [i, v] : t.fixed) k += "@" + std::to_string(i) + "=" + v.str();
    k += ";";
  }
  k += "|";
  for (const auto& c : s.conditions) k += c.str() + ";";
  for (const auto& t : s.inputs) k += t.str() + ";";
  for (const auto& t : s.outputs) k += substitute(t, s.bindings).str() + ";";
  for (const auto& o : s.obligations) k += "<" + substitute(o.candidate, s.bindings).str() + "," + o.cover.str() + ">";
  for (const auto& f : s.kb.functions()) k += f.spec.name() + ";";
  for (const auto& a : ancestors_) k += "^" + a;
  k += s.allowConditions ? "C" : "-";
  return k;
}

std::vector<Solution> Run::leaf(State& s, std::vector<TraceNode> notes) {
  for (const auto& o : s.obligations) {
    Term cand = substitute(o.candidate, s.bindings);
    if (containsMeta(cand) || !strictlySmaller(cand, o.cover, s.facts)) {
      rejected.push_back("NotSmaller: " + show(cand) + " is not smaller than " + show(o.cover));
      fail(s, "induction argument " + show(cand) + " not smaller than " + show(o.cover));
      return {};
    }
  }
  Solution sol;
  ProofBranch b;
  b.inputs = s.inputs;
  b.conditions = s.conditions;
  for (const auto& o : s.outputs) {
    Term w = substitute(o, s.bindings);
    if (containsMeta(w)) {
      fail(s, "output " + show(o) + " left undetermined");
      return {};
    }
    b.witnesses.push_back(w);
    sol.cost += costOf(w);
  }
  sol.cost.rules = 1;
  sol.branches.push_back(std::move(b));
  sol.trace = std::move(notes);
  std::string ws;
  for (const auto& w : sol.branches.back().witnesses) ws += (ws.empty() ? "" : ", ") + show(w);
  sol.trace.push_back(step("QED", "goal closed; witness " + ws));
  sol.cascades = s.cascades;
  return {sol};
}

std::vector<Solution> Run::conjunction(const std::string& rule, const std::string& text,
                                       std::vector<std::vector<Solution>> perCase,
                                       const std::vector<std::string>& caseTexts) {
  std::vector<Solution> acc{Solution{}};
  for (auto& options : perCase) {
    if (options.empty()) return {};
    std::vector<Solution> next;
    for (const auto& a : acc)
      for (const auto& o : options) {
        if (next.size() >= opts_.limits.maxAlternatives) break;
        Solution c = a;
        c.cost += o.cost;
        c.branches.insert(c.branches.end(), o.branches.begin(), o.branches.end());
        appendUnique(c.cascades, o.cascades);
        TraceNode group;
        group.label = "Case";
        group.text = caseTexts[c.trace.size()];
        group.children = o.trace;
        c.trace.push_back(std::move(group));
        next.push_back(std::move(c));
      }
    acc = std::move(next);
  }
  for (auto& a : acc) {
    TraceNode node = step(rule, text);
    node.children = std::move(a.trace);
    a.trace = {std::move(node)};
  }
  return acc;
}

std::vector<Solution> Run::evalMove(const Move& m, bool enumerate) {
  std::vector<Solution> out;
  if (!m.split) {
    path_.push_back(step(m.rule, m.text, m.cases[0].goal.str()));
    out = solve(m.cases[0], enumerate);
    path_.pop_back();
    for (auto& sol : out) {
      TraceNode node = step(m.rule, m.text, m.cases[0].goal.str());
      node.children = m.detail;
      sol.trace.insert(sol.trace.begin(), std::move(node));
    }
    return out;
  }
  std::vector<std::vector<Solution>> perCase;
  for (std::size_t i = 0; i < m.cases.size(); ++i) {
    path_.push_back(step(m.rule, m.text + " / " + m.caseTexts[i], m.cases[i].goal.str()));
    perCase.push_back(solve(m.cases[i], enumerate));
    path_.pop_back();
    if (perCase.back().empty()) return {};
  }
  return conjunction(m.rule, m.text, std::move(perCase), m.caseTexts);
}

std::vector<Solution> Run::twoConstants(State& s, const Term& x, const Term& y, bool enumerate,
                                        std::vector<TraceNode> notes) {
  const std::pair<Formula, Formula> orientations[] = {{Formula::leq(x, y), Formula::lt(y, x)},
                                                      {Formula::leq(y, x), Formula::lt(x, y)}};
  for (const auto& [first, second] : orientations) {
    Move m;
    m.rule = "IR8";
    m.text = "case split on " + show(x) + " and " + show(y);
    m.split = true;
    for (const Formula& c : {first, second}) {
      State st = s;
      st.depth++;
      st.addFact(c);
      st.assumptions.push_back(c);
      st.conditions.push_back(c);
      m.cases.push_back(std::move(st));
      m.caseTexts.push_back("assume " + show(c));
    }
    auto sols = evalMove(m, enumerate);
    if (!sols.empty()) {
      for (auto& sol : sols) sol.trace.insert(sol.trace.begin(), notes.begin(), notes.end());
      return sols;
    }
  }
  return {};
}

std::vector<Solution> Run::solve(State s, bool enumerate) {
  if (s.depth > opts_.limits.maxDepth) {
    fail(s, "depth limit reached");
    return {};
  }
  std::vector<TraceNode> notes;
  Status st = Simplifier{s, notes}.run();
  if (st == Status::Vacuous) {
    Solution sol;
    sol.trace = std::move(notes);
    sol.trace.push_back(step("IR3", "assumptions are contradictory; the case holds vacuously"));
    sol.cascades = s.cascades;
    return {sol};
  }
  if (st == Status::Failed) {
    fail(s, "goal reduces to false");
    return {};
  }
  std::string key = stateKey(s, enumerate);
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  auto remember = [&](std::vector<Solution> sols) {
    table_[key] = sols;
    return sols;
  };

  if (s.goal.empty()) return remember(leaf(s, std::move(notes)));

  // Two unrelated element constants in the goal: case split on their order.
  std::vector<Term> elems;
  collectSymbols(s.goal.formula(), TermKind::Skolem, elems);
  elems.erase(std::remove_if(elems.begin(), elems.end(), [](const Term& t) { return t.sort() != Sort::Element; }),
              elems.end());
  std::sort(elems.begin(), elems.end(), TermLess());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (provable(Formula::leq(elems[i], elems[j]), s.facts) || provable(Formula::leq(elems[j], elems[i]), s.facts))
        continue;
      return remember(twoConstants(s, elems[i], elems[j], enumerate, std::move(notes)));
    }

  if (!s.goal.hasMeta()) {
    if (!s.allowConditions) {
      fail(s, "ground goal not provable");
      return remember({});
    }
    for (const auto& e : s.goal.eqs) {
      const MsPoly& l = e.lhs;
      const MsPoly& r = e.rhs;
      const MsPoly* single = l.empty() ? &r : r.empty() ? &l : nullptr;
      if (single && single->size() == 1 && single->atoms()[0].isListWrap())
        s.conditions.push_back(Formula::eq(single->atoms()[0].term, Term::nil()));
      else
        s.conditions.push_back(e.formula());
    }
    for (const auto& a : s.goal.atoms) s.conditions.push_back(a);
    std::string cs;
    for (const auto& c : s.conditions) cs += (cs.empty() ? "" : ", ") + show(c);
    notes.push_back(step("IR1", "remaining goal becomes the branch condition " + cs));
    s.goal = Goal{};
    return remember(leaf(s, std::move(notes)));
  }

  std::vector<Move> ms = moves(s);
  std::vector<Solution> found;
  auto tryMoves = [&](const std::vector<Move>& list) {
    std::size_t k = 0;
    for (const auto& m : list) {
      if (k++ >= opts_.limits.maxAlternatives) break;
      bool strategic = isStrategic(m.rule);
      auto sols = evalMove(m, enumerate && !strategic);
      if (sols.empty()) continue;
      if (enumerate && !strategic) {
        found.insert(found.end(), sols.begin(), sols.end());
        continue;
      }
      Solution best = sols.front();
      for (const auto& x : sols)
        if (x.cost < best.cost) best = x;
      if (enumerate) {
        best.strategy = m.rule + " " + m.text;
        best.trace.front().label = "Alternative";
        found.push_back(std::move(best));
      } else if (found.empty() || best.cost < found.front().cost) {
        found = {std::move(best)};
      }
    }
  };
  tryMoves(ms);
  if (found.empty()) {
    if (auto m = wholeGoalCascade(s)) tryMoves({*m});
  }
  if (found.empty()) {
    fail(s, ms.empty() ? "no applicable step" : "every alternative failed");
    return remember({});
  }
  if (enumerate) {
    // One alternative per strategy, the cheapest; alternatives calling no
    // function at all are interchangeable.
    std::vector<Solution> merged;
    for (auto& f : found) {
      auto same = std::find_if(merged.begin(), merged.end(), [&](const Solution& x) {
        return x.strategy == f.strategy || (x.cost.calls == 0 && f.cost.calls == 0);
      });
      if (same == merged.end())
        merged.push_back(std::move(f));
      else if (f.cost < same->cost)
        *same = std::move(f);
    }
    found = std::move(merged);
    for (std::size_t i = 0; i < found.size(); ++i)
      relabelAlternative(found[i].trace, "Alternative #" + std::to_string(i + 1));
  }
  for (auto& sol : found) sol.trace.insert(sol.trace.begin(), notes.begin(), notes.end());
  return remember(found);
}

std::vector<Move> Run::moves(const State& s) {
  std::vector<Move> out;
  for (std::size_t i = 0; i < s.goal.eqs.size(); ++i) {
    const MsEquation& e = s.goal.eqs[i];
    bool lm = polyHasMeta(e.lhs), rm = polyHasMeta(e.rhs);
    if (lm == rm) continue;
    const MsPoly& M = lm ? e.lhs : e.rhs;
    const MsPoly& G = lm ? e.rhs : e.lhs;
    bool allMeta = std::all_of(M.atoms().begin(), M.atoms().end(), [](const MsAtom& a) { return a.term.isMeta(); });
    if (allMeta && M.size() == 1) solveMoves(s, i, M, G, out);
    if (allMeta && M.size() > 1) splitMoves(s, i, M, G, out);
    rewriteMoves(s, i, G, out);
    bool sortingShaped = M.size() == 1 && M.atoms()[0].isListWrap() && M.atoms()[0].term.isMeta() &&
                         goalHasSorted(s, M.atoms()[0].term);
    if (sortingShaped) sortingMoves(s, i, G, out);
  }
  introduceMoves(s, out);
  nestedCoverMoves(s, out);
  return out;
}

// IR4: a single metavariable equal to a ground multiset.
void Run::solveMoves(const State& s, std::size_t i, const MsPoly& M, const MsPoly& G, std::vector<Move>& out) {
  const MsAtom& m = M.atoms()[0];
  auto emit = [&](const Term& value) {
    Move mv;
    mv.rule = "IR4";
    mv.text = "solve " + show(m.term) + " := " + show(value);
    State st = s;
    st.depth++;
    st.goal.eqs.erase(st.goal.eqs.begin() + static_cast<long>(i));
    st.bind(m.term, value);
    mv.cases.push_back(std::move(st));
    out.push_back(std::move(mv));
  };
  if (m.isSingleton()) {
    if (G.size() == 1 && G.atoms()[0].isSingleton()) emit(G.atoms()[0].term);
    return;
  }
  std::vector<Term> heads;
  std::optional<Term> tail;
  for (const auto& a : G.atoms()) {
    if (a.isSingleton()) {
      heads.push_back(a.term);
    } else {
      if (tail) return;
      tail = a.term;
    }
  }
  bool needSorted = goalHasSorted(s, m.term);
  std::sort(heads.begin(), heads.end(), TermLess());
  int tries = 0;
  do {
    Term v = tail.value_or(Term::nil());
    for (auto it = heads.rbegin(); it != heads.rend(); ++it) v = Term::cons(*it, v);
    if (!needSorted || provable(Formula::sorted(v), s.facts)) {
      emit(v);
      if (!needSorted) break;
    }
  } while (++tries < 24 && std::next_permutation(heads.begin(), heads.end(), TermLess()));
}

// ST6: several metavariables equal to a ground multiset; distribute its
// summands, keeping only distributions compatible with the goal's orderings.
void Run::splitMoves(const State& s, std::size_t i, const MsPoly& M, const MsPoly& G, std::vector<Move>& out) {
  std::vector<Term> elemMetas, listMetas;
  for (const auto& a : M.atoms()) (a.isSingleton() ? elemMetas : listMetas).push_back(a.term);
  const auto& atoms = G.atoms();
  std::set<std::string> seen;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> pickElems = [&](std::size_t k) {
    if (k < elemMetas.size()) {
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        if (!atoms[j].isSingleton() || std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
        chosen.push_back(j);
        pickElems(k + 1);
        chosen.pop_back();
      }
      return;
    }
    Substitution eb;
    for (std::size_t e = 0; e < elemMetas.size(); ++e) eb.bind(elemMetas[e], atoms[chosen[e]].term);
    std::vector<MsAtom> rest;
    for (std::size_t j = 0; j < atoms.size(); ++j)
      if (std::find(chosen.begin(), chosen.end(), j) == chosen.end()) rest.push_back(atoms[j]);
    if (listMetas.empty() && !rest.empty()) return;
    std::size_t n = listMetas.empty() ? 1 : listMetas.size();
    std::size_t combos = 1;
    for (std::size_t r = 0; r < rest.size(); ++r) combos *= n;
    for (std::size_t code = 0; code < combos && combos <= 4096; ++code) {
      std::vector<MsPoly> parts(listMetas.size());
      std::size_t c = code;
      for (const auto& a : rest) {
        parts[c % n].add(a);
        c /= n;
      }
      std::string sig = eb.str();
      for (const auto& p : parts) sig += "|" + p.str();
      if (!seen.insert(sig).second) continue;
      // Orderings mentioning a single unknown must hold summand-wise.
      bool ok = true;
      for (const auto& a : s.goal.atoms) {
        Formula f = substitute(a, eb);
        std::vector<Term> metas;
        collectSymbols(f, TermKind::Meta, metas);
        if (metas.empty()) {
          ok = provable(f, s.facts);
        } else if (metas.size() == 1 && (f.isAtom(Pred::Leq) || f.isAtom(Pred::Lt))) {
          auto at = std::find(listMetas.begin(), listMetas.end(), metas[0]);
          if (at == listMetas.end()) continue;
          const MsPoly& part = parts[static_cast<std::size_t>(at - listMetas.begin())];
          for (int side = 0; side < 2 && ok; ++side) {
            if (f.args()[side] != metas[0] || containsMeta(f.args()[1 - side])) continue;
            for (const auto& p : part.atoms()) {
              auto args = f.args();
              args[side] = p.term;
              if (!provable(Formula::atom(f.pred(), args), s.facts)) {
                ok = false;
                break;
              }
            }
          }
        }
        if (!ok) break;
      }
      if (!ok) continue;
      Move mv;
      mv.rule = "ST6";
      State st = s;
      st.depth++;
      st.goal.eqs.erase(st.goal.eqs.begin() + static_cast<long>(i));
      std::string text;
      for (std::size_t e = 0; e < elemMetas.size(); ++e) {
        st.bind(elemMetas[e], atoms[chosen[e]].term);
        text += show(elemMetas[e]) + " := " + show(atoms[chosen[e]].term) + "; ";
      }
      for (std::size_t l = 0; l < listMetas.size(); ++l) {
        MsPoly lhs;
        lhs.add(MsAtom::listWrap(listMetas[l]));
        st.goal.eqs.push_back({lhs, parts[l]});
        text += "ms(" + show(listMetas[l]) + ") = " + show(parts[l].toTerm()) + "; ";
      }
      mv.text = "split multiset equation: " + text;
      mv.cases.push_back(std::move(st));
      out.push_back(std::move(mv));
    }
  };
  pickElems(0);
}

// Applies the multiset property of `spec` at `args` to the ground side of
// equation i: the matched summands are replaced by the outputs' multiset.
std::optional<Move> Run::applyFunction(const State& s, std::size_t i, const MsPoly& G,
                                       const std::vector<std::size_t>& atoms, const FunctionSpec& spec,
                                       const std::vector<Term>& args, const std::string& rule) {
  auto prop = propertyOf(spec);
  if (!prop) return std::nullopt;
  std::string key = argsKey(spec.name(), args);
  if (s.used.count(key)) return std::nullopt;
  if (!provable(spec.preconditionAt(args), s.facts)) return std::nullopt;
  MsPoly g = withoutAtoms(G, atoms);
  g.add(instantiateOut(spec, *prop, args));
  Move mv;
  mv.rule = rule;
  State st = s;
  st.depth++;
  setGroundSide(st, i, g);
  st.addFact(spec.postconditionAt(args));
  st.used.insert(key);
  mv.cases.push_back(std::move(st));
  return mv;
}

void Run::rewriteMoves(const State& s, std::size_t i, const MsPoly& G, std::vector<Move>& out) {
  struct Source {
    const FunctionSpec* spec;
    const Target* target;
  };
  std::vector<Source> sources;
  for (const auto& t : s.targets) sources.push_back({&t.spec, &t});
  for (const auto& k : s.kb.functions()) sources.push_back({&k.spec, nullptr});
  std::vector<Term> elems = elementSkolems(s);
  for (const auto& src : sources) {
    const FunctionSpec& spec = *src.spec;
    auto prop = propertyOf(spec);
    if (!prop) continue;
    if (!src.target && prop->in.size() < 2) continue;
    std::vector<BagMatch> matches;
    std::vector<bool> taken(G.size(), false);
    matchBag(prop->in.atoms(), 0, G, taken, BagMatch{}, matches);
    for (const auto& m : matches) {
      // A matched summand that is already a call of the same function
      // would only nest the function in itself.
      bool nested = false;
      for (auto idx : m.atoms) {
        const Term& t = G.atoms()[idx].term;
        if (t.isApp() && std::find(spec.functions.begin(), spec.functions.end(), t.name()) != spec.functions.end())
          nested = true;
      }
      if (nested) continue;
      std::vector<std::vector<Term>> argSets{{}};
      bool ok = true;
      for (const auto& in : spec.inputs) {
        std::vector<std::vector<Term>> next;
        if (auto v = m.subst.lookup(in)) {
          for (auto a : argSets) {
            a.push_back(*v);
            next.push_back(std::move(a));
          }
        } else if (in.sort() == Sort::Element) {
          for (const auto& a : argSets)
            for (const auto& e : elems) {
              auto b = a;
              b.push_back(e);
              next.push_back(std::move(b));
            }
        } else {
          ok = false;
        }
        argSets = std::move(next);
      }
      if (!ok) continue;
      for (const auto& args : argSets) {
        if (src.target) {
          const Target& t = *src.target;
          bool fixedOk = true;
          for (const auto& [k, v] : t.fixed) fixedOk = fixedOk && args[k] == v;
          if (!fixedOk) continue;
          if (!provable(spec.preconditionAt(args), s.facts) || s.used.count(argsKey(spec.name(), args))) continue;
          if (!strictlySmaller(args[t.main], t.cover, s.facts)) {
            std::string msg = "NotSmaller: " + showCall(spec, args) + ": " + show(args[t.main]) +
                              " is not smaller than " + show(t.cover);
            if (std::find(rejected.begin(), rejected.end(), msg) == rejected.end()) rejected.push_back(msg);
            continue;
          }
        }
        auto mv = applyFunction(s, i, G, m.atoms, spec, args, src.target ? "ST2" : "ST4");
        if (!mv) continue;
        mv->text = (src.target ? "induction hypothesis " : "property of ") + showCall(spec, args);
        out.push_back(std::move(*mv));
      }
    }
  }
}

FunctionSpec pairSpec(bool elementFirst, bool ordered) {
  Term a = Term::var("a", Sort::Element), X = Term::var("X", Sort::List), Y = Term::var("Y", Sort::List);
  Term V = Term::var("V", Sort::List);
  FunctionSpec s;
  if (elementFirst) {
    s.inputs = {a, X};
    s.precondition = Formula::sorted(X);
    s.postcondition = Formula::conj({Formula::eqms(Term::ms(V), Term::munion(Term::mse(a), Term::ms(X))),
                                     Formula::sorted(V)});
  } else {
    s.inputs = {X, Y};
    std::vector<Formula> pre{Formula::sorted(X), Formula::sorted(Y)};
    if (ordered) pre.push_back(Formula::leq(X, Y));
    s.precondition = Formula::conj(pre);
    s.postcondition = Formula::conj({Formula::eqms(Term::ms(V), Term::munion(Term::ms(X), Term::ms(Y))),
                                     Formula::sorted(V)});
  }
  s.outputs = {V};
  return s;
}

FunctionSpec splitSpec() {
  Term a = Term::var("a", Sort::Element), X = Term::var("X", Sort::List);
  Term V = Term::var("V", Sort::List), W = Term::var("W", Sort::List);
  FunctionSpec s;
  s.inputs = {a, X};
  s.outputs = {V, W};
  s.postcondition = Formula::conj({Formula::eqms(Term::ms(X), Term::munion(Term::ms(V), Term::ms(W))),
                                   Formula::leq(V, a), Formula::lt(a, W)});
  return s;
}

void Run::sortingMoves(const State& s, std::size_t i, const MsPoly& G, std::vector<Move>& out) {
  const auto& atoms = G.atoms();
  // IR6: {e} + ms(L) with e <= L is the multiset of cons(e, L).
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (!atoms[j].isSingleton() || (j > 0 && atoms[j - 1] == atoms[j])) continue;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (!atoms[k].isListWrap() || (k > 0 && atoms[k - 1] == atoms[k])) continue;
      if (!provable(Formula::leq(atoms[j].term, atoms[k].term), s.facts)) continue;
      Move mv;
      mv.rule = "IR6";
      mv.text = "compress " + show(atoms[j].asTerm()) + " + " + show(atoms[k].asTerm()) + " into ms(" +
                show(Term::cons(atoms[j].term, atoms[k].term)) + ")";
      State st = s;
      st.depth++;
      setGroundSide(st, i, compress(G, atoms[j], atoms[k]));
      mv.cases.push_back(std::move(st));
      out.push_back(std::move(mv));
    }
  }
  auto viaCascade = [&](const FunctionSpec& candidate, const std::vector<Term>& candArgs,
                        const std::vector<std::size_t>& removed, const std::string& rule) {
    for (const auto& k : s.kb.functions())
      if (matchSpecs(candidate, k.spec) && propertyOf(k.spec)->in.size() >= 2) return;  // plain rewrite covers it
    std::optional<Cascaded> c;
    for (const auto& k : s.kb.functions())
      if (auto m = matchSpecs(candidate, k.spec)) c = Cascaded{k.spec, m->inputs, m->outputs, "", false, {}};
    if (!c) c = cascade(candidate, s.kb);
    if (!c) return;
    std::vector<Term> args;
    for (auto idx : c->inputs) args.push_back(candArgs[idx]);
    auto mv = applyFunction(s, i, G, removed, c->spec, args, rule);
    if (!mv) return;
    State& st = mv->cases[0];
    if (!c->key.empty()) {
      const MemoEntry& e = memo_.at(c->key);
      try {
        st.kb = st.kb.registerSynthesized(e.spec, e.algorithms);
      } catch (const NameClash&) {
        return;
      }
      appendUnique(st.cascades, {c->key});
    }
    mv->text = (rule == "ST5" ? "split with " : "cascade: ") + showCall(c->spec, args);
    mv->detail = c->trace;
    out.push_back(std::move(*mv));
  };
  for (std::size_t j = 0; j < atoms.size(); ++j)
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (j == k || (j > 0 && atoms[j - 1] == atoms[j]) || (k > 0 && atoms[k - 1] == atoms[k])) continue;
      const MsAtom& A = atoms[j];
      const MsAtom& B = atoms[k];
      if (A.isSingleton() && B.isListWrap()) {
        bool sortedL = provable(Formula::sorted(B.term), s.facts);
        // Cascading is tried even when compression applies: the prover cannot
        // tell that Insert[e, L] and cons(e, L) coincide.
        if (sortedL) viaCascade(pairSpec(true, false), {A.term, B.term}, {j, k}, "ST4");
        else if (B.term.isSkolem()) viaCascade(splitSpec(), {A.term, B.term}, {k}, "ST5");
      } else if (A.isListWrap() && B.isListWrap() && j < k) {
        if (!provable(Formula::sorted(A.term), s.facts) || !provable(Formula::sorted(B.term), s.facts)) continue;
        bool ab = provable(Formula::leq(A.term, B.term), s.facts);
        bool ba = !ab && provable(Formula::leq(B.term, A.term), s.facts);
        if (ba)
          viaCascade(pairSpec(false, true), {B.term, A.term}, {j, k}, "ST4");
        else
          viaCascade(pairSpec(false, ab), {A.term, B.term}, {j, k}, "ST4");
      }
    }
}

// IR2 with ST2: a sorted unknown list strictly smaller than the induction
// constant is the result of the function under synthesis on a fresh unknown.
void Run::introduceMoves(const State& s, std::vector<Move>& out) {
  if (s.targets.empty()) return;
  const Target& t = s.targets.front();
  if (!sortLike(t.spec) || !t.fixed.empty()) return;
  for (const auto& a : s.goal.atoms) {
    if (!a.isAtom(Pred::Sorted) || !a.args()[0].isMeta()) continue;
    const Term& M = a.args()[0];
    if (std::find(s.outputs.begin(), s.outputs.end(), M) != s.outputs.end()) continue;
    if (!strictlySmaller(M, t.cover, s.facts, s.goal.eqs)) continue;
    Move mv;
    mv.rule = "IR2";
    State st = s;
    st.depth++;
    Term W = st.names.freshMeta("W", Sort::List);
    Term call = t.spec.call(0, {W});
    st.bind(M, call);
    st.addFact(t.spec.postconditionAt({W}));
    st.obligations.push_back({W, t.cover});
    mv.text = "introduce " + show(M) + " := " + show(call) + " with its induction hypothesis";
    mv.cases.push_back(std::move(st));
    out.push_back(std::move(mv));
  }
}

// ST1 on a second list input, keeping the first input's case fixed.
void Run::nestedCoverMoves(const State& s, std::vector<Move>& out) {
  if (s.targets.size() != 1 || s.metaMode) return;
  const Target& t = s.targets.front();
  const CoverSet* cs = s.kb.findCoverSet("definition");
  if (!cs) return;
  std::vector<Term> mentioned;
  collectSymbols(s.goal.formula(), TermKind::Skolem, mentioned);
  for (std::size_t j = 0; j < t.spec.inputs.size() && j < s.inputs.size(); ++j) {
    const Term& y = s.inputs[j];
    if (j == t.main || !y.isSkolem() || y.sort() != Sort::List) continue;
    if (std::find(mentioned.begin(), mentioned.end(), y) == mentioned.end()) continue;
    Move mv;
    mv.rule = "ST1";
    mv.text = "nested induction on " + show(y) + " with cover set definition";
    mv.split = true;
    for (const auto& c : cs->cases) {
      State st = s;
      st.depth++;
      Target inner = t;
      inner.main = j;
      inner.cover = y;
      inner.fixed = {{t.main, s.inputs[t.main]}};
      st.targets.push_back(inner);
      Term term = applyCover(st, 1, c);
      mv.caseTexts.push_back(show(y) + " = " + show(term));
      mv.cases.push_back(std::move(st));
    }
    out.push_back(std::move(mv));
  }
}

// ST3: the whole remaining goal becomes the conjecture of a new function.
std::optional<Move> Run::wholeGoalCascade(const State& s) {
  if (ancestors_.size() > static_cast<std::size_t>(opts_.limits.maxCascadeDepth)) return std::nullopt;
  for (const auto& a : s.goal.atoms)
    if (a.isAtom(Pred::Sorted) && containsMeta(a)) return std::nullopt;
  Formula goal = s.goal.formula();
  std::vector<Term> skolems, metas;
  collectSymbols(goal, TermKind::Skolem, skolems);
  collectSymbols(goal, TermKind::Meta, metas);
  if (metas.empty()) return std::nullopt;
  auto elementsFirst = [](std::vector<Term>& v) {
    std::stable_partition(v.begin(), v.end(), [](const Term& t) { return t.sort() == Sort::Element; });
  };
  elementsFirst(skolems);
  elementsFirst(metas);
  const std::string elemIn = "abcdefgh", listIn = "XYZUST", elemOut = "yzwuv", listOut = "VWRQP";
  Substitution ren;
  FunctionSpec cand;
  std::size_t ne = 0, nl = 0;
  for (const auto& k : skolems) {
    bool e = k.sort() == Sort::Element;
    if ((e ? ne : nl) >= (e ? elemIn : listIn).size()) return std::nullopt;
    Term v = Term::var(std::string(1, e ? elemIn[ne++] : listIn[nl++]), k.sort());
    ren.bind(k, v);
    cand.inputs.push_back(v);
  }
  ne = nl = 0;
  for (const auto& m : metas) {
    bool e = m.sort() == Sort::Element;
    if ((e ? ne : nl) >= (e ? elemOut : listOut).size()) return std::nullopt;
    Term v = Term::var(std::string(1, e ? elemOut[ne++] : listOut[nl++]), m.sort());
    ren.bind(m, v);
    cand.outputs.push_back(v);
  }
  std::vector<Formula> pre;
  for (const auto& f : s.assumptions) {
    std::vector<Term> ks;
    collectSymbols(f, TermKind::Skolem, ks);
    bool inside = std::all_of(ks.begin(), ks.end(), [&](const Term& k) {
      return std::find(skolems.begin(), skolems.end(), k) != skolems.end();
    });
    if (!inside || provable(f, Facts())) continue;
    pre.push_back(substitute(f, ren));
  }
  cand.precondition = Formula::conj(pre);
  cand.postcondition = substitute(goal, ren);
  auto c = cascade(cand, s.kb);
  if (!c) return std::nullopt;
  std::vector<Term> args;
  for (auto idx : c->inputs) args.push_back(skolems[idx]);
  Move mv;
  mv.rule = "ST3";
  State st = s;
  st.depth++;
  for (std::size_t k = 0; k < c->outputs.size(); ++k) st.bind(metas[c->outputs[k]], c->spec.call(k, args));
  st.addFact(c->spec.postconditionAt(args));
  const MemoEntry& e = memo_.at(c->key);
  try {
    st.kb = st.kb.registerSynthesized(e.spec, e.algorithms);
  } catch (const NameClash&) {
    return std::nullopt;
  }
  appendUnique(st.cascades, {c->key});
  mv.text = "cascade: the goal is the conjecture of " + c->spec.name() + ", applied at " + showCall(c->spec, args);
  mv.detail = c->trace;
  mv.cases.push_back(std::move(st));
  return mv;
}

void numberTrace(std::vector<TraceNode>& nodes, const std::string& prefix) {
  int cases = 0;
  for (auto& n : nodes) {
    std::string p = prefix;
    if (n.label == "Case") {
      p = prefix + "." + std::to_string(++cases);
      n.label = "Case " + p;
    } else if (n.label.rfind("Alternative #", 0) == 0) {
      p = prefix + "." + n.label.substr(13);
      n.label = "Alternative " + p;
    }
    numberTrace(n.children, p);
  }
}

std::optional<Cascaded> Run::cascade(const FunctionSpec& candidate, const KnowledgeBase& kb) {
  FunctionSpec spec = candidate;
  std::vector<std::size_t> ins(candidate.inputs.size()), outs(candidate.outputs.size());
  std::iota(ins.begin(), ins.end(), 0);
  std::iota(outs.begin(), outs.end(), 0);
  bool declared = false;
  for (const auto& d : kb.specs())
    if (auto m = matchSpecs(candidate, d)) {
      spec = d;
      ins = m->inputs;
      outs = m->outputs;
      declared = true;
      break;
    }
  std::string key = canonicalKey(spec);
  if (std::find(ancestors_.begin(), ancestors_.end(), key) != ancestors_.end()) return std::nullopt;
  bool fresh = false;
  auto it = memo_.find(key);
  if (it == memo_.end()) {
    if (ancestors_.size() > static_cast<std::size_t>(opts_.limits.maxCascadeDepth)) return std::nullopt;
    if (!declared) {
      int n = ++aux_;
      spec.functions.clear();
      for (const auto& o : spec.outputs) {
        std::string base = o.sort() == Sort::Element ? "aux" : "Aux";
        spec.functions.push_back(base + std::to_string(n) + (spec.outputs.size() > 1 ? "_" + o.name() : ""));
      }
    }
    MemoEntry e;
    e.spec = spec;
    ancestors_.push_back(key);
    auto sols = proveSpec(spec, kb, Alternative::Skolem, "definition", false);
    ancestors_.pop_back();
    if (!sols.empty()) {
      e.ok = true;
      e.algorithms = extractBranches(spec, sols.front().branches);
      e.branches = sols.front().branches;
      e.trace = sols.front().trace;
      numberTrace(e.trace, spec.name());
      e.cascades = sols.front().cascades;
    }
    it = memo_.emplace(key, std::move(e)).first;
    memoOrder_.push_back(key);
    fresh = true;
  }
  if (!it->second.ok) return std::nullopt;
  if (!declared) {
    auto m = matchSpecs(candidate, it->second.spec);
    if (!m) return std::nullopt;
    ins = m->inputs;
    outs = m->outputs;
  }
  Cascaded c{it->second.spec, ins, outs, key, fresh, {}};
  if (fresh) c.trace = it->second.trace;
  return c;
}

std::vector<Solution> Run::proveSpec(const FunctionSpec& spec, const KnowledgeBase& kb, Alternative alt,
                                     const std::string& coverName, bool enumerate) {
  State s;
  s.kb = kb;
  Substitution sub;
  for (const auto& in : spec.inputs) {
    Term k = s.freshSkolem(in.name(), in.sort());
    s.inputs.push_back(k);
    sub.bind(in, k);
  }
  for (const auto& c : conjuncts(spec.preconditionAt(s.inputs))) {
    s.assumptions.push_back(c);
    s.addFact(c);
  }
  for (const auto& o : spec.outputs) {
    Term m = s.names.freshMeta(o.name(), o.sort());
    s.outputs.push_back(m);
    sub.bind(o, m);
  }
  s.goal = goalOf(substitute(spec.postcondition, sub));
  for (std::size_t i = 0; i < spec.inputs.size(); ++i)
    if (spec.inputs[i].sort() == Sort::List) {
      s.targets.push_back(Target{spec, i, s.inputs[i], {}});
      break;
    }

  if (alt == Alternative::Meta) {
    if (s.outputs.size() != 1 || s.outputs[0].sort() != Sort::List) return {};
    const CoverSet* cs = kb.findCoverSet("definition");
    if (!cs) return {};
    const Term V = s.outputs[0];
    std::vector<Formula> negations;
    std::vector<std::vector<Solution>> perCase;
    std::vector<std::string> caseTexts;
    for (const auto& c : cs->cases) {
      State st = s;
      st.depth++;
      st.metaMode = true;
      for (const auto& n : negations) {
        st.addFact(n);
        st.assumptions.push_back(n);
        st.conditions.push_back(n);
      }
      std::vector<Term> vars;
      collectSymbols(c.pattern, TermKind::Var, vars);
      Substitution vm;
      for (const auto& v : vars) vm.bind(v, st.names.freshMeta(v.name(), v.sort()));
      Term term = substitute(c.pattern, vm);
      st.bind(V, term);
      st.allowConditions = !containsMeta(term);
      caseTexts.push_back(show(V) + " = " + show(term));
      path_.push_back(step("ST1", "output case " + caseTexts.back(), st.goal.str()));
      auto sols = solve(st, enumerate);
      path_.pop_back();
      if (sols.empty()) return {};
      const auto& branches = sols.front().branches;
      if (!branches.empty() && branches.front().conditions.size() == negations.size() + 1)
        negations.push_back(Formula::negate(branches.front().conditions.back()));
      perCase.push_back(std::move(sols));
    }
    return conjunction("ST1", "induction on the output " + show(V) + " with cover set definition", std::move(perCase),
                       caseTexts);
  }

  if (s.targets.empty()) return solve(s, enumerate);
  const CoverSet* cs = kb.findCoverSet(coverName);
  if (!cs) cs = kb.findCoverSet("definition");
  if (!cs) return {};
  Move m;
  m.rule = "ST1";
  m.text = "induction on " + show(s.targets[0].cover) + " with cover set " + cs->name;
  m.split = true;
  for (const auto& c : cs->cases) {
    State st = s;
    st.depth++;
    Term x = st.targets[0].cover;
    Term term = applyCover(st, 0, c);
    m.caseTexts.push_back(show(x) + " = " + show(term));
    m.cases.push_back(std::move(st));
  }
  return evalMove(m, enumerate);
}

std::vector<KnownFunction> Run::collect(const std::vector<std::string>& keys) const {
  std::vector<KnownFunction> out;
  std::set<std::string> seen;
  std::function<void(const std::string&)> visit = [&](const std::string& k) {
    if (!seen.insert(k).second) return;
    const MemoEntry& e = memo_.at(k);
    for (const auto& c : e.cascades) visit(c);
    out.push_back(KnownFunction{e.spec, e.algorithms});
  };
  for (const auto& k : keys) visit(k);
  return out;
}

std::vector<Lemma> Run::lemmas(const std::vector<std::string>& keys) const {
  std::vector<Lemma> out;
  std::set<std::string> seen;
  std::function<void(const std::string&)> visit = [&](const std::string& k) {
    if (!seen.insert(k).second) return;
    const MemoEntry& e = memo_.at(k);
    for (const auto& c : e.cascades) visit(c);
    out.push_back(Lemma{e.spec, e.branches});
  };
  for (const auto& k : keys) visit(k);
  return out;
}

}  // namespace

ProveOutcome prove(const FunctionSpec& spec, const KnowledgeBase& kb, const ProveOptions& options) {
  ProveOutcome out;
  Run run(options);
  std::vector<std::pair<Alternative, int>> alts;
  if (options.alternative != Alternative::Skolem) alts.emplace_back(Alternative::Meta, 1);
  if (options.alternative != Alternative::Meta) alts.emplace_back(Alternative::Skolem, 2);
  std::vector<std::vector<Algorithm>> seen;
  for (const auto& [alt, num] : alts) {
    run.enter(spec);
    auto sols = run.proveSpec(spec, kb, alt, options.coverSet, options.all);
    run.leave();
    for (auto& sol : sols) {
      ProofResult r;
      r.spec = spec;
      r.alternative = alt == Alternative::Meta ? "meta" : "skolem";
      r.branches = sol.branches;
      TraceNode root;
      root.label = "Alternative " + std::to_string(num);
      root.children = std::move(sol.trace);
      numberTrace(root.children, std::to_string(num));
      r.trace = {std::move(root)};
      r.cascaded = run.collect(sol.cascades);
      r.lemmas = run.lemmas(sol.cascades);
      std::vector<Algorithm> algs = extract(r);
      bool dup = std::any_of(seen.begin(), seen.end(), [&](const std::vector<Algorithm>& prev) {
        for (std::size_t i = 0; i < prev.size(); ++i)
          if (!alphaEquivalent(prev[i], algs[i])) return false;
        return true;
      });
      if (dup) continue;
      seen.push_back(algs);
      out.results.push_back(std::move(r));
    }
  }
  out.rejectedInductions = run.rejected;
  if (out.results.empty()) out.failure = Failure{run.deepestReason, run.deepest};
  return out;
}

}  // namespace sortsynth
