#include "sortsynth/theory.hpp"

#include <algorithm>
#include <numeric>

#include "lexer.hpp"
#include "sortsynth/multiset.hpp"

namespace sortsynth {

// ---------------------------------------------------------------------------
// FunctionSpec

std::string FunctionSpec::name() const {
  std::string out;
  for (std::size_t i = 0; i < functions.size(); ++i) out += (i ? "/" : "") + functions[i];
  return out;
}

Term FunctionSpec::call(std::size_t output, const std::vector<Term>& args) const {
  return Term::app(functions.at(output), args, outputs.at(output).sort());
}

namespace {

Substitution bindInputs(const FunctionSpec& spec, const std::vector<Term>& args) {
  if (args.size() != spec.inputs.size()) throw SortError("arity mismatch for " + spec.name());
  Substitution s;
  for (std::size_t i = 0; i < args.size(); ++i) s.bind(spec.inputs[i], args[i]);
  return s;
}

}  // namespace

Formula FunctionSpec::preconditionAt(const std::vector<Term>& args) const {
  return substitute(precondition, bindInputs(*this, args));
}

Formula FunctionSpec::postconditionAt(const std::vector<Term>& args) const {
  Substitution s = bindInputs(*this, args);
  for (std::size_t i = 0; i < outputs.size(); ++i) s.bind(outputs[i], call(i, args));
  return substitute(postcondition, s);
}

Formula FunctionSpec::property() const {
  Formula body = postconditionAt(inputs);
  if (!precondition.isTrue()) body = Formula::implies(precondition, body);
  return Formula::forallMany(inputs, body);
}

void FunctionSpec::declareIn(Signature& sig) const {
  std::vector<Sort> args;
  for (const auto& v : inputs) args.push_back(v.sort());
  for (std::size_t i = 0; i < functions.size(); ++i) sig.declare(functions[i], args, outputs[i].sort());
}

std::string FunctionSpec::str() const {
  std::string out = "spec " + name() + "(";
  for (std::size_t i = 0; i < inputs.size(); ++i) out += (i ? "," : "") + inputs[i].name();
  return out + ") requires " + precondition.str() + " ensures " + Formula::existsMany(outputs, postcondition).str();
}

Formula conjectureOf(const FunctionSpec& spec) {
  Formula body = Formula::existsMany(spec.outputs, spec.postcondition);
  if (!spec.precondition.isTrue()) body = Formula::implies(spec.precondition, body);
  return Formula::forallMany(spec.inputs, body);
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace {

std::string atomKey(const Formula& f) {
  if (!f.isAtom()) return f.str();
  if (f.pred() == Pred::EqMS) {
    std::string l = normalize(f.args()[0]).str(), r = normalize(f.args()[1]).str();
    if (r < l) std::swap(l, r);
    return "eqms(" + l + "," + r + ")";
  }
  if (f.pred() == Pred::EqT || f.pred() == Pred::Neq) {
    std::string l = f.args()[0].str(), r = f.args()[1].str();
    if (r < l) std::swap(l, r);
    return std::string(predName(f.pred())) + "(" + l + "," + r + ")";
  }
  return f.str();
}

std::string formulaKey(const Formula& f) {
  std::vector<std::string> parts;
  for (const auto& c : conjuncts(f))
    if (!c.isTrue()) parts.push_back(atomKey(c));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

// Visits every permutation of positions that keeps each sort in place.
template <typename Fn>
void forEachSortPreservingOrder(const std::vector<Term>& vars, Fn&& fn) {
  std::vector<std::size_t> idx(vars.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < idx.size() && ok; ++i) ok = vars[idx[i]].sort() == vars[i].sort();
    if (ok) fn(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

// Key of the spec with its variables renamed by (permuted) position.
std::string orderedKey(const FunctionSpec& spec, const std::vector<std::size_t>& ins,
                       const std::vector<std::size_t>& outs) {
  Substitution s;
  std::string head;
  for (std::size_t i = 0; i < ins.size(); ++i) {
    const Term& v = spec.inputs[ins[i]];
    s.bind(v, Term::var("in" + std::to_string(i), v.sort()));
    head += std::string(sortName(v.sort())) + ",";
  }
  head += "->";
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const Term& v = spec.outputs[outs[i]];
    s.bind(v, Term::var("out" + std::to_string(i), v.sort()));
    head += std::string(sortName(v.sort())) + ",";
  }
  return head + "|" + formulaKey(substitute(spec.precondition, s)) + "|" +
         formulaKey(substitute(spec.postcondition, s));
}

std::vector<std::size_t> identityOrder(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

std::string canonicalKey(const FunctionSpec& spec) {
  std::string best;
  bool first = true;
  forEachSortPreservingOrder(spec.inputs, [&](const std::vector<std::size_t>& ins) {
    forEachSortPreservingOrder(spec.outputs, [&](const std::vector<std::size_t>& outs) {
      std::string key = orderedKey(spec, ins, outs);
      if (first || key < best) best = key;
      first = false;
    });
  });
  return best;
}

std::optional<SpecMatch> matchSpecs(const FunctionSpec& candidate, const FunctionSpec& declared) {
  if (candidate.inputs.size() != declared.inputs.size() || candidate.outputs.size() != declared.outputs.size())
    return std::nullopt;
  std::string want = orderedKey(declared, identityOrder(declared.inputs.size()), identityOrder(declared.outputs.size()));
  std::optional<SpecMatch> found;
  forEachSortPreservingOrder(candidate.inputs, [&](const std::vector<std::size_t>& ins) {
    forEachSortPreservingOrder(candidate.outputs, [&](const std::vector<std::size_t>& outs) {
      if (found) return;
      bool sortsAgree = true;
      for (std::size_t i = 0; i < ins.size(); ++i)
        sortsAgree = sortsAgree && candidate.inputs[ins[i]].sort() == declared.inputs[i].sort();
      for (std::size_t i = 0; i < outs.size(); ++i)
        sortsAgree = sortsAgree && candidate.outputs[outs[i]].sort() == declared.outputs[i].sort();
      if (sortsAgree && orderedKey(candidate, ins, outs) == want) found = SpecMatch{ins, outs};
    });
  });
  return found;
}

// ---------------------------------------------------------------------------
// KnowledgeBase

const FunctionSpec* KnowledgeBase::findSpec(std::string_view name) const {
  for (const auto& s : specs_) {
    if (s.name() == name) return &s;
    for (const auto& f : s.functions)
      if (f == name) return &s;
  }
  return nullptr;
}

const FunctionSpec* KnowledgeBase::findSpecLike(const FunctionSpec& spec) const {
  std::string key = canonicalKey(spec);
  for (const auto& s : specs_)
    if (s.outputs.size() == spec.outputs.size() && canonicalKey(s) == key) return &s;
  return nullptr;
}

const KnownFunction* KnowledgeBase::findFunction(std::string_view fname) const {
  for (const auto& k : functions_)
    for (const auto& f : k.spec.functions)
      if (f == fname) return &k;
  return nullptr;
}

const CoverSet* KnowledgeBase::findCoverSet(std::string_view name) const {
  for (const auto& c : coverSets_)
    if (c.name == name) return &c;
  return nullptr;
}

KnowledgeBase KnowledgeBase::withAxiom(Formula f) const {
  KnowledgeBase kb = *this;
  kb.axioms_.push_back(std::move(f));
  return kb;
}

KnowledgeBase KnowledgeBase::withSpec(FunctionSpec spec) const {
  KnowledgeBase kb = *this;
  for (const auto& f : spec.functions)
    if (const FunctionSpec* old = findSpec(f); old && canonicalKey(*old) != canonicalKey(spec))
      throw NameClash("function " + f + " already specified by " + old->str());
  spec.declareIn(kb.sig_);
  kb.specs_.push_back(std::move(spec));
  return kb;
}

KnowledgeBase KnowledgeBase::withCoverSet(CoverSet cs) const {
  KnowledgeBase kb = *this;
  kb.coverSets_.erase(std::remove_if(kb.coverSets_.begin(), kb.coverSets_.end(),
                                     [&](const CoverSet& c) { return c.name == cs.name; }),
                      kb.coverSets_.end());
  kb.coverSets_.push_back(std::move(cs));
  return kb;
}

KnowledgeBase KnowledgeBase::registerSynthesized(FunctionSpec spec, std::vector<Algorithm> algorithms) const {
  std::string key = canonicalKey(spec);
  for (const auto& f : spec.functions) {
    if (const KnownFunction* k = findFunction(f)) {
      if (k->spec.functions == spec.functions && canonicalKey(k->spec) == key) return *this;
      throw NameClash("function " + f + " is already synthesized for " + k->spec.str());
    }
    if (const FunctionSpec* s = findSpec(f); s && canonicalKey(*s) != key)
      throw NameClash("function " + f + " is declared with a different spec: " + s->str());
  }
  KnowledgeBase kb = *this;
  spec.declareIn(kb.sig_);
  kb.functions_.push_back(KnownFunction{std::move(spec), std::move(algorithms)});
  return kb;
}

// ---------------------------------------------------------------------------
// Theory files

namespace {

constexpr std::string_view kDefaultTheory = R"(# Multisets of lists
axiom eqms(ms(nil),empty)
axiom forall(a,forall(U,eqms(ms(cons(a,U)),union(mse(a),ms(U)))))
# Sortedness
axiom sorted(nil)
axiom forall(a,forall(U,implies(sorted(cons(a,U)),and(leq(a,U),sorted(U)))))
axiom forall(a,forall(U,implies(and(leq(a,U),sorted(U)),sorted(cons(a,U)))))
# Orderings between elements and lists hold element-wise
axiom forall(a,leq(a,nil))
axiom forall(a,lt(a,nil))
axiom forall(X,leq(X,nil))
axiom forall(X,leq(nil,X))
axiom forall(a,forall(b,forall(U,implies(and(leq(a,b),leq(a,U)),leq(a,cons(b,U))))))
axiom forall(a,forall(b,forall(U,implies(and(lt(a,b),lt(a,U)),lt(a,cons(b,U))))))
axiom forall(a,forall(b,forall(U,implies(and(leq(b,a),leq(U,a)),leq(cons(b,U),a)))))
axiom forall(a,forall(b,forall(c,implies(and(leq(a,b),leq(b,c)),leq(a,c)))))
axiom forall(a,forall(b,or(leq(a,b),lt(b,a))))

spec Sort(X) requires true ensures exists(V,and(eqms(ms(V),ms(X)),sorted(V)))
spec Merge(X,Y) requires and(sorted(X),sorted(Y)) ensures exists(V,and(eqms(ms(V),union(ms(X),ms(Y))),sorted(V)))
spec Insert(a,X) requires sorted(X) ensures exists(V,and(eqms(ms(V),union(mse(a),ms(X))),sorted(V)))
spec Conc(X,Y) requires and(sorted(X),sorted(Y),leq(X,Y)) ensures exists(V,and(eqms(ms(V),union(ms(X),ms(Y))),sorted(V)))
spec SmEq/Bigger(a,X) requires true ensures exists(V,exists(W,and(eqms(ms(X),union(ms(V),ms(W))),leq(V,a),lt(a,W))))
spec min/Trim(X) requires neq(X,nil) ensures exists(y,exists(V,and(eqms(union(mse(y),ms(V)),ms(X)),leq(y,X))))
spec minA/TrimA(a,X) requires true ensures exists(y,exists(V,and(eqms(union(mse(a),ms(X)),union(mse(y),ms(V))),leq(y,a),leq(y,X))))

coverset definition = { nil; cons(a,U) }
coverset dac = { nil; cons(a,nil); Conc(U,V) where and(neq(U,nil),neq(V,nil)) }
)";

FunctionSpec parseSpec(detail::Cursor& cur, const Signature& sig) {
  FunctionSpec spec;
  do {
    spec.functions.push_back(cur.ident());
  } while (cur.accept('/'));
  cur.expect('(');
  if (!cur.accept(')')) {
    do {
      Term v = detail::parseTermAt(cur, sig);
      if (!v.isVar()) cur.fail("spec inputs must be variables");
      spec.inputs.push_back(v);
    } while (cur.accept(','));
    cur.expect(')');
  }
  if (!cur.acceptWord("requires")) cur.fail("expected 'requires'");
  spec.precondition = detail::parseFormulaAt(cur, sig);
  if (!cur.acceptWord("ensures")) cur.fail("expected 'ensures'");
  Formula post = detail::parseFormulaAt(cur, sig);
  while (post.kind() == FormulaKind::Exists) {
    spec.outputs.push_back(post.boundVar());
    post = post.body();
  }
  spec.postcondition = post;
  if (spec.outputs.size() != spec.functions.size())
    cur.fail("spec " + spec.name() + " needs one existential output per function name");
  auto bound = [&](const Formula& f, bool withOutputs) {
    std::vector<Term> vars;
    collectSymbols(f, TermKind::Var, vars);
    for (const auto& v : vars) {
      bool in = std::find(spec.inputs.begin(), spec.inputs.end(), v) != spec.inputs.end();
      bool out = withOutputs && std::find(spec.outputs.begin(), spec.outputs.end(), v) != spec.outputs.end();
      if (!in && !out) cur.fail("spec " + spec.name() + ": free variable " + v.name());
    }
  };
  bound(spec.precondition, false);
  bound(spec.postcondition, true);
  return spec;
}

CoverSet parseCoverSet(detail::Cursor& cur, const Signature& sig) {
  CoverSet cs;
  cs.name = cur.ident();
  cur.expect('=');
  cur.expect('{');
  do {
    CoverCase c{detail::parseTermAt(cur, sig), {}};
    if (cur.acceptWord("where"))
      for (const auto& f : conjuncts(detail::parseFormulaAt(cur, sig))) c.conditions.push_back(f);
    cs.cases.push_back(std::move(c));
  } while (cur.accept(';'));
  cur.expect('}');
  return cs;
}

}  // namespace

std::string_view defaultTheoryText() { return kDefaultTheory; }

KnowledgeBase loadTheory(std::string_view text, KnowledgeBase base) {
  KnowledgeBase kb = std::move(base);
  std::size_t start = 0, lineNo = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    detail::Cursor cur(line);
    if (cur.atEnd()) continue;
    try {
      if (cur.acceptWord("axiom")) {
        Formula f = detail::parseFormulaAt(cur, kb.signature());
        if (!cur.atEnd()) cur.fail("trailing input");
        kb = kb.withAxiom(f);
      } else if (cur.acceptWord("spec")) {
        FunctionSpec s = parseSpec(cur, kb.signature());
        if (!cur.atEnd()) cur.fail("trailing input");
        kb = kb.withSpec(std::move(s));
      } else if (cur.acceptWord("coverset")) {
        CoverSet cs = parseCoverSet(cur, kb.signature());
        if (!cur.atEnd()) cur.fail("trailing input");
        kb = kb.withCoverSet(std::move(cs));
      } else {
        cur.fail("expected axiom, spec or coverset");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  return kb;
}

KnowledgeBase baseTheory() {
  static const KnowledgeBase kb = loadTheory(kDefaultTheory);
  return kb;
}

// ---------------------------------------------------------------------------
// Composite atoms

std::optional<std::vector<Formula>> reduceComposite(const Formula& atom) {
  using V = std::vector<Formula>;
  if (!atom.isAtom()) return std::nullopt;
  const auto& a = atom.args();
  switch (atom.pred()) {
    case Pred::Sorted:
      if (a[0].isNil()) return V{};
      if (a[0].isCons()) return V{Formula::leq(a[0].arg(0), a[0].arg(1)), Formula::sorted(a[0].arg(1))};
      return std::nullopt;
    case Pred::Leq:
    case Pred::Lt: {
      bool strict = atom.pred() == Pred::Lt;
      auto rel = [&](Term x, Term y) { return strict ? Formula::lt(x, y) : Formula::leq(x, y); };
      if (a[0].isNil() || a[1].isNil()) return V{};
      if (a[1].isCons()) return V{rel(a[0], a[1].arg(0)), rel(a[0], a[1].arg(1))};
      if (a[0].isCons()) return V{rel(a[0].arg(0), a[1]), rel(a[0].arg(1), a[1])};
      if (a[0] == a[1] && a[0].sort() == Sort::Element) return strict ? V{Formula::falsity()} : V{};
      return std::nullopt;
    }
    case Pred::EqT:
    case Pred::Neq: {
      bool eq = atom.pred() == Pred::EqT;
      if (a[0] == a[1]) return eq ? V{} : V{Formula::falsity()};
      bool c0 = a[0].isNil() || a[0].isCons(), c1 = a[1].isNil() || a[1].isCons();
      if (!c0 || !c1) return std::nullopt;
      if (a[0].isCons() && a[1].isCons()) {
        if (!eq) return std::nullopt;
        return V{Formula::eq(a[0].arg(0), a[1].arg(0)), Formula::eq(a[0].arg(1), a[1].arg(1))};
      }
      // One nil, one cons (both nil was handled above).
      return eq ? V{Formula::falsity()} : V{};
    }
    case Pred::EqMS:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace sortsynth
