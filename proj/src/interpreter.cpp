#include "sortsynth/interpreter.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace sortsynth {

Value Value::mset(std::vector<long> xs) {
  std::sort(xs.begin(), xs.end());
  return Value{Kind::MSet, 0, std::move(xs)};
}

std::string Value::str() const {
  if (kind == Kind::Element) return std::to_string(elem);
  std::string out = kind == Kind::List ? "[" : "{";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + std::to_string(items[i]);
  return out + (kind == Kind::List ? "]" : "}");
}

void Interpreter::add(const Algorithm& alg) { algorithms_[alg.name] = alg; }

void Interpreter::addAll(const std::vector<Algorithm>& algs) {
  for (const auto& a : algs) add(a);
}

Value Interpreter::call(const std::string& name, const std::vector<Value>& args) {
  steps_ = 0;
  depth_ = 0;
  return apply(name, args);
}

namespace {

bool matchValue(const Term& pat, const Value& v, Env& env) {
  if (pat.isVar()) {
    auto [it, fresh] = env.emplace(pat, v);
    return fresh || it->second == v;
  }
  if (v.kind != Value::Kind::List) throw EvalError("pattern " + pat.str() + " against non-list " + v.str());
  if (pat.isNil()) return v.items.empty();
  if (pat.isCons()) {
    if (v.items.empty()) return false;
    return matchValue(pat.arg(0), Value::element(v.items.front()), env) &&
           matchValue(pat.arg(1), Value::list({v.items.begin() + 1, v.items.end()}), env);
  }
  if (pat.isApp(sym::kConc) && pat.args().size() == 2) {
    if (v.items.size() < 2) return false;
    auto mid = v.items.begin() + static_cast<long>((v.items.size() + 1) / 2);
    return matchValue(pat.arg(0), Value::list({v.items.begin(), mid}), env) &&
           matchValue(pat.arg(1), Value::list({mid, v.items.end()}), env);
  }
  throw EvalError("unsupported pattern " + pat.str());
}

std::vector<long> itemsOf(const Value& v) {
  return v.kind == Value::Kind::Element ? std::vector<long>{v.elem} : v.items;
}

}  // namespace

Value Interpreter::apply(const std::string& name, const std::vector<Value>& args) {
  if (++steps_ > stepLimit_) throw StepLimitExceeded("step limit of " + std::to_string(stepLimit_) + " exceeded");
  if (depth_ >= depthLimit_) throw StepLimitExceeded("call depth limit of " + std::to_string(depthLimit_) + " exceeded");
  struct Nest {
    std::size_t& d;
    explicit Nest(std::size_t& d) : d(++d) {}
    ~Nest() { --d; }
  } nest(depth_);
  auto it = algorithms_.find(name);
  if (it == algorithms_.end()) throw EvalError("no algorithm for " + name);
  for (const auto& rule : it->second.rules) {
    if (rule.lhsArgs.size() != args.size()) throw EvalError("arity mismatch calling " + name);
    Env env;
    bool ok = true;
    for (std::size_t i = 0; i < args.size() && ok; ++i) ok = matchValue(rule.lhsArgs[i], args[i], env);
    if (!ok || (rule.guard && !holds(*rule.guard, env))) continue;
    return eval(rule.rhs, env);
  }
  std::string shown;
  for (const auto& a : args) shown += (shown.empty() ? "" : ", ") + a.str();
  throw EvalError("no rule of " + name + " applies to " + shown);
}

Value Interpreter::eval(const Term& t, const Env& env) {
  if (!t.isApp()) {
    auto it = env.find(t);
    if (it == env.end()) throw EvalError("unbound symbol " + t.str());
    return it->second;
  }
  if (t.isNil()) return Value::list({});
  if (t.isApp(sym::kMsEmpty)) return Value::mset({});
  std::vector<Value> args;
  for (const auto& a : t.args()) args.push_back(eval(a, env));
  if (t.isCons()) {
    std::vector<long> xs{args[0].elem};
    xs.insert(xs.end(), args[1].items.begin(), args[1].items.end());
    return Value::list(std::move(xs));
  }
  if (t.isApp(sym::kMsSingleton)) return Value::mset({args[0].elem});
  if (t.isApp(sym::kMsOfList)) return Value::mset(args[0].items);
  if (t.isApp(sym::kMsUnion)) {
    std::vector<long> xs = args[0].items;
    xs.insert(xs.end(), args[1].items.begin(), args[1].items.end());
    return Value::mset(std::move(xs));
  }
  return apply(t.name(), args);
}

bool Interpreter::holds(const Formula& f, const Env& env) {
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Not: return !holds(f.subs()[0], env);
    case FormulaKind::And:
      for (const auto& s : f.subs())
        if (!holds(s, env)) return false;
      return true;
    case FormulaKind::Or:
      for (const auto& s : f.subs())
        if (holds(s, env)) return true;
      return false;
    case FormulaKind::Implies: return !holds(f.subs()[0], env) || holds(f.subs()[1], env);
    case FormulaKind::Forall:
    case FormulaKind::Exists: throw EvalError("cannot evaluate quantified formula " + f.str());
    case FormulaKind::Atom: break;
  }
  std::vector<Value> args;
  for (const auto& a : f.args()) args.push_back(eval(a, env));
  switch (f.pred()) {
    case Pred::Sorted: return std::is_sorted(args[0].items.begin(), args[0].items.end());
    case Pred::EqT:
    case Pred::EqMS: return args[0] == args[1];
    case Pred::Neq: return args[0] != args[1];
    case Pred::Leq:
    case Pred::Lt: {
      bool strict = f.pred() == Pred::Lt;
      for (long x : itemsOf(args[0]))
        for (long y : itemsOf(args[1]))
          if (strict ? !(x < y) : !(x <= y)) return false;
      return true;
    }
  }
  return false;
}

std::vector<long> oracleSort(std::vector<long> xs) {
  std::sort(xs.begin(), xs.end());
  return xs;
}

std::vector<std::vector<long>> exhaustiveLists(int maxLen, int alphabet) {
  std::vector<std::vector<long>> out{{}};
  std::size_t from = 0;
  for (int len = 1; len <= maxLen; ++len) {
    std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (long v = 1; v <= alphabet; ++v) {
        auto xs = out[i];
        xs.push_back(v);
        out.push_back(std::move(xs));
      }
    from = to;
  }
  return out;
}

std::vector<std::vector<long>> randomLists(std::size_t count, unsigned seed, int maxLen, int maxValue) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> len(0, maxLen);
  std::uniform_int_distribution<long> val(1, maxValue);
  std::vector<std::vector<long>> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<long> xs(static_cast<std::size_t>(len(rng)));
    for (auto& x : xs) x = val(rng);
    out.push_back(std::move(xs));
  }
  return out;
}

std::vector<std::vector<Value>> specDomain(const FunctionSpec& spec, const std::vector<std::vector<long>>& lists,
                                           int alphabet) {
  std::vector<std::vector<Value>> out{{}};
  for (const auto& in : spec.inputs) {
    std::vector<Value> choices;
    if (in.sort() == Sort::Element) {
      for (long v = 1; v <= alphabet; ++v) choices.push_back(Value::element(v));
    } else {
      for (const auto& xs : lists) choices.push_back(Value::list(xs));
    }
    std::vector<std::vector<Value>> next;
    for (const auto& prefix : out)
      for (const auto& c : choices) {
        auto t = prefix;
        t.push_back(c);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<Value>> randomDomain(const FunctionSpec& spec, std::size_t count, unsigned seed, int maxLen,
                                             int maxValue) {
  std::size_t lists = 0;
  for (const auto& in : spec.inputs) lists += in.sort() != Sort::Element;
  auto pool = randomLists(count * lists, seed, maxLen, maxValue);
  std::mt19937 rng(seed + 1);
  std::uniform_int_distribution<long> val(1, maxValue);
  std::vector<std::vector<Value>> out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Value> tuple;
    for (const auto& in : spec.inputs)
      tuple.push_back(in.sort() == Sort::Element ? Value::element(val(rng)) : Value::list(pool[next++]));
    out.push_back(std::move(tuple));
  }
  return out;
}

std::string Counterexample::str() const {
  std::string out = "inputs (";
  for (std::size_t i = 0; i < inputs.size(); ++i) out += (i ? ", " : "") + inputs[i].str();
  return out + "): " + detail;
}

std::optional<Counterexample> checkSpec(const FunctionSpec& spec, Interpreter& interp,
                                        const std::vector<std::vector<Value>>& domain, std::size_t* checked) {
  for (const auto& tuple : domain) {
    Env env;
    for (std::size_t i = 0; i < spec.inputs.size(); ++i) env[spec.inputs[i]] = tuple[i];
    if (!interp.holds(spec.precondition, env)) continue;
    if (checked) ++*checked;
    std::string shown;
    try {
      for (std::size_t i = 0; i < spec.outputs.size(); ++i) {
        Value v = interp.call(spec.functions[i], tuple);
        env[spec.outputs[i]] = v;
        shown += (shown.empty() ? "" : ", ") + spec.functions[i] + " = " + v.str();
      }
    } catch (const EvalError& e) {
      return Counterexample{tuple, e.what()};
    }
    if (!interp.holds(spec.postcondition, env)) return Counterexample{tuple, "postcondition fails with " + shown};
  }
  return std::nullopt;
}

}  // namespace sortsynth
