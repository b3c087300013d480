#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sortsynth/extractor.hpp"
#include "sortsynth/interpreter.hpp"
#include "sortsynth/prover.hpp"

using namespace sortsynth;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kProofFailure = 2, kCounterexample = 3, kInputError = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string theoryPath;
  std::string cover = "definition";
  std::string alt = "skolem";
  int maxDepth = Limits{}.maxDepth;
  int maxCascade = Limits{}.maxCascadeDepth;
  bool all = false;
  unsigned seed = 0;
  std::string outDir = "out";
  std::string traceFormat = "text";
  int variant = 1;
  std::string target;
  std::vector<std::string> values;
};

std::string readFile(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string());
  out << text;
}

KnowledgeBase theory(const Config& cfg) {
  if (cfg.theoryPath.empty()) return baseTheory();
  try {
    return loadTheory(readFile(cfg.theoryPath));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(cfg.theoryPath + ": " + e.what());
  }
}

const FunctionSpec& specOf(const KnowledgeBase& kb, const std::string& name) {
  const FunctionSpec* spec = kb.findSpec(name);
  if (!spec) throw InputError("no spec for " + name + " in the theory");
  return *spec;
}

ProveOutcome synthesize(const Config& cfg, const KnowledgeBase& kb) {
  ProveOptions o;
  o.limits.maxDepth = cfg.maxDepth;
  o.limits.maxCascadeDepth = cfg.maxCascade;
  o.alternative = cfg.alt == "meta" ? Alternative::Meta : cfg.alt == "all" ? Alternative::All : Alternative::Skolem;
  o.coverSet = cfg.cover;
  o.all = cfg.all;
  return prove(specOf(kb, cfg.target), kb, o);
}

std::string renderTrace(const std::vector<TraceNode>& trace, const std::string& format) {
  return format == "tree" ? traceJson(trace) + "\n" : traceText(trace);
}

int reportFailure(const ProveOutcome& out, const Config& cfg) {
  std::cerr << "proof failed: " << out.failure->reason << "\n";
  std::cerr << renderTrace(out.failure->trace, cfg.traceFormat);
  return kProofFailure;
}

std::string fileStem(const std::string& name) {
  std::string s = name;
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

// Removes artifacts of an earlier synth run; other files are left alone.
void clearOutDir(const fs::path& dir) {
  if (!fs::exists(dir)) return;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::string name = e.path().filename().string();
    std::string ext = e.path().extension().string();
    if (e.is_directory() && name.rfind("variant-", 0) == 0) {
      fs::remove_all(e.path());
    } else if (e.is_regular_file() &&
               (ext == ".alg" || name.find(".trace.") != std::string::npos || name == "rejected.txt")) {
      fs::remove(e.path());
    }
  }
}

int cmdSynth(const Config& cfg) {
  KnowledgeBase kb = theory(cfg);
  ProveOutcome out = synthesize(cfg, kb);
  if (out.results.empty()) return reportFailure(out, cfg);
  fs::path root(cfg.outDir);
  clearOutDir(root);
  fs::create_directories(root);
  for (std::size_t k = 0; k < out.results.size(); ++k) {
    const ProofResult& r = out.results[k];
    fs::path dir = out.results.size() == 1 ? root : root / ("variant-" + std::to_string(k + 1));
    fs::create_directories(dir);
    std::cout << "# " << dir.string() << " (" << r.alternative << ")\n";
    for (const auto& a : allAlgorithms(r)) {
      writeFile(dir / (fileStem(a.name) + ".alg"), a.str());
      std::cout << a.str() << "\n";
    }
    std::string ext = cfg.traceFormat == "tree" ? ".trace.json" : ".trace.txt";
    writeFile(dir / (fileStem(r.spec.name()) + ext), renderTrace(r.trace, cfg.traceFormat));
  }
  if (!out.rejectedInductions.empty()) {
    std::string text;
    for (const auto& s : out.rejectedInductions) text += s + "\n";
    writeFile(root / "rejected.txt", text);
  }
  return kOk;
}

int cmdTrace(const Config& cfg) {
  KnowledgeBase kb = theory(cfg);
  ProveOutcome out = synthesize(cfg, kb);
  if (out.results.empty()) return reportFailure(out, cfg);
  std::vector<TraceNode> all;
  for (const auto& r : out.results) all.insert(all.end(), r.trace.begin(), r.trace.end());
  std::cout << renderTrace(all, cfg.traceFormat);
  return kOk;
}

// Algorithm directories written by synth: the variant subdirectories, or the
// output directory itself when there is a single result.
std::vector<fs::path> variantDirs(const Config& cfg) {
  fs::path root(cfg.outDir);
  if (!fs::is_directory(root)) throw InputError("no algorithms in " + root.string() + "; run synth first");
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && e.path().filename().string().rfind("variant-", 0) == 0) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end(), [](const fs::path& a, const fs::path& b) {
    return std::stoi(a.filename().string().substr(8)) < std::stoi(b.filename().string().substr(8));
  });
  if (dirs.empty()) dirs.push_back(root);
  return dirs;
}

Interpreter loadDir(const fs::path& dir, const KnowledgeBase& kb) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".alg") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Interpreter interp;
  for (const auto& f : files) {
    try {
      interp.add(parseAlgorithm(readFile(f), kb.signature()));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(f.string() + ": " + e.what());
    }
  }
  return interp;
}

Value parseValue(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_number_integer()) return Value::element(j.get<long>());
  if (j.is_array() && std::all_of(j.begin(), j.end(), [](const auto& x) { return x.is_number_integer(); }))
    return Value::list(j.get<std::vector<long>>());
  throw InputError("not a value literal: " + text);
}

int cmdRun(const Config& cfg) {
  KnowledgeBase kb = theory(cfg);
  auto dirs = variantDirs(cfg);
  if (cfg.variant < 1 || static_cast<std::size_t>(cfg.variant) > dirs.size())
    throw InputError("no variant " + std::to_string(cfg.variant) + " in " + cfg.outDir);
  Interpreter interp = loadDir(dirs[cfg.variant - 1], kb);
  if (!interp.knows(cfg.target)) throw InputError("no algorithm for " + cfg.target + " in " + dirs[cfg.variant - 1].string());
  std::vector<Value> args;
  for (const auto& v : cfg.values) args.push_back(parseValue(v));
  if (const FunctionSpec* spec = kb.findSpec(cfg.target); spec && spec->inputs.size() != args.size())
    throw InputError(cfg.target + " takes " + std::to_string(spec->inputs.size()) + " argument(s)");
  try {
    std::cout << interp.call(cfg.target, args).str() << "\n";
  } catch (const EvalError& e) {
    std::cerr << "evaluation failed: " << e.what() << "\n";
    return kCounterexample;
  }
  return kOk;
}

int cmdVerify(const Config& cfg) {
  KnowledgeBase kb = theory(cfg);
  const FunctionSpec& spec = specOf(kb, cfg.target);
  auto exhaustive = specDomain(spec, exhaustiveLists());
  auto random = randomDomain(spec, 200, cfg.seed);
  auto dirs = variantDirs(cfg);
  bool any = false, failed = false;
  for (const auto& dir : dirs) {
    Interpreter interp = loadDir(dir, kb);
    if (std::any_of(spec.functions.begin(), spec.functions.end(), [&](const std::string& f) { return !interp.knows(f); }))
      continue;
    any = true;
    std::string prefix = dirs.size() > 1 ? dir.filename().string() + ": " : "";
    std::size_t nEx = 0, nRand = 0;
    auto c = checkSpec(spec, interp, exhaustive, &nEx);
    if (!c) c = checkSpec(spec, interp, random, &nRand);
    if (c) {
      failed = true;
      std::cout << prefix << "FAIL " << c->str() << "\n";
    } else {
      std::cout << prefix << "pass (" << nEx << " exhaustive + " << nRand << " random)\n";
    }
  }
  if (!any) throw InputError("no algorithm for " + spec.name() + " in " + cfg.outDir + "; run synth first");
  return failed ? kCounterexample : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesizes sorting algorithms from their specifications by constructive proof."};
  app.require_subcommand(1);
  Config cfg;

  auto proverFlags = [&](CLI::App* c) {
    c->add_option("--cover", cfg.cover, "Cover set for induction on the main input")
        ->check(CLI::IsMember({"definition", "dac"}));
    c->add_option("--alt", cfg.alt, "Proof alternative")->check(CLI::IsMember({"meta", "skolem", "all"}));
    c->add_option("--max-depth", cfg.maxDepth, "Proof depth limit")->check(CLI::PositiveNumber);
    c->add_option("--max-cascade", cfg.maxCascade, "Nesting limit for cascaded sub-proofs")->check(CLI::NonNegativeNumber);
    c->add_flag("--all", cfg.all, "Emit every distinct successful extraction");
    c->add_option("--trace-format", cfg.traceFormat, "Trace rendering")->check(CLI::IsMember({"text", "tree"}));
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--theory", cfg.theoryPath, "Theory file (default: built-in sorting theory)");
    c->add_option("--out-dir", cfg.outDir, "Directory for algorithm files");
    c->add_option("function", cfg.target, "Target function")->required();
  };

  CLI::App* synth = app.add_subcommand("synth", "Prove the spec and write the extracted algorithms");
  common(synth);
  proverFlags(synth);
  CLI::App* trace = app.add_subcommand("trace", "Prove the spec and print the proof trace");
  common(trace);
  proverFlags(trace);
  CLI::App* run = app.add_subcommand("run", "Evaluate a synthesized function on literal arguments");
  common(run);
  // Literals are taken raw: CLI11 would split a bracketed list into values.
  run->allow_extras();
  run->footer("Arguments: lists like [2,1,3] or integers, one per function input.");
  run->add_option("--variant", cfg.variant, "Which --all variant to use")->check(CLI::PositiveNumber);
  CLI::App* verify = app.add_subcommand("verify", "Check synthesized functions against their spec");
  common(verify);
  verify->add_option("--seed", cfg.seed, "Seed for the random lists");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  cfg.values = run->remaining();
  try {
    if (*synth) return cmdSynth(cfg);
    if (*trace) return cmdTrace(cfg);
    if (*run) return cmdRun(cfg);
    return cmdVerify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
