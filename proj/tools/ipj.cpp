// Command-line frontend. Exit status: 0 pass/valid/true, 1 logical failure,
// 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ipj/error.hpp"
#include "ipj/generator.hpp"
#include "ipj/ispec.hpp"
#include "ipj/model_io.hpp"
#include "ipj/proofcheck.hpp"
#include "ipj/protosim.hpp"
#include "ipj/semantics.hpp"
#include "ipj/syntax.hpp"

namespace {

using nlohmann::json;
using namespace ipj;

struct Outcome {
  int code = 0;
  std::string text;
  json data = json::object();
};

// An input problem tagged with the file it came from.
struct InputError {
  std::string where;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError{path, "cannot open file"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename F>
auto from_file(const std::string& path, F&& parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw InputError{path, e.what()};
  }
}

InteractionSpec load_spec_file(const std::string& path) {
  if (path.empty()) return {};
  return from_file(path, [](const std::string& t) { return load_spec(t); });
}

ModelFile load_model_file(const std::string& path) {
  return from_file(path, [](const std::string& t) { return load_model(t); });
}

Rational parse_rational_arg(const std::string& s) {
  try {
    Rational r = parse_rational(s);
    r.canonicalize();
    return r;
  } catch (const Error& e) {
    throw InputError{"argument '" + s + "'", e.what()};
  }
}

void add_report(Outcome& o, const Report& r, const std::string& key) {
  for (const auto& l : r.lines) o.text += l + "\n";
  o.data[key] = {{"pass", r.pass}, {"lines", r.lines}, {"counterexample", r.counterexample}};
  if (!r.pass) o.code = 1;
}

// parse

struct ParseArgs {
  std::string input;
  std::string file;
  bool term = false;
};

Outcome run_parse(const ParseArgs& a) {
  std::string text = a.file.empty() ? a.input : read_file(a.file);
  Outcome o;
  try {
    std::string printed = a.term ? to_string(parse_term(text)) : to_string(parse_formula(text));
    o.text = printed + "\n";
    o.data["printed"] = printed;
  } catch (const Error& e) {
    throw InputError{a.file.empty() ? "input" : a.file, e.what()};
  }
  return o;
}

// check-proof

struct ProofArgs {
  std::string proof;
  std::string spec;
  bool zk = false;
};

Outcome run_check_proof(const ProofArgs& a) {
  InteractionSpec spec = load_spec_file(a.spec);
  std::string base = std::filesystem::path(a.proof).parent_path().string();
  Derivation d = from_file(a.proof, [&](const std::string& t) {
    return parse_derivation(t, spec, a.zk, file_loader(base.empty() ? "." : base));
  });
  ProofReport r;
  try {
    r = check_derivation(d);
  } catch (const Error& e) {
    throw InputError{a.proof, e.what()};
  }
  Outcome o;
  for (const auto& l : r.log) o.text += l + "\n";
  o.data["log"] = r.log;
  o.data["valid"] = r.valid;
  if (r.valid) {
    o.text += "VALID\n";
  } else {
    o.code = 1;
    std::string at = r.failed_index ? " at line " + std::to_string(*r.failed_index) : "";
    o.text += "INVALID" + at + ": " + r.reason + "\n";
    o.data["reason"] = r.reason;
    if (r.failed_index) o.data["failed_index"] = *r.failed_index;
    o.data["undecidable"] = r.undecidable;
  }
  return o;
}

// check-model

struct ModelArgs {
  std::string model;
  std::string spec;
  bool zk = false;
  std::uint64_t kmax = 3;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::size_t instances = 1000;
};

Outcome run_check_model(const ModelArgs& a) {
  Outcome o;
  if (a.random > 0) {
    GeneratorOptions g;
    g.kmax = a.kmax;
    SoundnessReport r = soundness_harness(a.seed, a.random, a.instances, g);
    o.text = "models " + std::to_string(r.models) + "\ninstances " + std::to_string(r.instances) + "\nviolations " +
             std::to_string(r.failed) + "\n";
    for (const auto& f : r.failures) o.text += "FAIL " + f + "\n";
    o.data["models"] = r.models;
    o.data["instances"] = r.instances;
    o.data["violations"] = r.failed;
    o.data["failures"] = r.failures;
    o.code = r.pass() ? 0 : 1;
    o.text += r.pass() ? "PASS\n" : "FAIL\n";
    o.data["pass"] = r.pass();
    return o;
  }
  if (a.model.empty()) throw InputError{"check-model", "--model or --random is required"};
  ModelFile mf = load_model_file(a.model);
  InteractionSpec spec = load_spec_file(a.spec);
  const Quasimodel& q = mf.quasi;
  o.text += "relations reflexive and transitive\n";
  if (mf.has_measure) o.text += "measure sums to 1\n";

  add_report(o, check_evidence_persistence(q.model), "persistence");
  Universe u{mf.terms, {}};
  for (const auto& e : q.model.evidence()) u.formulas.insert(e.formula);
  add_report(o, check_evidence_closure(q.model, u, EvidenceMode::Closure), "closure");
  if (mf.has_measure && !spec.empty()) {
    ConditionOptions c;
    c.zk = a.zk;
    c.kmax = a.kmax;
    try {
      add_report(o, check_model_conditions(q, spec, Universe{mf.terms, {}}, c), "conditions");
    } catch (const Error& e) {
      throw InputError{a.model, e.what()};
    }
    std::set<EFormula> fs;
    for (const auto& e : spec.entries()) fs.insert(EFormula::box(Agent::Prover, e.formula));
    add_report(o, check_event_monotonicity(q, Universe{mf.terms, {}}, fs), "monotonicity");
  }
  o.text += o.code == 0 ? "PASS\n" : "FAIL\n";
  o.data["pass"] = o.code == 0;
  return o;
}

// eval

struct EvalArgs {
  std::string model;
  std::string formula;
};

Outcome run_eval(const EvalArgs& a) {
  ModelFile mf = load_model_file(a.model);
  Formula f = [&] {
    try {
      return parse_formula(a.formula);
    } catch (const Error& e) {
      throw InputError{"formula", e.what()};
    }
  }();
  bool v = false;
  try {
    if (mf.has_measure) {
      v = eval_formula(mf.quasi, f);
    } else if (f.is_epistemic()) {
      v = eval_epistemic(mf.quasi.model, 0, f.as_epistemic());
    } else {
      throw InputError{a.model, "probability formulas need U, mu and w0"};
    }
  } catch (const Error& e) {
    throw InputError{a.model, e.what()};
  }
  Outcome o;
  o.code = v ? 0 : 1;
  o.text = v ? "true\n" : "false\n";
  o.data["value"] = v;
  if (f.kind() == Formula::Kind::ProbGeq || f.kind() == Formula::Kind::ProbApprox) {
    QEps mu = measure_of(mf.quasi, f.body());
    o.text += "measure " + to_string(mu) + "\n";
    o.data["measure"] = to_string(mu);
  }
  return o;
}

// simulate

struct SimArgs {
  unsigned rounds = 2;
  std::string error = "1/3";
  bool dishonest = false;
  bool claim_everywhere = false;
  bool witness = false;
  std::string spec;
  std::string alpha = "a";
  std::string term = "t";
  std::uint64_t k = 1;
  std::uint64_t nmax = 10;
  bool zk = false;
  std::string emit;
};

void emit_model(const std::string& path, const Quasimodel& q, const std::set<Term>& terms) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InputError{path, "cannot write file"};
  out << write_model(q, terms);
}

Outcome run_simulate(const SimArgs& a) {
  Outcome o;
  try {
    if (!a.witness) {
      RoundConfig c;
      c.rounds = a.rounds;
      c.error = parse_rational_arg(a.error);
      c.honest = !a.dishonest;
      c.claim_everywhere = a.claim_everywhere;
      RoundModel m = build_round_model(c);
      IppReport r = verify_ipp_bound(m);
      emit_model(a.emit, m.quasi, {});
      o.data["measure"] = to_string(r.measure);
      o.data["bound"] = to_string(r.bound);
      add_report(o, r.report, "ipp");
    } else {
      InteractionSpec spec = load_spec_file(a.spec);
      WitnessConfig w;
      w.alpha = parse_eformula(a.alpha);
      w.t = parse_term(a.term);
      w.k = a.k;
      w.nmax = a.nmax;
      w.honest = !a.dishonest;
      w.zk = a.zk;
      Quasimodel q = build_interaction_witness(spec, w);
      emit_model(a.emit, q, {w.t});
      ConditionOptions c;
      c.zk = a.zk;
      c.kmin = a.k;
      c.kmax = a.k;
      add_report(o, check_model_conditions(q, spec, Universe{{w.t}, {}}, c), "conditions");
      EFormula known = EFormula::just(Term::proto(Complexity::omega(), w.t), Agent::Verifier,
                                      EFormula::box(Agent::Prover, w.alpha));
      QEps mu = measure_of(q, known);
      o.text += "stabilized measure " + to_string(mu) + "\n";
      o.data["stabilized"] = to_string(mu);
    }
  } catch (const Error& e) {
    throw InputError{"simulate", e.what()};
  }
  o.text += o.code == 0 ? "PASS\n" : "FAIL\n";
  o.data["pass"] = o.code == 0;
  return o;
}

// arith

struct ArithArgs {
  std::string op;
  std::string a;
  std::string b;
};

Outcome run_arith(const ArithArgs& args) {
  auto value = [](const std::string& s) {
    try {
      return parse_qeps(s);
    } catch (const Error& e) {
      throw InputError{"operand '" + s + "'", e.what()};
    }
  };
  QEps a = value(args.a);
  auto second = [&] {
    if (args.b.empty()) throw InputError{args.op, "needs two operands"};
    return value(args.b);
  };
  Outcome o;
  std::string result;
  try {
    if (args.op == "add") result = to_string(a + second());
    else if (args.op == "sub") result = to_string(a - second());
    else if (args.op == "mul") result = to_string(a * second());
    else if (args.op == "div") result = to_string(a / second());
    else if (args.op == "std") result = to_string(std_part(a));
    else if (args.op == "cmp") {
      Order c = compare(a, second());
      result = c == Order::LT ? "<" : c == Order::EQ ? "=" : ">";
    } else if (args.op == "approx") {
      bool v = approx_eq(a, parse_rational_arg(args.b.empty() ? throw InputError{"approx", "needs a rational"} : args.b));
      result = v ? "true" : "false";
      o.code = v ? 0 : 1;
    } else {
      throw InputError{args.op, "unknown operation (add sub mul div cmp std approx)"};
    }
  } catch (const Error& e) {
    throw InputError{args.op, e.what()};
  }
  o.text = result + "\n";
  o.data["result"] = result;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel for probabilistic interactive-proof justification logic"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit a JSON report");

  ParseArgs pa;
  auto* parse = app.add_subcommand("parse", "Parse and print a formula or term");
  parse->add_option("input", pa.input, "Formula text");
  parse->add_option("--file", pa.file, "Read the text from a file");
  parse->add_flag("--term", pa.term, "Parse a justification term");

  ProofArgs pr;
  auto* proof = app.add_subcommand("check-proof", "Check a derivation file");
  proof->add_option("proof", pr.proof, "Derivation file")->required();
  proof->add_option("--spec", pr.spec, "Interaction specification");
  proof->add_flag("--zk", pr.zk, "Admit the zero-knowledge axioms");

  ModelArgs ma;
  auto* model = app.add_subcommand("check-model", "Check a model file, or run the soundness harness");
  model->add_option("--model", ma.model, "Model file");
  model->add_option("--spec", ma.spec, "Interaction specification");
  model->add_flag("--zk", ma.zk, "Also check the zero-knowledge condition");
  model->add_option("--kmax", ma.kmax, "Largest k checked")->capture_default_str();
  model->add_option("--random", ma.random, "Generate this many random models instead");
  model->add_option("--seed", ma.seed, "Seed for --random")->capture_default_str();
  model->add_option("--instances", ma.instances, "Axiom instances per random model")->capture_default_str();

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a formula in a model");
  eval->add_option("--model", ea.model, "Model file")->required();
  eval->add_option("formula", ea.formula, "Formula")->required();

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "Round models and interaction witnesses");
  sim->add_option("--rounds", sa.rounds, "Number of rounds")->capture_default_str();
  sim->add_option("--error", sa.error, "Per-round error")->capture_default_str();
  sim->add_flag("--dishonest", sa.dishonest, "Dishonest prover");
  sim->add_flag("--claim-everywhere", sa.claim_everywhere, "Claim true at every outcome");
  sim->add_flag("--witness", sa.witness, "Build an interaction witness instead of a round model");
  sim->add_option("--spec", sa.spec, "Interaction specification (witness)");
  sim->add_option("--alpha", sa.alpha, "Claimed atom (witness)")->capture_default_str();
  sim->add_option("--term", sa.term, "Prover evidence term (witness)")->capture_default_str();
  sim->add_option("--k", sa.k, "Security parameter k (witness)")->capture_default_str();
  sim->add_option("--nmax", sa.nmax, "Last exact complexity (witness)")->capture_default_str();
  sim->add_flag("--zk", sa.zk, "Zero-knowledge witness");
  sim->add_option("--emit", sa.emit, "Write the model to this file");

  ArithArgs aa;
  auto* arith = app.add_subcommand("arith", "Exact arithmetic on Q[e] literals");
  arith->add_option("op", aa.op, "add sub mul div cmp std approx")->required();
  arith->add_option("a", aa.a, "First operand")->required();
  arith->add_option("b", aa.b, "Second operand");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Outcome o;
  try {
    if (*parse) o = run_parse(pa);
    else if (*proof) o = run_check_proof(pr);
    else if (*model) o = run_check_model(ma);
    else if (*eval) o = run_eval(ea);
    else if (*sim) o = run_simulate(sa);
    else if (*arith) o = run_arith(aa);
  } catch (const InputError& e) {
    if (as_json) {
      std::cout << json{{"error", e.message}, {"where", e.where}}.dump(2) << "\n";
    } else {
      std::cerr << e.where << ": " << e.message << "\n";
    }
    return 2;
  }
  if (as_json) {
    o.data["exit"] = o.code;
    std::cout << o.data.dump(2) << "\n";
  } else {
    std::cout << o.text;
  }
  return o.code;
}
