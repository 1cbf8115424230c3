// qlog: propositional quantum logic on the subspace lattices of C^n.
//
// Subcommands: eval, construct, dbar, separate, verify. Runs are
// deterministic given the flags, and --json output is byte-stable, so any
// reported result can be replayed from its recorded seed and budgets.
//
// Exit codes: 0 ok, 2 usage or parse error, 3 semantic error (unbound
// variable, bad environment, ambient mismatch), 4 verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlog/qlog.hpp"

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  long trials = 10000;
  double rank_threshold = 1e-9;
  double guard_band = 1e-6;
  bool json = false;
  std::string out;

  qlog::Tolerance tol() const { return qlog::Tolerance{rank_threshold, guard_band}; }
};

struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream ifs(path, std::ios::binary);
  if (!ifs) throw SemanticError("cannot open file: " + path);
  std::ostringstream os;
  os << ifs.rdbuf();
  return os.str();
}

// Formula arguments are inline text or @path.
qlog::Formula load_formula(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return qlog::parse(read_file(arg.substr(1)));
  return qlog::parse(arg);
}

qlog::Environment load_environment(const std::string& path, const qlog::Tolerance& tol) {
  try {
    return qlog::environment_from_json(qlog::Json::parse(read_file(path)), tol);
  } catch (const qlog::Json::exception& e) {
    throw SemanticError("environment file " + path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw SemanticError("environment file " + path + ": " + e.what());
  }
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (!g.out.empty()) {
    std::ofstream ofs(g.out, std::ios::binary | std::ios::trunc);
    if (!ofs) throw SemanticError("cannot write file: " + g.out);
    ofs << text;
    if (text.empty() || text.back() != '\n') ofs << '\n';
  } else {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  }
}

void emit_json(const GlobalOpts& g, const qlog::Json& j) { emit(g, j.dump(2)); }

std::string format_subspace_text(const qlog::Subspace& s) {
  std::ostringstream os;
  os << "dim = " << s.dim() << " (ambient C^" << s.ambient() << ")\n";
  for (long i = 0; i < s.dim(); ++i) {
    os << "  basis[" << i << "] =";
    for (long j = 0; j < s.ambient(); ++j) {
      qlog::Complex c = s.basis()(j, i);
      os << " (" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    }
    os << "\n";
  }
  return os.str();
}

int cmd_eval(const GlobalOpts& g, const std::string& formula_arg,
             const std::string& env_path) {
  qlog::Formula f = load_formula(formula_arg);
  qlog::Environment env = load_environment(env_path, g.tol());
  qlog::Subspace s = qlog::evaluate(f, env, g.tol());
  if (g.json) {
    emit_json(g, qlog::Json{{"formula", qlog::print(f)},
                            {"ambient", s.ambient()},
                            {"dim", s.dim()},
                            {"subspace", qlog::subspace_to_json(s)}});
  } else {
    emit(g, format_subspace_text(s));
  }
  return 0;
}

int cmd_construct(const GlobalOpts& g, const std::string& kind,
                  const std::vector<std::string>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw CLI::ValidationError("construct " + kind + " takes " + std::to_string(k) +
                                 " parameter(s)");
  };
  auto as_long = [](const std::string& s) {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
    return v;
  };

  if (kind == "P" || kind == "alpha") {
    need(2);
    qlog::Formula f =
        kind == "P" ? qlog::mk_P(params[0], params[1]) : qlog::mk_alpha(params[0], params[1]);
    if (g.json)
      emit_json(g, qlog::Json{{"kind", kind}, {"formula", qlog::print(f)}});
    else
      emit(g, qlog::print(f));
    return 0;
  }
  if (kind == "gamma") {
    need(1);
    qlog::Gamma gm = qlog::mk_gamma(as_long(params[0]));
    if (g.json)
      emit_json(g, qlog::Json{{"kind", "gamma"},
                              {"l", as_long(params[0])},
                              {"self_restrictions", gm.depth},
                              {"profile", "floor(k / 2^" + std::to_string(gm.depth + 1) + ")"},
                              {"formula", qlog::print(gm.formula)}});
    else
      emit(g, qlog::print(gm.formula));
    return 0;
  }
  if (kind == "beta") {
    need(1);
    long l = as_long(params[0]);
    qlog::Beta b = qlog::mk_beta(l);
    if (g.json)
      emit_json(g, qlog::Json{{"kind", "beta"},
                              {"l", l},
                              {"profile", qlog::Json{{std::to_string(2 * l), l},
                                                     {std::to_string(2 * l + 1), l + 1}}},
                              {"formula", qlog::print(b.formula)}});
    else
      emit(g, qlog::print(b.formula));
    return 0;
  }
  if (kind == "separator") {
    need(2);
    qlog::Certificate cert = qlog::mk_separator(as_long(params[0]), as_long(params[1]));
    if (g.json) {
      emit_json(g, qlog::Json{{"kind", "separator"},
                              {"formula", qlog::print(cert.formula)},
                              {"certificate", qlog::certificate_to_json(cert)}});
    } else {
      std::ostringstream os;
      os << qlog::print(cert.formula) << "\n"
         << qlog::certificate_to_json(cert).dump(2) << "\n";
      emit(g, os.str());
    }
    return 0;
  }
  throw CLI::ValidationError("unknown construct kind: " + kind);
}

int cmd_dbar(const GlobalOpts& g, const std::string& formula_arg, long n,
             const std::string& dims) {
  qlog::Formula f = load_formula(formula_arg);
  qlog::DimsStrategy strategy = qlog::DimsStrategy::automatic;
  if (dims == "exhaustive") strategy = qlog::DimsStrategy::exhaustive;
  if (dims == "uniform") strategy = qlog::DimsStrategy::uniform;
  qlog::EstimateResult est = qlog::estimate_dbar(f, n, g.trials, strategy, g.seed, g.tol());
  if (g.json) {
    qlog::Json j = qlog::estimate_to_json(est);
    j["formula"] = qlog::print(f);
    j["n"] = n;
    emit_json(g, j);
  } else {
    std::ostringstream os;
    os << "max dim found = " << est.max_dim << " at C^" << n << " (trials " << est.trials
       << ", rejected " << est.rejected << ", dims "
       << (est.exhaustive_dims ? "exhaustive" : "uniform") << ", seed " << est.seed
       << ")\n";
    if (est.best) os << "witness trace: " << est.best->trace << "\n";
    emit(g, os.str());
  }
  return 0;
}

int cmd_separate(const GlobalOpts& g, long m, long n) {
  qlog::SeparationReport rep = qlog::separate(m, n, g.trials, g.seed, g.tol());
  if (g.json) {
    emit_json(g, qlog::separation_to_json(rep));
  } else {
    std::ostringstream os;
    os << "QL(C^" << n << ") != QL(C^" << m << ")\n"
       << "separator: " << qlog::print(rep.certificate.formula) << "\n"
       << "stages: " << rep.certificate.stages.size() << ", certified dbar(" << m
       << ") = 0, dbar(" << n << ") = " << rep.certificate.final_b << "\n"
       << "witness at C^" << n << ": dim " << rep.witness.achieved << " ["
       << rep.witness.trace << "]\n"
       << "zero test at C^" << m << ": max dim " << rep.zero_test.max_dim_seen
       << " over " << rep.zero_test.trials << " trials (rejected "
       << rep.zero_test.rejected << ", seed " << rep.zero_test.seed << ")\n";
    emit(g, os.str());
  }
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
  qlog::RunConfig cfg{g.seed, g.trials, g.tol()};
  std::vector<std::pair<std::string, qlog::CheckList (*)(const qlog::RunConfig&)>> table =
      {{"ortholattice", &qlog::verify::ortholattice},
       {"p-lemma", &qlog::verify::p_lemma},
       {"alpha-lemma", &qlog::verify::alpha_lemma},
       {"restriction-lemma", &qlog::verify::restriction_lemma},
       {"beta-lemma", &qlog::verify::beta_lemma}};

  qlog::CheckList checks;
  bool found = false;
  for (const auto& [name, fn] : table) {
    if (suite == name || suite == "all") {
      found = true;
      qlog::CheckList part = fn(cfg);
      checks.insert(checks.end(), part.begin(), part.end());
    }
  }
  if (!found) throw CLI::ValidationError("unknown suite: " + suite);

  bool ok = qlog::all_pass(checks);
  if (g.json) {
    qlog::Json rows = qlog::Json::array();
    for (const auto& c : checks)
      rows.push_back(qlog::Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    emit_json(g, qlog::Json{{"suite", suite},
                            {"seed", g.seed},
                            {"trials", g.trials},
                            {"checks", rows},
                            {"all_pass", ok}});
  } else {
    std::ostringstream os;
    for (const auto& c : checks)
      os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " - " << c.detail << "\n";
    os << (ok ? "all checks passed" : "some checks FAILED") << "\n";
    emit(g, os.str());
  }
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"propositional quantum logic on subspace lattices of C^n"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed (default 0)");
  app.add_option("--trials", g.trials, "randomized trial budget (default 10000)")
      ->check(CLI::PositiveNumber);
  app.add_option("--rank-threshold", g.rank_threshold,
                 "relative singular-value cutoff (default 1e-9)");
  app.add_option("--guard-band", g.guard_band,
                 "ambiguity band around the cutoff (default 1e-6)");
  app.add_flag("--json", g.json, "emit JSON instead of text");
  app.add_option("--out", g.out, "write output to a file instead of stdout");

  std::string formula_arg, env_path, kind, dims = "auto", suite;
  std::vector<std::string> params;
  long n = 0, m = 0;

  CLI::App* eval = app.add_subcommand("eval", "evaluate a formula on an environment");
  eval->add_option("formula", formula_arg, "formula text or @file")->required();
  eval->add_option("--env", env_path, "environment JSON file")->required();

  CLI::App* construct =
      app.add_subcommand("construct", "print a named formula (P, alpha, gamma, beta, separator)");
  construct->add_option("kind", kind, "P | alpha | gamma | beta | separator")->required();
  construct->add_option("params", params, "kind parameters");

  CLI::App* dbar = app.add_subcommand("dbar", "randomized lower-bound search for the top dimension");
  dbar->add_option("formula", formula_arg, "formula text or @file")->required();
  dbar->add_option("n", n, "ambient dimension")->required()->check(CLI::PositiveNumber);
  dbar->add_option("--dims", dims, "dimension tuple strategy: auto | exhaustive | uniform")
      ->check(CLI::IsMember({"auto", "exhaustive", "uniform"}));

  CLI::App* separate = app.add_subcommand("separate", "certify QL(C^n) != QL(C^m) for m < n");
  separate->add_option("m", m, "smaller dimension")->required()->check(CLI::PositiveNumber);
  separate->add_option("n", n, "larger dimension")->required()->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite,
                     "ortholattice | restriction-lemma | p-lemma | alpha-lemma | beta-lemma | all")
      ->required();

  // global flags may appear after the subcommand
  for (CLI::App* sub : {eval, construct, dbar, separate, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(g, formula_arg, env_path);
    if (construct->parsed()) return cmd_construct(g, kind, params);
    if (dbar->parsed()) return cmd_dbar(g, formula_arg, n, dims);
    if (separate->parsed()) return cmd_separate(g, m, n);
    if (verify->parsed()) return cmd_verify(g, suite);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qlog::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const qlog::UnboundVariableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qlog::AmbientMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qlog::WitnessSearchError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 4;
  } catch (const qlog::ContradictionError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 4;
  } catch (const SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
