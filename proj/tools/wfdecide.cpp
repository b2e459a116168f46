// wfdecide: decide wait-free solvability of colorless tasks, compute closure
// fixed points, and generate/verify round-reduction and FLP-style proofs.
//
// JSON results go to stdout (canonical form, byte-deterministic); timing and
// diagnostics go to stderr. Exit codes: 0 success, 2 invalid input,
// 3 resource limit.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wfd/json_io.hpp"

namespace {

using namespace wfd;

struct GlobalOpts {
  std::size_t max_vertices = 1'000'000;
  std::uint64_t max_nodes = 10'000'000;
  int jobs = 1;

  Limits limits() const {
    Limits l;
    l.max_vertices = max_vertices;
    l.max_search_nodes = max_nodes;
    return l;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::SchemaViolation, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, int> parse_builtin_params(const std::string& text,
                                                const std::string& ref) {
  std::map<std::string, int> params;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidArgument,
                  "bad builtin parameter '" + item + "' in '" + ref + "'");
    try {
      params[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument,
                  "bad builtin parameter value in '" + ref + "'");
    }
  }
  return params;
}

bool is_builtin(const std::string& ref) { return ref.rfind("builtin:", 0) == 0; }

CoveringCandidate builtin_cover(const std::map<std::string, int>& params,
                                const std::string& ref) {
  auto m = params.find("m");
  auto k = params.find("k");
  if (m == params.end() || k == params.end())
    throw Error(ErrorKind::InvalidArgument, "'" + ref + "' needs parameters m and k");
  return gen_cyclic_cover(m->second, k->second);
}

ColorlessTask load_task(const std::string& ref) {
  if (!is_builtin(ref)) return task_from_json_text(read_file(ref));
  std::string rest = ref.substr(8);
  auto colon = rest.find(':');
  std::string name = rest.substr(0, colon == std::string::npos ? rest.size() : colon);
  auto params = colon == std::string::npos
                    ? std::map<std::string, int>{}
                    : parse_builtin_params(rest.substr(colon + 1), ref);
  if (name == "cover") return covering_task(builtin_cover(params, ref));
  return builtin_task(TaskId{name, params});
}

CoveringCandidate load_candidate(const std::string& ref) {
  if (!is_builtin(ref)) return covering_from_json(parse_json_text(read_file(ref)));
  std::string rest = ref.substr(8);
  auto colon = rest.find(':');
  if (rest.substr(0, colon) != "cover")
    throw Error(ErrorKind::InvalidArgument, "'" + ref + "' is not a covering builtin");
  return builtin_cover(parse_builtin_params(rest.substr(colon + 1), ref), ref);
}

void emit(const nlohmann::json& j) { std::cout << dump_canonical(j); }

nlohmann::json added_report(const std::vector<ClosureStepReport>& chain) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : chain) {
    nlohmann::json added = nlohmann::json::array();
    for (const auto& a : step.added) {
      added.push_back(nlohmann::json{{"sigma", nlohmann::json(a.sigma.labels())},
                                     {"tau", nlohmann::json(a.tau.labels())},
                                     {"witness", assignment_to_json(a.witness)}});
    }
    steps.push_back(nlohmann::json{{"added", added}});
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_validate(const GlobalOpts&, const std::string& task_ref, const std::string& mode) {
  ColorlessTask t = load_task(task_ref);
  ValidationMode m = mode == "repair"    ? ValidationMode::repair
                     : mode == "lenient" ? ValidationMode::lenient
                                         : ValidationMode::strict;
  TaskValidation result = validate_task(t, m);
  nlohmann::json out{{"valid", true},
                     {"mode", mode},
                     {"carrier", result.carrier},
                     {"warnings", result.warnings}};
  if (m == ValidationMode::repair) out["task"] = task_to_json(result.task);
  emit(out);
  return 0;
}

int cmd_closure(const GlobalOpts& g, const std::string& task_ref, int steps,
                bool to_fixed_point, const std::string& report, bool lenient) {
  ColorlessTask t = load_task(task_ref);
  TaskValidation v =
      validate_task(t, lenient ? ValidationMode::lenient : ValidationMode::strict);
  ClosureOptions opts;
  opts.fast_path = v.carrier;  // the component shortcut assumes a carrier map

  nlohmann::json out;
  if (to_fixed_point) {
    FixedPointResult fp = fixed_point(t, opts, g.limits());
    out["iterations"] = fp.iterations;
    out["fixed_point_reached"] = true;
    out["task"] = task_to_json(fp.task);
    if (report == "added") out["report"] = added_report(fp.chain);
  } else {
    std::vector<ClosureStepReport> chain;
    ColorlessTask cur = t;
    bool fixed = false;
    for (int i = 0; i < steps && !fixed; ++i) {
      chain.push_back(closure_step(cur, opts, g.limits()));
      fixed = (chain.back().after == cur);
      cur = chain.back().after;
    }
    out["steps_applied"] = chain.size();
    out["fixed_point_reached"] = fixed;
    out["task"] = task_to_json(cur);
    if (report == "added") out["report"] = added_report(chain);
  }
  if (!v.warnings.empty()) out["warnings"] = v.warnings;
  emit(out);
  return 0;
}

int cmd_decide(const GlobalOpts& g, const std::string& task_ref, int n, bool confirm_minimal) {
  ColorlessTask t = load_task(task_ref);
  Verdict v = decide(t, n, {}, g.limits());
  nlohmann::json out = verdict_to_json(v);
  if (confirm_minimal) {
    if (const auto* s = std::get_if<Solvable>(&v)) {
      if (s->rounds == 0) {
        out["minimal_confirmed"] = true;
      } else {
        SearchOutcome below = t_round_solvable(t, n, s->rounds - 1, g.limits());
        out["minimal_confirmed"] = !below.found();
        out["lower_bound_search"] = search_outcome_to_json(below);
      }
    }
  }
  emit(out);
  return 0;
}

int cmd_solve(const GlobalOpts& g, const std::string& task_ref, int n, int rounds) {
  ColorlessTask t = load_task(task_ref);
  validate_task(t, ValidationMode::lenient);  // structural errors still throw
  SearchOutcome out = t_round_solvable(t, n, static_cast<unsigned>(rounds), g.limits());
  nlohmann::json j = search_outcome_to_json(out);
  j["rounds"] = rounds;
  j["n"] = n;
  emit(j);
  return 0;
}

int cmd_flp(const GlobalOpts& g, const std::string& task_ref, int n, const std::string& oracle,
            int steps, const std::string& witness_path) {
  ColorlessTask t = load_task(task_ref);
  validate_task(t, ValidationMode::strict);

  std::unique_ptr<ValencyOracle> o;
  if (oracle == "stubborn") {
    o = make_stubborn_oracle(t, n);
  } else {
    RoundWitness w;
    if (!witness_path.empty()) {
      w = witness_from_json(parse_json_text(read_file(witness_path)), t, n, g.limits());
    } else {
      Verdict v = decide(t, n, {}, g.limits());
      const auto* s = std::get_if<Solvable>(&v);
      if (s == nullptr)
        throw Error(ErrorKind::InvalidArgument,
                    "the honest oracle needs a witness; pass --witness or pick a solvable task");
      w = s->witness;
    }
    o = make_honest_oracle(t, n, std::move(w));
  }

  FlpOutcome out =
      flp_from_round_reduction(t, n, *o, static_cast<unsigned>(steps), {}, g.limits());
  if (auto* tr = std::get_if<FLPTranscript>(&out)) {
    tr->task_ref = task_ref;
    emit(transcript_to_json(*tr));
  } else {
    const auto& concede = std::get<ProverConcedes>(out);
    emit(nlohmann::json{
        {"result", "prover_concedes"},
        {"steps_taken", concede.steps_taken},
        {"reason", concede.reason == ProverConcedes::Reason::no_attack ? "no_attack"
                                                                       : "no_bivalent_child"}});
  }
  return 0;
}

int cmd_covering_check(const GlobalOpts&, const std::string& candidate_ref) {
  CoveringCandidate c = load_candidate(candidate_ref);
  CoveringReport rep = validate_covering(c);
  nlohmann::json sheets = nlohmann::json::array();
  for (const auto& [sigma, ss] : rep.sheets) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& s : ss) list.push_back(nlohmann::json(s.labels()));
    sheets.push_back(
        nlohmann::json{{"simplex", nlohmann::json(sigma.labels())}, {"sheets", list}});
  }
  emit(nlohmann::json{{"covering", rep.is_covering},
                      {"why", rep.why},
                      {"sheet_count", rep.sheet_count},
                      {"trivial", rep.is_trivial},
                      {"sheets", sheets}});
  return 0;
}

int cmd_covering_gen(const GlobalOpts&, int m, int k) {
  emit(covering_to_json(gen_cyclic_cover(m, k)));
  return 0;
}

int cmd_covering_impossibility(const GlobalOpts& g, const std::string& candidate_ref, int n) {
  CoveringCandidate c = load_candidate(candidate_ref);
  emit(verdict_to_json(covering_impossibility(c, n, {}, g.limits())));
  return 0;
}

int cmd_export(const GlobalOpts&, const std::string& task_ref, const std::string& dot_path) {
  ColorlessTask t = load_task(task_ref);
  if (!dot_path.empty()) {
    std::ofstream out(dot_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + dot_path + "'");
    out << complex_to_dot(t.input, "input") << complex_to_dot(t.output, "output");
  }
  emit(task_to_json(t));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wait-free solvability of colorless tasks: closure fixed points, "
               "round-reduction proofs, and FLP-style transcripts"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--max-vertices", g.max_vertices, "cap on subdivision vertex counts");
  app.add_option("--max-nodes", g.max_nodes, "cap on search nodes per solver call")
      ->envname("WFDECIDE_MAX_NODES");
  app.add_option("--jobs", g.jobs, "worker cap (evaluation is sequential)")
      ->check(CLI::PositiveNumber);

  std::string task_ref, mode = "strict", report, oracle = "stubborn", witness_path;
  std::string candidate_ref, dot_path;
  int n = 2, rounds = 0, steps = 0, m = 3, k = 2;
  bool to_fixed_point = false, confirm_minimal = false, lenient = false;

  auto* validate = app.add_subcommand("validate", "validate a task file or builtin");
  validate->fallthrough();
  validate->add_option("--task", task_ref, "task file or builtin:<name>")->required();
  validate->add_option("--mode", mode, "strict|repair|lenient")
      ->check(CLI::IsMember({"strict", "repair", "lenient"}));

  auto* closure = app.add_subcommand("closure", "apply the closure operator");
  closure->fallthrough();
  closure->add_option("--task", task_ref)->required();
  auto* steps_opt = closure->add_option("--steps", steps, "number of closure steps");
  auto* fp_opt = closure->add_flag("--fixed-point", to_fixed_point, "iterate to the fixed point");
  closure->add_option("--report", report, "include per-step reports")
      ->check(CLI::IsMember({"added"}));
  closure->add_flag("--lenient", lenient, "allow non-carrier tasks (results are flagged)");
  steps_opt->excludes(fp_opt);

  auto* decide_cmd = app.add_subcommand("decide", "decide wait-free solvability");
  decide_cmd->fallthrough();
  decide_cmd->add_option("--task", task_ref)->required();
  decide_cmd->add_option("--n", n, "number of processes")->required()->check(CLI::Range(2, 64));
  decide_cmd->add_flag("--confirm-minimal", confirm_minimal,
                       "certify the round count by searching one round below");

  auto* solve = app.add_subcommand("solve", "search for a fixed-round witness");
  solve->fallthrough();
  solve->add_option("--task", task_ref)->required();
  solve->add_option("--n", n)->required()->check(CLI::Range(2, 64));
  solve->add_option("--rounds", rounds)->required()->check(CLI::NonNegativeNumber);

  auto* flp = app.add_subcommand("flp", "run the FLP-style prover against an oracle");
  flp->fallthrough();
  flp->add_option("--task", task_ref)->required();
  flp->add_option("--n", n)->required()->check(CLI::Range(2, 64));
  flp->add_option("--oracle", oracle)->required()->check(CLI::IsMember({"stubborn", "honest"}));
  flp->add_option("--steps", steps)->required()->check(CLI::NonNegativeNumber);
  flp->add_option("--witness", witness_path, "witness JSON for the honest oracle");

  auto* covering = app.add_subcommand("covering", "covering complexes and covering tasks");
  covering->fallthrough();
  covering->require_subcommand(1);
  auto* check = covering->add_subcommand("check", "validate a covering candidate");
  check->fallthrough();
  check->add_option("--candidate", candidate_ref)->required();
  auto* gen = covering->add_subcommand("gen", "generate a cyclic covering candidate");
  gen->fallthrough();
  gen->add_option("--m", m)->required();
  gen->add_option("--k", k)->required();
  auto* impossibility = covering->add_subcommand("impossibility", "decide the covering task");
  impossibility->fallthrough();
  impossibility->add_option("--candidate", candidate_ref)->required();
  impossibility->add_option("--n", n)->required()->check(CLI::Range(2, 64));

  auto* export_cmd = app.add_subcommand("export", "emit canonical task JSON and DOT graphs");
  export_cmd->fallthrough();
  export_cmd->add_option("--task", task_ref)->required();
  export_cmd->add_option("--dot", dot_path, "write DOT graphs of the 1-skeletons here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  auto started = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (*validate) {
      rc = cmd_validate(g, task_ref, mode);
    } else if (*closure) {
      if (!to_fixed_point && steps_opt->count() == 0)
        throw Error(ErrorKind::InvalidArgument, "closure needs --steps or --fixed-point");
      rc = cmd_closure(g, task_ref, steps, to_fixed_point, report, lenient);
    } else if (*decide_cmd) {
      rc = cmd_decide(g, task_ref, n, confirm_minimal);
    } else if (*solve) {
      rc = cmd_solve(g, task_ref, n, rounds);
    } else if (*flp) {
      rc = cmd_flp(g, task_ref, n, oracle, steps, witness_path);
    } else if (*covering) {
      if (*check) rc = cmd_covering_check(g, candidate_ref);
      else if (*gen) rc = cmd_covering_gen(g, m, k);
      else rc = cmd_covering_impossibility(g, candidate_ref, n);
    } else if (*export_cmd) {
      rc = cmd_export(g, task_ref, dot_path);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    rc = e.kind() == ErrorKind::ResourceLimit ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    rc = 1;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "elapsed_ms=" << elapsed << "\n";
  return rc;
}
