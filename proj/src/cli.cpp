#include "catrank/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "catrank/fixpoint.hpp"
#include "catrank/generator.hpp"
#include "catrank/noetherian.hpp"
#include "catrank/parser.hpp"
#include "catrank/rank.hpp"
#include "catrank/suites.hpp"

namespace catrank {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw eval_error("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json tower_json(const std::vector<TowerStep>& steps) {
  json arr = json::array();
  for (const auto& s : steps)
    arr.push_back(json{{"def", s.locus}, {"pair", json::array({s.a, s.b})}});
  return arr;
}

json stage_eq_json(const StageEq& eq) {
  json j;
  switch (eq.kind) {
    case StageEq::Kind::equal: j["kind"] = "equal"; break;
    case StageEq::Kind::distinct: j["kind"] = "distinct"; break;
    case StageEq::Kind::undecided: j["kind"] = "undecided"; break;
  }
  if (eq.kind == StageEq::Kind::distinct) {
    j["witness"] = eq.witness_text;
    if (eq.witness_expr) j["skeleton"] = print_expr(eq.witness_expr);
  }
  return j;
}

struct CommandError {
  std::string message;
  int line = -1, col = -1;
  long position = -1;
};

int emit(std::ostream& out, std::ostream& err, const std::string& command, const json& inputs,
         const json& result, int code, const std::string& summary) {
  json report{{"command", command}, {"inputs", inputs}, {"result", result}, {"status", "ok"}};
  out << report.dump(2) << "\n";
  err << summary << "\n";
  return code;
}

int emit_error(std::ostream& out, std::ostream& err, const std::string& command,
               const json& inputs, const CommandError& e, int code) {
  json error{{"message", e.message}};
  if (e.line >= 0) {
    error["line"] = e.line;
    error["col"] = e.col;
  }
  if (e.position >= 0) error["position"] = e.position;
  json report{{"command", command},
              {"inputs", inputs},
              {"result", nullptr},
              {"status", "error"},
              {"error", error}};
  out << report.dump(2) << "\n";
  err << "error: " << e.message << "\n";
  return code;
}

SkeletonEnv load_env(const std::string& path) { return parse_file(read_file(path)); }

std::vector<ExprPtr> env_corpus(const SkeletonEnv& env) {
  std::vector<ExprPtr> corpus;
  for (const auto& [name, body] : env.defs()) corpus.push_back(body);
  return corpus;
}

// ---------------------------------------------------------------------------

int cmd_rank(const std::string& file, const std::optional<std::string>& def, std::ostream& out,
             std::ostream& err) {
  json inputs{{"file", file}};
  if (def) inputs["def"] = *def;
  SkeletonEnv env = load_env(file);
  const ExprPtr& e = env.entry(def);
  Rank r = rank_of(env, e);
  json result;
  if (r.is_bottom()) {
    result["rank"] = "bottom";
  } else if (r.is_of()) {
    result["rank"] = print_ordinal(r.value());
  } else {
    result["rank"] = "no-small-rank";
    result["cycle"] = json{{"stem", tower_json(r.witness().stem)},
                           {"cycle", tower_json(r.witness().cycle)}};
  }
  return emit(out, err, "rank", inputs, result, 0, "rank: " + print_rank(r));
}

int cmd_construct(const std::string& ord_text, const std::optional<std::string>& out_file,
                  std::ostream& out, std::ostream& err) {
  json inputs{{"ordinal", ord_text}};
  Ordinal theta = parse_ordinal(ord_text);
  ExprPtr e = construct(theta);
  std::string text = "def c = " + print_expr(e) + ";\nmain = c;\n";
  json result{{"ordinal", print_ordinal(theta)}, {"skeleton", print_expr(e)}};
  if (out_file) {
    std::ofstream f(*out_file, std::ios::binary);
    if (!f) throw eval_error("cannot write file '" + *out_file + "'");
    f << text;
    result["file"] = *out_file;
    inputs["out"] = *out_file;
  }
  return emit(out, err, "construct", inputs, result, 0,
              "construct(" + print_ordinal(theta) + ") = " + print_expr(e));
}

int cmd_noetherian(const std::string& file, const std::optional<std::string>& def,
                   std::ostream& out, std::ostream& err) {
  json inputs{{"file", file}};
  if (def) inputs["def"] = *def;
  SkeletonEnv env = load_env(file);
  const ExprPtr& e = env.entry(def);
  NoetherianResult r = certify(env, e);
  json result;
  result["noetherian"] = r.certified();
  if (!r.certified()) {
    result["tower"] = json{{"stem", tower_json(r.counter_tower->stem)},
                           {"cycle", tower_json(r.counter_tower->cycle)}};
  }
  return emit(out, err, "noetherian", inputs, result, 0,
              r.certified() ? "certified Noetherian" : "counter-tower found");
}

int cmd_member(const std::string& file, const std::optional<std::string>& def,
               const std::string& stage_text, bool bounded, bool via_homs, std::ostream& out,
               std::ostream& err) {
  json inputs{{"file", file}, {"stage", stage_text}, {"bounded", bounded},
              {"via_homs", via_homs}};
  if (def) inputs["def"] = *def;
  SkeletonEnv env = load_env(file);
  const ExprPtr& e = env.entry(def);
  OrdinalExt theta = parse_ordinal_ext(stage_text);
  bool verdict;
  if (via_homs) {
    if (theta.is_lambda()) throw eval_error("member --via-homs requires a successor stage");
    verdict = member_via_homs(env, e, theta.small());
  } else if (bounded) {
    verdict = bounded_member(env, e, theta);
  } else {
    verdict = member(env, e, theta);
  }
  json result{{"member", verdict}};
  return emit(out, err, "member", inputs, result, 0,
              std::string(verdict ? "member" : "not a member") + " of stage " +
                  print_ordinal(theta));
}

int cmd_fixpoint(const std::string& universe, const std::optional<std::string>& functor,
                 const std::string& direction_text, const std::string& schedule_text,
                 const std::optional<std::string>& corpus_file, std::size_t horizon,
                 std::ostream& out, std::ostream& err) {
  json inputs{{"universe", universe},
              {"schedule", schedule_text},
              {"direction", direction_text},
              {"horizon", horizon}};
  if (functor) inputs["functor"] = *functor;
  if (corpus_file) inputs["corpus"] = *corpus_file;

  Direction dir = direction_text == "terminal" ? Direction::terminal : Direction::initial;
  std::vector<OrdinalExt> schedule = parse_schedule(schedule_text, horizon);

  StageUniverse u;
  if (universe == "card") {
    if (!functor) throw eval_error("--functor is required for the card universe");
    u = card_universe(parse_functor(*functor));
  } else if (universe == "rank") {
    SkeletonEnv corpus_env;
    std::vector<ExprPtr> corpus;
    if (corpus_file) {
      corpus_env = load_env(*corpus_file);
      corpus = env_corpus(corpus_env);
    }
    u = rank_universe(std::move(corpus), std::move(corpus_env));
  } else if (universe == "bounded") {
    SkeletonEnv corpus_env;
    std::vector<ExprPtr> corpus;
    if (corpus_file) {
      corpus_env = load_env(*corpus_file);
      corpus = env_corpus(corpus_env);
    } else {
      corpus = bounded_witness_corpus(horizon + 1);
    }
    u = bounded_universe(std::move(corpus), std::move(corpus_env));
  } else {
    u = trunc_universe();
  }

  FixpointReport rep = run_chain(u, schedule, dir);

  json visited = json::array();
  for (const auto& v : rep.visited) {
    visited.push_back(json{{"stage", print_ordinal(v.index)},
                           {"description", v.description},
                           {"comparison", stage_eq_json(v.comparison)}});
  }
  json verdict;
  if (rep.stabilized) {
    verdict = json{{"stabilized_at", print_ordinal(rep.stabilized_at)},
                   {"lambek", lambek_check(u, rep)}};
  } else {
    verdict = json{{"no_stabilization_within_budget", true}};
  }
  json result{{"universe", rep.universe},
              {"direction", direction_name(rep.direction)},
              {"visited", visited},
              {"verdict", verdict}};
  std::string summary = rep.stabilized
                            ? "stabilized at " + print_ordinal(rep.stabilized_at)
                            : "no stabilization within the scheduled budget";
  return emit(out, err, "fixpoint", inputs, result, 0, summary);
}

int cmd_check(const std::string& suite, std::uint64_t seed, std::size_t cases, int threads,
              std::ostream& out, std::ostream& err) {
  json inputs{{"suite", suite}, {"seed", seed}, {"threads", threads}};
  if (cases) inputs["cases"] = cases;

  std::vector<std::string> to_run;
  if (suite == "all") {
    to_run = suite_names();
  } else if (is_suite_name(suite)) {
    to_run.push_back(suite);
  } else {
    throw eval_error("unknown suite '" + suite + "'");
  }

  SuiteOptions opts;
  opts.seed = seed;
  opts.cases = cases;
  opts.threads = threads;

  json suites = json::array();
  bool all_pass = true;
  for (const auto& name : to_run) {
    SuiteResult r = run_suite(name, opts);
    all_pass = all_pass && r.pass();
    json jr{{"name", r.name},
            {"cases", r.cases},
            {"failures", r.failures},
            {"pass", r.pass()},
            {"seconds", r.seconds}};
    if (!r.details.empty()) jr["details"] = r.details;
    suites.push_back(jr);
    err << (r.pass() ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.cases << " cases, "
        << r.failures << " failures)\n";
  }
  json result{{"suites", suites}, {"pass", all_pass}};
  json report{{"command", "check"}, {"inputs", inputs}, {"result", result}, {"status", "ok"}};
  out << report.dump(2) << "\n";
  err << (all_pass ? "all suites passed" : "suite failures detected") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"transfinite rank, Noetherian certification and fixed-point chains "
               "for finitely presented higher-category skeletons"};
  app.require_subcommand(1);

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "rank of a skeleton");
  std::string rank_file;
  std::optional<std::string> rank_def;
  bool ordinal_out = true;
  rank_cmd->add_option("file", rank_file, "skeleton file")->required();
  rank_cmd->add_option("--def", rank_def, "definition to evaluate");
  rank_cmd->add_flag("--ordinal-out", ordinal_out, "print the rank in ordinal syntax");

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "skeleton of a prescribed rank");
  std::string construct_ord;
  std::optional<std::string> construct_out;
  construct_cmd->add_option("ordinal", construct_ord, "target rank (below w^2)")->required();
  construct_cmd->add_option("-o,--out", construct_out, "write a skeleton file");

  // noetherian
  auto* noeth_cmd = app.add_subcommand("noetherian", "certify or refute the Noetherian property");
  std::string noeth_file;
  std::optional<std::string> noeth_def;
  noeth_cmd->add_option("file", noeth_file, "skeleton file")->required();
  noeth_cmd->add_option("--def", noeth_def, "definition to evaluate");

  // member
  auto* member_cmd = app.add_subcommand("member", "stage membership");
  std::string member_file, member_stage;
  std::optional<std::string> member_def;
  bool member_bounded = false, member_via = false;
  member_cmd->add_option("file", member_file, "skeleton file")->required();
  member_cmd->add_option("--stage", member_stage, "stage ordinal (or LAMBDA)")->required();
  member_cmd->add_option("--def", member_def, "definition to evaluate");
  member_cmd->add_flag("--bounded", member_bounded, "bounded membership");
  member_cmd->add_flag("--via-homs", member_via, "hom-level successor route");

  // fixpoint
  auto* fix_cmd = app.add_subcommand("fixpoint", "run a transfinite chain");
  std::string fix_universe, fix_direction = "", fix_schedule;
  std::optional<std::string> fix_functor, fix_corpus;
  std::size_t fix_horizon = 20;
  fix_cmd->add_option("--universe", fix_universe, "rank | bounded | card | trunc")
      ->required()
      ->check(CLI::IsMember({"rank", "bounded", "card", "trunc"}));
  fix_cmd->add_option("--functor", fix_functor, "polynomial functor for the card universe");
  fix_cmd->add_option("--direction", fix_direction, "initial | terminal")
      ->check(CLI::IsMember({"", "initial", "terminal"}));
  fix_cmd->add_option("--schedule", fix_schedule, "ordinal range, e.g. 0..w*2")->required();
  fix_cmd->add_option("--corpus", fix_corpus, "skeleton file with corpus definitions");
  fix_cmd->add_option("--horizon", fix_horizon, "successor steps kept per limit block");

  // check
  auto* check_cmd = app.add_subcommand("check", "run a law suite");
  std::string check_suite;
  std::uint64_t check_seed = 0xCA7;
  std::size_t check_cases = 0;
  int check_threads = 0;
  check_cmd->add_option("--suite", check_suite, "suite name or 'all'")->required();
  check_cmd->add_option("--seed", check_seed, "corpus seed");
  check_cmd->add_option("--cases", check_cases, "override the per-suite case count");
  check_cmd->add_option("--threads", check_threads, "worker count (1 = serial reference)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  std::string command = "(none)";
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    CommandError ce{std::string("usage: ") + e.what()};
    return emit_error(out, err, command, json::object(), ce, 2);
  }

  try {
    if (rank_cmd->parsed()) return cmd_rank(rank_file, rank_def, out, err);
    if (construct_cmd->parsed()) return cmd_construct(construct_ord, construct_out, out, err);
    if (noeth_cmd->parsed()) return cmd_noetherian(noeth_file, noeth_def, out, err);
    if (member_cmd->parsed()) {
      if (member_bounded && member_via) {
        CommandError ce{"--bounded and --via-homs are mutually exclusive"};
        return emit_error(out, err, "member", json::object(), ce, 2);
      }
      return cmd_member(member_file, member_def, member_stage, member_bounded, member_via, out,
                        err);
    }
    if (fix_cmd->parsed()) {
      if (fix_direction.empty())
        fix_direction = fix_universe == "trunc" ? "terminal" : "initial";
      return cmd_fixpoint(fix_universe, fix_functor, fix_direction, fix_schedule, fix_corpus,
                          fix_horizon, out, err);
    }
    if (check_cmd->parsed())
      return cmd_check(check_suite, check_seed, check_cases, check_threads, out, err);
  } catch (const skeleton_parse_error& e) {
    command = app.get_subcommands().empty() ? command : app.get_subcommands()[0]->get_name();
    CommandError ce{e.what(), e.line(), e.col()};
    return emit_error(out, err, command, json::object(), ce, 1);
  } catch (const ordinal_parse_error& e) {
    command = app.get_subcommands().empty() ? command : app.get_subcommands()[0]->get_name();
    CommandError ce{e.what()};
    ce.position = static_cast<long>(e.position());
    return emit_error(out, err, command, json::object(), ce, 1);
  } catch (const std::exception& e) {
    command = app.get_subcommands().empty() ? command : app.get_subcommands()[0]->get_name();
    CommandError ce{e.what()};
    return emit_error(out, err, command, json::object(), ce, 1);
  }
  CommandError ce{"no command given"};
  return emit_error(out, err, command, json::object(), ce, 2);
}

}  // namespace catrank
