#include "rosserlog/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rosserlog/countermodel.hpp"
#include "rosserlog/interpolate.hpp"
#include "rosserlog/json_io.hpp"
#include "rosserlog/parse.hpp"

namespace rosserlog::cli {

namespace {

using nlohmann::json;

constexpr int kExitProvable = 0;
constexpr int kExitUnprovable = 1;
constexpr int kExitError = 2;
constexpr int kExitUnresolved = 3;

Logic parse_logic(const std::string& name) {
  auto l = logic_from_name(name);
  if (!l) throw CLI::ValidationError("--logic", "unknown logic '" + name + "'");
  return *l;
}

std::optional<uint64_t> env_budget() {
  const char* v = std::getenv("ROSSERLOG_BUDGET");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  unsigned long long n = std::strtoull(v, &end, 10);
  if (end == v || *end) return std::nullopt;
  return n;
}

FmlSet parse_forget_list(const std::string& csv) {
  FmlSet out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    Fml f = parse(item);
    if (!f->is_atom()) throw ParseError(1, 1, "--forget entries must be atoms", {});
    out.insert(f);
  }
  return out;
}

struct BenchRow {
  std::string logic;
  std::string formula;
  std::string verdict;
  double millis = 0;
};

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"decision, countermodel and interpolation toolkit for the bimodal "
               "provability logics gl, n, nr, grminus, grcirc, gr"};
  app.require_subcommand(1);
  Decider decider;

  // decide
  auto* cmd_decide = app.add_subcommand("decide", "decide provability");
  std::string dec_logic = "gr", dec_formula;
  bool dec_json = false;
  cmd_decide->add_option("--logic", dec_logic, "logic")->capture_default_str();
  cmd_decide->add_option("formula", dec_formula, "formula text")->required();
  cmd_decide->add_flag("--json", dec_json, "machine-readable output");

  // countermodel
  auto* cmd_counter = app.add_subcommand("countermodel", "search a verified countermodel");
  std::string cm_logic = "gr", cm_formula;
  int cm_max_worlds = static_cast<int>(env_budget().value_or(8));
  bool cm_json = false;
  cmd_counter->add_option("--logic", cm_logic, "logic")->capture_default_str();
  cmd_counter->add_option("formula", cm_formula, "formula text")->required();
  cmd_counter->add_option("--max-worlds", cm_max_worlds, "world budget")->capture_default_str();
  cmd_counter->add_flag("--json", cm_json, "compact output");

  // interpolate
  auto* cmd_interp = app.add_subcommand("interpolate", "compute an interpolant");
  std::string ip_logic = "gr", ip_mode = "lyndon", ip_a, ip_b;
  uint64_t ip_budget = env_budget().value_or(10'000);
  bool ip_json = false;
  cmd_interp->add_option("--logic", ip_logic, "gl, grcirc or gr")->capture_default_str();
  cmd_interp->add_option("--mode", ip_mode, "lyndon or craig")->capture_default_str();
  cmd_interp->add_option("left", ip_a, "antecedent")->required();
  cmd_interp->add_option("right", ip_b, "consequent")->required();
  cmd_interp->add_option("--budget", ip_budget, "candidate budget")->capture_default_str();
  cmd_interp->add_flag("--json", ip_json, "machine-readable output");

  // uniform
  auto* cmd_uniform = app.add_subcommand("uniform", "compute a uniform interpolant");
  std::string un_logic = "gr", un_formula, un_forget;
  int un_depth = -1, un_size_cap = 9;
  bool un_json = false;
  cmd_uniform->add_option("--logic", un_logic, "gl, grminus, grcirc or gr")
      ->capture_default_str();
  cmd_uniform->add_option("formula", un_formula, "formula text")->required();
  cmd_uniform->add_option("--forget", un_forget, "comma-separated atoms to forget");
  cmd_uniform->add_option("--depth", un_depth, "modal-depth bound (default: md of input)");
  cmd_uniform->add_option("--size-cap", un_size_cap, "size bound")->capture_default_str();
  cmd_uniform->add_flag("--json", un_json, "machine-readable output");

  // translate
  auto* cmd_translate = app.add_subcommand("translate", "apply a translation");
  std::string tr_which, tr_formula;
  bool tr_json = false;
  cmd_translate->add_option("--which", tr_which, "dagger, top, theta or psi")->required();
  cmd_translate->add_option("formula", tr_formula, "formula text")->required();
  cmd_translate->add_flag("--json", tr_json, "machine-readable output");

  // check-model
  auto* cmd_check = app.add_subcommand("check-model", "evaluate a formula in a model file");
  std::string chk_file, chk_formula;
  std::string chk_world = "0";
  bool chk_json = false;
  cmd_check->add_option("file", chk_file, "model JSON file")->required();
  cmd_check->add_option("--formula", chk_formula, "formula text")->required();
  cmd_check->add_option("--world", chk_world, "world id")->capture_default_str();
  cmd_check->add_flag("--json", chk_json, "machine-readable output");

  // gen
  auto* cmd_gen = app.add_subcommand("gen", "generate random formulas or frames");
  bool gen_formulas = false, gen_frames = false, gen_json = false;
  uint64_t gen_seed = 0;
  int gen_size = 8, gen_count = 10;
  std::string gen_keys = "p";
  cmd_gen->add_flag("--formulas", gen_formulas, "emit formulas");
  cmd_gen->add_flag("--frames", gen_frames, "emit models");
  cmd_gen->add_option("--seed", gen_seed, "seed")->capture_default_str();
  cmd_gen->add_option("--size", gen_size, "formula size / world count")->capture_default_str();
  cmd_gen->add_option("--count", gen_count, "how many")->capture_default_str();
  cmd_gen->add_option("--keys", gen_keys, "override keys for frames")->capture_default_str();
  cmd_gen->add_flag("--json", gen_json, "machine-readable output");

  // bench
  auto* cmd_bench = app.add_subcommand("bench", "decide a corpus file and report timings");
  std::string bn_file, bn_logic = "gr", bn_csv;
  bool bn_json = false;
  cmd_bench->add_option("file", bn_file, "corpus: one formula per line, # comments, "
                                         "optional @logic directive")
      ->required();
  cmd_bench->add_option("--logic", bn_logic, "default logic")->capture_default_str();
  cmd_bench->add_option("--csv", bn_csv, "also write a CSV table to this path");
  cmd_bench->add_flag("--json", bn_json, "machine-readable output");

  std::vector<const char*> argv;
  argv.push_back("rosserlog");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  if (cmd_decide->parsed()) {
    Logic logic = parse_logic(dec_logic);
    Fml a = parse(dec_formula);
    DecisionOutcome o = decider.decide(logic, a);
    if (dec_json)
      out << outcome_to_json(logic, a, o).dump() << "\n";
    else
      out << verdict_name(o.verdict) << "\n";
    return o.verdict == Verdict::Provable ? kExitProvable : kExitUnprovable;
  }

  if (cmd_counter->parsed()) {
    Logic logic = parse_logic(cm_logic);
    Fml a = parse(cm_formula);
    SearchOptions opts;
    opts.max_worlds = cm_max_worlds;
    if (logic == Logic::GL) {
      Certificate cert = gl_countermodel(decider, a);
      out << certificate_to_json(cert).dump(cm_json ? -1 : 2) << "\n";
      return kExitProvable;
    }
    // The [R]-fragment logics are decided through their conservative
    // extensions; their countermodels come from the same searches.
    if (logic == Logic::N || logic == Logic::NR) {
      if (a->mentions_box())
        throw FragmentError("countermodel: [] is not part of the [R]-fragment");
      logic = logic == Logic::N ? Logic::GRCirc : Logic::GR;
    }
    if (logic != Logic::GRCirc && logic != Logic::GR)
      throw FragmentError("countermodel: supported logics are gl, n, nr, grcirc, gr");
    SearchOutcome o = logic == Logic::GRCirc ? gro_countermodel(decider, a, opts)
                                             : gr_countermodel(decider, a, opts);
    if (o.certificate) {
      out << certificate_to_json(*o.certificate).dump(cm_json ? -1 : 2) << "\n";
      return kExitProvable;
    }
    out << search_outcome_to_json(o).dump(cm_json ? -1 : 2) << "\n";
    return kExitUnresolved;
  }

  if (cmd_interp->parsed()) {
    Logic logic = parse_logic(ip_logic);
    if (logic != Logic::GL && logic != Logic::GRCirc && logic != Logic::GR)
      throw FragmentError("interpolate: supported logics are gl, grcirc, gr");
    InterpolationMode mode;
    if (ip_mode == "lyndon")
      mode = InterpolationMode::Lyndon;
    else if (ip_mode == "craig")
      mode = InterpolationMode::Craig;
    else
      throw FragmentError("interpolate: --mode must be lyndon or craig");
    Fml a = parse(ip_a), b = parse(ip_b);
    InterpolantReport rep = lyndon_interpolant(decider, logic, a, b, ip_budget, mode);
    if (ip_json) {
      out << interpolant_report_to_json(logic, a, b, rep).dump() << "\n";
    } else if (rep.resolved) {
      out << render(rep.interpolant) << "\n";
      for (const auto& o : rep.obligations)
        out << "  " << (o.pass ? "ok" : "FAIL") << "  " << o.description << "\n";
    } else {
      out << "unresolved after " << rep.candidates_tested << " candidates\n";
    }
    return rep.resolved ? kExitProvable : kExitUnresolved;
  }

  if (cmd_uniform->parsed()) {
    Logic logic = parse_logic(un_logic);
    Fml a = parse(un_formula);
    FmlSet p = parse_forget_list(un_forget);
    UniformOptions opts;
    opts.depth = un_depth;
    opts.size_cap = un_size_cap;
    UniformReport rep;
    switch (logic) {
      case Logic::GL: rep = gl_uniform(decider, a, p, opts); break;
      case Logic::GRMinus: rep = grminus_uniform(decider, a, p, opts); break;
      case Logic::GRCirc: rep = grcirc_uniform(decider, a, p, opts); break;
      case Logic::GR: rep = gr_uniform(decider, a, p, opts); break;
      default:
        throw FragmentError("uniform: supported logics are gl, grminus, grcirc, gr");
    }
    if (un_json) {
      out << uniform_report_to_json(rep).dump() << "\n";
    } else {
      out << render(rep.candidate) << "\n";
      out << "  " << (rep.scope_ok ? "ok" : "FAIL") << "  variable scope\n";
      out << "  " << (rep.implied_ok ? "ok" : "FAIL") << "  implied by the input\n";
      out << "  clause 3: " << rep.clause3.premises << " premises, " << rep.clause3.failures
          << " failures (depth " << rep.clause3.depth << ", size cap " << rep.clause3.size_cap
          << (rep.clause3.complete ? ", complete" : ", partial") << ")\n";
    }
    bool ok = rep.scope_ok && rep.implied_ok && rep.clause3.failures == 0;
    return ok ? kExitProvable : kExitUnresolved;
  }

  if (cmd_translate->parsed()) {
    Fml a = parse(tr_formula);
    Fml result = nullptr;
    if (tr_which == "dagger") {
      result = dagger(a);
    } else if (tr_which == "psi") {
      result = psi(a);
    } else if (tr_which == "top") {
      result = top_translation(a, [&](Fml d) {
        return decider.decide_gr_circ(d).verdict == Verdict::Provable;
      });
    } else if (tr_which == "theta") {
      result = theta(a, [&](Fml d) {
        return decider.decide_gr(d).verdict == Verdict::Provable;
      });
    } else {
      throw FragmentError("translate: --which must be dagger, top, theta or psi");
    }
    if (tr_json)
      out << json{{"which", tr_which}, {"input", render(a)}, {"result", render(result)}}.dump()
          << "\n";
    else
      out << render(result) << "\n";
    return kExitProvable;
  }

  if (cmd_check->parsed()) {
    GRoModel m = load_model_file(chk_file);
    Fml a = parse(chk_formula);
    World w = 0;
    try {
      size_t used = 0;
      w = std::stoi(chk_world, &used);
      if (used != chk_world.size()) throw std::invalid_argument(chk_world);
    } catch (const std::exception&) {
      throw ModelError("check-model: --world must be a dense integer id");
    }
    bool value = eval(m, w, a);
    if (chk_json)
      out << json{{"world", w}, {"formula", render(a)}, {"value", value}}.dump() << "\n";
    else
      out << (value ? "true" : "false") << "\n";
    return value ? kExitProvable : kExitUnprovable;
  }

  if (cmd_gen->parsed()) {
    if (gen_formulas == gen_frames)
      throw FragmentError("gen: pass exactly one of --formulas / --frames");
    if (gen_formulas) {
      std::mt19937_64 rng(gen_seed);
      for (int i = 0; i < gen_count; ++i)
        out << render(random_formula(rng, gen_size, {})) << "\n";
    } else {
      FmlVec keys;
      for (Fml f : parse_forget_list(gen_keys)) keys.push_back(f);
      for (int i = 0; i < gen_count; ++i) {
        GRoModel m = random_model(gen_seed + i, gen_size, keys, {"p", "q", "r"});
        out << model_to_json(m).dump(gen_json ? -1 : 2) << "\n";
      }
    }
    return kExitProvable;
  }

  if (cmd_bench->parsed()) {
    std::ifstream in(bn_file);
    if (!in) {
      err << "error: cannot open corpus " << bn_file << "\n";
      return kExitError;
    }
    Logic default_logic = parse_logic(bn_logic);
    std::vector<BenchRow> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
      std::string text = line;
      Logic logic = default_logic;
      std::istringstream ls(line);
      std::string first;
      ls >> first;
      if (first == "@logic") {
        std::string name;
        ls >> name;
        logic = parse_logic(name);
        std::getline(ls, text);
      }
      if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
      Fml a = parse(text);
      auto t0 = std::chrono::steady_clock::now();
      DecisionOutcome o = decider.decide(logic, a);
      auto t1 = std::chrono::steady_clock::now();
      rows.push_back({logic_name(logic), render(a), verdict_name(o.verdict),
                      std::chrono::duration<double, std::milli>(t1 - t0).count()});
    }
    if (bn_json) {
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"logic", r.logic},
                       {"formula", r.formula},
                       {"verdict", r.verdict},
                       {"ms", r.millis}});
      out << arr.dump() << "\n";
    } else {
      for (const auto& r : rows)
        out << r.logic << "\t" << r.verdict << "\t" << r.millis << "ms\t" << r.formula << "\n";
    }
    if (!bn_csv.empty()) {
      std::ofstream csv(bn_csv);
      csv << "logic,verdict,ms,formula\n";
      for (const auto& r : rows)
        csv << r.logic << "," << r.verdict << "," << r.millis << ",\"" << r.formula << "\"\n";
    }
    return kExitProvable;
  }

  err << "error: no subcommand\n";
  return kExitError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_parsed(args, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const FragmentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace rosserlog::cli
