#include "rosserlog/json_io.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "rosserlog/parse.hpp"
#include "rosserlog/syntax.hpp"

namespace rosserlog {

using nlohmann::json;

namespace {

json relation_to_json(const Relation& r) {
  json edges = json::array();
  for (auto [x, y] : r.pairs()) edges.push_back(json::array({x, y}));
  return edges;
}

std::string world_token(const json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) return j.get<std::string>();
  throw ModelError("model: world ids must be integers or strings");
}

}  // namespace

json model_to_json(const GRoModel& m) {
  json j;
  j["worlds"] = json::array();
  for (int w = 0; w < m.frame.n; ++w) j["worlds"].push_back(w);
  j["box"] = relation_to_json(m.frame.box);
  j["rosser"]["default"] = relation_to_json(m.frame.rosser_default);
  j["rosser"]["overrides"] = json::array();
  for (const auto& [key, rel] : m.frame.rosser_overrides)
    j["rosser"]["overrides"].push_back({{"formula", render(key)}, {"rel", relation_to_json(rel)}});
  j["valuation"] = json::object();
  for (int w = 0; w < m.frame.n; ++w) {
    json atoms = json::array();
    for (Fml at : m.valuation[w]) atoms.push_back(render(at));
    j["valuation"][std::to_string(w)] = atoms;
  }
  return j;
}

GRoModel model_from_json(const json& j) {
  if (!j.contains("worlds") || !j["worlds"].is_array() || j["worlds"].empty())
    throw ModelError("model: non-empty \"worlds\" array required");
  std::map<std::string, World> ids;
  int n = 0;
  for (const json& w : j["worlds"]) {
    std::string tok = world_token(w);
    if (!ids.emplace(tok, n).second) throw ModelError("model: duplicate world id " + tok);
    ++n;
  }
  if (n > 64) throw ModelError("model: at most 64 worlds supported");

  auto lookup = [&](const json& w) {
    std::string tok = world_token(w);
    auto it = ids.find(tok);
    if (it == ids.end()) throw ModelError("model: unknown world id " + tok);
    return it->second;
  };
  auto read_relation = [&](const json& edges) {
    Relation r(n);
    if (!edges.is_array()) throw ModelError("model: relations must be arrays of pairs");
    for (const json& e : edges) {
      if (!e.is_array() || e.size() != 2)
        throw ModelError("model: relation entries must be [from, to] pairs");
      r.add(lookup(e[0]), lookup(e[1]));
    }
    return r;
  };

  GRoModel m;
  m.frame.n = n;
  m.frame.box = j.contains("box") ? read_relation(j["box"]) : Relation(n);
  if (j.contains("rosser")) {
    const json& rj = j["rosser"];
    m.frame.rosser_default =
        rj.contains("default") ? read_relation(rj["default"]) : Relation(n);
    if (rj.contains("overrides")) {
      for (const json& o : rj["overrides"]) {
        if (!o.contains("formula") || !o.contains("rel"))
          throw ModelError("model: overrides need \"formula\" and \"rel\"");
        Fml key;
        try {
          key = parse(o["formula"].get<std::string>());
        } catch (const ParseError& e) {
          throw ModelError(std::string("model: bad override formula: ") + e.what());
        }
        m.frame.rosser_overrides[key] = read_relation(o["rel"]);
      }
    }
  } else {
    m.frame.rosser_default = Relation(n);
  }
  m.valuation.resize(n);
  if (j.contains("valuation")) {
    for (auto it = j["valuation"].begin(); it != j["valuation"].end(); ++it) {
      World w = lookup(json(it.key()));
      for (const json& at : it.value()) {
        Fml f;
        try {
          f = parse(at.get<std::string>());
        } catch (const ParseError& e) {
          throw ModelError(std::string("model: bad valuation entry: ") + e.what());
        }
        if (!f->is_atom()) throw ModelError("model: valuation entries must be atoms");
        m.valuation[w].insert(f);
      }
    }
  }

  FrameReport rep = validate_gro_frame(m.frame);
  if (!rep.ok) throw ModelError("model: invalid frame: " + rep.summary());
  return m;
}

GRoModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ModelError(std::string("model: bad JSON: ") + e.what());
  }
  return model_from_json(j);
}

json certificate_to_json(const Certificate& c) {
  json j = model_to_json(c.model);
  j["focus"] = c.focus;
  j["formula"] = render(c.formula);
  j["verified"] = c.verified;
  return j;
}

json search_outcome_to_json(const SearchOutcome& o) {
  json j;
  j["verdict"] = o.certificate ? "countermodel" : "unresolved";
  if (o.certificate) j["certificate"] = certificate_to_json(*o.certificate);
  j["stats"] = {{"candidates", o.stats.candidates},
                {"worlds_reached", o.stats.worlds_reached},
                {"exhausted", o.stats.exhausted},
                {"phi_size", o.stats.phi_size}};
  if (std::isinf(o.stats.theoretical_bound))
    j["stats"]["theoretical_world_bound"] = "inf";
  else
    j["stats"]["theoretical_world_bound"] = o.stats.theoretical_bound;
  return j;
}

json outcome_to_json(Logic logic, Fml formula, const DecisionOutcome& o) {
  json j;
  j["logic"] = logic_name(logic);
  j["formula"] = render(formula);
  j["verdict"] = verdict_name(o.verdict);
  j["stats"] = {{"cache_hits", o.stats.cache_hits},
                {"oracle_calls", o.stats.oracle_calls},
                {"tableau_nodes", o.stats.tableau_nodes}};
  if (o.trace.top_translated) j["trace"]["top_translated"] = render(o.trace.top_translated);
  if (o.trace.gl_input) j["trace"]["gl_input"] = render(o.trace.gl_input);
  if (o.countermodel) {
    j["gl_countermodel"] = model_to_json(*o.countermodel);
    j["gl_countermodel"]["focus"] = o.focus;
  }
  return j;
}

json interpolant_report_to_json(Logic logic, Fml a, Fml b, const InterpolantReport& rep) {
  json j;
  j["logic"] = logic_name(logic);
  j["left"] = render(a);
  j["right"] = render(b);
  j["resolved"] = rep.resolved;
  if (rep.interpolant) j["interpolant"] = render(rep.interpolant);
  j["obligations"] = json::array();
  for (const auto& o : rep.obligations)
    j["obligations"].push_back({{"description", o.description}, {"verdict", o.pass}});
  j["stats"] = {{"candidates_tested", rep.candidates_tested},
                {"candidates_generated", rep.candidates_generated}};
  return j;
}

json uniform_report_to_json(const UniformReport& rep) {
  json j;
  j["logic"] = logic_name(rep.logic);
  j["formula"] = render(rep.input);
  j["forget"] = json::array();
  for (Fml v : rep.forget) j["forget"].push_back(render(v));
  j["candidate"] = render(rep.candidate);
  j["exact"] = {{"variable_scope", rep.scope_ok}, {"implied", rep.implied_ok}};
  j["clause3"] = {{"depth", rep.clause3.depth},
                  {"size_cap", rep.clause3.size_cap},
                  {"pool_size", rep.clause3.pool_size},
                  {"premises", rep.clause3.premises},
                  {"failures", rep.clause3.failures},
                  {"complete", rep.clause3.complete}};
  if (rep.clause3.counterexample)
    j["clause3"]["counterexample"] = render(rep.clause3.counterexample);
  json trace;
  if (!rep.q_forget.empty()) {
    trace["q_forget"] = json::array();
    for (Fml v : rep.q_forget) trace["q_forget"].push_back(render(v));
  }
  if (rep.gl_engine_input) trace["gl_engine_input"] = render(rep.gl_engine_input);
  if (rep.rewritten) trace["rewritten"] = render(rep.rewritten);
  trace["kept_conjuncts"] = rep.kept_conjuncts;
  j["trace"] = trace;
  return j;
}

}  // namespace rosserlog
