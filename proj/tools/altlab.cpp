#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "altlab/bisimulation.hpp"
#include "altlab/claims.hpp"
#include "altlab/countermodel.hpp"
#include "altlab/fragments.hpp"
#include "altlab/game_io.hpp"
#include "altlab/games.hpp"
#include "altlab/model_io.hpp"
#include "altlab/proof.hpp"
#include "altlab/random.hpp"
#include "altlab/transform.hpp"
#include "altlab/zoo.hpp"

using nlohmann::json;
using namespace altlab;

namespace {

struct Outcome {
  json doc;
  int code = 0;
};

json frame_doc(const KripkeModel& m) {
  json out = json::object();
  auto rep = frame_properties(m);
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    json props = json::array();
    for (auto p : {FrameProperty::Serial, FrameProperty::Reflexive, FrameProperty::Transitive, FrameProperty::Euclidean,
                   FrameProperty::Symmetric}) {
      if (rep[a].has(p)) props.push_back(to_string(p));
    }
    json classes = json::array();
    for (const auto& name : FrameClass::alias_names()) {
      if (FrameClass::from_name(name).admits(rep[a])) classes.push_back(name);
    }
    out[m.agents()[a]] = {{"properties", props}, {"classes", classes}};
  }
  return out;
}

PointedModel pointed(const std::string& uri, const std::optional<std::string>& point) {
  LoadedModel lm = load_model(uri);
  std::size_t p = 0;
  if (point) {
    p = lm.model.require_world(*point);
  } else if (lm.point) {
    p = *lm.point;
  } else {
    throw ModelError(uri + ": no point given and the model has none");
  }
  return PointedModel{std::move(lm.model), p};
}

json list_of(const std::set<std::string>& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

Outcome cmd_classify(const std::string& text) {
  Formula f = parse_formula(text);
  FragmentReport r = classify(f);
  json minus = json::object();
  for (const auto& [a, in] : r.in_minus) minus[a] = in;
  json doc{{"formula", render(f)},
           {"universe", r.universe},
           {"alternating", r.alternating_occ},
           {"nonrepeating", r.nonrepeating_occ},
           {"alternating_inductive", r.alternating_ind},
           {"nonrepeating_inductive", r.nonrepeating_ind},
           {"minus", minus},
           {"modal_depth", modal_depth(f)}};
  doc["required_agents"] = r.required_agents ? list_of(*r.required_agents) : json(nullptr);
  if (r.extended) doc["c_fragment"] = to_string(r.c_fragment);
  return {doc, 0};
}

Outcome cmd_check(const std::string& model, const std::string& point, const std::string& text) {
  PointedModel pm = pointed(model, point);
  Formula f = parse_formula(text, pm.model.agents());
  Evaluator ev(pm.model);
  bool holds = ev.holds(f, pm.point);
  json doc{{"model", model}, {"point", pm.point_name()}, {"formula", render(f)}, {"holds", holds}};
  if (!ev.unknown_atoms().empty()) {
    doc["warnings"] = json::array();
    for (const auto& a : ev.unknown_atoms()) {
      doc["warnings"].push_back("atom '" + a + "' is not in the model's valuation; read as false");
      std::cerr << "warning: atom '" << a << "' undeclared, read as false\n";
    }
  }
  return {doc, holds ? 0 : 1};
}

Outcome cmd_frame(const std::string& model) {
  LoadedModel lm = load_model(model);
  return {json{{"model", model}, {"worlds", lm.model.num_worlds()}, {"agents", frame_doc(lm.model)}}, 0};
}

Outcome cmd_bisim(const std::string& kind_name, const std::string& m1, const std::string& m2,
                  std::optional<std::size_t> depth) {
  BisimKind kind = bisim_kind_from_string(kind_name);
  LoadedModel a = load_model(m1);
  LoadedModel b = load_model(m2);
  BisimFamily fam = depth ? bounded_family(a.model, b.model, kind, *depth) : greatest_family(a.model, b.model, kind);
  IndexScheme s = fam.scheme();
  json rel = json::object();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json pairs = json::array();
    for (std::size_t u = 0; u < a.model.num_worlds(); ++u) {
      for (std::size_t v = 0; v < b.model.num_worlds(); ++v) {
        if (fam.related(i, u, v)) pairs.push_back({a.model.world_name(u), b.model.world_name(v)});
      }
    }
    rel[s.index_name(i)] = pairs;
  }
  json doc{{"kind", to_string(kind)}, {"depth", depth ? json(*depth) : json("omega")}, {"relations", rel}};
  int code = 0;
  if (a.point && b.point) {
    json at = json::object();
    bool all = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      bool r = fam.related(i, *a.point, *b.point);
      at[s.index_name(i)] = r;
      all = all && r;
    }
    doc["points"] = {a.model.world_name(*a.point), b.model.world_name(*b.point)};
    doc["points_related"] = at;
    std::size_t top = kind == BisimKind::Plain ? 0 : kind == BisimKind::Alternating ? s.alt_index() : s.full_index();
    doc["bisimilar"] = fam.related(top, *a.point, *b.point);
    code = doc["bisimilar"].get<bool>() ? 0 : 1;
  }
  return {doc, code};
}

Outcome cmd_unravel(const std::string& model, const std::string& point, std::size_t depth, const std::string& comp) {
  PointedModel pm = pointed(model, point);
  Unraveling u = alt_unravel(pm, depth, completion_from_string(comp));
  json doc{{"depth", depth}, {"completion", comp}, {"model", model_to_json(u.result.model, u.result.point)},
           {"frame", frame_doc(u.result.model)}};
  return {doc, 0};
}

Outcome cmd_nrpartition(const std::string& model, const std::string& point) {
  PointedModel pm = pointed(model, point);
  PartitionModel p = nr_partition(pm);
  return {json{{"model", model_to_json(p.result.model, p.result.point)}, {"frame", frame_doc(p.result.model)}}, 0};
}

Outcome cmd_prove(const std::string& file) {
  Derivation d = load_derivation(file);
  ProofVerdict v = check_derivation(d);
  json doc{{"logic", d.logic}, {"agents", d.agents}, {"lines", d.lines.size()}, {"accepted", v.accepted}};
  if (!v.accepted) {
    doc["reason"] = v.reason;
    if (v.bad_line) doc["line"] = d.lines[*v.bad_line].id;
  }
  if (v.final_formula) {
    doc["final"] = render(*v.final_formula);
    doc["final_is_theorem"] = v.final_is_theorem;
  }
  return {doc, v.accepted ? 0 : 1};
}

Outcome cmd_countermodel(const std::string& text, const std::string& cls, std::size_t max, bool exhaustive,
                         std::uint64_t seed) {
  Formula f = parse_formula(text);
  SearchOptions opts;
  opts.mode = exhaustive ? SearchMode::Exhaustive : SearchMode::Random;
  opts.seed = seed;
  CountermodelResult r = search_countermodel(f, FrameClass::from_name(cls), max, opts);
  json doc{{"formula", render(f)}, {"class", cls}, {"max_worlds", max}, {"mode", exhaustive ? "exhaustive" : "random"},
           {"examined", r.examined}, {"found", r.model.has_value()}};
  if (!exhaustive) doc["seed"] = seed;
  if (r.model) doc["countermodel"] = model_to_json(r.model->model, r.model->point);
  return {doc, r.model ? 1 : 0};
}

json survivors_doc(const StrategicGame& g, const Restriction& r) {
  json j = json::object();
  for (std::size_t p = 0; p < g.num_players(); ++p) {
    json s = json::array();
    for (std::size_t k : r[p]) s.push_back(g.strategies(p)[k]);
    j[g.players()[p]] = s;
  }
  return j;
}

Outcome cmd_iesds(const std::string& uri) {
  LoadedGame lg = load_game(uri);
  const StrategicGame& g = lg.game;
  IesdsResult r = iesds(g);
  json rounds = json::array();
  for (const auto& round : r.rounds) {
    json rd = json::array();
    for (const auto& e : round) {
      json w = json::array();
      for (const auto& x : e.weights) w.push_back(to_string(x));
      rd.push_back({{"player", g.players()[e.player]}, {"strategy", g.strategies(e.player)[e.strategy]},
                    {"weights", w}, {"margin", to_string(e.margin)}});
    }
    rounds.push_back(rd);
  }
  return {json{{"game", uri}, {"survivors", survivors_doc(g, r.survivors)}, {"rounds", rounds}}, 0};
}

Outcome cmd_game_verify(const std::string& uri, const std::string& world, std::size_t depth) {
  LoadedGame lg = load_game(uri);
  if (!lg.model) throw ModelError(uri + ": no epistemic block");
  const EpistemicGameModel& egm = *lg.model;
  const std::size_t w = egm.world_index(world);
  ModelVerdict mv = validate_model(egm);
  if (!mv.ok) return {json{{"valid", false}, {"violation", mv.message}}, 1};
  TheoremVerdict v = verify_theorem_A(egm, w, depth);
  json surv = json::object();
  for (std::size_t p = 0; p < egm.game.num_players(); ++p) {
    surv[egm.game.players()[p]] = p < v.survives.size() ? json(bool(v.survives[p])) : json(nullptr);
  }
  const char* rat = v.rationalizable == Rationalizability::Checked      ? "checked"
                    : v.rationalizable == Rationalizability::NotChecked ? "not-checked"
                                                                         : "vacuous";
  json doc{{"valid", true}, {"world", world}, {"depth", depth}, {"gamma", v.gamma_holds},
           {"gamma_prime", v.gamma_prime_holds}, {"survives", surv}, {"rationalizable", rat},
           {"survivors", survivors_doc(egm.game, v.survivors.survivors)}, {"ok", v.ok}};
  return {doc, v.ok ? 0 : 1};
}

Outcome cmd_verify(const std::optional<std::string>& only, std::uint64_t seed, bool timing) {
  ClaimContext ctx;
  ctx.seed = seed;
  ctx.timing = timing;
  json results = json::array();
  bool all = true;
  for (const auto& r : run_claims(ctx, only)) {
    all = all && r.status == "pass";
    results.push_back(r.to_json());
  }
  return {json{{"seed", seed}, {"status", all ? "pass" : "fail"}, {"claims", results}}, all ? 0 : 1};
}

Outcome cmd_list() {
  json claims_doc = json::array();
  for (const auto& c : claims()) claims_doc.push_back({{"id", c.id}, {"summary", c.summary}});
  std::vector<std::string> games;
  for (const auto& e : std::filesystem::directory_iterator(game_directory())) {
    if (e.path().extension() == ".json") games.push_back(e.path().stem().string());
  }
  std::sort(games.begin(), games.end());
  return {json{{"zoo", zoo_names()}, {"scripts", script_names()}, {"games", games}, {"logics", logic_names()},
               {"frame_classes", FrameClass::alias_names()}, {"claims", claims_doc}},
          0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"altlab: alternating and nonrepeating fragments of multi-agent modal logic"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = default_seed();
  bool no_timing = false;
  bool compact = false;
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_flag("--no-timing", no_timing, "report elapsed_ms as 0");
  app.add_flag("--compact", compact, "single-line JSON");

  std::string s1, s2, s3;
  std::optional<std::size_t> depth;
  std::size_t n = 0;
  std::string comp = "k45";
  std::string cls;
  bool exhaustive = false;
  std::optional<std::string> only;
  std::function<Outcome()> action;

  auto* classify_cmd = app.add_subcommand("classify", "fragment membership of a formula");
  classify_cmd->add_option("FORMULA", s1)->required();
  classify_cmd->callback([&] { action = [&] { return cmd_classify(s1); }; });

  auto* check = app.add_subcommand("check", "truth of a formula at a world");
  check->add_option("MODEL", s1)->required();
  check->add_option("POINT", s2)->required();
  check->add_option("FORMULA", s3)->required();
  check->callback([&] { action = [&] { return cmd_check(s1, s2, s3); }; });

  auto* frame = app.add_subcommand("frame", "relational properties per agent");
  frame->add_option("MODEL", s1)->required();
  frame->callback([&] { action = [&] { return cmd_frame(s1); }; });

  auto* bisim = app.add_subcommand("bisim", "bisimulation families between two models");
  bisim->add_option("KIND", s1, "plain, alternating or nonrepeating")->required();
  bisim->add_option("MODEL1", s2)->required();
  bisim->add_option("MODEL2", s3)->required();
  bisim->add_option("--depth", depth);
  bisim->callback([&] { action = [&] { return cmd_bisim(s1, s2, s3, depth); }; });

  auto* unravel = app.add_subcommand("unravel", "alternating unraveling with optional completion");
  unravel->add_option("MODEL", s1)->required();
  unravel->add_option("POINT", s2)->required();
  unravel->add_option("--depth", n)->required();
  unravel->add_option("--complete", comp)->check(CLI::IsMember({"k45", "b", "none"}));
  unravel->callback([&] { action = [&] { return cmd_unravel(s1, s2, n, comp); }; });

  auto* nrp = app.add_subcommand("nrpartition", "nonrepeating partition model");
  nrp->add_option("MODEL", s1)->required();
  nrp->add_option("POINT", s2)->required();
  nrp->callback([&] { action = [&] { return cmd_nrpartition(s1, s2); }; });

  auto* prove = app.add_subcommand("prove", "check a derivation file or packaged script");
  prove->add_option("DERIVATION", s1)->required();
  prove->callback([&] { action = [&] { return cmd_prove(s1); }; });

  auto* cm = app.add_subcommand("countermodel", "search for a countermodel in a frame class");
  cm->add_option("FORMULA", s1)->required();
  cm->add_option("--class", cls)->required();
  cm->add_option("--max", n)->required();
  cm->add_flag("--exhaustive", exhaustive);
  cm->callback([&] { action = [&] { return cmd_countermodel(s1, cls, n, exhaustive, seed); }; });

  auto* game = app.add_subcommand("game", "strategic games");
  game->require_subcommand(1);
  auto* ies = game->add_subcommand("iesds", "iterated elimination of strictly dominated strategies");
  ies->add_option("GAME", s1)->required();
  ies->callback([&] { action = [&] { return cmd_iesds(s1); }; });
  auto* gv = game->add_subcommand("verify", "check Gamma and IESDS survival at a world");
  gv->add_option("MODEL", s1)->required();
  gv->add_option("WORLD", s2)->required();
  gv->add_option("--depth", n)->required();
  gv->callback([&] { action = [&] { return cmd_game_verify(s1, s2, n); }; });

  auto* vp = app.add_subcommand("verify-paper", "run the packaged claims");
  vp->add_option("--only", only, "claim id");
  vp->callback([&] { action = [&] { return cmd_verify(only, seed, !no_timing); }; });

  auto* list = app.add_subcommand("list", "names of zoo models, scripts, games, logics and claims");
  list->callback([&] { action = [&] { return cmd_list(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    Outcome out = action();
    std::cout << (compact ? out.doc.dump() : out.doc.dump(2)) << "\n";
    return out.code;
  } catch (const std::exception& e) {
    json err{{"error", e.what()}};
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) err["position"] = pe->position();
    std::cout << (compact ? err.dump() : err.dump(2)) << "\n";
    std::cerr << "altlab: " << e.what() << "\n";
    return 2;
  }
}
