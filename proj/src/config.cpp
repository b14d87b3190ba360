#include "choice_dyn/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace choice_dyn {

namespace {

using nlohmann::json;

MalariaParams read_pset(const json& j, MalariaParams p, double dt) {
  if (!j.is_object()) throw ConfigError("malaria parameter set must be an object {a, b, r, m}");
  p.a = j.value("a", p.a);
  p.b = j.value("b", p.b);
  p.r = j.value("r", p.r);
  p.m = j.value("m", p.m);
  p.dt = j.value("dt", dt);
  return p;
}

}  // namespace

RunConfig parse_config_json(std::string_view text, RunConfig cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  try {
    if (doc.contains("model")) cfg.model = doc.at("model").get<std::string>();
    if (doc.contains("params")) {
      const json& params = doc.at("params");
      const double dt = params.value("dt", cfg.pset0.dt);
      cfg.pset0.dt = cfg.pset1.dt = dt;
      if (params.contains("pset0")) {
        cfg.pset0 = read_pset(params.at("pset0"), cfg.pset0, dt);
        cfg.pset0_given = true;
      }
      if (params.contains("pset1")) {
        cfg.pset1 = read_pset(params.at("pset1"), cfg.pset1, dt);
        cfg.pset1_given = true;
      }
      cfg.gestalt_depth = params.value("depth", cfg.gestalt_depth);
      cfg.line_radius = params.value("radius", cfg.line_radius);
    }
    if (doc.contains("maps")) cfg.maps = doc.at("maps").get<std::vector<std::size_t>>();
    if (doc.contains("delta")) cfg.delta = doc.at("delta").get<double>();
    if (doc.contains("tol")) cfg.tol = doc.at("tol").get<double>();
    cfg.maxiter = doc.value("maxiter", cfg.maxiter);
    if (doc.contains("strategy")) {
      const json& s = doc.at("strategy");
      cfg.strategies = s.is_array() ? s.get<std::vector<std::string>>() : std::vector<std::string>{s.get<std::string>()};
    }
    cfg.subshift = doc.value("subshift", cfg.subshift);
    cfg.period_bound = doc.value("period_bound", cfg.period_bound);
    if (doc.contains("burnin")) cfg.tail_burnin = doc.at("burnin").get<std::size_t>();
    if (doc.contains("window")) cfg.tail_window = doc.at("window").get<std::size_t>();
    if (doc.contains("probs")) cfg.probs = doc.at("probs").get<std::vector<double>>();
    cfg.chaos_steps = doc.value("n", cfg.chaos_steps);
    cfg.chaos_burnin = doc.value("chaos_burnin", cfg.chaos_burnin);
    if (doc.contains("x0")) {
      const auto v = doc.at("x0").get<std::vector<double>>();
      if (v.empty() || v.size() > kMaxDim) throw ConfigError("x0 must have 1 to 3 coordinates");
      Point p{};
      std::copy(v.begin(), v.end(), p.begin());
      cfg.x0 = p;
    }
    cfg.observable = doc.value("observable", cfg.observable);
    if (doc.contains("out")) cfg.out = doc.at("out").get<std::string>();
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.only = doc.value("only", cfg.only);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str(), std::move(base));
}

ModelSpec build_model(const RunConfig& cfg) {
  try {
    ModelSpec m = cfg.model == "line" ? line_counterexample(cfg.line_radius)
                                      : model_by_name(cfg.model, cfg.pset0, cfg.pset1, GestaltConfig{cfg.gestalt_depth});
    if (!cfg.maps.empty()) m = submodel(m, cfg.maps);
    return m;
  } catch (const std::logic_error& e) {
    throw ConfigError(e.what());
  }
}

double effective_delta(const RunConfig& cfg, std::string_view command) {
  if (cfg.delta) return *cfg.delta;
  if (cfg.model == "three_point" || cfg.model == "gestalt") return 0.0;
  if (cfg.model == "cantor") return 1e-4;
  if (cfg.model.starts_with("malaria") && command == "slices") return 1e-2;
  return 1e-3;
}

double effective_tol(const RunConfig& cfg, std::string_view command) {
  return cfg.tol.value_or(effective_delta(cfg, command));
}

void validate(const RunConfig& cfg, std::string_view command) {
  const ModelSpec m = build_model(cfg);
  const double delta = effective_delta(cfg, command);
  try {
    check_resolution(m, delta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (effective_tol(cfg, command) < delta) throw ConfigError("tol must be >= delta");
  if (cfg.maxiter == 0) throw ConfigError("maxiter must be >= 1");
  if (cfg.period_bound == 0) throw ConfigError("period_bound must be >= 1");
  if (command == "individual" && cfg.strategies.empty()) throw ConfigError("individual needs --strategy PRE(PER)");
  if (command == "chaos") {
    if (!cfg.probs.empty() && cfg.probs.size() != m.alphabet())
      throw ConfigError("probs needs one entry per map (" + std::to_string(m.alphabet()) + ")");
    if (cfg.chaos_steps <= cfg.chaos_burnin) throw ConfigError("n must exceed chaos_burnin");
  }
}

}  // namespace choice_dyn
