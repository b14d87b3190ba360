// choice-dyn: attractors of dynamics with choice from the command line.
//
//   choice-dyn attractor  --model malaria --delta 1e-3 --out out/
//   choice-dyn individual --model malaria --strategy "(10)" --out out/
//   choice-dyn slices     --model three_point --subshift golden_even
//   choice-dyn chaos      --model cantor --n 1000000
//   choice-dyn verify     [--only gestalt]
//   choice-dyn render     cloud.csv --out cloud.svg
//
// Exit codes: 0 ok, 1 failed acceptance criteria, 2 bad configuration,
// 3 no convergence, 4 an orbit left the bounding region.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "choice_dyn/config.hpp"
#include "choice_dyn/io.hpp"
#include "choice_dyn/restricted.hpp"
#include "choice_dyn/setdyn.hpp"
#include "choice_dyn/sofic.hpp"
#include "choice_dyn/verify.hpp"

namespace fs = std::filesystem;
using namespace choice_dyn;

namespace {

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kNoConvergence = 3, kViolation = 4 };

// Flag values; unset flags leave the config file (or defaults) alone.
struct Flags {
  std::string config;
  std::optional<std::string> model;
  std::optional<double> delta, tol;
  std::optional<std::size_t> maxiter, period_bound, burnin, window, n;
  std::vector<std::string> strategies;
  std::optional<std::string> subshift;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> only;
  std::vector<double> probs;
  std::vector<std::size_t> maps;
  std::optional<std::size_t> depth;
  std::vector<std::string> inputs;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its fields");
  cmd->add_option("--model", f.model, "malaria | malaria0 | malaria1 | cantor | line | three_point | gestalt");
  cmd->add_option("--delta", f.delta, "grid resolution (default: 1e-3, 1e-2 for malaria slices, 1e-4 cantor, 0 discrete)");
  cmd->add_option("--tol", f.tol, "Hausdorff convergence tolerance (default: delta)");
  cmd->add_option("--maxiter", f.maxiter, "iteration cap (default 10000)");
  cmd->add_option("--maps", f.maps, "keep only these map indices")->delimiter(',');
  cmd->add_option("--depth", f.depth, "word length of the gestalt model (default 12)");
  cmd->add_option("--out", f.out, "output directory (render: output file)");
  cmd->add_option("--seed", f.seed, "random seed (default 1)");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) cfg = load_config_file(f.config);
  if (f.model) cfg.model = *f.model;
  if (f.delta) cfg.delta = *f.delta;
  if (f.tol) cfg.tol = *f.tol;
  if (f.maxiter) cfg.maxiter = *f.maxiter;
  if (f.period_bound) cfg.period_bound = *f.period_bound;
  if (f.burnin) cfg.tail_burnin = *f.burnin;
  if (f.window) cfg.tail_window = *f.window;
  if (f.n) cfg.chaos_steps = *f.n;
  if (!f.strategies.empty()) cfg.strategies = f.strategies;
  if (f.subshift) cfg.subshift = *f.subshift;
  if (f.out) cfg.out = *f.out;
  if (f.seed) cfg.seed = *f.seed;
  if (f.only) cfg.only = *f.only;
  if (!f.probs.empty()) cfg.probs = f.probs;
  if (!f.maps.empty()) cfg.maps = f.maps;
  if (f.depth) cfg.gestalt_depth = *f.depth;
  return cfg;
}

Box frame_of(const ModelSpec& m) { return m.seed_box.value_or(m.bounds); }

std::string file_tag(const UPString& w) {
  std::string s = w.str();
  for (char& c : s)
    if (c == '(' || c == ')') c = '_';
  return s;
}

void report_violation(const ViolationInfo& v, std::size_t dim) {
  std::cerr << "absorbing-set violation at step " << v.step << ": point (";
  for (std::size_t k = 0; k < dim; ++k) std::cerr << (k ? ", " : "") << v.point[k];
  std::cerr << ") left the bounding region";
  if (!v.message.empty()) std::cerr << " [" << v.message << "]";
  std::cerr << '\n';
}

int cmd_attractor(const RunConfig& cfg) {
  validate(cfg, "attractor");
  const ModelSpec m = build_model(cfg);
  const double delta = effective_delta(cfg, "attractor");
  const AttractorReport k = compute_K(m, delta, effective_tol(cfg, "attractor"), cfg.maxiter);
  if (k.violation) {
    report_violation(*k.violation, m.dim);
    return kViolation;
  }
  fs::create_directories(cfg.out);
  write_csv(cfg.out / "k.csv", k.cloud);
  write_svg(cfg.out / "k.svg", k.cloud, frame_of(m), m.name + " K, delta=" + format_real(delta));
  std::cout << "model " << m.name << ": " << k.cloud.size() << " points after " << k.iterations
            << " iterations, residual " << k.residual << (k.converged ? "" : " (not converged)") << '\n';
  return k.converged ? kOk : kNoConvergence;
}

int cmd_individual(const RunConfig& cfg) {
  validate(cfg, "individual");
  const ModelSpec m = build_model(cfg);
  const double delta = effective_delta(cfg, "individual");
  std::vector<UPString> strategies;
  for (const std::string& s : cfg.strategies) {
    try {
      strategies.push_back(UPString::parse(s));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (strategies.back().max_symbol() >= m.alphabet())
      throw ConfigError("strategy " + s + " uses a symbol the model has no map for");
  }
  std::optional<PointCloud> k;
  if (fs::exists(cfg.out / "k.csv")) k = read_csv(cfg.out / "k.csv", delta);
  // A K left over from another model is not comparable.
  if (k && k->dim() != m.dim) k.reset();

  TailOptions tail{cfg.tail_burnin, cfg.tail_window};
  int status = kOk;
  fs::create_directories(cfg.out);
  for (const UPString& w : strategies) {
    const AttractorReport a = individual_attractor(m, w, delta, tail);
    if (a.violation) {
      std::cerr << "strategy " << w.str() << ": ";
      report_violation(*a.violation, m.dim);
      status = kViolation;
      continue;
    }
    const std::string stem = strategies.size() == 1 ? "a_w" : "a_w_" + file_tag(w);
    write_csv(cfg.out / (stem + ".csv"), a.cloud);
    write_svg(cfg.out / (stem + ".svg"), a.cloud, frame_of(m), m.name + " A_w, w=" + w.str());
    std::cout << "strategy " << w.str() << ": " << a.cloud.size() << " points, cycle length " << a.cycle_length
              << (a.converged ? "" : " (no cycle found)");
    if (k && !a.cloud.empty()) std::cout << ", containment residual in K " << model_directed(m, a.cloud, *k);
    std::cout << '\n';
    if (!a.converged && status == kOk) status = kNoConvergence;
  }
  return status;
}

SoficPresentation load_subshift(const std::string& spec, std::size_t alphabet) {
  SoficPresentation p = [&] {
    if (fs::is_regular_file(spec)) {
      std::ifstream in(spec);
      std::stringstream buf;
      buf << in.rdbuf();
      return SoficPresentation::parse(buf.str(), alphabet);
    }
    if (spec == "full" || spec == "full_shift") return full_shift(alphabet);
    return builtin_presentation(spec);
  }();
  if (p.alphabet() != alphabet)
    throw ConfigError("subshift alphabet " + std::to_string(p.alphabet()) + " does not match the model's " +
                      std::to_string(alphabet) + " maps");
  if (p.vertex_count() == 0) throw ConfigError("subshift " + spec + " is empty");
  return p;
}

int cmd_slices(const RunConfig& cfg) {
  validate(cfg, "slices");
  const ModelSpec m = build_model(cfg);
  const double delta = effective_delta(cfg, "slices");
  SoficPresentation p = [&] {
    try {
      return load_subshift(cfg.subshift, m.alphabet());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  VertexFamily fam;
  try {
    fam = vertex_limits(m, p, delta, effective_tol(cfg, "slices"), cfg.maxiter);
  } catch (const AssumptionViolation& v) {
    report_violation({v.step(), v.point(), v.what()}, m.dim);
    return kViolation;
  }
  const SliceReport rep = enumerate_slices(m, p, fam, cfg.period_bound);
  const DecompositionCheck check = verify_decomposition(rep, m, delta);
  write_slice_report(cfg.out, rep, m.name, cfg.subshift, check);
  std::cout << "distinct slices: " << rep.slices.size() << " (start sets: " << rep.start_set_count << ")\n"
            << "K_Lambda = A_0 u ... u A_N-1 residual: " << check.cover_residual << '\n'
            << "K_Lambda = S_0(A_0) u ... residual: " << check.image_residual << '\n'
            << "decomposition " << (check.passed ? "ok" : "FAILED") << '\n';
  return fam.all_converged() ? kOk : kNoConvergence;
}

int cmd_chaos(const RunConfig& cfg) {
  validate(cfg, "chaos");
  const ModelSpec m = build_model(cfg);
  if (m.discrete) throw ConfigError("chaos needs a continuous model");
  ChaosOptions opts;
  opts.probs = cfg.probs.empty() ? std::vector<double>(m.alphabet(), 1.0 / m.alphabet()) : cfg.probs;
  const Box box = frame_of(m);
  if (cfg.x0) {
    opts.x0 = *cfg.x0;
  } else {
    for (std::size_t k = 0; k < m.dim; ++k) opts.x0[k] = 0.5 * (box.lo[k] + box.hi[k]);
  }
  opts.n = cfg.chaos_steps;
  opts.burnin = cfg.chaos_burnin;
  opts.seed = cfg.seed;
  opts.delta = effective_delta(cfg, "chaos");

  std::size_t coord = 0;
  if (cfg.observable.size() == 2 && cfg.observable[0] == 'x' && cfg.observable[1] >= '0' &&
      static_cast<std::size_t>(cfg.observable[1] - '0') < m.dim)
    coord = static_cast<std::size_t>(cfg.observable[1] - '0');
  else
    throw ConfigError("observable must be a coordinate x0..x" + std::to_string(m.dim - 1));

  ChaosResult res;
  try {
    res = chaos_game(m, opts, [coord](const Point& p) { return p[coord]; });
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  fs::create_directories(cfg.out);
  write_csv(cfg.out / "chaos.csv", res.cloud);
  write_svg(cfg.out / "chaos.svg", res.cloud, box, m.name + " chaos game");
  std::cout << "mean of " << cfg.observable << ": " << format_real(res.mean) << " (" << res.cloud.size()
            << " distinct cells)\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions opts;
  opts.only = cfg.only;
  if (cfg.pset0_given) opts.pset0 = cfg.pset0;
  if (cfg.pset1_given) opts.pset1 = cfg.pset1;
  std::vector<CriterionResult> results;
  try {
    results = run_acceptance(opts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::cout << results_json(results) << '\n';
  bool all = true;
  for (const auto& r : results) {
    if (!r.passed) {
      all = false;
      std::cerr << "criterion " << r.id << " (" << r.tag << ") failed: measured " << r.measured << "; expected "
                << r.expected << '\n';
    }
  }
  return all ? kOk : kFailed;
}

int cmd_render(const Flags& f, const RunConfig& cfg) {
  if (f.inputs.empty()) throw ConfigError("render needs at least one CSV file");
  static const char* colors[] = {"#1f4e9c", "#c0392b", "#27ae60", "#8e44ad", "#d68910"};
  std::vector<PointCloud> clouds;
  for (const std::string& in : f.inputs) clouds.push_back(read_csv(fs::path(in), cfg.delta.value_or(1e-9)));

  Box frame;
  std::size_t dim = clouds.front().dim();
  if (f.model) {
    frame = frame_of(build_model(cfg));
  } else {
    bool first = true;
    for (const PointCloud& c : clouds) {
      for (const Point& p : c.points()) {
        for (std::size_t k = 0; k < dim; ++k) {
          frame.lo[k] = first ? p[k] : std::min(frame.lo[k], p[k]);
          frame.hi[k] = first ? p[k] : std::max(frame.hi[k], p[k]);
        }
        first = false;
      }
    }
  }
  std::vector<SvgLayer> layers;
  for (std::size_t i = 0; i < clouds.size(); ++i) layers.push_back({&clouds[i], colors[i % 5]});
  const fs::path out = f.out ? fs::path(*f.out) : fs::path(f.inputs.front()).replace_extension(".svg");
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream os(out);
  if (!os) throw ConfigError("cannot write " + out.string());
  write_svg(os, layers, frame, dim, fs::path(f.inputs.front()).filename().string());
  std::cout << "wrote " << out.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attractors of iterated function systems with choice"};
  app.require_subcommand(1);
  Flags f;

  auto* attractor = app.add_subcommand("attractor", "global attractor K; writes k.csv and k.svg");
  add_common(attractor, f);

  auto* individual = app.add_subcommand("individual", "individual attractor A_w; writes a_w.csv and a_w.svg");
  add_common(individual, f);
  individual->add_option("--strategy", f.strategies, "strategy PRE(PER), e.g. \"(10)\" or \"000(100)\"");
  individual->add_option("--burnin", f.burnin, "step budget before cycle search");
  individual->add_option("--window", f.window, "longest cycle searched for");

  auto* slices = app.add_subcommand("slices", "attractor slices over a sofic subshift");
  add_common(slices, f);
  slices->add_option("--subshift", f.subshift, "full | golden_mean | even_shift | golden_even | PATH");
  slices->add_option("--period-bound", f.period_bound, "enumerate strings with |pre| + |per| <= N (default 6)");

  auto* chaos = app.add_subcommand("chaos", "random iteration; writes chaos.csv and chaos.svg");
  add_common(chaos, f);
  chaos->add_option("--probs", f.probs, "map probabilities (default uniform)")->delimiter(',');
  chaos->add_option("--n", f.n, "total steps including burn-in (default 1000000)");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite and print a JSON summary");
  add_common(verify, f);
  verify->add_option("--only", f.only, "criterion id or tag");

  auto* render = app.add_subcommand("render", "CSV point clouds to an SVG scatter plot");
  add_common(render, f);
  render->add_option("inputs", f.inputs, "CSV files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    const RunConfig cfg = resolve(f);
    if (attractor->parsed()) return cmd_attractor(cfg);
    if (individual->parsed()) return cmd_individual(cfg);
    if (slices->parsed()) return cmd_slices(cfg);
    if (chaos->parsed()) return cmd_chaos(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (render->parsed()) return cmd_render(f, cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const AssumptionViolation& v) {
    report_violation({v.step(), v.point(), v.what()}, 3);
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kConfig;
}
