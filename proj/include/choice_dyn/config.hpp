#pragma once

// Run configuration shared by the command line tool and the Python module.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "choice_dyn/model.hpp"
#include "choice_dyn/models.hpp"

namespace choice_dyn {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string model = "malaria";
  MalariaParams pset0 = kPset0;
  MalariaParams pset1 = kPset1;
  bool pset0_given = false;
  bool pset1_given = false;
  std::size_t gestalt_depth = 12;
  double line_radius = 1e6;
  /// Keep only these maps (renumbered); empty keeps all.
  std::vector<std::size_t> maps;

  std::optional<double> delta;  // model default when unset
  std::optional<double> tol;    // delta when unset
  std::size_t maxiter = 10000;

  std::vector<std::string> strategies;
  std::string subshift = "full";
  std::size_t period_bound = 6;
  std::optional<std::size_t> tail_burnin;
  std::optional<std::size_t> tail_window;

  std::vector<double> probs;
  std::size_t chaos_steps = 1'000'000;
  std::size_t chaos_burnin = 1000;
  std::optional<Point> x0;
  std::string observable = "x0";

  std::filesystem::path out = "out";
  std::uint64_t seed = 1;
  std::string only;
};

/// Merges a JSON document {"model": ..., "params": {...}, "delta": ...,
/// "tol": ..., ...} into `base`. Throws ConfigError.
RunConfig parse_config_json(std::string_view text, RunConfig base = {});
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

ModelSpec build_model(const RunConfig& cfg);
/// Explicit delta, or the model's default for the given command.
double effective_delta(const RunConfig& cfg, std::string_view command);
double effective_tol(const RunConfig& cfg, std::string_view command);
/// Checks ranges and model compatibility. Throws ConfigError.
void validate(const RunConfig& cfg, std::string_view command);

}  // namespace choice_dyn
