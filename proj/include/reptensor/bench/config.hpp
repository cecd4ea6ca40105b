#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reptensor/bench/dataset.hpp"

namespace reptensor::bench {

enum class ProjectionMode { unilateral, bilateral };

struct ExperimentConfig {
  std::string dataset;
  std::optional<Shape> resize;
  std::vector<std::string> methods{"2D-PCA"};
  ProjectionMode mode = ProjectionMode::unilateral;
  std::vector<Index> dims;  // empty: 2, 4, ... up to the image side
  Index train_per_class = 5;
  int realizations = 20;
  std::uint64_t seed = 0;
  std::optional<double> beta;  // per-method default when unset
  Index knn = 6;
  std::optional<double> t;
  std::optional<Shape> predims;  // 2D-PCA pre-reduction of the matrix methods
  int max_iter = 5;
  double tol = 1e-6;
  int jobs = 1;
  std::string out = "results";
};

/// Applies one `key = value` setting. Keys mirror the command-line flags
/// (train-per-class, max-iter, ...); underscores are accepted for dashes.
/// Throws ParameterError on unknown keys or malformed values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Flat key = value text; '#' starts a comment, blank lines are ignored.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

// Dimension sweep after defaulting, checked against the image shape.
std::vector<Index> resolved_dims(const ExperimentConfig& cfg, Index rows, Index cols);

// All settings as (key, canonical value) pairs, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& cfg);

std::string_view mode_name(ProjectionMode m);

}  // namespace reptensor::bench
