#pragma once

#include <string>
#include <vector>

#include "reptensor/bench/config.hpp"
#include "reptensor/bench/dataset.hpp"

namespace reptensor::bench {

// Matrix methods run as "uni" (U = I, V has d columns) or "bi" (d x d);
// vector methods always run as "vec".
struct RealizationRecord {
  std::string method;
  std::string mode;
  Index dimension = 0;
  int realization = 0;
  double error = 0.0;
  double fit_seconds = 0.0;
  bool failed = false;
  std::string failure;
};

struct ResultRow {
  std::string method;
  std::string mode;
  Index dimension = 0;
  double mean_error = 0.0;  // over successful realizations; NaN when none
  double std_error = 0.0;   // population standard deviation
  double mean_fit_seconds = 0.0;
  int successes = 0;
  int failures = 0;
};

struct ResultTable {
  std::vector<ResultRow> rows;  // sorted by (method, mode, dimension)
};

struct ExperimentOutput {
  ResultTable table;
  std::vector<RealizationRecord> records;  // sorted like the rows, then realization
};

/// Runs every (method, dimension, realization) cell. Realization r uses the
/// split seeded by realization_seed(cfg.seed, r) for every method. A cell
/// whose fit throws is recorded as failed and the run continues. Up to
/// cfg.jobs threads work on (method, realization) tasks.
///
/// In the one-sided and vector modes a single fit at the largest dimension
/// serves every dimension: the bases are nested, so truncating columns is
/// identical to refitting. Its wall-clock time is reported for each of them.
ExperimentOutput run_experiment(const ExperimentConfig& cfg, const ImageDataset& ds);

bool is_vector_method(const std::string& name);

// Aggregates records into sorted rows.
ResultTable aggregate(const std::vector<RealizationRecord>& records);

}  // namespace reptensor::bench
