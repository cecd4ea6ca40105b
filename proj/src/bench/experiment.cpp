#include "reptensor/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "reptensor/bench/random.hpp"
#include "reptensor/embed1d.hpp"
#include "reptensor/embed2d.hpp"
#include "reptensor/error.hpp"
#include "reptensor/recognizer.hpp"

namespace reptensor::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct RealizationData {
  Tensor3 train;
  std::vector<Label> train_labels;
  Tensor3 test;
  std::vector<Label> test_labels;
};

// Vectors become d x 1 x n tensors so one classifier serves both families.
Tensor3 as_tensor(const Matrix& columns) {
  return Tensor3(columns.rows(), 1, columns.cols(),
                 std::vector<double>(columns.data(), columns.data() + columns.size()));
}

struct Task {
  std::string method;
  int realization;
};

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, const std::vector<Index>& dims, const RealizationData& data)
      : cfg_(cfg), dims_(dims), data_(data) {}

  std::vector<RealizationRecord> run(const std::string& method, int realization) {
    std::vector<RealizationRecord> out;
    const bool vec = is_vector_method(method);
    const std::string mode = vec ? "vec" : std::string(mode_name(cfg_.mode));
    for (Index d : dims_) out.push_back({method, mode, d, realization, 0.0, 0.0, false, {}});
    auto fail_all = [&](const std::string& why) {
      for (auto& r : out)
        if (!r.failed && r.fit_seconds == 0.0) mark(r, why);
    };
    try {
      if (vec) run_vector(method, out);
      else run_matrix(method, out);
    } catch (const std::exception& e) {
      fail_all(e.what());
    }
    return out;
  }

 private:
  static void mark(RealizationRecord& r, const std::string& why) {
    r.failed = true;
    r.failure = why;
    r.error = std::numeric_limits<double>::quiet_NaN();
  }

  double classify(const Tensor3& gallery_items, const Tensor3& queries) const {
    const recognizer::GallerySet gallery(gallery_items, data_.train_labels);
    const auto predicted = recognizer::classify_batch(queries, gallery, 1);
    return recognizer::error_rate(predicted, data_.test_labels);
  }

  void run_vector(const std::string& method, std::vector<RealizationRecord>& out) const {
    const auto start = Clock::now();
    embed1d::Params params;
    params.knn = cfg_.knn;
    params.t = cfg_.t;
    if (cfg_.beta) params.beta = *cfg_.beta;
    const embed1d::VectorDataset ds{data_.train.slices_as_columns(), data_.train_labels};
    const auto fit = embed1d::fit_1d(ds, embed1d::parse_method(method), dims_.back(), params);
    const double elapsed = seconds_since(start);

    const Matrix train_cols = data_.train.slices_as_columns();
    const Matrix test_cols = data_.test.slices_as_columns();
    for (auto& r : out) {
      const auto basis = fit.basis.leftCols(r.dimension);
      r.fit_seconds = elapsed;
      r.error = classify(as_tensor(basis.transpose() * train_cols), as_tensor(basis.transpose() * test_cols));
    }
  }

  void run_matrix(const std::string& method, std::vector<RealizationRecord>& out) const {
    const auto name = embed2d::parse_method(method);
    const embed2d::FitOptions opts{cfg_.max_iter, cfg_.tol};
    const auto start = Clock::now();

    std::optional<embed2d::Preprocessed> pre;
    if (cfg_.predims) pre = embed2d::pre_process_2dpca(data_.train, cfg_.predims->first, cfg_.predims->second, opts);
    const Tensor3& work = pre ? pre->reduced : data_.train;
    embed2d::GraphParams gp;
    gp.knn = cfg_.knn;
    gp.beta = cfg_.beta;
    gp.t = cfg_.t;
    const auto spec = embed2d::method_matrices(name, {work, data_.train_labels}, gp);
    const double shared = seconds_since(start);

    auto finish = [&](RealizationRecord& r, embed2d::ProjectorPair pair, double elapsed) {
      if (pre) pair = embed2d::compose(pre->projectors, pair);
      r.fit_seconds = elapsed;
      r.error = classify(embed2d::project_tensor(data_.train, pair), embed2d::project_tensor(data_.test, pair));
    };

    if (cfg_.mode == ProjectionMode::unilateral) {
      const auto full = embed2d::fit_unilateral(work, spec, embed2d::Side::right, dims_.back());
      const double elapsed = seconds_since(start);
      for (auto& r : out) {
        embed2d::ProjectorPair pair = full;
        pair.v = full.v.leftCols(r.dimension);
        finish(r, std::move(pair), elapsed);
      }
      return;
    }
    for (auto& r : out) {
      try {
        const auto cell_start = Clock::now();
        auto fit = embed2d::fit_bilateral(work, spec, r.dimension, r.dimension, opts);
        finish(r, std::move(fit.projectors), shared + seconds_since(cell_start));
      } catch (const std::exception& e) {
        mark(r, e.what());
      }
    }
  }

  const ExperimentConfig& cfg_;
  const std::vector<Index>& dims_;
  const RealizationData& data_;
};

}  // namespace

bool is_vector_method(const std::string& name) {
  try {
    embed1d::parse_method(name);
    return true;
  } catch (const ParameterError&) {
    return false;
  }
}

ResultTable aggregate(const std::vector<RealizationRecord>& records) {
  std::map<std::tuple<std::string, std::string, Index>, std::vector<const RealizationRecord*>> cells;
  for (const auto& r : records) cells[{r.method, r.mode, r.dimension}].push_back(&r);

  ResultTable table;
  for (const auto& [key, group] : cells) {
    ResultRow row;
    std::tie(row.method, row.mode, row.dimension) = key;
    double sum = 0.0;
    double seconds = 0.0;
    for (const auto* r : group) {
      if (r->failed) {
        ++row.failures;
        continue;
      }
      ++row.successes;
      sum += r->error;
      seconds += r->fit_seconds;
    }
    if (row.successes == 0) {
      row.mean_error = row.std_error = row.mean_fit_seconds = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.mean_error = sum / row.successes;
      row.mean_fit_seconds = seconds / row.successes;
      double var = 0.0;
      for (const auto* r : group)
        if (!r->failed) var += (r->error - row.mean_error) * (r->error - row.mean_error);
      row.std_error = std::sqrt(var / row.successes);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, const ImageDataset& ds) {
  if (ds.size() == 0) throw DataError("dataset is empty");
  if (cfg.methods.empty()) throw ParameterError("no methods configured");
  for (const auto& m : cfg.methods)
    if (!is_vector_method(m)) embed2d::parse_method(m);
  const auto dims = resolved_dims(cfg, ds.rows(), ds.cols());

  std::vector<RealizationData> data;
  for (int r = 0; r < cfg.realizations; ++r) {
    const auto s = split(ds.labels, cfg.train_per_class, realization_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    data.push_back({stack(ds, s.train), labels_of(ds, s.train), stack(ds, s.test), labels_of(ds, s.test)});
  }

  std::vector<Task> tasks;
  for (const auto& m : cfg.methods)
    for (int r = 0; r < cfg.realizations; ++r) tasks.push_back({m, r});
  std::vector<std::vector<RealizationRecord>> results(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      Runner runner(cfg, dims, data[static_cast<std::size_t>(t.realization)]);
      results[i] = runner.run(t.method, t.realization);
    }
  };
  const auto workers = std::clamp<std::size_t>(static_cast<std::size_t>(cfg.jobs), 1, tasks.size());
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  ExperimentOutput out;
  for (auto& chunk : results)
    for (auto& r : chunk) out.records.push_back(std::move(r));
  std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.method, a.mode, a.dimension, a.realization) <
           std::tie(b.method, b.mode, b.dimension, b.realization);
  });
  out.table = aggregate(out.records);
  return out;
}

}  // namespace reptensor::bench
