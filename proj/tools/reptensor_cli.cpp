// Command-line front end: fit, eval, bench, sweep and a synthetic dataset
// generator. Exit codes: 0 ok, 1 usage, 2 data, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "reptensor/bench/config.hpp"
#include "reptensor/bench/dataset.hpp"
#include "reptensor/bench/experiment.hpp"
#include "reptensor/bench/random.hpp"
#include "reptensor/bench/results.hpp"
#include "reptensor/bench/synthetic.hpp"
#include "reptensor/embed1d.hpp"
#include "reptensor/embed2d.hpp"
#include "reptensor/error.hpp"

namespace fs = std::filesystem;
using namespace reptensor;
using namespace reptensor::bench;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Flag values are kept as text and applied on top of the config file.
struct Flags {
  std::string config;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "key = value config file");
    const std::pair<const char*, const char*> options[] = {
        {"dataset", "dataset root (one subdirectory per class)"},
        {"method", "method name or comma list"},
        {"mode", "uni|bi"},
        {"dims", "dimension list a,b,c"},
        {"train-per-class", "training images per class"},
        {"realizations", "number of random splits"},
        {"seed", "master seed"},
        {"beta", "repulsion strength"},
        {"knn", "neighbours in the affinity graph"},
        {"t", "Gaussian width"},
        {"resize", "ROWSxCOLS block-average resize"},
        {"predims", "ROWSxCOLS 2D-PCA pre-reduction"},
        {"max-iter", "alternating iterations"},
        {"tol", "relative convergence tolerance"},
        {"out", "output directory"},
        {"jobs", "worker threads"},
    };
    for (const auto& [key, help] : options) app->add_option(std::string("--") + key, values[key], help);
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config(config);
    for (const auto& [key, value] : values)
      if (!value.empty()) apply_setting(cfg, key, value);
    if (cfg.dataset.empty()) throw ParameterError("no dataset given (--dataset or config 'dataset')");
    return cfg;
  }
};

ImageDataset load(const ExperimentConfig& cfg) { return load_dataset(cfg.dataset, cfg.resize); }

void print_table(const ResultTable& table) { std::cout << format_csv(table); }

void write_matrix(const fs::path& path, const Matrix& m) {
  std::string out;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out += (c ? "," : "") + format_number(m(r, c));
    out += '\n';
  }
  write_text(path, out);
}

int run_fit(const ExperimentConfig& cfg) {
  const auto ds = load(cfg);
  const auto s = split(ds.labels, cfg.train_per_class, realization_seed(cfg.seed, 0));
  const auto train = stack(ds, s.train);
  const auto labels = labels_of(ds, s.train);
  const std::string& method = cfg.methods.front();
  const Index d = resolved_dims(cfg, ds.rows(), ds.cols()).back();
  fs::create_directories(cfg.out);

  if (is_vector_method(method)) {
    embed1d::Params params;
    params.knn = cfg.knn;
    params.t = cfg.t;
    if (cfg.beta) params.beta = *cfg.beta;
    const auto fit = embed1d::fit_1d({train.slices_as_columns(), labels}, embed1d::parse_method(method), d, params);
    write_matrix(fs::path(cfg.out) / "basis.csv", fit.basis);
    std::cout << method << " vec d=" << d << " basis written to " << cfg.out << "\n";
    return kOk;
  }

  embed2d::GraphParams gp;
  gp.knn = cfg.knn;
  gp.beta = cfg.beta;
  gp.t = cfg.t;
  const auto name = embed2d::parse_method(method);
  const auto spec = embed2d::method_matrices(name, {train, labels}, gp);
  embed2d::ProjectorPair pair;
  if (cfg.mode == ProjectionMode::unilateral) {
    pair = embed2d::fit_unilateral(train, spec, embed2d::Side::right, d);
  } else {
    const auto fit = embed2d::fit_bilateral(train, spec, d, d, {cfg.max_iter, cfg.tol});
    pair = fit.projectors;
    std::cout << "iterations " << fit.trace.iterations << (fit.trace.converged ? " (converged)" : "")
              << ", ridge shifts " << fit.trace.ridge_shifts << "\nobjective after each half-step:";
    for (double f : fit.trace.objectives) std::cout << ' ' << format_number(f);
    std::cout << '\n';
  }
  write_matrix(fs::path(cfg.out) / "U.csv", pair.u);
  write_matrix(fs::path(cfg.out) / "V.csv", pair.v);
  std::cout << method << ' ' << mode_name(cfg.mode) << " d=" << d << " projectors written to " << cfg.out << "\n";
  return kOk;
}

int run_eval(ExperimentConfig cfg) {
  cfg.realizations = 1;
  const auto ds = load(cfg);
  print_table(run_experiment(cfg, ds).table);
  return kOk;
}

int run_bench(const ExperimentConfig& cfg, bool with_series) {
  const auto ds = load(cfg);
  const auto out = run_experiment(cfg, ds);
  const fs::path dir = cfg.out;
  fs::create_directories(dir);
  if (with_series) {
    emit_all(dir, cfg, ds, out);
  } else {
    write_csv(dir / "results.csv", out.table);
    write_metadata(dir / "metadata.json", cfg, ds, out);
  }
  print_table(out.table);
  int failed = 0;
  for (const auto& r : out.table.rows) failed += r.failures;
  if (failed > 0) std::cerr << failed << " fit(s) failed; see realizations.csv or metadata.json\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supervised image-as-matrix projections with repulsion graphs"};
  app.require_subcommand(1);

  Flags flags;
  auto* fit = app.add_subcommand("fit", "fit one method on the first split and write its projectors");
  auto* eval = app.add_subcommand("eval", "fit and classify on the first split");
  auto* bench = app.add_subcommand("bench", "run all realizations; write results.csv and metadata.json");
  auto* sweep = app.add_subcommand("sweep", "bench plus per-realization log and plot series");
  for (auto* sub : {fit, eval, bench, sweep}) flags.attach(sub);

  SyntheticParams synth;
  std::string synth_out;
  auto* generate = app.add_subcommand("generate", "write the synthetic confusable-class dataset as graymaps");
  generate->add_option("--out", synth_out, "output directory")->required();
  generate->add_option("--seed", synth.seed, "generator seed");
  generate->add_option("--classes", synth.classes, "number of classes");
  generate->add_option("--per-class", synth.per_class, "images per class");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (generate->parsed()) {
      write_dataset(make_synthetic(synth), synth_out);
      return kOk;
    }
    const auto cfg = flags.resolve();
    if (fit->parsed()) return run_fit(cfg);
    if (eval->parsed()) return run_eval(cfg);
    return run_bench(cfg, sweep->parsed());
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ShapeError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kData;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
