#include "reptensor/bench/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "reptensor/error.hpp"
#include "reptensor/bench/results.hpp"

namespace reptensor::bench {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto p = s.find(sep);
    const auto item = trim(s.substr(0, p));
    if (!item.empty()) out.push_back(item);
    if (p == std::string_view::npos) return out;
    s.remove_prefix(p + 1);
  }
}

[[noreturn]] void bad(std::string_view key, std::string_view value, const char* expected) {
  throw ParameterError("setting '" + std::string(key) + "': '" + std::string(value) + "' is not " + expected);
}

template <class T>
T parse_int(std::string_view key, std::string_view value) {
  value = trim(value);
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad(key, value, "an integer");
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  value = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad(key, value, "a number");
  return out;
}

Shape parse_shape(std::string_view key, std::string_view value) {
  const auto parts = split_list(value, 'x');
  if (parts.size() != 2) bad(key, value, "a shape ROWSxCOLS");
  const Shape s{parse_int<Index>(key, parts[0]), parse_int<Index>(key, parts[1])};
  if (s.first < 1 || s.second < 1) bad(key, value, "a positive shape");
  return s;
}

std::string join_dims(const std::vector<Index>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? "," : "") + std::to_string(dims[i]);
  return out;
}

std::string shape_text(const std::optional<Shape>& s) {
  return s ? std::to_string(s->first) + "x" + std::to_string(s->second) : "";
}

}  // namespace

std::string_view mode_name(ProjectionMode m) { return m == ProjectionMode::unilateral ? "uni" : "bi"; }

void apply_setting(ExperimentConfig& cfg, std::string_view raw_key, std::string_view value) {
  std::string key(trim(raw_key));
  std::replace(key.begin(), key.end(), '_', '-');
  value = trim(value);

  if (key == "dataset") {
    cfg.dataset = value;
  } else if (key == "resize") {
    cfg.resize = value.empty() ? std::nullopt : std::optional<Shape>(parse_shape(key, value));
  } else if (key == "method" || key == "methods") {
    cfg.methods.clear();
    for (auto m : split_list(value, ',')) cfg.methods.emplace_back(m);
    if (cfg.methods.empty()) bad(key, value, "a method list");
  } else if (key == "mode") {
    if (value == "uni" || value == "unilateral") cfg.mode = ProjectionMode::unilateral;
    else if (value == "bi" || value == "bilateral") cfg.mode = ProjectionMode::bilateral;
    else bad(key, value, "uni or bi");
  } else if (key == "dims") {
    cfg.dims.clear();
    for (auto d : split_list(value, ',')) {
      cfg.dims.push_back(parse_int<Index>(key, d));
      if (cfg.dims.back() < 1) bad(key, value, "a list of positive dimensions");
    }
  } else if (key == "train-per-class") {
    cfg.train_per_class = parse_int<Index>(key, value);
    if (cfg.train_per_class < 1) bad(key, value, "positive");
  } else if (key == "realizations") {
    cfg.realizations = parse_int<int>(key, value);
    if (cfg.realizations < 1) bad(key, value, "positive");
  } else if (key == "seed") {
    cfg.seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "beta") {
    cfg.beta = value.empty() ? std::nullopt : std::optional<double>(parse_real(key, value));
  } else if (key == "knn") {
    cfg.knn = parse_int<Index>(key, value);
    if (cfg.knn < 1) bad(key, value, "positive");
  } else if (key == "t") {
    cfg.t = value.empty() ? std::nullopt : std::optional<double>(parse_real(key, value));
    if (cfg.t && !(*cfg.t > 0.0)) bad(key, value, "positive");
  } else if (key == "predims") {
    cfg.predims = value.empty() ? std::nullopt : std::optional<Shape>(parse_shape(key, value));
  } else if (key == "max-iter") {
    cfg.max_iter = parse_int<int>(key, value);
    if (cfg.max_iter < 1) bad(key, value, "positive");
  } else if (key == "tol") {
    cfg.tol = parse_real(key, value);
    if (!(cfg.tol >= 0.0)) bad(key, value, "non-negative");
  } else if (key == "jobs") {
    cfg.jobs = parse_int<int>(key, value);
    if (cfg.jobs < 1) bad(key, value, "positive");
  } else if (key == "out") {
    cfg.out = value;
  } else {
    throw ParameterError("unknown setting '" + key + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig cfg) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream f(path);
  if (!f) throw IoError(path.string() + ": cannot read config");
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_config(text, std::move(base));
}

std::vector<Index> resolved_dims(const ExperimentConfig& cfg, Index rows, Index cols) {
  const Index side = cfg.mode == ProjectionMode::unilateral ? cols : std::min(rows, cols);
  std::vector<Index> dims = cfg.dims;
  if (dims.empty())
    for (Index d = 2; d <= std::min<Index>(side, 20); d += 2) dims.push_back(d);
  if (dims.empty()) dims.push_back(1);
  for (Index d : dims)
    if (d > side)
      throw ParameterError("dimension " + std::to_string(d) + " exceeds the image side " + std::to_string(side));
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  return dims;
}

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& cfg) {
  std::string methods;
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) methods += (i ? "," : "") + cfg.methods[i];
  return {
      {"dataset", cfg.dataset},
      {"resize", shape_text(cfg.resize)},
      {"methods", methods},
      {"mode", std::string(mode_name(cfg.mode))},
      {"dims", join_dims(cfg.dims)},
      {"train-per-class", std::to_string(cfg.train_per_class)},
      {"realizations", std::to_string(cfg.realizations)},
      {"seed", std::to_string(cfg.seed)},
      {"beta", cfg.beta ? format_number(*cfg.beta) : "default"},
      {"knn", std::to_string(cfg.knn)},
      {"t", cfg.t ? format_number(*cfg.t) : "mean squared label-edge length"},
      {"predims", shape_text(cfg.predims)},
      {"max-iter", std::to_string(cfg.max_iter)},
      {"tol", format_number(cfg.tol)},
      {"jobs", std::to_string(cfg.jobs)},
      {"out", cfg.out},
  };
}

}  // namespace reptensor::bench
