#include "reptensor/bench/results.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "reptensor/error.hpp"

namespace reptensor::bench {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto p = line.find(',');
    out.push_back(line.substr(0, p));
    if (p == std::string_view::npos) return out;
    line.remove_prefix(p + 1);
  }
}

double parse_number(std::string_view s, int line_no) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError("csv line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
  return v;
}

std::string safe_name(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  return s;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 6);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string format_csv(const ResultTable& table) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : table.rows) {
    out += r.method + ',' + r.mode + ',' + std::to_string(r.dimension) + ',' + format_number(r.mean_error) + ',' +
           format_number(r.std_error) + ',' + format_number(r.mean_fit_seconds) + '\n';
  }
  return out;
}

ResultTable parse_csv(std::string_view text) {
  ResultTable table;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (++line_no == 1) {
      if (line != kCsvHeader) throw DataError("csv header mismatch");
      continue;
    }
    if (line.empty()) continue;
    const auto f = fields(line);
    if (f.size() != 6) throw DataError("csv line " + std::to_string(line_no) + ": expected 6 fields");
    ResultRow row;
    row.method = f[0];
    row.mode = f[1];
    row.dimension = static_cast<Index>(parse_number(f[2], line_no));
    row.mean_error = parse_number(f[3], line_no);
    row.std_error = parse_number(f[4], line_no);
    row.mean_fit_seconds = parse_number(f[5], line_no);
    table.rows.push_back(std::move(row));
  }
  if (line_no == 0) throw DataError("csv is empty");
  return table;
}

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string() + ": cannot open for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError(path.string() + ": write failed");
}

void write_csv(const fs::path& path, const ResultTable& table) { write_text(path, format_csv(table)); }

std::vector<fs::path> write_plotdata(const fs::path& dir, const ResultTable& table) {
  std::vector<fs::path> written;
  std::string current;
  std::string body;
  auto flush = [&] {
    if (current.empty()) return;
    written.push_back(dir / ("plot_" + current + ".dat"));
    write_text(written.back(), body);
  };
  for (const auto& r : table.rows) {
    const std::string key = safe_name(r.method) + "_" + r.mode;
    if (key != current) {
      flush();
      current = key;
      body = "# " + r.method + " (" + r.mode + ")\n# dimension mean_error std_error\n";
    }
    body += std::to_string(r.dimension) + ' ' + format_number(r.mean_error) + ' ' + format_number(r.std_error) + '\n';
  }
  flush();
  return written;
}

void write_realizations(const fs::path& path, const std::vector<RealizationRecord>& records) {
  std::string out = "method,mode,dimension,realization,error,fit_seconds,status\n";
  for (const auto& r : records) {
    std::string status = r.failed ? "failed: " + r.failure : "ok";
    for (char& c : status)
      if (c == ',' || c == '\n') c = ';';
    out += r.method + ',' + r.mode + ',' + std::to_string(r.dimension) + ',' + std::to_string(r.realization) + ',' +
           format_number(r.error) + ',' + format_number(r.fit_seconds) + ',' + status + '\n';
  }
  write_text(path, out);
}

void write_metadata(const fs::path& path, const ExperimentConfig& cfg, const ImageDataset& ds,
                    const ExperimentOutput& out) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  for (const auto& [k, v] : describe(cfg)) j["config"][k] = v;
  j["config"]["dims"] = resolved_dims(cfg, ds.rows(), ds.cols());
  j["dataset"] = {{"name", ds.name},
                  {"images", ds.size()},
                  {"classes", ds.class_names.size()},
                  {"rows", ds.rows()},
                  {"cols", ds.cols()}};
  j["random"] = {{"generator", "SplitMix64"},
                 {"realization_seed", "mix64(seed ^ mix64(realization + 0x9E3779B97F4A7C15))"},
                 {"split", "per class in label order, Fisher-Yates over dataset order, first n_train train"}};
  j["std_error"] = "population standard deviation over successful realizations";
  j["graphs"] = {{"heat_t", "mean squared label-edge length of the training split unless set"},
                 {"repulsion_t", "same t as the affinity weights"},
                 {"points", "vectorized images; vector methods use their PCA-reduced points"}};
  auto& cells = j["cells"] = nlohmann::ordered_json::array();
  for (const auto& r : out.table.rows)
    cells.push_back({{"method", r.method},
                     {"mode", r.mode},
                     {"dimension", r.dimension},
                     {"successes", r.successes},
                     {"failures", r.failures}});
  write_text(path, j.dump(2) + "\n");
}

void emit_all(const fs::path& dir, const ExperimentConfig& cfg, const ImageDataset& ds, const ExperimentOutput& out) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string() + ": " + ec.message());
  write_csv(dir / "results.csv", out.table);
  write_realizations(dir / "realizations.csv", out.records);
  write_metadata(dir / "metadata.json", cfg, ds, out);
  write_plotdata(dir, out.table);
}

}  // namespace reptensor::bench
