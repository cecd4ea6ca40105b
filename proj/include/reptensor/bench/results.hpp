#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "reptensor/bench/config.hpp"
#include "reptensor/bench/dataset.hpp"
#include "reptensor/bench/experiment.hpp"

namespace reptensor::bench {

inline constexpr std::string_view kCsvHeader = "method,mode,dimension,mean_error,std_error,mean_fit_seconds";
inline constexpr std::string_view kVersion = "0.1.0";

// Shortest round-trip-safe text with 6 significant digits ("nan" for NaN).
std::string format_number(double v);

std::string format_csv(const ResultTable& table);
ResultTable parse_csv(std::string_view text);

void write_text(const std::filesystem::path& path, std::string_view text);

void write_csv(const std::filesystem::path& path, const ResultTable& table);
// One "plot_<method>_<mode>.dat" file per series: "dimension mean_error std_error".
std::vector<std::filesystem::path> write_plotdata(const std::filesystem::path& dir, const ResultTable& table);
void write_realizations(const std::filesystem::path& path, const std::vector<RealizationRecord>& records);
void write_metadata(const std::filesystem::path& path, const ExperimentConfig& cfg, const ImageDataset& ds,
                    const ExperimentOutput& out);

// Writes results.csv, realizations.csv, metadata.json and the plot series.
void emit_all(const std::filesystem::path& dir, const ExperimentConfig& cfg, const ImageDataset& ds,
              const ExperimentOutput& out);

}  // namespace reptensor::bench
