#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "reptensor/tensor.hpp"

namespace reptensor::bench {

// Decodes an ASCII (P2) or binary (P5) graymap; maxval up to 65535, 16-bit
// samples are big-endian. Pixels are scaled to [0, 1]. `name` only feeds
// error messages.
Matrix decode_pgm(std::string_view bytes, const std::string& name = "<memory>");
Matrix read_pgm(const std::filesystem::path& path);

// Binary graymap; values are clamped to [0, 1] and quantized to maxval.
void write_pgm(const std::filesystem::path& path, const Matrix& image, int maxval = 255);

}  // namespace reptensor::bench
