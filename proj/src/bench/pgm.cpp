#include "reptensor/bench/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "reptensor/error.hpp"

namespace reptensor::bench {

namespace {

class Reader {
 public:
  Reader(std::string_view bytes, const std::string& name) : bytes_(bytes), name_(name) {}

  [[noreturn]] void fail(const std::string& why) const { throw DataError(name_ + ": " + why); }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  long number(const char* what) {
    skip_space_and_comments();
    long value = 0;
    const char* first = bytes_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, bytes_.data() + bytes_.size(), value);
    if (ec != std::errc() || ptr == first) fail(std::string("expected ") + what);
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::string_view take(std::size_t n) {
    if (bytes_.size() - pos_ < n) fail("truncated pixel data");
    const auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
      fail("missing whitespace after header");
    ++pos_;
  }

 private:
  std::string_view bytes_;
  const std::string& name_;
  std::size_t pos_ = 0;
};

}  // namespace

Matrix decode_pgm(std::string_view bytes, const std::string& name) {
  Reader in(bytes, name);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    in.fail("not a P2/P5 graymap");
  const bool binary = bytes[1] == '5';
  in.take(2);

  const long width = in.number("width");
  const long height = in.number("height");
  const long maxval = in.number("maxval");
  if (width < 1 || height < 1) in.fail("non-positive image size");
  if (maxval < 1 || maxval > 65535) in.fail("maxval outside [1, 65535]");

  Matrix image(height, width);
  auto store = [&](long r, long c, long v) {
    if (v < 0 || v > maxval) in.fail("sample " + std::to_string(v) + " exceeds maxval");
    image(r, c) = static_cast<double>(v) / static_cast<double>(maxval);
  };

  if (binary) {
    in.single_whitespace();
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    const auto raw = in.take(static_cast<std::size_t>(width * height) * bpp);
    std::size_t p = 0;
    for (long r = 0; r < height; ++r)
      for (long c = 0; c < width; ++c) {
        long v = static_cast<unsigned char>(raw[p++]);
        if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(raw[p++]);
        store(r, c, v);
      }
  } else {
    for (long r = 0; r < height; ++r)
      for (long c = 0; c < width; ++c) store(r, c, in.number("pixel value"));
  }
  return image;
}

Matrix read_pgm(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError(path.string() + ": cannot open");
  const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_pgm(bytes, path.string());
}

void write_pgm(const std::filesystem::path& path, const Matrix& image, int maxval) {
  if (maxval < 1 || maxval > 65535) throw ParameterError("maxval outside [1, 65535]");
  std::ostringstream os;
  os << "P5\n" << image.cols() << ' ' << image.rows() << '\n' << maxval << '\n';
  for (Index r = 0; r < image.rows(); ++r)
    for (Index c = 0; c < image.cols(); ++c) {
      const double v = std::clamp(image(r, c), 0.0, 1.0);
      const auto q = static_cast<unsigned>(std::lround(v * maxval));
      if (maxval > 255) os.put(static_cast<char>(q >> 8));
      os.put(static_cast<char>(q & 0xFF));
    }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string() + ": cannot open for writing");
  f << os.str();
  if (!f) throw IoError(path.string() + ": write failed");
}

}  // namespace reptensor::bench
