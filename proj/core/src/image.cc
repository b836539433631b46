#include "dinv/image.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dinv {

Image::Image(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("image size must be positive, got " + std::to_string(width) + "x" +
                                std::to_string(height));
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

double Image::at_reflect(int x, int y) const { return at(reflect_index(x, width_), reflect_index(y, height_)); }

double Image::bilinear(double x, double y) const {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const double ax = x - fx;
  const double ay = y - fy;
  const double v00 = at_reflect(x0, y0);
  const double v10 = at_reflect(x0 + 1, y0);
  const double v01 = at_reflect(x0, y0 + 1);
  const double v11 = at_reflect(x0 + 1, y0 + 1);
  return (1 - ay) * ((1 - ax) * v00 + ax * v10) + ay * ((1 - ax) * v01 + ax * v11);
}

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string token(std::istream& in) {
  std::string t;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!t.empty()) break;
      continue;
    }
    t.push_back(static_cast<char>(c));
  }
  return t;
}

int header_int(std::istream& in, const std::string& path, const char* what) {
  const std::string t = token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(t, &used);
    if (used != t.size() || v <= 0) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": bad PGM " + what + " '" + t + "'");
  }
}

}  // namespace

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  const std::string magic = token(in);
  if (magic != "P5" && magic != "P2") throw std::runtime_error(path + ": not a PGM file (magic '" + magic + "')");
  const int w = header_int(in, path, "width");
  const int h = header_int(in, path, "height");
  const int maxval = header_int(in, path, "maxval");
  if (maxval > 65535) throw std::runtime_error(path + ": maxval above 65535");
  Image img(w, h);
  auto& d = img.data();
  if (magic == "P5") {
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(d.size() * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw std::runtime_error(path + ": truncated pixel data");
    for (std::size_t k = 0; k < d.size(); ++k) {
      const int v = bytes == 1 ? raw[k] : (raw[2 * k] << 8) | raw[2 * k + 1];
      d[k] = static_cast<double>(v) / maxval;
    }
  } else {
    for (auto& v : d) {
      const std::string t = token(in);
      if (t.empty()) throw std::runtime_error(path + ": truncated pixel data");
      v = static_cast<double>(std::stoi(t)) / maxval;
    }
  }
  return img;
}

void write_pgm(const std::string& path, const Image& img, PgmFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const int maxval = format == PgmFormat::kBinary8 ? 255 : 65535;
  auto quant = [&](double v) {
    return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
  };
  out << (format == PgmFormat::kPlain ? "P2" : "P5") << "\n" << img.width() << " " << img.height() << "\n"
      << maxval << "\n";
  if (format == PgmFormat::kPlain) {
    int col = 0;
    for (double v : img.data()) {
      out << quant(v) << (++col % 16 == 0 ? "\n" : " ");
    }
    out << "\n";
  } else {
    std::vector<unsigned char> raw;
    raw.reserve(img.data().size() * (maxval > 255 ? 2 : 1));
    for (double v : img.data()) {
      const int q = quant(v);
      if (maxval > 255) raw.push_back(static_cast<unsigned char>(q >> 8));
      raw.push_back(static_cast<unsigned char>(q & 255));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

Image minmax_normalize(const Image& img, double* min_out, double* max_out) {
  const auto [lo, hi] = std::minmax_element(img.data().begin(), img.data().end());
  const double mn = *lo, mx = *hi;
  if (min_out) *min_out = mn;
  if (max_out) *max_out = mx;
  Image out = img;
  for (auto& v : out.data()) v = mx > mn ? (v - mn) / (mx - mn) : 0.0;
  return out;
}

}  // namespace dinv
