#ifndef DINV_IMAGE_H_
#define DINV_IMAGE_H_

#include <string>
#include <vector>

namespace dinv {

// Row-major grayscale image. x runs rightward along a row, y downward; the
// origin is the upper-left pixel.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  // Reflect boundary: ... 2 1 0 1 2 ... (edge pixel not repeated).
  double at_reflect(int x, int y) const;
  // Bilinear interpolation with reflect boundary.
  double bilinear(double x, double y) const;

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Maps any integer index into [0, n) by mirror reflection about the edge pixels.
int reflect_index(int i, int n);

// PGM in: P5 (8 or 16 bit) and P2. Samples are scaled to [0, 1] by maxval.
// Throws std::runtime_error on unreadable or malformed files.
Image read_pgm(const std::string& path);

enum class PgmFormat { kBinary8, kBinary16, kPlain };

// Values are clamped to [0, 1] and quantized to maxval (255 or 65535).
void write_pgm(const std::string& path, const Image& img, PgmFormat format = PgmFormat::kBinary8);

// Rescales to [0, 1] by (v - min) / (max - min); a flat image maps to 0.
Image minmax_normalize(const Image& img, double* min_out = nullptr, double* max_out = nullptr);

}  // namespace dinv

#endif  // DINV_IMAGE_H_
