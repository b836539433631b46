#include "dinv/jet_estimation.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "dinv/parallel.h"

namespace dinv {

StandardizedPatch standardize_patch(const Image& patch) {
  StandardizedPatch out{patch, false};
  const auto& d = patch.data();
  if (d.empty()) return out;
  double mean = 0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(d.size());
  double var = 0;
  for (double v : d) var += (v - mean) * (v - mean);
  var /= static_cast<double>(d.size());
  auto& o = out.patch.data();
  // The rounded mean of a constant patch need not equal its value, so test
  // constancy directly rather than trusting var == 0.
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  if (*lo == *hi || !(var > 0)) {
    std::fill(o.begin(), o.end(), 0.0);
    out.degenerate = true;
    return out;
  }
  const double sd = std::sqrt(var);
  for (std::size_t k = 0; k < d.size(); ++k) o[k] = (d[k] - mean) / sd;
  return out;
}

Jet local_jet(const Image& img, int x0, int y0, const KernelStack& stack, Padding padding) {
  const int r = stack.radius();
  const int n = stack.max_order();
  if (n < 1) throw std::invalid_argument("kernel stack must reach order 1");
  if (x0 < 0 || y0 < 0 || x0 >= img.width() || y0 >= img.height())
    throw std::invalid_argument("jet point lies outside the image");
  if (padding == Padding::kNone && (x0 - r < 0 || y0 - r < 0 || x0 + r >= img.width() || y0 + r >= img.height()))
    throw std::invalid_argument("kernel footprint (radius " + std::to_string(r) + ") overflows the image at (" +
                                std::to_string(x0) + ", " + std::to_string(y0) + ")");
  const double c = img.at(x0, y0);
  const int size = stack.size();
  // rows[i][v]: sum over u of (f(x0-u, y0-(v-r)) - c) k_i(u)
  std::vector<std::vector<double>> rows(n + 1, std::vector<double>(size));
  std::vector<double> line(size);
  for (int v = 0; v < size; ++v) {
    const int y = y0 - (v - r);
    for (int u = 0; u < size; ++u) {
      const int x = x0 - (u - r);
      line[u] = (padding == Padding::kNone ? img.at(x, y) : img.at_reflect(x, y)) - c;
    }
    for (int i = 0; i <= n; ++i) {
      const auto& k = stack.taps(i);
      double s = 0;
      for (int u = 0; u < size; ++u) s += line[u] * k[u];
      rows[i][v] = s;
    }
  }
  Jet jet(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      if (i + j == 0) continue;
      const auto& k = stack.taps(j);
      double s = 0;
      for (int v = 0; v < size; ++v) s += rows[i][v] * k[v];
      jet(i, j) = s;
    }
  return jet;
}

FeatureEvaluator::FeatureEvaluator(const Catalog& catalog, std::vector<int> ids) : ids_(std::move(ids)) {
  for (int id : ids_) {
    const auto& e = catalog.entry(id);
    compiled_.emplace_back(e.polynomial);
    max_order_ = std::max(max_order_, e.order);
  }
}

std::vector<double> FeatureEvaluator::operator()(const Jet& jet) const {
  std::vector<double> out(compiled_.size());
  for (std::size_t k = 0; k < compiled_.size(); ++k) out[k] = compiled_[k](jet);
  return out;
}

nlohmann::json FeatureVector::to_json() const {
  return {{"ids", ids}, {"sigmas", sigmas}, {"values", values}, {"degenerate", degenerate}};
}

FeatureVector feature_vector(const Image& patch, const FeatureEvaluator& eval, const std::vector<double>& sigmas,
                             int kernel_size) {
  if (patch.empty()) throw std::invalid_argument("empty patch");
  if (sigmas.empty()) throw std::invalid_argument("no sigma given");
  const auto sp = standardize_patch(patch);
  FeatureVector fv;
  fv.ids = eval.ids();
  fv.sigmas = sigmas;
  fv.degenerate = sp.degenerate;
  const int cx = (patch.width() - 1) / 2;
  const int cy = (patch.height() - 1) / 2;
  for (double s : sigmas) {
    const int size = kernel_size > 0 ? kernel_size : default_kernel_size(s);
    const KernelStack stack(s, size, kMaxJetOrder);
    const auto v = eval(local_jet(sp.patch, cx, cy, stack, Padding::kReflect));
    fv.values.insert(fv.values.end(), v.begin(), v.end());
  }
  return fv;
}

FeatureVector feature_vector(const Image& patch, const SetDescriptor& set, const std::vector<double>& sigmas,
                             int kernel_size) {
  return feature_vector(patch, FeatureEvaluator(default_catalog(), set.member_ids), sigmas, kernel_size);
}

std::vector<Jet> jet_field(const Image& img, const KernelStack& stack, int threads) {
  const int w = img.width(), h = img.height();
  const int n = stack.max_order();
  const int r = stack.radius();
  const int size = stack.size();
  if (n < 1) throw std::invalid_argument("kernel stack must reach order 1");
  // Horizontal pass: horiz[i][y*w+x] = sum_u f(x-u, y) k_i(u).
  std::vector<std::vector<double>> horiz(n + 1, std::vector<double>(static_cast<std::size_t>(w) * h));
  parallel_for(static_cast<std::size_t>(h), threads, [&](std::size_t yy) {
    const int y = static_cast<int>(yy);
    std::vector<double> line(size);
    for (int x = 0; x < w; ++x) {
      for (int u = 0; u < size; ++u) line[u] = img.at_reflect(x - (u - r), y);
      for (int i = 0; i <= n; ++i) {
        const auto& k = stack.taps(i);
        double s = 0;
        for (int u = 0; u < size; ++u) s += line[u] * k[u];
        horiz[i][yy * w + x] = s;
      }
    }
  });
  std::vector<double> sums(n + 1, 0.0);
  for (int i = 0; i <= n; ++i)
    for (double t : stack.taps(i)) sums[i] += t;
  std::vector<Jet> out(static_cast<std::size_t>(w) * h, Jet(n));
  parallel_for(static_cast<std::size_t>(h), threads, [&](std::size_t yy) {
    const int y = static_cast<int>(yy);
    for (int x = 0; x < w; ++x) {
      Jet& jet = out[yy * w + x];
      const double c = img.at(x, y);
      for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
          if (i + j == 0) continue;
          const auto& k = stack.taps(j);
          double s = 0;
          for (int v = 0; v < size; ++v) s += horiz[i][static_cast<std::size_t>(reflect_index(y - (v - r), h)) * w + x] * k[v];
          jet(i, j) = s - c * sums[i] * sums[j];
        }
    }
  });
  return out;
}

FeatureMap feature_map(const Image& img, const FeatureEvaluator& eval, double sigma, int threads) {
  if (img.empty()) throw std::invalid_argument("empty image");
  const KernelStack stack(sigma, default_kernel_size(sigma), std::max(eval.max_order(), 1));
  const auto jets = jet_field(img, stack, threads);
  FeatureMap fm;
  fm.ids = eval.ids();
  fm.sigma = sigma;
  fm.maps.assign(eval.size(), Image(img.width(), img.height()));
  parallel_for(jets.size(), threads, [&](std::size_t p) {
    for (std::size_t k = 0; k < eval.size(); ++k) fm.maps[k].data()[p] = eval.eval(k, jets[p]);
  });
  return fm;
}

void write_feature_map(const FeatureMap& fm, const std::string& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json meta = {{"sigma", fm.sigma}, {"maps", nlohmann::json::array()}};
  for (std::size_t k = 0; k < fm.maps.size(); ++k) {
    double lo = 0, hi = 0;
    const Image scaled = minmax_normalize(fm.maps[k], &lo, &hi);
    const std::string name = "di" + std::to_string(fm.ids[k]) + ".pgm";
    write_pgm(dir + "/" + name, scaled, PgmFormat::kBinary8);
    meta["maps"].push_back({{"id", fm.ids[k]}, {"file", name}, {"min", lo}, {"max", hi}});
  }
  std::ofstream out(dir + "/featmap.json");
  if (!out) throw std::runtime_error("cannot write " + dir + "/featmap.json");
  out << meta.dump(2) << "\n";
}

}  // namespace dinv
