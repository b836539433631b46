#include "dinv/features.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dinv {

ClassicValues classic_values(const Jet& jet) {
  if (jet.max_order() < 2) throw std::invalid_argument("derived features need a jet of order >= 2");
  const double fx = jet(1, 0), fy = jet(0, 1), fxx = jet(2, 0), fxy = jet(1, 1), fyy = jet(0, 2);
  ClassicValues c;
  c.gradient_sq = fx * fx + fy * fy;
  c.laplacian = fxx + fyy;
  c.hessian_det = fxx * fyy - fxy * fxy;
  c.isophote = fx * fx * fyy - 2 * fx * fy * fxy + fy * fy * fxx;
  c.flowline = fy * fy * fxy + fx * fy * fxx - fx * fy * fyy - fx * fx * fxy;
  return c;
}

DerivedFeatures derived_features(const Jet& jet) {
  const ClassicValues di = classic_values(jet);
  const double fxx = jet(2, 0), fxy = jet(1, 1), fyy = jet(0, 2);
  DerivedFeatures f;
  // (f20 - f02)^2 + 4 f11^2, which equals DI2^2 - 4 DI3
  const double disc = (fxx - fyy) * (fxx - fyy) + 4 * fxy * fxy;
  const double root = std::sqrt(disc);
  f.lambda1 = 0.5 * (di.laplacian + root);
  f.lambda2 = 0.5 * (di.laplacian - root);

  const double g = 1 + di.gradient_sq;
  const double num = di.laplacian + di.isophote;
  f.gaussian_curvature = di.hessian_det / (g * g);
  f.mean_curvature = num / (2 * std::pow(g, 1.5));
  const double split = std::sqrt(std::max(0.0, num * num - 4 * g * di.hessian_det));
  if (num != 0 || split != 0) f.shape_index = (2 / M_PI) * std::atan2(-num, split);
  f.curvedness = std::sqrt(std::max(0.0, (num * num - 2 * di.hessian_det * g) / (2 * g * g * g)));

  f.jet2_norm = std::sqrt(di.gradient_sq + 0.5 * (fxx * fxx + 2 * fxy * fxy + fyy * fyy));

  const double s2 = std::sqrt(2.0);
  f.bif = {2 * std::sqrt(di.gradient_sq), di.laplacian, -di.laplacian, (root + di.laplacian) / s2,
           (root - di.laplacian) / s2, root};

  f.first_max = std::sqrt(di.gradient_sq);
  f.first_min = -f.first_max;
  f.second_max = f.lambda1;
  f.second_min = f.lambda2;
  return f;
}

nlohmann::json DerivedFeatures::to_json() const {
  nlohmann::json j = {{"lambda1", lambda1},
                      {"lambda2", lambda2},
                      {"gaussian_curvature", gaussian_curvature},
                      {"mean_curvature", mean_curvature},
                      {"curvedness", curvedness},
                      {"jet2_norm", jet2_norm},
                      {"bif", bif},
                      {"first_max", first_max},
                      {"first_min", first_min},
                      {"second_max", second_max},
                      {"second_min", second_min}};
  j["shape_index"] = shape_index ? nlohmann::json(*shape_index) : nlohmann::json("undefined");
  return j;
}

}  // namespace dinv
