#ifndef DINV_FEATURES_H_
#define DINV_FEATURES_H_

#include <array>
#include <optional>

#include "json.hpp"

#include "dinv/jet.h"

namespace dinv {

// The five classic second-order invariants.
struct ClassicValues {
  double gradient_sq = 0;  // f10^2 + f01^2
  double laplacian = 0;    // f20 + f02
  double hessian_det = 0;  // f20 f02 - f11^2
  double isophote = 0;     // f10^2 f02 - 2 f10 f01 f11 + f01^2 f20
  double flowline = 0;     // f01^2 f11 + f10 f01 f20 - f10 f01 f02 - f10^2 f11
};

ClassicValues classic_values(const Jet& jet);

struct DerivedFeatures {
  double lambda1 = 0, lambda2 = 0;  // Hessian eigenvalues, lambda1 >= lambda2
  double gaussian_curvature = 0;
  double mean_curvature = 0;
  std::optional<double> shape_index;  // undefined when both principal curvatures vanish
  double curvedness = 0;
  double jet2_norm = 0;
  std::array<double, 6> bif{};
  double first_max = 0, first_min = 0;    // extrema of the first directional derivative
  double second_max = 0, second_min = 0;  // extrema of the second directional derivative

  nlohmann::json to_json() const;
};

// Requires jet.max_order() >= 2.
DerivedFeatures derived_features(const Jet& jet);

}  // namespace dinv

#endif  // DINV_FEATURES_H_
