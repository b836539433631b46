#ifndef DINV_JET_ESTIMATION_H_
#define DINV_JET_ESTIMATION_H_

#include <string>
#include <vector>

#include "json.hpp"

#include "dinv/catalog.h"
#include "dinv/image.h"
#include "dinv/jet.h"
#include "dinv/kernels.h"

namespace dinv {


struct StandardizedPatch {
  Image patch;
  bool degenerate = false;  // zero variance; patch is all zeros
};

// Zero mean, unit (population) variance.
StandardizedPatch standardize_patch(const Image& patch);

enum class Padding { kNone, kReflect };

// L_ij at pixel (x0, y0) for 1 <= i+j <= stack.max_order(), as
//   L_ij = sum_{u,v} (f(x0-u, y0-v) - f(x0, y0)) k_i(u) k_j(v).
// Subtracting the center value changes nothing in exact arithmetic (the
// derivative kernels have zero sum) but makes constant patches give exact
// zeros. Throws std::invalid_argument if the footprint leaves the image and
// padding is kNone.
Jet local_jet(const Image& img, int x0, int y0, const KernelStack& stack, Padding padding = Padding::kNone);

// Evaluates catalog invariants on local jets.
class FeatureEvaluator {
 public:
  FeatureEvaluator(const Catalog& catalog, std::vector<int> ids);
  const std::vector<int>& ids() const { return ids_; }
  std::size_t size() const { return compiled_.size(); }
  int max_order() const { return max_order_; }
  std::vector<double> operator()(const Jet& jet) const;
  double eval(std::size_t k, const Jet& jet) const { return compiled_[k](jet); }

 private:
  std::vector<int> ids_;
  std::vector<CompiledPolynomial> compiled_;
  int max_order_ = 1;
};

struct FeatureVector {
  std::vector<int> ids;
  std::vector<double> sigmas;
  std::vector<double> values;  // sigma-major: values[s * ids.size() + k]
  bool degenerate = false;

  nlohmann::json to_json() const;
};

// Standardizes the patch, then evaluates every member of the set at the patch
// center for each sigma. kernel_size <= 0 selects default_kernel_size(sigma);
// footprints larger than the patch use reflect padding.
FeatureVector feature_vector(const Image& patch, const FeatureEvaluator& eval, const std::vector<double>& sigmas,
                             int kernel_size = 0);
FeatureVector feature_vector(const Image& patch, const SetDescriptor& set, const std::vector<double>& sigmas,
                             int kernel_size = 0);

// Per-pixel jets of a whole image with reflect padding. jets[y * w + x].
std::vector<Jet> jet_field(const Image& img, const KernelStack& stack, int threads = 0);

struct FeatureMap {
  std::vector<int> ids;
  double sigma = 0;
  std::vector<Image> maps;  // one per id, raw values
};

FeatureMap feature_map(const Image& img, const FeatureEvaluator& eval, double sigma, int threads = 0);

// Writes <dir>/di<id>.pgm (min-max scaled, 8 bit) for each map and
// <dir>/featmap.json with the min/max used for scaling.
void write_feature_map(const FeatureMap& fm, const std::string& dir);

}  // namespace dinv

#endif  // DINV_JET_ESTIMATION_H_
