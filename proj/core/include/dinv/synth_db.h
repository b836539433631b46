#ifndef DINV_SYNTH_DB_H_
#define DINV_SYNTH_DB_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dinv/image.h"

namespace dinv {

inline constexpr int kGridSide = 8;
inline constexpr int kClassCount = kGridSide * kGridSide;
inline constexpr int kPatchSize = 65;
inline constexpr int kBaseSize = 512;

// 512 x 512 Gaussian-filtered white noise (sigma 3), min-max scaled to [0, 1].
Image default_base_image(std::uint64_t seed = 0);

struct TransformSet {
  bool rotation = false;
  bool intensity_affine = false;
  bool translation = false;
  bool scaling = false;
  bool shear = false;
  bool noise = false;
  bool power_law = false;

  nlohmann::json to_json() const;
  static TransformSet from_json(const nlohmann::json& j);
};

// Named configurations: "db1" (rotation + intensity affine), "rotation",
// "translation" (rotation + translation), "all".
TransformSet transform_preset(const std::string& name);

struct ParameterRanges {
  double a_lo = 0.5, a_hi = 1.0;  // intensity gain; offset b is drawn in [0, 1 - a]
  double t_lo = -10, t_hi = 10;
  double s_lo = 0.5, s_hi = 1.5;
  double m_lo = 0.0, m_hi = 0.3;
  double noise_lo = 0.001, noise_hi = 0.005;
  double alpha_lo = 0.5, alpha_hi = 2.0;

  nlohmann::json to_json() const;
  static ParameterRanges from_json(const nlohmann::json& j);
};

struct SynthDbSpec {
  TransformSet transforms;
  ParameterRanges ranges;
  int instances = 20;
  std::uint64_t seed = 0;
  std::uint64_t base_seed = 0;  // used when no base image is supplied
  std::string base_path;        // empty: default_base_image(base_seed)

  nlohmann::json to_json() const;
};

// Parameters actually drawn for one patch; identity values for disabled
// transforms.
struct PatchParams {
  double theta = 0;  // radians
  double a = 1, b = 0;
  double tx = 0, ty = 0;
  double scale = 1;
  double mx = 0, my = 0;
  double noise_sigma = 0;
  double alpha = 1;
  std::uint64_t subseed = 0;

  nlohmann::json to_json() const;
  static PatchParams from_json(const nlohmann::json& j);
};

struct PatchRecord {
  int k1 = 1, k2 = 1;  // one-based grid position
  int instance = 1;    // one-based; instance 1 is the model
  PatchParams params;
  Image patch;

  int class_id() const { return (k1 - 1) * kGridSide + (k2 - 1); }
};

struct PatchDatabase {
  SynthDbSpec spec;
  std::vector<PatchRecord> records;  // class-major, then instance

  int instances() const { return spec.instances; }
  const PatchRecord& record(int class_id, int instance) const {
    return records.at(static_cast<std::size_t>(class_id) * spec.instances + (instance - 1));
  }
};

// Grid center 64 (k - 1) + 32 in zero-based pixel coordinates.
double class_center(int k);

PatchParams draw_params(const SynthDbSpec& spec, int k1, int k2, int instance);

// Renders one patch; samples are quantized to 16 bits so in-memory and
// on-disk databases agree exactly. Throws std::runtime_error when the crop
// leaves the reflected base image.
Image render_patch(const Image& base, int k1, int k2, int instance, const PatchParams& p, bool noise);

PatchDatabase build_synth_db(const SynthDbSpec& spec, const Image& base, int threads = 0);
PatchDatabase build_synth_db(const SynthDbSpec& spec, int threads = 0);

// Layout: meta.json, c<k1>_<k2>/i<n>.pgm (16 bit), c<k1>_<k2>/i<n>.params.json.
void write_synth_db(const PatchDatabase& db, const std::string& dir);
PatchDatabase load_synth_db(const std::string& dir);

}  // namespace dinv

#endif  // DINV_SYNTH_DB_H_
