#include "dinv/synth_db.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dinv/kernels.h"
#include "dinv/parallel.h"
#include "dinv/random.h"

namespace dinv {

namespace fs = std::filesystem;

Image default_base_image(std::uint64_t seed) {
  Rng rng(subseed(seed, {0xBA5E}));
  Image noise(kBaseSize, kBaseSize);
  for (double& v : noise.data()) v = rng.normal();
  const double sigma = 3.0;
  const auto taps = gaussian_derivative_taps(0, sigma, default_kernel_size(sigma));
  const int r = static_cast<int>(taps.size()) / 2;
  Image tmp(kBaseSize, kBaseSize), out(kBaseSize, kBaseSize);
  for (int y = 0; y < kBaseSize; ++y)
    for (int x = 0; x < kBaseSize; ++x) {
      double s = 0;
      for (int u = -r; u <= r; ++u) s += taps[u + r] * noise.at_reflect(x - u, y);
      tmp.at(x, y) = s;
    }
  for (int y = 0; y < kBaseSize; ++y)
    for (int x = 0; x < kBaseSize; ++x) {
      double s = 0;
      for (int v = -r; v <= r; ++v) s += taps[v + r] * tmp.at_reflect(x, y - v);
      out.at(x, y) = s;
    }
  return minmax_normalize(out);
}

nlohmann::json TransformSet::to_json() const {
  return {{"rotation", rotation},   {"intensity_affine", intensity_affine}, {"translation", translation},
          {"scaling", scaling},     {"shear", shear},                       {"noise", noise},
          {"power_law", power_law}};
}

TransformSet TransformSet::from_json(const nlohmann::json& j) {
  TransformSet t;
  t.rotation = j.at("rotation").get<bool>();
  t.intensity_affine = j.at("intensity_affine").get<bool>();
  t.translation = j.at("translation").get<bool>();
  t.scaling = j.at("scaling").get<bool>();
  t.shear = j.at("shear").get<bool>();
  t.noise = j.at("noise").get<bool>();
  t.power_law = j.at("power_law").get<bool>();
  return t;
}

TransformSet transform_preset(const std::string& name) {
  TransformSet t;
  if (name == "db1") {
    t.rotation = t.intensity_affine = true;
  } else if (name == "rotation") {
    t.rotation = true;
  } else if (name == "translation") {
    t.rotation = t.translation = true;
  } else if (name == "all") {
    t.rotation = t.intensity_affine = t.translation = t.scaling = t.shear = t.noise = t.power_law = true;
  } else {
    throw std::invalid_argument("unknown database preset '" + name + "' (expected db1, rotation, translation, all)");
  }
  return t;
}

nlohmann::json ParameterRanges::to_json() const {
  return {{"a", {a_lo, a_hi}},         {"b", "[0, 1 - a]"},        {"t", {t_lo, t_hi}},
          {"s", {s_lo, s_hi}},         {"m", {m_lo, m_hi}},        {"noise_sigma", {noise_lo, noise_hi}},
          {"alpha", {alpha_lo, alpha_hi}}, {"noise_units", "intensities in [0, 1]"}};
}

ParameterRanges ParameterRanges::from_json(const nlohmann::json& j) {
  ParameterRanges r;
  auto pair = [&](const char* key, double& lo, double& hi) {
    lo = j.at(key).at(0).get<double>();
    hi = j.at(key).at(1).get<double>();
  };
  pair("a", r.a_lo, r.a_hi);
  pair("t", r.t_lo, r.t_hi);
  pair("s", r.s_lo, r.s_hi);
  pair("m", r.m_lo, r.m_hi);
  pair("noise_sigma", r.noise_lo, r.noise_hi);
  pair("alpha", r.alpha_lo, r.alpha_hi);
  return r;
}

nlohmann::json SynthDbSpec::to_json() const {
  return {{"transforms", transforms.to_json()},
          {"ranges", ranges.to_json()},
          {"instances", instances},
          {"seed", seed},
          {"base_seed", base_seed},
          {"base_path", base_path},
          {"classes", kClassCount},
          {"patch_size", kPatchSize},
          {"order", "translate, crop (scaled), shear, rotate, noise, power-law, intensity affine, resize"},
          {"interpolation", "bilinear, reflect boundary"}};
}

nlohmann::json PatchParams::to_json() const {
  return {{"theta", theta}, {"a", a},   {"b", b},   {"tx", tx},          {"ty", ty},       {"scale", scale},
          {"mx", mx},       {"my", my}, {"noise_sigma", noise_sigma}, {"alpha", alpha}, {"subseed", subseed}};
}

PatchParams PatchParams::from_json(const nlohmann::json& j) {
  PatchParams p;
  p.theta = j.at("theta").get<double>();
  p.a = j.at("a").get<double>();
  p.b = j.at("b").get<double>();
  p.tx = j.at("tx").get<double>();
  p.ty = j.at("ty").get<double>();
  p.scale = j.at("scale").get<double>();
  p.mx = j.at("mx").get<double>();
  p.my = j.at("my").get<double>();
  p.noise_sigma = j.at("noise_sigma").get<double>();
  p.alpha = j.at("alpha").get<double>();
  p.subseed = j.at("subseed").get<std::uint64_t>();
  return p;
}

double class_center(int k) {
  if (k < 1 || k > kGridSide) throw std::invalid_argument("grid index must lie in 1..8");
  return 64.0 * (k - 1) + 32.0;
}

PatchParams draw_params(const SynthDbSpec& spec, int k1, int k2, int instance) {
  const auto& t = spec.transforms;
  const auto& r = spec.ranges;
  PatchParams p;
  p.subseed = subseed(spec.seed, {static_cast<std::uint64_t>(k1), static_cast<std::uint64_t>(k2),
                                  static_cast<std::uint64_t>(instance)});
  Rng rng(p.subseed);
  // Every value is drawn whether or not its transform is enabled, so enabling
  // one transform never shifts the draws of another.
  const double theta = rng.uniform(0.0, 2 * M_PI);
  const double a = rng.uniform(r.a_lo, r.a_hi);
  const double b = rng.uniform(0.0, 1.0 - a);
  const double tx = rng.uniform(r.t_lo, r.t_hi);
  const double ty = rng.uniform(r.t_lo, r.t_hi);
  const double s = rng.uniform(r.s_lo, r.s_hi);
  const double mx = rng.uniform(r.m_lo, r.m_hi);
  const double my = rng.uniform(r.m_lo, r.m_hi);
  const double ns = rng.uniform(r.noise_lo, r.noise_hi);
  const double alpha = rng.uniform(r.alpha_lo, r.alpha_hi);
  if (t.rotation) p.theta = theta;
  if (t.intensity_affine) {
    p.a = a;
    p.b = b;
  }
  if (t.translation) {
    p.tx = tx;
    p.ty = ty;
  }
  if (t.scaling) p.scale = s;
  if (t.shear) {
    p.mx = mx;
    p.my = my;
  }
  if (t.noise) p.noise_sigma = ns;
  if (t.power_law) p.alpha = alpha;
  return p;
}

Image render_patch(const Image& base, int k1, int k2, int instance, const PatchParams& p, bool noise) {
  const double cx = class_center(k1) + p.tx;
  const double cy = class_center(k2) + p.ty;
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  const int half = kPatchSize / 2;
  const double lo_x = -(base.width() - 1.0), hi_x = 2.0 * (base.width() - 1.0);
  const double lo_y = -(base.height() - 1.0), hi_y = 2.0 * (base.height() - 1.0);
  Rng nrng(subseed(p.subseed, {1}));
  Image out(kPatchSize, kPatchSize);
  for (int v = 0; v < kPatchSize; ++v)
    for (int u = 0; u < kPatchSize; ++u) {
      const double qx = p.scale * (u - half), qy = p.scale * (v - half);
      // inverse rotation, then shear
      const double rx = c * qx + s * qy;
      const double ry = -s * qx + c * qy;
      const double bx = cx + rx + p.mx * ry;
      const double by = cy + p.my * rx + ry;
      if (bx < lo_x || bx > hi_x || by < lo_y || by > hi_y)
        throw std::runtime_error("crop for class (" + std::to_string(k1) + "," + std::to_string(k2) + ") instance " +
                                 std::to_string(instance) + " exceeds the base image");
      double val = base.bilinear(bx, by);
      if (noise) val += p.noise_sigma * nrng.normal();
      val = std::clamp(val, 0.0, 1.0);
      val = std::pow(val, p.alpha);
      val = p.a * val + p.b;
      out.at(u, v) = std::round(std::clamp(val, 0.0, 1.0) * 65535.0) / 65535.0;
    }
  return out;
}

PatchDatabase build_synth_db(const SynthDbSpec& spec, const Image& base, int threads) {
  if (spec.instances < 2) throw std::invalid_argument("database needs at least 2 instances per class");
  if (base.empty()) throw std::invalid_argument("empty base image");
  PatchDatabase db;
  db.spec = spec;
  db.records.resize(static_cast<std::size_t>(kClassCount) * spec.instances);
  parallel_for(db.records.size(), threads, [&](std::size_t idx) {
    const int cls = static_cast<int>(idx) / spec.instances;
    PatchRecord& rec = db.records[idx];
    rec.k1 = cls / kGridSide + 1;
    rec.k2 = cls % kGridSide + 1;
    rec.instance = static_cast<int>(idx) % spec.instances + 1;
    rec.params = draw_params(spec, rec.k1, rec.k2, rec.instance);
    rec.patch = render_patch(base, rec.k1, rec.k2, rec.instance, rec.params, spec.transforms.noise);
  });
  return db;
}

PatchDatabase build_synth_db(const SynthDbSpec& spec, int threads) {
  const Image base = spec.base_path.empty() ? default_base_image(spec.base_seed) : read_pgm(spec.base_path);
  return build_synth_db(spec, base, threads);
}

namespace {

std::string class_dir(int k1, int k2) { return "c" + std::to_string(k1) + "_" + std::to_string(k2); }

}  // namespace

void write_synth_db(const PatchDatabase& db, const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& rec : db.records) {
    const fs::path cdir = fs::path(dir) / class_dir(rec.k1, rec.k2);
    fs::create_directories(cdir);
    const std::string stem = "i" + std::to_string(rec.instance);
    write_pgm((cdir / (stem + ".pgm")).string(), rec.patch, PgmFormat::kBinary16);
    std::ofstream pj(cdir / (stem + ".params.json"));
    if (!pj) throw std::runtime_error("cannot write parameters for " + cdir.string());
    pj << rec.params.to_json().dump(2) << "\n";
  }
  std::ofstream meta(fs::path(dir) / "meta.json");
  if (!meta) throw std::runtime_error("cannot write " + dir + "/meta.json");
  meta << db.spec.to_json().dump(2) << "\n";
}

PatchDatabase load_synth_db(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "meta.json");
  if (!in) throw std::runtime_error("no database at " + dir + " (meta.json missing)");
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed meta.json in " + dir + ": " + e.what());
  }
  PatchDatabase db;
  db.spec.transforms = TransformSet::from_json(meta.at("transforms"));
  db.spec.ranges = ParameterRanges::from_json(meta.at("ranges"));
  db.spec.instances = meta.at("instances").get<int>();
  db.spec.seed = meta.at("seed").get<std::uint64_t>();
  db.spec.base_seed = meta.at("base_seed").get<std::uint64_t>();
  db.spec.base_path = meta.at("base_path").get<std::string>();
  for (int cls = 0; cls < kClassCount; ++cls)
    for (int i = 1; i <= db.spec.instances; ++i) {
      PatchRecord rec;
      rec.k1 = cls / kGridSide + 1;
      rec.k2 = cls % kGridSide + 1;
      rec.instance = i;
      const fs::path cdir = fs::path(dir) / class_dir(rec.k1, rec.k2);
      const std::string stem = "i" + std::to_string(i);
      rec.patch = read_pgm((cdir / (stem + ".pgm")).string());
      std::ifstream pj(cdir / (stem + ".params.json"));
      if (!pj) throw std::runtime_error("missing parameters for " + (cdir / stem).string());
      nlohmann::json pjson;
      pj >> pjson;
      rec.params = PatchParams::from_json(pjson);
      db.records.push_back(std::move(rec));
    }
  return db;
}

}  // namespace dinv
