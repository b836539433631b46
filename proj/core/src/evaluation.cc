#include "dinv/evaluation.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "dinv/parallel.h"
#include "dinv/random.h"

namespace dinv {

double csd(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("csd: length mismatch (" + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double den = std::fabs(x[i]) + std::fabs(y[i]);
    if (den > 0) s += std::fabs(x[i] - y[i]) / den;
  }
  return s;
}

std::vector<std::vector<double>> database_features(const PatchDatabase& db, const FeatureEvaluator& eval,
                                                   const std::vector<double>& sigmas, int threads, int kernel_size) {
  std::vector<std::vector<double>> out(db.records.size());
  parallel_for(db.records.size(), threads, [&](std::size_t k) {
    const auto& rec = db.records[k];
    try {
      out[k] = feature_vector(rec.patch, eval, sigmas, kernel_size).values;
    } catch (const std::exception& e) {
      throw std::runtime_error("feature failure on patch c" + std::to_string(rec.k1) + "_" + std::to_string(rec.k2) +
                               "/i" + std::to_string(rec.instance) + ": " + e.what());
    }
  });
  return out;
}

nlohmann::json Classification::to_json() const {
  return {{"set", set_name}, {"sigma", sigmas}, {"accuracy", accuracy}, {"per_class", per_class}};
}

Classification nn_classify(const std::vector<std::vector<double>>& features, int instances) {
  if (instances < 2) throw std::invalid_argument("classification needs at least 2 instances per class");
  if (features.size() % instances != 0) throw std::invalid_argument("feature count is not classes x instances");
  const int classes = static_cast<int>(features.size()) / instances;
  Classification res;
  res.per_class.assign(classes, 0.0);
  res.predicted.assign(features.size(), -1);
  int correct = 0;
  for (int c = 0; c < classes; ++c) {
    res.predicted[static_cast<std::size_t>(c) * instances] = c;
    for (int i = 1; i < instances; ++i) {
      const auto& q = features[static_cast<std::size_t>(c) * instances + i];
      int best = 0;
      double best_d = csd(q, features[0]);
      for (int m = 1; m < classes; ++m) {
        const double d = csd(q, features[static_cast<std::size_t>(m) * instances]);
        if (d < best_d) {
          best_d = d;
          best = m;
        }
      }
      res.predicted[static_cast<std::size_t>(c) * instances + i] = best;
      if (best == c) {
        ++correct;
        res.per_class[c] += 1.0;
      }
    }
    res.per_class[c] /= instances - 1;
  }
  res.accuracy = static_cast<double>(correct) / (static_cast<double>(classes) * (instances - 1));
  return res;
}

Classification nn_classify(const PatchDatabase& db, const FeatureEvaluator& eval, const std::vector<double>& sigmas,
                           int threads) {
  auto res = nn_classify(database_features(db, eval, sigmas, threads), db.instances());
  res.sigmas = sigmas;
  return res;
}

double mre(const std::vector<double>& values, int instances) {
  if (instances < 2) throw std::invalid_argument("MRE needs at least 2 instances per class");
  if (values.size() % instances != 0) throw std::invalid_argument("value count is not classes x instances");
  const std::size_t classes = values.size() / instances;
  double s = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    const double v1 = values[c * instances];
    for (int i = 1; i < instances; ++i) {
      const double vi = values[c * instances + i];
      const double den = std::fabs(v1) + std::fabs(vi);
      if (den > 0) s += std::fabs(v1 - vi) / den;
    }
  }
  return 100.0 * s / (static_cast<double>(classes) * (instances - 1));
}

std::vector<double> mre_all(const PatchDatabase& db, const FeatureEvaluator& eval, double sigma, int threads,
                            int kernel_size) {
  const auto feats = database_features(db, eval, {sigma}, threads, kernel_size);
  std::vector<double> out(eval.size());
  std::vector<double> column(feats.size());
  for (std::size_t k = 0; k < eval.size(); ++k) {
    for (std::size_t r = 0; r < feats.size(); ++r) column[r] = feats[r][k];
    out[k] = mre(column, db.instances());
  }
  return out;
}

double average_precision(const std::vector<bool>& ranked_labels) {
  std::size_t hits = 0;
  double sum = 0;
  for (std::size_t k = 0; k < ranked_labels.size(); ++k)
    if (ranked_labels[k]) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

nlohmann::json Verification::to_json() const {
  return {{"mAP", map}, {"positives", positives}, {"negatives", negatives}};
}

std::string Verification::curve_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "threshold,precision,recall\n";
  for (const auto& p : curve) os << p.threshold << "," << p.precision << "," << p.recall << "\n";
  return os.str();
}

Verification pair_verify(const std::vector<std::vector<double>>& features, int instances, int negatives_per_positive,
                         std::uint64_t seed) {
  if (instances < 2) throw std::invalid_argument("verification needs at least 2 instances per class");
  if (features.size() % instances != 0) throw std::invalid_argument("feature count is not classes x instances");
  if (negatives_per_positive < 0) throw std::invalid_argument("negative pair count must be >= 0");
  const std::size_t n = features.size();
  const std::size_t classes = n / instances;
  if (classes < 2 && negatives_per_positive > 0) throw std::invalid_argument("negatives need at least 2 classes");
  // (distance, is_positive) per pair
  std::vector<std::pair<double, bool>> pairs;
  for (std::size_t c = 0; c < classes; ++c)
    for (int i = 0; i < instances; ++i)
      for (int j = i + 1; j < instances; ++j)
        pairs.emplace_back(csd(features[c * instances + i], features[c * instances + j]), true);
  Verification v;
  v.positives = pairs.size();
  Rng rng(subseed(seed, {0x9A1D}));
  const std::size_t want = v.positives * static_cast<std::size_t>(negatives_per_positive);
  while (v.negatives < want) {
    const auto a = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    const auto b = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    if (a / instances == b / instances) continue;
    pairs.emplace_back(csd(features[a], features[b]), false);
    ++v.negatives;
  }
  // ascending distance; on ties the negative goes first
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& x, const auto& y) { return std::tie(x.first, x.second) < std::tie(y.first, y.second); });
  std::vector<bool> labels(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) labels[k] = pairs[k].second;
  v.map = average_precision(labels);
  std::size_t tp = 0;
  const std::size_t step = std::max<std::size_t>(1, pairs.size() / 1000);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (pairs[k].second) ++tp;
    if ((k + 1) % step == 0 || k + 1 == pairs.size())
      v.curve.push_back({pairs[k].first, static_cast<double>(tp) / static_cast<double>(k + 1),
                         v.positives ? static_cast<double>(tp) / static_cast<double>(v.positives) : 0.0});
  }
  return v;
}

}  // namespace dinv
