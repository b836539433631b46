#ifndef DINV_EVALUATION_H_
#define DINV_EVALUATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dinv/jet_estimation.h"
#include "dinv/synth_db.h"

namespace dinv {

// sum_i |x_i - y_i| / (|x_i| + |y_i|), a term being 0 when x_i = y_i = 0.
// Each term lies in [0, 1], so the sum lies in [0, n].
double csd(const std::vector<double>& x, const std::vector<double>& y);

// Feature vectors at the center of every patch, in database record order.
std::vector<std::vector<double>> database_features(const PatchDatabase& db, const FeatureEvaluator& eval,
                                                   const std::vector<double>& sigmas, int threads = 0,
                                                   int kernel_size = 0);

struct Classification {
  std::string set_name;
  std::vector<double> sigmas;
  double accuracy = 0;             // over instances 2..N of every class
  std::vector<double> per_class;   // accuracy per class id
  std::vector<int> predicted;      // per record; the model instance predicts its own class

  nlohmann::json to_json() const;
};

// Instance 1 of each class is the model; the rest go to the nearest model by
// CSD, ties to the lowest class id.
Classification nn_classify(const std::vector<std::vector<double>>& features, int instances);
Classification nn_classify(const PatchDatabase& db, const FeatureEvaluator& eval, const std::vector<double>& sigmas,
                           int threads = 0);

// Mean over classes and instances 2..N of |v1 - vi| / (|v1| + |vi|), in
// percent; 0/0 terms count as 0. values are per record.
double mre(const std::vector<double>& values, int instances);

// MRE in percent for each evaluator entry at one sigma.
std::vector<double> mre_all(const PatchDatabase& db, const FeatureEvaluator& eval, double sigma, int threads = 0,
                            int kernel_size = 0);

struct VerificationCurvePoint {
  double threshold = 0;
  double precision = 0;
  double recall = 0;
};

struct Verification {
  double map = 0;  // average precision over the single ranked list of pairs
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::vector<VerificationCurvePoint> curve;

  nlohmann::json to_json() const;
  std::string curve_csv() const;
};

// Positives: all same-class pairs. Negatives: negatives_per_positive seeded
// cross-class pairs per positive. Pairs are ranked by ascending CSD; among
// equal distances negatives rank first.
Verification pair_verify(const std::vector<std::vector<double>>& features, int instances,
                         int negatives_per_positive = 5, std::uint64_t seed = 0);

// Standard ranked-retrieval average precision; labels in ranked order.
double average_precision(const std::vector<bool>& ranked_labels);

}  // namespace dinv

#endif  // DINV_EVALUATION_H_
