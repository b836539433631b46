// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 when every criterion was evaluated, whatever the outcome;
// individual failures stay visible in the output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "dinv/catalog.h"
#include "dinv/evaluation.h"
#include "dinv/features.h"
#include "dinv/hermite.h"
#include "dinv/independence.h"
#include "dinv/invariance.h"
#include "dinv/jet_estimation.h"
#include "dinv/moments.h"
#include "dinv/parallel.h"
#include "dinv/random.h"
#include "dinv/synth_db.h"

using namespace dinv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_passed = 0;

void report(int n, const std::string& name, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g_passed += o.pass;
  std::printf("%s %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

Outcome catalog_invariance() {
  const auto& cat = default_catalog();
  std::vector<int> bad(cat.size(), 0);
  parallel_for(cat.size(), 0, [&](std::size_t k) {
    const auto& e = cat.entries()[k];
    Rng rng(subseed(1, {static_cast<std::uint64_t>(e.id)}));
    for (int t = 0; t < 20; ++t) {
      const auto m = random_pythagorean_rotation(rng);
      const auto jet = random_rational_jet(rng);
      if (e.polynomial.eval(jet_transform(jet, m)) != e.polynomial.eval(jet)) ++bad[k];
    }
  });
  const int failing = static_cast<int>(std::count_if(bad.begin(), bad.end(), [](int b) { return b > 0; }));
  return {failing == 0, std::to_string(cat.size() - failing) + "/" + std::to_string(cat.size()) +
                            " entries with zero residual over 20 rotations"};
}

Outcome relative_weights() {
  const auto& cat = default_catalog();
  std::vector<int> sim_bad(cat.size(), 0), aff_bad(cat.size(), 0);
  parallel_for(cat.size(), 0, [&](std::size_t k) {
    const auto& e = cat.entries()[k];
    Rng rng(subseed(2, {static_cast<std::uint64_t>(e.id)}));
    for (int t = 0; t < 20; ++t) {
      const auto s = random_similarity(rng);
      const auto jet = random_rational_jet(rng);
      // s^2 = det for a similarity; predicted ratio is det^-(P+Q)
      const Rational want = pow(s.det(), -(e.P + e.Q)) * e.polynomial.eval(jet);
      if (e.polynomial.eval(jet_transform(jet, s)) != want) ++sim_bad[k];
      if (e.P == 0) {
        const auto a = random_affine(rng);
        const Rational wa = pow(a.det(), -e.Q) * e.polynomial.eval(jet);
        if (e.polynomial.eval(jet_transform(jet, a)) != wa) ++aff_bad[k];
      }
    }
  });
  int sb = 0, ab = 0, g_only = 0;
  for (std::size_t k = 0; k < cat.size(); ++k) {
    sb += sim_bad[k] > 0;
    ab += aff_bad[k] > 0;
    g_only += cat.entries()[k].P == 0;
  }
  std::ostringstream os;
  os << "similarity mismatches " << sb << "/" << cat.size() << ", affine mismatches " << ab << "/" << g_only
     << " G-only entries";
  return {sb == 0 && ab == 0, os.str()};
}

Outcome reference_forms() {
  const auto& cat = default_catalog();
  std::vector<int> pool;
  for (const auto& e : cat.entries()) pool.push_back(e.id);
  const auto matches = match_reference_forms(cat, default_reference_forms(), pool);
  int matched = 0;
  std::set<int> unmatched;
  for (const auto& m : matches) {
    if (m.matched) ++matched;
    else unmatched.insert(m.label);
  }
  std::set<int> reported;
  for (const auto& item : discrepancy_report(cat, 0))
    if (item.at("topic") == "reference-form-mismatch" && !item.at("nearest").empty())
      reported.insert(item.at("label").get<int>());
  const bool listed = std::includes(reported.begin(), reported.end(), unmatched.begin(), unmatched.end());
  std::ostringstream os;
  os << matched << "/" << matches.size() << " printed forms match up to a scalar; " << unmatched.size()
     << " mismatches, " << (listed ? "all" : "not all") << " reported with residuals";
  return {matched >= 30 && listed, os.str()};
}

Outcome relations() {
  const auto recs = verify_relations(default_catalog(), default_relations(), 0);
  int holds = 0, listed = 0;
  std::set<int> lhs;
  for (const auto& r : recs) {
    if (r.status == RelationStatus::kHolds) ++holds;
    else {
      const auto j = r.to_json();
      listed += j.contains("residual") && !r.residual.is_zero();
      lhs.insert(r.lhs_id);
    }
  }
  const int failing = static_cast<int>(recs.size()) - holds;
  std::ostringstream os;
  os << holds << "/" << recs.size() << " hold exactly; " << failing << " listed with residuals (lhs";
  for (int id : lhs) os << " " << id;
  os << ")";
  return {holds >= 108 && listed == failing && recs.size() == 134, os.str()};
}

Outcome counts() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& r : count_report(default_catalog(), 0, 0)) {
    ok = ok && r.pass;
    if (!r.pass) os << r.set << " " << r.computed << "!=" << r.expected << "; ";
  }
  os << "table rows " << (ok ? "ok" : "mismatch");
  for (auto [o, d, want] : {std::tuple{4, 4, 230}, std::tuple{3, 3, 25}}) {
    const int got = span_dimension(o, d, 0).rank;
    os << "; span(" << o << "," << d << ")=" << got << " expected " << want;
    ok = ok && got == want;
  }
  return {ok, os.str()};
}

Outcome hermite_relation() {
  const auto r = gh_relation(smooth_bump_patch(0), 12.0, 32, 32);
  std::ostringstream os;
  os.precision(3);
  os << "per-order relative error";
  for (int m = 1; m <= 4; ++m) os << " " << 100 * r.error[m] << "%";
  return {r.max_error() < 0.10, os.str()};
}

Outcome classification() {
  SynthDbSpec spec;
  spec.transforms = transform_preset("db1");
  const auto db = build_synth_db(spec, 0);
  const FeatureEvaluator ev(default_catalog(), select_set(4, 3, SetKind::kIR).member_ids);
  const double a2 = nn_classify(db, ev, {2.0}, 0).accuracy;
  const double a12 = nn_classify(db, ev, {12.0}, 0).accuracy;
  const double a20 = nn_classify(db, ev, {20.0}, 0).accuracy;
  std::ostringstream os;
  os.precision(4);
  os << "IR(4,3) accuracy sigma 2/12/20 = " << a2 << "/" << a12 << "/" << a20;
  return {a12 >= 0.99 && a12 >= a2 && a12 >= a20, os.str()};
}

Outcome mre_stability() {
  const auto& cat = default_catalog();
  std::vector<int> all;
  for (const auto& e : cat.entries()) all.push_back(e.id);
  const FeatureEvaluator ev(cat, all);
  SynthDbSpec rot;
  rot.transforms = transform_preset("rotation");
  const auto rdb = build_synth_db(rot, 0);
  double worst = 0;
  int worst_id = 0;
  for (double s : {6.0, 8.0}) {
    const auto m = mre_all(rdb, ev, s, 0);
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] > worst) worst = m[k], worst_id = all[k];
  }
  SynthDbSpec tr;
  tr.transforms = transform_preset("translation");
  const auto tdb = build_synth_db(tr, 0);
  auto tm = mre_all(tdb, ev, 6.0, 0);
  std::nth_element(tm.begin(), tm.begin() + tm.size() / 2, tm.end());
  double median = tm[tm.size() / 2];
  if (tm.size() % 2 == 0) median = (median + *std::max_element(tm.begin(), tm.begin() + tm.size() / 2)) / 2;
  std::ostringstream os;
  os.precision(3);
  os << "rotation worst " << worst << "% (DI" << worst_id << "); translation median " << median << "%";
  return {worst < 10 && median >= 40, os.str()};
}

Outcome moment_isomorphism() {
  const auto& cat = default_catalog();
  Rng rng(subseed(9, {0x303}));
  std::vector<PointCloud> clouds;
  std::vector<LinearMap2> maps;
  for (int k = 0; k < 20; ++k) clouds.push_back(random_rational_cloud(rng, 5 + k % 4));
  for (int k = 0; k < 5; ++k) maps.push_back(random_affine(rng));
  std::vector<int> nonzero(cat.size(), 0), checks(cat.size(), 0);
  parallel_for(cat.size(), 0, [&](std::size_t k) {
    const auto& e = cat.entries()[k];
    if (e.P != 0) return;
    for (const auto& c : clouds)
      for (const auto& m : maps) {
        ++checks[k];
        nonzero[k] += moment_isomorphism_check(e.chain, e.polynomial, c, m) != 0;
      }
  });
  int total = 0, bad = 0, chains = 0;
  for (std::size_t k = 0; k < cat.size(); ++k) {
    total += checks[k];
    bad += nonzero[k];
    chains += checks[k] > 0;
  }
  std::ostringstream os;
  os << chains << " G-only chains, " << total << " checks, " << bad << " nonzero residuals";
  return {bad == 0 && chains > 0, os.str()};
}

Outcome numeric_sanity() {
  bool ok = true;
  const Image flat(65, 65, 0.37);
  for (double s : {2.0, 12.0}) {
    const Jet j = local_jet(flat, 32, 32, KernelStack(s), Padding::kReflect);
    for (const auto& d : derivative_symbols(4)) ok = ok && j(d.i, d.j) == 0.0;
  }
  const bool flat_ok = ok;
  Image ramp(129, 129);
  for (int y = 0; y < 129; ++y)
    for (int x = 0; x < 129; ++x) ramp.at(x, y) = 0.3 * x + 0.7 * y;
  double ramp_err = 0;
  for (double s : {2.0, 6.0, 12.0}) {
    const Jet j = local_jet(ramp, 64, 64, KernelStack(s));
    ramp_err = std::max({ramp_err, std::fabs(j(1, 0) - 0.3 * s), std::fabs(j(0, 1) - 0.7 * s)});
  }
  Rng rng(10);
  double eig_err = 0;
  for (int t = 0; t < 1000; ++t) {
    Jet j;
    for (const auto& d : derivative_symbols(4)) j(d.i, d.j) = rng.uniform(-3, 3);
    const auto f = derived_features(j);
    eig_err = std::max({eig_err, std::fabs(f.lambda1 + f.lambda2 - (j(2, 0) + j(0, 2))),
                        std::fabs(f.lambda1 * f.lambda2 - (j(2, 0) * j(0, 2) - j(1, 1) * j(1, 1)))});
  }
  std::ostringstream os;
  os << "constant jets " << (flat_ok ? "exactly 0" : "nonzero") << "; ramp error " << ramp_err
     << "; eigenvalue identity error " << eig_err;
  return {flat_ok && ramp_err < 1e-8 && eig_err < 1e-10, os.str()};
}

}  // namespace

int main() {
  report(1, "catalog rotation invariance", catalog_invariance);
  report(2, "relative weights", relative_weights);
  report(3, "reference polynomial regeneration", reference_forms);
  report(4, "relations", relations);
  report(5, "set counts and span dimensions", counts);
  report(6, "Gaussian-Hermite relation", hermite_relation);
  report(7, "classification", classification);
  report(8, "MRE stability", mre_stability);
  report(9, "moment isomorphism", moment_isomorphism);
  report(10, "numeric sanity", numeric_sanity);
  std::printf("acceptance: 10 criteria evaluated (%d passed)\n", g_passed);
  return 0;
}
