// dinv: command-line front end for the differential invariant engine.
//
// Exit status: 0 success, 1 a requested check failed, 2 usage error,
// 3 runtime failure (missing or unreadable input, etc.).

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dinv/catalog.h"
#include "dinv/construction.h"
#include "dinv/evaluation.h"
#include "dinv/independence.h"
#include "dinv/invariance.h"
#include "dinv/jet_estimation.h"
#include "dinv/moments.h"
#include "dinv/parallel.h"
#include "dinv/synth_db.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string format = "json";
};

// Tracks what a run writes so a failure can remove partial outputs.
class Run {
 public:
  Run(std::string verb, const Common& common, std::vector<std::string> argv)
      : verb_(std::move(verb)), common_(common), argv_(std::move(argv)) {}

  bool has_out() const { return !common_.out.empty(); }
  const fs::path& dir() const { return dir_; }

  void open() {
    if (!has_out()) return;
    dir_ = common_.out;
    if (!fs::exists(dir_)) {
      fs::create_directories(dir_);
      created_dir_ = true;
    }
  }

  // Writes into --out when given, else to stdout.
  void emit(const std::string& name, const std::string& content) {
    if (!has_out()) {
      std::cout << content;
      if (!content.empty() && content.back() != '\n') std::cout << "\n";
      return;
    }
    const fs::path p = dir_ / name;
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
    if (!content.empty() && content.back() != '\n') f << "\n";
    written_.push_back(p);
  }

  void note_file(const fs::path& p) { written_.push_back(p); }
  void note_dir(const fs::path& p) { owned_dirs_.push_back(p); }

  void finish(const json& extra = json::object()) {
    if (!has_out()) return;
    json m = {{"verb", verb_},      {"argv", argv_},     {"seed", common_.seed}, {"threads", common_.threads},
              {"version", kVersion}, {"extra", extra}};
    json outputs = json::array();
    for (const auto& p : written_) outputs.push_back(fs::relative(p, dir_).string());
    for (const auto& p : owned_dirs_) outputs.push_back(fs::relative(p, dir_).string() + "/");
    m["outputs"] = outputs;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m["timestamp"] = buf;
    std::ofstream f(dir_ / "manifest.json");
    f << m.dump(2) << "\n";
  }

  void rollback() {
    std::error_code ec;
    if (created_dir_) {
      fs::remove_all(dir_, ec);
      return;
    }
    for (const auto& p : written_) fs::remove(p, ec);
    for (const auto& p : owned_dirs_) fs::remove_all(p, ec);
  }

 private:
  std::string verb_;
  Common common_;
  std::vector<std::string> argv_;
  fs::path dir_;
  bool created_dir_ = false;
  std::vector<fs::path> written_;
  std::vector<fs::path> owned_dirs_;
};

dinv::SetDescriptor parse_set(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() != 3) throw CLI::ValidationError("--set", "expected <kind>,<O>,<D> such as IR,4,3");
  try {
    return dinv::select_set(std::stoi(parts[1]), std::stoi(parts[2]), dinv::parse_set_kind(parts[0]));
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--set", e.what());
  }
}

std::string polys_text(const dinv::Catalog& cat, const std::vector<int>& ids) {
  std::ostringstream os;
  for (int id : ids) {
    const auto& e = cat.entry(id);
    os << id << ": " << e.polynomial.to_text() << "\n";
  }
  return os.str();
}

json polys_json(const dinv::Catalog& cat, const std::vector<int>& ids) {
  json arr = json::array();
  for (int id : ids) {
    const auto& e = cat.entry(id);
    arr.push_back({{"id", id},
                   {"chain", dinv::to_string(e.chain)},
                   {"order", e.order},
                   {"degree", e.degree},
                   {"P", e.P},
                   {"Q", e.Q},
                   {"polynomial", e.polynomial.to_text()},
                   {"terms", e.polynomial.to_json()}});
  }
  return arr;
}

// ---- verbs ----------------------------------------------------------------

void cmd_gen(Run& run, const Common& c, const std::string& set_text) {
  const auto& cat = dinv::default_catalog();
  std::vector<int> ids;
  std::string label = "catalog";
  if (set_text.empty()) {
    for (const auto& e : cat.entries()) ids.push_back(e.id);
  } else {
    const auto set = parse_set(set_text);
    ids = set.member_ids;
    label = set.name();
  }
  if (c.format == "text")
    run.emit("gen.txt", polys_text(cat, ids));
  else
    run.emit("gen.json", json({{"set", label}, {"count", ids.size()}, {"invariants", polys_json(cat, ids)}}).dump(2));
  run.finish({{"set", label}});
}

struct CheckFlags {
  bool invariance = false, weights = false, relations = false, counts = false, references = false, moments = false;
  int trials = 20;
  bool any() const { return invariance || weights || relations || counts || references || moments; }
};

void cmd_check(Run& run, const Common& c, CheckFlags f) {
  if (!f.any()) f.invariance = f.weights = f.relations = f.counts = f.references = f.moments = true;
  const auto& cat = dinv::default_catalog();
  json report = json::object();
  bool ok = true;
  if (f.invariance || f.weights) {
    std::vector<std::pair<std::string, dinv::MapKind>> groups;
    if (f.invariance) groups.emplace_back("euclidean", dinv::MapKind::kEuclidean);
    if (f.weights) {
      groups.emplace_back("similarity", dinv::MapKind::kSimilarity);
      groups.emplace_back("affine", dinv::MapKind::kAffine);
    }
    for (const auto& [gname, kind] : groups) {
      std::vector<dinv::InvarianceRecord> recs(cat.size());
      dinv::parallel_for(cat.size(), c.threads, [&](std::size_t k) {
        const auto& e = cat.entries()[k];
        recs[k] = dinv::invariance_trials(std::to_string(e.id), e.chain, e.polynomial, kind, f.trials,
                                          dinv::subseed(c.seed, {static_cast<std::uint64_t>(e.id)}));
      });
      json rows = json::array();
      int exact = 0, fail = 0, no_claim = 0;
      for (const auto& r : recs) {
        rows.push_back(r.to_json());
        if (r.status == "exact") ++exact;
        else if (r.status == "fail") ++fail;
        else ++no_claim;
      }
      ok = ok && fail == 0;
      report[gname] = {{"exact", exact}, {"fail", fail}, {"no_claim", no_claim}, {"rows", rows}};
    }
  }
  if (f.relations) {
    const auto recs = dinv::verify_relations(cat, dinv::default_relations(), c.threads);
    json rows = json::array();
    int holds = 0;
    for (const auto& r : recs) {
      rows.push_back(r.to_json());
      if (r.status == dinv::RelationStatus::kHolds) ++holds;
    }
    ok = ok && holds == static_cast<int>(recs.size());
    report["relations"] = {{"total", recs.size()}, {"holds", holds}, {"rows", rows}};
  }
  if (f.counts) {
    json rows = json::array();
    bool all = true;
    for (const auto& r : dinv::count_report(cat, c.threads, c.seed)) {
      rows.push_back(r.to_json());
      all = all && r.pass;
    }
    json spans = json::array();
    for (auto [o, d, want] : {std::tuple{4, 4, 230}, std::tuple{3, 3, 25}}) {
      const auto r = dinv::span_dimension(o, d, c.threads);
      spans.push_back({{"O", o}, {"D", d}, {"expected", want}, {"computed", r.rank}, {"method", r.method},
                       {"pass", r.rank == want}});
      all = all && r.rank == want;
    }
    ok = ok && all;
    report["counts"] = {{"rows", rows}, {"span", spans}, {"pass", all}};
  }
  if (f.references) {
    std::vector<int> pool;
    for (const auto& e : cat.entries()) pool.push_back(e.id);
    json rows = json::array();
    int matched = 0;
    for (const auto& m : dinv::match_reference_forms(cat, dinv::default_reference_forms(), pool)) {
      rows.push_back(m.to_json());
      matched += m.matched;
    }
    ok = ok && matched == static_cast<int>(rows.size());
    report["references"] = {{"total", rows.size()}, {"matched", matched}, {"rows", rows}};
  }
  if (f.moments) {
    int checked = 0, nonzero = 0;
    dinv::Rng rng(dinv::subseed(c.seed, {0x303}));
    std::vector<dinv::PointCloud> clouds;
    std::vector<dinv::LinearMap2> maps;
    for (int k = 0; k < f.trials; ++k) clouds.push_back(dinv::random_rational_cloud(rng, 5 + k % 4));
    for (int k = 0; k < 5; ++k) maps.push_back(dinv::random_affine(rng));
    for (const auto& e : cat.entries()) {
      if (e.P != 0) continue;
      for (const auto& cl : clouds)
        for (const auto& m : maps) {
          ++checked;
          if (dinv::moment_isomorphism_check(e.chain, e.polynomial, cl, m) != 0) ++nonzero;
        }
    }
    ok = ok && nonzero == 0;
    report["moments"] = {{"checks", checked}, {"nonzero_residuals", nonzero}};
  }
  report["pass"] = ok;
  run.emit("check.json", report.dump(2));
  run.finish();
  if (!ok) throw CheckFailed("one or more checks failed");
}

dinv::Image read_input(const std::string& path) {
  if (!fs::exists(path)) throw std::runtime_error("no such file: " + path);
  return dinv::read_pgm(path);
}

void cmd_eval(Run& run, const Common&, const std::string& patch, const std::string& set_text,
              const std::vector<double>& sigmas) {
  const auto set = parse_set(set_text);
  const auto img = read_input(patch);
  const auto fv = dinv::feature_vector(img, set, sigmas);
  json j = fv.to_json();
  j["set"] = set.name();
  run.emit("features.json", j.dump(2));
  run.finish({{"patch", patch}, {"set", set.name()}});
}

void cmd_featmap(Run& run, const Common& c, const std::string& image, const std::string& set_text, double sigma) {
  if (!run.has_out()) throw CLI::ValidationError("--out", "featmap writes images and needs --out");
  const auto set = parse_set(set_text);
  const auto img = image.empty() ? dinv::default_base_image(c.seed) : read_input(image);
  const dinv::FeatureEvaluator eval(dinv::default_catalog(), set.member_ids);
  const auto fm = dinv::feature_map(img, eval, sigma, c.threads);
  const fs::path sub = run.dir() / "maps";
  run.note_dir(sub);
  dinv::write_feature_map(fm, sub.string());
  run.finish({{"image", image.empty() ? "default base" : image}, {"set", set.name()}, {"sigma", sigma}});
}

dinv::SynthDbSpec make_spec(const Common& c, const std::string& preset, int instances, const std::string& base) {
  dinv::SynthDbSpec spec;
  spec.transforms = dinv::transform_preset(preset);
  spec.instances = instances;
  spec.seed = c.seed;
  spec.base_seed = c.seed;
  spec.base_path = base;
  if (!base.empty() && !fs::exists(base)) throw std::runtime_error("no such file: " + base);
  return spec;
}

void cmd_synthdb(Run& run, const Common& c, const std::string& preset, int instances, const std::string& base) {
  if (!run.has_out()) throw CLI::ValidationError("--out", "synthdb writes a database directory and needs --out");
  const auto db = dinv::build_synth_db(make_spec(c, preset, instances, base), c.threads);
  const fs::path sub = run.dir() / "db";
  run.note_dir(sub);
  dinv::write_synth_db(db, sub.string());
  run.finish({{"preset", preset}, {"instances", instances}, {"patches", db.records.size()}});
}

dinv::PatchDatabase obtain_db(const Common& c, const std::string& db_dir, const std::string& preset, int instances,
                              const std::string& base) {
  if (!db_dir.empty()) return dinv::load_synth_db(db_dir);
  return dinv::build_synth_db(make_spec(c, preset, instances, base), c.threads);
}

void cmd_classify(Run& run, const Common& c, const std::string& db_dir, const std::string& preset, int instances,
                  const std::string& base, const std::string& set_text, const std::vector<double>& sigmas) {
  const auto set = parse_set(set_text);
  const auto db = obtain_db(c, db_dir, preset, instances, base);
  const dinv::FeatureEvaluator eval(dinv::default_catalog(), set.member_ids);
  auto res = dinv::nn_classify(db, eval, sigmas, c.threads);
  res.set_name = set.name();
  run.emit("classify.json", res.to_json().dump(2));
  run.finish({{"db", db_dir.empty() ? "generated:" + preset : db_dir}});
}

void cmd_verify(Run& run, const Common& c, const std::string& db_dir, const std::string& preset, int instances,
                const std::string& base, const std::string& set_text, const std::vector<double>& sigmas,
                int negatives) {
  const auto set = parse_set(set_text);
  const auto db = obtain_db(c, db_dir, preset, instances, base);
  const dinv::FeatureEvaluator eval(dinv::default_catalog(), set.member_ids);
  const auto feats = dinv::database_features(db, eval, sigmas, c.threads);
  const auto v = dinv::pair_verify(feats, db.instances(), negatives, c.seed);
  json j = v.to_json();
  j["set"] = set.name();
  j["sigma"] = sigmas;
  j["negatives_per_positive"] = negatives;
  run.emit("verify.json", j.dump(2));
  if (run.has_out()) run.emit("verify_curve.csv", v.curve_csv());
  run.finish({{"db", db_dir.empty() ? "generated:" + preset : db_dir}});
}

void cmd_report(Run& run, const Common& c) {
  run.emit("report.json", dinv::discrepancy_report(dinv::default_catalog(), c.threads).dump(2));
  run.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential invariants: generation, verification and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Seed for every randomized step")->capture_default_str();
    sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)")->capture_default_str();
    sub->add_option("--out", common.out, "Output directory (stdout when omitted, where possible)");
    sub->add_option("--format", common.format, "Listing format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  std::string set_text, patch, image, db_dir, base, preset = "db1";
  std::vector<double> sigmas{12.0};
  int instances = 20, negatives = 5;
  CheckFlags flags;

  auto* gen = app.add_subcommand("gen", "List catalog invariants or one set");
  add_common(gen);
  gen->add_option("--set", set_text, "Set as <LI|IR|FI>,<O>,<D>");

  auto* check = app.add_subcommand("check", "Run invariance, relation, count and reference checks");
  add_common(check);
  check->add_flag("--invariance", flags.invariance, "Exact rotation invariance of every entry");
  check->add_flag("--weights", flags.weights, "Similarity and affine weights");
  check->add_flag("--relations", flags.relations, "Polynomial relations");
  check->add_flag("--counts", flags.counts, "Set sizes and ranks");
  check->add_flag("--references", flags.references, "Reference polynomial forms");
  check->add_flag("--moments", flags.moments, "Moment isomorphism of G-only entries");
  check->add_option("--trials", flags.trials, "Random trials per check")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Feature vector of one patch");
  add_common(eval);
  eval->add_option("--patch", patch, "PGM patch")->required();
  eval->add_option("--set", set_text, "Set as <LI|IR|FI>,<O>,<D>")->required();
  eval->add_option("--sigma", sigmas, "Scales")->delimiter(',');

  auto* featmap = app.add_subcommand("featmap", "Per-invariant feature maps of an image");
  add_common(featmap);
  featmap->add_option("--image,--base", image, "PGM image (default: seeded base texture)");
  featmap->add_option("--set", set_text, "Set as <LI|IR|FI>,<O>,<D>")->required();
  featmap->add_option("--sigma", sigmas, "Scale")->delimiter(',');

  auto* synth = app.add_subcommand("synthdb", "Build a synthetic patch database");
  add_common(synth);
  synth->add_option("--preset", preset, "db1, rotation, translation or all")->capture_default_str();
  synth->add_option("--instances", instances, "Instances per class")->capture_default_str();
  synth->add_option("--base", base, "Base PGM (default: seeded texture)");

  auto* classify = app.add_subcommand("classify", "Nearest-neighbour classification accuracy");
  auto* verify = app.add_subcommand("verify", "Pair verification mAP");
  for (auto* sub : {classify, verify}) {
    add_common(sub);
    sub->add_option("--db", db_dir, "Database directory (default: generate from --preset)");
    sub->add_option("--preset", preset, "Preset when generating")->capture_default_str();
    sub->add_option("--instances", instances, "Instances per class when generating")->capture_default_str();
    sub->add_option("--base", base, "Base PGM when generating");
    sub->add_option("--set", set_text, "Set as <LI|IR|FI>,<O>,<D>")->required();
    sub->add_option("--sigma", sigmas, "Scales")->delimiter(',');
  }
  verify->add_option("--negatives", negatives, "Negative pairs per positive")->capture_default_str();

  auto* report = app.add_subcommand("report", "Consolidated discrepancy report");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::vector<std::string> args(argv, argv + argc);
  Run run(sub->get_name(), common, args);
  try {
    if (common.threads < 0) throw CLI::ValidationError("--threads", "must be >= 0");
    run.open();
    if (sub == gen) cmd_gen(run, common, set_text);
    else if (sub == check) cmd_check(run, common, flags);
    else if (sub == eval) cmd_eval(run, common, patch, set_text, sigmas);
    else if (sub == featmap) cmd_featmap(run, common, image, set_text, sigmas.at(0));
    else if (sub == synth) cmd_synthdb(run, common, preset, instances, base);
    else if (sub == classify) cmd_classify(run, common, db_dir, preset, instances, base, set_text, sigmas);
    else if (sub == verify) cmd_verify(run, common, db_dir, preset, instances, base, set_text, sigmas, negatives);
    else if (sub == report) cmd_report(run, common);
  } catch (const CheckFailed& e) {
    std::cerr << "dinv: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    run.rollback();
    std::cerr << "dinv: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    run.rollback();
    std::cerr << "dinv: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    run.rollback();
    std::cerr << "dinv: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
