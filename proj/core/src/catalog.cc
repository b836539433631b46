#include "dinv/catalog.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dinv/assets.h"
#include "dinv/construction.h"
#include "dinv/independence.h"
#include "dinv/parallel.h"

namespace dinv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int to_int(std::string_view s, const std::string& context) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("expected integer in " + context + ", got '" + std::string(s) + "'");
  return v;
}

// Non-comment, non-blank lines split at the first ':'.
std::vector<std::pair<std::string, std::string>> keyed_lines(std::string_view text, const std::string& what) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = trim(line);
    if (v.empty() || v.front() == '#') continue;
    const auto colon = v.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument(what + " line " + std::to_string(lineno) + ": missing ':'");
    out.emplace_back(std::string(trim(v.substr(0, colon))), std::string(trim(v.substr(colon + 1))));
  }
  return out;
}

}  // namespace

Catalog::Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!index_.emplace(entries_[k].id, k).second)
      throw std::invalid_argument("duplicate catalog id " + std::to_string(entries_[k].id));
    bindings_.emplace(entries_[k].id, entries_[k].polynomial);
  }
}

const CatalogEntry& Catalog::entry(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("no catalog entry " + std::to_string(id));
  return entries_[it->second];
}

Catalog build_catalog(std::string_view text, int threads) {
  const auto lines = keyed_lines(text, "catalog");
  std::vector<CatalogEntry> entries(lines.size());
  parallel_for(lines.size(), threads, [&](std::size_t k) {
    const auto& [key, body] = lines[k];
    CatalogEntry& e = entries[k];
    e.id = to_int(key, "catalog id");
    try {
      e.chain = parse_chain(body);
      e.polynomial = chain_polynomial(e.chain);
    } catch (const std::exception& ex) {
      throw std::invalid_argument("catalog entry " + key + ": " + ex.what());
    }
    e.order = e.chain.order();
    e.degree = e.chain.degree();
    e.P = e.chain.f_count();
    e.Q = e.chain.g_count();
    if (e.order > 4 || e.degree > 4)
      throw std::invalid_argument("catalog entry " + key + " exceeds order/degree 4");
  });
  return Catalog(std::move(entries));
}

const Catalog& default_catalog() {
  static const Catalog catalog = build_catalog(assets::k_catalog);
  return catalog;
}

std::string to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::kHolds:
      return "holds";
    case RelationStatus::kHoldsUpToScalar:
      return "holds-up-to-scalar";
    case RelationStatus::kFails:
      return "fails";
  }
  return "?";
}

nlohmann::json RelationRecord::to_json() const {
  nlohmann::json j = {{"lhs", lhs_id}, {"rhs", rhs}, {"status", to_string(status)}};
  if (status == RelationStatus::kHoldsUpToScalar) j["scalar"] = dinv::to_string(scalar);
  if (status != RelationStatus::kHolds) {
    j["residual"] = residual.to_text();
    j["residual_terms"] = residual.size();
  }
  return j;
}

std::vector<RelationSpec> load_relations(std::string_view text) {
  std::vector<RelationSpec> out;
  for (const auto& [key, body] : keyed_lines(text, "relations")) {
    try {
      out.push_back({to_int(key, "relation lhs"), Expression::parse(body)});
    } catch (const std::exception& ex) {
      throw std::invalid_argument("relation " + key + ": " + ex.what());
    }
  }
  return out;
}

const std::vector<RelationSpec>& default_relations() {
  static const std::vector<RelationSpec> relations = load_relations(assets::k_relations);
  return relations;
}

std::vector<RelationRecord> verify_relations(const Catalog& catalog, const std::vector<RelationSpec>& relations,
                                             int threads) {
  std::vector<RelationRecord> out(relations.size());
  parallel_for(relations.size(), threads, [&](std::size_t k) {
    const auto& rel = relations[k];
    RelationRecord& r = out[k];
    r.lhs_id = rel.lhs_id;
    r.rhs = rel.rhs.text();
    const auto& lhs = catalog.entry(rel.lhs_id).polynomial;
    const auto rhs = rel.rhs.substitute(catalog.bindings());
    r.residual = lhs - rhs;
    if (r.residual.is_zero()) {
      r.status = RelationStatus::kHolds;
      r.scalar = 1;
      return;
    }
    auto [ok, s] = proportional(lhs, rhs);
    r.status = ok ? RelationStatus::kHoldsUpToScalar : RelationStatus::kFails;
    r.scalar = s;
  });
  return out;
}

nlohmann::json ReferenceMatch::to_json() const {
  nlohmann::json j = {{"label", label}, {"matched", matched}, {"printed", printed.to_text()}};
  if (matched) {
    j["entry"] = entry;
    j["scalar"] = dinv::to_string(scalar);
  } else {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : nearest)
      cands.push_back({{"entry", c.id}, {"support_overlap", c.support_overlap}, {"residual", c.residual.to_text()}});
    j["nearest"] = cands;
  }
  return j;
}

std::vector<ReferenceForm> load_reference_forms(std::string_view text) {
  std::vector<ReferenceForm> out;
  for (const auto& [key, body] : keyed_lines(text, "reference forms")) {
    try {
      out.push_back({to_int(key, "reference label"), parse_polynomial(body)});
    } catch (const std::exception& ex) {
      throw std::invalid_argument("reference form " + key + ": " + ex.what());
    }
  }
  return out;
}

const std::vector<ReferenceForm>& default_reference_forms() {
  static const std::vector<ReferenceForm> forms = load_reference_forms(assets::k_reference_forms);
  return forms;
}

std::vector<ReferenceMatch> match_reference_forms(const Catalog& catalog, const std::vector<ReferenceForm>& forms,
                                                  const std::vector<int>& pool) {
  std::vector<ReferenceMatch> out;
  for (const auto& form : forms) {
    ReferenceMatch m;
    m.label = form.label;
    m.printed = form.polynomial;
    // Prefer the entry whose id equals the label when several match.
    std::vector<int> order = pool;
    std::stable_partition(order.begin(), order.end(), [&](int id) { return id == form.label; });
    for (int id : order) {
      auto [ok, s] = proportional(form.polynomial, catalog.entry(id).polynomial);
      if (ok) {
        m.matched = true;
        m.entry = id;
        m.scalar = s;
        break;
      }
    }
    if (!m.matched) {
      std::set<Monomial> support;
      for (const auto& [mono, c] : form.polynomial.terms()) support.insert(mono);
      for (int id : pool) {
        const auto& poly = catalog.entry(id).polynomial;
        std::size_t common = 0;
        for (const auto& [mono, c] : poly.terms()) common += support.count(mono);
        const double uni = static_cast<double>(support.size() + poly.size() - common);
        m.nearest.push_back({id, uni > 0 ? common / uni : 0.0, form.polynomial - poly});
      }
      std::stable_sort(m.nearest.begin(), m.nearest.end(),
                       [](const Candidate& a, const Candidate& b) { return a.support_overlap > b.support_overlap; });
      if (m.nearest.size() > 3) m.nearest.resize(3);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string to_string(SetKind k) {
  switch (k) {
    case SetKind::kLI:
      return "LI";
    case SetKind::kIR:
      return "IR";
    case SetKind::kFI:
      return "FI";
  }
  return "?";
}

SetKind parse_set_kind(std::string_view s) {
  if (s == "LI") return SetKind::kLI;
  if (s == "IR") return SetKind::kIR;
  if (s == "FI") return SetKind::kFI;
  throw std::invalid_argument("unknown set kind '" + std::string(s) + "' (expected LI, IR or FI)");
}

std::string SetDescriptor::name() const {
  return to_string(kind) + "(" + std::to_string(O) + "," + std::to_string(D) + ")";
}

std::vector<SetDescriptor> load_sets(std::string_view text) {
  std::vector<SetDescriptor> out;
  for (const auto& [key, body] : keyed_lines(text, "sets")) {
    std::istringstream head(key);
    std::string kind;
    SetDescriptor d;
    if (!(head >> kind >> d.O >> d.D)) throw std::invalid_argument("bad set header '" + key + "'");
    d.kind = parse_set_kind(kind);
    std::istringstream ranges(body);
    std::string item;
    while (std::getline(ranges, item, ',')) {
      const auto dash = item.find('-');
      if (dash == std::string::npos) {
        d.member_ids.push_back(to_int(item, "set " + key));
      } else {
        const int lo = to_int(std::string_view(item).substr(0, dash), "set " + key);
        const int hi = to_int(std::string_view(item).substr(dash + 1), "set " + key);
        if (hi < lo) throw std::invalid_argument("empty range '" + item + "' in set " + key);
        for (int v = lo; v <= hi; ++v) d.member_ids.push_back(v);
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

SetDescriptor select_set(int O, int D, SetKind kind) {
  if ((O != 3 && O != 4) || (D != 3 && D != 4))
    throw std::invalid_argument("set bounds must be 3 or 4, got O=" + std::to_string(O) + " D=" + std::to_string(D));
  static const std::vector<SetDescriptor> sets = load_sets(assets::k_sets);
  for (const auto& s : sets)
    if (s.O == O && s.D == D && s.kind == kind) return s;
  throw std::logic_error("set table is missing " + to_string(kind));
}

int expected_cardinality(int O, int D, SetKind kind) {
  const int idx = (O == 4 ? 0 : 2) + (D == 4 ? 0 : 1);  // (4,4) (4,3) (3,4) (3,3)
  static constexpr int kLI[] = {230, 59, 64, 25};
  static constexpr int kIR[] = {96, 34, 30, 17};
  static constexpr int kFI[] = {13, 13, 8, 8};
  if ((O != 3 && O != 4) || (D != 3 && D != 4)) throw std::invalid_argument("set bounds must be 3 or 4");
  switch (kind) {
    case SetKind::kLI:
      return kLI[idx];
    case SetKind::kIR:
      return kIR[idx];
    case SetKind::kFI:
      return kFI[idx];
  }
  return 0;
}

std::vector<ClassicInvariant> classic_invariants(const Catalog& catalog) {
  const std::vector<std::pair<std::string, std::string>> forms = {
      {"gradient_sq", "f{10}^2 + f{01}^2"},
      {"laplacian", "f{20} + f{02}"},
      {"hessian_det", "f{20}*f{02} - f{11}^2"},
      {"isophote", "f{10}^2*f{02} - 2*f{10}*f{01}*f{11} + f{01}^2*f{20}"},
      {"flowline", "f{01}^2*f{11} + f{10}*f{01}*f{20} - f{10}*f{01}*f{02} - f{10}^2*f{11}"},
  };
  std::vector<ClassicInvariant> out;
  for (const auto& [name, text] : forms) {
    ClassicInvariant ci{name, parse_polynomial(text), {}};
    for (const auto& e : catalog.entries()) {
      auto [ok, s] = proportional(ci.polynomial, e.polynomial);
      if (ok) ci.catalog_matches.emplace_back(e.id, s);
    }
    out.push_back(std::move(ci));
  }
  return out;
}

nlohmann::json discrepancy_report(const Catalog& catalog, int threads) {
  nlohmann::json items = nlohmann::json::array();

  for (const auto& r : verify_relations(catalog, default_relations(), threads)) {
    if (r.status == RelationStatus::kHolds) continue;
    auto j = r.to_json();
    j["topic"] = "relation";
    items.push_back(j);
  }

  const auto ir43 = select_set(4, 3, SetKind::kIR);
  for (const auto& m : match_reference_forms(catalog, default_reference_forms(), ir43.member_ids)) {
    if (m.matched && m.entry == m.label && m.scalar == 1) continue;
    auto j = m.to_json();
    j["topic"] = m.matched ? "reference-form-label" : "reference-form-mismatch";
    items.push_back(j);
  }

  {
    const auto& e3 = catalog.entry(3);
    items.push_back({{"topic", "mixed-derivative-square"},
                     {"detail", "G(1,2)^2 collapses to " + e3.polynomial.to_text() +
                                    "; forms printing the last term as 2*f{11} drop the square"}});
  }

  // IR sets should be LI sets without the left-hand sides of verified relations.
  std::set<int> reducible;
  for (const auto& r : verify_relations(catalog, default_relations(), threads))
    if (r.status != RelationStatus::kFails) reducible.insert(r.lhs_id);
  for (int O : {3, 4}) {
    for (int D : {3, 4}) {
      const auto li = select_set(O, D, SetKind::kLI);
      const auto ir = select_set(O, D, SetKind::kIR);
      std::vector<int> predicted;
      for (int id : li.member_ids)
        if (!reducible.count(id)) predicted.push_back(id);
      if (predicted != ir.member_ids) {
        std::vector<int> extra, missing;
        std::set_difference(ir.member_ids.begin(), ir.member_ids.end(), predicted.begin(), predicted.end(),
                            std::back_inserter(extra));
        std::set_difference(predicted.begin(), predicted.end(), ir.member_ids.begin(), ir.member_ids.end(),
                            std::back_inserter(missing));
        items.push_back({{"topic", "irreducible-set"}, {"set", ir.name()}, {"listed_but_reducible", extra},
                         {"irreducible_but_unlisted", missing}});
      }
      for (auto kind : {SetKind::kLI, SetKind::kIR, SetKind::kFI}) {
        const auto s = select_set(O, D, kind);
        if (static_cast<int>(s.member_ids.size()) != expected_cardinality(O, D, kind))
          items.push_back({{"topic", "set-cardinality"}, {"set", s.name()},
                           {"listed", s.member_ids.size()}, {"expected", expected_cardinality(O, D, kind)}});
      }
    }
  }

  for (auto [O, D] : {std::pair{4, 4}, std::pair{3, 3}}) {
    const int listed = expected_cardinality(O, D, SetKind::kLI);
    const auto span = span_dimension(O, D, threads);
    if (span.rank != listed)
      items.push_back({{"topic", "span-dimension"}, {"O", O}, {"D", D}, {"enumerated_span", span.rank},
                       {"listed_independent", listed},
                       {"detail", "all chains with per-point order <= O and degree <= D span more invariants "
                                  "than the listed linearly independent set"}});
  }

  items.push_back({{"topic", "eigenvalue-discriminant"},
                   {"detail", "Hessian eigenvalues need sqrt((f20-f02)^2 + 4*f11^2); the factor 4 is "
                              "required for lambda1*lambda2 = f20*f02 - f11^2"}});
  items.push_back({{"topic", "first-directional-extrema"},
                   {"detail", "max/min of cos(t)f10 + sin(t)f01 are +|grad f| and -|grad f|, "
                              "not |grad f|^2 and 0"}});
  items.push_back({{"topic", "chi-square-bound"},
                   {"detail", "each term of the modified chi-square distance lies in [0,1]; "
                              "the sum over n components lies in [0,n]"}});
  items.push_back({{"topic", "rotation-orientation"},
                   {"detail", "h_u = cos f_x + sin f_y corresponds to u = [[cos, sin], [-sin, cos]] x"}});
  items.push_back({{"topic", "gaussian-hermite-relation"},
                   {"detail", "the Gaussian factor linking derivative kernels at sigma/sqrt(2) to "
                              "Hermite functions at sigma is exp(-(x^2+y^2)/(2 sigma^2)), with a "
                              "decaying sign; Hermite expansion signs alternate with the summation index"}});
  return items;
}

}  // namespace dinv
