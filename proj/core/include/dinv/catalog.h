#ifndef DINV_CATALOG_H_
#define DINV_CATALOG_H_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dinv/chain.h"
#include "dinv/expression.h"
#include "dinv/polynomial.h"

namespace dinv {

struct CatalogEntry {
  int id = 0;
  OperatorChain chain;
  InvariantPolynomial polynomial;  // always computed from the chain
  int order = 0;
  int degree = 0;
  int P = 0;  // F count
  int Q = 0;  // G count
};

class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<CatalogEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  // Throws std::out_of_range for an unknown id.
  const CatalogEntry& entry(int id) const;
  bool contains(int id) const { return index_.count(id) > 0; }
  // DI<id> -> polynomial, for expression substitution.
  const std::map<int, InvariantPolynomial>& bindings() const { return bindings_; }

 private:
  std::vector<CatalogEntry> entries_;
  std::map<int, std::size_t> index_;
  std::map<int, InvariantPolynomial> bindings_;
};

// Parses "id: chain" lines ('#' starts a comment line) and builds every entry.
// Throws std::invalid_argument naming the offending entry.
Catalog build_catalog(std::string_view text, int threads = 0);
// The bundled 230-entry catalog, built once on first use.
const Catalog& default_catalog();

enum class RelationStatus { kHolds, kHoldsUpToScalar, kFails };
std::string to_string(RelationStatus s);

struct RelationRecord {
  int lhs_id = 0;
  std::string rhs;
  RelationStatus status = RelationStatus::kFails;
  Rational scalar;               // lhs = scalar * rhs when status != kFails
  InvariantPolynomial residual;  // lhs - rhs

  nlohmann::json to_json() const;
};

struct RelationSpec {
  int lhs_id;
  Expression rhs;
};

std::vector<RelationSpec> load_relations(std::string_view text);
const std::vector<RelationSpec>& default_relations();
std::vector<RelationRecord> verify_relations(const Catalog& catalog, const std::vector<RelationSpec>& relations,
                                             int threads = 0);

struct Candidate {
  int id = 0;
  double support_overlap = 0;  // Jaccard index of monomial supports
  InvariantPolynomial residual;  // printed - candidate
};

struct ReferenceMatch {
  int label = 0;
  InvariantPolynomial printed;
  bool matched = false;
  int entry = 0;
  Rational scalar;  // printed = scalar * entry polynomial
  std::vector<Candidate> nearest;

  nlohmann::json to_json() const;
};

struct ReferenceForm {
  int label;
  InvariantPolynomial polynomial;
};

std::vector<ReferenceForm> load_reference_forms(std::string_view text);
const std::vector<ReferenceForm>& default_reference_forms();
// Matches each printed form against the polynomials of `pool` up to a nonzero
// rational scalar; unmatched rows carry the three nearest candidates by
// support overlap.
std::vector<ReferenceMatch> match_reference_forms(const Catalog& catalog, const std::vector<ReferenceForm>& forms,
                                                  const std::vector<int>& pool);

enum class SetKind { kLI, kIR, kFI };
std::string to_string(SetKind k);
SetKind parse_set_kind(std::string_view s);

struct SetDescriptor {
  int O = 0;
  int D = 0;
  SetKind kind = SetKind::kLI;
  std::vector<int> member_ids;

  std::string name() const;  // e.g. "IR(4,3)"
};

std::vector<SetDescriptor> load_sets(std::string_view text);
// O, D in {3,4}. Throws std::invalid_argument otherwise.
SetDescriptor select_set(int O, int D, SetKind kind);
// Reference cardinality of a set.
int expected_cardinality(int O, int D, SetKind kind);

struct ClassicInvariant {
  std::string name;
  InvariantPolynomial polynomial;
  std::vector<std::pair<int, Rational>> catalog_matches;  // (entry id, poly = s * entry)
};

// |grad f|^2, Laplacian, Hessian determinant, the gradient-weighted second
// derivatives, and the mixed gradient/Hessian term.
std::vector<ClassicInvariant> classic_invariants(const Catalog& catalog);

// Every point where the reference data (forms, relations, sets) and the engine
// disagree, as a JSON list of {topic, detail, ...}.
nlohmann::json discrepancy_report(const Catalog& catalog, int threads = 0);

}  // namespace dinv

#endif  // DINV_CATALOG_H_
