#pragma once

// Axiom schemas and schema matching.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipj/formula.hpp"
#include "ipj/ispec.hpp"
#include "ipj/threshold.hpp"

namespace ipj {

enum class SchemaId {
  // epistemic
  P, K, T, Four, J, JPlus, JT, J4, JYB,
  // probabilistic
  P1, P2, P3, P4, P5, P6, PA1, PA2,
  // interaction
  M, C, S, COmega, SOmega,
  // evidential zero knowledge (only with the zk flag)
  ZK1, ZK2,
};

std::string_view schema_name(SchemaId id);
std::optional<SchemaId> schema_from_name(std::string_view name);
std::span<const SchemaId> all_schemas();

/// Metavariable assignment for one schema instance. Which fields are set
/// depends on the schema; instantiate() reads exactly those.
struct Bindings {
  std::optional<Formula> whole;  // (p): the tautology itself
  std::optional<EFormula> A;
  std::optional<EFormula> B;
  std::optional<Agent> agent;
  std::optional<Term> s;  // term metavariables
  std::optional<Term> t;
  std::optional<Threshold> sv;  // threshold metavariables
  std::optional<Threshold> tv;
  std::optional<Threshold> u;  // (p6): min(1, s+t)
  std::optional<Rational> r;
  std::optional<Threshold> r1;
  std::optional<Complexity> from;  // (m): f^from -> f^to
  std::optional<Complexity> to;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> m;
};

struct AxiomContext {
  const InteractionSpec* spec = nullptr;
  bool zk = false;
  ParamContext params;
};

/// Side-condition data supplied by a proof line (`ax c n=3 k=2 m=1`).
struct SideData {
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> m;
};

struct SchemaMatch {
  std::optional<Bindings> bindings;
  /// Why the match failed, when it did.
  std::string note;
  bool undecidable = false;
};

SchemaMatch match_schema(SchemaId id, const Formula& f, const AxiomContext& ctx, const SideData& side = {});

struct AxiomMatch {
  SchemaId id;
  Bindings bindings;
};

/// First schema (in SchemaId order) matching f with all side conditions
/// discharged. Failure notes per schema are appended to `notes` if given.
std::optional<AxiomMatch> match_axiom(const Formula& f, const AxiomContext& ctx,
                                      std::vector<std::string>* notes = nullptr);

/// Builds the schema instance for the bindings. Throws std::invalid_argument
/// if a required binding is missing. Side conditions are not checked.
Formula instantiate(SchemaId id, const Bindings& b);

/// Propositional tautology over the formula's boolean skeleton, with atoms,
/// modal, justification and probability subformulas treated as opaque
/// variables. Formulas with more than 20 opaque parts are rejected.
bool is_tautology(const Formula& f);

/// c2:...:cn:A with A an axiom instance (n >= 1), checked without a spec.
bool is_axiom_chain(const EFormula& alpha);

/// 1 - 1/n^k
QEps interaction_bound(std::uint64_t n, std::uint64_t k);

}  // namespace ipj
