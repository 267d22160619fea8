#pragma once

// Random finite models satisfying the model conditions, random axiom
// instances over them, and the soundness spot-check built from both.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ipj/axioms.hpp"
#include "ipj/ispec.hpp"
#include "ipj/semantics.hpp"

namespace ipj {

struct GeneratorOptions {
  std::size_t max_worlds = 6;
  std::size_t max_sample = 4;
  /// Interaction instances use k in [0, kmax]; the model conditions hold for
  /// exactly that range.
  std::uint64_t kmax = 3;
};

struct GeneratedModel {
  Quasimodel quasi;
  InteractionSpec spec;
  /// f-free bases the f-families are built over.
  std::set<Term> terms;
  std::uint64_t kmax = 3;
};

/// Atoms p, q, r; base terms x, y. Relations are reflexive-transitive
/// closures of random edges, base evidence is closed upward along each
/// agent's relation, and standard mass sits where every honest f-family
/// reaches, so that the result passes check_model_conditions.
GeneratedModel random_model(std::mt19937_64& rng, const GeneratorOptions& opts = {});

/// A random instance of the schema with its side conditions respected, or
/// nullopt when the model offers none (interaction schemas with an empty
/// spec). `side` receives n and k for the interaction schemas.
std::optional<Formula> random_instance(std::mt19937_64& rng, const GeneratedModel& g, SchemaId id,
                                       SideData* side = nullptr);

struct SoundnessReport {
  std::size_t models = 0;
  std::size_t instances = 0;
  std::size_t failed = 0;
  /// The first few failures in full.
  std::vector<std::string> failures;
  bool pass() const { return failed == 0; }
  void fail(std::string what) {
    if (failed++ < 5) failures.push_back(std::move(what));
  }
};

/// Every schema (zero-knowledge ones included) on every model. Each instance
/// must be accepted by match_schema and be true in the model.
SoundnessReport soundness_harness(std::uint64_t seed, std::size_t models, std::size_t instances_per_model,
                                  const GeneratorOptions& opts = {});

}  // namespace ipj
