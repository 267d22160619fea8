#pragma once

// Quasimodels for round-based interactive proofs and for the interaction
// model conditions.

#include <cstdint>
#include <optional>
#include <vector>

#include "ipj/ispec.hpp"
#include "ipj/semantics.hpp"

namespace ipj {

struct RoundConfig {
  unsigned rounds = 1;
  /// Per-round error r, strictly between 0 and 1.
  Rational error;
  Term secret = Term::variable("t");
  /// Must be an atom; it is made true exactly where some round passes.
  EFormula claim = EFormula::atom("a");
  bool honest = true;
  /// Make the claim true at every world instead.
  bool claim_everywhere = false;
  /// Distinguished outcome vector (true = pass). Defaults to all-pass when
  /// honest and all-fail otherwise.
  std::optional<std::vector<bool>> w0;
};

struct RoundModel {
  RoundConfig config;
  /// Worlds are outcome vectors; world i has round j passing iff bit j of i
  /// is set.
  Quasimodel quasi;
  /// s1 ... sn, as constants.
  std::vector<Term> round_terms;
};

/// Throws Error(Size) for more than 20 rounds and Error(Config) for a bad
/// error rate, zero rounds or a non-atomic claim.
RoundModel build_round_model(const RoundConfig& cfg);

struct IppReport {
  QEps measure;  // mu([claim])
  QEps bound;    // 1 - r^n
  Report report;
};

/// Checks the premises (each round passes with mass 1 - r, rounds pairwise
/// independent) and the conclusion mu([claim]) >= 1 - r^n, both directly and
/// as the truth of the implication in the quasimodel.
IppReport verify_ipp_bound(const RoundModel& m);

struct WitnessConfig {
  /// An atom with a spec entry.
  EFormula alpha = EFormula::atom("a");
  Term t = Term::variable("t");
  std::uint64_t k = 1;
  std::uint64_t nmax = 10;
  bool honest = true;
  bool zk = false;
};

/// Honest: mu([f[n](t) :[V] box[P] alpha]) = 1 - 1/n^k exactly for
/// threshold < n <= nmax, then 1 - e from nmax + 1 on. Dishonest: the event
/// has mass e throughout. With zk, the verifier gets t :[P] alpha only on a
/// world of mass e. Throws Error(Config) when alpha has no spec entry, is
/// not an atom, has no threshold at k, or nmax does not exceed it.
Quasimodel build_interaction_witness(const InteractionSpec& spec, const WitnessConfig& cfg);

}  // namespace ipj
