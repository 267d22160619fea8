#pragma once

// Line-oriented model files.
//
//   worlds: w0 w1
//   R[P]:            one edge `w -> u` per line; closure is not applied
//   R[V]:
//   val:             `w : p q`
//   evidence:        `w [P] term : eformula`
//   U: w0 w1
//   mu:              `w = qeps`
//   w0: w0
//   atoms: p q       extra atoms with no true world
//   pool:            one eformula per line, extra application witnesses
//   terms:           one f-free base term per line, for the model conditions
//
// `#` starts a comment. Inline content may follow a section header.

#include <set>
#include <string>
#include <string_view>

#include "ipj/semantics.hpp"

namespace ipj {

struct ModelFile {
  Quasimodel quasi;
  /// False when the file has no U/mu/w0 sections; quasi.sample is then empty.
  bool has_measure = false;
  /// Declared `terms:` plus the inner terms of every f-term in the evidence.
  std::set<Term> terms;
};

/// Throws SyntaxError for malformed lines and Error(Model) for relation,
/// sample or mass defects.
ModelFile load_model(std::string_view text);

std::string write_model(const Quasimodel& q, const std::set<Term>& terms = {});

}  // namespace ipj
