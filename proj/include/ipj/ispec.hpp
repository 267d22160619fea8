#pragma once

// Interaction specifications. The family I(m,k) is stored intensionally: each
// formula carries a threshold function k -> m, and alpha is in I(m,k) iff
// the function is defined at k and m >= threshold(k). The derived set
// I = meet_k join_m I(m,k) is then exactly the formulas whose threshold
// function is total.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ipj/formula.hpp"

namespace ipj {

class ThresholdFn {
 public:
  enum class Kind { Constant, Table, Polynomial };

  static ThresholdFn constant(std::uint64_t m);
  /// Entries must have distinct k (Config error otherwise).
  static ThresholdFn table(std::vector<std::pair<std::uint64_t, std::uint64_t>> entries,
                           std::optional<std::uint64_t> fallback);
  /// m(k) = sum_i coeffs[i] * k^i, saturating at UINT64_MAX.
  static ThresholdFn polynomial(std::vector<std::uint64_t> coeffs);

  Kind kind() const { return kind_; }
  std::optional<std::uint64_t> at(std::uint64_t k) const;
  bool is_total() const { return kind_ != Kind::Table || fallback_.has_value(); }

  std::string describe() const;

 private:
  Kind kind_ = Kind::Constant;
  std::uint64_t constant_ = 0;
  std::map<std::uint64_t, std::uint64_t> table_;
  std::optional<std::uint64_t> fallback_;
  std::vector<std::uint64_t> coeffs_;
};

class InteractionSpec {
 public:
  struct Entry {
    EFormula formula;
    ThresholdFn threshold;
  };

  /// Throws DuplicateEntry if the formula already has an entry.
  void add(const EFormula& alpha, ThresholdFn fn);

  const ThresholdFn* find(const EFormula& alpha) const;
  std::optional<std::uint64_t> threshold(const EFormula& alpha, std::uint64_t k) const;

  bool member(const EFormula& alpha, std::uint64_t m, std::uint64_t k) const;
  bool in_I(const EFormula& alpha) const;

  std::vector<Entry> entries() const;
  bool empty() const { return entries_.empty(); }

 private:
  // keyed by canonical printed form
  std::map<std::string, Entry> entries_;
};

/// One entry per line: `eform ":" ("const" nat | "poly" nat+ |
/// "table" (nat "->" nat)+ ["default" nat])`; `#` starts a comment line.
InteractionSpec load_spec(std::string_view text);
std::string to_text(const InteractionSpec& spec);

}  // namespace ipj
