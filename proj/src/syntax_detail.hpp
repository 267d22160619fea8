#pragma once

#include "cursor.hpp"
#include "ipj/syntax.hpp"

namespace ipj::detail {

/// Prefix readers used by the file-format loaders; they stop at the first
/// character that cannot continue the phrase.
Term read_term(Cursor& cur, const ParseOptions& opts);
Formula read_formula(Cursor& cur, const ParseOptions& opts);
Threshold read_threshold(Cursor& cur, const ParseOptions& opts);

}  // namespace ipj::detail
