#pragma once

#include "cursor.hpp"
#include "ipj/qeps.hpp"

namespace ipj::detail {

Rational read_rational(Cursor& cur);
/// Reads an optional "e" / "e^k" suffix; returns the power (0 when absent).
unsigned read_eps_power(Cursor& cur);
Poly read_poly(Cursor& cur);
QEps read_qeps(Cursor& cur);

}  // namespace ipj::detail
