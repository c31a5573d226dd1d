#pragma once

#include <string>

#include "deltachow/poly.hpp"

namespace deltachow {

// Text grammar (UTF-8):
//   poly   := sign? term ((`+`|`-`) term)*
//   term   := coeff? ((`*`? factor) | (`/` const-factor))*
//   factor := var tick* (`^` uint)? | `d(` var `,` uint `)` (`^` uint)?
//           | `(` poly `)` (`^` uint)?
//   tick   := `'`
//   coeff  := uint (`/` uint)?
// Variables are identifiers; over Q(t) the identifier `t` denotes the base
// field element t. `/` between factors is exact division and requires a
// constant divisor (used for rational-function coefficients).
DiffPoly parse_poly(const std::string& text, const RingPtr& ring);

enum class FormatStyle { Text, Json, Latex };

std::string format_poly(const DiffPoly& p, FormatStyle style = FormatStyle::Text);

std::string format_monomial(const Monomial& m, const RingContext& ring);

}  // namespace deltachow
