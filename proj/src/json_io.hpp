#pragma once

#include <string>

#include "covector.hpp"

namespace comasslab {

// Parses the covector interchange schema
//   {"n": 6, "p": 3, "terms": [{"index": [1,2,3], "coeff": 1.0}, ...]}
// Raises Errc::parse_error with the offending term position for duplicate or
// non-increasing indices, wrong arity, out-of-range entries, or malformed
// JSON. Unknown top-level keys are ignored; unknown keys inside a term are
// rejected.
Covector covector_from_json(const std::string& text);

// Serializes in the same schema; coefficients are rendered with %.17g so a
// round trip through text is bit-exact. Terms appear in canonical
// (lexicographic multi-index) order.
std::string covector_to_json(const Covector& a);

// %.17g rendering used for every floating-point field the lab emits.
std::string format_double(double v);

}  // namespace comasslab
