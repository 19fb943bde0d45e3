#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "flab/funcspace.hpp"

namespace flab {

/// Builds a function from the JSON expression grammar, e.g.
/// `{"kind":"shift","t":1.0,"inner":{"kind":"gaussian","a":1.0}}`.
Function function_from_json(const nlohmann::json& j);
Function parse_function(std::string_view text);

/// Inverse of function_from_json; opaque nodes cannot be serialized.
nlohmann::json function_to_json(const Function& f);

/// `{"atoms":[{"location":0,"mass":1}], "density":{...}}`; masses may be numbers or [re, im].
MeasureSpec measure_from_json(const nlohmann::json& j);

cplx complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(cplx c);

} // namespace flab
