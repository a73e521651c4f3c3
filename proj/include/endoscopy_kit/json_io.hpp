#pragma once

#include <complex>
#include <string>

#include "json.hpp"

#include "endoscopy_kit/forms.hpp"
#include "endoscopy_kit/halfint.hpp"
#include "endoscopy_kit/params.hpp"
#include "endoscopy_kit/rational.hpp"

namespace ek {

// Formal parameters.
//
//   {"context": {"unitary": {"kappa": 1}} | "linear",
//    "N": 4,
//    "constituents": [{"id": "phi1", "m": 1, "n": 1, "r": 1,
//                      "self_dual": true, "parity": -1, "mult": 2}, ...]}
//
// Serialization round-trips losslessly; parsing validates the result.
nlohmann::json param_to_json(const FormalParameter& p);
FormalParameter param_from_json(const nlohmann::json& j);

// Global inner-form specifications.
//
//   {"group": "U", "N": 4,
//    "places": [{"id": "u", "kind": "padic_inert", "a": 1}, ...]}
//
// Each place carries exactly the invariant fields meaningful for its kind:
// "a" at inert p-adic places of U, "p"/"q" at inert real places of U, and
// "x" everywhere else.
nlohmann::json inner_form_to_json(const GlobalInnerFormSpec& spec);
GlobalInnerFormSpec inner_form_from_json(const nlohmann::json& j);

nlohmann::json place_to_json(GroupFamily group, const Place& place);
Place place_from_json(GroupFamily group, const nlohmann::json& j);

/// Exact fractions travel as {"num": p, "den": q} in lowest terms, q > 0.
nlohmann::json rat_to_json(const Rat& r);
Rat rat_from_json(const nlohmann::json& j);

/// Half-integers travel as twice their value: {"two_x": n}.
nlohmann::json halfint_to_json(const HalfInt& x);
HalfInt halfint_from_json(const nlohmann::json& j);

/// Complex numbers travel as {"re": ..., "im": ...}.
nlohmann::json complex_to_json(const std::complex<double>& z);
std::complex<double> complex_from_json(const nlohmann::json& j);

/// Read and parse a JSON document from a file; throws std::runtime_error
/// with the path on I/O failure.
nlohmann::json load_json_file(const std::string& path);

} // namespace ek
