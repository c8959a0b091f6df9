#pragma once

#include <json.hpp>

#include "sl2flow/controls.hpp"
#include "sl2flow/series.hpp"
#include "sl2flow/verify.hpp"

namespace sl2flow {

// Insertion-ordered JSON keeps emitted documents deterministic.
using Json = nlohmann::ordered_json;

// {"truncation_degree": N, "terms": [{"word": "...", "num": "...", "den": "..."}]}
// with terms in (length, lex) order and coefficients as exact integer strings.
Json series_to_json(const NcSeries& s);
NcSeries series_from_json(const Json& j);  // strict: rejects duplicates, bad words

// {"T": ..., "channels": {"a": {...}, "b": {...}, "c": {...}}} where each
// channel is {"kind": "piecewise_constant", "breakpoints": [...], "values":
// [...]} or {"kind": "polynomial", "coeffs": [...]} or {"kind": "sampled",
// "dt": ..., "values": [...]}.
Json controls_to_json(const ControlSpec& c);
ControlSpec controls_from_json(const Json& j);

Json report_to_json(const VerificationReport& r);

}  // namespace sl2flow
