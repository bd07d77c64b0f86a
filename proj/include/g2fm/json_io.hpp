#pragma once

#include "g2fm/cycles.hpp"
#include "g2fm/fourier.hpp"
#include "g2fm/g2core.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

namespace g2fm {

using json = nlohmann::ordered_json;

// Input that does not match the expected schema.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frames addressable by name: "g2", "Z", "W", "W3".
FramePtr frame_by_name(const std::string& name);

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

// {"frame", "degree", "terms": [{"idx": [..], "coeff": "p/q"}]}
json form_to_json(const Form& f);
Form form_from_json(const json& j);

// {"span": [[..], ..]}
json plane_to_json(const Plane& p);
Plane plane_from_json(const json& j);
json verdict_to_json(const CalibrationVerdict& v);

// {"nvars": n, "terms": [{"exp": [..], "coeff": "p/q"}]}
json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j);

// {"poly": {..}} or {"grid": [..] | [[..], ..], "period": [..]} (period defaults to 1 per axis).
json field_to_json(const Field& f);
Field field_from_json(const json& j, int nvars);

// Cycle documents, tagged by "kind":
//   coassoc-semiflat: "side", "functions" {B0,B3 | D1,D2}, "connection" {a1,a2, D1,D2 | B0,B3}
//   assoc-semiflat:   "side", "functions" {B2,B3 | D0,D1}, "connection" {a, D0,D1 | B2,B3}
//   assoc-section / coassoc-section: "fiber" [poly..], "connection" [poly..], optional "points"
//   flat-torus-point / flat-torus-connection: "coords", "scales"
struct SectionDocument {
    SectionCycle section;
    std::vector<std::vector<Rational>> points;  // evaluation points, default the origin
};
using CycleDocument = std::variant<SemiFlatCoassocCycle, SemiFlatAssocCycle, SectionDocument, FlatTorusObject>;

CycleDocument cycle_from_json(const json& j);
json cycle_to_json(const CycleDocument& c);
std::string cycle_kind(const CycleDocument& c);

json connection_to_json(const ConnectionOnW& c);
json residual_to_json(const ResidualReport& r);

}  // namespace g2fm
