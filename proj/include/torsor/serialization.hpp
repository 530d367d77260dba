#pragma once

// JSON encoding of the library's value types. Field names follow the type
// members: {"C", "P"}, {"u", "R", "tau0", "k"}, {"V"}, {"chi", "Phi"},
// {"T", "J"}, {"m", "p", "q", "l"}. Vectors are arrays, matrices arrays of rows.

#include "torsor/affine_algebra.hpp"
#include "torsor/balance.hpp"
#include "torsor/simulate.hpp"

#include <json.hpp>

namespace torsor {

using json = nlohmann::json;

json to_json_value(const MatX& m);
json to_json_vector(const VecX& v);
/// Throws Error naming key when the value has the wrong shape.
MatX matrix_from_json(const json& j, int rows, int cols, const std::string& key);
VecX vector_from_json(const json& j, int size, const std::string& key);

void to_json(json& j, const AffineFrameChange& f);
void from_json(const json& j, AffineFrameChange& f);
void to_json(json& j, const GalileanFrameChange& f);
void from_json(const json& j, GalileanFrameChange& f);
void to_json(json& j, const AffinePoint& a);
void from_json(const json& j, AffinePoint& a);
void to_json(json& j, const AffineForm& a);
void from_json(const json& j, AffineForm& a);
void to_json(json& j, const Torsor& t);
void from_json(const json& j, Torsor& t);
void to_json(json& j, const PointwiseTorsor& t);
void from_json(const json& j, PointwiseTorsor& t);
void to_json(json& j, const BalanceResidual& r);
void to_json(json& j, const PointwiseState& s);

}  // namespace torsor
