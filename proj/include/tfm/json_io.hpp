#pragma once

#include <json.hpp>

#include "tfm/core.hpp"

namespace tfm {

/// Rationals serialize as plain numbers whenever that is exact in a double
/// (integers and power-of-two denominators); anything else becomes a "p/q"
/// string so that witnesses replay with exact arithmetic.
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json reserve_to_json(const Reserve& r);
Reserve reserve_from_json(const nlohmann::json& j);

/// {"family": ..., "r": number|"inf", "f": {"kind": ...}, "i_star": "b0"}
nlohmann::json mechanism_spec_to_json(const MechanismSpec& spec);
MechanismSpec mechanism_spec_from_json(const nlohmann::json& j);

nlohmann::json grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& j);

/// Roster identity tokens: index k <-> "b<k>".
std::string identity_token(int id);
int identity_from_token(const std::string& token);

}  // namespace tfm
