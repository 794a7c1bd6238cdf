#pragma once

#include "steklov/geometry.hpp"

#include <json.hpp>

#include <string>

namespace steklov {

nlohmann::json to_json(const PlanarDomain& domain);
PlanarDomain domain_from_json(const nlohmann::json& j);

void save_domain(const PlanarDomain& domain, const std::string& path);
PlanarDomain load_domain(const std::string& path);

}  // namespace steklov
