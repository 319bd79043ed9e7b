#pragma once

#include <nlohmann/json.hpp>

#include "ssi/semantics.hpp"

namespace ssi::detail {

using ordered_json = nlohmann::ordered_json;

ordered_json model_json(const Model& m);
ordered_json frame_json(const Frame& f);
Model model_from_json_value(const nlohmann::json& j);

}  // namespace ssi::detail
