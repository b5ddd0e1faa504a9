#pragma once

#include "mdqec/channel.hpp"

#include <json.hpp>

#include <string>

namespace mdqec::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Matrices serialize as nested row-major arrays of [re, im] pairs.
ordered_json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);

// Channel files: {"dim": n, "kraus": [matrix, ...], "metadata": {...}?}.
ordered_json channel_to_json(const Channel& ch, const json& metadata = json::object());
Channel channel_from_json(const json& j, const Tolerance& tol = {});

json parse_file(const std::string& path);  // throws ParseError with line/position
Channel load_channel(const std::string& path, const Tolerance& tol = {});
CMat load_matrix(const std::string& path);

void write_file(const std::string& path, const ordered_json& j);

}  // namespace mdqec::io
