// Copyright 2026 The LQAS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file model_io.hpp
 * Model checkpoints: a circuit document with an extra "head" object holding
 * n_classes, n_features, trainable and the row-major weights as exact
 * decimal strings. Documents without "head" load as circuit-only.
 */

#include "lqas/classifier.hpp"

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace lqas {

[[nodiscard]] nlohmann::json model_to_json(const Model &model);

struct LoadedModel {
    CircuitTape tape;
    std::optional<LinearHead> head;
};

/// Throws ParseError on malformed documents.
[[nodiscard]] LoadedModel model_from_json(const nlohmann::json &doc);

[[nodiscard]] std::string serialize_model(const Model &model);
[[nodiscard]] LoadedModel deserialize_model(std::string_view document);

void save_model(const std::string &path, const Model &model);
[[nodiscard]] LoadedModel load_model(const std::string &path);

} // namespace lqas
