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
#include "lqas/model_io.hpp"

#include "lqas/errors.hpp"

#include <fstream>
#include <iterator>

namespace lqas {

nlohmann::json model_to_json(const Model &model) {
    nlohmann::json doc = tape_to_json(model.tape);
    nlohmann::json weights = nlohmann::json::array();
    for (const double w : model.head.weights) {
        weights.push_back(format_exact(w));
    }
    doc["head"] = {{"n_classes", model.head.n_classes},
                   {"n_features", model.head.n_features},
                   {"trainable", model.head.trainable},
                   {"weights", std::move(weights)}};
    return doc;
}

LoadedModel model_from_json(const nlohmann::json &doc) {
    LoadedModel out{tape_from_json(doc), std::nullopt};
    if (!doc.contains("head")) {
        return out;
    }
    try {
        const nlohmann::json &h = doc.at("head");
        LinearHead head;
        head.n_classes = h.at("n_classes").get<std::size_t>();
        head.n_features = h.at("n_features").get<std::size_t>();
        head.trainable = h.at("trainable").get<bool>();
        for (const auto &w : h.at("weights")) {
            head.weights.push_back(parse_exact(w.get<std::string>()));
        }
        if (head.weights.size() != head.n_classes * head.n_features) {
            throw ParseError("head: weight count does not match its shape");
        }
        if (head.n_features != 3 * out.tape.n_qubits()) {
            throw ParseError("head: feature count does not match the circuit width");
        }
        out.head = std::move(head);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("head: ") + e.what());
    }
    return out;
}

std::string serialize_model(const Model &model) { return model_to_json(model).dump(2) + "\n"; }

LoadedModel deserialize_model(std::string_view document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("model document is not valid JSON: ") + e.what());
    }
    return model_from_json(doc);
}

void save_model(const std::string &path, const Model &model) {
    std::ofstream out(path, std::ios::trunc);
    out << serialize_model(model);
    if (!out) {
        throw DataError("cannot write model '" + path + "'");
    }
}

LoadedModel load_model(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot read model '" + path + "'");
    }
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return deserialize_model(text);
}

} // namespace lqas
