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
#include "lqas/errors.hpp"
#include "lqas/layered.hpp"
#include "lqas/model_io.hpp"
#include "lqas/store.hpp"

#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

using namespace lqas;
namespace fs = std::filesystem;

namespace {

PrepOptions small_prep() {
    PrepOptions options;
    options.source = "synthetic:shapes3:30";
    options.grid.k = 1;
    options.grid.n_points = 100;
    options.seed = 2;
    return options;
}

} // namespace

TEST_CASE("prepared store caching", "[store]") {
    const fs::path dir = testing::scratch_dir("store_cache");
    const PrepOptions options = small_prep();
    const PrepReport first = prepare_store(dir.string(), options);
    CHECK_FALSE(first.cache_hit);
    CHECK(first.n_grids == 30);
    CHECK(first.recomputed == 30);
    CHECK(fs::exists(dir / kManifestName));
    CHECK(store_is_current(dir.string(), prep_settings(options)));

    const std::string checksum = store_checksum(dir.string());
    const PrepReport second = prepare_store(dir.string(), options);
    CHECK(second.cache_hit);
    CHECK(second.recomputed == 0);
    CHECK(store_checksum(dir.string()) == checksum);

    PrepOptions other = options;
    other.grid.k = 2;
    CHECK_FALSE(store_is_current(dir.string(), prep_settings(other)));

    const DatasetSplit split = load_store(dir.string());
    CHECK(split.train.size() + split.validation.size() + split.test.size() == 30);
    const DatasetSplit direct = build_splits(options.source, options.grid, 0.2, 0.0, 2);
    REQUIRE(split.train.size() == direct.train.size());
    CHECK(split.train.front().grid == direct.train.front().grid);
    CHECK(split.class_names == direct.class_names);

    // Corrupt one grid: loading fails and the next prep recomputes.
    fs::path victim;
    for (const auto &entry : fs::directory_iterator(dir / "grids")) {
        victim = entry.path();
        break;
    }
    {
        std::fstream f(victim, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(20);
        f.put('\x7f');
    }
    CHECK_FALSE(store_is_current(dir.string(), prep_settings(options)));
    CHECK_THROWS_AS(load_store(dir.string()), DataError);
    const PrepReport third = prepare_store(dir.string(), options);
    CHECK_FALSE(third.cache_hit);
    CHECK(store_checksum(dir.string()) == checksum);
    CHECK_NOTHROW(load_store(dir.string()));

    CHECK_THROWS_AS(load_store((dir / "nowhere").string()), DataError);
}

TEST_CASE("model documents round-trip exactly", "[store]") {
    Model model = initial_model(3, 3, true, 9);
    model.tape = append_layer(append_layer(model.tape, 2), 6);
    Rng rng(1);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (double &p : model.tape.mutable_params()) {
        p = u(rng);
    }
    const LoadedModel back = deserialize_model(serialize_model(model));
    CHECK(back.tape.params() == model.tape.params());
    CHECK(back.tape.ops().size() == model.tape.ops().size());
    REQUIRE(back.head.has_value());
    CHECK(*back.head == model.head);

    const LoadedModel circuit_only = deserialize_model(serialize(model.tape));
    CHECK_FALSE(circuit_only.head.has_value());

    const fs::path dir = testing::scratch_dir("model_io");
    save_model((dir / "m.json").string(), model);
    CHECK(load_model((dir / "m.json").string()).head->weights == model.head.weights);
    CHECK_THROWS_AS(load_model((dir / "missing.json").string()), DataError);

    nlohmann::json doc = model_to_json(model);
    doc["head"]["weights"].erase(0);
    CHECK_THROWS_AS(model_from_json(doc), ParseError);
}
