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
#include "lqas/dataset.hpp"
#include "lqas/errors.hpp"

#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

using namespace lqas;
namespace fs = std::filesystem;

namespace {

std::size_t count_role(const DatasetIndex &index, SplitRole role) {
    return static_cast<std::size_t>(std::count_if(
        index.entries.begin(), index.entries.end(),
        [role](const SourceEntry &e) { return e.role == role; }));
}

std::vector<std::size_t> per_class(const std::vector<Sample> &samples, std::size_t n_classes) {
    std::vector<std::size_t> counts(n_classes, 0);
    for (const Sample &s : samples) {
        ++counts.at(s.label);
    }
    return counts;
}

void write_text(const fs::path &path, const std::string &text) {
    fs::create_directories(path.parent_path());
    std::ofstream(path) << text;
}

const char *const kTetra = "OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";

} // namespace

TEST_CASE("largest-remainder apportionment", "[dataset]") {
    // Per-class training counts of the ten-class benchmark layout.
    const std::vector<std::size_t> modelnet10{106, 515, 889, 200, 200, 465, 200, 680, 392, 344};
    const std::size_t total = std::accumulate(modelnet10.begin(), modelnet10.end(), std::size_t{0});
    REQUIRE(total == 3991);
    const auto val = apportion(modelnet10, 0.2);
    CHECK(std::accumulate(val.begin(), val.end(), std::size_t{0}) == 798);
    CHECK(total - 798 == 3193);
    for (std::size_t c = 0; c < val.size(); ++c) {
        CHECK(std::abs(static_cast<double>(val[c]) - 0.2 * static_cast<double>(modelnet10[c])) < 1.0);
    }
    const auto kept = apportion(std::vector<std::size_t>(10, 319), 0.1);
    CHECK(std::accumulate(kept.begin(), kept.end(), std::size_t{0}) == 319);
    CHECK(apportion({5, 5}, 0.0) == std::vector<std::size_t>{0, 0});
    CHECK(apportion({5, 5}, 1.0) == std::vector<std::size_t>{5, 5});
}

TEST_CASE("synthetic tags", "[dataset]") {
    CHECK(parse_synthetic_tag("synthetic")->n_samples == 500);
    CHECK(parse_synthetic_tag("synthetic:shapes3")->name == "shapes3");
    CHECK(parse_synthetic_tag("synthetic:shapes3:60")->n_samples == 60);
    CHECK_FALSE(parse_synthetic_tag("/data/ModelNet10").has_value());
    CHECK_THROWS_AS(parse_synthetic_tag("synthetic:blobs"), DataError);
    CHECK_THROWS_AS(parse_synthetic_tag("synthetic:shapes3:x"), DataError);
}

TEST_CASE("synthetic split is stratified 320/80/100", "[dataset]") {
    const DatasetIndex index = index_synthetic(SyntheticSpec{}, 0.2, 3);
    CHECK(index.class_names.size() == 3);
    CHECK(count_role(index, SplitRole::Train) == 320);
    CHECK(count_role(index, SplitRole::Validation) == 80);
    CHECK(count_role(index, SplitRole::Test) == 100);
    for (const SplitRole role : {SplitRole::Train, SplitRole::Validation, SplitRole::Test}) {
        std::vector<std::size_t> counts(3, 0);
        for (const SourceEntry &e : index.entries) {
            if (e.role == role) {
                ++counts[e.label];
            }
        }
        const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
        CHECK(*hi - *lo <= 1);
    }
    const DatasetIndex again = index_synthetic(SyntheticSpec{}, 0.2, 3);
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        CHECK(index.entries[i].role == again.entries[i].role);
    }
}

TEST_CASE("synthetic clouds are deterministic and labelled", "[dataset]") {
    SyntheticSpec spec;
    spec.n_points = 200;
    const PointCloud a = synthetic_cloud(spec, 4, 11);
    CHECK(a.label == 1);
    CHECK(a.points.size() == 200);
    CHECK(a.points == synthetic_cloud(spec, 4, 11).points);
    CHECK(a.points != synthetic_cloud(spec, 4, 12).points);
}

TEST_CASE("build_splits applies the reduction to train and validation only", "[dataset]") {
    GridOptions options;
    options.k = 1;
    options.n_points = 100;
    const DatasetSplit full = build_splits("synthetic:shapes3:60", options, 0.2, 0.0, 5);
    CHECK(full.train.size() + full.validation.size() + full.test.size() == 60);
    CHECK(full.test.size() == 12);
    const DatasetSplit reduced = build_splits("synthetic:shapes3:60", options, 0.2, 0.5, 5);
    CHECK(reduced.reduction_fraction == 0.5);
    CHECK(reduced.train.size() == full.train.size() / 2);
    CHECK(reduced.validation.size() == (full.validation.size() + 1) / 2);
    CHECK(reduced.test.size() == full.test.size());
    const auto counts = per_class(reduced.train, 3);
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    CHECK(*hi - *lo <= 1);
    CHECK(full.train.front().grid.k() == 1);

    const DatasetSplit twice = build_splits("synthetic:shapes3:60", options, 0.2, 0.5, 5);
    REQUIRE(twice.train.size() == reduced.train.size());
    for (std::size_t i = 0; i < twice.train.size(); ++i) {
        CHECK(twice.train[i].grid == reduced.train[i].grid);
        CHECK(twice.train[i].source == reduced.train[i].source);
    }
    CHECK_THROWS_AS(apply_reduction(full, 1.0, 1), std::invalid_argument);
}

TEST_CASE("mesh directory index", "[dataset]") {
    const fs::path root = testing::scratch_dir("mesh_index");
    for (const std::string cls : {"cone", "box"}) {
        for (int i = 0; i < 5; ++i) {
            write_text(root / cls / "train" / (cls + "_" + std::to_string(i) + ".off"), kTetra);
        }
        write_text(root / cls / "test" / (cls + "_t.off"), kTetra);
    }
    write_text(root / "box" / "train" / "notes.txt", "ignored");

    const DatasetIndex index = index_mesh_directory(root.string(), 0.2, 1);
    CHECK(index.class_names == std::vector<std::string>{"box", "cone"});
    CHECK(index.entries.size() == 12);
    CHECK(count_role(index, SplitRole::Validation) == 2);
    CHECK(count_role(index, SplitRole::Test) == 2);

    GridOptions options;
    options.k = 1;
    options.n_points = 50;
    const DatasetSplit split = build_splits(root.string(), options, 0.2, 0.0, 1);
    CHECK(split.train.size() == 8);
    CHECK(split.skipped.empty());

    write_text(root / "box" / "train" / "box_bad.off", "OFF\n1 1 0\n0 0 0\n3 0 0 0\n");
    CHECK_THROWS_AS(build_splits(root.string(), options, 0.2, 0.0, 1), DataError);

    CHECK_THROWS_AS(index_mesh_directory((root / "missing").string(), 0.2, 1), DataError);
    fs::create_directories(root / "empty_class");
    CHECK_THROWS_AS(index_mesh_directory(root.string(), 0.2, 1), DataError);
}

TEST_CASE("manifest round trip", "[dataset]") {
    DatasetManifest manifest;
    manifest.class_names = {"a", "b c"};
    manifest.k = 2;
    manifest.settings = "source=synthetic;k=2";
    manifest.rows = {{SplitRole::Train, 0, "src/0", "grids/train_0.lqg", "0011223344556677"},
                     {SplitRole::Test, 1, "src/1", "grids/test_0.lqg", "8899aabbccddeeff"}};
    std::stringstream stream;
    write_manifest(stream, manifest);
    const DatasetManifest back = read_manifest(stream);
    CHECK(back.class_names == manifest.class_names);
    CHECK(back.k == 2);
    CHECK(back.settings == manifest.settings);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[1].role == SplitRole::Test);
    CHECK(back.rows[1].checksum == "8899aabbccddeeff");

    std::stringstream bad("not a manifest\n");
    CHECK_THROWS_AS(read_manifest(bad), DataError);

    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
