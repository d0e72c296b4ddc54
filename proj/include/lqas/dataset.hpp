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

#include "lqas/pointcloud.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lqas {

enum class SplitRole { Train, Validation, Test };

[[nodiscard]] std::string_view to_string(SplitRole role) noexcept;
[[nodiscard]] std::optional<SplitRole> parse_split_role(std::string_view name) noexcept;

/// Desk-scale generator: sphere shells, cube surfaces and parallel plane
/// pairs with random per-axis scale, orientation jitter and surface noise.
struct SyntheticSpec {
    std::string name{"shapes3"};
    std::size_t n_samples{500};
    std::size_t n_points{kDefaultPointsPerMesh};
};

/// Parses "synthetic", "synthetic:shapes3" or "synthetic:shapes3:<n>".
[[nodiscard]] std::optional<SyntheticSpec> parse_synthetic_tag(std::string_view tag);

/// One synthetic cloud; label = index mod 3.
[[nodiscard]] PointCloud synthetic_cloud(const SyntheticSpec &spec, std::size_t index,
                                         std::uint64_t seed);

struct SourceEntry {
    /// Mesh path for directory datasets, "synthetic:<name>/<index>" otherwise.
    std::string path;
    std::size_t label{0};
    SplitRole role{SplitRole::Train};
};

struct DatasetIndex {
    std::vector<std::string> class_names;
    std::vector<SourceEntry> entries;
};

/// Scans <root>/<class>/{train,test}/*.off (sorted) and moves a stratified
/// `val_fraction` of each class's train files to validation.
/// Throws DataError when the root has no classes or a class has no meshes.
[[nodiscard]] DatasetIndex index_mesh_directory(const std::string &root, double val_fraction,
                                                std::uint64_t seed);

/// Synthetic index: stratified 20% test, then `val_fraction` of the rest.
[[nodiscard]] DatasetIndex index_synthetic(const SyntheticSpec &spec, double val_fraction,
                                           std::uint64_t seed);

/// Dispatches on a synthetic tag or a directory path.
[[nodiscard]] DatasetIndex index_dataset(const std::string &source, double val_fraction,
                                         std::uint64_t seed);

struct GridOptions {
    int k{3};
    std::size_t n_points{kDefaultPointsPerMesh};
    ScaleMode scale_mode{ScaleMode::Isotropic};
};

/// Sample -> normalize -> voxelize for one source entry.
[[nodiscard]] DensityGrid compute_grid(const SourceEntry &entry, const GridOptions &options,
                                       std::uint64_t seed);

struct Sample {
    DensityGrid grid;
    std::size_t label{0};
    std::string source;
};

struct DatasetSplit {
    std::vector<std::string> class_names;
    std::vector<Sample> train;
    std::vector<Sample> validation;
    std::vector<Sample> test;
    double reduction_fraction{0.0};
    /// Sources that failed to load, with reasons.
    std::vector<std::string> skipped;

    [[nodiscard]] std::size_t n_classes() const noexcept { return class_names.size(); }
};

/// Per-class counts summing to round(fraction * total), largest remainder.
[[nodiscard]] std::vector<std::size_t> apportion(const std::vector<std::size_t> &class_counts,
                                                 double fraction);

/// Keeps a class-stratified round((1 - reduction) * n) of train and validation;
/// test is untouched.
[[nodiscard]] DatasetSplit apply_reduction(DatasetSplit split, double reduction,
                                           std::uint64_t seed);

/// Loads every entry (failures above 1% of entries raise DataError), then
/// applies the reduction.
[[nodiscard]] DatasetSplit build_splits(const std::string &source, const GridOptions &options,
                                        double val_fraction, double reduction,
                                        std::uint64_t seed);

/// Tab-separated manifest row: role, label, source path, grid file, checksum.
struct ManifestRow {
    SplitRole role{SplitRole::Train};
    std::size_t label{0};
    std::string source;
    std::string grid_file;
    std::string checksum;
};

struct DatasetManifest {
    std::vector<std::string> class_names;
    int k{3};
    std::string settings;
    std::vector<ManifestRow> rows;
};

void write_manifest(std::ostream &out, const DatasetManifest &manifest);
[[nodiscard]] DatasetManifest read_manifest(std::istream &in);

/// 16 hex digit FNV-1a digest.
[[nodiscard]] std::string fnv1a_hex(std::string_view bytes);

} // namespace lqas
