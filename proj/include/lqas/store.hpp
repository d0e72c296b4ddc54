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
 * @file store.hpp
 * On-disk store of prepared density grids: one LQG1 file per sample under
 * `<dir>/grids/` plus a tab-separated manifest at `<dir>/manifest.tsv`.
 */

#include "lqas/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lqas {

inline constexpr const char *kManifestName = "manifest.tsv";

struct PrepOptions {
    std::string source;
    GridOptions grid;
    double val_fraction{0.2};
    std::uint64_t seed{0};
};

/// Canonical settings string stored in the manifest and used as cache key.
[[nodiscard]] std::string prep_settings(const PrepOptions &options);

struct PrepReport {
    std::size_t n_grids{0};
    /// Grid files written by this call; zero on a cache hit.
    std::size_t recomputed{0};
    bool cache_hit{false};
    std::vector<std::string> skipped;
};

/// Builds the full (unreduced) split and writes it to `dir`. Reuses the store
/// untouched when its settings match and every grid file checksum verifies.
PrepReport prepare_store(const std::string &dir, const PrepOptions &options);

/// True when `dir` holds a store for exactly these settings with intact files.
[[nodiscard]] bool store_is_current(const std::string &dir, const std::string &settings);

/// Loads every grid of the store. Throws DataError on a missing file or a
/// checksum mismatch.
[[nodiscard]] DatasetSplit load_store(const std::string &dir);

/// Digest identifying the store contents (hash of the manifest file).
[[nodiscard]] std::string store_checksum(const std::string &dir);

} // namespace lqas
