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
#include "lqas/store.hpp"

#include "lqas/circuit.hpp"
#include "lqas/errors.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

namespace lqas {

namespace fs = std::filesystem;

namespace {

std::string read_bytes(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read '" + path.string() + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path &path, const std::string &bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
}

DatasetManifest read_manifest_file(const fs::path &dir) {
    std::ifstream in(dir / kManifestName);
    if (!in) {
        throw DataError("no prepared data in '" + dir.string() + "' (run prep first)");
    }
    return read_manifest(in);
}

} // namespace

std::string prep_settings(const PrepOptions &options) {
    std::ostringstream s;
    s << "source=" << options.source << ";k=" << options.grid.k
      << ";points=" << options.grid.n_points << ";scale="
      << (options.grid.scale_mode == ScaleMode::Isotropic ? "isotropic" : "anisotropic")
      << ";val_fraction=" << format_exact(options.val_fraction) << ";seed=" << options.seed;
    return s.str();
}

bool store_is_current(const std::string &dir, const std::string &settings) {
    try {
        const DatasetManifest manifest = read_manifest_file(dir);
        if (manifest.settings != settings) {
            return false;
        }
        for (const ManifestRow &row : manifest.rows) {
            if (fnv1a_hex(read_bytes(fs::path(dir) / row.grid_file)) != row.checksum) {
                return false;
            }
        }
        return !manifest.rows.empty();
    } catch (const DataError &) {
        return false;
    }
}

PrepReport prepare_store(const std::string &dir, const PrepOptions &options) {
    PrepReport report;
    const std::string settings = prep_settings(options);
    if (store_is_current(dir, settings)) {
        report.cache_hit = true;
        report.n_grids = read_manifest_file(dir).rows.size();
        return report;
    }
    const DatasetSplit split =
        build_splits(options.source, options.grid, options.val_fraction, 0.0, options.seed);
    report.skipped = split.skipped;

    const fs::path root(dir);
    fs::create_directories(root / "grids");
    DatasetManifest manifest;
    manifest.class_names = split.class_names;
    manifest.k = options.grid.k;
    manifest.settings = settings;
    const auto emit = [&](SplitRole role, const std::vector<Sample> &samples) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const std::string name =
                "grids/" + std::string(to_string(role)) + "_" + std::to_string(i) + ".lqg";
            const std::string bytes = export_density_grid(samples[i].grid);
            write_bytes(root / name, bytes);
            manifest.rows.push_back({role, samples[i].label, samples[i].source, name, fnv1a_hex(bytes)});
            ++report.recomputed;
        }
    };
    emit(SplitRole::Train, split.train);
    emit(SplitRole::Validation, split.validation);
    emit(SplitRole::Test, split.test);
    report.n_grids = manifest.rows.size();

    std::ofstream out(root / kManifestName, std::ios::trunc);
    write_manifest(out, manifest);
    if (!out) {
        throw DataError("cannot write manifest in '" + dir + "'");
    }
    return report;
}

DatasetSplit load_store(const std::string &dir) {
    const DatasetManifest manifest = read_manifest_file(dir);
    DatasetSplit split;
    split.class_names = manifest.class_names;
    for (const ManifestRow &row : manifest.rows) {
        const std::string bytes = read_bytes(fs::path(dir) / row.grid_file);
        if (fnv1a_hex(bytes) != row.checksum) {
            throw DataError("checksum mismatch for '" + row.grid_file + "'");
        }
        if (row.label >= split.class_names.size()) {
            throw DataError("label out of range for '" + row.grid_file + "'");
        }
        Sample sample{import_density_grid(bytes), row.label, row.source};
        if (sample.grid.k() != manifest.k) {
            throw DataError("grid '" + row.grid_file + "' does not match the store's k");
        }
        switch (row.role) {
        case SplitRole::Train: split.train.push_back(std::move(sample)); break;
        case SplitRole::Validation: split.validation.push_back(std::move(sample)); break;
        case SplitRole::Test: split.test.push_back(std::move(sample)); break;
        }
    }
    if (split.train.empty()) {
        throw DataError("prepared data in '" + dir + "' has no training samples");
    }
    return split;
}

std::string store_checksum(const std::string &dir) {
    return fnv1a_hex(read_bytes(fs::path(dir) / kManifestName));
}

} // namespace lqas
