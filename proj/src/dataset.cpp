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
#include "lqas/rng.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace lqas {

namespace {

constexpr std::string_view kSyntheticPrefix = "synthetic";
constexpr double kSyntheticTestFraction = 0.2;
const std::vector<std::string> kShapeNames{"sphere", "cube", "planes"};

Point3 rotate(const Point3 &p, const Point3 &axis, double angle) {
    // Rodrigues' formula around a unit axis.
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double dot = axis[0] * p[0] + axis[1] * p[1] + axis[2] * p[2];
    const Point3 cross{axis[1] * p[2] - axis[2] * p[1], axis[2] * p[0] - axis[0] * p[2],
                       axis[0] * p[1] - axis[1] * p[0]};
    Point3 out{};
    for (std::size_t a = 0; a < 3; ++a) {
        out[a] = p[a] * c + cross[a] * s + axis[a] * dot * (1.0 - c);
    }
    return out;
}

Point3 random_unit(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        const Point3 v{normal(rng), normal(rng), normal(rng)};
        const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (len > 1e-12) {
            return {v[0] / len, v[1] / len, v[2] / len};
        }
    }
}

// Shuffles each class's members and returns them grouped per class.
std::vector<std::vector<std::size_t>> members_by_class(const std::vector<std::size_t> &labels,
                                                       const std::vector<std::size_t> &candidates,
                                                       std::size_t n_classes,
                                                       std::uint64_t seed,
                                                       std::string_view stream) {
    std::vector<std::vector<std::size_t>> groups(n_classes);
    for (const std::size_t i : candidates) {
        groups[labels[i]].push_back(i);
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
        Rng rng = make_rng(seed, stream, c);
        std::shuffle(groups[c].begin(), groups[c].end(), rng);
    }
    return groups;
}

// Moves a stratified `fraction` of the `from` entries to role `to`.
void stratified_move(DatasetIndex &index, SplitRole from, SplitRole to, double fraction,
                     std::uint64_t seed, std::string_view stream) {
    std::vector<std::size_t> labels;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        labels.push_back(index.entries[i].label);
        if (index.entries[i].role == from) {
            candidates.push_back(i);
        }
    }
    const std::size_t n_classes = index.class_names.size();
    const auto groups = members_by_class(labels, candidates, n_classes, seed, stream);
    std::vector<std::size_t> counts(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        counts[c] = groups[c].size();
    }
    const auto take = apportion(counts, fraction);
    for (std::size_t c = 0; c < n_classes; ++c) {
        for (std::size_t j = 0; j < take[c]; ++j) {
            index.entries[groups[c][j]].role = to;
        }
    }
}

std::vector<Sample> reduce_samples(std::vector<Sample> samples, std::size_t n_classes,
                                   double keep, std::uint64_t seed, std::string_view stream) {
    std::vector<std::size_t> labels;
    std::vector<std::size_t> all(samples.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (const Sample &s : samples) {
        labels.push_back(s.label);
    }
    const auto groups = members_by_class(labels, all, n_classes, seed, stream);
    std::vector<std::size_t> counts(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        counts[c] = groups[c].size();
    }
    const auto take = apportion(counts, keep);
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < n_classes; ++c) {
        kept.insert(kept.end(), groups[c].begin(),
                    groups[c].begin() + static_cast<std::ptrdiff_t>(take[c]));
    }
    std::sort(kept.begin(), kept.end());
    std::vector<Sample> out;
    out.reserve(kept.size());
    for (const std::size_t i : kept) {
        out.push_back(std::move(samples[i]));
    }
    return out;
}

std::vector<std::string> split_tabs(const std::string &line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) {
            return fields;
        }
        start = tab + 1;
    }
}

} // namespace

std::string_view to_string(SplitRole role) noexcept {
    switch (role) {
    case SplitRole::Train:
        return "train";
    case SplitRole::Validation:
        return "val";
    case SplitRole::Test:
        return "test";
    }
    return "?";
}

std::optional<SplitRole> parse_split_role(std::string_view name) noexcept {
    for (const SplitRole r : {SplitRole::Train, SplitRole::Validation, SplitRole::Test}) {
        if (name == to_string(r)) {
            return r;
        }
    }
    return std::nullopt;
}

std::optional<SyntheticSpec> parse_synthetic_tag(std::string_view tag) {
    if (tag.substr(0, kSyntheticPrefix.size()) != kSyntheticPrefix) {
        return std::nullopt;
    }
    SyntheticSpec spec;
    std::string_view rest = tag.substr(kSyntheticPrefix.size());
    if (rest.empty()) {
        return spec;
    }
    if (rest.front() != ':') {
        return std::nullopt;
    }
    rest.remove_prefix(1);
    const auto colon = rest.find(':');
    spec.name = std::string(rest.substr(0, colon));
    if (spec.name != "shapes3") {
        throw DataError("unknown synthetic generator '" + spec.name + "'");
    }
    if (colon != std::string_view::npos) {
        const std::string count(rest.substr(colon + 1));
        try {
            std::size_t used = 0;
            spec.n_samples = std::stoul(count, &used);
            if (used != count.size() || spec.n_samples == 0) {
                throw std::invalid_argument(count);
            }
        } catch (const std::exception &) {
            throw DataError("invalid synthetic sample count '" + count + "'");
        }
    }
    return spec;
}

PointCloud synthetic_cloud(const SyntheticSpec &spec, std::size_t index, std::uint64_t seed) {
    Rng rng = make_rng(seed, "synthetic", index);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.02);

    const std::size_t label = index % kShapeNames.size();
    const Point3 scale{0.75 + 0.5 * unit(rng), 0.75 + 0.5 * unit(rng), 0.75 + 0.5 * unit(rng)};
    const Point3 axis = random_unit(rng);
    const double angle = unit(rng) * 25.0 * std::numbers::pi / 180.0;
    const Point3 offset{10.0 * sym(rng), 10.0 * sym(rng), 10.0 * sym(rng)};
    const double gap = 0.3 + 0.4 * unit(rng);

    PointCloud cloud;
    cloud.label = label;
    cloud.points.reserve(spec.n_points);
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        Point3 p{};
        switch (label) {
        case 0: {
            const Point3 d = random_unit(rng);
            p = d;
            break;
        }
        case 1: {
            const auto face = static_cast<std::size_t>(unit(rng) * 6.0) % 6;
            const double u = sym(rng);
            const double v = sym(rng);
            const double side = face % 2 == 0 ? 1.0 : -1.0;
            const std::size_t axis_id = face / 2;
            p[axis_id] = side;
            p[(axis_id + 1) % 3] = u;
            p[(axis_id + 2) % 3] = v;
            break;
        }
        default: {
            p = {sym(rng), sym(rng), unit(rng) < 0.5 ? gap : -gap};
            break;
        }
        }
        Point3 q = rotate({p[0] * scale[0], p[1] * scale[1], p[2] * scale[2]}, axis, angle);
        for (std::size_t a = 0; a < 3; ++a) {
            q[a] += offset[a] + noise(rng);
        }
        cloud.points.push_back(q);
    }
    return cloud;
}

DatasetIndex index_mesh_directory(const std::string &root, double val_fraction,
                                  std::uint64_t seed) {
    if (!fs::is_directory(root)) {
        throw DataError("dataset root '" + root + "' is not a directory");
    }
    DatasetIndex index;
    for (const auto &entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) {
            index.class_names.push_back(entry.path().filename().string());
        }
    }
    std::sort(index.class_names.begin(), index.class_names.end());
    if (index.class_names.empty()) {
        throw DataError("dataset root '" + root + "' contains no class directories");
    }
    for (std::size_t c = 0; c < index.class_names.size(); ++c) {
        std::size_t found = 0;
        for (const SplitRole role : {SplitRole::Train, SplitRole::Test}) {
            const fs::path dir = fs::path(root) / index.class_names[c] / std::string(to_string(role));
            if (!fs::is_directory(dir)) {
                continue;
            }
            std::vector<std::string> files;
            for (const auto &f : fs::directory_iterator(dir)) {
                if (f.is_regular_file() && f.path().extension() == ".off") {
                    files.push_back(f.path().string());
                }
            }
            std::sort(files.begin(), files.end());
            found += files.size();
            for (auto &f : files) {
                index.entries.push_back({std::move(f), c, role});
            }
        }
        if (found == 0) {
            throw DataError("class '" + index.class_names[c] + "' has no .off meshes");
        }
    }
    stratified_move(index, SplitRole::Train, SplitRole::Validation, val_fraction, seed, "split-val");
    return index;
}

DatasetIndex index_synthetic(const SyntheticSpec &spec, double val_fraction, std::uint64_t seed) {
    DatasetIndex index;
    index.class_names = kShapeNames;
    for (std::size_t i = 0; i < spec.n_samples; ++i) {
        index.entries.push_back({std::string(kSyntheticPrefix) + ":" + spec.name + "/" +
                                     std::to_string(i),
                                 i % kShapeNames.size(), SplitRole::Train});
    }
    stratified_move(index, SplitRole::Train, SplitRole::Test, kSyntheticTestFraction, seed,
                    "split-test");
    stratified_move(index, SplitRole::Train, SplitRole::Validation, val_fraction, seed, "split-val");
    return index;
}

DatasetIndex index_dataset(const std::string &source, double val_fraction, std::uint64_t seed) {
    if (const auto spec = parse_synthetic_tag(source)) {
        return index_synthetic(*spec, val_fraction, seed);
    }
    return index_mesh_directory(source, val_fraction, seed);
}

DensityGrid compute_grid(const SourceEntry &entry, const GridOptions &options,
                         std::uint64_t seed) {
    PointCloud cloud;
    if (entry.path.rfind(kSyntheticPrefix, 0) == 0) {
        const auto slash = entry.path.rfind('/');
        SyntheticSpec spec;
        spec.name = entry.path.substr(kSyntheticPrefix.size() + 1,
                                      slash - kSyntheticPrefix.size() - 1);
        spec.n_points = options.n_points;
        cloud = synthetic_cloud(spec, std::stoul(entry.path.substr(slash + 1)), seed);
    } else {
        const TriangleMesh mesh = read_off_file(entry.path);
        const std::string name = fs::path(entry.path).filename().string();
        cloud = sample_mesh(mesh, options.n_points, derive_seed(seed, "sample-" + name));
    }
    cloud.label = entry.label;
    return voxelize(normalize_cloud(cloud, options.k, options.scale_mode), options.k);
}

std::vector<std::size_t> apportion(const std::vector<std::size_t> &class_counts,
                                   double fraction) {
    const double total =
        static_cast<double>(std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0}));
    const auto target = static_cast<std::size_t>(std::llround(fraction * total));
    std::vector<std::size_t> out(class_counts.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < class_counts.size(); ++c) {
        const double exact = fraction * static_cast<double>(class_counts[c]);
        out[c] = std::min(class_counts[c], static_cast<std::size_t>(std::floor(exact)));
        assigned += out[c];
        remainders.emplace_back(exact - static_cast<double>(out[c]), c);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto &a, const auto &b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < target && i < remainders.size(); ++i) {
        const std::size_t c = remainders[i].second;
        if (out[c] < class_counts[c]) {
            ++out[c];
            ++assigned;
        }
    }
    return out;
}

DatasetSplit apply_reduction(DatasetSplit split, double reduction, std::uint64_t seed) {
    if (!(reduction >= 0.0 && reduction < 1.0)) {
        throw std::invalid_argument("reduction must lie in [0, 1)");
    }
    split.reduction_fraction = reduction;
    if (reduction == 0.0) {
        return split;
    }
    const double keep = 1.0 - reduction;
    split.train = reduce_samples(std::move(split.train), split.n_classes(), keep, seed, "reduce-train");
    split.validation =
        reduce_samples(std::move(split.validation), split.n_classes(), keep, seed, "reduce-val");
    return split;
}

DatasetSplit build_splits(const std::string &source, const GridOptions &options,
                          double val_fraction, double reduction, std::uint64_t seed) {
    const DatasetIndex index = index_dataset(source, val_fraction, seed);
    DatasetSplit split;
    split.class_names = index.class_names;
    for (const SourceEntry &entry : index.entries) {
        try {
            Sample sample{compute_grid(entry, options, seed), entry.label, entry.path};
            switch (entry.role) {
            case SplitRole::Train:
                split.train.push_back(std::move(sample));
                break;
            case SplitRole::Validation:
                split.validation.push_back(std::move(sample));
                break;
            case SplitRole::Test:
                split.test.push_back(std::move(sample));
                break;
            }
        } catch (const DataError &e) {
            split.skipped.push_back(e.what());
        }
    }
    if (split.skipped.size() * 100 > index.entries.size()) {
        throw DataError(std::to_string(split.skipped.size()) + " of " +
                        std::to_string(index.entries.size()) +
                        " sources failed to load (limit 1%); first: " + split.skipped.front());
    }
    if (split.train.empty()) {
        throw DataError("dataset has an empty training split");
    }
    return apply_reduction(std::move(split), reduction, seed);
}

void write_manifest(std::ostream &out, const DatasetManifest &manifest) {
    out << "# lqas-manifest 1\n";
    out << "classes";
    for (const auto &name : manifest.class_names) {
        out << '\t' << name;
    }
    out << "\nk\t" << manifest.k << "\nsettings\t" << manifest.settings << '\n';
    for (const ManifestRow &row : manifest.rows) {
        out << to_string(row.role) << '\t' << row.label << '\t' << row.source << '\t'
            << row.grid_file << '\t' << row.checksum << '\n';
    }
}

DatasetManifest read_manifest(std::istream &in) {
    DatasetManifest manifest;
    std::string line;
    if (!std::getline(in, line) || line != "# lqas-manifest 1") {
        throw DataError("manifest: missing header");
    }
    bool have_classes = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto fields = split_tabs(line);
        if (fields[0] == "classes") {
            manifest.class_names.assign(fields.begin() + 1, fields.end());
            have_classes = true;
        } else if (fields[0] == "k" && fields.size() == 2) {
            manifest.k = std::stoi(fields[1]);
        } else if (fields[0] == "settings") {
            manifest.settings = fields.size() > 1 ? fields[1] : "";
        } else if (const auto role = parse_split_role(fields[0]); role && fields.size() == 5) {
            std::size_t label = 0;
            try {
                label = std::stoul(fields[1]);
            } catch (const std::exception &) {
                throw DataError("manifest: bad label in line '" + line + "'");
            }
            manifest.rows.push_back({*role, label, fields[2], fields[3], fields[4]});
        } else {
            throw DataError("manifest: unrecognised line '" + line + "'");
        }
    }
    if (!have_classes) {
        throw DataError("manifest: missing classes line");
    }
    for (const ManifestRow &row : manifest.rows) {
        if (row.label >= manifest.class_names.size()) {
            throw DataError("manifest: label out of range for " + row.source);
        }
    }
    return manifest;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xFU];
        h >>= 4U;
    }
    return out;
}

} // namespace lqas
