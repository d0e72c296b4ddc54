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
#include "lqas/pointcloud.hpp"

#include "lqas/errors.hpp"
#include "lqas/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lqas {

namespace {

constexpr std::array<char, 4> kGridMagic{'L', 'Q', 'G', '1'};
constexpr int kMaxGranularity = 10;

// Next non-empty, non-comment line split into tokens.
bool next_tokens(std::istringstream &in, std::vector<std::string> &tokens) {
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        tokens.assign(std::istream_iterator<std::string>(ls), std::istream_iterator<std::string>());
        if (!tokens.empty()) {
            return true;
        }
    }
    return false;
}

double to_double(const std::string &token) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size() || !std::isfinite(v)) {
            throw std::invalid_argument(token);
        }
        return v;
    } catch (const std::exception &) {
        throw DataError("OFF: invalid number '" + token + "'");
    }
}

std::size_t to_index(const std::string &token) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size() || v < 0) {
            throw std::invalid_argument(token);
        }
        return static_cast<std::size_t>(v);
    } catch (const std::exception &) {
        throw DataError("OFF: invalid count or index '" + token + "'");
    }
}

double triangle_area(const Point3 &a, const Point3 &b, const Point3 &c) {
    const Point3 u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const Point3 v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    const double cx = u[1] * v[2] - u[2] * v[1];
    const double cy = u[2] * v[0] - u[0] * v[2];
    const double cz = u[0] * v[1] - u[1] * v[0];
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

} // namespace

TriangleMesh parse_off(std::string_view document) {
    std::istringstream in{std::string(document)};
    std::vector<std::string> tokens;
    if (!next_tokens(in, tokens) || tokens[0].rfind("OFF", 0) != 0) {
        throw DataError("OFF: missing 'OFF' header");
    }
    // Some exporters glue the counts onto the header ("OFF490 518 0").
    if (tokens[0].size() > 3) {
        tokens[0] = tokens[0].substr(3);
    } else {
        tokens.erase(tokens.begin());
        if (tokens.empty() && !next_tokens(in, tokens)) {
            throw DataError("OFF: missing counts line");
        }
    }
    if (tokens.size() < 2) {
        throw DataError("OFF: counts line needs vertex and face counts");
    }
    const std::size_t n_vertices = to_index(tokens[0]);
    const std::size_t n_faces = to_index(tokens[1]);

    TriangleMesh mesh;
    mesh.vertices.reserve(n_vertices);
    for (std::size_t i = 0; i < n_vertices; ++i) {
        if (!next_tokens(in, tokens) || tokens.size() < 3) {
            throw DataError("OFF: vertex " + std::to_string(i) + " is missing or short");
        }
        mesh.vertices.push_back({to_double(tokens[0]), to_double(tokens[1]), to_double(tokens[2])});
    }
    for (std::size_t f = 0; f < n_faces; ++f) {
        if (!next_tokens(in, tokens)) {
            throw DataError("OFF: face " + std::to_string(f) + " is missing");
        }
        const std::size_t arity = to_index(tokens[0]);
        if (arity < 3 || tokens.size() < arity + 1) {
            throw DataError("OFF: face " + std::to_string(f) + " is malformed");
        }
        std::vector<std::size_t> idx(arity);
        for (std::size_t j = 0; j < arity; ++j) {
            idx[j] = to_index(tokens[j + 1]);
            if (idx[j] >= n_vertices) {
                throw DataError("OFF: face " + std::to_string(f) + " references vertex " +
                                std::to_string(idx[j]));
            }
        }
        for (std::size_t j = 1; j + 1 < arity; ++j) {
            mesh.triangles.push_back({idx[0], idx[j], idx[j + 1]});
        }
    }
    return mesh;
}

TriangleMesh read_off_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open mesh file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_off(buffer.str());
    } catch (const DataError &e) {
        throw DataError(path + ": " + e.what());
    }
}

PointCloud sample_mesh(const TriangleMesh &mesh, std::size_t n_points, std::uint64_t seed) {
    if (mesh.triangles.empty()) {
        throw DataError("cannot sample a mesh without triangles");
    }
    std::vector<double> cumulative;
    cumulative.reserve(mesh.triangles.size());
    double total = 0.0;
    for (const auto &t : mesh.triangles) {
        total += triangle_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
        cumulative.push_back(total);
    }
    if (!(total > 0.0)) {
        throw DataError("cannot sample a mesh with zero surface area");
    }
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PointCloud cloud;
    cloud.points.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double pick = unit(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
        if (it == cumulative.end()) {
            --it;
        }
        const auto &t = mesh.triangles[static_cast<std::size_t>(it - cumulative.begin())];
        const double r1 = std::sqrt(unit(rng));
        const double r2 = unit(rng);
        const double wa = 1.0 - r1;
        const double wb = r1 * (1.0 - r2);
        const double wc = r1 * r2;
        const Point3 &a = mesh.vertices[t[0]];
        const Point3 &b = mesh.vertices[t[1]];
        const Point3 &c = mesh.vertices[t[2]];
        cloud.points.push_back({wa * a[0] + wb * b[0] + wc * c[0], wa * a[1] + wb * b[1] + wc * c[1],
                                wa * a[2] + wb * b[2] + wc * c[2]});
    }
    return cloud;
}

PointCloud normalize_cloud(const PointCloud &cloud, int k, ScaleMode mode) {
    if (cloud.points.empty()) {
        throw std::invalid_argument("normalize_cloud: empty point cloud");
    }
    if (k < 1 || k > kMaxGranularity) {
        throw std::invalid_argument("normalize_cloud: granularity out of range");
    }
    Point3 lo = cloud.points.front();
    Point3 hi = lo;
    for (const Point3 &p : cloud.points) {
        for (std::size_t a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], p[a]);
            hi[a] = std::max(hi[a], p[a]);
        }
    }
    const Point3 extent{hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]};
    const double widest = std::max({extent[0], extent[1], extent[2]});
    const double top = static_cast<double>((1 << k) - 1);

    PointCloud out;
    out.label = cloud.label;
    out.points.reserve(cloud.points.size());
    for (const Point3 &p : cloud.points) {
        Point3 q{};
        for (std::size_t a = 0; a < 3; ++a) {
            const double scale = mode == ScaleMode::Isotropic ? widest : extent[a];
            double unit = 0.5;
            if (scale > 0.0) {
                // Centre the (possibly narrower) axis inside the unit interval.
                unit = (p[a] - lo[a]) / scale + 0.5 * (1.0 - extent[a] / scale);
            }
            q[a] = std::clamp(unit, 0.0, 1.0) * top;
        }
        out.points.push_back(q);
    }
    return out;
}

DensityGrid::DensityGrid(int k) : k_(k) {
    if (k < 1 || k > kMaxGranularity) {
        throw std::invalid_argument("density grid granularity out of range");
    }
    densities_.assign(std::size_t{1} << (3 * k), 0.0);
}

DensityGrid::DensityGrid(int k, std::vector<double> densities) : DensityGrid(k) {
    if (densities.size() != densities_.size()) {
        throw std::invalid_argument("density grid expects " + std::to_string(densities_.size()) +
                                    " cells, got " + std::to_string(densities.size()));
    }
    densities_ = std::move(densities);
}

DensityGrid voxelize(const PointCloud &normalized, int k) {
    if (normalized.points.empty()) {
        throw std::invalid_argument("voxelize: empty point cloud");
    }
    DensityGrid grid(k);
    const double top = static_cast<double>((1 << k) - 1);
    const auto last = static_cast<std::size_t>((1 << k) - 1);
    std::vector<std::size_t> counts(grid.size(), 0);
    for (const Point3 &p : normalized.points) {
        std::array<std::size_t, 3> v{};
        for (std::size_t a = 0; a < 3; ++a) {
            if (!(p[a] >= -1e-9 && p[a] <= top + 1e-9)) {
                throw std::invalid_argument("voxelize: coordinate " + std::to_string(p[a]) +
                                            " outside [0, " + std::to_string(top) + "]");
            }
            const double f = std::floor(std::max(p[a], 0.0));
            v[a] = std::min(static_cast<std::size_t>(f), last);
        }
        ++counts[grid.index(v[0], v[1], v[2])];
    }
    const double n = static_cast<double>(normalized.points.size());
    auto &d = grid.densities();
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = static_cast<double>(counts[i]) / n;
    }
    return grid;
}

StateVector amplitude_encode(const DensityGrid &grid) {
    double total = 0.0;
    for (const double d : grid.densities()) {
        if (!(d >= 0.0)) {
            throw std::invalid_argument("amplitude_encode: negative or NaN density");
        }
        total += d;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("amplitude_encode: densities sum to " + std::to_string(total));
    }
    std::vector<Complex> amps(grid.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = std::sqrt(grid.densities()[i]);
    }
    return StateVector(static_cast<std::size_t>(3 * grid.k()), std::move(amps));
}

void write_density_grid(std::ostream &out, const DensityGrid &grid) {
    out.write(kGridMagic.data(), kGridMagic.size());
    const auto k = static_cast<std::uint32_t>(grid.k());
    for (int b = 0; b < 4; ++b) {
        out.put(static_cast<char>((k >> (8 * b)) & 0xFFU));
    }
    for (const double d : grid.densities()) {
        const auto bits = std::bit_cast<std::uint64_t>(d);
        for (int b = 0; b < 8; ++b) {
            out.put(static_cast<char>((bits >> (8 * b)) & 0xFFU));
        }
    }
}

DensityGrid read_density_grid(std::istream &in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kGridMagic) {
        throw DataError("density grid: bad magic");
    }
    std::array<unsigned char, 8> buf{};
    if (!in.read(reinterpret_cast<char *>(buf.data()), 4)) {
        throw DataError("density grid: truncated header");
    }
    std::uint32_t k = 0;
    for (int b = 0; b < 4; ++b) {
        k |= static_cast<std::uint32_t>(buf[b]) << (8 * b);
    }
    if (k < 1 || k > kMaxGranularity) {
        throw DataError("density grid: granularity " + std::to_string(k) + " out of range");
    }
    std::vector<double> densities(std::size_t{1} << (3 * k));
    for (double &d : densities) {
        if (!in.read(reinterpret_cast<char *>(buf.data()), 8)) {
            throw DataError("density grid: truncated payload");
        }
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
        }
        d = std::bit_cast<double>(bits);
    }
    return DensityGrid(static_cast<int>(k), std::move(densities));
}

std::string export_density_grid(const DensityGrid &grid) {
    std::ostringstream out(std::ios::binary);
    write_density_grid(out, grid);
    return out.str();
}

DensityGrid import_density_grid(std::string_view bytes) {
    std::istringstream in(std::string(bytes), std::ios::binary);
    return read_density_grid(in);
}

} // namespace lqas
