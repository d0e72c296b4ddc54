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

#include "lqas/statevector.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lqas {

using Point3 = std::array<double, 3>;

struct PointCloud {
    std::vector<Point3> points;
    std::size_t label{0};
};

struct TriangleMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<std::size_t, 3>> triangles;
};

inline constexpr std::size_t kDefaultPointsPerMesh = 5000;

/// Parses an ASCII OFF document. Polygon faces are fan-triangulated.
/// Throws DataError on malformed input.
[[nodiscard]] TriangleMesh parse_off(std::string_view document);
[[nodiscard]] TriangleMesh read_off_file(const std::string &path);

/// Area-weighted triangle choice, barycentric-uniform within the triangle.
/// Throws DataError when the mesh has no triangles or zero total area.
[[nodiscard]] PointCloud sample_mesh(const TriangleMesh &mesh, std::size_t n_points,
                                     std::uint64_t seed);

enum class ScaleMode {
    /// One scale factor for all axes; the cloud is centred in the cube.
    Isotropic,
    /// Each axis stretched to fill [0, 1].
    Anisotropic,
};

/// Fits the cloud into [0, 1]^3 and scales by 2^k - 1. A zero-extent axis is
/// placed at the cube centre.
[[nodiscard]] PointCloud normalize_cloud(const PointCloud &cloud, int k,
                                         ScaleMode mode = ScaleMode::Isotropic);

class DensityGrid {
  public:
    DensityGrid() = default;
    /// All-zero grid with 2^(3k) cells.
    explicit DensityGrid(int k);
    DensityGrid(int k, std::vector<double> densities);

    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] std::size_t side() const noexcept { return std::size_t{1} << k_; }
    [[nodiscard]] std::size_t size() const noexcept { return densities_.size(); }

    /// Flat index x * 2^(2k) + y * 2^k + z.
    [[nodiscard]] std::size_t index(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return (x << (2 * k_)) | (y << k_) | z;
    }
    [[nodiscard]] double at(std::size_t x, std::size_t y, std::size_t z) const {
        return densities_[index(x, y, z)];
    }

    [[nodiscard]] const std::vector<double> &densities() const noexcept { return densities_; }
    [[nodiscard]] std::vector<double> &densities() noexcept { return densities_; }

    bool operator==(const DensityGrid &) const = default;

  private:
    int k_{0};
    std::vector<double> densities_;
};

/// Per-voxel point fractions; voxel index per axis is floor(coordinate)
/// clamped to 2^k - 1. Throws std::invalid_argument for coordinates outside
/// [0, 2^k - 1] beyond 1e-9 slack.
[[nodiscard]] DensityGrid voxelize(const PointCloud &normalized, int k);

/// Amplitude sqrt(density) at each voxel's basis state over 3k qubits.
/// Throws std::invalid_argument if the densities do not sum to 1 within 1e-9.
[[nodiscard]] StateVector amplitude_encode(const DensityGrid &grid);

/// "LQG1", little-endian u32 k, then 2^(3k) little-endian binary64 values.
void write_density_grid(std::ostream &out, const DensityGrid &grid);
[[nodiscard]] DensityGrid read_density_grid(std::istream &in);
[[nodiscard]] std::string export_density_grid(const DensityGrid &grid);
[[nodiscard]] DensityGrid import_density_grid(std::string_view bytes);

} // namespace lqas
