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
#include "lqas/circuit.hpp"
#include "lqas/classifier.hpp"
#include "lqas/cli.hpp"
#include "lqas/dataset.hpp"
#include "lqas/errors.hpp"
#include "lqas/gradient.hpp"
#include "lqas/head.hpp"
#include "lqas/pointcloud.hpp"
#include "lqas/statevector.hpp"
#include "lqas/supercircuit.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace lqas;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const RealArray &a) {
    return {a.data(), a.data() + a.size()};
}

py::array_t<double> to_array(const std::vector<double> &v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

// Encoded input: real amplitudes must already be normalised (prepare_state checks),
// complex ones are taken as given.
StateVector input_state(const py::object &obj, std::size_t n_qubits) {
    const py::array amps = py::module_::import("numpy").attr("asarray")(obj);
    if (amps.dtype().kind() == 'c') {
        auto c = py::array_t<std::complex<double>, py::array::c_style>::ensure(amps);
        return StateVector(n_qubits, std::vector<Complex>(c.data(), c.data() + c.size()));
    }
    const std::vector<double> r = to_vector(RealArray::ensure(amps));
    return prepare_state(r, n_qubits);
}

std::vector<Point3> to_points(const RealArray &pts) {
    if (pts.ndim() != 2 || pts.shape(1) != 3) {
        throw std::invalid_argument("points must have shape (n, 3)");
    }
    std::vector<Point3> out(static_cast<std::size_t>(pts.shape(0)));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = {pts.at(i, 0), pts.at(i, 1), pts.at(i, 2)};
    }
    return out;
}

py::array_t<double> from_points(const std::vector<Point3> &pts) {
    py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{3}});
    auto m = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (py::ssize_t a = 0; a < 3; ++a) {
            m(static_cast<py::ssize_t>(i), a) = pts[i][static_cast<std::size_t>(a)];
        }
    }
    return out;
}

LinearHead head_from(const RealArray &weights) {
    if (weights.ndim() != 2) {
        throw std::invalid_argument("head weights must be a 2-D array (classes, features)");
    }
    return LinearHead{static_cast<std::size_t>(weights.shape(0)),
                      static_cast<std::size_t>(weights.shape(1)), to_vector(weights), true};
}

} // namespace

PYBIND11_MODULE(_lqas, m) {
    m.doc() = "Statevector simulator, voxel encoding and circuit search core";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<CircuitTape>(m, "Circuit")
        .def(py::init<std::size_t>(), py::arg("n_qubits"))
        .def_property_readonly("n_qubits", &CircuitTape::n_qubits)
        .def_property_readonly("num_params", &CircuitTape::num_params)
        .def_property(
            "params", [](const CircuitTape &t) { return to_array(t.params()); },
            [](CircuitTape &t, const RealArray &p) {
                const std::vector<double> v = to_vector(p);
                if (v.size() != t.num_params()) {
                    throw std::invalid_argument("expected " + std::to_string(t.num_params()) +
                                                " parameters");
                }
                std::copy(v.begin(), v.end(), t.mutable_params().begin());
            })
        .def_property_readonly("ops",
                               [](const CircuitTape &t) {
                                   std::vector<std::tuple<std::string, std::size_t,
                                                          std::optional<std::size_t>,
                                                          std::optional<std::size_t>>>
                                       out;
                                   for (const GateOp &op : t.ops()) {
                                       out.emplace_back(std::string(to_string(op.kind)),
                                                        op.target, op.control, op.param_slot);
                                   }
                                   return out;
                               },
                               "(gate, target, control, parameter slot) per op")
        .def("append_layer", &append_layer, py::arg("template_id"),
             "Copy with one zero-initialised template layer appended")
        .def(
            "prune",
            [](const CircuitTape &t, double threshold, double proportion, std::uint64_t seed) {
                PruneResult r = prune_tape(t, threshold, proportion, seed);
                return std::make_pair(std::move(r.tape), r.removed_ops);
            },
            py::arg("threshold"), py::arg("proportion") = 0.5, py::arg("seed") = 0)
        .def("to_json", [](const CircuitTape &t) { return serialize(t); })
        .def_static("from_json", [](const std::string &doc) { return deserialize(doc); })
        .def("__len__", [](const CircuitTape &t) { return t.ops().size(); });

    m.def(
        "evaluate",
        [](const CircuitTape &tape, const py::object &amps) {
            const StateVector out = evaluate_tape(tape, input_state(amps, tape.n_qubits()));
            const auto a = out.amplitudes();
            return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(a.size()), a.data());
        },
        py::arg("circuit"), py::arg("amplitudes"), "Output amplitudes of the circuit");
    m.def(
        "features",
        [](const CircuitTape &tape, const py::object &amps) {
            return to_array(circuit_features(tape, input_state(amps, tape.n_qubits())));
        },
        py::arg("circuit"), py::arg("amplitudes"),
        "X, Y, Z expectations, basis-major and qubit-ascending");
    m.def(
        "loss_and_gradient",
        [](const CircuitTape &tape, const py::object &amps, const RealArray &weights,
           std::size_t label, const std::string &method) {
            const LinearHead head = head_from(weights);
            const StateVector input = input_state(amps, tape.n_qubits());
            const FeatureObjective loss = head_objective(head, label);
            const double value = loss(circuit_features(tape, input), {});
            std::vector<double> grad;
            if (method == "adjoint") {
                grad = adjoint_grad(tape, input, loss);
            } else if (method == "shift") {
                grad = parameter_shift_grad(tape, input, loss);
            } else if (method == "fd") {
                grad = finite_difference_grad(tape, input, loss, 1e-5);
            } else {
                throw std::invalid_argument("method must be adjoint, shift or fd");
            }
            return std::make_pair(value, to_array(grad));
        },
        py::arg("circuit"), py::arg("amplitudes"), py::arg("head_weights"), py::arg("label"),
        py::arg("method") = "adjoint",
        "Cross-entropy of softmax(W @ features) and its gradient in the circuit parameters");

    m.def(
        "parse_off",
        [](const std::string &text) {
            const TriangleMesh mesh = parse_off(text);
            py::array_t<std::size_t> tris(
                {static_cast<py::ssize_t>(mesh.triangles.size()), py::ssize_t{3}});
            auto t = tris.mutable_unchecked<2>();
            for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
                for (py::ssize_t a = 0; a < 3; ++a) {
                    t(static_cast<py::ssize_t>(i), a) = mesh.triangles[i][static_cast<std::size_t>(a)];
                }
            }
            return std::make_pair(from_points(mesh.vertices), tris);
        },
        py::arg("text"), "Vertices (n, 3) and triangles (m, 3) of an OFF document");
    m.def(
        "sample_mesh",
        [](const RealArray &vertices, const py::array_t<std::size_t> &triangles,
           std::size_t n_points, std::uint64_t seed) {
            TriangleMesh mesh;
            mesh.vertices = to_points(vertices);
            auto t = triangles.unchecked<2>();
            for (py::ssize_t i = 0; i < t.shape(0); ++i) {
                mesh.triangles.push_back({t(i, 0), t(i, 1), t(i, 2)});
            }
            return from_points(sample_mesh(mesh, n_points, seed).points);
        },
        py::arg("vertices"), py::arg("triangles"), py::arg("n_points") = kDefaultPointsPerMesh,
        py::arg("seed") = 0);
    m.def(
        "synthetic_cloud",
        [](std::size_t index, std::uint64_t seed, std::size_t n_points) {
            SyntheticSpec spec;
            spec.n_points = n_points;
            const PointCloud c = synthetic_cloud(spec, index, seed);
            return std::make_pair(from_points(c.points), c.label);
        },
        py::arg("index"), py::arg("seed") = 0, py::arg("n_points") = kDefaultPointsPerMesh,
        "Points and label of one synthetic cloud");
    m.def(
        "voxelize",
        [](const RealArray &points, int k, bool anisotropic) {
            PointCloud cloud;
            cloud.points = to_points(points);
            const PointCloud n = normalize_cloud(
                cloud, k, anisotropic ? ScaleMode::Anisotropic : ScaleMode::Isotropic);
            return to_array(voxelize(n, k).densities());
        },
        py::arg("points"), py::arg("k") = 3, py::arg("anisotropic") = false,
        "Normalised voxel densities, flat with index x * 4^k + y * 2^k + z");
    m.def(
        "encode",
        [](const RealArray &densities, int k) {
            const StateVector s = amplitude_encode(DensityGrid(k, to_vector(densities)));
            std::vector<double> real(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                real[i] = s[i].real();
            }
            return to_array(real);
        },
        py::arg("densities"), py::arg("k") = 3, "Amplitudes sqrt(density)");

    m.def(
        "random_genome",
        [](std::size_t n_layers, std::size_t n_qubits, std::uint64_t seed) {
            Rng rng(seed);
            return random_genome(n_layers, n_qubits, rng).to_string();
        },
        py::arg("n_layers"), py::arg("n_qubits"), py::arg("seed") = 0);

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool; returns (exit code, stdout, stderr)");
}
