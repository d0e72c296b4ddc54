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

#include "lqas/errors.hpp"
#include "lqas/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <system_error>

namespace lqas {

namespace {

void require_registers(int template_id, std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits % 3 != 0) {
        throw std::invalid_argument("template " + std::to_string(template_id) +
                                    " needs a qubit count divisible by 3, got " +
                                    std::to_string(n_qubits));
    }
}

void check_op(const GateOp &op, std::size_t n_qubits, std::size_t n_params) {
    if (op.target >= n_qubits || (op.control && *op.control >= n_qubits)) {
        throw std::out_of_range("gate qubit out of range for " + std::to_string(n_qubits) +
                                "-qubit tape");
    }
    if (is_controlled(op.kind) != op.control.has_value() ||
        (op.control && *op.control == op.target)) {
        throw std::invalid_argument("invalid control wiring for " +
                                    std::string(to_string(op.kind)));
    }
    if (is_parameterized(op.kind) != op.param_slot.has_value()) {
        throw std::invalid_argument(std::string(to_string(op.kind)) +
                                    (op.param_slot ? " takes no parameter" : " needs a parameter"));
    }
    if (op.param_slot && *op.param_slot >= n_params) {
        throw std::out_of_range("parameter slot " + std::to_string(*op.param_slot) +
                                " beyond parameter vector");
    }
}

} // namespace

LayerType layer_type_of(int template_id) {
    if (template_id == kPruneTemplate) {
        return LayerType::Prune;
    }
    if (template_id < 0 || template_id >= kNumTemplates) {
        throw std::invalid_argument("unknown layer template " + std::to_string(template_id));
    }
    return template_id <= 2 ? LayerType::SingleQubit : LayerType::Entangling;
}

std::size_t template_param_count(int template_id, std::size_t n_qubits) {
    return instantiate_layer(template_id, n_qubits).n_new_params;
}

std::size_t CircuitTape::num_parameterized_ops() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        ops_.begin(), ops_.end(), [](const GateOp &op) { return op.param_slot.has_value(); }));
}

std::size_t CircuitTape::add_param(double value) {
    params_.push_back(value);
    return params_.size() - 1;
}

void CircuitTape::add_op(const GateOp &op) {
    check_op(op, n_qubits_, params_.size());
    ops_.push_back(op);
}

void CircuitTape::mark_layer(int template_id) {
    boundaries_.push_back({ops_.size(), template_id});
}

void CircuitTape::set_params(std::vector<double> params) {
    if (params.size() != params_.size()) {
        throw std::invalid_argument("set_params: expected " + std::to_string(params_.size()) +
                                    " values, got " + std::to_string(params.size()));
    }
    params_ = std::move(params);
}

void CircuitTape::validate() const {
    for (const GateOp &op : ops_) {
        check_op(op, n_qubits_, params_.size());
    }
    std::size_t previous = 0;
    for (const LayerBoundary &b : boundaries_) {
        if (b.start_op > ops_.size() || b.start_op < previous) {
            throw std::invalid_argument("layer boundaries must be ordered within the tape");
        }
        if (b.template_id != kPruneTemplate) {
            (void)layer_type_of(b.template_id);
        }
        previous = b.start_op;
    }
}

CircuitTape rebuild_tape(std::size_t n_qubits, std::vector<GateOp> ops,
                         std::vector<double> params, std::vector<LayerBoundary> boundaries) {
    CircuitTape tape(n_qubits);
    tape.ops_ = std::move(ops);
    tape.params_ = std::move(params);
    tape.boundaries_ = std::move(boundaries);
    tape.validate();
    return tape;
}

LayerGates instantiate_layer(int template_id, std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw std::invalid_argument("instantiate_layer: empty register");
    }
    LayerGates layer;
    auto rotation = [&](GateKind kind, std::size_t q) {
        layer.ops.push_back({kind, q, std::nullopt, layer.n_new_params++});
    };
    auto crx = [&](std::size_t control, std::size_t target) {
        layer.ops.push_back({GateKind::CRX, target, control, layer.n_new_params++});
    };
    const std::size_t n = n_qubits;
    switch (template_id) {
    case 0:
    case 1:
    case 2: {
        const GateKind kind = template_id == 0   ? GateKind::RX
                              : template_id == 1 ? GateKind::RY
                                                 : GateKind::RZ;
        for (std::size_t q = 0; q < n; ++q) {
            rotation(kind, q);
        }
        break;
    }
    case 3: {
        require_registers(template_id, n);
        const std::size_t k = n / 3;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t r = 0; r < 3; ++r) {
                const std::size_t control = r * k + i;
                const std::size_t target = ((r + 1) % 3) * k + i;
                layer.ops.push_back({GateKind::CNOT, target, control, std::nullopt});
            }
        }
        break;
    }
    case 4:
        for (std::size_t q = 1; q < n; ++q) {
            for (std::size_t p = 0; p < q; ++p) {
                crx(p, q);
            }
        }
        break;
    case 5:
        for (std::size_t q = 1; q < n; ++q) {
            crx(q - 1, q);
        }
        break;
    case 6:
        if (n < 2) {
            throw std::invalid_argument("template 6 needs at least 2 qubits");
        }
        for (std::size_t q = 0; q < n; ++q) {
            crx(q, (q + 1) % n);
        }
        break;
    case 7:
        for (std::size_t q = 0; q + 1 < n; ++q) {
            crx(q + 1, q);
        }
        break;
    case 8: {
        require_registers(template_id, n);
        const std::size_t k = n / 3;
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t j = 1; j < k; ++j) {
                for (std::size_t i = 0; i < j; ++i) {
                    crx(r * k + i, r * k + j);
                }
            }
        }
        break;
    }
    case 9: {
        require_registers(template_id, n);
        const std::size_t k = n / 3;
        for (std::size_t i = 0; i < k; ++i) {
            crx(i, k + i);
            crx(k + i, 2 * k + i);
        }
        break;
    }
    default:
        throw std::invalid_argument("unknown layer template " + std::to_string(template_id));
    }
    return layer;
}

CircuitTape append_layer(const CircuitTape &tape, int template_id) {
    const LayerGates layer = instantiate_layer(template_id, tape.n_qubits());
    CircuitTape out = tape;
    const std::size_t offset = out.num_params();
    for (std::size_t i = 0; i < layer.n_new_params; ++i) {
        out.add_param(0.0);
    }
    out.mark_layer(template_id);
    for (GateOp op : layer.ops) {
        if (op.param_slot) {
            *op.param_slot += offset;
        }
        out.add_op(op);
    }
    return out;
}

PruneResult prune_tape(const CircuitTape &tape, double threshold, double proportion,
                       std::uint64_t seed) {
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("prune threshold must be positive");
    }
    if (!(proportion > 0.0 && proportion <= 1.0)) {
        throw std::invalid_argument("prune proportion must lie in (0, 1]");
    }
    const auto &ops = tape.ops();
    const auto &params = tape.params();
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].param_slot && std::abs(params[*ops[i].param_slot]) < threshold) {
            eligible.push_back(i);
        }
    }
    const auto n_remove = static_cast<std::size_t>(
        std::ceil(proportion * static_cast<double>(eligible.size()) - 1e-12));
    Rng rng(seed);
    std::shuffle(eligible.begin(), eligible.end(), rng);
    std::vector<std::size_t> removed(eligible.begin(),
                                     eligible.begin() + static_cast<std::ptrdiff_t>(n_remove));
    std::sort(removed.begin(), removed.end());

    std::vector<bool> drop(ops.size(), false);
    for (const std::size_t i : removed) {
        drop[i] = true;
    }
    // Compact: keep slots still referenced by a surviving op, in slot order.
    std::vector<bool> used(params.size(), false);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (!drop[i] && ops[i].param_slot) {
            used[*ops[i].param_slot] = true;
        }
    }
    std::vector<std::size_t> remap(params.size(), 0);
    std::vector<double> new_params;
    for (std::size_t s = 0; s < params.size(); ++s) {
        if (used[s]) {
            remap[s] = new_params.size();
            new_params.push_back(params[s]);
        }
    }
    std::vector<GateOp> new_ops;
    std::vector<std::size_t> removed_before(ops.size() + 1, 0);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        removed_before[i + 1] = removed_before[i] + (drop[i] ? 1 : 0);
        if (drop[i]) {
            continue;
        }
        GateOp op = ops[i];
        if (op.param_slot) {
            op.param_slot = remap[*op.param_slot];
        }
        new_ops.push_back(op);
    }
    std::vector<LayerBoundary> boundaries;
    for (const LayerBoundary &b : tape.layer_boundaries()) {
        boundaries.push_back({b.start_op - removed_before[b.start_op], b.template_id});
    }
    boundaries.push_back({new_ops.size(), kPruneTemplate});
    return {rebuild_tape(tape.n_qubits(), std::move(new_ops), std::move(new_params),
                         std::move(boundaries)),
            std::move(removed)};
}

void run_tape(const CircuitTape &tape, std::span<const double> params, StateVector &state) {
    if (state.n_qubits() != tape.n_qubits()) {
        throw std::invalid_argument("tape has " + std::to_string(tape.n_qubits()) +
                                    " qubits but state has " +
                                    std::to_string(state.n_qubits()));
    }
    for (const GateOp &op : tape.ops()) {
        const double angle = op.param_slot ? params[*op.param_slot] : 0.0;
        apply_gate(state, op.kind, angle, op.target, op.control);
    }
}

void run_tape_shifted(const CircuitTape &tape, std::size_t op_index, double shift,
                      StateVector &state) {
    if (state.n_qubits() != tape.n_qubits()) {
        throw std::invalid_argument("tape/state qubit count mismatch");
    }
    const auto &params = tape.params();
    const auto &ops = tape.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const GateOp &op = ops[i];
        double angle = op.param_slot ? params[*op.param_slot] : 0.0;
        if (i == op_index) {
            angle += shift;
        }
        apply_gate(state, op.kind, angle, op.target, op.control);
    }
}

StateVector evaluate_tape(const CircuitTape &tape, StateVector input) {
    run_tape(tape, tape.params(), input);
    return input;
}

std::string format_exact(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return {buffer, result.ptr};
}

double parse_exact(std::string_view text) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw ParseError("invalid number '" + std::string(text) + "'");
    }
    return value;
}

nlohmann::json tape_to_json(const CircuitTape &tape) {
    nlohmann::json ops = nlohmann::json::array();
    for (const GateOp &op : tape.ops()) {
        nlohmann::json j{{"kind", to_string(op.kind)}, {"target", op.target}};
        if (op.control) {
            j["control"] = *op.control;
        }
        if (op.param_slot) {
            j["param_slot"] = *op.param_slot;
        }
        ops.push_back(std::move(j));
    }
    nlohmann::json params = nlohmann::json::array();
    for (const double p : tape.params()) {
        params.push_back(format_exact(p));
    }
    nlohmann::json boundaries = nlohmann::json::array();
    for (const LayerBoundary &b : tape.layer_boundaries()) {
        boundaries.push_back({{"start_op", b.start_op}, {"template", b.template_id}});
    }
    return {{"version", kCircuitDocumentVersion},
            {"n_qubits", tape.n_qubits()},
            {"ops", std::move(ops)},
            {"params", std::move(params)},
            {"layer_boundaries", std::move(boundaries)}};
}

CircuitTape tape_from_json(const nlohmann::json &doc) {
    try {
        if (!doc.is_object()) {
            throw ParseError("circuit document must be an object");
        }
        if (doc.at("version").get<int>() != kCircuitDocumentVersion) {
            throw ParseError("unsupported circuit document version");
        }
        const auto n_qubits = doc.at("n_qubits").get<std::size_t>();
        std::vector<double> params;
        for (const auto &p : doc.at("params")) {
            params.push_back(parse_exact(p.get<std::string>()));
        }
        std::vector<GateOp> ops;
        const auto &jops = doc.at("ops");
        for (std::size_t i = 0; i < jops.size(); ++i) {
            const auto &j = jops[i];
            try {
                const auto name = j.at("kind").get<std::string>();
                const auto kind = parse_gate_kind(name);
                if (!kind) {
                    throw ParseError("unknown gate kind '" + name + "'", i);
                }
                GateOp op{*kind, j.at("target").get<std::size_t>(), std::nullopt, std::nullopt};
                if (j.contains("control")) {
                    op.control = j["control"].get<std::size_t>();
                }
                if (j.contains("param_slot")) {
                    op.param_slot = j["param_slot"].get<std::size_t>();
                }
                check_op(op, n_qubits, params.size());
                ops.push_back(op);
            } catch (const ParseError &) {
                throw;
            } catch (const std::exception &e) {
                throw ParseError(e.what(), i);
            }
        }
        std::vector<LayerBoundary> boundaries;
        for (const auto &b : doc.at("layer_boundaries")) {
            boundaries.push_back({b.at("start_op").get<std::size_t>(), b.at("template").get<int>()});
        }
        return rebuild_tape(n_qubits, std::move(ops), std::move(params), std::move(boundaries));
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        throw ParseError(std::string("malformed circuit document: ") + e.what());
    }
}

std::string serialize(const CircuitTape &tape) { return tape_to_json(tape).dump(2) + "\n"; }

CircuitTape deserialize(std::string_view document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("circuit document is not valid JSON: ") + e.what());
    }
    return tape_from_json(doc);
}

} // namespace lqas
