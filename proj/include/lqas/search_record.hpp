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

#include "lqas/classifier.hpp"
#include "lqas/gradient.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lqas {

/// Settings shared by every search policy.
struct SearchConfig {
    std::size_t candidate_epochs{5};
    std::size_t batch_size{32};
    double lr_search{0.1};
    double lr_finetune{0.03};
    GradientMethod gradient{GradientMethod::Adjoint};
    std::size_t workers{1};
    std::uint64_t seed{0};
    /// Searches stop before starting new work past this point.
    std::optional<std::chrono::steady_clock::time_point> deadline;

    [[nodiscard]] bool out_of_time() const {
        return deadline && std::chrono::steady_clock::now() >= *deadline;
    }
    [[nodiscard]] TrainConfig train_config(std::size_t epochs, double lr,
                                           std::uint64_t train_seed) const {
        return {epochs, batch_size, lr, train_seed, gradient, workers};
    }
};

struct SearchRecordRow {
    std::size_t generation{0};
    std::size_t candidate_id{0};
    /// "template:<id>", "prune:<i>" or a 16 hex digit genome hash.
    std::string architecture;
    double val_acc{0.0};
    std::size_t n_quantum_params{0};
    bool selected{false};
};

struct SearchRecord {
    std::string policy;
    std::vector<SearchRecordRow> rows;
};

struct EpochLogRow {
    std::size_t generation{0};
    std::size_t candidate_id{0};
    EpochRecord record;
};

/// Invoked after each generation with the best model so far.
using GenerationCallback = std::function<void(std::size_t generation, const Model &best)>;

inline constexpr std::string_view kSearchRecordHeader =
    "generation,candidate_id,template_or_genome_hash,val_acc,n_quantum_params,selected_flag";
inline constexpr std::string_view kEpochLogHeader =
    "generation,candidate_id,epoch,train_loss,train_acc,val_acc,n_quantum_params";

void write_search_record_csv(std::ostream &out, const SearchRecord &record);
void write_epoch_log_csv(std::ostream &out, const std::vector<EpochLogRow> &rows);

/// Appends one candidate's epoch records under (generation, candidate_id).
void append_epoch_log(std::vector<EpochLogRow> &log, std::size_t generation,
                      std::size_t candidate_id, const std::vector<EpochRecord> &records);

/// Deterministic, locale-independent CSV number formatting.
[[nodiscard]] std::string csv_number(double value);

} // namespace lqas
