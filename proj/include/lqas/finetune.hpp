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
 * @file finetune.hpp
 * Final training of a discovered architecture.
 */

#include "lqas/classifier.hpp"
#include "lqas/search_record.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace lqas {

enum class FinetuneMode {
    /// Continue from the searched parameters.
    Warm,
    /// Re-initialise circuit parameters uniformly in [-1e-2, 1e-2] (and a
    /// learnable head from its Gaussian), train, then fine-tune.
    Scratch,
};

[[nodiscard]] std::string_view to_string(FinetuneMode mode);
[[nodiscard]] FinetuneMode parse_finetune_mode(std::string_view text);

struct FinetuneConfig {
    FinetuneMode mode{FinetuneMode::Warm};
    std::size_t finetune_epochs{10};
    /// Scratch mode only, run at the search learning rate.
    std::size_t scratch_epochs{20};
    double init_range{1e-2};
};

struct FinetuneResult {
    Model model;
    std::vector<EpochRecord> log;
    /// NaN for an empty split.
    double train_acc{0.0};
    double val_acc{0.0};
    double test_acc{0.0};
};

/// Re-initialised copy of `model` as used by scratch mode.
[[nodiscard]] Model reinitialize(const Model &model, double init_range, std::uint64_t seed);

[[nodiscard]] FinetuneResult finetune_or_scratch(Model model, const EncodedSplit &split,
                                                 const FinetuneConfig &finetune,
                                                 const SearchConfig &config);

} // namespace lqas
