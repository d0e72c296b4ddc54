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
#include "lqas/search_record.hpp"

#include "lqas/circuit.hpp"

#include <cmath>
#include <ostream>

namespace lqas {

std::string csv_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    return format_exact(value);
}

void write_search_record_csv(std::ostream &out, const SearchRecord &record) {
    out << kSearchRecordHeader << '\n';
    for (const SearchRecordRow &row : record.rows) {
        out << row.generation << ',' << row.candidate_id << ',' << row.architecture << ','
            << csv_number(row.val_acc) << ',' << row.n_quantum_params << ','
            << (row.selected ? 1 : 0) << '\n';
    }
}

void write_epoch_log_csv(std::ostream &out, const std::vector<EpochLogRow> &rows) {
    out << kEpochLogHeader << '\n';
    for (const EpochLogRow &row : rows) {
        out << row.generation << ',' << row.candidate_id << ',' << row.record.epoch << ','
            << csv_number(row.record.train_loss) << ',' << csv_number(row.record.train_acc)
            << ',' << csv_number(row.record.val_acc) << ',' << row.record.n_quantum_params
            << '\n';
    }
}

void append_epoch_log(std::vector<EpochLogRow> &log, std::size_t generation,
                      std::size_t candidate_id, const std::vector<EpochRecord> &records) {
    for (const EpochRecord &r : records) {
        log.push_back({generation, candidate_id, r});
    }
}

} // namespace lqas
