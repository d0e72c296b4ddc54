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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lqas {

/// Base class for all recoverable library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or missing input data (mesh files, grid files, documents).
class DataError : public Error {
  public:
    using Error::Error;
};

/// Circuit document parse failure; carries the offending op index when known.
class ParseError : public DataError {
  public:
    static constexpr std::size_t kNoOp = static_cast<std::size_t>(-1);

    explicit ParseError(const std::string &what, std::size_t op_index = kNoOp)
        : DataError(op_index == kNoOp
                        ? what
                        : what + " (op " + std::to_string(op_index) + ")"),
          op_index_(op_index) {}

    [[nodiscard]] std::size_t op_index() const noexcept { return op_index_; }

  private:
    std::size_t op_index_;
};

/// Non-finite values encountered during training or evaluation.
class NumericalError : public Error {
  public:
    using Error::Error;
};

} // namespace lqas
