# Copyright 2026 The LQAS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python bindings for the lqas circuit simulator and search tool."""

import sys

from ._lqas import (
    Circuit,
    DataError,
    NumericalError,
    ParseError,
    encode,
    evaluate,
    features,
    loss_and_gradient,
    parse_off,
    random_genome,
    run_cli,
    sample_mesh,
    synthetic_cloud,
    voxelize,
)

__all__ = [
    "Circuit",
    "DataError",
    "NumericalError",
    "ParseError",
    "encode",
    "evaluate",
    "features",
    "loss_and_gradient",
    "main",
    "parse_off",
    "random_genome",
    "run_cli",
    "sample_mesh",
    "synthetic_cloud",
    "voxelize",
]


def main() -> int:
    """Console entry point mirroring the native `lqas` executable."""
    code, out, err = run_cli(sys.argv[1:])
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
