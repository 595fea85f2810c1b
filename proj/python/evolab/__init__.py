# Copyright 2026 The EvoLab Authors
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

"""Python access to the evolab core: genotypes, metrics, batches and evolution."""

import json as _json

from . import _evolab
from ._evolab import (
    Error,
    GatewayError,
    InitializationError,
    ValidationError,
    cumulative_accuracy,
    dominates,
    embed,
    normalize_answer,
    pareto_rank,
    pass_at_k,
    preset_names,
    score_exact,
    write_report,
)

__all__ = [
    "Error", "GatewayError", "InitializationError", "ValidationError",
    "architecture_hash", "cumulative_accuracy", "dominates", "embed", "evolve",
    "generate_tasks", "mutate", "normalize_answer", "pareto_rank", "pass_at_k",
    "preset", "preset_names", "run_batch", "score_exact", "validate", "write_report",
]


def _text(genotype):
    return genotype if isinstance(genotype, str) else _json.dumps(genotype)


def preset(name):
    return _json.loads(_evolab.preset(name))


def validate(genotype):
    """Violations as strings; empty when the genotype is valid."""
    return _evolab.validate(_text(genotype))


def architecture_hash(genotype):
    return _evolab.architecture_hash(_text(genotype))


def mutate(genotype, seed, index=0):
    return _json.loads(_evolab.mutate(_text(genotype), seed, index))


def generate_tasks(**config):
    return _json.loads(_evolab.generate_tasks(**config))


def run_batch(genotype, tasks, mode="online", seed=0, attempts=1, out_dir=""):
    """Runs the inner loop and returns the feedback summary."""
    return _json.loads(
        _evolab.run_batch(_text(genotype), _json.dumps(tasks), mode, seed, attempts, out_dir)
    )


def evolve(config, tasks, out_dir):
    return _json.loads(_evolab.evolve(_json.dumps(config), _json.dumps(tasks), out_dir))
