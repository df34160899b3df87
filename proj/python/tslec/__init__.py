# Copyright 2026 The TSLEC Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Deterministic negotiation simulator with emergent vocabularies,
trust-gated teaching and goal adaptation."""

import json as _json

from ._tslec import (
    Vocabulary,
    chi_square_2x2,
    cohens_d,
    condition_names,
    episodes_to_90,
    one_way_anova,
    pearson_r,
    run_json,
    sign_test_p,
    sweep_summary_json,
    update_trust,
    utility,
    vocabulary_entropy,
    welch_t_test,
)

__all__ = [
    "Vocabulary",
    "chi_square_2x2",
    "cohens_d",
    "condition_names",
    "episodes_to_90",
    "one_way_anova",
    "pearson_r",
    "run",
    "run_json",
    "sign_test_p",
    "sweep",
    "sweep_summary_json",
    "update_trust",
    "utility",
    "vocabulary_entropy",
    "welch_t_test",
]


def run(condition, seed, **overrides):
    """One full run; returns the run record as a dict.

    Overrides are config keys, e.g. run("full", 3, episodes=20).
    """
    as_text = {k: str(v) for k, v in overrides.items()}
    return _json.loads(run_json(condition, seed, as_text))


def sweep(conditions=None, seeds=30, base_seed=42, jobs=0, **overrides):
    """Sweep conditions x seeds; returns the summary as a dict."""
    if conditions is None:
        conditions = [n for n in condition_names() if n != "random_trust"]
    as_text = {k: str(v) for k, v in overrides.items()}
    return _json.loads(
        sweep_summary_json(list(conditions), seeds, base_seed, jobs, as_text)
    )
