# Copyright 2026 The vpic Authors
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
"""Very-pliable index coding toolkit.

Instances are dicts ``{"m": 3, "k": 3, "receivers": [[1], [2], [3]]}`` with
1-based message indices. Codebooks use the same JSON layout as the CLI.
"""

import json

from . import _vpic
from ._vpic import CapacityError, InputError, rate

__all__ = [
    "CapacityError",
    "InputError",
    "bounds",
    "concat",
    "is_valid_fiber",
    "linear_check",
    "linear_search",
    "maximal_edges",
    "pliable",
    "rate",
    "solve",
    "sweep",
    "verify",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def solve(instance, k=None, *, edge_cap=2_000_000, time_limit=None, threads=1):
    """Minimum VP code; returns t, rate, optimal flag and the codebook."""
    return json.loads(_vpic.solve(_text(instance), k, edge_cap, time_limit, threads))


def pliable(instance, k=None, *, choice=None, edge_cap=2_000_000, time_limit=None,
            threads=1):
    """Best pliable code, or the best one for a fixed ``choice`` string."""
    return json.loads(
        _vpic.pliable(_text(instance), k, choice, edge_cap, time_limit, threads))


def verify(codebook, instance, k=None):
    return json.loads(_vpic.verify(_text(codebook), _text(instance), k))


def bounds(instance, k=None):
    return json.loads(_vpic.bounds(_text(instance), k))


def is_valid_fiber(instance, members, k=None):
    return _vpic.is_valid_fiber(_text(instance), [list(x) for x in members], k)


def maximal_edges(instance, k=None, *, edge_cap=2_000_000):
    return [[tuple(x) for x in e] for e in _vpic.maximal_edges(_text(instance), k, edge_cap)]


def linear_check(instance, q, matrix):
    return json.loads(_vpic.linear_check(_text(instance), q, matrix))


def linear_search(instance, q, tmax=None):
    return json.loads(_vpic.linear_search(_text(instance), q, tmax))


def concat(codebook, mode="double", p=1, field=None):
    return json.loads(_vpic.concat(_text(codebook), mode, p, field))


def sweep(instance, k_min, k_max, *, format="json", threads=1):
    out = _vpic.sweep(_text(instance), k_min, k_max, format, threads)
    return json.loads(out) if format == "json" else out
