"""Seeded mutation of valid workbench configs, shared by the workbench and acceptance tests."""

from __future__ import annotations

import copy
import random

BASE_CONFIGS = [
    {"ring": {"variables": ["x", "y"]}, "task": "bounds-table", "params": {"max_delta": 3}},
    {"ring": {"variables": ["x", "y"]}, "task": "koszul", "params": {"sequence": ["x", "y^2"]}},
    {"ring": {"variables": ["x", "y"]}, "task": "exactness", "params": {"sequence": ["x^2", "x*y"]}},
    {"ring": {"variables": ["x", "y"]}, "task": "exactness",
     "params": {"matrices": [[["x", "y"]], [["-y"], ["x"]]]}},
    {"ring": {"variables": ["x", "y"]}, "task": "power-complex", "params": {"sequence": ["x", "y"], "n": 2}},
    {"ring": {"variables": ["x", "y"]}, "task": "resolve", "params": {"module": {"ideal": ["x^2", "x*y"]}}},
    {"ring": {"variables": ["x", "y"]}, "task": "ar-number",
     "params": {"module": {"ideal": ["x", "y^2"]}, "i_values": [0, 1], "n_max": 3}},
    {"ring": {"variables": ["x", "y"]}, "task": "ar-number",
     "params": {"submodule": [["x"]], "ideal": ["x", "y"], "n_max": 3}},
    {"ring": {"variables": ["x", "y"]}, "task": "perturb-test",
     "params": {"matrix": [["x"], ["y"]], "q": 1, "trials": 2}},
    {"ring": {"variables": ["x", "y"]}, "task": "syzygetic-sweep",
     "params": {"modules": [{"ideal": ["x", "y"]}], "ideals": [["x", "y^2"]], "i_min": 0, "i_max": 1,
                "n_max": 3}},
    {"ring": {"variables": ["x", "y"], "defining": ["x^2", "x*y"]}, "task": "kas-find",
     "params": {"degree_bound": 2}},
]

_BAD_POLYS = ["x^", "x**", "2*", "(x", "x+*y", "w", "x^-1", "1/0", "x y", "", "x^y", "@", "x.y"]
_BAD_VALUES = [None, True, -1, 10**6, 1.5, "seven", [], {}, [[["x"]]], {"count": -3}]


def _paths(node, prefix=()):
    yield prefix
    if isinstance(node, dict):
        for k, v in node.items():
            yield from _paths(v, prefix + (k,))
    elif isinstance(node, list):
        for k, v in enumerate(node):
            yield from _paths(v, prefix + (k,))


def _get(node, path):
    for p in path:
        node = node[p]
    return node


def _set(root, path, value):
    _get(root, path[:-1])[path[-1]] = value


def _delete(root, path):
    parent = _get(root, path[:-1])
    del parent[path[-1]]


def mutate(cfg: dict, rng: random.Random) -> dict:
    """One to three random edits; the result is usually, not always, invalid."""
    out = copy.deepcopy(cfg)
    for _ in range(rng.randint(1, 3)):
        paths = [p for p in _paths(out) if p]
        if not paths:
            break
        path = rng.choice(paths)
        op = rng.randrange(6)
        try:
            leaf = _get(out, path)
            if op == 0:
                _delete(out, path)
            elif op == 1:
                _set(out, path, copy.deepcopy(rng.choice(_BAD_VALUES)))
            elif op == 2 and isinstance(leaf, int) and not isinstance(leaf, bool):
                _set(out, path, rng.choice([-leaf - 1, leaf + 10**4, 2**64]))
            elif op == 3 and isinstance(leaf, str):
                _set(out, path, rng.choice(_BAD_POLYS))
            elif op == 4:
                node = _get(out, path[:-1]) if isinstance(_get(out, path[:-1]), dict) else out
                node[rng.choice(["extra", "n_maximum", "Field", "seeds"])] = 1
            else:
                _set(out, ("ring", "variables"), rng.choice([["x"], ["x", "x"], ["a", "b"], ["1x", "y"], []]))
        except (KeyError, IndexError, TypeError):
            continue
    return out


def fuzzed_configs(count: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    return [mutate(rng.choice(BASE_CONFIGS), rng) for _ in range(count)]
