"""Memoized drivers for the weighted family generators.

Each family value is a linear combination of isomorphism classes in
which every class of the family appears with total coefficient equal to
the inverse of its automorphism group order:

* ``biconn``: biconnected graphs, built by splitting a vertex of a
  smaller member and rejoining the halves with parallel edges;
* ``aux`` (one value per block count j >= 2): bridgeless graphs with
  exactly one cut vertex and j blocks, built by block insertion;
* ``conn``: all connected graphs;
* ``two_edge``: bridgeless connected graphs;
* ``two_edge_cycles``: the two_edge recursion with the block supply
  restricted to cycles; optional lower bounds further restrict the
  admissible blocks' vertex/cyclomatic numbers.

Legs are threaded through the recursion itself: the s labels enter at
the two-vertex base case and are redistributed by every split and
insertion.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path

from . import ops
from .canon import LinearCombination
from .graph import GraphError, Multigraph, block_decomposition, multi_edge_graph

CACHE_FORMAT_VERSION = 1

FAMILIES = ("biconn", "aux", "conn", "two_edge", "two_edge_cycles")
_OPTION_FAMILIES = ("two_edge", "two_edge_cycles")


@dataclass(frozen=True)
class BlockLimits:
    """Lower bounds on the vertex and cyclomatic numbers of admissible blocks."""

    min_n: int = 2
    min_k: int = 1


_DEFAULT_LIMITS = BlockLimits()


@dataclass(frozen=True)
class BetaKey:
    """Memoization key: family, vertex number, cyclomatic number, leg count.

    ``j`` is the block count of the one-cut-vertex auxiliary family and 0
    otherwise; ``options`` restricts block sizes for the two_edge-shaped
    families.
    """

    family: str
    n: int
    k: int
    s: int = 0
    j: int = 0
    options: BlockLimits | None = None


def _validate_key(key: BetaKey) -> None:
    if key.family not in FAMILIES:
        raise GraphError(f"unknown family {key.family!r}")
    for name, value in (("n", key.n), ("k", key.k), ("s", key.s)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise GraphError(f"{name} must be an integer, got {value!r}")
    if key.n < 2:
        raise GraphError("the recursion needs at least two vertices")
    if key.k < 0 or key.s < 0:
        raise GraphError("cyclomatic number and leg count must be nonnegative")
    if key.family == "aux":
        if key.j < 2:
            raise GraphError("the auxiliary family needs a block count j >= 2")
    elif key.j != 0:
        raise GraphError("j applies only to the auxiliary family")
    if key.options is not None:
        if key.family not in _OPTION_FAMILIES:
            raise GraphError("block limits apply only to the two_edge families")
        if key.options.min_n < 2 or key.options.min_k < 1:
            raise GraphError("block limits must satisfy min_n >= 2 and min_k >= 1")


def _normalize_options(options: BlockLimits | None) -> BlockLimits | None:
    if options is None or options == _DEFAULT_LIMITS:
        return None
    return options


def _unique_cut_vertex(g: Multigraph) -> int:
    cuts = block_decomposition(g).cut_vertices
    if len(cuts) != 1:
        raise GraphError("expected a graph with exactly one cut vertex")
    return next(iter(cuts))


def _leg_labels(s: int) -> list[str]:
    return [f"x{index}" for index in range(1, s + 1)]


def _apply_spec(spec: tuple) -> LinearCombination:
    kind, rep, i, arg = spec
    if kind == "q":
        return ops.q_map(rep, i, arg)
    if kind == "q_hat":
        return ops.q_hat_map(rep, i, arg)
    if kind == "insert":
        return ops.insert_block(rep, i, arg)
    if kind == "insert_hat":
        return ops.insert_block_hat(rep, i, arg)
    raise AssertionError(f"unknown operator spec {kind!r}")


class BetaEngine:
    """Evaluates the family recursions with memoization.

    ``cache_dir`` enables an on-disk cache with one JSON file per key.
    ``jobs`` > 1 fans the operator applications inside one evaluation out
    to a process pool; results are merged with exact rational addition,
    so the outcome is identical for any worker count.
    """

    def __init__(self, cache_dir: str | os.PathLike | None = None, jobs: int = 1):
        if jobs < 1:
            raise GraphError("jobs must be at least 1")
        self._memo: dict[BetaKey, LinearCombination] = {}
        self._cache_dir = Path(cache_dir) if cache_dir else None
        self._jobs = jobs
        self._pool: ProcessPoolExecutor | None = None

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def __enter__(self) -> "BetaEngine":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    # ------------------------------------------------------------------
    # public entry points

    def beta(self, key: BetaKey) -> LinearCombination:
        _validate_key(key)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        combo = self._load_cached(key)
        if combo is None:
            combo = self._compute(key)
            self._store_cached(key, combo)
        self._memo[key] = combo
        return combo

    def beta_biconn(self, n: int, k: int, s: int = 0) -> LinearCombination:
        return self.beta(BetaKey("biconn", n, k, s))

    def beta_aux(self, j: int, n: int, k: int, s: int = 0) -> LinearCombination:
        return self.beta(BetaKey("aux", n, k, s, j=j))

    def beta_conn(self, n: int, k: int, s: int = 0) -> LinearCombination:
        return self.beta(BetaKey("conn", n, k, s))

    def beta_two_edge(
        self, n: int, k: int, s: int = 0, options: BlockLimits | None = None
    ) -> LinearCombination:
        return self.beta(BetaKey("two_edge", n, k, s, options=_normalize_options(options)))

    def beta_two_edge_cycles(
        self, n: int, k: int, s: int = 0, options: BlockLimits | None = None
    ) -> LinearCombination:
        return self.beta(
            BetaKey("two_edge_cycles", n, k, s, options=_normalize_options(options))
        )

    # ------------------------------------------------------------------
    # evaluation

    def _compute(self, key: BetaKey) -> LinearCombination:
        if key.family == "biconn":
            return self._biconn(key.n, key.k, key.s)
        if key.family == "aux":
            return self._aux(key.j, key.n, key.k, key.s)
        if key.family == "conn":
            return self._conn(key.n, key.k, key.s)
        cycles_only = key.family == "two_edge_cycles"
        return self._two_edge_like(key.n, key.k, key.s, key.options, cycles_only, key.family)

    def _run(self, applications: list[tuple[Fraction, tuple]]) -> LinearCombination:
        out = LinearCombination()
        if not applications:
            return out
        specs = [spec for _, spec in applications]
        if self._jobs > 1 and len(specs) > 1:
            pool = self._ensure_pool()
            chunk = max(1, len(specs) // (self._jobs * 4))
            results = pool.map(_apply_spec, specs, chunksize=chunk)
        else:
            results = map(_apply_spec, specs)
        for (scale, _), combo in zip(applications, results):
            out._merge(combo, scale)
        return out

    def _ensure_pool(self) -> ProcessPoolExecutor:
        if self._pool is None:
            self._pool = ProcessPoolExecutor(max_workers=self._jobs)
        return self._pool

    def _biconn(self, n: int, k: int, s: int) -> LinearCombination:
        if n == 2:
            core = multi_edge_graph(k + 1)
            combo = ops.xi_distribute(core, (1, 2), _leg_labels(s))
            return combo * Fraction(1, 2 * factorial(k + 1))
        if k == 0:
            return LinearCombination()
        applications: list[tuple[Fraction, tuple]] = []
        for rho in range(1, k + 2):
            target = self.beta_biconn(n - 1, k + 1 - rho, s)
            for _, coeff, rep in target.terms():
                for i in range(1, n):
                    applications.append((coeff, ("q", rep, i, rho)))
        for j in range(2, n - 1):
            for rho in range(1, k - j + 2):
                target = self.beta_aux(j, n - 1, k + 1 - rho, s)
                for _, coeff, rep in target.terms():
                    cut = _unique_cut_vertex(rep)
                    applications.append((coeff, ("q_hat", rep, cut, rho)))
        return self._run(applications) * Fraction(1, k + n - 1)

    def _aux(self, j: int, n: int, k: int, s: int) -> LinearCombination:
        if n < j + 1 or k < j:
            return LinearCombination()
        applications: list[tuple[Fraction, tuple]] = []
        for block_k in range(1, k):
            for block_n in range(2, n):
                blocks = self.beta_biconn(block_n, block_k, 0)
                if not blocks:
                    continue
                weight = block_k + block_n - 1
                if j == 2:
                    target = self.beta_biconn(n - block_n + 1, k - block_k, s)
                    for _, target_coeff, target_rep in target.terms():
                        for _, block_coeff, block_rep in blocks.terms():
                            scale = weight * target_coeff * block_coeff
                            for i in range(1, n - block_n + 2):
                                applications.append((scale, ("insert", target_rep, i, block_rep)))
                else:
                    target = self.beta_aux(j - 1, n - block_n + 1, k - block_k, s)
                    for _, target_coeff, target_rep in target.terms():
                        cut = _unique_cut_vertex(target_rep)
                        for _, block_coeff, block_rep in blocks.terms():
                            scale = weight * target_coeff * block_coeff
                            applications.append((scale, ("insert_hat", target_rep, cut, block_rep)))
        return self._run(applications) * Fraction(1, k + n - 1)

    def _conn(self, n: int, k: int, s: int) -> LinearCombination:
        if n == 2:
            return self.beta_biconn(2, k, s)
        applications: list[tuple[Fraction, tuple]] = []
        for block_k in range(k + 1):
            for block_n in range(2, n):
                blocks = self.beta_biconn(block_n, block_k, 0)
                if not blocks:
                    continue
                weight = block_k + block_n - 1
                target = self.beta_conn(n - block_n + 1, k - block_k, s)
                for _, target_coeff, target_rep in target.terms():
                    for _, block_coeff, block_rep in blocks.terms():
                        scale = weight * target_coeff * block_coeff
                        for i in range(1, n - block_n + 2):
                            applications.append((scale, ("insert", target_rep, i, block_rep)))
        out = self._run(applications) * Fraction(1, k + n - 1)
        return out + self.beta_biconn(n, k, s)

    def _two_edge_like(
        self,
        n: int,
        k: int,
        s: int,
        options: BlockLimits | None,
        cycles_only: bool,
        family: str,
    ) -> LinearCombination:
        limits = options or _DEFAULT_LIMITS

        def block_ok(block_n: int, block_k: int) -> bool:
            if cycles_only and block_k != 1:
                return False
            return block_n >= limits.min_n and block_k >= limits.min_k

        if k < 1:
            return LinearCombination()
        if n == 2:
            if block_ok(2, k):
                return self.beta_biconn(2, k, s)
            return LinearCombination()
        applications: list[tuple[Fraction, tuple]] = []
        for block_k in range(limits.min_k, k - limits.min_k + 1):
            for block_n in range(limits.min_n, n - limits.min_n + 2):
                if not block_ok(block_n, block_k):
                    continue
                blocks = self.beta_biconn(block_n, block_k, 0)
                if not blocks:
                    continue
                weight = block_k + block_n - 1
                target = self.beta(
                    BetaKey(family, n - block_n + 1, k - block_k, s, options=options)
                )
                for _, target_coeff, target_rep in target.terms():
                    for _, block_coeff, block_rep in blocks.terms():
                        scale = weight * target_coeff * block_coeff
                        for i in range(1, n - block_n + 2):
                            applications.append((scale, ("insert", target_rep, i, block_rep)))
        out = self._run(applications) * Fraction(1, k + n - 1)
        if block_ok(n, k):
            out = out + self.beta_biconn(n, k, s)
        return out

    # ------------------------------------------------------------------
    # on-disk cache

    def _cache_path(self, key: BetaKey) -> Path:
        assert self._cache_dir is not None
        name = key.family + (str(key.j) if key.family == "aux" else "")
        parts = [name, f"n{key.n}", f"k{key.k}", f"s{key.s}"]
        if key.options is not None:
            parts.append(f"bn{key.options.min_n}")
            parts.append(f"bk{key.options.min_k}")
        return self._cache_dir / ("-".join(parts) + ".json")

    def _load_cached(self, key: BetaKey) -> LinearCombination | None:
        if self._cache_dir is None:
            return None
        path = self._cache_path(key)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        if not isinstance(data, dict) or data.get("format_version") != CACHE_FORMAT_VERSION:
            return None
        try:
            combo = LinearCombination()
            for term in data["terms"]:
                graph = Multigraph.from_json_dict(term["graph"])
                combo._add(graph, Fraction(term["coefficient"]))
            return combo
        except (KeyError, TypeError, ValueError, ZeroDivisionError, GraphError):
            return None

    def _store_cached(self, key: BetaKey, combo: LinearCombination) -> None:
        if self._cache_dir is None:
            return
        self._cache_dir.mkdir(parents=True, exist_ok=True)
        payload = {
            "format_version": CACHE_FORMAT_VERSION,
            "family": key.family,
            "n": key.n,
            "k": key.k,
            "s": key.s,
            "j": key.j,
            "options": (
                None
                if key.options is None
                else {"min_block_n": key.options.min_n, "min_block_k": key.options.min_k}
            ),
            "terms": [
                {
                    "graph": rep.to_json_dict(),
                    "coefficient": f"{coeff.numerator}/{coeff.denominator}",
                }
                for _, coeff, rep in combo.terms()
            ],
        }
        self._cache_path(key).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )


# ----------------------------------------------------------------------
# module-level convenience around a shared engine

_shared_engine = BetaEngine()


def beta_biconn(n: int, k: int, s: int = 0, *, engine: BetaEngine | None = None) -> LinearCombination:
    return (engine or _shared_engine).beta_biconn(n, k, s)


def beta_aux(j: int, n: int, k: int, s: int = 0, *, engine: BetaEngine | None = None) -> LinearCombination:
    return (engine or _shared_engine).beta_aux(j, n, k, s)


def beta_conn(n: int, k: int, s: int = 0, *, engine: BetaEngine | None = None) -> LinearCombination:
    return (engine or _shared_engine).beta_conn(n, k, s)


def beta_two_edge(
    n: int,
    k: int,
    s: int = 0,
    *,
    options: BlockLimits | None = None,
    engine: BetaEngine | None = None,
) -> LinearCombination:
    return (engine or _shared_engine).beta_two_edge(n, k, s, options)


def beta_two_edge_cycles(
    n: int,
    k: int,
    s: int = 0,
    *,
    options: BlockLimits | None = None,
    engine: BetaEngine | None = None,
) -> LinearCombination:
    return (engine or _shared_engine).beta_two_edge_cycles(n, k, s, options)
