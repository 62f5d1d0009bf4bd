"""Independent ground truth: exhaustive enumeration and coefficient checks.

The enumerator distributes indistinguishable internal edges over vertex
pairs and legs over vertices by brute force, filters by a family
predicate, and dedupes by canonical key.  It shares nothing with the
recursion drivers beyond the graph model and the canonical key, so
agreement between the two is meaningful evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from . import ops, recursion
from .canon import CanonicalKey, LinearCombination, aut_order, canonical_key
from .graph import (
    GraphError,
    Multigraph,
    block_decomposition,
    cycle_graph,
    is_biconnected,
    is_connected,
    is_two_edge_connected,
    multi_edge_graph,
    path_graph,
)
from .recursion import BetaEngine, BlockLimits

DEFAULT_MAX_ORDER = 7
MAX_LEGS = 3


# ----------------------------------------------------------------------
# family predicates

def _block_profile(g: Multigraph) -> list[tuple[int, int]]:
    """(vertex count, cyclomatic number) of every block of a connected graph."""
    profile = []
    for block in block_decomposition(g).blocks:
        block_n = len(block.vertices)
        block_m = len(block.edge_ids)
        profile.append((block_n, block_m - block_n + 1))
    return profile


def blocks_are_cycles(g: Multigraph) -> bool:
    """True when every biconnected component is a cycle (cyclomatic number 1)."""
    return all(block_k == 1 for _, block_k in _block_profile(g))


def blocks_within_limits(g: Multigraph, limits: BlockLimits) -> bool:
    return all(
        block_n >= limits.min_n and block_k >= limits.min_k
        for block_n, block_k in _block_profile(g)
    )


def family_predicate(family: str, j: int = 0, options: BlockLimits | None = None):
    """Membership test for one family of connected graphs."""
    if family == "conn":
        return is_connected
    if family == "biconn":
        return is_biconnected

    if family in ("two_edge", "two_edge_cycles"):

        def two_edge_pred(g: Multigraph) -> bool:
            if not is_two_edge_connected(g):
                return False
            if family == "two_edge_cycles" and not blocks_are_cycles(g):
                return False
            return options is None or blocks_within_limits(g, options)

        return two_edge_pred

    if family == "aux":
        if j < 2:
            raise GraphError("the auxiliary family needs a block count j >= 2")

        def aux_pred(g: Multigraph) -> bool:
            if not is_two_edge_connected(g):
                return False
            decomposition = block_decomposition(g)
            return len(decomposition.cut_vertices) == 1 and len(decomposition.blocks) == j

        return aux_pred

    raise GraphError(f"unknown family {family!r}")


# ----------------------------------------------------------------------
# exhaustive enumeration

def enumerate_classes(
    family: str,
    n: int,
    k: int,
    s: int = 0,
    *,
    j: int = 0,
    options: BlockLimits | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> dict[CanonicalKey, Multigraph]:
    """Every isomorphism class of the family, by brute force.

    Distributes the k+n-1 internal edges over all vertex pairs and each
    of the s leg labels over all vertices, filters by the family
    predicate, and keeps one representative per canonical key.
    """
    if not (isinstance(n, int) and isinstance(k, int) and isinstance(s, int)):
        raise GraphError("n, k, s must be integers")
    if n < 1 or k < 0 or s < 0:
        raise GraphError("need n >= 1, k >= 0, s >= 0")
    if n + k > max_order:
        raise GraphError(f"n+k = {n + k} exceeds the enumeration bound {max_order}")
    if s > MAX_LEGS:
        raise GraphError(f"leg count {s} exceeds the enumeration bound {MAX_LEGS}")
    predicate = family_predicate(family, j=j, options=options)
    edge_count = k + n - 1
    if edge_count < 0:
        return {}
    pairs = list(combinations(range(1, n + 1), 2))
    if edge_count > 0 and not pairs:
        return {}
    labels = [f"x{index}" for index in range(1, s + 1)]
    found: dict[CanonicalKey, Multigraph] = {}
    for chosen in combinations_with_replacement(pairs, edge_count):
        core = Multigraph(n, chosen)
        if not is_connected(core):
            continue
        for assignment in product(range(1, n + 1), repeat=s):
            g = Multigraph(n, chosen, tuple(zip(labels, assignment))) if s else core
            if predicate(g):
                found.setdefault(canonical_key(g), g)
    return found


# ----------------------------------------------------------------------
# coefficient verification

@dataclass(frozen=True)
class ClassCheck:
    key: CanonicalKey
    graph: Multigraph
    coefficient: Fraction
    expected: Fraction

    @property
    def ok(self) -> bool:
        return self.coefficient == self.expected


@dataclass
class BetaVerification:
    family: str
    n: int
    k: int
    s: int
    j: int
    checks: list[ClassCheck]
    missing: list[tuple[CanonicalKey, Multigraph]]
    extra: list[tuple[CanonicalKey, Fraction, Multigraph]]

    @property
    def passed(self) -> bool:
        return not self.missing and not self.extra and all(check.ok for check in self.checks)

    @property
    def class_count(self) -> int:
        return len(self.checks)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "s": self.s,
            "j": self.j,
            "passed": self.passed,
            "class_count": self.class_count,
            "classes": [
                {
                    "key": check.key.hex(),
                    "graph": check.graph.to_json_dict(),
                    "coefficient": f"{check.coefficient.numerator}/{check.coefficient.denominator}",
                    "inverse_aut_order": f"{check.expected.numerator}/{check.expected.denominator}",
                    "match": check.ok,
                }
                for check in self.checks
            ],
            "missing": [graph.to_json_dict() for _, graph in self.missing],
            "extra": [graph.to_json_dict() for _, _, graph in self.extra],
        }

    def to_text(self) -> str:
        tag = f"{self.family}{self.j if self.family == 'aux' else ''}"
        lines = [
            f"{tag} n={self.n} k={self.k} s={self.s}: "
            f"{self.class_count} classes, {'pass' if self.passed else 'FAIL'}"
        ]
        for check in self.checks:
            if not check.ok:
                lines.append(
                    f"  mismatch {check.graph.to_json_dict()}: "
                    f"got {check.coefficient}, expected {check.expected}"
                )
        for _, graph in self.missing:
            lines.append(f"  missing class {graph.to_json_dict()}")
        for _, coeff, graph in self.extra:
            lines.append(f"  extra class {graph.to_json_dict()} with coefficient {coeff}")
        return "\n".join(lines)


def _family_value(
    engine: BetaEngine,
    family: str,
    n: int,
    k: int,
    s: int,
    j: int,
    options: BlockLimits | None,
) -> LinearCombination:
    if family == "aux":
        return engine.beta_aux(j, n, k, s)
    if family == "biconn":
        return engine.beta_biconn(n, k, s)
    if family == "conn":
        return engine.beta_conn(n, k, s)
    if family == "two_edge":
        return engine.beta_two_edge(n, k, s, options)
    if family == "two_edge_cycles":
        return engine.beta_two_edge_cycles(n, k, s, options)
    raise GraphError(f"unknown family {family!r}")


def verify_beta(
    family: str,
    n: int,
    k: int,
    s: int = 0,
    *,
    j: int = 0,
    options: BlockLimits | None = None,
    engine: BetaEngine | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> BetaVerification:
    """Compare one family value against exhaustive enumeration.

    Passes when the class sets agree exactly and every coefficient equals
    the inverse automorphism group order of its class.
    """
    engine = engine or recursion._shared_engine
    combo = _family_value(engine, family, n, k, s, j, options)
    expected = enumerate_classes(
        family, n, k, s, j=j, options=options, max_order=max_order
    )
    coefficients = combo.class_coefficients()
    checks = []
    for key in sorted(expected):
        if key in coefficients:
            graph = expected[key]
            checks.append(
                ClassCheck(
                    key=key,
                    graph=graph,
                    coefficient=coefficients[key],
                    expected=Fraction(1, aut_order(graph)),
                )
            )
    missing = [(key, expected[key]) for key in sorted(set(expected) - set(coefficients))]
    extra = [
        (key, coefficients[key], combo.representative(key))
        for key in sorted(set(coefficients) - set(expected))
    ]
    return BetaVerification(
        family=family, n=n, k=k, s=s, j=j, checks=checks, missing=missing, extra=extra
    )


# ----------------------------------------------------------------------
# property checks for the operator laws

@dataclass
class LemmaCheck:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(detail)


@dataclass
class LemmaReport:
    bound: int
    checks: list[LemmaCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "bound": self.bound,
            "passed": self.passed,
            "checks": [
                {
                    "name": check.name,
                    "cases": check.cases,
                    "failures": check.failures[:20],
                    "passed": check.passed,
                }
                for check in self.checks
            ],
        }

    def to_text(self) -> str:
        lines = [f"operator properties up to n+k <= {self.bound}:"]
        for check in self.checks:
            status = "pass" if check.passed else "FAIL"
            lines.append(f"  {check.name}: {check.cases} cases, {status}")
            for detail in check.failures[:5]:
                lines.append(f"    {detail}")
        return "\n".join(lines)


def _biconn_corpus(bound: int) -> list[Multigraph]:
    corpus = []
    for n in range(2, bound):
        for k in range(1, bound - n + 1):
            corpus.extend(enumerate_classes("biconn", n, k).values())
        if n + 1 <= bound - 1:
            for k in range(1, bound - n):
                corpus.extend(enumerate_classes("biconn", n, k, 1).values())
    return corpus


def _check_q_preserves_biconnected(bound: int) -> LemmaCheck:
    check = LemmaCheck("joining a split biconnected graph stays biconnected")
    for g in _biconn_corpus(bound):
        for i in range(1, g.n + 1):
            for rho in (1, 2):
                combo = ops.q_map(g, i, rho)
                ok = all(is_biconnected(rep) for _, _, rep in combo.terms())
                check.record(ok, f"q_map({g.to_json_dict()}, {i}, {rho})")
    return check


def _one_cut_corpus(bound: int) -> list[Multigraph]:
    corpus = []
    for n in range(3, bound):
        for k in range(2, bound - n + 1):
            for count in (2, 3):
                corpus.extend(enumerate_classes("aux", n, k, j=count).values())
    return corpus


def _check_q_hat_from_single_cut(bound: int) -> LemmaCheck:
    check = LemmaCheck("bundled split at a unique cut vertex yields biconnected graphs")
    # fixed seeds keep the check non-vacuous below the first enumerated size
    seeds = [
        Multigraph(3, ((1, 2), (1, 2), (2, 3), (2, 3))),
        Multigraph(5, ((1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5))),
    ]
    for g in seeds + _one_cut_corpus(bound):
        cut = next(iter(block_decomposition(g).cut_vertices))
        for rho in (1, 2):
            combo = ops.q_hat_map(g, cut, rho)
            ok = bool(combo) and all(is_biconnected(rep) for _, _, rep in combo.terms())
            check.record(ok, f"q_hat_map({g.to_json_dict()}, {cut}, {rho})")
    return check


def _pair_chain(length: int) -> Multigraph:
    """A chain of parallel pairs on length+1 vertices (length-1 cut vertices)."""
    edges = []
    for v in range(1, length + 1):
        edges += [(v, v + 1), (v, v + 1)]
    return Multigraph(length + 1, tuple(edges))


def _many_cut_corpus() -> list[Multigraph]:
    chain4 = _pair_chain(3)
    chain5 = _pair_chain(4)
    mixed = Multigraph(5, ((1, 2), (1, 2), (2, 3), (2, 3), (3, 4), (3, 5), (4, 5)))
    return [chain4, chain5, mixed]


def _check_q_difference_avoids_biconnected() -> LemmaCheck:
    # On graphs with two or more cut vertices the unbundled-only terms keep
    # a cut vertex, so none of them may land in a biconnected class.
    check = LemmaCheck("unbundled minus bundled split avoids biconnected classes")
    for g in _many_cut_corpus():
        assert len(block_decomposition(g).cut_vertices) >= 2
        for i in range(1, g.n + 1):
            for rho in (1, 2):
                difference = ops.q_map(g, i, rho) - ops.q_hat_map(g, i, rho)
                ok = not any(is_biconnected(rep) for _, _, rep in difference.terms())
                check.record(ok, f"q - q_hat on {g.to_json_dict()} at {i}, rho={rho}")
    return check


def _check_insert_preserves_two_edge(bound: int) -> LemmaCheck:
    check = LemmaCheck("inserting a cyclomatic block preserves 2-edge-connectivity")
    blocks = []
    for block_n in range(2, bound):
        for block_k in range(1, bound - block_n):
            blocks.extend(enumerate_classes("biconn", block_n, block_k).values())
    for n in range(2, bound):
        for k in range(1, bound - n + 1):
            for g in enumerate_classes("two_edge", n, k).values():
                for block in blocks:
                    for i in range(1, g.n + 1):
                        combo = ops.insert_block(g, i, block)
                        ok = all(is_two_edge_connected(rep) for _, _, rep in combo.terms())
                        check.record(ok, f"insert {block.to_json_dict()} into {g.to_json_dict()} at {i}")
    return check


def _distribute_fresh_legs(combo: LinearCombination, s: int, extra: int) -> LinearCombination:
    labels = [f"x{index}" for index in range(s + 1, s + extra + 1)]
    out = LinearCombination()
    for _, coeff, rep in combo.terms():
        out._merge(ops.xi_distribute(rep, range(1, rep.n + 1), labels), coeff)
    return out


def _check_leg_distribution_factorizes(engine: BetaEngine) -> LemmaCheck:
    check = LemmaCheck("post-hoc leg distribution reproduces the threaded legs")
    for n, k in ((2, 1), (3, 0), (3, 1)):
        for s, extra in ((0, 1), (0, 2), (1, 1)):
            direct = engine.beta_conn(n, k, s + extra)
            lifted = _distribute_fresh_legs(engine.beta_conn(n, k, s), s, extra)
            check.record(direct == lifted, f"conn n={n} k={k} s={s} extra={extra}")
    return check


def _vertex_sum(op, g: Multigraph) -> LinearCombination:
    out = LinearCombination()
    for i in range(1, g.n + 1):
        out._merge(op(g, i))
    return out


def _check_equivariance(bound: int, seed: int) -> LemmaCheck:
    check = LemmaCheck("vertex-summed operators are relabeling-invariant")
    rng = random.Random(seed)
    bridge = path_graph(2)
    pair = multi_edge_graph(2)
    corpus = []
    for n in range(3, bound + 1):
        for k in range(0, bound - n + 1):
            corpus.extend(enumerate_classes("conn", n, k).values())
    for g in corpus:
        for _ in range(2):
            image = list(range(1, g.n + 1))
            rng.shuffle(image)
            relabeled = g.relabeled(image)
            same_q = _vertex_sum(lambda h, i: ops.q_map(h, i, 1), g) == _vertex_sum(
                lambda h, i: ops.q_map(h, i, 1), relabeled
            )
            check.record(same_q, f"sum of q_map over {g.to_json_dict()}")
            same_insert = _vertex_sum(
                lambda h, i: ops.insert_block(h, i, bridge), g
            ) == _vertex_sum(lambda h, i: ops.insert_block(h, i, bridge), relabeled)
            check.record(same_insert, f"sum of insert_block over {g.to_json_dict()}")
    for g in _one_cut_corpus(bound + 1):
        for _ in range(2):
            image = list(range(1, g.n + 1))
            rng.shuffle(image)
            relabeled = g.relabeled(image)
            cut_a = next(iter(block_decomposition(g).cut_vertices))
            cut_b = next(iter(block_decomposition(relabeled).cut_vertices))
            same_hat = ops.q_hat_map(g, cut_a, 1) == ops.q_hat_map(relabeled, cut_b, 1)
            check.record(same_hat, f"q_hat_map at the cut vertex of {g.to_json_dict()}")
            same_insert_hat = ops.insert_block_hat(g, cut_a, pair) == ops.insert_block_hat(
                relabeled, cut_b, pair
            )
            check.record(same_insert_hat, f"insert_block_hat at the cut vertex of {g.to_json_dict()}")
    return check


def _check_split_term_count(bound: int) -> LemmaCheck:
    check = LemmaCheck("split term count is (2^d - 2) * 2^legs")
    for n in range(2, bound):
        for k in range(0, bound - n + 1):
            for s in (0, 1):
                for g in enumerate_classes("conn", n, k, s).values():
                    for i in range(1, g.n + 1):
                        d = g.degree(i)
                        legs = len(g.legs_at(i))
                        expected = (2**d - 2) * 2**legs if d >= 2 else 0
                        mass = ops.split_vertex(g, i).total_mass()
                        check.record(mass == expected, f"split {g.to_json_dict()} at {i}")
    return check


def _check_insert_term_count(bound: int) -> LemmaCheck:
    check = LemmaCheck("insert term count is n'^(blocks at i) * n'^(legs at i)")
    blocks = [path_graph(2), multi_edge_graph(2), cycle_graph(3)]
    for n in range(2, bound):
        for k in range(0, bound - n + 1):
            for s in (0, 1):
                for g in enumerate_classes("conn", n, k, s).values():
                    for block in blocks:
                        for i in range(1, g.n + 1):
                            at_i = len(block_decomposition(g).blocks_at[i])
                            legs = len(g.legs_at(i))
                            expected = block.n ** (at_i + legs)
                            mass = ops.insert_block(g, i, block).total_mass()
                            check.record(
                                mass == expected,
                                f"insert {block.to_json_dict()} into {g.to_json_dict()} at {i}",
                            )
    return check


def verify_lemmas(
    bound: int = 5,
    *,
    seed: int = 20250809,
    engine: BetaEngine | None = None,
) -> LemmaReport:
    """Run the operator property suite up to the given n+k bound."""
    if bound < 3:
        raise GraphError("the property suite needs a bound of at least 3")
    if bound > DEFAULT_MAX_ORDER:
        raise GraphError(f"bound {bound} exceeds the enumeration bound {DEFAULT_MAX_ORDER}")
    engine = engine or recursion._shared_engine
    checks = [
        _check_q_preserves_biconnected(bound),
        _check_q_hat_from_single_cut(bound),
        _check_q_difference_avoids_biconnected(),
        _check_insert_preserves_two_edge(bound),
        _check_leg_distribution_factorizes(engine),
        _check_equivariance(bound, seed),
        _check_split_term_count(bound),
        _check_insert_term_count(bound),
    ]
    return LemmaReport(bound=bound, checks=checks)
