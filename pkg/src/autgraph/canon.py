"""Canonical class keys, automorphism orders, and exact linear combinations.

Isomorphism here respects external labels: a vertex carrying the leg x3
can only map to a vertex carrying x3.  Canonical keys are computed by
minimizing a faithful encoding of the graph over vertex relabelings; the
search is restricted to relabelings compatible with a vertex invariant,
which is itself isomorphism-invariant, so equal keys still characterize
isomorphism exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Callable, Iterable, Iterator

from .graph import GraphError, Multigraph


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Identifier of a multigraph isomorphism class.

    Two graphs get the same key exactly when some vertex relabeling maps
    one onto the other preserving edge multiplicities and leg labels.
    Keys order and serialize by their byte encoding.
    """

    encoding: bytes

    def hex(self) -> str:
        return self.encoding.hex()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"CanonicalKey({self.encoding.decode('ascii')!r})"


def _vertex_invariants(g: Multigraph) -> dict[int, tuple]:
    base = {}
    for v in range(1, g.n + 1):
        incident_mults = tuple(sorted(g.multiplicity(v, w) for w in g.neighbors(v)))
        base[v] = (g.degree(v), tuple(sorted(g.legs_at(v))), incident_mults)
    refined = {}
    for v in range(1, g.n + 1):
        around = tuple(sorted((g.multiplicity(v, w), base[w]) for w in g.neighbors(v)))
        refined[v] = (base[v], around)
    return refined


def _invariant_cells(g: Multigraph) -> list[list[int]]:
    """Vertices grouped by invariant, cells ordered by invariant value."""
    refined = _vertex_invariants(g)
    groups: dict[tuple, list[int]] = {}
    for v in range(1, g.n + 1):
        groups.setdefault(refined[v], []).append(v)
    return [groups[key] for key in sorted(groups)]


def _relabelings(g: Multigraph) -> Iterator[tuple[int, ...]]:
    """Candidate relabelings: each invariant cell fills a fixed slot range."""
    cells = _invariant_cells(g)
    offsets = []
    base = 0
    for cell in cells:
        offsets.append(base)
        base += len(cell)
    for choice in product(*(permutations(cell) for cell in cells)):
        image = [0] * g.n
        for offset, ordering in zip(offsets, choice):
            for rank, v in enumerate(ordering):
                image[v - 1] = offset + rank + 1
        yield tuple(image)


def _encode(g: Multigraph, image: tuple[int, ...]) -> tuple:
    edges = sorted(
        (image[u - 1], image[v - 1]) if image[u - 1] < image[v - 1] else (image[v - 1], image[u - 1])
        for u, v in g.edges
    )
    legs = sorted((image[v - 1], label) for label, v in g.legs)
    return tuple(edges), tuple(legs)


@lru_cache(maxsize=None)
def canonical_key(g: Multigraph) -> CanonicalKey:
    """Key of g's isomorphism class (external labels respected)."""
    best = None
    for image in _relabelings(g):
        candidate = _encode(g, image)
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    edges, legs = best
    edge_part = ";".join(f"{u},{v}" for u, v in edges)
    leg_part = ";".join(f"{v}:{label}" for v, label in legs)
    return CanonicalKey(f"{g.n}|{edge_part}|{leg_part}".encode("ascii"))


def _preserves_structure(g: Multigraph, image: dict[int, int]) -> bool:
    for (u, v), mult in g.multiplicities.items():
        if g.multiplicity(image[u], image[v]) != mult:
            return False
    leg_set = set(g.legs)
    return all((label, image[v]) in leg_set for label, v in g.legs)


@lru_cache(maxsize=None)
def aut_order(g: Multigraph) -> int:
    """Order of the automorphism group of g.

    Vertex symmetries are counted by brute force over label- and
    multiplicity-preserving permutations; since graphs are loopless and
    legs carry unique labels, the remaining symmetries can only permute
    parallel internal edges, contributing the product of multiplicity
    factorials.
    """
    cells = _invariant_cells(g)
    vertex_count = 0
    for choice in product(*(permutations(cell) for cell in cells)):
        image: dict[int, int] = {}
        for cell, ordering in zip(cells, choice):
            for v, w in zip(cell, ordering):
                image[v] = w
        if _preserves_structure(g, image):
            vertex_count += 1
    edge_factor = 1
    for mult in g.multiplicities.values():
        edge_factor *= factorial(mult)
    return vertex_count * edge_factor


def _as_fraction(coeff) -> Fraction:
    if isinstance(coeff, bool) or not isinstance(coeff, (int, Fraction)):
        raise GraphError(f"coefficients must be exact rationals, got {type(coeff).__name__}")
    return Fraction(coeff)


class LinearCombination:
    """A formal Q-linear combination of multigraph isomorphism classes.

    Terms are keyed by canonical key; the first graph seen for a class is
    kept as the exported representative.  Coefficients are exact
    rationals; classes whose coefficient cancels to zero are dropped.
    """

    def __init__(self, terms: Iterable[tuple[Multigraph, Fraction | int]] = ()):
        self._terms: dict[CanonicalKey, tuple[Fraction, Multigraph]] = {}
        for g, coeff in terms:
            self._add(g, coeff)

    @classmethod
    def zero(cls) -> "LinearCombination":
        return cls()

    # internal accumulation -------------------------------------------------

    def _add(self, g: Multigraph, coeff) -> None:
        value = _as_fraction(coeff)
        if value == 0:
            return
        key = canonical_key(g)
        current = self._terms.get(key)
        if current is None:
            self._terms[key] = (value, g)
            return
        total = current[0] + value
        if total == 0:
            del self._terms[key]
        else:
            self._terms[key] = (total, current[1])

    def _merge(self, other: "LinearCombination", scale: Fraction | int = 1) -> None:
        factor = _as_fraction(scale)
        if factor == 0:
            return
        for key, (coeff, rep) in other._terms.items():
            current = self._terms.get(key)
            if current is None:
                self._terms[key] = (factor * coeff, rep)
                continue
            total = current[0] + factor * coeff
            if total == 0:
                del self._terms[key]
            else:
                self._terms[key] = (total, current[1])

    # value-style public interface ------------------------------------------

    def add_term(self, g: Multigraph, coeff) -> "LinearCombination":
        """A new combination with coeff added at g's class (coeff must be nonzero)."""
        value = _as_fraction(coeff)
        if value == 0:
            raise GraphError("add_term needs a nonzero coefficient")
        out = self.copy()
        out._add(g, value)
        return out

    def copy(self) -> "LinearCombination":
        out = LinearCombination()
        out._terms = dict(self._terms)
        return out

    def __add__(self, other) -> "LinearCombination":
        if not isinstance(other, LinearCombination):
            return NotImplemented
        out = self.copy()
        out._merge(other)
        return out

    def __sub__(self, other) -> "LinearCombination":
        if not isinstance(other, LinearCombination):
            return NotImplemented
        out = self.copy()
        out._merge(other, -1)
        return out

    def __mul__(self, scalar) -> "LinearCombination":
        factor = _as_fraction(scalar)
        out = LinearCombination()
        if factor != 0:
            out._terms = {key: (factor * coeff, rep) for key, (coeff, rep) in self._terms.items()}
        return out

    __rmul__ = __mul__

    # inspection -------------------------------------------------------------

    def coefficient(self, item: Multigraph | CanonicalKey) -> Fraction:
        key = canonical_key(item) if isinstance(item, Multigraph) else item
        entry = self._terms.get(key)
        return entry[0] if entry else Fraction(0)

    def representative(self, key: CanonicalKey) -> Multigraph:
        try:
            return self._terms[key][1]
        except KeyError:
            raise GraphError("class is not present in this combination") from None

    def terms(self) -> list[tuple[CanonicalKey, Fraction, Multigraph]]:
        """Terms sorted by key bytes: (key, coefficient, representative)."""
        return [(key, coeff, rep) for key, (coeff, rep) in sorted(self._terms.items())]

    def support(self) -> frozenset[CanonicalKey]:
        return frozenset(self._terms)

    def class_coefficients(self) -> dict[CanonicalKey, Fraction]:
        return {key: coeff for key, (coeff, _) in self._terms.items()}

    def restricted(self, predicate: Callable[[Multigraph], bool]) -> "LinearCombination":
        """Sub-combination of the classes whose representative satisfies predicate."""
        out = LinearCombination()
        out._terms = {key: entry for key, entry in self._terms.items() if predicate(entry[1])}
        return out

    def total_mass(self) -> Fraction:
        return sum((coeff for coeff, _ in self._terms.values()), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self.class_coefficients() == other.class_coefficients()

    __hash__ = None  # mutable accumulator underneath

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"LinearCombination({len(self._terms)} classes, mass {self.total_mass()})"
