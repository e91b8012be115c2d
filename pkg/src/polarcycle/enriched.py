"""Enriched and graded enriched cycles with finitely generated abelian coefficients."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

from sympy import factorint

from .cycles import Cycle, CycleError
from .ideal import Ideal, same_variety


@dataclass(frozen=True)
class FGAbelianGroup:
    """``Z^rank`` plus cyclic torsion in invariant-factor form."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ValueError("torsion orders must be at least 2")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError("torsion must be an invariant-factor chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, rank: int, orders: Iterable[int]) -> "FGAbelianGroup":
        """Normalize a direct sum of cyclic groups of the given orders."""
        return cls(rank, _invariant_factors(o for o in orders if o != 1))

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls(rank)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup.from_orders(self.rank + other.rank, self.torsion + other.torsion)

    def power(self, k: int) -> "FGAbelianGroup":
        if k < 0:
            raise ValueError("power must be nonnegative")
        return FGAbelianGroup.from_orders(self.rank * k, self.torsion * k)

    def elementary_divisors(self) -> dict:
        """Multiset of prime powers, as a map ``(p, e) -> count``."""
        out: dict = defaultdict(int)
        for d in self.torsion:
            for p, e in factorint(d).items():
                out[(p, e)] += 1
        return dict(out)

    def __le__(self, other: "FGAbelianGroup") -> bool:
        """``self`` is a direct summand of ``other``."""
        if self.rank > other.rank:
            return False
        mine, theirs = self.elementary_divisors(), other.elementary_divisors()
        return all(theirs.get(k, 0) >= n for k, n in mine.items())

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, doc: dict) -> "FGAbelianGroup":
        return cls.from_orders(int(doc.get("rank", 0)), [int(d) for d in doc.get("torsion", [])])


ZERO = FGAbelianGroup()
Z = FGAbelianGroup(1)


def _invariant_factors(orders: Iterable[int]) -> tuple:
    by_prime: dict = defaultdict(list)
    for d in orders:
        if d < 1:
            raise ValueError("cyclic orders must be positive")
        for p, e in factorint(d).items():
            by_prime[p].append(p**e)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort()
        offset = length - len(powers)
        for i, q in enumerate(powers):
            factors[offset + i] *= q
    return tuple(factors)


def tensor(A: FGAbelianGroup, B: FGAbelianGroup) -> FGAbelianGroup:
    orders = list(A.torsion) * B.rank + list(B.torsion) * A.rank
    orders += [math.gcd(a, b) for a in A.torsion for b in B.torsion]
    return FGAbelianGroup.from_orders(A.rank * B.rank, orders)


# ---------------------------------------------------------------------------
# enriched cycles


class EnrichedCycle:
    """Finite formal sum ``sum_V E_V [V]`` with group coefficients."""

    def __init__(self, components: Iterable = ()):
        self._items: list = []
        for V, G in components:
            self._add(V, G)

    def _add(self, V: Ideal, G: FGAbelianGroup):
        if G.is_zero():
            return
        for k, (W, H) in enumerate(self._items):
            if W == V or same_variety(W, V):
                self._items[k] = (W, H + G)
                return
        self._items.append((V, G))

    def __iter__(self):
        return iter(sorted(self._items, key=lambda c: c[0].basis_strings()))

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def coefficient(self, V: Ideal) -> FGAbelianGroup:
        for W, G in self._items:
            if W == V or same_variety(W, V):
                return G
        return ZERO

    def __add__(self, other: "EnrichedCycle") -> "EnrichedCycle":
        return EnrichedCycle(self._items + other._items)

    def scale(self, q: FGAbelianGroup) -> "EnrichedCycle":
        return EnrichedCycle((V, tensor(q, G)) for V, G in self._items)

    def __eq__(self, other):
        if not isinstance(other, EnrichedCycle):
            return NotImplemented
        return len(self) == len(other) and all(
            other.coefficient(V) == G for V, G in self._items
        )

    def __le__(self, other: "EnrichedCycle") -> bool:
        return all(G <= other.coefficient(V) for V, G in self._items)

    def __repr__(self):
        if not self._items:
            return "0"
        return " + ".join(f"{G}[V{V}]" for V, G in self)

    @classmethod
    def of_cycle(cls, C: Cycle) -> "EnrichedCycle":
        """``[C]^enr``: multiplicity ``m`` becomes the coefficient ``Z^m``."""
        return cls((P, FGAbelianGroup.free(m)) for P, m in C)


@dataclass
class GradedEnrichedCycle:
    """Degree-indexed enriched cycles with finite support."""

    by_degree: dict = field(default_factory=dict)

    def __post_init__(self):
        self.by_degree = {k: E for k, E in self.by_degree.items() if E}

    @classmethod
    def single(cls, V: Ideal, G: FGAbelianGroup, degree: int = 0) -> "GradedEnrichedCycle":
        return cls({degree: EnrichedCycle([(V, G)])})

    @classmethod
    def from_cycle(cls, C: Cycle, degree: int = 0) -> "GradedEnrichedCycle":
        return cls({degree: EnrichedCycle.of_cycle(C)})

    def degrees(self) -> list:
        return sorted(self.by_degree)

    def __getitem__(self, k: int) -> EnrichedCycle:
        return self.by_degree.get(k, EnrichedCycle())

    def __bool__(self):
        return bool(self.by_degree)

    def __eq__(self, other):
        if not isinstance(other, GradedEnrichedCycle):
            return NotImplemented
        keys = set(self.by_degree) | set(other.by_degree)
        return all(self[k] == other[k] for k in keys)

    def __le__(self, other: "GradedEnrichedCycle") -> bool:
        return all(self[k] <= other[k] for k in self.by_degree)

    def __add__(self, other: "GradedEnrichedCycle") -> "GradedEnrichedCycle":
        return ge_sum(self, other)

    def support(self) -> list:
        """Distinct component ideals across all degrees."""
        out: list = []
        for k in self.degrees():
            for V, _ in self[k]:
                if not any(V == W or same_variety(V, W) for W in out):
                    out.append(V)
        return out

    def scale(self, q: FGAbelianGroup) -> "GradedEnrichedCycle":
        return GradedEnrichedCycle({k: E.scale(q) for k, E in self.by_degree.items()})

    def __repr__(self):
        if not self.by_degree:
            return "0"
        return "; ".join(f"deg {k}: {self[k]!r}" for k in self.degrees())


def ge_sum(D: GradedEnrichedCycle, E: GradedEnrichedCycle) -> GradedEnrichedCycle:
    keys = set(D.by_degree) | set(E.by_degree)
    return GradedEnrichedCycle({k: D[k] + E[k] for k in keys})


def ge_shift(E: GradedEnrichedCycle, k: int) -> GradedEnrichedCycle:
    """``(E[k])^i = E^(i+k)``."""
    return GradedEnrichedCycle({i - k: C for i, C in E.by_degree.items()})


def ge_intersect(
    D: GradedEnrichedCycle,
    E: GradedEnrichedCycle,
    meet: Callable[[Ideal, Ideal], Cycle],
) -> GradedEnrichedCycle:
    """Convolution product; ``meet(V, W)`` is the ordinary cycle ``[V].[W]``.

    ``meet`` must raise ``NonProper`` when the pair does not intersect
    properly.
    """
    out: dict = defaultdict(list)
    for i, Di in D.by_degree.items():
        for j, Ej in E.by_degree.items():
            for V, A in Di:
                for W, B in Ej:
                    AB = tensor(A, B)
                    if AB.is_zero():
                        continue
                    for P, m in meet(V, W):
                        out[i + j].append((P, AB.power(m)))
    return GradedEnrichedCycle({k: EnrichedCycle(v) for k, v in out.items()})


def ordinary_of(E: GradedEnrichedCycle) -> dict:
    """Signed rank collapse ``sum_i (-1)^i rk(E^i_V) [V]`` as ``{V: coefficient}``.

    Keys are the canonical ideals; components that cancel are dropped.
    """
    acc: list = []
    for k in E.degrees():
        sign = -1 if k % 2 else 1
        for V, G in E[k]:
            for idx, (W, c) in enumerate(acc):
                if W == V or same_variety(W, V):
                    acc[idx] = (W, c + sign * G.rank)
                    break
            else:
                acc.append((V, sign * G.rank))
    return {V: c for V, c in acc if c}


def ge_pushforward(E: GradedEnrichedCycle, images: Callable[[Ideal], Cycle]) -> GradedEnrichedCycle:
    """Replace each component by its image cycle, keeping coefficients and degree.

    ``images(V)`` returns the push-forward of ``[V]`` as an ordinary cycle
    (the zero cycle when the map drops dimension).
    """
    out: dict = defaultdict(list)
    for k, Ek in E.by_degree.items():
        for V, G in Ek:
            img = images(V)
            if img is None:
                raise CycleError(f"no image supplied for component {V}")
            for P, m in img:
                out[k].append((P, G.power(m)))
    return GradedEnrichedCycle({k: EnrichedCycle(v) for k, v in out.items()})
