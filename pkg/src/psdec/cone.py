"""The cone C = {c in N_0^3 : c1, c2 <= c3 <= c1 + c2} and its invariants."""
from __future__ import annotations

import enum
from typing import NamedTuple


class NotInCone(ValueError):
    pass


class ConePoint(NamedTuple):
    c1: int
    c2: int
    c3: int

    @classmethod
    def parse(cls, text: str) -> "ConePoint":
        parts = [int(s) for s in text.replace(" ", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected c1,c2,c3 but got {text!r}")
        return check(cls(*parts))

    def __str__(self) -> str:
        return f"({self.c1},{self.c2},{self.c3})"


class InvariantTriple(NamedTuple):
    mu: int
    kappa: int
    level: int


class Region(str, enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"


def in_cone(c) -> bool:
    c1, c2, c3 = c
    return min(c1, c2) >= 0 and c1 <= c3 and c2 <= c3 <= c1 + c2


def check(c) -> ConePoint:
    if not in_cone(c):
        raise NotInCone(f"{tuple(c)} is not in the cone")
    return ConePoint(*c)


def invariants(c) -> InvariantTriple:
    c1, c2, c3 = check(c)
    kappa = c1 + c2 - c3
    return InvariantTriple(min(kappa, c3 - c1, c3 - c2), kappa, c3)


def region(c) -> Region:
    c1, c2, c3 = check(c)
    if c1 < c3 and c2 < c3 and c3 < c1 + c2:
        return Region.INTERIOR
    return Region.BOUNDARY


def equivalent(c, d) -> bool:
    """V_c and V_d are isomorphic."""
    ic, id_ = invariants(c), invariants(d)
    if ic != id_:
        return False
    return ic.kappa == ic.mu or tuple(c) == tuple(d)


def class_size(mu: int, kappa: int, level: int) -> int:
    """Number of cone points in a class with the given invariants."""
    if kappa == mu and level >= 3 * kappa >= 0:
        return level - 3 * kappa + 1
    if level >= 2 * mu + kappa > 3 * mu >= 0:
        return 1
    return 0


def enumerate_level(level: int) -> list[ConePoint]:
    if level < 0:
        raise ValueError("level must be >= 0")
    return [
        ConePoint(c1, c2, level)
        for c1 in range(level + 1)
        for c2 in range(level + 1)
        if c1 + c2 >= level
    ]


def classes_at_level(level: int) -> list[list[ConePoint]]:
    """Equivalence classes at one level, each sorted, ordered by first member."""
    classes: list[list[ConePoint]] = []
    for c in enumerate_level(level):
        for cls in classes:
            if equivalent(cls[0], c):
                cls.append(c)
                break
        else:
            classes.append([c])
    return classes


def count_classes_with_invariants(mu: int, kappa: int, level: int) -> int:
    if level < 0:
        return 0
    target = InvariantTriple(mu, kappa, level)
    return sum(1 for cls in classes_at_level(level) if invariants(cls[0]) == target)


def canonical_representative(c) -> ConePoint:
    """(2mu, level - mu, level) for kappa = mu classes, else c itself."""
    mu, kappa, level = invariants(c)
    if kappa == mu:
        return ConePoint(2 * mu, level - mu, level)
    return ConePoint(*c)


def delta_exponent(c) -> int:
    """Exponent e of the twist delta = pi^e governing V_c (kappa - mu)."""
    mu, kappa, _ = invariants(c)
    return kappa - mu
