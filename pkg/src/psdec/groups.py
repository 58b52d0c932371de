"""Twisted Heisenberg groups H^delta over O_m, their toral extensions B^delta
and the quotient E^delta = A x| Gamma.

Elements are encoded as single integers so the groups plug into
:class:`psdec.characters.FiniteGroup`.  Ring entries are ring codes and the
unit entries are stored through their position in ``ring.units``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .characters import FiniteGroup
from .ring import RingCtx, RingError, enumeration_bound


class BElement(NamedTuple):
    x: int
    y: int
    z: int
    t1: int
    t2: int
    t3: int


class EElement(NamedTuple):
    a_x: int
    a_z: int
    g_alpha: int
    g_beta: int
    g_gamma: int


def delta_from_exponent(ring: RingCtx, e: int) -> int:
    """delta = pi^e, with e >= m meaning delta = 0."""
    if e < 0:
        raise ValueError("delta exponent must be >= 0")
    return ring.pi_power(e)


def _check_units(ring: RingCtx, *codes):
    for c in codes:
        if not ring.is_unit(c):
            raise RingError(f"{c} is not a unit of {ring}")


def b_multiply(ring: RingCtx, delta: int, g: BElement, h: BElement) -> BElement:
    """The delta-twisted product of two elements of B^delta."""
    add, mul = ring.add, ring.mul
    x, y, z, t1, t2, t3 = g
    xp, yp, zp, s1, s2, s3 = h
    return BElement(
        add(mul(x, s1), mul(t2, xp)),
        add(mul(y, s2), mul(t3, yp)),
        add(add(mul(z, s1), mul(mul(delta, y), xp)), mul(t3, zp)),
        mul(t1, s1),
        mul(t2, s2),
        mul(t3, s3),
    )


def e_multiply(ring: RingCtx, delta: int, g: EElement, h: EElement) -> EElement:
    """(a1 x| g1)(a2 x| g2) = (a1 + g1.a2) x| g1 g2 with g.(x, z) = (ax, b x delta + c z)."""
    add, mul = ring.add, ring.mul
    x1, z1, a1, b1, c1 = g
    x2, z2, a2, b2, c2 = h
    return EElement(
        add(x1, mul(a1, x2)),
        add(z1, add(mul(mul(b1, x2), delta), mul(c1, z2))),
        mul(a1, a2),
        add(mul(b1, a2), mul(c1, b2)),
        mul(c1, c2),
    )


def project_to_e(ring: RingCtx, g: BElement) -> EElement:
    """The quotient map B^delta -> E^delta (kernel: the centre)."""
    x, y, z, t1, t2, t3 = g
    s = ring.inv(t1)
    mul = ring.mul
    return EElement(mul(s, x), mul(s, z), mul(s, t2), mul(s, y), mul(s, t3))


class _EncodedGroup:
    """Shared plumbing: a mixed-radix encoding of tuples of ring codes."""

    ring: RingCtx
    delta: int
    radices: tuple[int, ...]
    unit_slots: tuple[bool, ...]

    def _setup(self):
        ring = self.ring
        if ring.m < 1:
            raise ValueError("twisted groups need m >= 1")
        self.N = ring.size
        self.units = np.array(ring.units, dtype=np.int64)
        self.U = self.units.size
        self.unit_index = np.full(self.N, -1, dtype=np.int64)
        self.unit_index[self.units] = np.arange(self.U)
        self.A = ring.add_table
        self.M = ring.mul_table
        self.NEG = ring.neg_table
        self.INV = ring.inv_table
        self.VAL = ring.val_table
        self.order = int(np.prod(self.radices))
        if self.order > enumeration_bound():
            raise ValueError(f"group of order {self.order} exceeds enumeration bound")

    def encode(self, *comps):
        """Codes (ring codes, units given as ring codes) -> element index."""
        idx = 0
        for comp, radix, is_unit in zip(comps, self.radices, self.unit_slots):
            comp = np.asarray(comp, dtype=np.int64)
            digit = self.unit_index[comp] if is_unit else comp
            idx = idx * radix + digit
        return idx

    @cached_property
    def components(self) -> tuple[np.ndarray, ...]:
        """Component arrays (ring codes) for every element index."""
        rest = np.arange(self.order, dtype=np.int64)
        out = []
        for radix, is_unit in zip(reversed(self.radices), reversed(self.unit_slots)):
            rest, digit = np.divmod(rest, radix)
            out.append(self.units[digit] if is_unit else digit)
        return tuple(reversed(out))

    def decode(self, idx):
        return tuple(c[idx] for c in self.components)


class ToralHeisenbergGroup(_EncodedGroup):
    """B^delta_m: triples (x, y, z) with torus (t1, t2, t3)."""

    def __init__(self, ring: RingCtx, delta: int):
        self.ring = ring
        self.delta = int(delta) % ring.size
        self.radices = (ring.size,) * 3 + (len(ring.units),) * 3
        self.unit_slots = (False,) * 3 + (True,) * 3
        self._setup()

    def element(self, g) -> int:
        g = BElement(*g)
        _check_units(self.ring, g.t1, g.t2, g.t3)
        return int(self.encode(*g))

    def describe(self, idx: int) -> BElement:
        return BElement(*(int(c) for c in self.decode(idx)))

    def mul_components(self, g, h):
        A, M = self.A, self.M
        x, y, z, t1, t2, t3 = g
        xp, yp, zp, s1, s2, s3 = h
        return (
            A[M[x, s1], M[t2, xp]],
            A[M[y, s2], M[t3, yp]],
            A[A[M[z, s1], M[M[self.delta, y], xp]], M[t3, zp]],
            M[t1, s1],
            M[t2, s2],
            M[t3, s3],
        )

    def inv_components(self, g):
        A, M, NEG, INV = self.A, self.M, self.NEG, self.INV
        x, y, z, t1, t2, t3 = g
        s1, s2, s3 = INV[t1], INV[t2], INV[t3]
        xp = NEG[M[M[s2, x], s1]]
        yp = NEG[M[M[s3, y], s2]]
        zp = NEG[M[s3, A[M[z, s1], M[M[self.delta, y], xp]]]]
        return xp, yp, zp, s1, s2, s3

    def mul(self, a, b):
        return self.encode(*self.mul_components(self.decode(a), self.decode(b)))

    @cached_property
    def group(self) -> FiniteGroup:
        inv = self.encode(*self.inv_components(self.components))
        return FiniteGroup(self.order, self.mul, inv, int(self.encode(0, 0, 0, 1, 1, 1)), name="B")

    @property
    def identity(self) -> int:
        return int(self.encode(0, 0, 0, self.ring.one, self.ring.one, self.ring.one))

    def projection(self, E: "TwistedAffineGroup") -> np.ndarray:
        """Index in E of phi(g) for every g in B."""
        M, INV = self.M, self.INV
        x, y, z, t1, t2, t3 = self.components
        s = INV[t1]
        return E.encode(M[s, x], M[s, z], M[s, t2], M[s, y], M[s, t3])

    def subgroup_mask(self, kind: str, r=None) -> np.ndarray:
        x, y, z, t1, t2, t3 = self.components
        one = self.ring.one
        if kind == "T":
            return (x == 0) & (y == 0) & (z == 0)
        if kind in ("Q_r", "N_r"):
            r1, r2, r3 = _check_r(r, self.ring.m)
            V = self.VAL
            mask = (V[x] >= r1) & (V[y] >= r2) & (V[z] >= r3)
            if kind == "N_r":
                mask &= (t1 == one) & (t2 == one) & (t3 == one)
            return mask
        if kind == "scalars":
            return (x == 0) & (y == 0) & (z == 0) & (t1 == t2) & (t2 == t3)
        raise ValueError(f"unknown subgroup kind {kind!r} for B")


def _check_r(r, m: int) -> tuple[int, int, int]:
    r1, r2, r3 = (int(v) for v in r)
    if min(r1, r2, r3) < 0:
        raise ValueError(f"invalid r={r}: entries must be >= 0")
    if r3 > r1 + r2:
        raise ValueError(f"invalid r={r}: need r3 <= r1 + r2")
    return r1, r2, r3


class TwistedAffineGroup(_EncodedGroup):
    """E^delta = A x|_delta Gamma with A = O_m^2 and Gamma lower triangular."""

    def __init__(self, ring: RingCtx, delta: int):
        self.ring = ring
        self.delta = int(delta) % ring.size
        N, U = ring.size, len(ring.units)
        # (x, z, alpha, beta, gamma)
        self.radices = (N, N, U, N, U)
        self.unit_slots = (False, False, True, False, True)
        self._setup()

    @property
    def delta_is_unit(self) -> bool:
        return self.ring.is_unit(self.delta)

    def element(self, g) -> int:
        g = EElement(*g)
        _check_units(self.ring, g.g_alpha, g.g_gamma)
        return int(self.encode(*g))

    def describe(self, idx: int) -> EElement:
        return EElement(*(int(c) for c in self.decode(idx)))

    def mul_components(self, g, h):
        A, M = self.A, self.M
        x1, z1, a1, b1, c1 = g
        x2, z2, a2, b2, c2 = h
        return (
            A[x1, M[a1, x2]],
            A[z1, A[M[M[b1, x2], self.delta], M[c1, z2]]],
            M[a1, a2],
            A[M[b1, a2], M[c1, b2]],
            M[c1, c2],
        )

    def inv_components(self, g):
        A, M, NEG, INV = self.A, self.M, self.NEG, self.INV
        x, z, a, b, c = g
        ai, ci = INV[a], INV[c]
        bi = NEG[M[M[ci, b], ai]]
        # inverse Gamma part applied to (x, z), negated
        xp = NEG[M[ai, x]]
        zp = NEG[A[M[M[bi, x], self.delta], M[ci, z]]]
        return xp, zp, ai, bi, ci

    def mul(self, a, b):
        return self.encode(*self.mul_components(self.decode(a), self.decode(b)))

    @property
    def identity(self) -> int:
        one = self.ring.one
        return int(self.encode(0, 0, one, 0, one))

    @cached_property
    def group(self) -> FiniteGroup:
        inv = self.encode(*self.inv_components(self.components))
        return FiniteGroup(self.order, self.mul, inv, self.identity, name="E")

    # -- distinguished subgroups -----------------------------------------
    def subgroup_mask(self, spec: "SubgroupSpec") -> np.ndarray:
        x, z, a, b, c = self.components
        ring, V, A, M, NEG = self.ring, self.VAL, self.A, self.M, self.NEG
        one = ring.one
        kind = spec.kind
        if kind == "A":
            return (a == one) & (b == 0) & (c == one)
        if kind == "Theta":
            return (x == 0) & (z == 0) & (b == 0)
        if kind == "Gamma":
            return (x == 0) & (z == 0)
        if kind == "ATheta":
            return b == 0
        if kind in ("N_r", "Q_r"):
            r1, r2, r3 = _check_r(spec.r, ring.m)
            mask = (V[x] >= r1) & (V[z] >= r3) & (V[b] >= r2)
            if kind == "N_r":
                mask &= (a == one) & (c == one)
            return mask
        if kind in ("Delta", "ADelta"):
            eps = spec.eps % ring.size
            if ring.is_unit(eps):
                mask = (c == one) & (b == M[ring.inv(eps), A[one, NEG[a]]])
            else:
                mask = (c == one) & (a == A[one, NEG[M[eps, b]]])
            if kind == "Delta":
                mask &= (x == 0) & (z == 0)
            return mask
        if kind in ("ThetaIJ", "AThetaIJ"):
            i, j = spec.ij
            m = ring.m
            mask = (b == 0) & (V[A[a, NEG[one]]] >= m - i) & (V[A[c, NEG[one]]] >= m - j)
            if kind == "ThetaIJ":
                mask &= (x == 0) & (z == 0)
            return mask
        raise ValueError(f"unknown subgroup kind {kind!r}")

    def subgroup(self, spec: "SubgroupSpec") -> FiniteGroup:
        return self.group.subgroup(np.flatnonzero(self.subgroup_mask(spec)), name=spec.label)


@dataclass(frozen=True)
class SubgroupSpec:
    kind: str
    r: tuple[int, int, int] | None = None
    eps: int | None = None
    ij: tuple[int, int] | None = None

    KINDS = ("A", "Theta", "Gamma", "ATheta", "N_r", "Q_r", "Delta", "ADelta", "ThetaIJ", "AThetaIJ")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        if self.kind in ("N_r", "Q_r"):
            if self.r is None:
                raise ValueError(f"{self.kind} needs r")
            r1, r2, r3 = self.r
            if r3 > r1 + r2:
                raise ValueError(f"invalid r={self.r}: need r3 <= r1 + r2")
        if self.kind in ("Delta", "ADelta") and self.eps is None:
            raise ValueError(f"{self.kind} needs eps")
        if self.kind in ("ThetaIJ", "AThetaIJ") and self.ij is None:
            raise ValueError(f"{self.kind} needs (i, j)")

    @property
    def label(self) -> str:
        extra = self.r or self.ij or ("" if self.eps is None else f"eps={self.eps}")
        return f"{self.kind}{extra}" if extra != "" else self.kind


def subgroup_elements(E: TwistedAffineGroup, spec: SubgroupSpec) -> np.ndarray:
    """Element indices of a distinguished subgroup of E (closure verified)."""
    members = np.flatnonzero(E.subgroup_mask(spec))
    E.group.generating_set(members)
    return members


def compute_center(B: ToralHeisenbergGroup) -> np.ndarray:
    """Exact centre: elements commuting with every generator of B."""
    G = B.group
    everything = G.all
    central = np.ones(G.order, dtype=bool)
    for g in G.generators:
        central &= G.mul(everything, g) == G.mul(g, everything)
    return np.flatnonzero(central)


def stabilizer_of_character(E: TwistedAffineGroup, xi: int, zeta: int, psi_unit: int = 1) -> np.ndarray:
    """Brute-force stabilizer in Gamma of the character phi_{xi,zeta} of A.

    gamma fixes phi iff phi(gamma . a) = phi(a) on the additive generators
    (pi^k, 0), (0, pi^k) of A.
    """
    ring = E.ring
    if not (ring.is_unit(xi) and ring.is_unit(zeta)):
        raise RingError("stabilizer is only computed for unit xi and zeta")
    gamma_mask = E.subgroup_mask(SubgroupSpec("Gamma"))
    gam = np.flatnonzero(gamma_mask)
    _, _, a, b, c = (comp[gam] for comp in E.components)
    A, M, PSI = E.A, E.M, ring.psi_table
    u = psi_unit

    def phi(xv, zv):
        return PSI[M[u, A[M[xi, xv], M[zeta, zv]]]]

    keep = np.ones(gam.size, dtype=bool)
    for k in range(ring.m):
        g = ring.pi_power(k)
        # gamma . (g, 0) = (alpha g, beta g delta); gamma . (0, g) = (0, gamma g)
        keep &= phi(M[a, g], M[M[b, g], E.delta]) == phi(g, 0)
        keep &= phi(0, M[c, g]) == phi(0, g)
    return gam[keep]
