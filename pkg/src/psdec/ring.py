"""Finite local rings O_m = O/pi^m in two presentations.

Elements are stored as integer *codes* in ``[0, p**m)``.  For the ``zmod``
backend the code is the residue itself.  For ``polymod`` (F_p[t]/(t^m)) the
code packs the coefficient sequence in base p, coefficient of t^k being the
k-th digit.  With this packing the uniformizer has code ``p`` in both
backends and the valuation of a code is the p-adic valuation of the integer,
capped at m.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Sequence

import numpy as np

DEFAULT_BOUND = 10**6
_TABLE_LIMIT = 1024


def enumeration_bound() -> int:
    """Element-count bound for exhaustive enumeration (env ``PSDEC_BOUND``)."""
    raw = os.environ.get("PSDEC_BOUND")
    return int(raw) if raw else DEFAULT_BOUND


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


class Backend(str, enum.Enum):
    ZMOD = "zmod"
    POLYMOD = "polymod"


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class RingCtx:
    backend: Backend
    p: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "backend", Backend(self.backend))
        if not is_prime(self.p):
            raise RingError(f"p={self.p} is not prime")
        if self.m < 0:
            raise RingError(f"level m={self.m} must be >= 0")
        bound = enumeration_bound()
        if self.p**self.m > bound:
            raise RingError(f"ring of size {self.p}^{self.m} exceeds enumeration bound {bound}")

    # -- sizes ------------------------------------------------------------
    @property
    def q(self) -> int:
        return self.p

    @property
    def size(self) -> int:
        return self.p**self.m

    @property
    def pi(self) -> int:
        """Code of the uniformizer (p in Z/p^m, t in F_p[t]/t^m)."""
        return self.pi_power(1)

    def pi_power(self, e: int) -> int:
        return self.p**e if e < self.m else 0

    @property
    def one(self) -> int:
        return 1 % self.size

    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def units(self) -> tuple[int, ...]:
        if self.m == 0:
            return (0,)
        return tuple(a for a in range(self.size) if a % self.p)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> O_m."""
        if self.backend is Backend.ZMOD:
            return n % self.size
        return (n % self.p) if self.m else 0

    # -- scalar arithmetic on codes ----------------------------------------
    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _undigits(self, ds: Sequence[int]) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def add(self, a: int, b: int) -> int:
        if self.backend is Backend.ZMOD:
            return (a + b) % self.size
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.backend is Backend.ZMOD:
            return (-a) % self.size
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.backend is Backend.ZMOD:
            return (a * b) % self.size
        da, db = self._digits(a), self._digits(b)
        out = [0] * self.m
        for i, x in enumerate(da):
            if x:
                for j in range(self.m - i):
                    out[i + j] = (out[i + j] + x * db[j]) % self.p
        return self._undigits(out)

    def is_unit(self, a: int) -> bool:
        return self.m == 0 or a % self.p != 0

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise RingError(f"{a} is not a unit in {self}")
        if self.backend is Backend.ZMOD:
            return pow(a, -1, self.size) if self.size > 1 else 0
        # a^(|O_m^x| - 1)
        e = len(self.units) - 1
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def val(self, a: int) -> int:
        k = 0
        while k < self.m and a % self.p == 0:
            a //= self.p
            k += 1
        return k

    def psi_angle(self, a: int) -> int:
        """k with psi(a) = exp(2 pi i k / p^m) for the standard primitive psi."""
        if self.m == 0:
            raise RingError("no additive characters are defined at level 0")
        if self.backend is Backend.ZMOD:
            return a
        return (a // self.p ** (self.m - 1)) * self.p ** (self.m - 1)

    def reduce(self, a: int, k: int) -> int:
        """Reduction O_m -> O_k (k <= m); codes are compatible across levels."""
        return a % self.p**k

    # -- vectorised tables ---------------------------------------------------
    def _table(self, op: Callable[[int, int], int]) -> np.ndarray:
        n = self.size
        if n > _TABLE_LIMIT:
            raise RingError(f"operation tables are limited to rings of size <= {_TABLE_LIMIT}")
        return np.array([[op(a, b) for b in range(n)] for a in range(n)], dtype=np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        return self._table(self.add)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self._table(self.mul)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.size)], dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverse of each unit; -1 at non-units."""
        out = np.full(self.size, -1, dtype=np.int64)
        for u in self.units:
            out[u] = self.inv(u)
        return out

    @cached_property
    def val_table(self) -> np.ndarray:
        return np.array([self.val(a) for a in range(self.size)], dtype=np.int64)

    @cached_property
    def psi_table(self) -> np.ndarray:
        return np.array([self.psi_angle(a) for a in range(self.size)], dtype=np.int64)

    def element(self, code: int) -> "RingElement":
        return RingElement(self, code % self.size if self.size else 0)

    def __str__(self) -> str:
        return f"{self.backend.value}(p={self.p}, m={self.m})"


def make_ring(backend: str | Backend, p: int, m: int) -> RingCtx:
    return RingCtx(Backend(backend), p, m)


@dataclass(frozen=True)
class RingElement:
    ctx: RingCtx
    code: int

    def _coerce(self, other: Any) -> int:
        if isinstance(other, RingElement):
            if other.ctx != self.ctx:
                raise RingError("ring context mismatch")
            return other.code
        if isinstance(other, int):
            return self.ctx.from_int(other)
        raise TypeError(f"cannot combine a ring element with {type(other).__name__}")

    def __add__(self, other):
        return RingElement(self.ctx, self.ctx.add(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ctx, self.ctx.sub(self.code, self._coerce(other)))

    def __rsub__(self, other):
        return RingElement(self.ctx, self.ctx.sub(self._coerce(other), self.code))

    def __mul__(self, other):
        return RingElement(self.ctx, self.ctx.mul(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        out = RingElement(self.ctx, self.ctx.one)
        for _ in range(e):
            out = out * self
        return out

    def inverse(self) -> "RingElement":
        return RingElement(self.ctx, self.ctx.inv(self.code))

    @property
    def is_unit(self) -> bool:
        return self.ctx.is_unit(self.code)

    @property
    def coefficients(self) -> list[int]:
        """Coefficient sequence (polymod) or base-p digits (zmod) of length m."""
        return self.ctx._digits(self.code)

    def __repr__(self) -> str:
        return f"{self.code}@{self.ctx}"


def val(x: RingElement) -> int:
    """Largest k <= m with x in pi^k O_m; val(0) = m."""
    return x.ctx.val(x.code)


@dataclass(frozen=True)
class AdditiveCharacter:
    """psi_xi(x) = psi(xi * x) for the standard primitive character psi."""

    ctx: RingCtx
    xi: int

    def __post_init__(self):
        if self.ctx.m == 0:
            raise RingError("additive characters need m >= 1")

    def angle(self, x: int) -> Fraction:
        return Fraction(self.ctx.psi_angle(self.ctx.mul(self.xi, x)), self.ctx.size)

    def __call__(self, x: int | RingElement) -> complex:
        code = x.code if isinstance(x, RingElement) else x
        return complex(np.exp(2j * np.pi * float(self.angle(code))))


def additive_character(ctx: RingCtx, xi: int | RingElement) -> AdditiveCharacter:
    return AdditiveCharacter(ctx, xi.code if isinstance(xi, RingElement) else xi % ctx.size)


# ---------------------------------------------------------------------------
# Finite abelian groups and their duals


@dataclass(frozen=True)
class AbelianGroup:
    """An explicit finite abelian group.

    ``kind`` records which ring-derived group this is ("units" for O_m^x,
    "additive" for (O_m, +)) so characters can be tested for being pulled
    back from level m-1.  ``coordinate`` maps an element to the ring code
    the reduction map acts on, for groups that are only parametrised by
    O_m^x or O_m (default: the element is itself a ring code).
    """

    elements: tuple
    op: Callable[[Any, Any], Any]
    identity: Any
    ctx: RingCtx | None = None
    kind: str | None = None
    coordinate: Callable[[Any], int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}


def unit_group(ctx: RingCtx) -> AbelianGroup:
    return AbelianGroup(tuple(ctx.units), ctx.mul, ctx.one, ctx, "units")


def additive_group(ctx: RingCtx) -> AbelianGroup:
    return AbelianGroup(tuple(ctx.elements()), ctx.add, 0, ctx, "additive")


@dataclass(frozen=True)
class Character:
    """A character of an abelian group, stored exactly as angles in Q/Z."""

    dual: "AbelianDual"
    angles: tuple[Fraction, ...]

    def angle(self, g) -> Fraction:
        return self.angles[self.dual.group.index[g]]

    def __call__(self, g) -> complex:
        return complex(np.exp(2j * np.pi * float(self.angle(g))))

    @property
    def values(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.array([float(a) for a in self.angles]))

    @property
    def is_trivial(self) -> bool:
        return not any(self.angles)

    @property
    def order(self) -> int:
        return math.lcm(*(a.denominator for a in self.angles))


@dataclass(frozen=True)
class AbelianDual:
    group: AbelianGroup
    generators: tuple
    _angles: tuple[tuple[Fraction, ...], ...]

    @property
    def characters(self) -> list[Character]:
        return [Character(self, a) for a in self._angles]

    def __len__(self) -> int:
        return len(self._angles)


class NonAbelianError(ValueError):
    pass


def _power_in(group: AbelianGroup, g, members: set) -> tuple[int, Any]:
    """Smallest k >= 1 with g^k in members, and g^k."""
    k, acc = 1, g
    while acc not in members:
        acc = group.op(acc, g)
        k += 1
    return k, acc


def element_order(group: AbelianGroup, g) -> int:
    return _power_in(group, g, {group.identity})[0]


def abelian_dual(group: AbelianGroup, bound: int = 4096) -> AbelianDual:
    """All characters of a finite abelian group.

    Generators are chosen by exhaustive search (an element of maximal order
    outside the subgroup built so far); each step extends every known
    character to the enlarged subgroup in all possible ways.  No structure
    theorem for unit groups is used, so p = 2 needs no special casing.
    """
    n = group.order
    if n > bound:
        raise ValueError(f"group of order {n} exceeds dual bound {bound}")
    els = group.elements
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if group.op(a, b) != group.op(b, a):
                raise NonAbelianError(f"{a} and {b} do not commute")

    orders = {g: element_order(group, g) for g in els}
    # subgroup as ordered list of members, characters as dicts member -> angle
    members = [group.identity]
    member_set = {group.identity}
    chars: list[dict] = [{group.identity: Fraction(0)}]
    gens = []
    while len(members) < n:
        g = max((h for h in els if h not in member_set), key=lambda h: orders[h])
        k, gk = _power_in(group, g, member_set)
        gens.append(g)
        powers = [group.identity]
        for _ in range(k - 1):
            powers.append(group.op(powers[-1], g))
        new_members = []
        for gi in powers:
            for h in members:
                new_members.append(group.op(gi, h))
        new_chars = []
        for chi in chars:
            base = chi[gk]
            for j in range(k):
                omega = (base + j) / k
                ext = {}
                for i, gi in enumerate(powers):
                    for h in members:
                        ext[group.op(gi, h)] = (i * omega + chi[h]) % 1
                new_chars.append(ext)
        members = new_members
        member_set = set(members)
        chars = new_chars
    tables = tuple(tuple(chi[g] for g in els) for chi in chars)
    return AbelianDual(group, tuple(gens), tables)


def reduction_kernel(group: AbelianGroup) -> list:
    """Kernel of reduction O_m -> O_{m-1} restricted to the group."""
    ctx = group.ctx
    if ctx is None or group.kind not in ("units", "additive"):
        raise ValueError("group is not a ring-derived unit or additive group")
    if ctx.m < 1:
        raise ValueError("reduction needs m >= 1")
    coord = group.coordinate or (lambda g: g)
    if group.kind == "units":
        return [g for g in group.elements if ctx.val(ctx.sub(coord(g), ctx.one)) >= ctx.m - 1]
    return [g for g in group.elements if ctx.val(coord(g)) >= ctx.m - 1]


def is_pullback(sigma: Character) -> bool:
    """True iff sigma factors through reduction modulo pi^(m-1)."""
    return all(sigma.angle(g) == 0 for g in reduction_kernel(sigma.dual.group))


def new_character_count(q: int, m: int, unit: bool) -> int:
    """Closed-form count of characters of level m not pulled back from m-1."""
    if m < 1:
        return 1
    if unit:
        return q - 2 if m == 1 else q ** (m - 2) * (q - 1) ** 2
    return q**m - q ** (m - 1)
