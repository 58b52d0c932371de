"""Character theory for concretely enumerated finite groups.

A group is a set of integer indices ``0 .. order-1`` together with a
vectorised multiplication ``mul(a, b)`` acting on numpy integer arrays.
Subgroups are groups in their own right whose local indices map into the
parent through ``elements``.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Sequence

import numpy as np

INTEGRALITY_TOL = 1e-6
DEFAULT_CLASS_BOUND = 3 * 10**4


class NotASubgroup(ValueError):
    pass


class NonIntegralError(ArithmeticError):
    """An inner product that should be an integer is not (within tolerance)."""


class FiniteGroup:
    def __init__(
        self,
        order: int,
        mul: Callable[[np.ndarray, np.ndarray], np.ndarray],
        inv: np.ndarray,
        identity: int = 0,
        *,
        name: str = "G",
        parent: "FiniteGroup | None" = None,
        elements: np.ndarray | None = None,
        class_bound: int = DEFAULT_CLASS_BOUND,
    ):
        self.order = int(order)
        self._mul = mul
        self.inv = np.asarray(inv, dtype=np.int64)
        self.identity = int(identity)
        self.name = name
        self.parent = parent
        self.elements = elements
        self.class_bound = class_bound

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} of order {self.order}>"

    def mul(self, a, b) -> np.ndarray:
        return self._mul(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    @property
    def all(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @classmethod
    def from_cayley_table(cls, table, name: str = "G") -> "FiniteGroup":
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        ident = next(e for e in range(n) if np.array_equal(table[e], np.arange(n)))
        inv = np.argmax(table == ident, axis=1)
        return cls(n, lambda a, b: table[a, b], inv, ident, name=name)

    # -- subgroups ---------------------------------------------------------
    def generated(self, gens: Sequence[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by ``gens``."""
        seen = np.zeros(self.order, dtype=bool)
        seen[self.identity] = True
        frontier = np.array([self.identity], dtype=np.int64)
        gens = np.asarray(list(gens), dtype=np.int64)
        while frontier.size and gens.size:
            new = np.unique(self.mul(frontier[:, None], gens[None, :]).ravel())
            new = new[~seen[new]]
            seen[new] = True
            frontier = new
        return np.flatnonzero(seen)

    def generating_set(self, members: np.ndarray | None = None) -> list[int]:
        """Greedy generating set of ``members`` (default: whole group).

        Raises NotASubgroup if the members are not closed under product.
        """
        mask = np.zeros(self.order, dtype=bool)
        if members is None:
            mask[:] = True
        else:
            mask[np.asarray(members, dtype=np.int64)] = True
        gens: list[int] = []
        span = self.generated(gens)
        target = int(mask.sum())
        while span.size < target:
            covered = np.zeros(self.order, dtype=bool)
            covered[span] = True
            candidates = np.flatnonzero(mask & ~covered)
            gens.append(int(candidates[0]))
            span = self.generated(gens)
            if not mask[span].all():
                raise NotASubgroup(f"subset of {self.name} is not closed under multiplication")
        if span.size != target:
            raise NotASubgroup(f"subset of {self.name} is not closed under multiplication")
        return gens

    @cached_property
    def generators(self) -> list[int]:
        return self.generating_set()

    def subgroup(self, members, name: str = "H") -> "FiniteGroup":
        members = np.unique(np.asarray(members, dtype=np.int64))
        if members.size == 0 or members[0] < 0 or members[-1] >= self.order:
            raise NotASubgroup("member indices out of range")
        self.generating_set(members)
        lookup = np.full(self.order, -1, dtype=np.int64)
        lookup[members] = np.arange(members.size)

        def mul(a, b, _m=members, _l=lookup, _g=self):
            return _l[_g.mul(_m[a], _m[b])]

        inv = lookup[self.inv[members]]
        return FiniteGroup(
            members.size,
            mul,
            inv,
            int(lookup[self.identity]),
            name=name,
            parent=self,
            elements=members,
            class_bound=self.class_bound,
        )

    def embedding_into(self, ancestor: "FiniteGroup") -> np.ndarray:
        """Indices in ``ancestor`` of this group's elements."""
        emb = np.arange(self.order, dtype=np.int64)
        g = self
        while g is not ancestor:
            if g.parent is None:
                raise NotASubgroup(f"{self.name} is not a subgroup of {ancestor.name}")
            emb = g.elements[emb]
            g = g.parent
        return emb

    def mask_in(self, ancestor: "FiniteGroup") -> np.ndarray:
        mask = np.zeros(ancestor.order, dtype=bool)
        mask[self.embedding_into(ancestor)] = True
        return mask

    # -- conjugacy classes -----------------------------------------------
    @cached_property
    def _classes(self):
        if self.order > self.class_bound:
            raise ValueError(f"{self.name}: order {self.order} exceeds class bound {self.class_bound}")
        index = np.full(self.order, -1, dtype=np.int64)
        everything = self.all
        inverses = self.inv
        reps, sizes = [], []
        for x in range(self.order):
            if index[x] >= 0:
                continue
            conj = np.unique(self.mul(self.mul(everything, x), inverses))
            index[conj] = len(reps)
            reps.append(x)
            sizes.append(conj.size)
        return index, np.array(reps, dtype=np.int64), np.array(sizes, dtype=np.int64)

    @property
    def class_index(self) -> np.ndarray:
        return self._classes[0]

    @property
    def class_reps(self) -> np.ndarray:
        return self._classes[1]

    @property
    def class_sizes(self) -> np.ndarray:
        return self._classes[2]

    @property
    def num_classes(self) -> int:
        return int(self.class_reps.size)


def conjugacy_classes(G: FiniteGroup):
    """(class index per element, representatives, sizes)."""
    return G.class_index, G.class_reps, G.class_sizes


class ClassFunction:
    """A complex-valued function on the conjugacy classes of a group."""

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        self.values = np.asarray(values, dtype=np.complex128)
        if self.values.shape != (group.num_classes,):
            raise ValueError("one value per conjugacy class expected")

    @classmethod
    def from_element_values(cls, group: FiniteGroup, values, tol: float = 1e-9) -> "ClassFunction":
        values = np.asarray(values, dtype=np.complex128)
        per_class = values[group.class_reps]
        if np.abs(values - per_class[group.class_index]).max(initial=0.0) > tol:
            raise ValueError("values are not constant on conjugacy classes")
        return cls(group, per_class)

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "ClassFunction":
        return cls(group, np.ones(group.num_classes))

    @classmethod
    def regular(cls, group: FiniteGroup) -> "ClassFunction":
        vals = np.zeros(group.num_classes)
        vals[group.class_index[group.identity]] = group.order
        return cls(group, vals)

    def element_values(self) -> np.ndarray:
        return self.values[self.group.class_index]

    @property
    def degree(self) -> int:
        d = self.values[self.group.class_index[self.group.identity]]
        return _as_int(d)

    def norm(self) -> int:
        return inner_product(self, self)

    def _check(self, other: "ClassFunction"):
        if other.group is not self.group:
            raise ValueError("class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, self.values + other.values)

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, self.values - other.values)

    def __rmul__(self, k) -> "ClassFunction":
        return ClassFunction(self.group, k * self.values)

    def allclose(self, other: "ClassFunction", tol: float = INTEGRALITY_TOL) -> bool:
        self._check(other)
        return bool(np.abs(self.values - other.values).max(initial=0.0) < tol)

    def __repr__(self) -> str:
        return f"<ClassFunction on {self.group.name}, degree {self.values[0].real:.6g}>"


def _as_int(z: complex, tol: float = INTEGRALITY_TOL) -> int:
    n = round(z.real)
    if abs(z - n) > tol:
        raise NonIntegralError(f"value {z} is not within {tol} of an integer")
    return int(n)


def raw_inner_product(f: ClassFunction, g: ClassFunction) -> complex:
    f._check(g)
    G = f.group
    return complex(np.sum(G.class_sizes * f.values * np.conj(g.values)) / G.order)


def inner_product(f: ClassFunction, g: ClassFunction) -> int:
    """<f, g>, which must be an integer within 1e-6."""
    return _as_int(raw_inner_product(f, g))


def element_inner_product(H: FiniteGroup, a: np.ndarray, b: np.ndarray) -> int:
    """<a, b>_H for functions given by their value on every element of H."""
    return _as_int(complex(np.sum(np.asarray(a) * np.conj(np.asarray(b))) / H.order))


def _element_values(H: FiniteGroup, chi) -> np.ndarray:
    if isinstance(chi, ClassFunction):
        if chi.group is not H:
            raise ValueError("character does not live on the given subgroup")
        return chi.element_values()
    vals = np.asarray(chi, dtype=np.complex128)
    if vals.shape != (H.order,):
        raise ValueError("one value per subgroup element expected")
    return vals


def induce_character(H: FiniteGroup, chi, G: FiniteGroup | None = None) -> ClassFunction:
    """Frobenius formula for Ind_H^G(chi).

    ``chi`` is a ClassFunction on H or an array of values on H's elements.
    Ind chi(g) = |G| / (|H| |cl(g)|) * sum_{y in cl(g) & H} chi(y).
    """
    G = G if G is not None else H.parent
    if G is None:
        raise NotASubgroup("no ambient group given")
    vals = _element_values(H, chi)
    cls = G.class_index[H.embedding_into(G)]
    k = G.num_classes
    sums = np.bincount(cls, weights=vals.real, minlength=k) + 1j * np.bincount(
        cls, weights=vals.imag, minlength=k
    )
    return ClassFunction(G, sums * G.order / (H.order * G.class_sizes))


def restrict(f: ClassFunction, H: FiniteGroup) -> np.ndarray:
    """Values of f on the elements of the subgroup H."""
    return f.element_values()[H.embedding_into(f.group)]


def coset_representatives(G: FiniteGroup, H: FiniteGroup) -> np.ndarray:
    """One representative x for each left coset xH."""
    hs = H.embedding_into(G)
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    for x in range(G.order):
        if seen[x]:
            continue
        seen[G.mul(x, hs)] = True
        reps.append(x)
    return np.array(reps, dtype=np.int64)


def permutation_character(G: FiniteGroup, H: FiniteGroup) -> ClassFunction:
    """Number of left cosets xH fixed by g, evaluated on class representatives."""
    reps = coset_representatives(G, H)
    in_h = H.mask_in(G)
    rep_inv = G.inv[reps]
    vals = np.empty(G.num_classes)
    for k, g in enumerate(G.class_reps):
        vals[k] = np.count_nonzero(in_h[G.mul(G.mul(rep_inv, g), reps)])
    return ClassFunction(G, vals)


def double_coset_representatives(G: FiniteGroup, H2: FiniteGroup, H1: FiniteGroup) -> list[int]:
    """Representatives g of the double cosets H2 g H1."""
    h2 = H2.embedding_into(G)
    h1 = H1.embedding_into(G)
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    for g in range(G.order):
        if seen[g]:
            continue
        left = G.mul(h2, g)
        seen[np.unique(G.mul(left[:, None], h1[None, :]).ravel())] = True
        reps.append(g)
    return reps


def _linear_values(H: FiniteGroup, chi, tol: float) -> np.ndarray:
    vals = _element_values(H, chi)
    if abs(vals[H.identity] - 1) > tol or np.abs(np.abs(vals) - 1).max() > tol:
        raise ValueError(f"character on {H.name} is not linear")
    return vals


def mackey_hom_dim(
    G: FiniteGroup, H1: FiniteGroup, chi1, H2: FiniteGroup, chi2, tol: float = 1e-9
) -> int:
    """dim Hom_G(Ind chi1, Ind chi2) for linear characters, by double cosets.

    A double coset H2 g H1 supports an intertwiner iff
    chi1(h) = chi2(g h g^-1) for every h in H1 with g h g^-1 in H2.
    """
    v1 = _linear_values(H1, chi1, tol)
    v2 = _linear_values(H2, chi2, tol)
    h1 = H1.embedding_into(G)
    lookup2 = np.full(G.order, -1, dtype=np.int64)
    lookup2[H2.embedding_into(G)] = np.arange(H2.order)
    count = 0
    for g in double_coset_representatives(G, H2, H1):
        conj = G.mul(G.mul(g, h1), G.inv[g])
        loc = lookup2[conj]
        hit = loc >= 0
        if np.abs(v1[hit] - v2[loc[hit]]).max(initial=0.0) < tol:
            count += 1
    return count
