"""Decomposition of C[E^delta / Theta]: Theta-orbits on the dual of A, the
representations W_ij and their inductions, the constituents L_sigma of the
(0,0) piece, and the permutation characters U_d^m.

Everything is checked at the level of characters on the concretely
enumerated group E^delta.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .characters import (
    ClassFunction,
    FiniteGroup,
    induce_character,
    inner_product,
    mackey_hom_dim,
)
from .groups import (
    SubgroupSpec,
    ToralHeisenbergGroup,
    TwistedAffineGroup,
    compute_center,
    delta_from_exponent,
    stabilizer_of_character,
)
from .reports import Report, make_report
from .ring import (
    AbelianDual,
    AbelianGroup,
    Character,
    abelian_dual,
    is_pullback,
    make_ring,
    new_character_count,
)


@dataclass(frozen=True)
class SigmaLabel:
    delta_exp: int
    character: Character
    new: bool

    @property
    def index(self) -> int:
        return self.character.dual.characters.index(self.character)

    def describe(self) -> dict:
        gens = self.character.dual.generators
        return {
            "angles_on_generators": [str(self.character.angle(g)) for g in gens],
            "order": self.character.order,
            "new": self.new,
        }


class SpectralSetting:
    """E^delta over O_m with delta = pi^e, plus the data built on it.

    ``phi`` selects the base character phi_{xi,zeta} of A (units), and
    ``psi_unit`` replaces the primitive additive character psi by
    x -> psi(u x).  Neither choice may change any count.
    """

    def __init__(self, p: int, m: int, delta_exp: int, backend: str = "zmod", phi=(1, 1), psi_unit: int = 1):
        if m < 1:
            raise ValueError("m must be >= 1")
        self.p, self.m, self.delta_exp = p, m, delta_exp
        self.ring = make_ring(backend, p, m)
        self.backend = self.ring.backend.value
        self.q = self.ring.q
        self.delta = delta_from_exponent(self.ring, delta_exp)
        self.xi0, self.zeta0 = (self.ring.from_int(v) for v in phi)
        self.psi_unit = self.ring.from_int(psi_unit)
        for v in (self.xi0, self.zeta0, self.psi_unit):
            if not self.ring.is_unit(v):
                raise ValueError("phi and psi_unit must be units")
        self.E = TwistedAffineGroup(self.ring, self.delta)
        self.G: FiniteGroup = self.E.group
        self._subs: dict = {}

    @property
    def params(self) -> dict:
        return {"p": self.p, "m": self.m, "delta_exp": self.delta_exp, "backend": self.backend}

    @property
    def delta_is_unit(self) -> bool:
        return self.ring.is_unit(self.delta)

    # -- additive characters of A ------------------------------------------
    def phi_angle(self, xi, zeta, x, z) -> np.ndarray:
        """Integer k (mod p^m) with phi_{xi,zeta}(x, z) = exp(2 pi i k / p^m)."""
        A, M = self.E.A, self.E.M
        return self.ring.psi_table[M[self.psi_unit, A[M[xi, x], M[zeta, z]]]]

    def _phi_values(self, xi, zeta, elements) -> np.ndarray:
        x, z = self.E.components[0][elements], self.E.components[1][elements]
        return np.exp(2j * np.pi * self.phi_angle(xi, zeta, x, z) / self.ring.size)

    # -- subgroups ----------------------------------------------------------
    def subgroup(self, spec: SubgroupSpec, parent: FiniteGroup | None = None) -> FiniteGroup:
        key = (spec, None if parent is None else parent.name)
        if key not in self._subs:
            mask = self.E.subgroup_mask(spec)
            if parent is None:
                self._subs[key] = self.G.subgroup(np.flatnonzero(mask), name=spec.label)
            else:
                emb = parent.embedding_into(self.G)
                self._subs[key] = parent.subgroup(np.flatnonzero(mask[emb]), name=spec.label)
        return self._subs[key]

    @property
    def eps(self) -> int:
        r = self.ring
        return r.mul(r.mul(self.delta, r.inv(self.xi0)), self.zeta0)

    # -- Theta orbits on the dual of A --------------------------------------
    @cached_property
    def theta_orbit_partition(self) -> dict[tuple[int, int], np.ndarray]:
        """Orbits of Theta on characters of A, keyed by (val xi, val zeta).

        Characters are identified by their values on the additive generators
        (pi^k, 0), (0, pi^k) of A; the action is computed by conjugating
        those generators inside E.
        """
        ring, E, G = self.ring, self.E, self.G
        N, m = ring.size, ring.m
        labels = np.arange(N * N)
        xi, zeta = labels // N, labels % N
        gens = [E.element((ring.pi_power(k), 0, 1, 0, 1)) for k in range(m)]
        gens += [E.element((0, ring.pi_power(k), 1, 0, 1)) for k in range(m)]
        X, Z = E.components[0], E.components[1]

        def signature(points):
            code = np.zeros(labels.size, dtype=np.int64)
            for pt in points:
                code = code * N + self.phi_angle(xi, zeta, X[pt], Z[pt])
            return code

        base = signature(gens)
        order = np.argsort(base)
        if np.unique(base).size != labels.size:
            raise AssertionError("generator values do not separate characters of A")
        theta = self.subgroup(SubgroupSpec("Theta")).embedding_into(G)
        images = np.empty((theta.size, labels.size), dtype=np.int64)
        for row, t in enumerate(theta):
            # (^t phi)(a) = phi(t^-1 a t)
            moved = [int(G.mul(G.mul(G.inv[t], g), t)) for g in gens]
            sig = signature(moved)
            pos = np.searchsorted(base, sig, sorter=order)
            found = order[np.minimum(pos, labels.size - 1)]
            if not np.array_equal(base[found], sig):
                raise AssertionError("Theta does not permute the characters of A")
            images[row] = found
        V = ring.val_table
        seen = np.zeros(labels.size, dtype=bool)
        orbits: dict[tuple[int, int], np.ndarray] = {}
        for lab in labels:
            if seen[lab]:
                continue
            orbit = np.unique(images[:, lab])
            seen[orbit] = True
            key = (int(V[xi[lab]]), int(V[zeta[lab]]))
            if key in orbits:
                raise AssertionError(f"two orbits share valuations {key}")
            if not (np.all(V[xi[orbit]] == key[0]) and np.all(V[zeta[orbit]] == key[1])):
                raise AssertionError(f"orbit of {key} mixes valuations")
            orbits[key] = np.stack([xi[orbit], zeta[orbit]], axis=1)
        return dict(sorted(orbits.items()))

    def orbit_sizes(self) -> dict[tuple[int, int], int]:
        return {k: len(v) for k, v in self.theta_orbit_partition.items()}

    def expected_orbit_size(self, i: int, j: int) -> int:
        """|pi^i O_m^x| * |pi^j O_m^x| (1 when the valuation is m)."""
        q, m = self.q, self.m

        def layer(k):
            return 1 if k == m else q ** (m - k - 1) * (q - 1)

        return layer(i) * layer(j)

    # -- W_ij ---------------------------------------------------------------
    def orbit_point(self, i: int, j: int) -> tuple[int, int]:
        r = self.ring
        return r.mul(r.pi_power(i), self.xi0), r.mul(r.pi_power(j), self.zeta0)

    def theta_stabilizer(self, i: int, j: int) -> np.ndarray:
        """Brute-force stabilizer in Theta of phi in Omega_ij (E indices)."""
        xi, zeta = self.orbit_point(i, j)
        E, G, ring = self.E, self.G, self.ring
        theta = self.subgroup(SubgroupSpec("Theta")).embedding_into(G)
        keep = np.ones(theta.size, dtype=bool)
        for k in range(self.m):
            for pt in ((ring.pi_power(k), 0), (0, ring.pi_power(k))):
                a = E.element((pt[0], pt[1], 1, 0, 1))
                moved = G.mul(G.mul(theta, a), G.inv[theta])
                X, Z = E.components[0][moved], E.components[1][moved]
                keep &= self.phi_angle(xi, zeta, X, Z) == self.phi_angle(xi, zeta, pt[0], pt[1])
        return theta[keep]

    @lru_cache(maxsize=None)
    def w_character(self, i: int, j: int) -> ClassFunction:
        """Ind from A Theta_ij to A Theta of phi extended trivially over Theta_ij."""
        if not (0 <= i <= self.m and 0 <= j <= self.m):
            raise ValueError("need 0 <= i, j <= m")
        at = self.subgroup(SubgroupSpec("ATheta"))
        sub = self.subgroup(SubgroupSpec("AThetaIJ", ij=(i, j)), parent=at)
        xi, zeta = self.orbit_point(i, j)
        vals = self._phi_values(xi, zeta, sub.embedding_into(self.G))
        return induce_character(sub, vals, at)

    @lru_cache(maxsize=None)
    def w_tilde_character(self, i: int, j: int) -> ClassFunction:
        at = self.subgroup(SubgroupSpec("ATheta"))
        return induce_character(at, self.w_character(i, j), self.G)

    # -- Delta and L_sigma ----------------------------------------------------
    @cached_property
    def delta_group(self) -> AbelianGroup:
        """Stab_Gamma(phi) = Delta^eps as an abelian group, via E's product.

        Elements are E indices; the coordinate is alpha (unit delta) or beta
        (non-unit delta), on which reduction mod pi^(m-1) acts.
        """
        spec = SubgroupSpec("Delta", eps=self.eps)
        members = tuple(int(g) for g in np.flatnonzero(self.E.subgroup_mask(spec)))
        G = self.G
        comps = self.E.components
        unit = self.delta_is_unit
        coord_comp = comps[2] if unit else comps[3]
        return AbelianGroup(
            members,
            lambda a, b: int(G.mul(a, b)),
            self.E.identity,
            self.ring,
            "units" if unit else "additive",
            lambda g: int(coord_comp[g]),
        )

    @cached_property
    def delta_dual(self) -> AbelianDual:
        return abelian_dual(self.delta_group)

    @cached_property
    def sigmas(self) -> list[SigmaLabel]:
        return [SigmaLabel(self.delta_exp, s, not is_pullback(s)) for s in self.delta_dual.characters]

    def _check_sigma(self, sigma: SigmaLabel | Character) -> Character:
        ch = sigma.character if isinstance(sigma, SigmaLabel) else sigma
        if ch.dual.group is not self.delta_group:
            raise ValueError("sigma is not a character of this setting's Delta")
        return ch

    def l_sigma_character(self, sigma: SigmaLabel | Character) -> ClassFunction:
        """Ind from A Delta to E of phi * sigma."""
        ch = self._check_sigma(sigma)
        key = ch.angles
        cache = self.__dict__.setdefault("_l_cache", {})
        if key not in cache:
            ad = self.subgroup(SubgroupSpec("ADelta", eps=self.eps))
            emb = ad.embedding_into(self.G)
            x, z, a, b, c = (comp[emb] for comp in self.E.components)
            d = self.E.encode(np.zeros_like(a), np.zeros_like(a), a, b, c)
            angle_of = {g: float(t) for g, t in zip(self.delta_group.elements, ch.angles)}
            sig = np.array([angle_of[int(v)] for v in d])
            vals = self._phi_values(self.xi0, self.zeta0, emb) * np.exp(2j * np.pi * sig)
            cache[key] = induce_character(ad, vals, self.G)
        return cache[key]

    def l_sigma_degree_expected(self) -> int:
        q, m = self.q, self.m
        return q ** (2 * m - 1) * (q - 1) if self.delta_is_unit else q ** (2 * m - 2) * (q - 1) ** 2

    def sigma_count_expected(self) -> int:
        q, m = self.q, self.m
        return q ** (m - 1) * (q - 1) if self.delta_is_unit else q**m

    # -- U_d^m -----------------------------------------------------------------
    def check_r(self, r) -> tuple[int, int, int]:
        r = tuple(int(v) for v in r)
        if any(v < 0 or v > self.m for v in r):
            raise ValueError(f"r={r} must satisfy 0 <= r <= m*rho")
        if r[2] > r[0] + r[1]:
            raise ValueError(f"r={r} must satisfy r3 <= r1 + r2")
        return r

    @lru_cache(maxsize=None)
    def u_dm_character(self, r: tuple[int, int, int]) -> ClassFunction:
        """Permutation character of E on the cosets of N_r Theta."""
        r = self.check_r(r)
        H = self.subgroup(SubgroupSpec("Q_r", r=r))
        return induce_character(H, np.ones(H.order), self.G)

    def r_minus(self, i: int) -> tuple[int, int, int]:
        """r = m rho - e_i."""
        r = [self.m] * 3
        r[i - 1] -= 1
        return tuple(r)

    @property
    def r_full(self) -> tuple[int, int, int]:
        return (self.m,) * 3

    # -- constituents of V_c^m ------------------------------------------------
    def vcm_constituents(self) -> list[SigmaLabel]:
        return [s for s in self.sigmas if s.new]


@lru_cache(maxsize=32)
def setting(p: int, m: int, delta_exp: int, backend: str = "zmod", phi=(1, 1), psi_unit: int = 1) -> SpectralSetting:
    return SpectralSetting(p, m, delta_exp, backend, tuple(phi), psi_unit)


# ---------------------------------------------------------------------------
# Functional surface


def theta_orbit_partition(p, m, delta_exp, backend="zmod"):
    return setting(p, m, delta_exp, backend).theta_orbit_partition


def w_character(p, m, delta_exp, i, j, backend="zmod") -> ClassFunction:
    return setting(p, m, delta_exp, backend).w_character(i, j)


def l_sigma_character(p, m, delta_exp, sigma, backend="zmod") -> ClassFunction:
    return setting(p, m, delta_exp, backend).l_sigma_character(sigma)


def u_dm_character(p, m, delta_exp, r, backend="zmod") -> ClassFunction:
    return setting(p, m, delta_exp, backend).u_dm_character(tuple(r))


def vcm_constituents(p, m, delta_exp, backend="zmod") -> list[SigmaLabel]:
    return setting(p, m, delta_exp, backend).vcm_constituents()


def verify_orbits(s: SpectralSetting, strict: bool = True) -> Report:
    sizes = s.orbit_sizes()
    expected = {(i, j): s.expected_orbit_size(i, j) for i in range(s.m + 1) for j in range(s.m + 1)}
    ok = sizes == expected and sum(sizes.values()) == s.q ** (2 * s.m)
    detail = {"sizes": {f"{i},{j}": n for (i, j), n in sizes.items()}}
    return make_report("group.theta_orbits", s.params, ok, detail, strict)


def verify_w_characters(s: SpectralSetting, strict: bool = True) -> Report:
    """W_ij irreducible of degree |Omega_ij|, and both sum identities."""
    at = s.subgroup(SubgroupSpec("ATheta"))
    theta_in_at = s.subgroup(SubgroupSpec("Theta"), parent=at)
    theta = s.subgroup(SubgroupSpec("Theta"))
    sizes = s.orbit_sizes()
    norms, degrees, stab_ok = {}, {}, True
    total = None
    total_tilde = None
    for i in range(s.m + 1):
        for j in range(s.m + 1):
            w = s.w_character(i, j)
            norms[f"{i},{j}"] = w.norm()
            degrees[f"{i},{j}"] = w.degree
            total = w if total is None else total + w
            wt = s.w_tilde_character(i, j)
            total_tilde = wt if total_tilde is None else total_tilde + wt
            formula = np.flatnonzero(s.E.subgroup_mask(SubgroupSpec("ThetaIJ", ij=(i, j))))
            stab_ok &= np.array_equal(np.sort(s.theta_stabilizer(i, j)), formula)
    ind_at = induce_character(theta_in_at, np.ones(theta_in_at.order), at)
    ind_e = induce_character(theta, np.ones(theta.order), s.G)
    ok = (
        all(v == 1 for v in norms.values())
        and all(degrees[f"{i},{j}"] == sizes[(i, j)] for (i, j) in sizes)
        and total.allclose(ind_at)
        and total_tilde.allclose(ind_e)
        and stab_ok
    )
    detail = {
        "norms": norms,
        "degrees": degrees,
        "sum_equals_ind_theta_to_atheta": total.allclose(ind_at),
        "sum_tilde_equals_ind_theta_to_e": total_tilde.allclose(ind_e),
        "theta_ij_is_stabilizer": bool(stab_ok),
    }
    return make_report("group.w_irreducible", s.params, ok, detail, strict)


def verify_w00_decomposition(s: SpectralSetting, strict: bool = True) -> Report:
    w00 = s.w_tilde_character(0, 0)
    ls = [s.l_sigma_character(sig) for sig in s.sigmas]
    mults = [inner_product(w00, chi) for chi in ls]
    degs = [chi.degree for chi in ls]
    gram = np.array([[inner_product(a, b) for b in ls] for a in ls])
    total = ls[0]
    for chi in ls[1:]:
        total = total + chi
    q, m = s.q, s.m
    ok = (
        all(v == 1 for v in mults)
        and np.array_equal(gram, np.eye(len(ls), dtype=int))
        and all(d == s.l_sigma_degree_expected() for d in degs)
        and len(ls) == s.sigma_count_expected()
        and sum(degs) == w00.degree == q ** (3 * m - 2) * (q - 1) ** 2
        and total.allclose(w00)
        and len(set(map(tuple, s.delta_dual._angles))) == len(ls)
    )
    detail = {
        "sigma_count": len(ls),
        "l_sigma_degrees": sorted(set(degs)),
        "multiplicities": mults,
        "w00_degree": w00.degree,
        "pairwise_orthonormal": bool(np.array_equal(gram, np.eye(len(ls), dtype=int))),
    }
    return make_report("group.w00_decomposition", s.params, ok, detail, strict)


def verify_embedding_props(s: SpectralSetting, strict: bool = True) -> Report:
    m = s.m
    u1 = s.u_dm_character(s.r_minus(1))
    u3 = s.u_dm_character(s.r_minus(3))
    case_a = {f"{i},{j}": inner_product(u1, s.w_tilde_character(i, j)) for i in range(1, m + 1) for j in range(m + 1)}
    case_b = {f"{i},{j}": inner_product(u3, s.w_tilde_character(i, j)) for i in range(m + 1) for j in range(1, m + 1)}
    uc = s.u_dm_character(s.r_full)
    in_uc = [inner_product(uc, s.l_sigma_character(sig)) for sig in s.sigmas]
    new = [sig.new for sig in s.sigmas]
    # New sigma occur exactly once in U_c^m; pulled-back ones may also sit
    # inside other W~_ij and then occur more than once.
    mult_ok = all((v == 1) if n else (v >= 1) for v, n in zip(in_uc, new))
    ok = all(v >= 1 for v in case_a.values()) and all(v >= 1 for v in case_b.values()) and mult_ok
    detail = {
        "case_a_r_minus_e1": case_a,
        "case_b_r_minus_e3": case_b,
        "l_sigma_in_u_c": in_uc,
        "sigma_new": new,
        "every_sigma_once_in_u_c": all(v == 1 for v in in_uc),
    }
    return make_report("group.embedding", s.params, ok, detail, strict)


def hom_pattern(s: SpectralSetting, cross_check: bool = True) -> list[dict]:
    """h_i = <L_sigma, U^m_{c - e_i}> for each sigma, optionally with the
    double-coset count computed alongside."""
    ad = s.subgroup(SubgroupSpec("ADelta", eps=s.eps))
    rows = []
    for sig in s.sigmas:
        ls = s.l_sigma_character(sig)
        h, mackey = [], []
        for i in (1, 2, 3):
            r = s.r_minus(i)
            h.append(inner_product(ls, s.u_dm_character(r)))
            if cross_check:
                Q = s.subgroup(SubgroupSpec("Q_r", r=r))
                chi1 = _phi_sigma_values(s, ad, sig)
                mackey.append(mackey_hom_dim(s.G, ad, chi1, Q, np.ones(Q.order)))
        rows.append({"sigma": sig.describe(), "pullback": not sig.new, "h": h, "mackey": mackey or None})
    return rows


def _phi_sigma_values(s: SpectralSetting, ad: FiniteGroup, sig: SigmaLabel) -> np.ndarray:
    emb = ad.embedding_into(s.G)
    x, z, a, b, c = (comp[emb] for comp in s.E.components)
    d = s.E.encode(np.zeros_like(a), np.zeros_like(a), a, b, c)
    angle_of = {g: float(t) for g, t in zip(s.delta_group.elements, sig.character.angles)}
    sig_vals = np.exp(2j * np.pi * np.array([angle_of[int(v)] for v in d]))
    return s._phi_values(s.xi0, s.zeta0, emb) * sig_vals


def verify_hom_pattern(s: SpectralSetting, strict: bool = True, cross_check: bool = True) -> Report:
    rows = hom_pattern(s, cross_check)
    ok = True
    for row in rows:
        h = row["h"]
        ok &= (max(h) >= 1) == row["pullback"]
        if not row["pullback"]:
            ok &= h[2] == 0
        if row["mackey"] is not None:
            ok &= row["mackey"] == h
    pull = sum(r["pullback"] for r in rows)
    detail = {
        "pullback": pull,
        "new": len(rows) - pull,
        "new_expected": new_character_count(s.q, s.m, s.delta_is_unit),
        "rows": rows,
    }
    ok &= detail["new"] == detail["new_expected"]
    return make_report("group.hom_pattern", s.params, bool(ok), detail, strict)


def verify_vcm(s: SpectralSetting, strict: bool = True) -> Report:
    cons = s.vcm_constituents()
    expected = new_character_count(s.q, s.m, s.delta_is_unit)
    detail = {
        "count": len(cons),
        "expected": expected,
        "dimension": s.l_sigma_degree_expected(),
        "constituents": [c.describe() for c in cons],
    }
    return make_report("group.vcm_constituents", s.params, len(cons) == expected, detail, strict)


def verify_structure(s: SpectralSetting, strict: bool = True, seed: int = 0, trials: int = 1000) -> Report:
    """Group axioms, the centre of B and the projection B -> E, stabilizer lemma."""
    rng = np.random.default_rng(seed)
    E, G = s.E, s.G
    q, m = s.q, s.m
    detail: dict = {}
    a, b, c = (rng.integers(0, G.order, trials) for _ in range(3))
    assoc = np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
    ident = np.array_equal(G.mul(a, E.identity), a) and np.array_equal(G.mul(E.identity, a), a)
    inverse = np.all(G.mul(a, G.inv[a]) == E.identity)
    detail["e_axioms"] = bool(assoc and ident and inverse)
    units = q ** (m - 1) * (q - 1)
    detail["e_order"] = G.order
    order_ok = G.order == q ** (3 * m) * units**2

    B = ToralHeisenbergGroup(s.ring, s.delta)
    BG = B.group
    a, b, c = (rng.integers(0, BG.order, trials) for _ in range(3))
    b_axioms = (
        np.array_equal(BG.mul(BG.mul(a, b), c), BG.mul(a, BG.mul(b, c)))
        and np.all(BG.mul(a, BG.inv[a]) == B.identity)
        and np.array_equal(BG.mul(a, B.identity), a)
    )
    detail["b_axioms"] = bool(b_axioms)
    proj = B.projection(E)
    everything = BG.all
    hom = True
    for g in BG.generators:
        hom &= np.array_equal(proj[BG.mul(everything, g)], G.mul(proj, proj[g]))
    x, y = rng.integers(0, BG.order, trials), rng.integers(0, BG.order, trials)
    hom &= np.array_equal(proj[BG.mul(x, y)], G.mul(proj[x], proj[y]))
    kernel = np.flatnonzero(proj == E.identity)
    center = compute_center(B)
    scalars = np.flatnonzero(B.subgroup_mask("scalars"))
    image = np.unique(proj).size
    detail.update(
        projection_homomorphism=bool(hom),
        center_size=int(center.size),
        kernel_equals_center=bool(np.array_equal(kernel, center)),
        center_is_scalars=bool(np.array_equal(center, scalars)),
        image_times_kernel=int(image * kernel.size),
        b_order=BG.order,
    )
    stab = np.sort(stabilizer_of_character(E, s.xi0, s.zeta0, s.psi_unit))
    delta_sub = np.flatnonzero(E.subgroup_mask(SubgroupSpec("Delta", eps=s.eps)))
    gamma_order = int(E.subgroup_mask(SubgroupSpec("Gamma")).sum())
    orbit = gamma_order // stab.size
    detail["stabilizer_size"] = int(stab.size)
    detail["stabilizer_is_delta"] = bool(np.array_equal(stab, delta_sub))
    # The kernel of B -> E is always the scalar torus.  It is the whole
    # centre only when some unit u has u - 1 a unit, i.e. q > 2.
    kernel_ok = np.array_equal(kernel, scalars) and np.all(np.isin(kernel, center))
    if q > 2:
        kernel_ok = kernel_ok and detail["kernel_equals_center"]
    detail["kernel_is_scalars"] = bool(np.array_equal(kernel, scalars))
    ok = (
        detail["e_axioms"]
        and b_axioms
        and order_ok
        and hom
        and kernel_ok
        and image == G.order
        and image * kernel.size == BG.order
        and detail["stabilizer_is_delta"]
        and orbit * stab.size == gamma_order
    )
    return make_report("group.structure", s.params, bool(ok), detail, strict)


def run_group_suite(p: int, m: int, delta_exp: int, backend: str = "zmod", seed: int = 0, strict: bool = False) -> list[Report]:
    s = setting(p, m, delta_exp, backend)
    return [
        verify_structure(s, strict, seed),
        verify_orbits(s, strict),
        verify_w_characters(s, strict),
        verify_w00_decomposition(s, strict),
        verify_embedding_props(s, strict),
        verify_hom_pattern(s, strict),
        verify_vcm(s, strict),
    ]


def suite_counts(reports: list[Report]) -> dict:
    """Count-valued content of a group suite, for backend comparison."""
    out = {}
    for r in reports:
        d = r.detail
        if r.check == "group.theta_orbits":
            out["orbit_sizes"] = d["sizes"]
        elif r.check == "group.w_irreducible":
            out["w_degrees"] = d["degrees"]
            out["w_norms"] = d["norms"]
        elif r.check == "group.w00_decomposition":
            out["sigma_count"] = d["sigma_count"]
            out["l_degrees"] = d["l_sigma_degrees"]
            out["w00_multiplicities"] = sorted(d["multiplicities"])
        elif r.check == "group.embedding":
            out["embedding"] = (d["case_a_r_minus_e1"], d["case_b_r_minus_e3"], sorted(d["l_sigma_in_u_c"]))
        elif r.check == "group.hom_pattern":
            out["hom"] = sorted((row["pullback"], tuple(row["h"])) for row in d["rows"])
        elif r.check == "group.vcm_constituents":
            out["vcm"] = d["count"]
        elif r.check == "group.structure":
            out["center"] = d["center_size"]
            out["stabilizer"] = d["stabilizer_size"]
    return out
