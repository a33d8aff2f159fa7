"""Finite ambient groups of class three: two cyclic 2-groups joined in the
freest class-three way, optionally modulo extra central relators.

``build`` quotients the free class-three group on a, b by the normal closure
of a^(2^alpha), b^(2^beta) and the extras.  The r and s coordinates fold
modulo the cyclic factor orders; the commutator block (t, u, v) folds modulo
an integer relation lattice whose generators are the collected commutator
parts of the power relators:

    [a^(2^alpha), b],  [a, b^(2^beta)],  [a,b,a]^(2^beta),  [a,b,b]^(2^beta)

plus one triple per extra relator.  The canonical box of that lattice gives
the normal form; with no extras its size must reproduce the classical counts
2^(alpha+4*beta) (alpha > beta) and 2^(alpha+4*beta-1) (alpha = beta), and
with extras [a,b,a]^(2^gamma), [a,b,b]^(2^gamma) it must give
2^(alpha+2*beta+2*gamma); the build fails loudly otherwise.

Group elements (``NilElt``) are plain 5-tuples of boxed coordinates.
Everything is immutable after build and all operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import hall_core as hall
from .errors import BuildIntegrityError, CentralityError, ParameterError
from .hall_core import FreeElt
from .lattice import CommLattice, canonical_basis

NilElt = tuple[int, int, int, int, int]


@dataclass(frozen=True)
class GroupSpec:
    """Build recipe: cyclic factor exponents plus extra central relators.

    Extras must lie in the commutator subgroup (r = s = 0).  Each one is
    checked to be central in the group built from the preceding relators;
    the witness constructions impose relators in exactly that layered
    fashion.
    """

    alpha: int
    beta: int
    extra_central: tuple[FreeElt, ...] = ()


class NilGroup:
    """A built quotient with canonical boxed coordinates.  Use :func:`build`."""

    def __init__(self, spec: GroupSpec, comm_lattice: CommLattice):
        self.spec = spec
        self.comm_lattice = comm_lattice
        self.r_modulus = 1 << spec.alpha
        self.s_modulus = 1 << spec.beta
        self.order = self.r_modulus * self.s_modulus * comm_lattice.index
        self.identity: NilElt = (0, 0, 0, 0, 0)
        self.a = self.reduce(hall.A)
        self.b = self.reduce(hall.B)
        self.gens = (self.a, self.b)
        self.radices = (self.r_modulus, self.s_modulus) + comm_lattice.pivots
        # modulus of the [a,b] coordinate in the quotient by <[a,b,a],[a,b,b]>
        self.g3_t_modulus = canonical_basis(
            comm_lattice.rows + ((0, 1, 0), (0, 0, 1))
        ).pivots[0]

    # -- scalar arithmetic -------------------------------------------------

    def lift(self, x: NilElt) -> FreeElt:
        return FreeElt(*x)

    def reduce(self, g: FreeElt) -> NilElt:
        r = g.r % self.r_modulus
        s = g.s % self.s_modulus
        t, u, v = self.comm_lattice.reduce((g.t, g.u, g.v))
        return (r, s, t, u, v)

    def mul(self, x: NilElt, y: NilElt) -> NilElt:
        return self.reduce(hall.mul(self.lift(x), self.lift(y)))

    def inverse(self, x: NilElt) -> NilElt:
        return self.reduce(hall.inverse(self.lift(x)))

    def power(self, x: NilElt, n: int) -> NilElt:
        return self.reduce(hall.power(self.lift(x), n))

    def commutator(self, x: NilElt, y: NilElt) -> NilElt:
        return self.reduce(hall.commutator(self.lift(x), self.lift(y)))

    def order_of(self, x: NilElt) -> int:
        """Smallest power of two k with x^k trivial, by repeated squaring."""
        n = 1
        cur = x
        while cur != self.identity:
            cur = self.mul(cur, cur)
            n <<= 1
            if n > 2 * self.order:
                raise BuildIntegrityError("element order exceeds group order")
        return n

    def equal_mod_g3(self, x: NilElt, y: NilElt) -> bool:
        """Equality in the quotient by <[a,b,a],[a,b,b]>."""
        return (
            x[0] == y[0]
            and x[1] == y[1]
            and (x[2] - y[2]) % self.g3_t_modulus == 0
        )

    def elements(self):
        """All boxed coordinate tuples, lexicographic."""
        return itertools.product(
            range(self.r_modulus),
            range(self.s_modulus),
            *(range(p) for p in self.comm_lattice.pivots),
        )

    def subgroup_closure(self, gens) -> set[NilElt]:
        """Subgroup generated by ``gens`` (BFS over right multiplication)."""
        gens = [tuple(g) for g in gens]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def is_central(self, x: NilElt) -> bool:
        """Commutes with a and b, which generate the group."""
        return (
            self.commutator(x, self.a) == self.identity
            and self.commutator(x, self.b) == self.identity
        )

    # -- vectorized arithmetic (same law on int64 coordinate rows) ----------

    def coords_array(self) -> np.ndarray:
        grids = np.meshgrid(
            *(np.arange(m, dtype=np.int64) for m in self.radices), indexing="ij"
        )
        return np.stack([g.reshape(-1) for g in grids], axis=1)

    def reduce_arrays(self, r, s, t, u, v) -> np.ndarray:
        r = r % self.r_modulus
        s = s % self.s_modulus
        (p0, a01, a02), (_, p1, a12), (_, _, p2) = self.comm_lattice.rows
        k = t // p0
        t = t - k * p0
        u = u - k * a01
        v = v - k * a02
        k = u // p1
        u = u - k * p1
        v = v - k * a12
        v = v % p2
        return np.stack(np.broadcast_arrays(r, s, t, u, v), axis=-1)

    def mul_arrays(self, X, Y) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        xr, xs, xt, xu, xv = (X[..., i] for i in range(5))
        yr, ys, yt, yu, yv = (Y[..., i] for i in range(5))
        t_mid = xt - yr * xs
        return self.reduce_arrays(
            xr + yr,
            xs + ys,
            t_mid + yt,
            xu + yu + yr * xt - xs * (yr * (yr - 1) // 2),
            xv + yv + ys * t_mid - yr * (xs * (xs - 1) // 2),
        )

    def inv_arrays(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        r, s, t, u, v = (X[..., i] for i in range(5))
        return self.reduce_arrays(
            -r,
            -s,
            -t - r * s,
            r * t - u + s * (-r * (-r - 1) // 2),
            s * t - v + r * (-s * (-s - 1) // 2),
        )

    def key_rows(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        key = X[..., 0]
        for i, m in enumerate(self.radices[1:], start=1):
            key = key * m + X[..., i]
        return key

    # -- centers and quotients ----------------------------------------------

    def generates_with_center(self, elems) -> bool:
        """Do ``elems`` generate the whole group together with the center?

        BFS closure with an early exit: a subgroup of more than half the
        order is the whole group.
        """
        gens = [tuple(g) for g in elems] + self.center()
        half = self.order // 2
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        if len(seen) >= half:
                            return True
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return len(seen) == self.order

    def center(self) -> list[NilElt]:
        """Generators of the exact center.

        An element is central iff it commutes with a and b.  Its (u, v) part
        never matters, so solve the two commutator congruences over the
        (r, s, t) box and append generators of the full (u, v) block, then
        greedily drop redundant generators.
        """
        if hasattr(self, "_center_gens"):
            return list(self._center_gens)
        sols = []
        p_t = self.comm_lattice.pivots[0]
        for r in range(self.r_modulus):
            for s in range(self.s_modulus):
                for t in range(p_t):
                    z = FreeElt(r, s, t, 0, 0)
                    if self.reduce(hall.commutator(z, hall.A)) != self.identity:
                        continue
                    if self.reduce(hall.commutator(z, hall.B)) != self.identity:
                        continue
                    sols.append(self.reduce(z))
        sols.append(self.reduce(hall.D))
        sols.append(self.reduce(hall.E))

        gens: list[NilElt] = []
        known = {self.identity}
        for cand in sols:
            if cand in known:
                continue
            gens.append(cand)
            known = self.subgroup_closure(gens)
        self._center_gens = tuple(gens)
        return gens

    def central_quotient(self, max_order: int | None = None):
        """Recognize G/Z(G) as validated presentation parameters.

        The quotient is built by the brute-force oracle and matched against
        candidate models by fingerprint, then confirmed by an explicit
        generator-image isomorphism.
        """
        from . import class2, oracle

        table = oracle.GroupTable.from_group(self, max_order)
        zc = oracle.brute_center(table)
        q = oracle.quotient_central(table, zc)
        fq = class2.fingerprint(q.group)
        matches = []
        for p in class2.params_with_order(q.order):
            m = class2.model(p)
            if class2.fingerprint(m) != fq:
                continue
            if oracle.iso_2gen(q, m) is not None:
                matches.append(p)
        if len(matches) == 2 and class2.overlap_partner(matches[0]) == matches[1]:
            # the one known presentation coincidence; report the type-i tuple
            return next(p for p in matches if p.kind == "i")
        if len(matches) != 1:
            raise BuildIntegrityError(
                f"central quotient matched {len(matches)} presentation types: {matches}"
            )
        return matches[0]

    # -- display -------------------------------------------------------------

    def to_square_basis(self, x: NilElt) -> NilElt:
        """Coordinates in the alternative basis [a,b], [a^2,b], [a,b^2].

        Display only: [a^2,b] = [a,b]^2 [a,b,a] and [a,b^2] = [a,b]^2 [a,b,b],
        so (t, u, v) maps to (t - 2u - 2v, u, v), reduced by the transformed
        relation lattice.  For a plain product with alpha > beta the box is
        2^(beta+1), 2^beta, 2^(beta-1); for alpha = beta the middle modulus
        halves.
        """
        lat = self._square_basis_lattice()
        r, s, t, u, v = x
        return (r, s) + lat.reduce((t - 2 * u - 2 * v, u, v))

    def _square_basis_lattice(self) -> CommLattice:
        if not hasattr(self, "_square_lat"):
            gens = [(t - 2 * u - 2 * v, u, v) for (t, u, v) in self.comm_lattice.rows]
            self._square_lat = canonical_basis(gens)
        return self._square_lat

    def describe(self) -> str:
        s = f"C_{self.r_modulus} * C_{self.s_modulus} (class-three nilpotent product)"
        if self.spec.extra_central:
            rels = ", ".join(str(e) for e in self.spec.extra_central)
            s += f" / <<{rels}>>"
        return s

    def __repr__(self) -> str:
        return f"NilGroup(alpha={self.spec.alpha}, beta={self.spec.beta}, order={self.order})"


def build(spec: GroupSpec) -> NilGroup:
    """Construct the quotient described by ``spec``, with integrity checks."""
    alpha, beta = spec.alpha, spec.beta
    if beta < 1 or alpha < beta:
        raise ParameterError(f"alpha >= beta >= 1 required, got alpha={alpha}, beta={beta}")
    pa, pb = 1 << alpha, 1 << beta

    g_ab = hall.commutator(hall.power(hall.A, pa), hall.B)
    g_ba = hall.commutator(hall.A, hall.power(hall.B, pb))
    gens = [
        g_ab.comm_coords(),
        g_ba.comm_coords(),
        (0, pb, 0),
        (0, 0, pb),
    ]
    lat = canonical_basis(gens)

    for x in spec.extra_central:
        if x.r or x.s:
            raise ParameterError(
                f"extra central relator must lie in the commutator subgroup: {x}"
            )
        for g, name in ((hall.A, "a"), (hall.B, "b")):
            w = hall.commutator(x, g)
            if not lat.contains(w.comm_coords()):
                raise CentralityError(
                    f"extra relator not central: [{x}, {name}] = {w} is nontrivial"
                )
        lat = canonical_basis(lat.rows + (x.comm_coords(),))

    group = NilGroup(spec, lat)

    expected = _expected_order(spec)
    if expected is not None and group.order != expected:
        raise BuildIntegrityError(
            f"normal-form count {group.order} does not match the expected {expected}"
        )
    return group


def _expected_order(spec: GroupSpec) -> int | None:
    alpha, beta = spec.alpha, spec.beta
    if not spec.extra_central:
        return 1 << (alpha + 4 * beta - (1 if alpha == beta else 0))
    gamma = _uniform_extra_exponent(spec)
    if gamma is not None:
        return 1 << (alpha + 2 * beta + 2 * gamma)
    return None


def _uniform_extra_exponent(spec: GroupSpec) -> int | None:
    """gamma when the extras are exactly [a,b,a]^(2^gamma), [a,b,b]^(2^gamma)."""
    if len(spec.extra_central) != 2:
        return None
    coords = sorted(e.coords() for e in spec.extra_central)
    g = coords[0][4]
    if g <= 0 or g & (g - 1):
        return None
    if coords != [(0, 0, 0, 0, g), (0, 0, 0, g, 0)]:
        return None
    gamma = g.bit_length() - 1
    return gamma if 1 <= gamma < spec.beta else None
