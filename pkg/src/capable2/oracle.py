"""Independent brute-force referees: word collection by elementary rewriting,
full enumeration, subgroup machinery, and two-generator isomorphism search.

``collect_word`` never touches the closed-form multiplication polynomials: it
pushes single letters past each other with the five basic swap rules and their
sign variants, so it referees :mod:`capable2.hall_core`.  The table-level
routines (center, closure, quotient, isomorphism) referee the congruence-level
computations elsewhere in the package; they reuse each group's own
multiplication law but never its structural shortcuts.

Tables are immutable after construction and deterministically ordered.
"""

from __future__ import annotations

import numpy as np

from .errors import EnumerationBudgetError
from .hall_core import FreeElt

DEFAULT_MAX_ORDER = 1 << 16

# ---------------------------------------------------------------------------
# word collection


_RANK = {"a": 0, "b": 1, "c": 2, "d": 3, "e": 4}

# (higher letter, sign), (lower letter, sign) -> correction letters appended
# after the swapped pair.  Each entry is the commutator [x^eps, y^delta]
# written as a word in strictly higher letters; d and e commute with
# everything and c commutes with c, d, e, so no other pairs need corrections.
_SWAP = {
    (("b", 1), ("a", 1)): (("c", -1),),
    (("b", 1), ("a", -1)): (("c", 1), ("d", -1)),
    (("b", -1), ("a", 1)): (("c", 1), ("e", -1)),
    (("b", -1), ("a", -1)): (("c", -1), ("d", 1), ("e", 1)),
    (("c", 1), ("a", 1)): (("d", 1),),
    (("c", 1), ("a", -1)): (("d", -1),),
    (("c", -1), ("a", 1)): (("d", -1),),
    (("c", -1), ("a", -1)): (("d", 1),),
    (("c", 1), ("b", 1)): (("e", 1),),
    (("c", 1), ("b", -1)): (("e", -1),),
    (("c", -1), ("b", 1)): (("e", -1),),
    (("c", -1), ("b", -1)): (("e", 1),),
}

_AB_EXPANSION = {
    "c": (("a", -1), ("b", -1), ("a", 1), ("b", 1)),
}
_AB_EXPANSION["d"] = (
    tuple((s, -e) for s, e in reversed(_AB_EXPANSION["c"]))
    + (("a", -1),)
    + _AB_EXPANSION["c"]
    + (("a", 1),)
)
_AB_EXPANSION["e"] = (
    tuple((s, -e) for s, e in reversed(_AB_EXPANSION["c"]))
    + (("b", -1),)
    + _AB_EXPANSION["c"]
    + (("b", 1),)
)


def _parse_word(w) -> list[tuple[str, int]]:
    """Accept 'aBab'-style strings (uppercase = inverse) or (sym, exp) pairs."""
    letters: list[tuple[str, int]] = []
    if isinstance(w, str):
        for ch in w:
            if ch in " \t":
                continue
            sym = ch.lower()
            if sym not in _RANK:
                raise ValueError(f"unknown letter {ch!r}")
            letters.append((sym, -1 if ch.isupper() else 1))
        return letters
    for sym, exp in w:
        if sym not in _RANK:
            raise ValueError(f"unknown letter {sym!r}")
        sign = 1 if exp > 0 else -1
        letters.extend((sym, sign) for _ in range(abs(exp)))
    return letters


def collect_word(w, max_steps: int = 50_000_000) -> FreeElt:
    """Collect a word over a, b, c, d, e (and inverses) to its normal form.

    Pure letter-by-letter rewriting: scan for an adjacent out-of-order pair,
    swap it, append the correction letters, and back up one position.  The
    central letters d, e go straight to counters.  Terminates because every
    correction has strictly greater weight than the swapped pair.
    """
    u_acc = v_acc = 0
    word = []
    for sym, sign in _parse_word(w):
        if sym == "d":
            u_acc += sign
        elif sym == "e":
            v_acc += sign
        else:
            word.append((sym, sign))

    i = 0
    steps = 0
    while i < len(word) - 1:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("collection did not terminate within the step cap")
        x, y = word[i], word[i + 1]
        if x[0] == y[0] and x[1] == -y[1]:
            del word[i : i + 2]
            i = max(i - 1, 0)
            continue
        if _RANK[x[0]] > _RANK[y[0]]:
            corr = _SWAP[(x, y)]
            word[i], word[i + 1] = y, x
            insert = []
            for sym, sign in corr:
                if sym == "d":
                    u_acc += sign
                elif sym == "e":
                    v_acc += sign
                else:
                    insert.append((sym, sign))
            word[i + 2 : i + 2] = insert
            i = max(i - 1, 0)
        else:
            i += 1

    counts = {"a": 0, "b": 0, "c": 0}
    for sym, sign in word:
        counts[sym] += sign
    return FreeElt(counts["a"], counts["b"], counts["c"], u_acc, v_acc)


def word_of(x: FreeElt, expand_commutators: bool = False) -> list[tuple[str, int]]:
    """A word spelling x; with ``expand_commutators`` only a, b letters appear."""
    letters: list[tuple[str, int]] = []
    for sym, exp in zip("abcde", x.coords()):
        sign = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            if expand_commutators and sym in _AB_EXPANSION:
                chunk = _AB_EXPANSION[sym]
                if sign < 0:
                    chunk = tuple((s, -e) for s, e in reversed(chunk))
                letters.extend(chunk)
            else:
                letters.append((sym, sign))
    return letters


# ---------------------------------------------------------------------------
# tables


class GroupTable:
    """Element list plus fast coordinate-level access for one group object.

    The group supplies the multiplication law; the table only enumerates,
    indexes and memoizes.  Elements are int64 coordinate rows sorted by their
    mixed-radix key, which makes construction deterministic.
    """

    def __init__(self, group, coords: np.ndarray):
        self.group = group
        self.coords = coords
        self.keys = group.key_rows(coords)
        self.order = len(coords)
        self.identity_idx = int(self.idx_rows(np.asarray([group.identity]))[0])

    @staticmethod
    def from_group(group, max_order: int | None = None) -> "GroupTable":
        limit = DEFAULT_MAX_ORDER if max_order is None else max_order
        if group.order > limit:
            raise EnumerationBudgetError(
                f"group of order {group.order} exceeds the enumeration bound {limit}"
            )
        coords = np.asarray(group.coords_array(), dtype=np.int64)
        if len(coords) != group.order:
            raise EnumerationBudgetError("enumeration does not match the declared order")
        return GroupTable(group, coords)

    def idx_rows(self, X) -> np.ndarray:
        k = self.group.key_rows(np.asarray(X, dtype=np.int64))
        return np.searchsorted(self.keys, k)

    def rows(self, idx) -> np.ndarray:
        return self.coords[idx]

    def element_set(self) -> set[tuple]:
        return {tuple(r) for r in self.coords.tolist()}


def enumerate_group(group, max_order: int | None = None) -> GroupTable:
    """Full element table of a group object; errors past the budget."""
    return GroupTable.from_group(group, max_order)


def is_identity_rows(group, X) -> np.ndarray:
    ident = np.asarray(group.identity, dtype=np.int64)
    return (np.asarray(X) == ident).all(axis=-1)


def order_exponent_rows(group, X) -> np.ndarray:
    """log2 of each row's order, by repeated squaring."""
    X = np.asarray(X, dtype=np.int64)
    res = np.zeros(len(X), dtype=np.int64)
    cur = X.copy()
    alive = ~is_identity_rows(group, cur)
    k = 0
    while alive.any():
        k += 1
        if k > 64:
            raise RuntimeError("order exceeds 2^64; not a finite 2-group table")
        cur[alive] = group.mul_arrays(cur[alive], cur[alive])
        done = alive & is_identity_rows(group, cur)
        res[done] = k
        alive &= ~done
    return res


def comm_rows(group, X, y) -> np.ndarray:
    """[x, y] for each row x against a fixed element y."""
    y = np.asarray(y, dtype=np.int64)
    xi = group.inv_arrays(X)
    yi = group.inv_arrays(y[None])[0]
    return group.mul_arrays(group.mul_arrays(xi, yi[None]), group.mul_arrays(X, y[None]))


def comm_rows_pairwise(group, X, Y) -> np.ndarray:
    return group.mul_arrays(
        group.mul_arrays(group.inv_arrays(X), group.inv_arrays(Y)),
        group.mul_arrays(X, Y),
    )


def pow_rows(group, X, n: int) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    if n < 0:
        return pow_rows(group, group.inv_arrays(X), -n)
    acc = np.broadcast_to(
        np.asarray(group.identity, dtype=np.int64), X.shape
    ).copy()
    base = X.copy()
    while n:
        if n & 1:
            acc = group.mul_arrays(acc, base)
        base = group.mul_arrays(base, base)
        n >>= 1
    return acc


# ---------------------------------------------------------------------------
# subgroup machinery


def brute_center(table: GroupTable) -> np.ndarray:
    """{z : zg = gz for all g}, coordinate rows.

    Candidates are first cut down by the designated generators, then every
    survivor is verified against the whole element list, so each returned row
    commutes with everything and each excluded row has a witness.
    """
    g = table.group
    cand = table.coords
    for gen in g.gens:
        row = np.asarray(gen, dtype=np.int64)
        left = g.mul_arrays(cand, row[None])
        right = g.mul_arrays(row[None], cand)
        cand = cand[(left == right).all(axis=1)]
    keep = np.ones(len(cand), dtype=bool)
    for i, z in enumerate(cand):
        left = g.mul_arrays(table.coords, z[None])
        right = g.mul_arrays(z[None], table.coords)
        if not (left == right).all():
            keep[i] = False
    return cand[keep]


def closure(table: GroupTable, gens) -> np.ndarray:
    """Subgroup generated by ``gens`` inside the table's group."""
    g = table.group
    seen = {int(g.key_rows(np.asarray([g.identity]))[0])}
    rows = [tuple(g.identity)]
    frontier = [tuple(g.identity)]
    gens = [tuple(x) for x in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for h in gens:
                y = g.mul(x, h)
                k = int(g.key_rows(np.asarray([y]))[0])
                if k not in seen:
                    seen.add(k)
                    rows.append(y)
                    nxt.append(y)
        frontier = nxt
    out = np.asarray(rows, dtype=np.int64)
    return out[np.argsort(g.key_rows(out), kind="stable")]


def normal_closure(table: GroupTable, gens) -> np.ndarray:
    """Smallest normal subgroup containing ``gens``.

    Conjugation by the group's designated generators suffices to normalize,
    since they generate the whole group.
    """
    g = table.group
    current = [tuple(x) for x in gens]
    sub = closure(table, current)
    while True:
        size = len(sub)
        conjs = []
        for gen in g.gens:
            gi = g.inverse(gen)
            for s in sub.tolist():
                conjs.append(g.mul(g.mul(gi, tuple(s)), gen))
        sub = closure(table, [tuple(s) for s in sub.tolist()] + conjs)
        if len(sub) == size:
            return sub


class QuotientGroup:
    """Quotient of a table's group by a verified central subgroup.

    Elements are the minimum-key coset representatives; products are computed
    in the parent and renormalized through a dense coset-id array.
    """

    def __init__(self, table: GroupTable, sub: np.ndarray):
        parent = table.group
        self.parent = parent
        minkey = table.keys.copy()
        for z in sub:
            k = parent.key_rows(parent.mul_arrays(table.coords, z[None]))
            np.minimum(minkey, k, out=minkey)
        rep_keys, cid = np.unique(minkey, return_inverse=True)
        # table.keys is dense 0..N-1 for base groups, so cid indexes by key
        if not np.array_equal(table.keys, np.arange(table.order)):
            raise ValueError("quotients require a densely keyed parent table")
        self._cid_of_key = cid.astype(np.int64)
        self._rep = table.coords[rep_keys]
        self.order = len(rep_keys)
        self.identity = tuple(self._canon_rows(np.asarray([parent.identity]))[0].tolist())
        self.gens = tuple(
            tuple(r.tolist())
            for r in self._canon_rows(np.asarray(parent.gens, dtype=np.int64))
        )
        self.radices = parent.radices

    def _canon_rows(self, X) -> np.ndarray:
        keys = self.parent.key_rows(np.asarray(X, dtype=np.int64))
        return self._rep[self._cid_of_key[keys]]

    def coords_array(self) -> np.ndarray:
        return self._rep.copy()

    def mul_arrays(self, X, Y) -> np.ndarray:
        return self._canon_rows(self.parent.mul_arrays(X, Y))

    def inv_arrays(self, X) -> np.ndarray:
        return self._canon_rows(self.parent.inv_arrays(X))

    def key_rows(self, X) -> np.ndarray:
        return self.parent.key_rows(np.asarray(X, dtype=np.int64))

    def mul(self, x, y):
        return tuple(self.mul_arrays(np.asarray([x]), np.asarray([y]))[0].tolist())

    def inverse(self, x):
        return tuple(self.inv_arrays(np.asarray([x]))[0].tolist())

    def power(self, x, n: int):
        return tuple(pow_rows(self, np.asarray([x]), n)[0].tolist())

    def commutator(self, x, y):
        return self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y))

    def order_of(self, x) -> int:
        return 1 << int(order_exponent_rows(self, np.asarray([x]))[0])

    def elements(self):
        return (tuple(r) for r in self._rep.tolist())


def quotient_central(table: GroupTable, sub) -> GroupTable:
    """Table of the quotient by a central subgroup; rejects non-central input."""
    g = table.group
    sub = np.asarray(sub, dtype=np.int64)
    sub_set = {tuple(r) for r in sub.tolist()}
    if tuple(g.identity) not in sub_set:
        raise ValueError("subgroup must contain the identity")
    for z in sub.tolist():
        zt = tuple(z)
        for gen in g.gens:
            if g.commutator(zt, gen) != tuple(g.identity):
                raise ValueError(f"subgroup element {zt} is not central")
        for w in sub.tolist():
            if g.mul(zt, tuple(w)) not in sub_set:
                raise ValueError("input is not closed under multiplication")
    q = QuotientGroup(table, sub)
    return GroupTable(q, q.coords_array())


def lcs(table: GroupTable) -> list[np.ndarray]:
    """Lower central series as element-row arrays, ending at the trivial term."""
    g = table.group
    chain = [table.coords]
    cur = table.coords
    while len(cur) > 1:
        comms = []
        for gen in g.gens:
            comms.append(comm_rows(g, cur, np.asarray(gen, dtype=np.int64)))
        rows = np.concatenate(comms, axis=0)
        uniq = {tuple(r) for r in rows.tolist()}
        nxt = normal_closure(table, sorted(uniq))
        if len(nxt) == len(cur):
            raise RuntimeError("lower central series stalled; group is not nilpotent?")
        chain.append(nxt)
        cur = nxt
    return chain


# ---------------------------------------------------------------------------
# isomorphism search


def iso_2gen(table: GroupTable, target):
    """Explicit generator-image isomorphism from ``target`` onto the table.

    Searches pairs (g, h) with the same generator and commutator orders as
    the target's (a, b), checks every defining relation of the target's
    presentation (plus centrality of the commutator), and accepts only when
    the image of the full coordinate box fills the table.  Relations holding
    for (g, h) make the coordinate map a homomorphism by the usual collection
    argument, so a full image of equal size certifies an isomorphism.  Sound
    and complete for two-generator targets.
    """
    if table.order != target.order:
        return None
    g = table.group
    coords = table.coords

    ta, tb = target.gens
    ea = target.order_of(ta).bit_length() - 1
    eb = target.order_of(tb).bit_length() - 1
    ec = target.order_of(target.commutator(ta, tb)).bit_length() - 1

    exps = order_exponent_rows(g, coords)
    g_rows = coords[exps == ea]
    h_rows = coords[exps == eb]
    if len(g_rows) == 0 or len(h_rows) == 0:
        return None

    relations = target.relations()
    for grow in g_rows:
        C = comm_rows_pairwise(
            g, np.broadcast_to(grow, h_rows.shape).copy(), h_rows
        )
        mask = order_exponent_rows(g, C) == ec
        if not mask.any():
            continue
        H = h_rows[mask]
        Cm = C[mask]
        # commutator must be central: [c, g] = [c, h] = 1
        mask2 = is_identity_rows(g, comm_rows(g, Cm, grow))
        mask2 &= is_identity_rows(
            g, comm_rows_pairwise(g, Cm, H)
        )
        if not mask2.any():
            continue
        H = H[mask2]
        Cm = Cm[mask2]
        ok = np.ones(len(H), dtype=bool)
        for lhs, rhs in relations:
            lval = _eval_word_rows(g, grow, H, Cm, lhs)
            rval = _eval_word_rows(g, grow, H, Cm, rhs)
            ok &= (lval == rval).all(axis=1)
        for h, c in zip(H[ok], Cm[ok]):
            if _image_fills(g, table, grow, h, c, ea, eb, ec):
                return (tuple(grow.tolist()), tuple(h.tolist()))
    return None


def _eval_word_rows(group, grow, H, C, word) -> np.ndarray:
    ident = np.asarray(group.identity, dtype=np.int64)
    acc = np.broadcast_to(ident, H.shape).copy()
    for sym, exp in word:
        if sym == "a":
            base = np.broadcast_to(grow, H.shape).copy()
        elif sym == "b":
            base = H
        else:
            base = C
        acc = group.mul_arrays(acc, pow_rows(group, base, exp))
    return acc


def _image_fills(group, table, grow, h, c, ea, eb, ec) -> bool:
    keys = set()
    gp = grow[None]
    gpow = [gp[0]]
    for _ in range((1 << ea) - 1):
        gp = group.mul_arrays(gp, grow[None])
        gpow.append(gp[0])
    hp = h[None]
    hpow = [hp[0]]
    for _ in range((1 << eb) - 1):
        hp = group.mul_arrays(hp, h[None])
        hpow.append(hp[0])
    hpow = np.asarray(hpow)
    for gi in gpow:
        rows = group.mul_arrays(gi[None], hpow)
        cur = rows
        for _ in range(1 << ec):
            keys.update(group.key_rows(cur).tolist())
            cur = group.mul_arrays(cur, c[None])
    return len(keys) == table.order
