"""Ambient class-three groups: builds, normal forms, arithmetic, centers."""

import random

import numpy as np
import pytest

from capable2 import hall_core as hall
from capable2 import nilprod, oracle
from capable2.errors import CentralityError, ParameterError
from capable2.hall_core import FreeElt
from capable2.nilprod import GroupSpec, build


def K(alpha, beta, gamma):
    e = 1 << gamma
    return build(GroupSpec(alpha, beta, (FreeElt(u=e), FreeElt(v=e))))


def test_build_counts_plain():
    assert build(GroupSpec(2, 1)).order == 64
    assert build(GroupSpec(2, 2)).order == 512
    assert build(GroupSpec(1, 1)).order == 16


def test_build_counts_with_uniform_extras():
    g = K(3, 3, 1)
    assert g.order == 1 << 11
    assert g.comm_lattice.pivots == (8, 2, 2)


def test_build_rejects_bad_parameters():
    with pytest.raises(ParameterError, match="alpha >= beta >= 1"):
        build(GroupSpec(1, 2))
    with pytest.raises(ParameterError, match="alpha >= beta >= 1"):
        build(GroupSpec(1, 0))
    with pytest.raises(ParameterError, match="commutator subgroup"):
        build(GroupSpec(2, 2, (FreeElt(r=2),)))


def test_build_rejects_noncentral_extra():
    # [a,b]^2 is not central in the (4,4) product: [[a,b]^2, a] = [a,b,a]^2 != 1
    with pytest.raises(CentralityError, match=r"\[a,b,a\]\^2"):
        build(GroupSpec(4, 4, (FreeElt(t=2),)))


def test_layered_extras_accepted_in_order():
    # [a,b]^4 [a,b,b]^-1 is central only once [a,b,a]^4, [a,b,b]^4 are killed
    w = hall.mul(hall.power(hall.C, 4), hall.power(hall.E, -1))
    with pytest.raises(CentralityError):
        build(GroupSpec(4, 4, (w,)))
    g = build(GroupSpec(4, 4, (FreeElt(u=4), FreeElt(v=4), w)))
    assert g.order == (1 << 16) // 4


def test_reduce_examples():
    g = build(GroupSpec(2, 1))
    assert g.reduce(hall.commutator(hall.A, hall.power(hall.B, 2))) == g.identity
    assert g.reduce(hall.power(hall.A, 4)) == g.identity
    assert g.reduce(hall.power(hall.B, 2)) == g.identity


def test_reduce_matches_word_collection():
    g = build(GroupSpec(3, 2))
    rng = random.Random(0)
    for _ in range(500):
        x = FreeElt(*(rng.randint(-10, 10) for _ in range(5)))
        assert g.reduce(x) == g.reduce(oracle.collect_word(oracle.word_of(x)))


def test_reduce_idempotent():
    g = K(3, 3, 2)
    rng = random.Random(1)
    for _ in range(300):
        x = g.reduce(FreeElt(*(rng.randint(-30, 30) for _ in range(5))))
        assert g.reduce(g.lift(x)) == x


def test_identity_law_full_enumeration():
    g = build(GroupSpec(2, 1))
    for x in g.elements():
        assert g.mul(g.identity, x) == x
        assert g.mul(x, g.identity) == x


def test_commutator_with_a_of_normal_form():
    # [k, a] = [a,b]^-s [a,b,a]^t [a,b,b]^-(s choose 2) for k = a^r b^s [a,b]^t ...
    g = K(3, 3, 2)
    assert g.commutator((0, 2, 1, 0, 0), g.a) == (0, 0, 6, 1, 3)
    rng = random.Random(2)
    for _ in range(300):
        k = g.reduce(FreeElt(*(rng.randint(0, 7) for _ in range(5))))
        s, t = k[1], k[2]
        want_a = g.reduce(
            FreeElt(0, 0, -s, t, -hall.binom2(s))
        )
        assert g.commutator(k, g.a) == want_a
        r = k[0]
        want_b = g.reduce(FreeElt(0, 0, r, hall.binom2(r), r * s + t))
        assert g.commutator(k, g.b) == want_b


def test_general_type_central_element_commutator():
    # [a^(2^(alpha+sigma-gamma)) [a,b]^(-2^sigma), a] = [a,b,a]^(-2^sigma)
    alpha, gamma, sigma = 3, 2, 1
    g = K(alpha, alpha, gamma)
    w = hall.mul(
        hall.power(hall.A, 1 << (alpha + sigma - gamma)),
        hall.power(hall.C, -(1 << sigma)),
    )
    assert g.reduce(hall.commutator(w, hall.A)) == g.reduce(
        hall.power(hall.D, -(1 << sigma))
    )


def test_cyclic_factors_embed():
    for alpha, beta in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 2)]:
        g = build(GroupSpec(alpha, beta))
        assert g.order_of(g.a) == 1 << alpha
        assert g.order_of(g.b) == 1 << beta


def test_order_of_examples():
    g = build(GroupSpec(2, 1))
    assert g.order_of(g.identity) == 1
    assert g.order_of(g.reduce(hall.C)) == 4


def test_center_small_groups_match_brute_force():
    cases = [build(GroupSpec(1, 1)), build(GroupSpec(2, 1)), build(GroupSpec(2, 2))]
    for g in cases:
        table = oracle.GroupTable.from_group(g)
        solved = oracle.closure(table, g.center())
        brute = oracle.brute_center(table)
        assert {tuple(r) for r in solved.tolist()} == {
            tuple(r) for r in brute.tolist()
        }


def test_center_of_small_product_is_generated_by_weight3_b_commutator():
    g = build(GroupSpec(1, 1))
    assert g.center() == [g.reduce(hall.E)]
    table = oracle.GroupTable.from_group(g)
    assert len(oracle.brute_center(table)) == 2


def test_published_center_generators_generate_the_center():
    # a^(2^(beta+1)), [a,b]^2 [a^2,b]^-1 and [a,b]^2 [a,b^2]^-1 generate Z
    for alpha, beta in [(2, 1), (3, 2), (2, 2)]:
        g = build(GroupSpec(alpha, beta))
        gens = [
            g.reduce(hall.power(hall.A, 1 << (beta + 1))),
            g.reduce(
                hall.mul(
                    hall.power(hall.C, 2),
                    hall.inverse(hall.commutator(hall.power(hall.A, 2), hall.B)),
                )
            ),
            g.reduce(
                hall.mul(
                    hall.power(hall.C, 2),
                    hall.inverse(hall.commutator(hall.A, hall.power(hall.B, 2))),
                )
            ),
        ]
        table = oracle.GroupTable.from_group(g)
        brute = oracle.brute_center(table)
        assert {tuple(r) for r in oracle.closure(table, gens).tolist()} == {
            tuple(r) for r in brute.tolist()
        }


def test_quotient_center_generators_for_killed_weight3_powers():
    # Z(K) = <a^(2^beta), [a,b]^(2^gamma), [a,b,a], [a,b,b]> for gamma < beta
    g = K(3, 3, 2)
    gens = [
        g.reduce(hall.power(hall.A, 8)),
        g.reduce(hall.power(hall.C, 4)),
        g.reduce(hall.D),
        g.reduce(hall.E),
    ]
    table = oracle.GroupTable.from_group(g)
    brute = oracle.brute_center(table)
    assert {tuple(r) for r in oracle.closure(table, gens).tolist()} == {
        tuple(r) for r in brute.tolist()
    }
    assert len(brute) == 32


def test_central_quotient_recognition():
    assert str(build(GroupSpec(1, 1)).central_quotient()) == "i(1,1,1)"
    assert str(build(GroupSpec(3, 2)).central_quotient()) == "i(3,2,2)"
    assert str(K(3, 3, 2).central_quotient()) == "i(3,3,2)"


def test_central_quotient_reports_canonical_tuple_on_the_known_coincidence():
    # G(2,2)/Z matches both i(2,2,2) and its general-type partner; the
    # coproduct-type tuple is reported
    assert str(build(GroupSpec(2, 2)).central_quotient()) == "i(2,2,2)"


def test_square_commutator_basis_moduli():
    # alternative normal form [a,b]^t [a^2,b]^u [a,b^2]^v: t mod 2^(beta+1),
    # u mod 2^beta (halved when alpha=beta), v mod 2^(beta-1)
    g = build(GroupSpec(2, 1))
    lat = g._square_basis_lattice()
    assert lat.pivots == (4, 2, 1)
    g = build(GroupSpec(3, 2))
    assert g._square_basis_lattice().pivots == (8, 4, 2)
    g = build(GroupSpec(2, 2))
    assert g._square_basis_lattice().pivots == (8, 2, 2)


def test_square_commutator_basis_is_a_bijection():
    g = build(GroupSpec(3, 2))
    seen = {g.to_square_basis(x) for x in g.elements()}
    assert len(seen) == g.order


def test_vectorized_arithmetic_matches_scalar():
    g = K(3, 3, 1)
    rng = random.Random(3)
    elems = list(g.elements())
    X = [elems[rng.randrange(len(elems))] for _ in range(200)]
    Y = [elems[rng.randrange(len(elems))] for _ in range(200)]
    prod = g.mul_arrays(np.array(X), np.array(Y))
    inv = g.inv_arrays(np.array(X))
    for i in range(200):
        assert tuple(prod[i].tolist()) == g.mul(X[i], Y[i])
        assert tuple(inv[i].tolist()) == g.inverse(X[i])


def test_membership_congruences_for_general_type_subgroup():
    # inside the killed-power group with alpha=beta, the subgroup generated by
    # [a,b]^(2^(alpha+sigma-gamma)) [a,b,b]^(-2^sigma) and [a,b,a]^(2^sigma)
    # is cut out by: r = s = 0, u = v = 0 mod 2^sigma,
    # t + 2^(alpha-gamma) v = 0 mod 2^alpha
    for alpha, gamma, sigma in [(3, 2, 1), (3, 1, 0)]:
        g = K(alpha, alpha, gamma)
        n1 = hall.mul(
            hall.power(hall.C, 1 << (alpha + sigma - gamma)),
            hall.power(hall.E, -(1 << sigma)),
        )
        n2 = hall.power(hall.D, 1 << sigma)
        from capable2.lattice import canonical_basis

        lat_n = canonical_basis(
            g.comm_lattice.rows + (n1.comm_coords(), n2.comm_coords())
        )
        mism = 0
        for x in g.elements():
            r, s, t, u, v = x
            in_n = r == 0 and s == 0 and lat_n.contains((t, u, v))
            cong = (
                r % (1 << alpha) == 0
                and s % (1 << alpha) == 0
                and u % (1 << sigma) == 0
                and v % (1 << sigma) == 0
                and (t + (1 << (alpha - gamma)) * v) % (1 << alpha) == 0
            )
            mism += in_n != cong
        assert mism == 0


def test_membership_congruences_for_halved_step_subgroup():
    # in the plain (beta+1, beta) product, in square-commutator coordinates,
    # the order-two subgroup N satisfies: r = 0 mod 2^(beta+1), s = 0 mod
    # 2^beta, u = v = 0 mod 2^(beta-1), t + 2u = 0 mod 2^(beta+1)
    for beta in (1, 2):
        g = build(GroupSpec(beta + 1, beta))
        w = hall.mul(
            hall.power(hall.A, 1 << beta), hall.power(hall.C, -(1 << (beta - 1)))
        )
        n1 = g.reduce(hall.commutator(w, hall.A))
        n2 = g.reduce(hall.commutator(w, hall.B))
        nset = g.subgroup_closure([n1, n2])
        assert len(nset) == 2  # central and cyclic of order two
        assert n2 in {n1, g.inverse(n1)}
        mods = (1 << (beta + 1), 1 << beta, 1 << (beta + 1), 1 << (beta - 1), 1 << (beta - 1))
        for x in g.elements():
            r, s, t, u, v = g.to_square_basis(x)
            cong = (
                r % mods[0] == 0
                and s % mods[1] == 0
                and u % mods[3] == 0
                and v % mods[4] == 0
                and (t + 2 * u) % mods[2] == 0
            )
            assert (x in nset) == cong


def test_normal_form_uniqueness_closure():
    # enumerate every boxed tuple: the box has exactly the declared order and
    # the full multiplication table over it is a Latin square (closure plus
    # both cancellation laws), checked completely for orders up to 2^10
    for g in [build(GroupSpec(2, 1)), K(2, 2, 1), build(GroupSpec(2, 2)), K(3, 3, 1)]:
        elems = list(g.elements())
        assert len(elems) == g.order == len(set(elems))
        if g.order > 1 << 10:
            continue
        coords = oracle.GroupTable.from_group(g).coords
        prod = g.mul_arrays(coords[:, None, :], coords[None, :, :])
        keys = g.key_rows(prod)
        expect = np.arange(g.order)
        assert (np.sort(keys, axis=1) == expect).all()  # rows: left cancellation
        assert (np.sort(keys, axis=0) == expect[:, None]).all()  # columns


def test_order_formula_up_to_two_to_the_fourteen():
    # |G(a,b)| = 2^(a+4b), minus one in the exponent when a = b; the build
    # recomputes the count from the lattice and must reproduce the formula
    for alpha in range(1, 11):
        for beta in range(1, alpha + 1):
            if alpha + 4 * beta > 14:
                continue
            g = build(GroupSpec(alpha, beta))
            assert g.order == 1 << (alpha + 4 * beta - (1 if alpha == beta else 0))
