"""Word collection, tables, brute-force subgroup machinery, isomorphism search."""

import random

import numpy as np
import pytest

from capable2 import class2, hall_core as hall, nilprod, oracle
from capable2.class2 import model, type_i, type_iii
from capable2.hall_core import FreeElt
from capable2.nilprod import GroupSpec, build


def rand_elt(rng, rst=4, uv=2):
    return FreeElt(
        *(rng.randint(-rst, rst) for _ in range(3)),
        *(rng.randint(-uv, uv) for _ in range(2)),
    )


# -- word collection ---------------------------------------------------------


def test_collect_word_examples():
    assert oracle.collect_word("ab").coords() == (1, 1, 0, 0, 0)
    assert oracle.collect_word("ba").coords() == (1, 1, -1, 0, 0)
    assert oracle.collect_word("ABab").coords() == (0, 0, 1, 0, 0)
    assert oracle.collect_word("").is_identity()
    assert oracle.collect_word("aA").is_identity()


def test_collect_word_accepts_letter_exponent_pairs():
    assert oracle.collect_word([("a", 3), ("b", -2)]).coords() == (3, -2, 0, 0, 0)


def test_round_trip_ten_thousand_random_elements():
    rng = random.Random(0)
    for _ in range(10_000):
        x = rand_elt(rng)
        assert oracle.collect_word(oracle.word_of(x)) == x


def test_round_trip_with_commutators_expanded_to_generator_letters():
    rng = random.Random(1)
    for _ in range(500):
        x = rand_elt(rng, rst=2, uv=1)
        word = oracle.word_of(x, expand_commutators=True)
        assert all(sym in "ab" for sym, _ in word)
        assert oracle.collect_word(word) == x


def test_multiplication_agrees_with_collection_on_ten_thousand_pairs():
    rng = random.Random(2)
    for _ in range(10_000):
        x, y = rand_elt(rng), rand_elt(rng)
        assert hall.mul(x, y) == oracle.collect_word(
            oracle.word_of(x) + oracle.word_of(y)
        )


# -- tables -------------------------------------------------------------------


def test_enumeration_bound():
    g = build(GroupSpec(3, 3))
    with pytest.raises(oracle.EnumerationBudgetError):
        oracle.GroupTable.from_group(g, max_order=1 << 10)
    t = oracle.GroupTable.from_group(g)  # default bound 2^16 admits 2^14
    assert t.order == g.order


def test_table_counts():
    assert oracle.enumerate_group(build(GroupSpec(1, 1))).order == 16
    assert oracle.enumerate_group(model(type_iii(1))).order == 8
    assert oracle.enumerate_group(model(type_i(1, 1, 1))).order == 8


def test_tables_are_deterministic():
    g = build(GroupSpec(2, 1))
    t1 = oracle.GroupTable.from_group(g)
    t2 = oracle.GroupTable.from_group(build(GroupSpec(2, 1)))
    assert np.array_equal(t1.coords, t2.coords)
    assert np.array_equal(t1.keys, t2.keys)


def test_order_exponent_rows():
    g = build(GroupSpec(2, 1))
    t = oracle.GroupTable.from_group(g)
    exps = oracle.order_exponent_rows(g, t.coords)
    for row, e in zip(t.coords.tolist(), exps.tolist()):
        assert g.order_of(tuple(row)) == 1 << e


# -- subgroup machinery --------------------------------------------------------


def test_brute_center_examples():
    g = build(GroupSpec(1, 1))
    t = oracle.GroupTable.from_group(g)
    assert len(oracle.brute_center(t)) == 2
    q8 = model(type_iii(1))
    tq = oracle.GroupTable.from_group(q8)
    zc = oracle.brute_center(tq)
    assert {tuple(r) for r in zc.tolist()} == {(0, 0, 0), (2, 0, 0)}


def test_brute_center_of_abelian_table_is_everything():
    d4 = model(type_i(1, 1, 1))
    t = oracle.GroupTable.from_group(d4)
    q = oracle.quotient_central(t, oracle.brute_center(t))  # 2x2 abelian
    assert len(oracle.brute_center(q)) == q.order == 4


def test_closure_examples():
    g = build(GroupSpec(2, 1))
    t = oracle.GroupTable.from_group(g)
    assert len(oracle.closure(t, [g.identity])) == 1
    assert len(oracle.closure(t, [g.a])) == 4
    assert len(oracle.closure(t, [g.a, g.b])) == 64


def test_quotient_central_examples():
    g = build(GroupSpec(1, 1))
    t = oracle.GroupTable.from_group(g)
    q = oracle.quotient_central(t, oracle.brute_center(t))
    assert q.order == 8
    assert q.group.order_of(q.group.gens[0]) in (2, 4)


def test_quotient_rejects_noncentral_subgroup():
    g = build(GroupSpec(1, 1))
    t = oracle.GroupTable.from_group(g)
    c = g.reduce(hall.C)
    sub = oracle.closure(t, [c])
    with pytest.raises(ValueError, match="not central"):
        oracle.quotient_central(t, sub)


def test_quotient_group_scalar_ops_consistent():
    g = build(GroupSpec(2, 1))
    t = oracle.GroupTable.from_group(g)
    q = oracle.quotient_central(t, oracle.brute_center(t))
    qg = q.group
    elems = [tuple(r) for r in q.coords.tolist()]
    rng = random.Random(3)
    for _ in range(200):
        x = elems[rng.randrange(len(elems))]
        y = elems[rng.randrange(len(elems))]
        assert qg.mul(x, y) in set(elems)
        assert qg.mul(qg.inverse(x), x) == qg.identity


def test_lower_central_series():
    t = oracle.GroupTable.from_group(build(GroupSpec(2, 1)))
    assert [len(s) for s in oracle.lcs(t)] == [64, 8, 4, 1]
    t2 = oracle.GroupTable.from_group(model(type_i(2, 2, 1)))
    assert [len(s) for s in oracle.lcs(t2)] == [32, 2, 1]


# -- isomorphism search ---------------------------------------------------------


def test_iso_found_for_the_central_quotient_of_the_small_product():
    g = build(GroupSpec(1, 1))
    t = oracle.GroupTable.from_group(g)
    q = oracle.quotient_central(t, oracle.brute_center(t))
    assert oracle.iso_2gen(q, model(type_i(1, 1, 1))) is not None


def test_iso_rejects_dihedral_vs_quaternion():
    t = oracle.GroupTable.from_group(model(type_i(1, 1, 1)))
    assert oracle.iso_2gen(t, model(type_iii(1))) is None


def test_iso_identity_mapping_found():
    for p in [type_i(2, 2, 1), type_iii(1)]:
        m = model(p)
        t = oracle.GroupTable.from_group(m)
        assert oracle.iso_2gen(t, m) is not None


def test_iso_success_is_symmetric():
    g111 = build(GroupSpec(1, 1)).central_quotient()
    assert str(g111) == "i(1,1,1)"
    m1 = model(type_i(2, 2, 2))
    m2 = model(type_i(2, 2, 2))
    t1 = oracle.GroupTable.from_group(m1)
    t2 = oracle.GroupTable.from_group(m2)
    assert oracle.iso_2gen(t1, m2) is not None
    assert oracle.iso_2gen(t2, m1) is not None
    # and failure is symmetric on the standard order-8 pair
    td = oracle.GroupTable.from_group(model(type_i(1, 1, 1)))
    tq = oracle.GroupTable.from_group(model(type_iii(1)))
    assert oracle.iso_2gen(td, model(type_iii(1))) is None
    assert oracle.iso_2gen(tq, model(type_i(1, 1, 1))) is None


def test_iso_mapped_images_satisfy_relations():
    g = build(GroupSpec(3, 2))
    t = oracle.GroupTable.from_group(g)
    q = oracle.quotient_central(t, oracle.brute_center(t))
    target = model(type_i(3, 2, 2))
    iso = oracle.iso_2gen(q, target)
    assert iso is not None
    qg = q.group
    img = {"a": iso[0], "b": iso[1], "c": qg.commutator(iso[0], iso[1])}
    for lhs, rhs in target.relations():
        assert class2.evaluate_word(qg, img, lhs) == class2.evaluate_word(qg, img, rhs)
