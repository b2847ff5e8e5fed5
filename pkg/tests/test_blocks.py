"""p-block partitions, defect groups, and the Brauer correspondence."""

import pytest

from indres.catalog import build
from indres.chartab import character_table
from indres.blocks import (
    Block,
    ModularReduction,
    block_partition,
    defect_group,
    omega_values,
    some_defect_group_inside,
)
from indres.correspondence import correspondent_of, make_instance, table_for
from indres.groupcore import sylow_subgroup, v_p


def degrees_by_block(table, p, **kw):
    return sorted(
        (b.defect, sorted(table.degrees[i] for i in b.char_indices))
        for b in block_partition(table, p, **kw)
    )


def test_s4_single_2_block():
    t = character_table(build("S4"))
    blocks = block_partition(t, 2)
    assert len(blocks) == 1
    assert blocks[0].defect == 3
    assert blocks[0].principal
    assert sorted(blocks[0].char_indices) == [0, 1, 2, 3, 4]


def test_s5_2_blocks_frozen():
    t = character_table(build("S5"))
    assert degrees_by_block(t, 2) == [
        (1, [4, 4]),
        (3, [1, 1, 5, 5, 6]),
    ]


def test_a5_2_blocks_frozen():
    t = character_table(build("A5"))
    assert degrees_by_block(t, 2) == [
        (0, [4]),
        (2, [1, 3, 3, 5]),
    ]


def test_sl2_3_at_3_frozen():
    t = character_table(build("SL2_3"))
    assert degrees_by_block(t, 3) == [
        (0, [3]),
        (1, [1, 1, 1]),
        (1, [2, 2, 2]),
    ]


def test_exactly_one_principal_block():
    for name, p in [("S4", 2), ("S5", 2), ("A5", 2), ("SL2_3", 3), ("S4", 3)]:
        blocks = block_partition(character_table(build(name)), p)
        assert sum(1 for b in blocks if b.principal) == 1


def test_blocks_partition_the_rows():
    t = character_table(build("S6"))
    for p in (2, 3, 5):
        blocks = block_partition(t, p)
        seen = sorted(i for b in blocks for i in b.char_indices)
        assert seen == list(range(t.k))


def test_defect_formula():
    # block defect is max over its rows of v_p(|G|) - v_p(deg)
    for name, p in [("S5", 2), ("S6", 3), ("A5", 2), ("SL2_3", 2)]:
        t = character_table(build(name))
        a = v_p(t.group_order, p)
        for b in block_partition(t, p):
            assert b.defect == max(
                a - v_p(t.degrees[i], p) for i in b.char_indices
            )


def test_defect_zero_blocks_are_singletons():
    t = character_table(build("A5"))
    for b in block_partition(t, 2):
        if b.defect == 0:
            assert len(b.char_indices) == 1


def test_height_zero_rows():
    t = character_table(build("S4"))
    b = block_partition(t, 2)[0]
    assert sorted(b.height_zero(t, 2)) == [0, 1, 3, 4]
    assert sorted(t.degrees[i] for i in b.height_zero(t, 2)) == [1, 1, 3, 3]


def test_defect_group_orders():
    G = build("S5")
    t = character_table(G)
    orders = sorted(
        defect_group(t, b, 2).order() for b in block_partition(t, 2)
    )
    assert orders == [2, 8]


def test_principal_defect_group_is_sylow():
    for name, p in [("S4", 2), ("A5", 2), ("SL2_3", 3)]:
        G = build(name)
        t = character_table(G)
        principal = next(b for b in block_partition(t, p) if b.principal)
        D = defect_group(t, principal, p)
        P = sylow_subgroup(G, p)
        assert D.order() == P.order()


def test_some_defect_group_inside():
    G = build("S5")
    t = character_table(G)
    P = sylow_subgroup(G, 2)
    for b in block_partition(t, 2):
        # a Sylow subgroup contains a conjugate of every defect group
        assert some_defect_group_inside(t, b, 2, P)
    # a proper subgroup of order 2 cannot hold the defect-3 block's group
    C2 = next(
        S for S in [G.subgroup([g]) for g in sylow_subgroup(G, 2).generators]
        if S.order() == 2
    )
    big = next(b for b in block_partition(t, 2) if b.defect == 3)
    assert not some_defect_group_inside(t, big, 2, C2)


def test_omega_values_are_algebraic_integers():
    """Central character values lie in the cyclotomic integers: the scaled
    division inside omega_values only succeeds when they do."""
    t = character_table(build("A5"))
    for i in range(t.k):
        vals = omega_values(t, i)
        assert len(vals) == t.k
        assert vals[0].as_int() == 1


@pytest.mark.parametrize(
    "name,p,alternatives",
    [("S4", 2, (1,)), ("A5", 2, (1, 2)), ("SL2_3", 3, (1,))],
)
def test_partition_invariant_under_reduction_choice(name, p, alternatives):
    """Different splitting-field embeddings give the same block partition.

    How many embeddings exist depends on the p-regular exponent, so each
    case lists the nonzero alternatives it actually has.
    """
    t = character_table(build(name))
    base = {frozenset(b.char_indices) for b in block_partition(t, p)}
    for alternative in alternatives:
        other = {
            frozenset(b.char_indices)
            for b in block_partition(t, p, alternative=alternative)
        }
        assert other == base


def test_brauer_correspondent_a5():
    inst = make_instance(build("A5"), 2, name="A5")
    blocks = block_partition(inst.tG, 2)
    principal = next(b for b in blocks if b.principal)
    e = correspondent_of(inst, principal)
    assert e is not None
    assert e.principal
    assert e.defect == 2
    # the defect-zero block has no correspondent with defect group P
    small = next(b for b in blocks if b.defect == 0)
    assert correspondent_of(inst, small) is None


def test_brauer_correspondent_preserves_defect():
    for name, p in [("S4", 2), ("S5", 2), ("M11", 3)]:
        inst = make_instance(build(name), p, name=name)
        for b in block_partition(inst.tG, p):
            e = correspondent_of(inst, b)
            if e is not None:
                assert e.defect == b.defect == v_p(inst.P.order(), p)
