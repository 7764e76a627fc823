import random

import numpy as np
import pytest

from sodforge.cod_family import (
    CirculantRow,
    build_EF,
    circ_multiply,
    expand_rows,
    expanded_length,
    expected_form,
    hermitian_split,
    omega_set,
    pipeline_type,
    plug_into_od,
    theorem_s2_pipeline,
    verify_EF_identity,
)
from sodforge.design import DesignMatrix
from sodforge.golay import EXAMPLE_A8, EXAMPLE_B8, EXAMPLE_C11, EXAMPLE_D11, GolayPair, Sequence, catalog_pair
from sodforge.ring import RingElement, monomial
from sodforge.signed_group import SC, SR
from sodforge.verify import verify_sod

NAMES = ["y", "z", "x"]
PAIR8 = GolayPair(Sequence.parse(EXAMPLE_A8), Sequence.parse(EXAMPLE_B8), "real")
PAIR11 = GolayPair(Sequence.parse(EXAMPLE_C11), Sequence.parse(EXAMPLE_D11), "complex")

E3 = "y,x,ix,-x,x,-x,ix,-ix,-x,ix,ix,x,-z,-z,-z,z,-z,-z,z,-z,-x,ix,ix,x,-ix,ix,x,-x,x,ix,-x"
E3_PRIME = "y," + ",".join(["0"] * 11) + ",-z,0,-z,0,0,-z,0,-z," + ",".join(["0"] * 11)
E3_SECOND = (
    "0,ix,-x,-ix,ix,-ix,-x,x,-ix,-x,-x,ix,0,-iz,0,iz,-iz,0,iz,0,"
    "-ix,-x,-x,ix,x,-x,ix,-ix,ix,-x,-ix"
)


def random_row(rng, m, nvars=2):
    ents = []
    for _ in range(m):
        if rng.random() < 0.3:
            ents.append(RingElement.zero(SC))
        else:
            ents.append(RingElement(SC, {(rng.randrange(2), monomial(rng.randrange(nvars))): rng.choice((1, -1))}))
    return CirculantRow(tuple(ents))


def dense_product(a, b):
    da, db = a.to_dense(), b.to_dense()
    m = len(da)
    return [[sum((da[r][k] * db[k][c] for k in range(m)), RingElement.zero(SC)) for c in range(m)] for r in range(m)]


@pytest.mark.parametrize("seed", range(6))
def test_convolution_matches_dense(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 8)
    a, b = random_row(rng, m), random_row(rng, m)
    assert circ_multiply(a, b).to_dense() == dense_product(a, b)
    assert a.star.to_dense() == [[a.to_dense()[c][r].conjugate() for c in range(m)] for r in range(m)]


@pytest.mark.parametrize("seed", range(6))
def test_hermitian_split_reconstructs(seed):
    rng = random.Random(seed)
    g = random_row(rng, rng.randint(1, 8))
    g2 = g + g  # even coefficients survive halving
    p, q = hermitian_split(g2)
    assert p.is_hermitian() and q.is_hermitian()
    assert p - q.times_i() == g2


def test_split_rejects_odd():
    g = CirculantRow.from_sequence(Sequence.parse("1,i,0"))
    with pytest.raises(ValueError):
        hermitian_split(g)


def test_real_palindrome_has_no_second_part():
    g = CirculantRow.from_sequence(Sequence.parse("1,-1,-1"))
    assert g.is_hermitian()
    _, q = hermitian_split(g)
    assert q.is_zero()


def test_build_EF_small():
    e, f = build_EF(catalog_pair(2), [], 3)
    assert len(e) == 2 and expanded_length(e) == 3
    es, fs = expand_rows(e, f)
    assert es[0].format(NAMES) == "y,z,z"
    assert es[1].format(NAMES) == "y,-z,-z"
    with pytest.raises(ValueError):
        build_EF(catalog_pair(2), [PAIR11], 3)


def test_build_EF_order31_example():
    e, f = build_EF(PAIR8, [PAIR11], 4)
    assert len(e) == 4 and expanded_length(e) == 31
    es, fs = expand_rows(e, f)
    c = Sequence.parse(EXAMPLE_C11)
    # E_2 = circ(y, -xC, zA, -xC_R)
    assert es[1].entries[1:12] == CirculantRow.from_sequence((-c).with_variable(2)).entries
    assert es[2].format(NAMES) == E3
    p, q = hermitian_split(es[2])
    assert p.format(NAMES) == E3_PRIME
    assert q.format(NAMES) == E3_SECOND


def test_omega_order31_example():
    om = omega_set(4, PAIR8, [PAIR11])
    assert len(om.members) == 16 and om.m == 31
    assert all(w.is_hermitian() for w in om.members)
    assert om.expected() == expected_form(16, 8, [11])
    ok, total = verify_EF_identity(om.es, om.fs, 8, [11])
    assert ok and total.scalar_value() == expected_form(8, 8, [11])


def test_omega_members_commute():
    om = omega_set(3, catalog_pair(2), [])
    rng = random.Random(0)
    for _ in range(5):
        a, b = rng.sample(om.members, 2)
        assert a * b == b * a


def test_ef_identity_detects_corruption():
    e, f = build_EF(catalog_pair(2), [], 3)
    es, fs = expand_rows(e, f)
    ents = list(es[0].entries)
    ents[1] = -ents[1] if ents[1] else ents[1]
    ents[2] = ents[0]
    bad = [CirculantRow(tuple(ents))] + es[1:]
    assert not verify_EF_identity(bad, fs, 2, [])[0]


def test_plug_passthrough():
    od2 = DesignMatrix.from_entries(SR, [[(1, 0, 0), (1, 0, 1)], [(-1, 0, 1), (1, 0, 0)]], [1, 1])
    y = CirculantRow((RingElement(SC, {(0, monomial(0)): 1}),))
    z = CirculantRow((RingElement(SC, {(0, monomial(1)): 1}),))
    cod = plug_into_od(od2, [y, z])
    assert cod.presentation == SC and cod.claimed_type == (1, 1)
    assert verify_sod(cod).ok


def test_plug_rejects_bad_input():
    od2 = DesignMatrix.from_entries(SR, [[(1, 0, 0), (1, 0, 1)], [(-1, 0, 1), (1, 0, 0)]], [1, 1])
    y = CirculantRow((RingElement(SC, {(0, monomial(0)): 1}),))
    with pytest.raises(ValueError):
        plug_into_od(od2, [y])
    with pytest.raises(ValueError):
        plug_into_od(od2.with_type([1, 2]), [y, y])


def test_pipeline_n3():
    res = theorem_s2_pipeline(3, catalog_pair(2), [])
    assert res.order == 192 and res.claimed_type == (64, 128)
    assert res.cod is not None and res.cod.claimed_type == (64, 128)
    assert verify_sod(res.cod).ok


def test_pipeline_n4_components_only():
    res = theorem_s2_pipeline(4, PAIR8, [PAIR11])
    assert res.cod is None
    assert res.order == 63488 and res.claimed_type == (2048, 16384, 45056)
    assert sum(res.claimed_type) == res.order
    assert pipeline_type(4, 8, [11]) == res.claimed_type
