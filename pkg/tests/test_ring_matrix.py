import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sodforge.constructions import hadamard_design, hurwitz_radon_design, sod_power2
from sodforge.design import (
    DesignMatrix,
    apply_equivalence,
    conj_transpose,
    equate_variables,
    variable_counts_per_row,
)
from sodforge.formats import (
    design_from_json,
    design_to_json,
    dumps_design,
    dumps_design_json,
    load_design,
    loads_design,
    parse_entry,
)
from sodforge.ring import RingElement, diagonal_form, monomial
from sodforge.signed_group import SC, SQ, SR, clifford_group
from sodforge.verify import (
    default_prime,
    gram,
    gram_certificates,
    is_prime,
    sqrt_minus_one,
    verify,
    verify_scalar_randomized,
    verify_sod,
)

OD2 = DesignMatrix.from_entries(SR, [[(1, 0, 0), (1, 0, 1)], [(-1, 0, 1), (1, 0, 0)]], [1, 1])


def ring_elements(p, monos=((), (0,), (1,))):
    term = st.tuples(
        st.integers(0, p.order - 1),
        st.sampled_from(monos),
        st.integers(-3, 3),
    )

    def build(ts):
        out = {}
        for mask, mono, c in ts:
            key = (mask, monomial(*mono))
            out[key] = out.get(key, 0) + c
        return RingElement(p, out)

    return st.lists(term, max_size=4).map(build)


@pytest.mark.parametrize("p", [SR, SC, SQ], ids=lambda p: p.name)
def test_ring_axioms(p):
    # c stays constant so triple products remain within degree 2
    @given(ring_elements(p), ring_elements(p), ring_elements(p, ((),)))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a - a == 0
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert (a * b).conjugate() == b.conjugate() * a.conjugate()
        assert a.conjugate().conjugate() == a

    check()


def test_ring_degree_guard():
    x = RingElement.term(SR.identity, monomial(0))
    with pytest.raises(ValueError):
        x * x * x


def test_quaternion_fixture_gram(quaternion_path):
    x = load_design(quaternion_path)
    assert x.presentation == SQ and x.claimed_type == (1, 1, 2)
    g = gram(x)
    assert g[0][0] == diagonal_form(SQ, [1, 1, 2])
    assert str(g[0][0]) == "x1^2+x2^2+2*x3^2"
    for a in range(4):
        for b in range(4):
            if a != b:
                assert g[a][b] == 0
    assert verify_sod(x, both_sides=True).ok


def test_quaternion_partial_product_cancels():
    # two terms of the (1,3) Gram entry are j x1 x3 and -j x1 x3
    x = load_design(__import__("conftest").DATA / "paper-quaternion.design")
    t1 = x.ring_entry(0, 0) * x.ring_entry(2, 0).conjugate()
    t3 = x.ring_entry(0, 2) * x.ring_entry(2, 2).conjugate()
    assert t1 == -t3
    assert str(t1) == "g1*x1*x3"


def test_od2_and_failure_certificate():
    assert verify_sod(OD2).ok
    bad = OD2.replace_entries(signs=np.array([[1, 1], [1, 1]], dtype=np.int8))
    res = verify_sod(bad, method="ring")
    assert not res.ok and res.certificate is not None
    assert (res.certificate.row, res.certificate.col) == (0, 1)
    assert res.certificate.residual == RingElement(SR, {(0, monomial(0, 1)): 2})
    assert not verify_sod(bad, method="dense").ok
    assert len(gram_certificates(bad)) == 1


def test_wrong_claimed_type_fails():
    assert not verify_sod(OD2.with_type([1, 2])).ok


@pytest.mark.parametrize("n", [3, 4])
def test_dense_and_ring_agree(n):
    x = sod_power2(n)
    assert verify_sod(x, method="ring").ok
    with pytest.raises(ValueError):
        verify_sod(x, method="dense")
    h = hurwitz_radon_design(3)
    assert verify_sod(h, method="ring").ok == verify_sod(h, method="dense").ok is True


def test_randomized_route():
    assert is_prime(default_prime(False)) and default_prime(False) > 1 << 30
    p = default_prime(True)
    assert p % 4 == 1 and p > 1 << 30
    i = sqrt_minus_one(p)
    assert i * i % p == p - 1
    x = hurwitz_radon_design(4)
    assert verify_scalar_randomized(x, seed=1).ok
    s = x.signs.copy()
    s[3, 3] = -s[3, 3]
    broken = x.replace_entries(signs=s)
    assert verify_sod(x).ok and not verify_sod(broken).ok
    res = verify_scalar_randomized(broken, seed=1)
    assert not res.ok
    with pytest.raises(ValueError):
        verify_scalar_randomized(x, prime=1 << 20)


def test_randomized_complex():
    i = SC.generator(0)
    x = DesignMatrix.from_entries(SC, [[(i, 0), (SC.identity, 1)], [(SC.identity, 1), (i, 0)]], [1, 1])
    assert verify_sod(x).ok
    assert verify_scalar_randomized(x, seed=3).ok
    assert verify(x, mode="randomized", seed=3, both_sides=True).ok


def test_verify_auto_modes():
    assert verify(OD2).method == "dense"
    assert verify(OD2, mode="randomized", seed=0).method == "randomized"
    with pytest.raises(ValueError):
        verify(OD2, mode="bogus")


def test_equate_variables():
    x = sod_power2(3)
    y = equate_variables(x, [[0, 1], [2, 3, 4, 5, 6, 7]])
    assert y.claimed_type == (2, 6)
    assert verify_sod(y).ok
    with pytest.raises(ValueError):
        equate_variables(x, [[0, 1]])


@given(st.data())
def test_equivalence_preserves_orthogonality(data):
    x = hurwitz_radon_design(2)
    n = x.order
    rp = data.draw(st.permutations(range(n)))
    cp = data.draw(st.permutations(range(n)))
    scales = data.draw(st.lists(st.sampled_from((1, -1)), min_size=2 * n, max_size=2 * n))
    y = apply_equivalence(
        x, rp, cp, [SR.element(s) for s in scales[:n]], [SR.element(s) for s in scales[n:]]
    )
    assert verify_sod(y).ok


@given(st.data())
def test_equivalence_over_clifford_group(data):
    x = sod_power2(3)
    p = x.presentation
    n = x.order
    rs = [p.element(data.draw(st.sampled_from((1, -1))), data.draw(st.integers(0, p.order - 1))) for _ in range(n)]
    rp = data.draw(st.permutations(range(n)))
    y = apply_equivalence(x, row_perm=rp, row_scales=rs)
    assert verify_sod(y).ok


def test_conj_transpose_involution():
    x = sod_power2(3)
    assert conj_transpose(conj_transpose(x)) == x
    assert verify_sod(x, both_sides=True).ok


def test_variable_counts():
    c = variable_counts_per_row(load_design(__import__("conftest").DATA / "paper-quaternion.design"))
    assert c.tolist() == [[1, 1, 2]] * 4


@pytest.mark.parametrize(
    "x", [OD2, sod_power2(3), hadamard_design(2), hurwitz_radon_design(3)], ids=["od2", "s3", "h4", "hr8"]
)
def test_roundtrip(x):
    assert loads_design(dumps_design(x)) == x
    assert loads_design(dumps_design_json(x)) == x
    assert design_from_json(design_to_json(x)) == x
    assert dumps_design(loads_design(dumps_design(x))) == dumps_design(x)


def test_format_errors():
    with pytest.raises(ValueError):
        loads_design("order 2; vars 1; group SR; type 1\n+x1,0\n")
    with pytest.raises(ValueError):
        loads_design("order 2; vars 1; group SR; type 1\n+x1,0,0\n0,+x1\n")
    with pytest.raises(ValueError):
        parse_entry("+q1*x1", SQ)
    assert parse_entry("-g2g1*x3", SQ) == (1, 3, 2)


def test_from_entries_validation():
    with pytest.raises(ValueError):
        DesignMatrix.from_entries(SR, [[(1, 0, 2)]], [1, 1])
    big = clifford_group(3)
    with pytest.raises(ValueError):
        DesignMatrix.from_entries(big, [[(1, 1 << 9, 0)]], [1])


def test_random_sod_randomized_agrees_with_exact():
    rng = random.Random(7)
    for _ in range(5):
        x = hurwitz_radon_design(3)
        flip = rng.randrange(8), rng.randrange(8)
        s = x.signs.copy()
        s[flip] = -s[flip]
        y = x.replace_entries(signs=s)
        assert verify_sod(y).ok == verify_scalar_randomized(y, seed=rng.randrange(1000)).ok
