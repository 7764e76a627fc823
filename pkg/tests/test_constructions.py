import numpy as np
import pytest

from sodforge.constructions import (
    SECTION4_EQUATING,
    check_hurwitz_radon_family,
    hadamard_design,
    hurwitz_radon_design,
    hurwitz_radon_family,
    ip_tensor_family,
    kronecker,
    rho,
    sod_power2,
    sod_section4,
    sylvester_hadamard,
)
from sodforge.design import equate_variables, variable_counts_per_row
from sodforge.signed_group import SR, SignedPermMatrix, clifford_group, clifford_group_prime
from sodforge.verify import verify_sod


@pytest.mark.parametrize(
    "n,expected",
    [(1, 1), (2, 2), (4, 4), (8, 8), (16, 9), (32, 10), (64, 12), (128, 16), (12, 4), (256, 17), (3, 1)],
)
def test_rho(n, expected):
    assert rho(n) == expected


@pytest.mark.parametrize("t,size", [(1, 2), (2, 4), (3, 8), (4, 9), (5, 10), (6, 12), (7, 16)])
def test_hurwitz_radon_family(t, size):
    fam = hurwitz_radon_family(t)
    assert len(fam) == size == rho(2**t)
    assert check_hurwitz_radon_family(fam) == []


def test_hurwitz_radon_checker_catches_problems():
    fam = hurwitz_radon_family(2)
    assert check_hurwitz_radon_family([fam[0], fam[1], fam[1]])
    assert check_hurwitz_radon_family([fam[1], fam[0]])


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_hurwitz_radon_design_is_od(t):
    x = hurwitz_radon_design(t)
    assert x.is_full() == (rho(2**t) == 2**t)
    assert verify_sod(x, both_sides=True).ok


def test_ip_family():
    fam = ip_tensor_family(3)
    assert len(fam) == 8
    total = sum(fam)
    assert np.array_equal(total, np.ones((8, 8), dtype=np.int64))
    for w, b in enumerate(fam):
        r, c = np.nonzero(b)
        assert np.array_equal(c, r ^ w)


def test_kronecker_variants():
    a = np.array([[1, 2], [3, 4]])
    assert np.array_equal(kronecker(a, np.eye(2, dtype=int)), np.kron(a, np.eye(2, dtype=int)))
    p = SignedPermMatrix((1, 0), (1, -1))
    dense = np.array(kronecker(p, p).to_dense())
    assert np.array_equal(dense, np.kron(np.array(p.to_dense()), np.array(p.to_dense())))


@pytest.mark.parametrize("t", range(0, 6))
def test_sylvester(t):
    h = sylvester_hadamard(t)
    m = 1 << t
    assert np.array_equal(h @ h.T, m * np.eye(m, dtype=np.int64))
    assert verify_sod(hadamard_design(t)).ok


@pytest.mark.parametrize("n", [3, 4])
def test_sod_power2(n):
    x = sod_power2(n)
    assert x.presentation == clifford_group(n)
    assert x.order == 2**n and x.claimed_type == (1,) * 2**n
    assert x.is_full()
    assert verify_sod(x, both_sides=True).ok


def test_sod_power2_rejects_small():
    with pytest.raises(ValueError):
        sod_power2(2)


def test_section4():
    x = sod_section4()
    assert x.presentation == clifford_group_prime(4)
    assert x.claimed_type == (1,) * 8 + (8, 8, 8)
    assert x.is_full()
    assert verify_sod(x).ok
    counts = variable_counts_per_row(x)
    assert (counts == np.array([1] * 8 + [8, 8, 8])).all()
    y = equate_variables(x, SECTION4_EQUATING)
    assert y.claimed_type == (1, 1, 1, 9, 9, 11)
    assert verify_sod(y).ok


def test_section4_dropping_a_block_breaks_type():
    x = sod_section4()
    assert not verify_sod(x.with_type((1,) * 8 + (8, 8, 7))).ok
