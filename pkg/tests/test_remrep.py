import numpy as np
import pytest

from sodforge.constructions import sod_power2, sod_section4, sylvester_hadamard, SECTION4_EQUATING
from sodforge.design import DesignMatrix, equate_variables
from sodforge.remrep import (
    COMPLEX_REMREP,
    Remrep,
    RemrepError,
    canonical_remrep_S,
    canonical_remrep_Sprime,
    cod_to_od,
    expand_sod,
    is_hadamard,
    remrep_by_name,
    remrep_from_images,
    validate,
)
from sodforge.signed_group import SC, SQ, SR, SignedPermMatrix, enumerate_elements
from sodforge.verify import verify_sod


@pytest.mark.parametrize("n,degree", [(3, 8), (4, 128)])
def test_canonical_remrep_S(n, degree):
    phi = canonical_remrep_S(n)
    assert phi.degree == degree
    assert validate(phi) == (True, None)


def test_canonical_remrep_Sprime():
    phi = canonical_remrep_Sprime(4)
    assert phi.degree == 128
    assert validate(phi)[0]
    s = phi.generator_images[0]
    assert (s @ s) == SignedPermMatrix.identity(128)


def test_remrep_degree_limit():
    with pytest.raises(RemrepError):
        canonical_remrep_S(5)
    with pytest.raises(RemrepError):
        canonical_remrep_Sprime(3)


def test_image_is_multiplicative():
    phi = canonical_remrep_S(3)
    els = enumerate_elements(phi.source)
    for a in els[::5]:
        for b in els[::7]:
            ab = a * b
            assert phi.image(ab.sign, ab.mask) == phi.image(a.sign, a.mask) @ phi.image(b.sign, b.mask)
    assert phi.image(-1, 0) == -SignedPermMatrix.identity(8)


def test_validate_rejects_bad_images():
    i2 = SignedPermMatrix.identity(2)
    ok, why = validate(Remrep(SC, 2, (i2,)))
    assert not ok and "g1^2" in why
    r = SignedPermMatrix((1, 0), (1, -1))
    ok, why = validate(Remrep(SQ, 2, (r, r)))
    assert not ok and "anticommute" in why


def test_complex_remrep():
    assert validate(COMPLEX_REMREP)[0]
    assert COMPLEX_REMREP.image_dense(1, 1).tolist() == [[0, -1], [1, 0]]


def test_expand_sod_power2_3():
    x = expand_sod(sod_power2(3), canonical_remrep_S(3), sylvester_hadamard(3))
    assert x.presentation == SR and x.order == 64
    assert x.claimed_type == (8,) * 8
    assert verify_sod(x).ok


def test_expand_requires_hadamard():
    with pytest.raises(ValueError):
        expand_sod(sod_power2(3), canonical_remrep_S(3), np.eye(8, dtype=int))
    assert not is_hadamard(np.eye(2))
    assert is_hadamard(sylvester_hadamard(2))


def test_expand_group_mismatch():
    with pytest.raises(RemrepError):
        expand_sod(sod_power2(3), canonical_remrep_S(4))


def test_cod_to_od_small():
    i = SC.generator(0)
    x = DesignMatrix.from_entries(SC, [[(i, 0), (SC.identity, 1)], [(SC.identity, 1), (i, 0)]], [1, 1])
    y = cod_to_od(x)
    assert y.order == 4 and y.claimed_type == (2, 2)
    assert verify_sod(y).ok
    bad = x.with_type([1, 2])
    with pytest.raises(ValueError):
        cod_to_od(bad)


def test_remrep_by_name_and_images():
    assert remrep_by_name("SC") is COMPLEX_REMREP
    assert remrep_by_name("Sprime").degree == 128
    with pytest.raises(ValueError):
        remrep_by_name("X")
    phi = remrep_from_images(SC, [[[0, -1], [1, 0]]])
    assert validate(phi)[0]


def test_section4_expansion_shape():
    x = equate_variables(sod_section4(), SECTION4_EQUATING)
    y = expand_sod(x, canonical_remrep_Sprime(4))
    assert y.order == 4096
    assert y.claimed_type == (128, 128, 128, 1152, 1152, 1408)
    assert y.is_full()
    assert (np.bincount(y.vars[0]) == np.array(y.claimed_type)).all()
