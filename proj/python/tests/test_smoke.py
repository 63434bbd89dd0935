import pytest

import resatlas


def test_d4_format():
    fmt = resatlas.derive_ranks([1, 4, 4, 1])
    assert fmt["valid"]
    assert fmt["pqr"] == (2, 2, 2)
    assert resatlas.classify(2, 2, 2)["dynkin"] == "D4"


def test_invalid_format_is_data():
    fmt = resatlas.derive_ranks([1, 1, 1, 1])
    assert not fmt["valid"]
    assert "r_2" in fmt["diagnosis"]


def test_roots_and_defect():
    roots = resatlas.positive_roots(3, 3, 2)
    assert len(roots) == 36
    assert all(mult == 1 for _, mult in roots)
    assert resatlas.defect_dims(2, 2, 3, 2) == [12, 1]


def test_weights():
    assert resatlas.kostant_weights(2, 2, 2, 0) == [[0, 0, 0, 0]]
    assert resatlas.dot_action(2, 2, 3, ["z1", "u"], [0] * 5) == [0, 1, 1, -3, 2]
    assert resatlas.schur_dim([2, 2, 1, 1, 0, 0]) == 189


def _dim_oracle(w):
    num, den = 1, 1
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            num *= w[i] - w[j] + j - i
            den *= j - i
    return num // den


def test_big_dimensions_are_python_ints():
    w = [300, 250, 200, 150, 100, 50, 0, 0, 0, 0]
    dim = resatlas.schur_dim(w)
    assert dim > 2**63
    assert dim == _dim_oracle(w)


def test_ra_component():
    f3, f2, f1, f0 = resatlas.ra_component([1, 4, 4, 1], a=1)
    assert (f3, f2, f1, f0) == ([1], [0, 0, 0, -1], [0, 0, 0, 0], [0])
    assert resatlas.rspec_lambda([1, 4, 4, 1], a=2, b=3, beta=[4, 1]) == [1, 3, 3, 2]


def test_complexes():
    ok, ranks = resatlas.verify_atype_family(2)
    assert ok and ranks == [1, 2, 2]
    ok, ranks = resatlas.verify_monomial(3)
    assert ok and ranks == [1, 5, 1]
    assert resatlas.d4_relation_holds()


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        resatlas.classify(1, 2, 2)
    with pytest.raises(ValueError):
        resatlas.verify_monomial(1)


def test_single_acceptance_check():
    (row,) = resatlas.acceptance(only=11)
    assert row["pass"] and row["name"] == "monomial family"
