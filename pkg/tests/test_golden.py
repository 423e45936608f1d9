import pytest
from hypothesis import given
from hypothesis import strategies as st

from cut600.golden import (
    GoldenInt,
    INNER_EDGE,
    INNER_SELF,
    ONE,
    PHI,
    PHI_INV,
    QUAT_ONE,
    Quat,
    ZERO,
    g_half,
    g_mul,
    inner4,
    quat_mul,
)

coeff = st.integers(min_value=-50, max_value=50)
golden = st.builds(GoldenInt, coeff, coeff)


def test_phi_squared_is_phi_plus_one():
    assert g_mul(PHI, PHI) == GoldenInt(1, 1)


def test_multiplicative_identity():
    assert g_mul(ONE, GoldenInt(7, -3)) == GoldenInt(7, -3)


def test_phi_inverse():
    # (phi - 1) * phi = 1
    assert g_mul(PHI_INV, PHI) == ONE


@given(golden, golden)
def test_mul_commutes(p, q):
    assert g_mul(p, q) == g_mul(q, p)


@given(golden, golden, golden)
def test_mul_associates(p, q, r):
    assert g_mul(g_mul(p, q), r) == g_mul(p, g_mul(q, r))


@given(golden, golden, golden)
def test_mul_distributes(p, q, r):
    assert g_mul(p, q + r) == g_mul(p, q) + g_mul(p, r)


@given(golden)
def test_additive_inverse(p):
    assert p + (-p) == ZERO


def test_half_rejects_odd():
    with pytest.raises(ValueError):
        g_half(GoldenInt(1, 2))
    assert g_half(GoldenInt(4, -2)) == GoldenInt(2, -1)


def _quat_i():
    return Quat(ZERO, GoldenInt(2, 0), ZERO, ZERO)


def _quat_j():
    return Quat(ZERO, ZERO, GoldenInt(2, 0), ZERO)


def _quat_k():
    return Quat(ZERO, ZERO, ZERO, GoldenInt(2, 0))


def test_quat_identity():
    q = Quat(GoldenInt(1, 0), GoldenInt(1, 0), GoldenInt(1, 0), GoldenInt(1, 0))
    assert quat_mul(QUAT_ONE, q) == q
    assert quat_mul(q, QUAT_ONE) == q


def test_quat_ij_is_k():
    assert quat_mul(_quat_i(), _quat_j()) == _quat_k()


def test_quat_conjugate_is_inverse():
    q = Quat(GoldenInt(1, 0), GoldenInt(1, 0), GoldenInt(1, 0), GoldenInt(-1, 0))
    assert inner4(q, q) == INNER_SELF
    assert quat_mul(q, q.conjugate()) == QUAT_ONE


def test_quat_mul_rejects_unscaled_inputs():
    bad = Quat(ONE, ZERO, ZERO, ZERO)  # norm 1, not a 2x-scaled vertex
    with pytest.raises(ValueError):
        quat_mul(bad, bad)


def test_inner4_examples():
    unit = Quat(GoldenInt(2, 0), ZERO, ZERO, ZERO)
    half = Quat(ONE, ONE, ONE, ONE)
    assert inner4(unit, half) == GoldenInt(2, 0)
    assert inner4(unit, unit) == INNER_SELF


def test_vertices_closed_under_product(model):
    # the 120 vertices form a group: all 14400 pairwise products are vertices
    vset = set(model.vertices)
    assert QUAT_ONE in vset
    for p in model.vertices:
        assert p.conjugate() in vset  # inverses
    # closure is certified by the multiplication table built without error;
    # spot-check it against the scalar arithmetic
    for i in range(0, 120, 7):
        for j in range(0, 120, 11):
            prod = quat_mul(model.vertices[i], model.vertices[j])
            assert model.vertices[int(model.mult[i, j])] == prod


def test_edge_inner_product_count(model):
    # 720 unordered pairs at inner product 2*phi: exactly the edges
    count = 0
    for i in range(120):
        for j in range(i + 1, 120):
            if inner4(model.vertices[i], model.vertices[j]) == INNER_EDGE:
                count += 1
    assert count == 720


def test_distinct_vertex_inner_values(model):
    allowed = {
        (4, 0), (-4, 0), (0, 2), (0, -2), (2, 0), (-2, 0),
        (-2, 2), (2, -2), (0, 0),
    }
    seen = set()
    for i in range(0, 120, 3):
        for j in range(120):
            if i == j:
                continue
            v = inner4(model.vertices[i], model.vertices[j])
            seen.add((v.a, v.b))
    assert seen <= allowed - {(4, 0)}


@given(golden, golden)
def test_inner4_bilinear_symmetric(p, q):
    a = Quat(p, q, ZERO, ONE)
    b = Quat(q, p, ONE, ZERO)
    assert inner4(a, b) == inner4(b, a)
