"""Exact arithmetic over the golden integer ring and quaternions built on it.

Every geometric predicate in this package reduces to an identity in
``Z[phi] = {a + b*phi : a, b in Z}`` with ``phi**2 = phi + 1``.  No floating
point value is ever consulted, so there are no tolerance parameters anywhere:
coordinate equality, vertex adjacency and symmetry membership are exact
integer statements.

Vertices of the 600-cell are stored as quaternions at twice their true
coordinates, which puts every component in the ring (the true coordinates
involve halves).  A product of two such quaternions is scaled by 4, so
:func:`quat_mul` divides the raw product by 2 and rejects inputs that were
not both vertex-scaled.

Overflow: scalar coefficients here are Python integers, so overflow is
impossible.  The vectorized int64 mirrors of these formulas live in
:mod:`cut600.model`; all coefficients reachable from vertex coordinates
(entries in ``{-2..2}``) stay within +/-8 after a ring product and within
+/-32 after a four-term quaternion component sum, microscopic against the
int64 range.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GoldenInt:
    """Element ``a + b*phi`` of the golden integer ring."""

    a: int
    b: int

    def __add__(self, other: "GoldenInt") -> "GoldenInt":
        return GoldenInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "GoldenInt") -> "GoldenInt":
        return GoldenInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "GoldenInt":
        return GoldenInt(-self.a, -self.b)

    def __mul__(self, other: "GoldenInt") -> "GoldenInt":
        return g_mul(self, other)

    def key(self) -> tuple[int, int]:
        """Coefficient pair, the sort key used for canonical orderings."""
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}*phi"


ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)
TWO = GoldenInt(2, 0)
PHI = GoldenInt(0, 1)
PHI_INV = GoldenInt(-1, 1)  # 1/phi = phi - 1, a unit of the ring


def g_mul(p: GoldenInt, q: GoldenInt) -> GoldenInt:
    """Ring product; the cross terms absorb ``phi**2 = phi + 1``."""
    return GoldenInt(p.a * q.a + p.b * q.b, p.a * q.b + p.b * q.a + p.b * q.b)


def g_half(p: GoldenInt) -> GoldenInt:
    """Exact division by 2; raises if either coefficient is odd."""
    if (p.a | p.b) & 1:
        raise ValueError(f"{p} is not divisible by 2 in the golden ring")
    return GoldenInt(p.a // 2, p.b // 2)


@dataclass(frozen=True)
class Quat:
    """Quaternion with golden-integer components, stored at 2x scale.

    A 600-cell vertex has unit circumradius, so at 2x scale
    ``inner4(v, v) == GoldenInt(4, 0)`` for every vertex ``v``.
    """

    w: GoldenInt
    x: GoldenInt
    y: GoldenInt
    z: GoldenInt

    def __neg__(self) -> "Quat":
        return Quat(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self) -> "Quat":
        return Quat(self.w, -self.x, -self.y, -self.z)

    def components(self) -> tuple[GoldenInt, GoldenInt, GoldenInt, GoldenInt]:
        return (self.w, self.x, self.y, self.z)

    def key(self) -> tuple[int, ...]:
        """Flat coefficient 8-tuple (w.a, w.b, x.a, x.b, y.a, y.b, z.a, z.b)."""
        return self.w.key() + self.x.key() + self.y.key() + self.z.key()

    def __str__(self) -> str:
        return f"({self.w}, {self.x}, {self.y}, {self.z})"


QUAT_ONE = Quat(TWO, ZERO, ZERO, ZERO)  # identity at 2x scale


def quat_mul(p: Quat, q: Quat) -> Quat:
    """Hamilton product of two 2x-scaled quaternions, rescaled back to 2x.

    The raw product is 4x-scaled; halving must be exact, otherwise the
    inputs were not both vertex-scaled quaternions and ValueError escapes
    from :func:`g_half`.
    """
    w = p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z
    x = p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y
    y = p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x
    z = p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w
    return Quat(g_half(w), g_half(x), g_half(y), g_half(z))


def inner4(p: Quat, q: Quat) -> GoldenInt:
    """Euclidean inner product of the 2x-scaled 4-vectors.

    For 600-cell vertices the value is ``(4,0)`` on the diagonal and lies in
    ``{0, +-(2,0), +-(0,2), +-(-2,2), (-4,0)}`` off it; adjacency in the
    skeleton is exactly the value ``(0,2)`` (i.e. ``2*phi``).
    """
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z


# Inner-product landmarks for vertex pairs (2x scale).
INNER_SELF = GoldenInt(4, 0)
INNER_EDGE = GoldenInt(0, 2)  # 4*cos(36 deg)
INNER_FIGURE_ANTIPODE = GoldenInt(-2, 2)  # 4*cos(72 deg); see classify
