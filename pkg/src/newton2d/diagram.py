"""Newton diagrams of ideals: polygon geometry, face data (initial-ideal
decomposition, dicriticality), polygon area, and the dual fan."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import (
    Ideal,
    RootReport,
    UniPoly,
    rational_roots,
    uni_gcd_many,
)
from .errors import (
    InvalidFace,
    InvariantViolation,
    NotFiniteCodimension,
    UnitIdeal,
)


@dataclass(frozen=True)
class Face:
    """Compact edge of the polygon on the line p*alpha + q*beta = N."""

    p: int
    q: int
    N: int
    top: tuple  # (alpha, beta) endpoint with the larger beta
    bottom: tuple  # (alpha, beta) endpoint with the larger alpha

    @property
    def lattice_length(self) -> int:
        """Number of primitive lattice steps along the edge."""
        steps = (self.bottom[0] - self.top[0]) // self.q
        if self.top[0] + steps * self.q != self.bottom[0] or self.top[
            1
        ] - steps * self.p != self.bottom[1]:
            raise InvariantViolation("face endpoints off the lattice grid")
        return steps

    def value(self, point) -> int:
        return self.p * point[0] + self.q * point[1]


@dataclass(frozen=True)
class FaceData:
    """Initial-ideal decomposition along one face: the monomial part
    x^aS y^bS, the monic face polynomial, and the residual degree dS."""

    aS: int
    bS: int
    facePoly: UniPoly
    dS: int
    roots: RootReport

    @property
    def is_dicritical(self) -> bool:
        return self.dS >= 1


@dataclass(frozen=True)
class NewtonDiagram:
    vertices: tuple  # ((alpha, beta), ...) alpha strictly increasing
    faces: tuple  # Face, ordered top to bottom
    alpha0: int  # x-coordinate of the top vertex
    betaM: int  # y-coordinate of the bottom vertex

    @property
    def height(self) -> int:
        return self.vertices[0][1] - self.vertices[-1][1]

    @property
    def is_monomial(self) -> bool:
        return not self.faces


def newton_diagram(ideal: Ideal) -> NewtonDiagram:
    """Lower-left convex hull of the union of generator supports."""
    if ideal.is_unit:
        raise UnitIdeal("unit ideal has no Newton diagram")
    points = set()
    for g in ideal.generators:
        points |= g.support()

    lowest = {}
    for a, b in points:
        if a not in lowest or b < lowest[a]:
            lowest[a] = b
    stairs = []
    for a in sorted(lowest):
        b = lowest[a]
        if not stairs or b < stairs[-1][1]:
            stairs.append((a, b))

    hull = []
    for pt in stairs:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)

    faces = []
    for (a1, b1), (a2, b2) in zip(hull, hull[1:]):
        da, db = a2 - a1, b1 - b2
        step = gcd(da, db)
        p, q = db // step, da // step
        n = p * a1 + q * b1
        if p * a2 + q * b2 != n:
            raise InvariantViolation("face endpoints disagree on N")
        if any(p * a + q * b < n for a, b in points):
            raise InvariantViolation("face value is not minimal on the support")
        faces.append(Face(p, q, n, (a1, b1), (a2, b2)))

    return NewtonDiagram(
        vertices=tuple(hull),
        faces=tuple(faces),
        alpha0=hull[0][0],
        betaM=hull[-1][1],
    )


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def line_model(g, face: Face) -> UniPoly:
    """Restriction of a polynomial to the face line, written in the chart
    z = y^p / x^q anchored at the bottom endpoint: the j-th lattice point
    of the edge line, counted upward from the bottom endpoint, carries z^j.

    Zero when the support misses the line."""
    base_a, base_b = face.bottom
    coeffs = {}
    for (a, b), c in g.terms():
        if face.value((a, b)) != face.N:
            continue
        j = (base_a - a) // face.q
        if (base_a - j * face.q, base_b + j * face.p) != (a, b):
            raise InvariantViolation("support point off the lattice line")
        coeffs[j] = c
    if not coeffs:
        return UniPoly()
    if min(coeffs) < 0:
        raise InvariantViolation("support point below the bottom endpoint")
    size = max(coeffs) + 1
    return UniPoly([coeffs.get(i, Fraction(0)) for i in range(size)])


def initial_data(ideal: Ideal, face: Face) -> FaceData:
    """Decompose the initial ideal along `face` as x^aS y^bS times the face
    polynomial times an ideal of residual degree dS."""
    diagram = newton_diagram(ideal)
    if face not in diagram.faces:
        raise InvalidFace(f"{face} is not a face of the Newton diagram")

    models = [
        m for m in (line_model(g, face) for g in ideal.generators) if not m.is_zero
    ]
    if not models:
        raise InvariantViolation("no generator meets the face line")
    g = uni_gcd_many(models)
    v = g.trailing_order()
    ghat = UniPoly(g.coeffs[v:]).monic()
    e = ghat.degree
    d_s = max(m.degree - g.degree for m in models)
    base_a, base_b = face.bottom
    a_s = base_a - face.q * (v + e + d_s)
    b_s = base_b + face.p * v
    if a_s < 0 or b_s < 0:
        raise InvariantViolation("negative monomial exponent in face data")
    return FaceData(aS=a_s, bS=b_s, facePoly=ghat, dS=d_s, roots=rational_roots(ghat))


def face_data_all(ideal: Ideal):
    """FaceData for every face, top to bottom, paired with its Face."""
    diagram = newton_diagram(ideal)
    return diagram, tuple(initial_data(ideal, face) for face in diagram.faces)


def area_m(ideal: Ideal) -> Fraction:
    """Exact area between the coordinate axes and the Newton polygon."""
    diagram = newton_diagram(ideal)
    if diagram.alpha0 != 0 or diagram.betaM != 0:
        raise NotFiniteCodimension(
            "Newton polygon misses a coordinate axis; the area between the "
            "axes and the polygon is infinite"
        )
    doubled = 0
    for v, w in zip(diagram.vertices, diagram.vertices[1:]):
        doubled += v[0] * w[1] - v[1] * w[0]
    return Fraction(abs(doubled), 2)


@dataclass(frozen=True)
class Cone:
    """Two-dimensional cone of the dual fan, spanned by gen1 and gen2
    (primitive integer directions, slope-ordered), with the diagram vertex
    on which every direction in the cone attains its minimum."""

    gen1: tuple
    gen2: tuple
    vertex: tuple

    @property
    def det(self) -> int:
        return self.gen1[0] * self.gen2[1] - self.gen1[1] * self.gen2[0]


@dataclass(frozen=True)
class Ray:
    gen: tuple
    face: Face


@dataclass(frozen=True)
class DualFan:
    cones: tuple
    rays: tuple


def dual_fan(diagram: NewtonDiagram) -> DualFan:
    """Decomposition of the positive quadrant dual to the polygon: one ray
    per face direction, one 2-dimensional cone per diagram vertex."""
    directions = (
        [(1, 0)] + [(f.p, f.q) for f in diagram.faces] + [(0, 1)]
    )
    cones = tuple(
        Cone(gen1=directions[i], gen2=directions[i + 1], vertex=vertex)
        for i, vertex in enumerate(diagram.vertices)
    )
    rays = tuple(Ray(gen=(f.p, f.q), face=f) for f in diagram.faces)
    return DualFan(cones=cones, rays=rays)
