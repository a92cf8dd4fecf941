"""The Newton algorithm: Newton maps on ideals, the recursion trace with
nu-bookkeeping, depth, and good/very-good coordinate handling."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    BiPoly,
    Ideal,
    canonical_newton_map,
    depth_zero_form,
    substitute_newton,
)
from .diagram import (
    Face,
    FaceData,
    NewtonDiagram,
    face_data_all,
    initial_data,
    newton_diagram,
)
from .errors import (
    CoordinateChangeDiverged,
    InvariantViolation,
    NonRationalRoot,
    UnitIdeal,
)


@dataclass(eq=False)
class TraceNode:
    """One stage of the Newton algorithm.

    `ideal` is the full stage ideal including the extracted monomial factor
    (the diagram is computed from it); `xPower` records that common x-power
    separately for consumers that need the stripped part.  `nu` is the
    exponent of the stage differential form x^(nu-1) dx dy.  `children` maps
    (face index, root) to the next stage; `leaf` is set instead when the
    stage is a monomial times the power of a smooth branch."""

    ideal: Ideal
    xPower: int
    nu: int
    diagram: NewtonDiagram
    faceData: tuple
    children: dict = field(default_factory=dict)
    leaf: tuple = None


def apply_newton_map(ideal: Ideal, p: int, q: int, mu) -> tuple:
    """Transform the ideal by x = mu^q' x1^p, y = x1^q (y1 + mu^p') and
    split off the largest common power of x1: returns (N0, stripped ideal).
    """
    if ideal.is_unit:
        raise UnitIdeal("Newton maps act on non-trivial ideals only")
    spec = canonical_newton_map(p, q, mu)
    images = tuple(substitute_newton(g, spec) for g in ideal.generators)
    n0 = min(g.order_x() for g in images)
    stripped = Ideal(tuple(g.shift_x(-n0) for g in images))

    face, data = _matching_face(ideal, p, q)
    if data is not None:
        for root, mult in data.roots.roots:
            if root == spec.mu:
                if stripped.is_unit:
                    raise InvariantViolation(
                        "image of a face root is the unit ideal"
                    )
                if newton_diagram(stripped).height > mult:
                    raise InvariantViolation(
                        "image polygon height exceeds the root multiplicity"
                    )
                if n0 != face.N:
                    raise InvariantViolation(
                        "extracted x-power differs from the face value"
                    )
    return n0, stripped


def _matching_face(ideal: Ideal, p: int, q: int):
    diagram = newton_diagram(ideal)
    for face in diagram.faces:
        if (face.p, face.q) == (p, q):
            return face, initial_data(ideal, face)
    return None, None


def run_algorithm(ideal: Ideal, nu: int = 1) -> TraceNode:
    """Full recursion tree of the Newton algorithm.

    At each stage the smooth-power (depth-zero) test runs first; otherwise
    the stage recurses over every face and every rational root of its face
    polynomial, with the child nu equal to p*nu + q.  Dicritical faces with
    constant face polynomial contribute no children (their generic images
    are monomial).  A nonconstant rootless residual anywhere is fatal."""
    if ideal.is_unit:
        raise UnitIdeal("cannot run the Newton algorithm on the unit ideal")
    budget = 10 * max(1, max(g.total_degree() for g in ideal.generators))
    return _run(ideal, nu, budget)


def _run(ideal: Ideal, nu: int, budget: int) -> TraceNode:
    if budget < 0:
        raise InvariantViolation(
            "Newton algorithm exceeded its termination safety bound"
        )
    form = depth_zero_form(ideal)
    diagram, face_data = face_data_all(ideal)
    node = TraceNode(
        ideal=ideal,
        xPower=diagram.alpha0,
        nu=nu,
        diagram=diagram,
        faceData=face_data,
    )
    if form is not None:
        node.leaf = form
        return node

    for data in face_data:
        if not data.roots.residual.is_constant:
            raise NonRationalRoot(data.roots.residual)

    for index, (face, data) in enumerate(zip(diagram.faces, face_data)):
        for root, _mult in data.roots.roots:
            n0, stripped = apply_newton_map(ideal, face.p, face.q, root)
            child_ideal = stripped.shift_x(n0)
            child_nu = face.p * nu + face.q
            node.children[(index, root)] = _run(child_ideal, child_nu, budget - 1)
    return node


def trace_depth(node: TraceNode) -> int:
    if node.leaf is not None:
        return 0
    return 1 + max((trace_depth(c) for c in node.children.values()), default=0)


def depth(ideal: Ideal) -> int:
    """Depth of the ideal: 0 for monomial-times-smooth-power stages, else
    one more than the deepest branch (rootless dicritical branches count
    as depth 0)."""
    return trace_depth(run_algorithm(ideal))


# ---------------------------------------------------------------------------
# good / very good coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoordinateStatus:
    good: bool
    very_good: bool
    witness: Face = None


@dataclass(frozen=True)
class CoordinateChange:
    """A plane automorphism applied to reach better coordinates.

    kinds: 'shear' with parameters (mu, q) for y -> y + mu*x^q;
    'swapAxes' with no parameters; 'custom' with parameters (mu1, mu2) for
    the linear change x = (x'+y')/(mu1-mu2), y = (mu1 y' + mu2 x')/(mu1-mu2).
    """

    kind: str
    parameters: tuple


def _last_face_form(face: Face, data: FaceData) -> bool:
    """Initial ideal is principal of the shape x^k (y - mu x^q)^l."""
    return (
        data.dS == 0
        and data.bS == 0
        and face.p == 1
        and len(data.roots.roots) == 1
        and data.roots.residual.is_constant
    )


def _first_face_form(face: Face, data: FaceData) -> bool:
    """Initial ideal is principal of the shape y^k (y^p - mu x)^l."""
    return (
        data.dS == 0
        and data.aS == 0
        and face.q == 1
        and len(data.roots.roots) == 1
        and data.roots.residual.is_constant
    )


def _two_root_form(face: Face, data: FaceData) -> bool:
    """Initial ideal is principal of the shape (y-mu1 x)^l1 (y-mu2 x)^l2."""
    return (
        data.dS == 0
        and data.aS == 0
        and data.bS == 0
        and face.p == 1
        and face.q == 1
        and len(data.roots.roots) == 2
        and data.roots.residual.is_constant
    )


def coordinate_status(ideal: Ideal) -> CoordinateStatus:
    """Whether the coordinates are good / very good for the ideal: the
    special principal shapes that a linear-style change could still
    simplify must not occur on the boundary faces."""
    diagram, face_data = face_data_all(ideal)
    if not diagram.faces:
        return CoordinateStatus(good=True, very_good=True)
    last_face, last_data = diagram.faces[-1], face_data[-1]
    first_face, first_data = diagram.faces[0], face_data[0]
    if _last_face_form(last_face, last_data):
        return CoordinateStatus(good=False, very_good=False, witness=last_face)
    if _first_face_form(first_face, first_data):
        return CoordinateStatus(good=True, very_good=False, witness=first_face)
    if len(diagram.faces) == 1 and _two_root_form(first_face, first_data):
        return CoordinateStatus(good=True, very_good=False, witness=first_face)
    return CoordinateStatus(good=True, very_good=True)


def _apply_shear(ideal: Ideal, mu: Fraction, q: int) -> Ideal:
    fx = BiPoly.x()
    fy = BiPoly.y() + BiPoly.monomial(q, 0, mu)
    return Ideal(tuple(g.substituted(fx, fy) for g in ideal.generators))


def _apply_two_root_change(ideal: Ideal, mu1: Fraction, mu2: Fraction) -> Ideal:
    delta = mu1 - mu2
    fx = (BiPoly.x() + BiPoly.y()) * (1 / delta)
    fy = (BiPoly.y() * mu1 + BiPoly.x() * mu2) * (1 / delta)
    return Ideal(tuple(g.substituted(fx, fy) for g in ideal.generators))


def improve_coordinates(ideal: Ideal, max_steps: int = 64):
    """Apply primitive coordinate changes until the ideal is in very good
    coordinates; returns (new ideal, list of changes).

    Ideals that are already a monomial times a smooth-branch power are
    returned unchanged (coordinates are irrelevant for them).  When the
    improvement never stabilizes (a smooth non-polynomial branch keeps
    reappearing on the last face) the loop bound triggers a structured
    divergence error naming the persistent face."""
    if depth_zero_form(ideal) is not None:
        return ideal, []
    changes = []
    current = ideal
    while True:
        diagram, face_data = face_data_all(current)
        if not diagram.faces:
            return current, changes
        last_face, last_data = diagram.faces[-1], face_data[-1]
        first_face, first_data = diagram.faces[0], face_data[0]
        if _last_face_form(last_face, last_data):
            if len(changes) >= max_steps:
                raise CoordinateChangeDiverged(
                    f"coordinate improvement did not stabilize in "
                    f"{max_steps} steps; the last-face form keeps "
                    f"reappearing (smooth branch with an infinite series "
                    f"expansion)",
                    face=last_face,
                )
            mu = last_data.roots.roots[0][0]
            current = _apply_shear(current, mu, last_face.q)
            changes.append(CoordinateChange("shear", (mu, last_face.q)))
        elif len(diagram.faces) == 1 and _two_root_form(first_face, first_data):
            mus = sorted((r for r, _ in first_data.roots.roots), reverse=True)
            current = _apply_two_root_change(current, mus[0], mus[1])
            changes.append(CoordinateChange("custom", (mus[0], mus[1])))
        elif _first_face_form(first_face, first_data):
            current = current.transpose()
            changes.append(CoordinateChange("swapAxes", ()))
        else:
            return current, changes
        if len(changes) > 4 * max_steps:
            raise CoordinateChangeDiverged(
                "coordinate improvement cycled without stabilizing",
                face=diagram.faces[-1],
            )
