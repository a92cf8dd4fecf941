"""Exact arithmetic over Q in one and two variables, plus the local
predicates that drive the plane Newton algorithm.

Coefficients are `fractions.Fraction` throughout; every operation is exact.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt

from .errors import EmptyIdeal, InvalidInput, InvariantViolation, UnitIdeal

Rational = Fraction


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise InvalidInput(f"coefficients must be exact rationals, got {value!r}")


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over Q, printed in the variable z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # effectively frozen
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def z(cls) -> "UniPoly":
        return cls((0, 1))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        if self.is_zero:
            raise InvalidInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def trailing_order(self) -> int:
        """Multiplicity of the root z = 0."""
        if self.is_zero:
            raise InvalidInput("zero polynomial has no trailing order")
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise InvariantViolation("normalized UniPoly with all-zero coeffs")

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(
            [
                (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise InvalidInput("negative polynomial power")
        result = UniPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, value: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def divmod(self, divisor: "UniPoly"):
        if divisor.is_zero:
            raise InvalidInput("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading()
        quot = [Fraction(0)] * max(0, len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            if rem[i] == 0:
                continue
            factor = rem[i] / lead
            quot[i - dd] = factor
            for j, c in enumerate(divisor.coeffs):
                rem[i - dd + j] -= factor * c
        return UniPoly(quot), UniPoly(rem)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        lead = self.leading()
        return UniPoly([c / lead for c in self.coeffs])

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, k: int) -> "UniPoly":
        """Multiply by z^k (k >= 0) or divide exactly by z^-k."""
        if k >= 0:
            return UniPoly([Fraction(0)] * k + list(self.coeffs))
        if self.is_zero:
            return self
        if self.trailing_order() < -k:
            raise InvariantViolation("inexact division by a power of z")
        return UniPoly(self.coeffs[-k:])

    def __repr__(self):
        return format_terms(
            sorted(
                ((i, c) for i, c in enumerate(self.coeffs) if c != 0),
                reverse=True,
            ),
            lambda i: _power_name("z", i),
        )


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd in Q[z]."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def uni_gcd_many(polys) -> UniPoly:
    return functools.reduce(uni_gcd, polys, UniPoly())


# ---------------------------------------------------------------------------
# printing helpers (shared with the bivariate case)
# ---------------------------------------------------------------------------


def _power_name(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def format_terms(items, monomial_name) -> str:
    """items: iterable of (exponent-key, coefficient) in print order."""
    pieces = []
    for key, c in items:
        mono = monomial_name(key)
        if c < 0:
            sign = " - " if pieces else "-"
            c = -c
        else:
            sign = " + " if pieces else ""
        if mono and c == 1:
            body = mono
        elif mono:
            body = f"{c}*{mono}"
        else:
            body = str(c)
        pieces.append(sign + body)
    return "".join(pieces) if pieces else "0"


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------


class BiPoly:
    """Sparse polynomial in x, y over Q: {(a, b): coefficient of x^a y^b}."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for (a, b), c in terms.items():
                c = _frac(c)
                if c != 0:
                    if a < 0 or b < 0:
                        raise InvalidInput("negative exponent in BiPoly")
                    data[(int(a), int(b))] = c
        object.__setattr__(self, "_terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "BiPoly":
        return cls({(a, b): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def coeff(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def support(self):
        return frozenset(self._terms)

    def terms(self):
        """Sorted ((a, b), c) pairs; deterministic iteration order."""
        return tuple(sorted(self._terms.items()))

    def order_x(self) -> int:
        if self.is_zero:
            raise InvalidInput("zero polynomial has no x-order")
        return min(a for a, _ in self._terms)

    def order_y(self) -> int:
        if self.is_zero:
            raise InvalidInput("zero polynomial has no y-order")
        return min(b for _, b in self._terms)

    def total_degree(self) -> int:
        if self.is_zero:
            return 0
        return max(a + b for a, b in self._terms)

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self._terms.items()})
        out = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise InvalidInput("negative polynomial power")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structural operations ----------------------------------------------

    def shift_x(self, k: int) -> "BiPoly":
        """Multiply by x^k; negative k divides exactly (or raises)."""
        if self.is_zero:
            return self
        if k < 0 and self.order_x() < -k:
            raise InvariantViolation("inexact division by a power of x")
        return BiPoly({(a + k, b): c for (a, b), c in self._terms.items()})

    def transpose(self) -> "BiPoly":
        """Swap the variables x and y."""
        return BiPoly({(b, a): c for (a, b), c in self._terms.items()})

    def derivative_y(self) -> "BiPoly":
        return BiPoly(
            {(a, b - 1): c * b for (a, b), c in self._terms.items() if b >= 1}
        )

    def eval_x0(self) -> UniPoly:
        """The restriction f(0, y) as a polynomial in one variable."""
        out = {}
        for (a, b), c in self._terms.items():
            if a == 0:
                out[b] = c
        if not out:
            return UniPoly()
        size = max(out) + 1
        return UniPoly([out.get(i, Fraction(0)) for i in range(size)])

    def eval_y0(self) -> UniPoly:
        return self.transpose().eval_x0()

    def as_y_coeffs(self):
        """f = sum c_j(x) y^j; returns [c_0, ..., c_degy] as UniPoly in x."""
        if self.is_zero:
            return []
        degy = max(b for _, b in self._terms)
        rows = [{} for _ in range(degy + 1)]
        for (a, b), c in self._terms.items():
            rows[b][a] = c
        out = []
        for row in rows:
            if row:
                size = max(row) + 1
                out.append(UniPoly([row.get(i, Fraction(0)) for i in range(size)]))
            else:
                out.append(UniPoly())
        return out

    @classmethod
    def from_y_coeffs(cls, coeffs) -> "BiPoly":
        data = {}
        for b, poly in enumerate(coeffs):
            for a, c in enumerate(poly.coeffs):
                if c != 0:
                    data[(a, b)] = c
        return cls(data)

    def substituted(self, fx: "BiPoly", fy: "BiPoly") -> "BiPoly":
        """General composition f(fx, fy)."""
        xpows = {0: BiPoly.const(1)}
        ypows = {0: BiPoly.const(1)}

        def power(base, cache, n):
            if n not in cache:
                cache[n] = power(base, cache, n - 1) * base
            return cache[n]

        out = BiPoly.zero()
        for (a, b), c in self.terms():
            out = out + power(fx, xpows, a) * power(fy, ypows, b) * c
        return out

    def __repr__(self):
        items = sorted(
            self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0])
        )

        def name(key):
            a, b = key
            parts = [p for p in (_power_name("x", a), _power_name("y", b)) if p]
            return "*".join(parts)

        return format_terms(items, name)


# ---------------------------------------------------------------------------
# exact division and gcd in Q[x, y]
# ---------------------------------------------------------------------------


def exact_div(f: BiPoly, d: BiPoly) -> BiPoly:
    """Exact quotient f / d; raises InvariantViolation if the division
    leaves a remainder (callers only divide when exactness is guaranteed)."""
    if d.is_zero:
        raise InvalidInput("division by the zero polynomial")
    if f.is_zero:
        return BiPoly.zero()
    lead_key = max(d.support(), key=lambda ab: (ab[1], ab[0]))
    lead_coeff = d.coeff(*lead_key)
    rem = dict(f.terms())
    quot = {}
    while rem:
        ra, rb = max(rem, key=lambda ab: (ab[1], ab[0]))
        da, db = lead_key
        ta, tb = ra - da, rb - db
        if ta < 0 or tb < 0:
            raise InvariantViolation("bivariate division is not exact")
        c = rem[(ra, rb)] / lead_coeff
        quot[(ta, tb)] = quot.get((ta, tb), Fraction(0)) + c
        for (a2, b2), c2 in d.terms():
            key = (ta + a2, tb + b2)
            val = rem.get(key, Fraction(0)) - c * c2
            if val == 0:
                rem.pop(key, None)
            else:
                rem[key] = val
    return BiPoly(quot)


def _y_content(f: BiPoly) -> UniPoly:
    return uni_gcd_many(c for c in f.as_y_coeffs() if not c.is_zero)


def _divide_y_coeffs(f: BiPoly, content: UniPoly) -> BiPoly:
    out = []
    for c in f.as_y_coeffs():
        if c.is_zero:
            out.append(c)
        else:
            q, r = c.divmod(content)
            if not r.is_zero:
                raise InvariantViolation("content division not exact")
            out.append(q)
    return BiPoly.from_y_coeffs(out)


def _pseudo_rem(a, b):
    """Pseudo-remainder of dense y-coefficient lists over Q[x]."""
    def strip(cs):
        while cs and cs[-1].is_zero:
            cs.pop()
        return cs

    r = strip(list(a))
    b = strip(list(b))
    db = len(b) - 1
    lead_b = b[-1]
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lead_r = r[-1]
        new = [lead_b * c for c in r]
        for i, bc in enumerate(b):
            new[dr - db + i] = new[dr - db + i] - lead_r * bc
        r = strip(new)
    return r


def _primitive(coeffs):
    nonzero = [c for c in coeffs if not c.is_zero]
    cont = uni_gcd_many(nonzero)
    out = []
    for c in coeffs:
        if c.is_zero:
            out.append(c)
        else:
            q, r = c.divmod(cont)
            if not r.is_zero:
                raise InvariantViolation("primitive part not exact")
            out.append(q)
    return out


def bipoly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """Gcd in Q[x, y], normalized so the lex(y > x) leading coefficient is 1."""
    if f.is_zero:
        return _normalize_gcd(g)
    if g.is_zero:
        return _normalize_gcd(f)

    fc = f.as_y_coeffs()
    gc = g.as_y_coeffs()
    if len(fc) == 1 or len(gc) == 1:
        # one argument is free of y: the gcd is univariate in x
        parts = []
        for coeffs in (fc, gc):
            parts.extend(c for c in coeffs if not c.is_zero)
        return _normalize_gcd(BiPoly.from_y_coeffs([uni_gcd_many(parts)]))

    cont = uni_gcd(_y_content(f), _y_content(g))
    a = _primitive(fc)
    b = _primitive(gc)
    if len(a) - 1 < len(b) - 1:
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b)
        if not r:
            break
        a, b = b, _primitive(r)
    pp = BiPoly.from_y_coeffs(b)
    result = pp if cont.is_constant else _mul_by_x_poly(pp, cont)
    return _normalize_gcd(result)


def _mul_by_x_poly(f: BiPoly, u: UniPoly) -> BiPoly:
    factor = BiPoly({(i, 0): c for i, c in enumerate(u.coeffs) if c != 0})
    return f * factor


def _normalize_gcd(f: BiPoly) -> BiPoly:
    if f.is_zero:
        return f
    lead_key = max(f.support(), key=lambda ab: (ab[1], ab[0]))
    return f * (1 / f.coeff(*lead_key))


def bipoly_gcd_many(polys) -> BiPoly:
    return functools.reduce(bipoly_gcd, polys, BiPoly.zero())


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class Ideal:
    """Finitely generated ideal of Q[[x, y]] with polynomial generators."""

    __slots__ = ("generators",)

    def __init__(self, generators):
        gens = tuple(g for g in generators if not g.is_zero)
        if not gens:
            raise EmptyIdeal("an ideal needs at least one nonzero generator")
        object.__setattr__(self, "generators", gens)

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    @property
    def is_unit(self) -> bool:
        return any(g.constant_term != 0 for g in self.generators)

    def order_x(self) -> int:
        return min(g.order_x() for g in self.generators)

    def order_y(self) -> int:
        return min(g.order_y() for g in self.generators)

    def shift_x(self, k: int) -> "Ideal":
        return Ideal(tuple(g.shift_x(k) for g in self.generators))

    def transpose(self) -> "Ideal":
        return Ideal(tuple(g.transpose() for g in self.generators))

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        inner = ", ".join(repr(g) for g in self.generators)
        return f"({inner})"


# ---------------------------------------------------------------------------
# Newton maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonMapSpec:
    """The substitution x = mu^q' * x1^p, y = x1^q * (y1 + mu^p')."""

    p: int
    q: int
    p_prime: int
    q_prime: int
    mu: Fraction

    def __post_init__(self):
        p, q, pp, qp = self.p, self.q, self.p_prime, self.q_prime
        if p < 1 or q < 1 or gcd(p, q) != 1:
            raise InvalidInput(f"(p, q) = ({p}, {q}) must be coprime positives")
        if self.mu == 0:
            raise InvalidInput("Newton map needs a nonzero root")
        if p * pp - q * qp != 1:
            raise InvalidInput(f"p*p' - q*q' = {p * pp - q * qp}, expected 1")
        if not (1 <= pp <= q):
            raise InvalidInput(f"p' = {pp} outside [1, q]")
        if not (0 <= qp < p):
            raise InvalidInput(f"q' = {qp} outside [0, p)")
        object.__setattr__(self, "mu", _frac(self.mu))


def canonical_newton_map(p: int, q: int, mu) -> NewtonMapSpec:
    """The unique (p', q') with p*p' - q*q' = 1, p' in [1..q], q' in [0..p)."""
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise InvalidInput(f"(p, q) = ({p}, {q}) must be coprime positives")
    p_prime = 1 if q == 1 else pow(p, -1, q)
    q_prime = (p * p_prime - 1) // q
    return NewtonMapSpec(p, q, p_prime, q_prime, _frac(mu))


def substitute_newton(f: BiPoly, spec: NewtonMapSpec) -> BiPoly:
    """Image of f under the Newton-map substitution (exact)."""
    mu = spec.mu
    shift = mu**spec.p_prime
    out = {}
    for (a, b), c in f.terms():
        prefactor = c * mu ** (spec.q_prime * a)
        base_x = spec.p * a + spec.q * b
        for j in range(b + 1):
            coeff = prefactor * comb(b, j) * shift ** (b - j)
            key = (base_x, j)
            out[key] = out.get(key, Fraction(0)) + coeff
    return BiPoly(out)


# ---------------------------------------------------------------------------
# rational roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootReport:
    """Rational roots with multiplicities, and the rootless residual."""

    roots: tuple  # ((mu, multiplicity), ...) sorted by mu
    residual: UniPoly


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(g: UniPoly) -> RootReport:
    """All rational roots of g with multiplicities; residual is monic."""
    if g.is_zero:
        raise InvalidInput("the zero polynomial has every root")
    work = g.monic()
    roots = []
    v = work.trailing_order()
    if v > 0:
        roots.append((Fraction(0), v))
        work = UniPoly(work.coeffs[v:])
    if work.degree >= 1:
        denom_lcm = 1
        for c in work.coeffs:
            denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in work.coeffs]
        content = 0
        for c in ints:
            content = gcd(content, c)
        ints = [c // content for c in ints]
        candidates = set()
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                if gcd(num, den) == 1:
                    candidates.add(Fraction(num, den))
                    candidates.add(Fraction(-num, den))
        for cand in sorted(candidates):
            mult = 0
            while work.degree >= 1 and work(cand) == 0:
                work, rem = work.divmod(UniPoly((-cand, 1)))
                if not rem.is_zero:
                    raise InvariantViolation("root division left a remainder")
                mult += 1
            if mult:
                roots.append((cand, mult))
    roots.sort(key=lambda pair: pair[0])
    return RootReport(tuple(roots), work.monic())


# ---------------------------------------------------------------------------
# local branch analysis and depth-zero detection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BranchAnalysis:
    """Decomposition f = x^k * e with the smooth-power test data."""

    k: int
    e: BiPoly
    nu: int
    s: BiPoly
    smooth_power: bool


def local_branch_analysis(f: BiPoly) -> BranchAnalysis:
    """Test whether f is (a unit times) x^k (y + h(x))^nu with h(0) = 0."""
    if f.is_zero:
        raise InvalidInput("cannot analyze the zero polynomial")
    k = f.order_x()
    e = f.shift_x(-k)
    nu = e.eval_x0().trailing_order()
    radical_cof = bipoly_gcd(e, e.derivative_y())
    s = exact_div(e, radical_cof)
    smooth = nu == 0 or s.eval_x0().trailing_order() == 1
    return BranchAnalysis(k, e, nu, s, smooth)


def depth_zero_form(ideal: Ideal):
    """(k, nu) when the ideal is principal of the form (x^k (y + h(x))^nu),
    up to a unit; None otherwise."""
    if ideal.is_unit:
        raise UnitIdeal("unit ideal has no local form")
    divisor = bipoly_gcd_many(ideal.generators)
    if divisor.total_degree() == 0:
        return None
    cofactors = [exact_div(g, divisor) for g in ideal.generators]
    if not any(c.constant_term != 0 for c in cofactors):
        return None
    branch = local_branch_analysis(divisor)
    if not branch.smooth_power:
        return None
    return (branch.k, branch.nu)
