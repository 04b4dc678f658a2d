"""Sparse twisted Laurent polynomials over the formal phase ring.

The quantum torus on n unitary generators u1, ..., un with relation
``u_k u_l = lambda_{kl} u_l u_k`` is modelled on the normal-ordered
monomial basis u^a = u1^a1 * ... * un^an, a in Z^n.  Reordering phases
are tracked exactly in the strictly-upper-triangular units q_{kl}
(k < l), which stand for lambda_{kl} = exp(2*pi*i*theta_{kl}); a single
product of two monomials contributes q_{ji}^(-a_i*b_j) for every pair
i > j.  Coefficients never touch floating point; ``evaluate`` is the
one numeric boundary.

Canonical form (merged exponents, no zero coefficients) makes ``==``
the algebra equality, which all verifiers downstream rely on.  Values
are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .phases import Phase, QQi


class TwistMismatchError(ValueError):
    """Raised when operands live over different twist matrices."""


class TwistMatrix:
    """Skew-symmetric matrix of twist angles, in units of full turns.

    ``theta[k][l]`` is the exact rational angle with
    lambda_{kl} = exp(2*pi*i*theta[k][l]).  Generator indices are
    0-based in the API; printed names are 1-based (u1, q12, ...).
    """

    __slots__ = ("n", "theta", "nslots", "_slot_of", "slot_pairs")

    def __init__(self, theta):
        rows = [tuple(Fraction(x) for x in row) for row in theta]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("theta must be square")
        for k in range(n):
            if rows[k][k] != 0:
                raise ValueError("theta must have zero diagonal")
            for l in range(k + 1, n):
                if rows[k][l] != -rows[l][k]:
                    raise ValueError("theta must be skew-symmetric")
        self.n = n
        self.theta = tuple(rows)
        self.slot_pairs = [(k, l) for k in range(n) for l in range(k + 1, n)]
        self._slot_of = {p: i for i, p in enumerate(self.slot_pairs)}
        self.nslots = len(self.slot_pairs)

    def slot(self, k: int, l: int) -> int:
        """Slot index of the unit q_{kl}, k < l."""
        return self._slot_of[(k, l)]

    def slot_names(self):
        return [f"q{k + 1}{l + 1}" for k, l in self.slot_pairs]

    def gen_name(self, k: int) -> str:
        return f"u{k + 1}"

    def theta_float(self):
        return [[float(x) for x in row] for row in self.theta]

    def unit_values(self, theta_numeric) -> list[complex]:
        """Numeric value exp(2*pi*i*theta[k][l]) for each slot."""
        check_skew_numeric(theta_numeric, self.n)
        return [
            cmath.exp(2j * cmath.pi * theta_numeric[k][l]) for k, l in self.slot_pairs
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistMatrix):
            return NotImplemented
        return self.theta == other.theta

    def __hash__(self):
        return hash(self.theta)

    def __repr__(self) -> str:
        return f"TwistMatrix(n={self.n})"


def check_skew_numeric(theta_numeric, n: int, tol: float = 1e-12):
    if len(theta_numeric) != n or any(len(r) != n for r in theta_numeric):
        raise ValueError("numeric theta has wrong shape")
    for k in range(n):
        for l in range(n):
            if abs(theta_numeric[k][l] + theta_numeric[l][k]) > tol:
                raise ValueError("numeric theta is not skew-symmetric within 1e-12")


def _swap_phase(twist: TwistMatrix, a, b) -> Phase:
    """Phase produced by normal-ordering u^a * u^b: q_{ji}^(-a_i b_j), i > j."""
    e = [0] * twist.nslots
    nonzero = False
    for i in range(twist.n):
        ai = a[i]
        if not ai:
            continue
        for j in range(i):
            bj = b[j]
            if bj:
                e[twist.slot(j, i)] -= ai * bj
                nonzero = True
    if not nonzero:
        return Phase.one(twist.nslots)
    return Phase(twist.nslots, {(tuple(e), 0): QQi.one()})


def _star_phase(twist: TwistMatrix, a) -> Phase:
    """Phase of star(u^a) = phase * u^(-a): q_{ji}^(-a_i a_j), i > j."""
    e = [0] * twist.nslots
    nonzero = False
    for i in range(twist.n):
        ai = a[i]
        if not ai:
            continue
        for j in range(i):
            aj = a[j]
            if aj:
                e[twist.slot(j, i)] -= ai * aj
                nonzero = True
    if not nonzero:
        return Phase.one(twist.nslots)
    return Phase(twist.nslots, {(tuple(e), 0): QQi.one()})


def exchange_phase(twist: TwistMatrix, k: int, l: int) -> Phase:
    """The formal unit for lambda_{kl} in u_k u_l = lambda_{kl} u_l u_k."""
    if k < l:
        return Phase.unit(twist.nslots, twist.slot(k, l))
    return Phase.unit(twist.nslots, twist.slot(l, k), -1)


def _coerce_phase(twist: TwistMatrix, c) -> Phase | None:
    if isinstance(c, Phase):
        return c
    if isinstance(c, QQi):
        return Phase.coeff(twist.nslots, c)
    if isinstance(c, (int, Fraction)):
        return Phase.coeff(twist.nslots, QQi(c))
    return None


class TwistedPoly:
    """Twisted Laurent polynomial: finite map exponent vector -> Phase."""

    __slots__ = ("twist", "terms")

    def __init__(self, twist: TwistMatrix, terms: dict | None = None):
        self.twist = twist
        if terms:
            self.terms = {a: p for a, p in terms.items() if not p.is_zero()}
        else:
            self.terms = {}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, twist: TwistMatrix) -> "TwistedPoly":
        return cls(twist)

    @classmethod
    def one(cls, twist: TwistMatrix) -> "TwistedPoly":
        return cls.scalar(twist, Phase.one(twist.nslots))

    @classmethod
    def scalar(cls, twist: TwistMatrix, c) -> "TwistedPoly":
        p = _coerce_phase(twist, c)
        if p is None:
            raise TypeError(f"cannot use {type(c).__name__} as scalar")
        return cls(twist, {(0,) * twist.n: p})

    @classmethod
    def monomial(cls, twist: TwistMatrix, exponents, c=1) -> "TwistedPoly":
        exponents = tuple(int(x) for x in exponents)
        if len(exponents) != twist.n:
            raise ValueError("exponent vector has wrong length")
        p = _coerce_phase(twist, c)
        return cls(twist, {exponents: p})

    @classmethod
    def generator(cls, twist: TwistMatrix, k: int, power: int = 1) -> "TwistedPoly":
        e = [0] * twist.n
        e[k] = power
        return cls.monomial(twist, e)

    # -- ring operations ---------------------------------------------

    def _check(self, other: "TwistedPoly"):
        if self.twist != other.twist:
            raise TwistMismatchError("operands have different twist matrices")

    def __add__(self, other: "TwistedPoly") -> "TwistedPoly":
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for a, p in other.terms.items():
            acc = out.get(a)
            out[a] = p if acc is None else acc.add(p)
        return TwistedPoly(self.twist, out)

    def __sub__(self, other: "TwistedPoly") -> "TwistedPoly":
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "TwistedPoly":
        return TwistedPoly(self.twist, {a: p.neg() for a, p in self.terms.items()})

    def __mul__(self, other) -> "TwistedPoly":
        if isinstance(other, TwistedPoly):
            self._check(other)
            out: dict = {}
            for a, pa in self.terms.items():
                for b, pb in other.terms.items():
                    key = tuple(x + y for x, y in zip(a, b))
                    p = pa.mul(pb).mul(_swap_phase(self.twist, a, b))
                    acc = out.get(key)
                    out[key] = p if acc is None else acc.add(p)
            return TwistedPoly(self.twist, out)
        c = _coerce_phase(self.twist, other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other) -> "TwistedPoly":
        # scalars commute with everything, so left and right agree
        c = _coerce_phase(self.twist, other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def scale(self, c) -> "TwistedPoly":
        p = _coerce_phase(self.twist, c)
        return TwistedPoly(self.twist, {a: q.mul(p) for a, q in self.terms.items()})

    def star(self) -> "TwistedPoly":
        out: dict = {}
        for a, p in self.terms.items():
            key = tuple(-x for x in a)
            q = p.conjugate().mul(_star_phase(self.twist, a))
            acc = out.get(key)
            out[key] = q if acc is None else acc.add(q)
        return TwistedPoly(self.twist, out)

    def inverse_monomial(self) -> "TwistedPoly":
        """Inverse of a single-term polynomial with invertible phase."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible")
        (a, p), = self.terms.items()
        inv_exp = tuple(-x for x in a)
        # (c u^a)^-1 = c^-1 (u^a)^-1 and (u^a)^-1 = (u^a)^* for the unitary u^a
        q = p.invert().mul(_star_phase(self.twist, a))
        return TwistedPoly(self.twist, {inv_exp: q})

    # -- predicates and views ------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        zero = (0,) * self.twist.n
        return all(a == zero for a in self.terms)

    def constant_phase(self) -> Phase:
        """The coefficient at exponent 0 (the whole value for scalars)."""
        return self.terms.get((0,) * self.twist.n, Phase.zero(self.twist.nslots))

    def support(self):
        return sorted(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        return self.twist == other.twist and self.terms == other.terms

    def __hash__(self):
        return hash(
            (self.twist, frozenset((a, p) for a, p in self.terms.items()))
        )

    # -- numeric boundary ----------------------------------------------

    def evaluate(self, theta_numeric, torus_point, tau_value: float = 2 * cmath.pi) -> complex:
        """Substitute numeric phases and evaluate generators at a torus point.

        q_{kl} goes to exp(2*pi*i*theta_numeric[k][l]), u^a to the
        product of torus_point[k]**a_k, tau to 2*pi; linear in terms.
        """
        units = self.twist.unit_values(theta_numeric)
        total = 0j
        for a, p in self.terms.items():
            val = p.evaluate(units, tau_value)
            for k, e in enumerate(a):
                if e:
                    val *= torus_point[k] ** e
            total += val
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = self.twist.slot_names()
        parts = []
        for a in sorted(self.terms):
            p = self.terms[a]
            mono = "*".join(
                self.twist.gen_name(k) + (f"^{e}" if e != 1 else "")
                for k, e in enumerate(a)
                if e
            )
            coeff = p.render(names)
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append(f"-{mono}")
            elif "+" in coeff[1:] or "-" in coeff[1:]:
                parts.append(f"({coeff})*{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        out = parts[0]
        for s in parts[1:]:
            out += s if s.startswith("-") else "+" + s
        return out


def numeric_product(
    x: TwistedPoly, y: TwistedPoly, theta_numeric, torus_point, tau_value: float = 2 * cmath.pi
) -> complex:
    """Floating-point oracle for evaluate(x * y).

    Computes the twisted product directly with complex exponentials,
    bypassing the formal phase ring entirely: an independent check that
    the exact reordering bookkeeping matches the defining relations.
    """
    check_skew_numeric(theta_numeric, x.twist.n)
    units = x.twist.unit_values(theta_numeric)
    total = 0j
    for a, pa in x.terms.items():
        va = pa.evaluate(units, tau_value)
        for b, pb in y.terms.items():
            vb = pb.evaluate(units, tau_value)
            swap = 1.0 + 0j
            for i in range(x.twist.n):
                for j in range(i):
                    if a[i] and b[j]:
                        swap *= cmath.exp(
                            -2j * cmath.pi * theta_numeric[j][i] * a[i] * b[j]
                        )
            val = va * vb * swap
            for k in range(x.twist.n):
                e = a[k] + b[k]
                if e:
                    val *= torus_point[k] ** e
            total += val
    return total


class PolyMatrix:
    """Dense matrix of twisted polynomials sharing one twist matrix."""

    __slots__ = ("twist", "rows", "cols", "entries")

    def __init__(self, twist: TwistMatrix, entries):
        self.twist = twist
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.twist != twist:
                    raise TwistMismatchError("matrix entry over different twist")

    # -- constructors ------------------------------------------------

    @classmethod
    def zeros(cls, twist: TwistMatrix, rows: int, cols: int) -> "PolyMatrix":
        z = TwistedPoly.zero(twist)
        return cls(twist, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, twist: TwistMatrix, d: int) -> "PolyMatrix":
        one = TwistedPoly.one(twist)
        z = TwistedPoly.zero(twist)
        return cls(twist, [[one if i == j else z for j in range(d)] for i in range(d)])

    @classmethod
    def from_scalar(cls, poly: TwistedPoly) -> "PolyMatrix":
        return cls(poly.twist, [[poly]])

    @classmethod
    def column(cls, polys) -> "PolyMatrix":
        polys = list(polys)
        return cls(polys[0].twist, [[p] for p in polys])

    # -- algebra -------------------------------------------------------

    def _check_twist(self, other: "PolyMatrix"):
        if self.twist != other.twist:
            raise TwistMismatchError("matrices over different twist matrices")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_twist(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return PolyMatrix(
            self.twist,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        self._check_twist(other)
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in matrix product: {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}"
            )
        z = TwistedPoly.zero(self.twist)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.twist, out)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self.__mul__(other)

    def adjoint(self) -> "PolyMatrix":
        return PolyMatrix(
            self.twist,
            [
                [self.entries[i][j].star() for i in range(self.rows)]
                for j in range(self.cols)
            ],
        )

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        """Kronecker product; self indexes the slow (outer) tensor leg."""
        self._check_twist(other)
        out = []
        for i1 in range(self.rows):
            for i2 in range(other.rows):
                row = []
                for j1 in range(self.cols):
                    for j2 in range(other.cols):
                        row.append(self.entries[i1][j1] * other.entries[i2][j2])
                out.append(row)
        return PolyMatrix(self.twist, out)

    def scale_left(self, poly: TwistedPoly) -> "PolyMatrix":
        return self.map(lambda e: poly * e)

    def scale_right(self, poly: TwistedPoly) -> "PolyMatrix":
        return self.map(lambda e: e * poly)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.twist, [[fn(e) for e in row] for row in self.entries])

    # -- views ---------------------------------------------------------

    def entry(self, i: int, j: int) -> TwistedPoly:
        return self.entries[i][j]

    def as_scalar(self) -> TwistedPoly:
        if (self.rows, self.cols) != (1, 1):
            raise ValueError("matrix is not 1x1")
        return self.entries[0][0]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.twist == other.twist
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.twist, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(repr(e) for e in row) for row in self.entries
        )
        return f"[{body}]"
