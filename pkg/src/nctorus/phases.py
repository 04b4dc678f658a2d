"""Exact scalar arithmetic: Gaussian rationals and the formal phase ring.

Coefficients of twisted polynomials live in the group ring QQ(i)[F],
where F is the free abelian group generated by one unimodular unit per
strictly-upper-triangular twist slot (written q12, q13, ...) together
with a single positive real unit ``tau`` standing for 2*pi.  No numeric
relations among the units are imposed, so equality is decided by normal
form and stays valid for every (also irrational) choice of twist angles.

A :class:`Phase` is a finite sum of terms ``c * q^e * tau^t`` stored as
a mapping ``(e, t) -> c`` with zero coefficients removed.  Conjugation
negates the q-exponents (the q units are unimodular) and fixes the tau
exponent (tau is real).
"""

from __future__ import annotations

from fractions import Fraction


class QQi:
    """Gaussian rational ``re + im*i`` with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @classmethod
    def zero(cls) -> "QQi":
        return _QQI_ZERO

    @classmethod
    def one(cls) -> "QQi":
        return _QQI_ONE

    @classmethod
    def i(cls) -> "QQi":
        return _QQI_I

    @classmethod
    def from_strings(cls, re: str, im: str = "0") -> "QQi":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, other: "QQi") -> "QQi":
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QQi") -> "QQi":
        return QQi(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QQi":
        return QQi(-self.re, -self.im)

    def __mul__(self, other: "QQi") -> "QQi":
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def inverse(self) -> "QQi":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return QQi(self.re / n, -self.im / n)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QQi):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def evaluate(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self) -> str:
        def imag(mag: Fraction) -> str:
            if mag == 1:
                return "i"
            if mag.denominator == 1:
                return f"{mag}i"
            return f"({mag})i"

        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return ("-" if self.im < 0 else "") + imag(abs(self.im))
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{imag(abs(self.im))})"


_QQI_ZERO = QQi(0, 0)
_QQI_ONE = QQi(1, 0)
_QQI_I = QQi(0, 1)


def _clean(terms: dict) -> dict:
    return {k: c for k, c in terms.items() if not c.is_zero()}


class Phase:
    """Finite formal sum ``sum c * q^e * tau^t`` over a fixed slot count.

    ``terms`` maps ``(qexp, tau)`` with ``qexp`` a tuple of length
    ``nslots`` to a nonzero :class:`QQi`.  The canonical form (merged
    keys, no zero coefficients) makes ``==`` the ring equality.
    """

    __slots__ = ("nslots", "terms")

    def __init__(self, nslots: int, terms: dict | None = None):
        self.nslots = nslots
        self.terms = _clean(terms) if terms else {}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, nslots: int) -> "Phase":
        return cls(nslots)

    @classmethod
    def one(cls, nslots: int) -> "Phase":
        return cls.coeff(nslots, _QQI_ONE)

    @classmethod
    def coeff(cls, nslots: int, c: QQi) -> "Phase":
        key = ((0,) * nslots, 0)
        return cls(nslots, {key: c})

    @classmethod
    def unit(cls, nslots: int, slot: int, power: int = 1, c: QQi = _QQI_ONE) -> "Phase":
        e = [0] * nslots
        e[slot] = power
        return cls(nslots, {(tuple(e), 0): c})

    @classmethod
    def tau(cls, nslots: int, power: int = 1, c: QQi = _QQI_ONE) -> "Phase":
        return cls(nslots, {((0,) * nslots, power): c})

    @classmethod
    def two_pi_i(cls, nslots: int) -> "Phase":
        """The formal scalar 2*pi*i, kept exact as i * tau."""
        return cls.tau(nslots, 1, _QQI_I)

    # -- ring operations ---------------------------------------------

    def _check(self, other: "Phase"):
        if self.nslots != other.nslots:
            raise ValueError("phase slot count mismatch")

    def add(self, other: "Phase") -> "Phase":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k)
            out[k] = c if acc is None else acc + c
        return Phase(self.nslots, out)

    def sub(self, other: "Phase") -> "Phase":
        return self.add(other.neg())

    def neg(self) -> "Phase":
        return Phase(self.nslots, {k: -c for k, c in self.terms.items()})

    def mul(self, other: "Phase") -> "Phase":
        self._check(other)
        out: dict = {}
        for (e1, t1), c1 in self.terms.items():
            for (e2, t2), c2 in other.terms.items():
                key = (tuple(a + b for a, b in zip(e1, e2)), t1 + t2)
                c = c1 * c2
                acc = out.get(key)
                out[key] = c if acc is None else acc + c
        return Phase(self.nslots, out)

    def scale(self, c: QQi) -> "Phase":
        if c.is_zero():
            return Phase(self.nslots)
        return Phase(self.nslots, {k: v * c for k, v in self.terms.items()})

    def conjugate(self) -> "Phase":
        # q units are unimodular (exponent flips); tau is real (exponent kept)
        return Phase(
            self.nslots,
            {(tuple(-x for x in e), t): c.conjugate() for (e, t), c in self.terms.items()},
        )

    def invert(self) -> "Phase":
        """Inverse of a single-term phase; general sums are not units."""
        if len(self.terms) != 1:
            raise ValueError("only monomial phases are invertible")
        ((e, t), c), = self.terms.items()
        return Phase(self.nslots, {(tuple(-x for x in e), -t): c.inverse()})

    def __pow__(self, k: int) -> "Phase":
        if k < 0:
            return self.invert() ** (-k)
        out = Phase.one(self.nslots)
        for _ in range(k):
            out = out.mul(self)
        return out

    # -- predicates and conversion -----------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        key = ((0,) * self.nslots, 0)
        return len(self.terms) == 1 and self.terms.get(key) == _QQI_ONE

    def __eq__(self, other) -> bool:
        if not isinstance(other, Phase):
            return NotImplemented
        return self.nslots == other.nslots and self.terms == other.terms

    def __hash__(self):
        return hash((self.nslots, frozenset(self.terms.items())))

    def evaluate(self, unit_values, tau_value: float) -> complex:
        """Substitute numeric values for the q units and tau."""
        total = 0j
        for (e, t), c in self.terms.items():
            val = c.evaluate()
            for s, p in enumerate(e):
                if p:
                    val *= unit_values[s] ** p
            if t:
                val *= tau_value**t
            total += val
        return total

    def render(self, slot_names) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (e, t), c in sorted(self.terms.items()):
            factors = []
            for s, p in enumerate(e):
                if p == 1:
                    factors.append(slot_names[s])
                elif p:
                    factors.append(f"{slot_names[s]}^{p}")
            if t == 1:
                factors.append("tau")
            elif t:
                factors.append(f"tau^{t}")
            cs = repr(c)
            if factors:
                body = "*".join(factors)
                if cs == "1":
                    parts.append(body)
                elif cs == "-1":
                    parts.append(f"-{body}")
                else:
                    parts.append(f"{cs}*{body}")
            else:
                parts.append(cs)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:
        return self.render([f"q{s}" for s in range(self.nslots)])
