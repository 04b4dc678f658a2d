"""Derivations of the fixed algebra and their equivariant lifts.

A derivation is stored by its generator images and extended by the
Leibniz rule (negative powers via d(x^-1) = -x^-1 d(x) x^-1).  A
derivation delta of B0 lifts to an equivariant derivation of the whole
algebra exactly when a matrix family H(sigma) over B0, normalized to
H(0) = 0, satisfies

    delta gamma_sigma(b) = gamma_sigma delta(b) + H(sigma) gamma_sigma(b)
                           + gamma_sigma(b) H(sigma)*
    delta(omega(sigma,pi)) = (H(sigma) ox 1) omega + gamma_sigma(H(pi)) omega
                           + omega H(sigma+pi)*

in which case the lift acts on the weight-sigma component by
y s(sigma) -> delta(y) s(sigma) + y H(sigma) s(sigma).  Families with
delta = 0 form the gauge Lie algebra, the kernel of the short exact
sequence of derivation Lie algebras over the liftable derivations of
B0; a linear section of that sequence is a connection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import PolyMatrix, TwistedPoly, TwistMatrix, exchange_phase
from .dynamics import (
    Character,
    TorusAction,
    base_monomials,
    char_add,
    char_zero,
    grade,
    in_base_algebra,
    resolve_chars,
)
from .factor_system import FactorSystem, ScopeError
from .phases import Phase, QQi
from .report import CheckReport, ReportBuilder


class DerivationError(ValueError):
    """Generator images do not extend to a derivation."""


class Derivation:
    """Derivation given by generator images, extended by the Leibniz rule."""

    __slots__ = ("twist", "gens", "images", "_powers")

    def __init__(self, twist: TwistMatrix, gens, images: dict, check: bool = True):
        self.twist = twist
        self.gens = tuple(gens)
        self.images = {k: images[k] for k in self.gens}
        self._powers: dict = {}
        if check:
            violated = self.violated_relation()
            if violated is not None:
                k, l = violated
                raise DerivationError(
                    "images violate the exchange relation between "
                    f"{twist.gen_name(k)} and {twist.gen_name(l)}"
                )

    @classmethod
    def zero(cls, twist: TwistMatrix, gens) -> "Derivation":
        z = TwistedPoly.zero(twist)
        return cls(twist, gens, {k: z for k in gens}, check=False)

    @classmethod
    def inner(cls, twist: TwistMatrix, gens, a: TwistedPoly) -> "Derivation":
        images = {
            k: a * TwistedPoly.generator(twist, k) - TwistedPoly.generator(twist, k) * a
            for k in gens
        }
        return cls(twist, gens, images, check=False)

    def violated_relation(self):
        """First generator pair whose exchange relation breaks, or None."""
        for i, k in enumerate(self.gens):
            for l in self.gens[i + 1 :]:
                uk = TwistedPoly.generator(self.twist, k)
                ul = TwistedPoly.generator(self.twist, l)
                lam = TwistedPoly.scalar(self.twist, exchange_phase(self.twist, k, l))
                lhs = self.images[k] * ul + uk * self.images[l]
                rhs = lam * (self.images[l] * uk + ul * self.images[k])
                if lhs != rhs:
                    return (k, l)
        return None

    def is_star_derivation(self) -> bool:
        """True iff the Leibniz extension is compatible with the involution."""
        for k in self.gens:
            uk_inv = TwistedPoly.generator(self.twist, k, -1)
            derived = -(uk_inv * self.images[k] * uk_inv)
            if derived != self.images[k].star():
                return False
        return True

    def _gen_power(self, k: int, m: int) -> TwistedPoly:
        cached = self._powers.get((k, m))
        if cached is not None:
            return cached
        if m > 0:
            total = TwistedPoly.zero(self.twist)
            for i in range(m):
                total = total + TwistedPoly.generator(self.twist, k, i) * self.images[
                    k
                ] * TwistedPoly.generator(self.twist, k, m - 1 - i)
        else:
            dy = self._gen_power(k, -m)
            inv = TwistedPoly.generator(self.twist, k, m)
            total = -(inv * dy * inv)
        self._powers[(k, m)] = total
        return total

    def apply(self, x: TwistedPoly) -> TwistedPoly:
        total = TwistedPoly.zero(self.twist)
        genset = set(self.gens)
        for a, phase in x.terms.items():
            for k, e in enumerate(a):
                if e and k not in genset:
                    raise ScopeError(
                        f"derivation not defined on {self.twist.gen_name(k)}"
                    )
            for k in self.gens:
                if not a[k]:
                    continue
                left = [0] * self.twist.n
                right = [0] * self.twist.n
                for j in self.gens:
                    if j < k:
                        left[j] = a[j]
                    elif j > k:
                        right[j] = a[j]
                piece = (
                    TwistedPoly.monomial(self.twist, left, phase)
                    * self._gen_power(k, a[k])
                    * TwistedPoly.monomial(self.twist, right)
                )
                total = total + piece
        return total

    def apply_matrix(self, m: PolyMatrix) -> PolyMatrix:
        return m.map(self.apply)

    def scale(self, c) -> "Derivation":
        return Derivation(
            self.twist,
            self.gens,
            {k: v.scale(c) for k, v in self.images.items()},
            check=False,
        )

    def __add__(self, other: "Derivation") -> "Derivation":
        # the exchange-relation constraint is linear, no recheck needed
        return Derivation(
            self.twist,
            self.gens,
            {k: self.images[k] + other.images[k] for k in self.gens},
            check=False,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return (
            self.twist == other.twist
            and self.gens == other.gens
            and self.images == other.images
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.images.values())


def make_derivation(twist: TwistMatrix, gens, images: dict) -> Derivation:
    """Validated constructor; raises :class:`DerivationError` on bad images."""
    return Derivation(twist, gens, images, check=True)


def bracket_derivations(d1: Derivation, d2: Derivation) -> Derivation:
    """Commutator [d1, d2] as a derivation on the shared generators."""
    if d1.gens != d2.gens:
        raise ValueError("derivations live on different generator sets")
    images = {
        k: d1.apply(d2.images[k]) - d2.apply(d1.images[k]) for k in d1.gens
    }
    return Derivation(d1.twist, d1.gens, images, check=False)


def two_pi_i(twist: TwistMatrix) -> TwistedPoly:
    """The exact formal scalar 2*pi*i (= i * tau)."""
    return TwistedPoly.scalar(twist, Phase.two_pi_i(twist.nslots))


def scaling_derivation(twist: TwistMatrix, gens, k: int) -> Derivation:
    """Generator of the gauge circle on u_k: u_k -> 2*pi*i*u_k, rest to 0."""
    images = {j: TwistedPoly.zero(twist) for j in gens}
    if k in images:
        images[k] = two_pi_i(twist) * TwistedPoly.generator(twist, k)
    return Derivation(twist, gens, images, check=False)


# ---------------------------------------------------------------------------
# H families
# ---------------------------------------------------------------------------


class HFamily:
    """Character-indexed family of matrices over B0, H(0) = 0."""

    def __init__(self, action: TorusAction, fn: Callable[[Character], PolyMatrix]):
        self.action = action
        self._fn = fn
        self._cache: dict = {}

    @classmethod
    def zero(cls, action: TorusAction, dim: int = 1) -> "HFamily":
        z = PolyMatrix.zeros(action.twist, dim, dim)
        return cls(action, lambda char: z)

    @classmethod
    def from_scalars(cls, action: TorusAction, fn: Callable[[Character], TwistedPoly]):
        return cls(action, lambda char: PolyMatrix.from_scalar(fn(char)))

    @classmethod
    def linear_scalar(cls, action: TorusAction, slopes) -> "HFamily":
        """H(sigma) = sum_j sigma_j * slopes[j]; a single value means d = 1."""
        if isinstance(slopes, TwistedPoly):
            slopes = [slopes]
        slopes = list(slopes)
        if len(slopes) != action.d:
            raise ValueError("one slope per acting coordinate required")

        def fn(char: Character) -> PolyMatrix:
            total = TwistedPoly.zero(action.twist)
            for c, slope in zip(char, slopes):
                total = total + slope.scale(QQi(c))
            return PolyMatrix.from_scalar(total)

        return cls(action, fn)

    def value(self, char: Character) -> PolyMatrix:
        char = tuple(char)
        cached = self._cache.get(char)
        if cached is not None:
            return cached
        m = self._fn(char)
        for row in m.entries:
            for e in row:
                if not in_base_algebra(self.action, e):
                    raise ScopeError(f"family value at {char} leaves the fixed algebra")
        if char == char_zero(self.action.d) and not m.is_zero():
            raise ValueError("family must vanish at the trivial character")
        self._cache[char] = m
        return m

    def scalar_value(self, char: Character) -> TwistedPoly:
        return self.value(char).as_scalar()

    def __add__(self, other: "HFamily") -> "HFamily":
        return HFamily(self.action, lambda c: self.value(c) + other.value(c))

    def __sub__(self, other: "HFamily") -> "HFamily":
        return HFamily(self.action, lambda c: self.value(c) - other.value(c))

    def __neg__(self) -> "HFamily":
        return HFamily(self.action, lambda c: -self.value(c))

    def scale(self, c) -> "HFamily":
        return HFamily(self.action, lambda ch: self.value(ch).map(lambda e: e.scale(c)))


class CrossedHom(HFamily):
    """Scalar-valued family used as a crossed homomorphism candidate."""

    def value(self, char: Character) -> PolyMatrix:
        m = super().value(char)
        if (m.rows, m.cols) != (1, 1):
            raise ValueError("crossed homomorphisms are scalar families")
        return m


# ---------------------------------------------------------------------------
# lift conditions and lifted derivations
# ---------------------------------------------------------------------------


def verify_lift_conditions(
    fs: FactorSystem,
    delta: Derivation,
    h: HFamily,
    char_range=2,
    gen_degree: int = 2,
) -> CheckReport:
    """Exact check of the two lift equations over a character box."""
    action = fs.action
    tw = action.twist
    chars = resolve_chars(action, char_range)
    monomials = base_monomials(action, gen_degree)
    rb = ReportBuilder("derivation-lift-conditions")

    rb.expect(
        "normalization H(0) = 0",
        {},
        h.value(char_zero(action.d)),
        PolyMatrix.zeros(tw, fs.dim(char_zero(action.d)), fs.dim(char_zero(action.d))),
    )

    for sigma in chars:
        g = fs.gamma(sigma)
        hs = h.value(sigma)
        hsa = hs.adjoint()
        for b in monomials:
            gb = g.apply(b)
            lhs = delta.apply_matrix(gb)
            rhs = g.apply(delta.apply(b)) + hs * gb + gb * hsa
            rb.expect(
                "coaction derivative", {"sigma": sigma, "b": b}, lhs, rhs
            )

    for sigma in chars:
        g = fs.gamma(sigma)
        hs = h.value(sigma)
        for pi_ in chars:
            om = fs.omega(sigma, pi_)
            d_pi = fs.dim(pi_)
            lhs = delta.apply_matrix(om)
            rhs = (
                hs.kron(PolyMatrix.identity(tw, d_pi)) * om
                + g.apply_to_matrix(h.value(pi_)) * om
                + om * h.value(char_add(sigma, pi_)).adjoint()
            )
            rb.expect("cocycle derivative", {"sigma": sigma, "pi": pi_}, lhs, rhs)

    return rb.finish()


class LiftedDerivation:
    """Equivariant derivation of the whole algebra given by (delta, H)."""

    def __init__(
        self,
        fs: FactorSystem,
        base: Derivation,
        h: HFamily,
        check: bool = False,
        char_range=2,
        gen_degree: int = 2,
    ):
        if fs.isometries is None:
            raise ValueError("lifting requires an isometry realization")
        if check:
            rep = verify_lift_conditions(fs, base, h, char_range, gen_degree)
            if not rep.passed:
                raise DerivationError(
                    f"lift conditions fail: {rep.failures[0]}"
                )
        self.fs = fs
        self.base = base
        self.h = h

    def apply_component(self, char: Character, x: TwistedPoly) -> TwistedPoly:
        s = self.fs.isometries(char)
        y = s.adjoint().scale_left(x)
        out = self.base.apply_matrix(y) * s + y * self.h.value(char) * s
        return out.as_scalar()

    def apply_graded(self, x):
        from .dynamics import GradedElement

        return GradedElement(
            self.fs.action,
            {c: self.apply_component(c, p) for c, p in x.components.items()},
        )

    def apply(self, x: TwistedPoly) -> TwistedPoly:
        return self.apply_graded(grade(self.fs.action, x)).to_poly()

    def __add__(self, other: "LiftedDerivation") -> "LiftedDerivation":
        return LiftedDerivation(self.fs, self.base + other.base, self.h + other.h)

    def scale(self, c) -> "LiftedDerivation":
        return LiftedDerivation(self.fs, self.base.scale(c), self.h.scale(c))


def lift_derivation(fs, delta, h, x, char_range=2, gen_degree: int = 2):
    """Verified one-shot lift application on a graded element."""
    lifted = LiftedDerivation(fs, delta, h, check=True, char_range=char_range, gen_degree=gen_degree)
    return lifted.apply_graded(x)


def bracket(l1: LiftedDerivation, l2: LiftedDerivation) -> LiftedDerivation:
    """Commutator of two lifted derivations, again in lifted form.

    The base is the commutator of the bases and the family follows by
    differentiating the defining relation of H along both lifts:
    H(sigma) = d1(H2(sigma)) - d2(H1(sigma)) + H2(sigma) H1(sigma)
             - H1(sigma) H2(sigma).
    """
    if l1.fs is not l2.fs:
        raise ValueError("lifted derivations live over different factor systems")
    base = bracket_derivations(l1.base, l2.base)

    def fn(char: Character) -> PolyMatrix:
        h1 = l1.h.value(char)
        h2 = l2.h.value(char)
        return (
            l1.base.apply_matrix(h2)
            - l2.base.apply_matrix(h1)
            + h2 * h1
            - h1 * h2
        )

    return LiftedDerivation(l1.fs, base, HFamily(l1.fs.action, fn))


# ---------------------------------------------------------------------------
# gauge Lie algebra and crossed homomorphisms
# ---------------------------------------------------------------------------


def gauge_report(fs: FactorSystem, h: HFamily, char_range=2, gen_degree: int = 2) -> CheckReport:
    """Exact membership test for the gauge Lie algebra (lifts of zero)."""
    action = fs.action
    tw = action.twist
    chars = resolve_chars(action, char_range)
    monomials = base_monomials(action, gen_degree)
    rb = ReportBuilder("gauge-family")

    d0 = fs.dim(char_zero(action.d))
    rb.expect("normalization H(0) = 0", {}, h.value(char_zero(action.d)),
              PolyMatrix.zeros(tw, d0, d0))

    for sigma in chars:
        hs = h.value(sigma)
        hsa = hs.adjoint()
        rb.expect("skew-adjointness", {"sigma": sigma}, hsa, -hs)
        g = fs.gamma(sigma)
        for b in monomials:
            gb = g.apply(b)
            rb.expect(
                "commutant condition",
                {"sigma": sigma, "b": b},
                hs * gb + gb * hsa,
                PolyMatrix.zeros(tw, hs.rows, gb.cols),
            )

    for sigma in chars:
        hs = h.value(sigma)
        g = fs.gamma(sigma)
        for pi_ in chars:
            om = fs.omega(sigma, pi_)
            d_pi = fs.dim(pi_)
            total = (
                hs.kron(PolyMatrix.identity(tw, d_pi)) * om
                + g.apply_to_matrix(h.value(pi_)) * om
                + om * h.value(char_add(sigma, pi_)).adjoint()
            )
            rb.expect(
                "cocycle condition",
                {"sigma": sigma, "pi": pi_},
                total,
                PolyMatrix.zeros(tw, total.rows, total.cols),
            )

    return rb.finish()


def is_gauge_element(fs: FactorSystem, h: HFamily, char_range=2, gen_degree: int = 2) -> bool:
    return gauge_report(fs, h, char_range, gen_degree).passed


def crossed_hom_report(fs: FactorSystem, h: HFamily, char_range=2) -> CheckReport:
    """Exact additivity-with-twist and skewness check for scalar families.

    Requires a cleft system whose cocycle values are central scalars;
    in that case the condition is equivalent to gauge membership.
    """
    action = fs.action
    chars = resolve_chars(action, char_range)
    for sigma in chars[: min(3, len(chars))]:
        om = fs.omega(sigma, sigma)
        if (om.rows, om.cols) != (1, 1) or not om.as_scalar().is_scalar():
            raise ValueError("crossed homomorphisms require scalar cocycle values")
    rb = ReportBuilder("crossed-homomorphism")

    for sigma in chars:
        hs = h.scalar_value(sigma)
        rb.expect("skew-adjointness", {"sigma": sigma}, hs.star(), -hs)

    for sigma in chars:
        g = fs.gamma(sigma)
        hs = h.scalar_value(sigma)
        for pi_ in chars:
            lhs = h.scalar_value(char_add(sigma, pi_))
            rhs = hs + g.apply(h.scalar_value(pi_)).as_scalar()
            rb.expect("twisted additivity", {"sigma": sigma, "pi": pi_}, lhs, rhs)

    return rb.finish()


def is_crossed_hom(fs: FactorSystem, h: HFamily, char_range=2) -> bool:
    return crossed_hom_report(fs, h, char_range).passed


# ---------------------------------------------------------------------------
# connections: sections of the derivation sequence
# ---------------------------------------------------------------------------


@dataclass
class SectionEntry:
    key: Derivation
    lift: LiftedDerivation


@dataclass
class ConnectionSection:
    """Linear section candidate: a basis of liftable derivations of B0
    together with a chosen lift for each, plus optional kernel samples."""

    entries: list[SectionEntry]
    kernel: list[HFamily] = field(default_factory=list)

    def combine(self, coeffs) -> LiftedDerivation:
        """Rational linear combination sum c_i * lift_i (linear extension)."""
        total = None
        for c, entry in zip(coeffs, self.entries):
            piece = entry.lift.scale(c)
            total = piece if total is None else total + piece
        if total is None:
            raise ValueError("empty section")
        return total


def atiyah_check(
    fs: FactorSystem,
    section: ConnectionSection,
    char_range=2,
    gen_degree: int = 2,
    combo_coeffs=((QQi(2), QQi(-3)), (QQi(Fraction(1, 2)), QQi(1))),
) -> CheckReport:
    """Verify a candidate section of the derivation sequence.

    Checks, exactly: each lift restricts on the fixed algebra to its
    basis derivation; each supplied kernel family is a gauge element;
    linear combinations of basis lifts agree with the lift of the
    combined data on a monomial corpus; and for pairs of basis elements
    with vanishing commutator the bracket of the lifts vanishes too (the
    section is then a Lie-algebra section on that basis).
    """
    action = fs.action
    tw = action.twist
    rb = ReportBuilder("atiyah-section")
    monomials = base_monomials(action, gen_degree)
    chars = resolve_chars(action, char_range)

    corpus = []
    for sigma in chars:
        s = fs.isometries(sigma)
        for b in monomials[: 2 * len(action.base) + 1]:
            corpus.append((PolyMatrix.from_scalar(b) * s).as_scalar())

    for idx, entry in enumerate(section.entries):
        for k in action.base:
            gen = TwistedPoly.generator(tw, k)
            rb.expect(
                "restriction to the base derivation",
                {"basis": idx, "generator": tw.gen_name(k)},
                entry.lift.apply(gen),
                entry.key.apply(gen),
            )

    for idx, ker in enumerate(section.kernel):
        rep = gauge_report(fs, ker, char_range, gen_degree)
        rb.expect_true(
            "kernel sample is a gauge element",
            {"kernel": idx},
            rep.passed,
            str(rep.failures[0]) if rep.failures else "",
        )

    if len(section.entries) >= 2:
        for coeffs in combo_coeffs:
            combined = section.combine(coeffs)
            for x in corpus:
                expected = TwistedPoly.zero(tw)
                for c, entry in zip(coeffs, section.entries):
                    expected = expected + entry.lift.apply(x).scale(c)
                rb.expect(
                    "linearity of the section",
                    {"coeffs": coeffs, "x": x},
                    combined.apply(x),
                    expected,
                )

    for i, e1 in enumerate(section.entries):
        for e2 in section.entries[i + 1 :]:
            base_br = bracket_derivations(e1.key, e2.key)
            if not base_br.is_zero():
                rb.note(
                    "bracket-section check skipped for a non-commuting basis pair"
                )
                continue
            lifted_br = bracket(e1.lift, e2.lift)
            for x in corpus:
                rb.expect(
                    "bracket section on commuting basis pair",
                    {"x": x},
                    lifted_br.apply(x),
                    TwistedPoly.zero(tw),
                )

    return rb.finish()
