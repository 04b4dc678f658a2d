"""Group-cohomological obstruction calculus for lifting automorphisms.

Given an automorphism beta of the fixed algebra whose transported
coaction is conjugate to the original one by a witness family v, the
defect of the pair (beta, v) against the cocycle data is measured by a
central unitary 2-cocycle on the dual group:

    u(sigma, pi) = s(sigma+pi)* beta^-1( v(sigma+pi) omega(pi,sigma)*
                   gamma_pi(v(sigma)*) v(pi)* ) s(pi) s(sigma).

beta lifts to an equivariant automorphism of the whole algebra exactly
when this class is a coboundary; over Z (circle actions) the class
always vanishes and the solver is a finite exact recursion.  Over Z^d,
d >= 2, the solver normalizes a candidate cochain along lexicographic
staircase paths and either verifies the coboundary equation on the
requested box or returns a certified :class:`Obstruction` with the
exact residual at a witness pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import PolyMatrix, TwistedPoly
from .dynamics import (
    Character,
    TorusAction,
    char_add,
    char_box,
    char_zero,
)
from .dynamics import resolve_chars
from .factor_system import (
    AlgebraMorphism,
    Automorphism,
    FactorSystem,
    PartialIsometryFamily,
    apply_automorphism,
    frohlich_morphism,
    verify_conjugacy,
)
from .report import CheckReport, ReportBuilder


class WitnessError(ValueError):
    """A supplied conjugacy witness fails its defining equation."""

    def __init__(self, message, char=None, generator=None):
        super().__init__(message)
        self.char = char
        self.generator = generator


def _is_central(action: TorusAction, x: TwistedPoly) -> bool:
    for k in action.base:
        g = TwistedPoly.generator(action.twist, k)
        if x * g != g * x:
            return False
    return True


class TwoCocycle:
    """Central unitary 2-cocycle on the dual group, with its twisting.

    ``delta`` assigns to each character the morphism of B0 that twists
    the cocycle identity; values are computed lazily and each computed
    value is checked to be central and unitary.
    """

    def __init__(
        self,
        action: TorusAction,
        value_fn: Callable[[Character, Character], TwistedPoly],
        delta_fn: Callable[[Character], AlgebraMorphism] | None = None,
    ):
        self.action = action
        self._value_fn = value_fn
        self._delta_fn = delta_fn
        self._values: dict = {}
        self._deltas: dict = {}

    def value(self, sigma: Character, pi_: Character) -> TwistedPoly:
        key = (tuple(sigma), tuple(pi_))
        cached = self._values.get(key)
        if cached is not None:
            return cached
        val = self._value_fn(*key)
        if not _is_central(self.action, val):
            raise ValueError(f"cocycle value at {key} is not central")
        if val.star() * val != TwistedPoly.one(self.action.twist):
            raise ValueError(f"cocycle value at {key} is not unitary")
        self._values[key] = val
        return val

    def delta(self, char: Character) -> AlgebraMorphism:
        char = tuple(char)
        cached = self._deltas.get(char)
        if cached is None:
            if self._delta_fn is None:
                cached = AlgebraMorphism.identity(self.action)
            else:
                cached = self._delta_fn(char)
            self._deltas[char] = cached
        return cached

    def has_trivial_twist(self, chars) -> bool:
        ident = AlgebraMorphism.identity(self.action)
        return all(self.delta(c).equals_on_generators(ident) for c in chars)


@dataclass
class OneCochain:
    """Normalized map Character -> central unitary, c(0) = 1."""

    action: TorusAction
    values: dict

    def value(self, char: Character) -> TwistedPoly:
        return self.values[tuple(char)]

    def __contains__(self, char) -> bool:
        return tuple(char) in self.values


@dataclass
class Obstruction:
    """Certified failure of the coboundary equation.

    ``residual`` is exactly u(witness) divided by the coboundary of the
    normalized candidate cochain at the witness pair; it differs from 1.
    For an untwisted cocycle an antisymmetric pair u(sigma,pi) !=
    u(pi,sigma) certifies non-triviality outright, since coboundaries of
    central cochains are symmetric; ``kind`` records that stronger form
    when it applies.
    """

    witness: tuple
    residual: TwistedPoly
    kind: str = "coboundary-residual"

    def __str__(self) -> str:
        return f"obstruction[{self.kind}] at {self.witness}: residual {self.residual!r}"


def extract_cocycle(
    fs: FactorSystem, beta: Automorphism, v: PartialIsometryFamily, char_range=3
) -> TwoCocycle:
    """Obstruction 2-cocycle of (beta, v) against a factor system.

    Requires the witness equation Ad[v(sigma)] . gamma_sigma =
    gamma_sigma^beta on the requested box; the offending character and
    generator are reported when it fails.
    """
    action = fs.action
    tw = action.twist
    chars = resolve_chars(action, char_range)
    transported = apply_automorphism(fs, beta)
    for sigma in chars:
        vs = v(sigma)
        vsa = vs.adjoint()
        g = fs.gamma(sigma)
        gb = transported.gamma(sigma)
        for k in action.base:
            b = TwistedPoly.generator(tw, k)
            if vs * g.apply(b) * vsa != gb.apply(b):
                raise WitnessError(
                    f"witness fails the coaction conjugacy at sigma={sigma}, "
                    f"generator {tw.gen_name(k)}",
                    char=sigma,
                    generator=k,
                )

    if fs.isometries is None:
        raise ValueError("cocycle extraction requires an isometry realization")
    s = fs.isometries
    binv = beta.inverse()

    def value_fn(sigma: Character, pi_: Character) -> TwistedPoly:
        sp = char_add(sigma, pi_)
        d_sigma = fs.dim(sigma)
        inner = (
            v(sp)
            * fs.omega(pi_, sigma).adjoint()
            * fs.gamma(pi_).apply_to_matrix(v(sigma).adjoint())
            * v(pi_).adjoint().kron(PolyMatrix.identity(tw, d_sigma))
        )
        inner = binv.apply_matrix(inner)
        return (s(sp).adjoint() * inner * s(pi_).kron(s(sigma))).as_scalar()

    return TwoCocycle(action, value_fn, delta_fn=lambda c: frohlich_morphism(fs, c))


def verify_cocycle(u: TwoCocycle, char_range=2) -> CheckReport:
    """Exact centrality, unitarity, normalization, and the cocycle identity.

    The identity u(sigma+pi, rho) u(sigma, pi) =
    u(sigma, pi+rho) Delta_sigma(u(pi, rho)) is checked on all triples
    from the box.
    """
    action = u.action
    tw = action.twist
    chars = resolve_chars(action, char_range)
    rb = ReportBuilder("two-cocycle-laws")
    one = TwistedPoly.one(tw)

    rb.expect(
        "normalization u(0,0) = 1",
        {},
        u.value(char_zero(action.d), char_zero(action.d)),
        one,
    )

    for sigma in chars:
        for pi_ in chars:
            val = u.value(sigma, pi_)
            rb.expect_true(
                "centrality",
                {"sigma": sigma, "pi": pi_},
                _is_central(action, val),
                str(val),
            )
            rb.expect("unitarity", {"sigma": sigma, "pi": pi_}, val.star() * val, one)

    for sigma in chars:
        delta_sigma = u.delta(sigma)
        for pi_ in chars:
            u_sp = u.value(sigma, pi_)
            sp = char_add(sigma, pi_)
            for rho in chars:
                lhs = u.value(sp, rho) * u_sp
                rhs = u.value(sigma, char_add(pi_, rho)) * delta_sigma.apply(
                    u.value(pi_, rho)
                )
                rb.expect(
                    "cocycle identity", {"sigma": sigma, "pi": pi_, "rho": rho}, lhs, rhs
                )

    return rb.finish()


def solve_coboundary(u: TwoCocycle, char_range=2):
    """Trivialize a central 2-cocycle or certify an obstruction.

    Builds a candidate cochain by exact recursion along staircase paths
    (over Z, the one-variable recursion c(n+1) = c(n) u(n,1)*,
    c(-n-1) = u(-n-1,1) c(-n), normalized to c(0) = c(1) = 1) and then
    substitutes it into the coboundary equation for every pair in the
    box.  Success returns the :class:`OneCochain`; any residual returns
    an :class:`Obstruction` carrying the first witness.

    Over Z the verified recursion always succeeds for a valid cocycle;
    over Z^d with d >= 2 the normalization is a heuristic and a failure
    is a certificate, not merely a missed search.
    """
    action = u.action
    pre = verify_cocycle(u, char_range)
    if not pre.passed:
        raise ValueError(f"input is not a 2-cocycle: {pre.failures[0]}")

    if isinstance(char_range, int):
        radius = char_range
    else:
        radius = max((max(abs(x) for x in c) for c in char_range if any(c)), default=0)
    d = action.d
    one = TwistedPoly.one(action.twist)

    values: dict = {char_zero(d): one}

    def unit_vec(j: int) -> Character:
        e = [0] * d
        e[j] = 1
        return tuple(e)

    def cochain(sig: Character) -> TwistedPoly:
        cached = values.get(sig)
        if cached is not None:
            return cached
        j = max(i for i in range(d) if sig[i] != 0)
        e = unit_vec(j)
        if sig[j] > 0:
            prev = char_add(sig, tuple(-x for x in e))
            val = u.value(prev, e).star() * cochain(prev)
        else:
            nxt = char_add(sig, e)
            val = u.value(sig, e) * cochain(nxt)
        values[sig] = val
        return val

    for sig in char_box(d, 2 * radius):
        cochain(sig)

    for sigma in char_box(d, radius):
        delta_sigma = u.delta(sigma)
        for pi_ in char_box(d, radius):
            expected = (
                delta_sigma.apply(values[pi_])
                * values[sigma]
                * values[char_add(sigma, pi_)].star()
            )
            actual = u.value(sigma, pi_)
            if actual != expected:
                box = char_box(d, radius)
                if u.has_trivial_twist(box):
                    # coboundaries of central cochains are symmetric when the
                    # twist is trivial, so an asymmetric pair is a certificate
                    for s2 in box:
                        for p2 in box:
                            ratio = u.value(s2, p2) * u.value(p2, s2).star()
                            if ratio != one:
                                return Obstruction(
                                    witness=(s2, p2),
                                    residual=ratio,
                                    kind="antisymmetric-class",
                                )
                return Obstruction(
                    witness=(sigma, pi_),
                    residual=actual * expected.star(),
                    kind="coboundary-residual",
                )

    return OneCochain(action, values)


def pointwise_ratio(a: TwoCocycle, b: TwoCocycle) -> TwoCocycle:
    """The cocycle a/b (same twisting); a coboundary when a and b are
    extracted from the same automorphism with different witnesses."""
    return TwoCocycle(
        a.action,
        lambda s, p: a.value(s, p) * b.value(s, p).star(),
        delta_fn=a.delta,
    )


def updated_witness(
    fs: FactorSystem,
    beta: Automorphism,
    v: PartialIsometryFamily,
    cochain: OneCochain,
) -> PartialIsometryFamily:
    """Absorb a trivializing cochain into the witness family.

    The corrected family v'(sigma) = beta(gamma_sigma(c(sigma))) v(sigma)
    intertwines the full factor systems, not just the coactions.
    """

    def fn(char: Character) -> PolyMatrix:
        g = fs.gamma(char)
        return beta.apply_matrix(g.apply(cochain.value(char))) * v(char)

    return PartialIsometryFamily(fs.action, fn)


class LiftedAutomorphism:
    """Equivariant automorphism of the whole algebra extending beta.

    Acts on the isotypic component of weight sigma by
    y s(sigma) -> beta(y) v(sigma) s(sigma), where v witnesses the
    conjugacy between the factor system and its transport under beta.
    The witness is verified at construction.
    """

    def __init__(
        self,
        fs: FactorSystem,
        beta: Automorphism,
        v: PartialIsometryFamily,
        char_range=2,
        gen_degree: int = 2,
    ):
        if fs.isometries is None:
            raise ValueError("lifting requires an isometry realization")
        rep = verify_conjugacy(fs, apply_automorphism(fs, beta), v, char_range, gen_degree)
        if not rep.passed:
            raise WitnessError(
                f"witness does not intertwine the factor systems: {rep.failures[0]}"
            )
        self.fs = fs
        self.beta = beta
        self.v = v

    def apply_component(self, char: Character, x: TwistedPoly) -> TwistedPoly:
        s = self.fs.isometries(char)
        y = s.adjoint().scale_left(x)
        out = self.beta.apply_matrix(y) * self.v(char) * s
        return out.as_scalar()

    def apply_graded(self, x) -> "GradedElement":
        from .dynamics import GradedElement

        return GradedElement(
            self.fs.action,
            {c: self.apply_component(c, p) for c, p in x.components.items()},
        )

    def apply(self, x: TwistedPoly) -> TwistedPoly:
        from .dynamics import grade

        return self.apply_graded(grade(self.fs.action, x)).to_poly()


def lift_automorphism(fs, beta, v, x, char_range=2, gen_degree: int = 2):
    """One-shot lift application; see :class:`LiftedAutomorphism`."""
    return LiftedAutomorphism(fs, beta, v, char_range, gen_degree).apply_graded(x)


@dataclass
class LiftOutcome:
    """Result of the full extract / verify / solve / materialize pipeline."""

    cocycle: TwoCocycle
    cocycle_report: CheckReport
    solved: OneCochain | None
    obstruction: Obstruction | None
    lifted: LiftedAutomorphism | None

    @property
    def lifts(self) -> bool:
        return self.lifted is not None


def lift_via_cohomology(
    fs: FactorSystem,
    beta: Automorphism,
    v: PartialIsometryFamily,
    char_range=2,
    gen_degree: int = 2,
) -> LiftOutcome:
    """Extract the obstruction cocycle, solve it, and materialize the lift."""
    u = extract_cocycle(fs, beta, v, char_range)
    rep = verify_cocycle(u, char_range)
    if not rep.passed:
        return LiftOutcome(u, rep, None, None, None)
    outcome = solve_coboundary(u, char_range)
    if isinstance(outcome, Obstruction):
        return LiftOutcome(u, rep, None, outcome, None)
    v2 = updated_witness(fs, beta, v, outcome)
    lifted = LiftedAutomorphism(fs, beta, v2, char_range, gen_degree)
    return LiftOutcome(u, rep, outcome, None, lifted)
