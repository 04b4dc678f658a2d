"""Factor systems for torus actions: construction, transport, verification.

A factor system packages, for each character sigma of the acting torus,
a coaction-like morphism gamma_sigma of the fixed algebra B0 (valued in
d_sigma x d_sigma matrices over B0) and, for each pair of characters, a
cocycle matrix omega(sigma, pi).  For a cleft action both are computed
from the unitary weight monomials s(sigma):

    gamma_sigma(b) = s(sigma) b s(sigma)*          (conjugation)
    omega(sigma, pi) = s(sigma) s(pi) s(sigma+pi)*

All verifiers in this module check their laws exactly (structural
equality of canonical forms) over a finite character box and a finite
set of fixed-algebra monomials; that suffices because every law is
multiplicative and linear in the algebra argument.
"""

from __future__ import annotations

from typing import Callable

from .algebra import PolyMatrix, TwistedPoly, exchange_phase
from .dynamics import (
    Character,
    TorusAction,
    base_monomials,
    char_add,
    char_zero,
    cleft_generator,
    in_base_algebra,
    is_equivariant,
    matrix_in_base_algebra,
    resolve_chars,
)
from .report import CheckReport, ReportBuilder


class ScopeError(ValueError):
    """Element lies outside the algebra a morphism is defined on."""


# ---------------------------------------------------------------------------
# morphisms of the fixed algebra
# ---------------------------------------------------------------------------


class AlgebraMorphism:
    """Unital *-algebra morphism of B0 given by generator images.

    ``images[k]`` is the image of u_k and ``inv_images[k]`` the image of
    u_k^-1 for every non-acting generator k; the map extends to all of
    B0 multiplicatively and linearly (formal phase coefficients are
    fixed pointwise).
    """

    __slots__ = ("action", "images", "inv_images", "_powers")

    def __init__(self, action: TorusAction, images: dict, inv_images: dict | None = None):
        self.action = action
        self.images = dict(images)
        if inv_images is None:
            inv_images = {k: img.inverse_monomial() for k, img in self.images.items()}
        self.inv_images = dict(inv_images)
        missing = set(action.base) - set(self.images)
        if missing:
            raise ValueError(f"missing generator images for indices {sorted(missing)}")
        for k in action.base:
            if not in_base_algebra(action, self.images[k]):
                raise ScopeError(f"image of {action.twist.gen_name(k)} leaves the fixed algebra")
            if not in_base_algebra(action, self.inv_images[k]):
                raise ScopeError(
                    f"image of {action.twist.gen_name(k)}^-1 leaves the fixed algebra"
                )
        self._powers: dict = {}

    @classmethod
    def identity(cls, action: TorusAction) -> "AlgebraMorphism":
        tw = action.twist
        return cls(
            action,
            {k: TwistedPoly.generator(tw, k) for k in action.base},
            {k: TwistedPoly.generator(tw, k, -1) for k in action.base},
        )

    def _power(self, k: int, m: int) -> TwistedPoly:
        if m == 0:
            return TwistedPoly.one(self.action.twist)
        cached = self._powers.get((k, m))
        if cached is not None:
            return cached
        base = self.images[k] if m > 0 else self.inv_images[k]
        out = base
        for _ in range(abs(m) - 1):
            out = out * base
        self._powers[(k, m)] = out
        return out

    def apply(self, x: TwistedPoly) -> TwistedPoly:
        total = TwistedPoly.zero(self.action.twist)
        for a, phase in x.terms.items():
            for j in self.action.coords:
                if a[j] != 0:
                    raise ScopeError("morphism applied outside the fixed algebra")
            term = TwistedPoly.scalar(self.action.twist, phase)
            for k in self.action.base:
                if a[k]:
                    term = term * self._power(k, a[k])
            total = total + term
        return total

    def apply_matrix(self, m: PolyMatrix) -> PolyMatrix:
        return m.map(self.apply)

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """self after other."""
        return AlgebraMorphism(
            self.action,
            {k: self.apply(other.images[k]) for k in self.action.base},
            {k: self.apply(other.inv_images[k]) for k in self.action.base},
        )

    def respects_relations(self) -> bool:
        tw = self.action.twist
        for i, k in enumerate(self.action.base):
            for l in self.action.base[i + 1 :]:
                lam = TwistedPoly.scalar(tw, exchange_phase(tw, k, l))
                lhs = self.images[k] * self.images[l]
                rhs = lam * (self.images[l] * self.images[k])
                if lhs != rhs:
                    return False
            if self.images[k] * self.inv_images[k] != TwistedPoly.one(tw):
                return False
        return True

    def is_star_morphism(self) -> bool:
        return all(
            self.inv_images[k] == self.images[k].star() for k in self.action.base
        )

    def equals_on_generators(self, other: "AlgebraMorphism") -> bool:
        return all(self.images[k] == other.images[k] for k in self.action.base)


class Automorphism:
    """Invertible *-morphism of B0: a forward and a verified inverse leg."""

    __slots__ = ("fwd", "inv")

    def __init__(self, fwd: AlgebraMorphism, inv: AlgebraMorphism, check: bool = True):
        self.fwd = fwd
        self.inv = inv
        if check:
            ident = AlgebraMorphism.identity(fwd.action)
            if not fwd.compose(inv).equals_on_generators(ident):
                raise ValueError("inverse images do not invert the morphism")
            if not inv.compose(fwd).equals_on_generators(ident):
                raise ValueError("inverse images do not invert the morphism")
            if not fwd.respects_relations():
                raise ValueError("automorphism violates the defining relations")

    @property
    def action(self) -> TorusAction:
        return self.fwd.action

    @classmethod
    def identity(cls, action: TorusAction) -> "Automorphism":
        ident = AlgebraMorphism.identity(action)
        return cls(ident, ident, check=False)

    @classmethod
    def diagonal(cls, action: TorusAction, weights: dict) -> "Automorphism":
        """Gauge automorphism u_k -> w_k u_k for unimodular phases w_k."""
        tw = action.twist
        images, inv_images, rimages, rinv = {}, {}, {}, {}
        for k in action.base:
            w = weights.get(k)
            gen = TwistedPoly.generator(tw, k)
            geninv = TwistedPoly.generator(tw, k, -1)
            if w is None:
                images[k], inv_images[k] = gen, geninv
                rimages[k], rinv[k] = gen, geninv
            else:
                images[k] = gen.scale(w)
                inv_images[k] = geninv.scale(w.invert())
                rimages[k] = gen.scale(w.invert())
                rinv[k] = geninv.scale(w)
        return cls(
            AlgebraMorphism(action, images, inv_images),
            AlgebraMorphism(action, rimages, rinv),
        )

    @classmethod
    def inner(cls, action: TorusAction, a: TwistedPoly) -> "Automorphism":
        """Conjugation by an invertible monomial a of the fixed algebra."""
        if not in_base_algebra(action, a):
            raise ScopeError("conjugating element must lie in the fixed algebra")
        a_inv = a.inverse_monomial()
        tw = action.twist

        def leg(u, u_inv):
            images = {
                k: u * TwistedPoly.generator(tw, k) * u_inv for k in action.base
            }
            inv_images = {
                k: u * TwistedPoly.generator(tw, k, -1) * u_inv for k in action.base
            }
            return AlgebraMorphism(action, images, inv_images)

        return cls(leg(a, a_inv), leg(a_inv, a))

    def apply(self, x: TwistedPoly) -> TwistedPoly:
        return self.fwd.apply(x)

    def apply_matrix(self, m: PolyMatrix) -> PolyMatrix:
        return m.map(self.fwd.apply)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.inv, self.fwd, check=False)

    def compose(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(
            self.fwd.compose(other.fwd), other.inv.compose(self.inv), check=False
        )


class MatrixMorphism:
    """Morphism B0 -> Mat_d(B0) given by matrix images of the generators."""

    __slots__ = ("action", "dim", "images", "inv_images", "_powers")

    def __init__(self, action: TorusAction, dim: int, images: dict, inv_images: dict):
        self.action = action
        self.dim = dim
        self.images = dict(images)
        self.inv_images = dict(inv_images)
        self._powers: dict = {}

    @classmethod
    def identity(cls, action: TorusAction, dim: int = 1) -> "MatrixMorphism":
        tw = action.twist
        ident = PolyMatrix.identity(tw, dim)
        return cls(
            action,
            dim,
            {k: ident.scale_left(TwistedPoly.generator(tw, k)) for k in action.base},
            {k: ident.scale_left(TwistedPoly.generator(tw, k, -1)) for k in action.base},
        )

    @classmethod
    def from_scalar(cls, morphism: AlgebraMorphism) -> "MatrixMorphism":
        return cls(
            morphism.action,
            1,
            {k: PolyMatrix.from_scalar(v) for k, v in morphism.images.items()},
            {k: PolyMatrix.from_scalar(v) for k, v in morphism.inv_images.items()},
        )

    def scalar_morphism(self) -> AlgebraMorphism:
        if self.dim != 1:
            raise ValueError("matrix morphism is not one-dimensional")
        return AlgebraMorphism(
            self.action,
            {k: v.as_scalar() for k, v in self.images.items()},
            {k: v.as_scalar() for k, v in self.inv_images.items()},
        )

    def _power(self, k: int, m: int) -> PolyMatrix:
        if m == 0:
            return PolyMatrix.identity(self.action.twist, self.dim)
        cached = self._powers.get((k, m))
        if cached is not None:
            return cached
        base = self.images[k] if m > 0 else self.inv_images[k]
        out = base
        for _ in range(abs(m) - 1):
            out = out * base
        self._powers[(k, m)] = out
        return out

    def apply(self, x: TwistedPoly) -> PolyMatrix:
        tw = self.action.twist
        total = PolyMatrix.zeros(tw, self.dim, self.dim)
        for a, phase in x.terms.items():
            for j in self.action.coords:
                if a[j] != 0:
                    raise ScopeError("morphism applied outside the fixed algebra")
            term = PolyMatrix.identity(tw, self.dim).scale_left(
                TwistedPoly.scalar(tw, phase)
            )
            for k in self.action.base:
                if a[k]:
                    term = term * self._power(k, a[k])
            total = total + term
        return total

    def apply_to_matrix(self, m: PolyMatrix) -> PolyMatrix:
        """Entrywise application; the morphism indexes the outer tensor leg.

        Result[(s1*m.rows + r), (s2*m.cols + c)] = apply(m[r, c])[s1, s2].
        """
        d = self.dim
        blocks = [[self.apply(m.entries[r][c]) for c in range(m.cols)] for r in range(m.rows)]
        rows = []
        for s1 in range(d):
            for r in range(m.rows):
                row = []
                for s2 in range(d):
                    for c in range(m.cols):
                        row.append(blocks[r][c].entries[s1][s2])
                rows.append(row)
        return PolyMatrix(self.action.twist, rows)

    def unit(self) -> PolyMatrix:
        return self.apply(TwistedPoly.one(self.action.twist))


# ---------------------------------------------------------------------------
# isometry data
# ---------------------------------------------------------------------------


class IsometryFamily:
    """Family of equivariant isometry columns s(sigma) over the full algebra."""

    __slots__ = ("action", "_fn", "cleft", "_cache")

    def __init__(self, action: TorusAction, fn: Callable[[Character], PolyMatrix], cleft: bool):
        self.action = action
        self._fn = fn
        self.cleft = cleft
        self._cache: dict = {}

    @classmethod
    def from_cleft_generators(cls, action: TorusAction) -> "IsometryFamily":
        def fn(char: Character) -> PolyMatrix:
            return PolyMatrix.from_scalar(cleft_generator(action, char))

        return cls(action, fn, cleft=True)

    def __call__(self, char: Character) -> PolyMatrix:
        char = tuple(char)
        cached = self._cache.get(char)
        if cached is not None:
            return cached
        m = self._fn(char)
        for row in m.entries:
            for e in row:
                if not is_equivariant(self.action, e, char):
                    raise ValueError(f"isometry entry at {char} is not equivariant")
        if char == char_zero(self.action.d) and m != PolyMatrix.identity(self.action.twist, 1):
            raise ValueError("isometry family must send the trivial character to 1")
        self._cache[char] = m
        return m


class PartialIsometryFamily:
    """Family of matrices over B0 used as conjugacy witnesses, v(0) = 1."""

    __slots__ = ("action", "_fn", "_cache")

    def __init__(self, action: TorusAction, fn: Callable[[Character], PolyMatrix]):
        self.action = action
        self._fn = fn
        self._cache: dict = {}

    @classmethod
    def constant_one(cls, action: TorusAction) -> "PartialIsometryFamily":
        one = PolyMatrix.from_scalar(TwistedPoly.one(action.twist))
        return cls(action, lambda char: one)

    @classmethod
    def from_scalars(cls, action: TorusAction, fn: Callable[[Character], TwistedPoly]):
        return cls(action, lambda char: PolyMatrix.from_scalar(fn(char)))

    def __call__(self, char: Character) -> PolyMatrix:
        char = tuple(char)
        cached = self._cache.get(char)
        if cached is not None:
            return cached
        m = self._fn(char)
        if not matrix_in_base_algebra(self.action, m):
            raise ScopeError(f"witness at {char} leaves the fixed algebra")
        if char == char_zero(self.action.d):
            if m.rows != m.cols or m != PolyMatrix.identity(self.action.twist, m.rows):
                raise ValueError("witness family must send the trivial character to 1")
        self._cache[char] = m
        return m


# ---------------------------------------------------------------------------
# the factor system itself
# ---------------------------------------------------------------------------


class FactorSystem:
    """Character-indexed (dim, gamma, omega) data over a torus action.

    gamma and omega are lazily computed and cached; overridden entries
    (used to inject defects for verifier testing) shadow the generating
    rule.  Instances are immutable; overrides produce copies.
    """

    def __init__(
        self,
        action: TorusAction,
        dim_fn: Callable[[Character], int],
        gamma_fn: Callable[[Character], MatrixMorphism],
        omega_fn: Callable[[Character, Character], PolyMatrix],
        isometries: IsometryFamily | None = None,
    ):
        self.action = action
        self._dim_fn = dim_fn
        self._gamma_fn = gamma_fn
        self._omega_fn = omega_fn
        self.isometries = isometries
        self._gamma_cache: dict = {}
        self._omega_cache: dict = {}
        self._gamma_overrides: dict = {}
        self._omega_overrides: dict = {}

    def dim(self, char: Character) -> int:
        return self._dim_fn(tuple(char))

    def gamma(self, char: Character) -> MatrixMorphism:
        char = tuple(char)
        if char in self._gamma_overrides:
            return self._gamma_overrides[char]
        cached = self._gamma_cache.get(char)
        if cached is None:
            cached = self._gamma_fn(char)
            self._gamma_cache[char] = cached
        return cached

    def omega(self, sigma: Character, pi_: Character) -> PolyMatrix:
        key = (tuple(sigma), tuple(pi_))
        if key in self._omega_overrides:
            return self._omega_overrides[key]
        cached = self._omega_cache.get(key)
        if cached is None:
            cached = self._omega_fn(*key)
            self._omega_cache[key] = cached
        return cached

    def _copy(self) -> "FactorSystem":
        fs = FactorSystem(
            self.action, self._dim_fn, self._gamma_fn, self._omega_fn, self.isometries
        )
        fs._gamma_cache = self._gamma_cache
        fs._omega_cache = self._omega_cache
        fs._gamma_overrides = dict(self._gamma_overrides)
        fs._omega_overrides = dict(self._omega_overrides)
        return fs

    def with_omega_override(self, sigma, pi_, value: PolyMatrix) -> "FactorSystem":
        fs = self._copy()
        fs._omega_overrides[(tuple(sigma), tuple(pi_))] = value
        return fs

    def with_gamma_override(self, sigma, morphism: MatrixMorphism) -> "FactorSystem":
        fs = self._copy()
        fs._gamma_overrides[tuple(sigma)] = morphism
        return fs


def from_cleft(action: TorusAction, s: IsometryFamily | None = None) -> FactorSystem:
    """Factor system of a cleft action from its equivariant unitaries."""
    if s is None:
        s = IsometryFamily.from_cleft_generators(action)
    tw = action.twist

    def dim_fn(char: Character) -> int:
        return s(char).rows

    def gamma_fn(char: Character) -> MatrixMorphism:
        sm = s(char)
        sa = sm.adjoint()
        images, inv_images = {}, {}
        for k in action.base:
            for power, store in ((1, images), (-1, inv_images)):
                gen = PolyMatrix.from_scalar(TwistedPoly.generator(tw, k, power))
                img = sm * gen * sa
                if not matrix_in_base_algebra(action, img):
                    raise ScopeError(
                        f"conjugated image of {tw.gen_name(k)} leaves the fixed algebra"
                    )
                store[k] = img
        return MatrixMorphism(action, sm.rows, images, inv_images)

    def omega_fn(sigma: Character, pi_: Character) -> PolyMatrix:
        m = s(sigma).kron(s(pi_)) * s(char_add(sigma, pi_)).adjoint()
        if not matrix_in_base_algebra(action, m):
            raise ScopeError(f"cocycle value at {(sigma, pi_)} leaves the fixed algebra")
        return m

    return FactorSystem(action, dim_fn, gamma_fn, omega_fn, isometries=s)


def apply_automorphism(fs: FactorSystem, phi: Automorphism) -> FactorSystem:
    """Transport the factor system along an automorphism of the fixed algebra.

    The new coaction is phi . gamma_sigma . phi^-1 and the new cocycle is
    phi applied entrywise to omega.
    """
    action = fs.action
    tw = action.twist

    def gamma_fn(char: Character) -> MatrixMorphism:
        g = fs.gamma(char)
        images, inv_images = {}, {}
        for k in action.base:
            for power, store in ((1, images), (-1, inv_images)):
                pre = phi.inv.apply(TwistedPoly.generator(tw, k, power))
                store[k] = phi.apply_matrix(g.apply(pre))
        return MatrixMorphism(action, g.dim, images, inv_images)

    def omega_fn(sigma: Character, pi_: Character) -> PolyMatrix:
        return phi.apply_matrix(fs.omega(sigma, pi_))

    return FactorSystem(action, fs.dim, gamma_fn, omega_fn, isometries=None)


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------


def verify_axioms(fs: FactorSystem, char_range=3, gen_degree: int = 2) -> CheckReport:
    """Exact check of the coaction/cocycle laws over a finite box.

    Laws checked for all characters sigma, pi, rho in the box and all
    fixed-algebra monomials b up to gen_degree:

      omega* omega = gamma_{sigma+pi}(1)
      omega omega* = gamma_sigma(gamma_pi(1))
      omega(sigma,pi) gamma_{sigma+pi}(b) = gamma_sigma(gamma_pi(b)) omega(sigma,pi)
      (omega(sigma,pi) ox 1) omega(sigma+pi,rho)
          = gamma_sigma(omega(pi,rho)) omega(sigma,pi+rho)

    plus the normalizations gamma_0 = id and omega(0,.) = gamma(1) = omega(.,0).
    """
    action = fs.action
    tw = action.twist
    chars = resolve_chars(action, char_range)
    monomials = base_monomials(action, gen_degree)
    rb = ReportBuilder("factor-system-axioms")
    zero = char_zero(action.d)

    g0 = fs.gamma(zero)
    for k in action.base:
        rb.expect(
            "normalization gamma_0 = id",
            {"generator": tw.gen_name(k)},
            g0.apply(TwistedPoly.generator(tw, k)),
            PolyMatrix.from_scalar(TwistedPoly.generator(tw, k)),
        )

    for sigma in chars:
        gs = fs.gamma(sigma)
        unit = gs.unit()
        rb.expect("normalization omega(0, sigma) = gamma_sigma(1)",
                  {"sigma": sigma}, fs.omega(zero, sigma), unit)
        rb.expect("normalization omega(sigma, 0) = gamma_sigma(1)",
                  {"sigma": sigma}, fs.omega(sigma, zero), unit)

    for sigma in chars:
        gs = fs.gamma(sigma)
        for pi_ in chars:
            gp = fs.gamma(pi_)
            om = fs.omega(sigma, pi_)
            oma = om.adjoint()
            rb.expect(
                "range projection omega* omega = gamma_{sigma+pi}(1)",
                {"sigma": sigma, "pi": pi_},
                oma * om,
                fs.gamma(char_add(sigma, pi_)).unit(),
            )
            rb.expect(
                "range projection omega omega* = gamma_sigma(gamma_pi(1))",
                {"sigma": sigma, "pi": pi_},
                om * oma,
                gs.apply_to_matrix(gp.unit()),
            )
            gsp = fs.gamma(char_add(sigma, pi_))
            for b in monomials:
                rb.expect(
                    "coaction intertwining",
                    {"sigma": sigma, "pi": pi_, "b": b},
                    om * gsp.apply(b),
                    gs.apply_to_matrix(gp.apply(b)) * om,
                )

    for sigma in chars:
        gs = fs.gamma(sigma)
        for pi_ in chars:
            om_sp = fs.omega(sigma, pi_)
            sp = char_add(sigma, pi_)
            for rho in chars:
                d_rho = fs.dim(rho)
                lhs = om_sp.kron(PolyMatrix.identity(tw, d_rho)) * fs.omega(sp, rho)
                rhs = gs.apply_to_matrix(fs.omega(pi_, rho)) * fs.omega(
                    sigma, char_add(pi_, rho)
                )
                rb.expect(
                    "cocycle identity",
                    {"sigma": sigma, "pi": pi_, "rho": rho},
                    lhs,
                    rhs,
                )

    return rb.finish()


def verify_conjugacy(
    fs: FactorSystem,
    fs2: FactorSystem,
    v: PartialIsometryFamily,
    char_range=3,
    gen_degree: int = 2,
) -> CheckReport:
    """Exact check that v intertwines two factor systems.

    Checks Ad[v(sigma)] . gamma = gamma', Ad[v(sigma)*] . gamma' = gamma,
    and (v(sigma) ox 1) gamma_sigma(v(pi)) omega(sigma,pi)
        = omega'(sigma,pi) v(sigma+pi).
    """
    action = fs.action
    tw = action.twist
    chars = resolve_chars(action, char_range)
    monomials = base_monomials(action, gen_degree)
    rb = ReportBuilder("factor-system-conjugacy")

    for sigma in chars:
        vs = v(sigma)
        vsa = vs.adjoint()
        g = fs.gamma(sigma)
        g2 = fs2.gamma(sigma)
        for b in monomials:
            rb.expect(
                "witness conjugates coaction forward",
                {"sigma": sigma, "b": b},
                vs * g.apply(b) * vsa,
                g2.apply(b),
            )
            rb.expect(
                "witness conjugates coaction backward",
                {"sigma": sigma, "b": b},
                vsa * g2.apply(b) * vs,
                g.apply(b),
            )

    for sigma in chars:
        vs = v(sigma)
        g = fs.gamma(sigma)
        for pi_ in chars:
            vp = v(pi_)
            lhs = (
                vs.kron(PolyMatrix.identity(tw, vp.rows))
                * g.apply_to_matrix(vp)
                * fs.omega(sigma, pi_)
            )
            rhs = fs2.omega(sigma, pi_) * v(char_add(sigma, pi_))
            rb.expect(
                "witness intertwines cocycles",
                {"sigma": sigma, "pi": pi_},
                lhs,
                rhs,
            )

    return rb.finish()


def frohlich_map(fs: FactorSystem, char: Character, b: TwistedPoly) -> TwistedPoly:
    """Conjugation of the fixed algebra by the isometry: s(sigma)* b s(sigma)."""
    if fs.isometries is None:
        raise ValueError("factor system carries no isometry realization")
    s = fs.isometries(tuple(char))
    middle = PolyMatrix.identity(fs.action.twist, s.rows).scale_left(b)
    return (s.adjoint() * middle * s).as_scalar()


def frohlich_morphism(fs: FactorSystem, char: Character) -> AlgebraMorphism:
    """The conjugation action of a character as a morphism of B0.

    For central elements this is the twisting that enters the cocycle
    identity; the restriction to the center is independent of the chosen
    isometries.
    """
    action = fs.action
    tw = action.twist
    images = {k: frohlich_map(fs, char, TwistedPoly.generator(tw, k)) for k in action.base}
    inv_images = {
        k: frohlich_map(fs, char, TwistedPoly.generator(tw, k, -1)) for k in action.base
    }
    return AlgebraMorphism(action, images, inv_images)


def verify_gauge_unitary(
    fs: FactorSystem, u: PartialIsometryFamily, char_range=3, gen_degree: int = 2
) -> CheckReport:
    """Exact check that a family u(sigma) is a gauge transformation.

    Checks unitarity relative to gamma_sigma(1), membership in the
    commutant of the coaction image, and the intertwining law
    (u(sigma) ox 1) gamma_sigma(u(pi)) omega = omega u(sigma+pi).
    """
    action = fs.action
    tw = action.twist
    chars = resolve_chars(action, char_range)
    monomials = base_monomials(action, gen_degree)
    rb = ReportBuilder("gauge-unitary")

    for sigma in chars:
        us = u(sigma)
        usa = us.adjoint()
        g = fs.gamma(sigma)
        unit = g.unit()
        rb.expect("relative unitarity u*u", {"sigma": sigma}, usa * us, unit)
        rb.expect("relative unitarity uu*", {"sigma": sigma}, us * usa, unit)
        for b in monomials:
            gb = g.apply(b)
            rb.expect(
                "commutant of the coaction image",
                {"sigma": sigma, "b": b},
                us * gb,
                gb * us,
            )

    for sigma in chars:
        us = u(sigma)
        g = fs.gamma(sigma)
        for pi_ in chars:
            up = u(pi_)
            om = fs.omega(sigma, pi_)
            lhs = us.kron(PolyMatrix.identity(tw, up.rows)) * g.apply_to_matrix(up) * om
            rhs = om * u(char_add(sigma, pi_))
            rb.expect("gauge intertwining", {"sigma": sigma, "pi": pi_}, lhs, rhs)

    return rb.finish()


def isotypic_mul(fs: FactorSystem, left, right, check: bool = True):
    """Multiply isotypic components through the factor system.

    ``left`` and ``right`` are pairs (character, row matrix over B0); a
    bare polynomial stands for a 1 x 1 row.  Returns the pair for the
    product component:

        y = (y_sigma ox 1) gamma_sigma(y_pi) omega(sigma, pi)

    With ``check=True`` the result is compared against the plain algebra
    product of the realized elements, the module's brute-force oracle.
    """
    sigma, y_sigma = left
    pi_, y_pi = right
    sigma, pi_ = tuple(sigma), tuple(pi_)
    tw = fs.action.twist
    if isinstance(y_sigma, TwistedPoly):
        y_sigma = PolyMatrix.from_scalar(y_sigma)
    if isinstance(y_pi, TwistedPoly):
        y_pi = PolyMatrix.from_scalar(y_pi)

    g = fs.gamma(sigma)
    y = y_sigma.kron(PolyMatrix.identity(tw, y_pi.rows)) * g.apply_to_matrix(y_pi) * fs.omega(sigma, pi_)

    if check:
        if fs.isometries is None:
            raise ValueError("cross-check requires an isometry realization")
        s = fs.isometries
        x1 = (y_sigma * s(sigma)).as_scalar()
        x2 = (y_pi * s(pi_)).as_scalar()
        expected = (y * s(char_add(sigma, pi_))).as_scalar()
        if x1 * x2 != expected:
            raise AssertionError("isotypic product disagrees with the algebra product")
    return char_add(sigma, pi_), y
