"""Local models of simple Hecke modifications and Higgs normal forms.

Everything here happens over the truncated local ring R = Q(sqrt2)[[zeta]]
mod zeta^T at one marked point.  A covector xi on the rank-2 fiber cuts out
the modified sheaf as the kernel of the evaluation map; the kernel is free
with two explicit generators, and packing them into a 2x2 frame matrix
normalized to determinant exactly zeta recovers the two Higgs components
as its rows:

    eps = [[f2, -f1], [g1, g2]],   beta = (f1, f2),  gamma = (g1, g2),

so gamma . beta = det(eps) = zeta, a simple zero.  The position of the
covector on P^1 is visible in the constant terms: gamma vanishes at the
point iff xi sits at [0:1], beta vanishes iff xi sits at [1:0].

smith_form reduces any 2x2 matrix with determinant exactly zeta to
diag(1, zeta) by unit row/column operations, constructively.  All checks
are exact identities at order T.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Callable, Optional, Sequence

from .configuration import FiberPoint
from .errors import (
    HeckeDatumError,
    InternalInconsistencyError,
    OrderMismatchError,
    SmithPreconditionError,
)
from .exact import DEFAULT_ORDER, Mat2, Scalar, SeriesPair, TruncatedSeries

ScalarMat = tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
ScalarVec = tuple[Scalar, Scalar]


# evaluation covectors


@dataclass(frozen=True)
class EvaluationCovector:
    """Covector (xi0, xi1) on the rank-2 fiber at the marked point.

    Only the spanned line matters, so the constructor normalizes the first
    nonzero component to 1.  The components double as the homogeneous
    coordinates [xi0 : xi1] of the corresponding fiber point.
    """

    xi0: Scalar
    xi1: Scalar

    def __post_init__(self) -> None:
        xi0, xi1 = Scalar.of(self.xi0), Scalar.of(self.xi1)
        if xi0.is_zero() and xi1.is_zero():
            raise ValueError("the zero covector spans no line")
        scale = xi0.inverse() if not xi0.is_zero() else xi1.inverse()
        object.__setattr__(self, "xi0", scale * xi0)
        object.__setattr__(self, "xi1", scale * xi1)

    @staticmethod
    def from_fiber_point(p: FiberPoint) -> "EvaluationCovector":
        if p.is_zero():
            return EvaluationCovector(Scalar.zero(), Scalar.one())
        if p.is_infinity():
            return EvaluationCovector(Scalar.one(), Scalar.zero())
        return EvaluationCovector(p.t, Scalar.one())

    def fiber_point(self) -> FiberPoint:
        if self.xi0.is_zero():
            return FiberPoint.zero()
        if self.xi1.is_zero():
            return FiberPoint.infinity()
        return FiberPoint.finite(self.xi0 / self.xi1)


def evaluate(xi: EvaluationCovector, section: SeriesPair) -> Scalar:
    """Value of the covector on a local section pair: xi0 f0(0) + xi1 f1(0)."""
    return xi.xi0 * section[0].constant_term + xi.xi1 * section[1].constant_term


# kernel generators and frame matrices


def hecke_kernel(
    xi: EvaluationCovector, order: int = DEFAULT_ORDER
) -> tuple[SeriesPair, SeriesPair]:
    """Free generators of the kernel of the evaluation map.

    For xi1 != 0 the kernel is spanned by (1, -xi0/xi1) and (0, zeta);
    for xi1 == 0 by (0, 1) and (zeta, 0).  Either pair has determinant a
    unit multiple of zeta, witnessing a simple modification.
    """
    if order < 2:
        raise ValueError("truncation order must be >= 2 to represent zeta")
    one = TruncatedSeries.one(order)
    zero = TruncatedSeries.zero(order)
    zeta = TruncatedSeries.zeta(order)
    if not xi.xi1.is_zero():
        slope = TruncatedSeries.constant(-(xi.xi0 / xi.xi1), order)
        return (one, slope), (zero, zeta)
    return (zero, one), (zeta, zero)


def kernel_frame_matrix(gen1: SeriesPair, gen2: SeriesPair) -> Mat2:
    """Columns gen1, gen2, normalized so the determinant is exactly zeta.

    The input determinant must be a unit multiple of zeta (a simple zero).
    The unit is divided out of the second column; a determinant that is a
    unit, or vanishes to order two or more, is not a simple-zero Hecke
    datum and is rejected.
    """
    eps0 = Mat2.from_cols(gen1, gen2)
    d = eps0.det()
    if d.is_unit():
        raise HeckeDatumError("generator determinant is a unit, no modification")
    if d.order < 2 or d[1].is_zero():
        raise HeckeDatumError(
            "generator determinant vanishes to order >= 2, not a simple zero"
        )
    u = d.div_zeta()  # d == zeta * u exactly, u a unit
    eps = eps0.scale_col(1, u.inverse())
    if eps.det() != TruncatedSeries.zeta(eps.order):
        raise InternalInconsistencyError("normalization failed to reach det = zeta")
    return eps


@dataclass(frozen=True)
class LocalHiggs:
    """The two Higgs components at the marked point, beta a column and
    gamma a row, with gamma . beta = zeta for a simple modification."""

    beta: SeriesPair
    gamma: SeriesPair

    def __post_init__(self) -> None:
        orders = {s.order for s in (*self.beta, *self.gamma)}
        if len(orders) != 1:
            raise OrderMismatchError(f"mixed truncation orders: {sorted(orders)}")

    @property
    def order(self) -> int:
        return self.beta[0].order

    def gamma_beta(self) -> TruncatedSeries:
        return self.gamma[0] * self.beta[0] + self.gamma[1] * self.beta[1]


def higgs_from_kernel_frame(eps: Mat2) -> LocalHiggs:
    """Read beta and gamma off a det = zeta frame: eps = [[f2, -f1], [g1, g2]]."""
    if eps.det() != TruncatedSeries.zeta(eps.order):
        raise HeckeDatumError("frame determinant must equal zeta exactly")
    beta = (-eps[0][1], eps[0][0])
    gamma = (eps[1][0], eps[1][1])
    return LocalHiggs(beta, gamma)


def kernel_frame_from_higgs(h: LocalHiggs) -> Mat2:
    """Inverse packing of higgs_from_kernel_frame."""
    return Mat2(((h.beta[1], -h.beta[0]), (h.gamma[0], h.gamma[1])))


def hecke_frame(xi: EvaluationCovector, order: int = DEFAULT_ORDER) -> Mat2:
    """Kernel generators of xi packed and normalized in one step."""
    return kernel_frame_matrix(*hecke_kernel(xi, order))


def higgs_vanishing_matches_point(xi: EvaluationCovector, h: LocalHiggs) -> bool:
    """The component vanishing pattern at zeta = 0 determined by the point:
    gamma(0) = 0 iff the point is [0:1], beta(0) = 0 iff it is [1:0]."""
    point = xi.fiber_point()
    beta_vanishes = h.beta[0].constant_term.is_zero() and h.beta[1].constant_term.is_zero()
    gamma_vanishes = (
        h.gamma[0].constant_term.is_zero() and h.gamma[1].constant_term.is_zero()
    )
    if point.is_zero():
        return gamma_vanishes and not beta_vanishes
    if point.is_infinity():
        return beta_vanishes and not gamma_vanishes
    return not beta_vanishes and not gamma_vanishes


# Smith reduction


def _signed_swap(order: int) -> Mat2:
    one = TruncatedSeries.one(order)
    zero = TruncatedSeries.zero(order)
    return Mat2(((zero, one), (-one, zero)))


def smith_form(phi: Mat2) -> tuple[Mat2, Mat2]:
    """Unit matrices (P, Q) with P @ phi @ Q == diag(1, zeta) exactly.

    Requires det(phi) == zeta exactly, which forces some entry to have a
    unit constant term.  That pivot is moved to the top-left by swaps of
    determinant one, the pivot row clears the other row's constant part,
    and Q is the adjugate-style completion built from the exact
    zeta-quotients of the cleared row.  Truncation loses the top
    coefficient of a zeta-quotient, so one coefficient of the completion
    is corrected to keep the identity exact at order T.
    """
    T = phi.order
    if T < 2:
        raise SmithPreconditionError("truncation order must be >= 2 to represent zeta")
    zeta = TruncatedSeries.zeta(T)
    if phi.det() != zeta:
        raise SmithPreconditionError("determinant must equal zeta exactly")

    pivot = next(
        (
            (i, j)
            for i, j in ((0, 0), (0, 1), (1, 0), (1, 1))
            if not phi[i][j].constant_term.is_zero()
        ),
        None,
    )
    if pivot is None:
        raise InternalInconsistencyError("det = zeta forces a unit constant term")
    i0, j0 = pivot
    ident = Mat2.identity(T)
    if i0 == 1 and j0 == 1:
        pre, post = Mat2.swap(T), Mat2.swap(T)  # two sign flips cancel
    elif i0 == 1:
        pre, post = _signed_swap(T), ident
    elif j0 == 1:
        pre, post = ident, _signed_swap(T)
    else:
        pre, post = ident, ident
    psi = pre @ phi @ post  # det still exactly zeta

    a11 = psi[0][0].constant_term
    a21 = psi[1][0].constant_term
    one = TruncatedSeries.one(T)
    zero = TruncatedSeries.zero(T)
    p0 = Mat2(
        ((one, zero), (TruncatedSeries.constant(-(a21 / a11), T), one))
    )
    m = p0 @ psi  # second row now has vanishing constant terms
    c1 = m[1][0].div_zeta()
    c2 = m[1][1].div_zeta()

    # psi11*c2 - psi12*c1 - 1 vanishes below zeta^(T-1); the top coefficient
    # is the truncation defect of the zeta-quotients and is pushed into c2
    err = psi[0][0] * c2 - psi[0][1] * c1 - one
    if any(not err[k].is_zero() for k in range(T - 1)):
        raise InternalInconsistencyError("cleared row failed the determinant identity")
    defect = err[T - 1]
    if not defect.is_zero():
        c2 = c2 - TruncatedSeries.monomial(T - 1, T, defect / a11)

    q0 = Mat2(((c2, -psi[0][1]), (-c1, psi[0][0])))
    p = p0 @ pre
    q = post @ q0
    if p @ phi @ q != Mat2.diag(one, zeta):
        raise InternalInconsistencyError("Smith reduction lost exactness")
    return p, q


def is_injective(f: Mat2) -> bool:
    """Nonvanishing determinant class at order T.

    A nonzero class certifies injectivity of the genuine local map; at
    this finite order the test cannot see a determinant vanishing to
    order T or higher, so a False only means "not visibly injective".
    """
    return f.det().valuation() is not None


# the canonical dual-wedge contraction


def dual_wedge_contraction(ell: ScalarVec, wedge: Scalar) -> ScalarVec:
    """Contraction (ell, s1^s2-coefficient w) -> w*(ell(s2) s1 - ell(s1) s2).

    This is the canonical identification of dual-tensor-determinant data
    with the rank-2 fiber itself; on basis covectors it is the matrix
    [[0, 1], [-1, 0]] up to the wedge factor.
    """
    w = Scalar.of(wedge)
    return (w * Scalar.of(ell[1]), -(w * Scalar.of(ell[0])))


def _scalar_mat_det(mu: ScalarMat) -> Scalar:
    return mu[0][0] * mu[1][1] - mu[0][1] * mu[1][0]


def _scalar_mat_apply(mu: ScalarMat, v: ScalarVec) -> ScalarVec:
    return (mu[0][0] * v[0] + mu[0][1] * v[1], mu[1][0] * v[0] + mu[1][1] * v[1])


def _covector_pullback(ell: ScalarVec, mu: ScalarMat) -> ScalarVec:
    # (ell . mu): value of the pulled-back covector on basis vectors
    return (
        ell[0] * mu[0][0] + ell[1] * mu[1][0],
        ell[0] * mu[0][1] + ell[1] * mu[1][1],
    )


@dataclass(frozen=True)
class ContractionReport:
    image: ScalarVec
    basis_images: tuple[ScalarVec, ScalarVec]
    determinant_identification: Scalar
    naturality_holds: Optional[bool]

    def all_passed(self) -> bool:
        det_ok = self.determinant_identification == Scalar.one()
        return det_ok and self.naturality_holds is not False


def contraction_report(
    ell: ScalarVec, wedge: Scalar, mu: Optional[ScalarMat] = None
) -> ContractionReport:
    """Evaluate the contraction, its determinant identification, and the
    change-of-basis naturality square for an optional invertible mu.

    The images of the two basis covectors assemble to a matrix of
    determinant 1, which is the statement that the induced map on wedge
    squares is the identity.  For mu the square reads: pulling ell back
    through mu, dividing the wedge by det(mu), contracting, and pushing
    forward through mu reproduces the direct contraction.
    """
    image = dual_wedge_contraction(ell, wedge)
    e0 = dual_wedge_contraction((Scalar.one(), Scalar.zero()), Scalar.one())
    e1 = dual_wedge_contraction((Scalar.zero(), Scalar.one()), Scalar.one())
    det_ident = e0[0] * e1[1] - e1[0] * e0[1]

    naturality: Optional[bool] = None
    if mu is not None:
        det_mu = _scalar_mat_det(mu)
        if det_mu.is_zero():
            raise ValueError("naturality requires an invertible change of basis")
        pulled = _covector_pullback(ell, mu)
        routed = _scalar_mat_apply(
            mu, dual_wedge_contraction(pulled, Scalar.of(wedge) / det_mu)
        )
        naturality = routed == image
    return ContractionReport(image, (e0, e1), det_ident, naturality)


# the sigma-frame normal form


@dataclass(frozen=True)
class NormalFormReport:
    frame_cube: Scalar
    order: int
    kernel_frame: Mat2
    higgs: LocalHiggs
    checks: tuple[tuple[str, bool], ...]

    def all_passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def _normal_form_data(order: int) -> tuple[EvaluationCovector, Mat2, LocalHiggs]:
    inv_rt2 = TruncatedSeries.constant(Scalar.sqrt2().inverse(), order)
    zeta = TruncatedSeries.zeta(order)
    eta1 = (zeta * inv_rt2, zeta * inv_rt2)
    eta2 = (-inv_rt2, inv_rt2)
    xi = EvaluationCovector(Scalar.one(), Scalar.one())
    eps = Mat2.from_cols(eta1, eta2)
    return xi, eps, higgs_from_kernel_frame(eps)


def normal_form_check(b, order: int = DEFAULT_ORDER) -> NormalFormReport:
    """Exact verification of the sigma-frame normal form at one point.

    In the frames sigma1, sigma2 normalized by s0^3 = b the kernel basis is
    eta1 = (zeta/sqrt2)(sigma1 + sigma2), eta2 = (1/sqrt2)(-sigma1 + sigma2),
    giving the frame (1/sqrt2) [[zeta, -1], [zeta, 1]] with determinant
    zeta, beta = (1/sqrt2)(1, zeta), gamma = (1/sqrt2)(zeta, 1), and
    gamma . beta = zeta.  The normalization scalar b only fixes the frame
    and cancels from every matrix, so the report asserts b-independence by
    comparing against the b = 1 run.
    """
    b_scalar = Scalar.of(b)
    if b_scalar.is_zero():
        raise ValueError("the frame normalization s0^3 = b needs b != 0")
    if order < 2:
        raise ValueError("truncation order must be >= 2 to represent zeta")

    xi, eps, higgs = _normal_form_data(order)
    zeta = TruncatedSeries.zeta(order)
    inv_rt2 = TruncatedSeries.constant(Scalar.sqrt2().inverse(), order)
    checks = []
    checks.append(
        (
            "kernel_membership",
            evaluate(xi, eps.col(0)).is_zero() and evaluate(xi, eps.col(1)).is_zero(),
        )
    )
    checks.append(("determinant_is_zeta", eps.det() == zeta))
    checks.append(("beta_normal_form", higgs.beta == (inv_rt2, zeta * inv_rt2)))
    checks.append(("gamma_normal_form", higgs.gamma == (zeta * inv_rt2, inv_rt2)))
    checks.append(("gamma_beta_is_zeta", higgs.gamma_beta() == zeta))
    reference = _normal_form_data(order)
    checks.append(
        (
            "independent_of_frame_cube",
            eps == reference[1] and higgs == reference[2],
        )
    )
    return NormalFormReport(b_scalar, order, eps, higgs, tuple(checks))


# randomized self-verification, shared by the test suite and the CLI


def random_scalar(rng: Random, *, nonzero: bool = False, sqrt2_part: bool = True) -> Scalar:
    while True:
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        b = (
            Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if sqrt2_part and rng.random() < 0.5
            else Fraction(0)
        )
        s = Scalar(a, b)
        if not (nonzero and s.is_zero()):
            return s


def random_series(rng: Random, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs([random_scalar(rng) for _ in range(order)], order)


def random_unit_series(rng: Random, order: int) -> TruncatedSeries:
    head = random_scalar(rng, nonzero=True)
    tail = [random_scalar(rng) for _ in range(order - 1)]
    return TruncatedSeries.from_coeffs([head] + tail, order)


def random_unit_matrix(rng: Random, order: int) -> Mat2:
    while True:
        m = Mat2(
            (
                (random_series(rng, order), random_series(rng, order)),
                (random_series(rng, order), random_series(rng, order)),
            )
        )
        if m.is_unit():
            return m


def random_det_zeta_matrix(rng: Random, order: int) -> Mat2:
    """Random matrix with determinant exactly zeta, via unit-sandwiched diag(1, zeta)."""
    a = random_unit_matrix(rng, order)
    b = random_unit_matrix(rng, order)
    unit = (a.det() * b.det()).inverse()
    b = b.scale_col(1, unit)
    phi = a @ Mat2.diag(TruncatedSeries.one(order), TruncatedSeries.zeta(order)) @ b
    if phi.det() != TruncatedSeries.zeta(order):
        raise InternalInconsistencyError("random determinant normalization failed")
    return phi


def random_covector(rng: Random) -> EvaluationCovector:
    shape = rng.choice(["zero", "inf", "finite"])
    if shape == "zero":
        return EvaluationCovector(Scalar.zero(), Scalar.one())
    if shape == "inf":
        return EvaluationCovector(Scalar.one(), Scalar.zero())
    return EvaluationCovector(random_scalar(rng, nonzero=True), Scalar.one())


def _check_smith_randomized(rng: Random, order: int, cases: int) -> str:
    zeta = TruncatedSeries.zeta(order)
    target = Mat2.diag(TruncatedSeries.one(order), zeta)
    for _ in range(cases):
        phi = random_det_zeta_matrix(rng, order)
        p, q = smith_form(phi)
        assert p @ phi @ q == target
        assert p.is_unit() and q.is_unit()
    return f"{cases} randomized reductions at order {order}"


def _check_smith_worked_examples(rng: Random, order: int, cases: int) -> str:
    one = TruncatedSeries.one(order)
    zero = TruncatedSeries.zero(order)
    zeta = TruncatedSeries.zeta(order)
    target = Mat2.diag(one, zeta)

    already = Mat2.diag(one, zeta)
    p, q = smith_form(already)
    assert p == Mat2.identity(order) and q == Mat2.identity(order)

    swapped = Mat2.diag(zeta, one)
    p, q = smith_form(swapped)
    assert p @ swapped @ q == target

    mixed = Mat2(((one + zeta, zeta), (zeta, zeta)))
    p, q = smith_form(mixed)
    assert p @ mixed @ q == target
    return "already-diagonal, swapped-diagonal, dense"


def _check_smith_rejects_bad_determinant(rng: Random, order: int, cases: int) -> str:
    zeta = TruncatedSeries.zeta(order)
    corrupted = Mat2.diag(zeta, zeta)  # det = zeta^2
    try:
        smith_form(corrupted)
    except SmithPreconditionError:
        return "det = zeta^2 rejected"
    raise AssertionError("corrupted determinant was not rejected")


def _check_hecke_round_trip(rng: Random, order: int, cases: int) -> str:
    zeta = TruncatedSeries.zeta(order)
    for _ in range(cases):
        xi = random_covector(rng)
        eps = hecke_frame(xi, order)
        assert evaluate(xi, eps.col(0)).is_zero()
        assert evaluate(xi, eps.col(1)).is_zero()
        assert eps.det() == zeta
        h = higgs_from_kernel_frame(eps)
        assert h.gamma_beta() == zeta
        assert higgs_vanishing_matches_point(xi, h)
        assert kernel_frame_from_higgs(h) == eps
    return f"{cases} covectors round-tripped at order {order}"


def _check_normal_form(rng: Random, order: int, cases: int) -> str:
    for _ in range(max(cases, 1)):
        b = random_scalar(rng, nonzero=True)
        report = normal_form_check(b, order)
        assert report.all_passed(), report.checks
    assert normal_form_check(1, order).all_passed()
    return f"{max(cases, 1)} frame normalizations at order {order}"


def _check_contraction_naturality(rng: Random, order: int, cases: int) -> str:
    for _ in range(cases):
        while True:
            mu = (
                (random_scalar(rng), random_scalar(rng)),
                (random_scalar(rng), random_scalar(rng)),
            )
            if not _scalar_mat_det(mu).is_zero():
                break
        ell = (random_scalar(rng), random_scalar(rng))
        wedge = random_scalar(rng, nonzero=True)
        report = contraction_report(ell, wedge, mu)
        assert report.all_passed(), (ell, wedge, mu)
    canonical = contraction_report(
        (Scalar.one(), Scalar.zero()),
        Scalar.one(),
        ((Scalar.of(2), Scalar.zero()), (Scalar.zero(), Scalar.one())),
    )
    assert canonical.image == (Scalar.zero(), -Scalar.one())
    assert canonical.all_passed()
    return f"{cases} random changes of basis"


_SUITE: tuple[tuple[str, Callable[[Random, int, int], str]], ...] = (
    ("smith_randomized", _check_smith_randomized),
    ("smith_worked_examples", _check_smith_worked_examples),
    ("smith_rejects_bad_determinant", _check_smith_rejects_bad_determinant),
    ("hecke_round_trip", _check_hecke_round_trip),
    ("normal_form", _check_normal_form),
    ("contraction_naturality", _check_contraction_naturality),
)


def verification_suite(order: int = DEFAULT_ORDER, seed: int = 0, cases: int = 50) -> dict:
    """Run every local-model check deterministically; machine-readable result."""
    if order < 2:
        raise ValueError("truncation order must be >= 2 to represent zeta")
    if cases < 1:
        raise ValueError("cases must be >= 1")
    results = []
    for name, check in _SUITE:
        rng = Random(f"{seed}:{name}")
        try:
            detail = check(rng, order, cases)
            results.append({"name": name, "passed": True, "detail": detail})
        except AssertionError as exc:
            results.append({"name": name, "passed": False, "detail": str(exc)})
        except Exception as exc:  # surfaced precondition violations and the like
            results.append(
                {"name": name, "passed": False, "detail": f"{type(exc).__name__}: {exc}"}
            )
    return {
        "order": order,
        "seed": seed,
        "cases": cases,
        "checks": results,
        "all_passed": all(r["passed"] for r in results),
    }
