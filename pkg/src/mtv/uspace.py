"""Quotient classes U^{b,b'}: representatives, the centralizer equivalence
relation, actions, moment maps, the gluing of boundary factors, and the
special isomorphisms for signatures (1,1) and (0,0).

A class is stored as one representative tuple (g_1, ..., g_{b+b'}, X); class
equality is always decided by `u_equivalent` (for regular X the centralizer
is abelian and the relation is a cheap solve), never by canonicalization.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import (
    GluingError,
    LevelSetError,
    SignatureError,
    SingularMatrixError,
    ValidationError,
)
from .lie import Matrix, as_matrix, commutator, pairing, power_traces
from .slodowy import SlicePoint, slice_embed, slice_representative
from .wspace import (
    DET_TOL,
    INCOMING,
    OUTGOING,
    WPoint,
    WTangent,
    w_symplectic,
    slice_direction,
)

# Tolerances fixed by the module contract.
LEVEL_TOL = 1e-12       # slice-point equality on the moment level set
EQUIV_TOL = 1e-9        # centralizer membership / product-one residuals
GLUE_TOL = 1e-9         # moment matching for gluing


@dataclass(frozen=True)
class UClass:
    b: int
    bprime: int
    gs: tuple[Matrix, ...]
    X: SlicePoint

    def __post_init__(self):
        if self.b < 0 or self.bprime < 0 or self.b + self.bprime < 1:
            raise SignatureError("need b, b' >= 0 with b + b' >= 1")
        gs = tuple(as_matrix(g) for g in self.gs)
        if len(gs) != self.b + self.bprime:
            raise ValidationError("factor count does not match signature")
        for g in gs:
            if g.shape[0] != self.X.k:
                raise ValidationError("factor size does not match slice point")
            if abs(np.linalg.det(g)) < DET_TOL:
                raise SingularMatrixError("factor is numerically singular")
        object.__setattr__(self, "gs", gs)

    @property
    def n_factors(self) -> int:
        return self.b + self.bprime

    def orientation(self, i: int) -> str:
        if not 0 <= i < self.n_factors:
            raise ValidationError(f"factor index {i} out of range")
        return INCOMING if i < self.b else OUTGOING


@dataclass(frozen=True)
class UTangent:
    """Left-logarithmic directions per factor plus one shared slice velocity."""

    a_list: tuple[Matrix, ...]
    dc: np.ndarray


@dataclass(frozen=True)
class W00Point:
    """A point of the closed-surface space: (g, X) with Ad(g) X = X."""

    g: Matrix
    X: SlicePoint

    def __post_init__(self):
        g = as_matrix(self.g)
        x = slice_embed(self.X)
        res = float(np.max(np.abs(g @ x - x @ g)))
        if res > 1e-10 * max(1.0, float(np.max(np.abs(x)))) * max(
            1.0, float(np.max(np.abs(g)))
        ):
            raise ValidationError("group part must centralize the slice point")
        object.__setattr__(self, "g", g)


def u_build(points: Sequence[WPoint]) -> UClass:
    """Assemble a class from boundary points on the abelian moment level set:
    all slice parts must agree exactly (incoming points listed first)."""
    if not points:
        raise ValidationError("need at least one boundary point")
    b = sum(1 for p in points if p.orientation == INCOMING)
    for i, p in enumerate(points):
        expect = INCOMING if i < b else OUTGOING
        if p.orientation != expect:
            raise ValidationError("incoming points must precede outgoing ones")
    x0 = points[0].X
    for p in points[1:]:
        if p.X.k != x0.k or np.max(np.abs(p.X.coeffs - x0.coeffs)) > LEVEL_TOL:
            raise LevelSetError(
                "slice points differ: the abelian moment condition fails"
            )
    return UClass(
        b=b,
        bprime=len(points) - b,
        gs=tuple(p.g for p in points),
        X=x0,
    )


def u_equivalence_residual(m1: UClass, m2: UClass) -> float:
    """Numeric violation of the equivalence relation between two
    representatives: the max of the slice-part difference, the scaled
    commutators [u_i, X], and |prod u_i - 1|, where u_i = h_i^{-1} g_i for
    incoming factors and g_i h_i^{-1} for outgoing ones.  Zero (up to
    roundoff) iff the representatives define the same class."""
    if (m1.b, m1.bprime) != (m2.b, m2.bprime):
        raise SignatureError("signatures differ")
    residual = float(np.max(np.abs(m1.X.coeffs - m2.X.coeffs)))
    x = slice_embed(m1.X)
    scale = max(1.0, float(np.max(np.abs(x))))
    prod = np.eye(m1.X.k, dtype=complex)
    for i in range(m1.n_factors):
        if m1.orientation(i) == INCOMING:
            u = np.linalg.inv(m2.gs[i]) @ m1.gs[i]
        else:
            u = m1.gs[i] @ np.linalg.inv(m2.gs[i])
        comm = float(np.max(np.abs(commutator(u, x))))
        residual = max(
            residual, comm / (scale * max(1.0, float(np.max(np.abs(u)))))
        )
        prod = prod @ u
    residual = max(residual, float(np.max(np.abs(prod - np.eye(m1.X.k)))))
    return residual


def u_equivalent(m1: UClass, m2: UClass, tol: float = EQUIV_TOL) -> bool:
    """Whether two representatives define the same class.  Z(X) is abelian
    for regular X, so the product order in the relation is immaterial."""
    return u_equivalence_residual(m1, m2) <= tol


def u_moment(m: UClass, i: int) -> Matrix:
    """Moment map of the i-th boundary factor; independent of the chosen
    representative."""
    x = slice_embed(m.X)
    g = m.gs[i]
    if m.orientation(i) == INCOMING:
        return g @ x @ np.linalg.inv(g)
    return -np.linalg.inv(g) @ x @ g


def axiom_d_residual(m: UClass) -> float:
    """Max spread of the invariant polynomial values over all boundary
    moments: P(mu_i) must equal P(mu_j) and P(-mu'_l) for every generator."""
    values = []
    for i in range(m.n_factors):
        mu = u_moment(m, i)
        if m.orientation(i) == OUTGOING:
            mu = -mu
        values.append(power_traces(mu))
    arr = np.array(values)
    return float(np.max(np.abs(arr - arr[0])))


def g_action(m: UClass, i: int, g0: Matrix) -> UClass:
    """Boundary group action on factor i; the moment map transforms by
    Ad(g0) for both orientations."""
    g0 = as_matrix(g0)
    if abs(np.linalg.det(g0)) < DET_TOL:
        raise SingularMatrixError("acting element is singular")
    gs = list(m.gs)
    if m.orientation(i) == INCOMING:
        gs[i] = g0 @ gs[i]
    else:
        gs[i] = gs[i] @ np.linalg.inv(g0)
    return replace(m, gs=tuple(gs))


def perm_action(
    m: UClass, sigma: Sequence[int], tau: Sequence[int]
) -> UClass:
    """Permute incoming factors by sigma and outgoing factors by tau;
    sigma[i] is the source index of the new i-th factor."""
    sigma = list(sigma)
    tau = list(tau)
    if sorted(sigma) != list(range(m.b)) or sorted(tau) != list(range(m.bprime)):
        raise ValidationError("invalid permutation")
    gs_in = [m.gs[sigma[i]] for i in range(m.b)]
    gs_out = [m.gs[m.b + tau[i]] for i in range(m.bprime)]
    return replace(m, gs=tuple(gs_in + gs_out))


def _factor_wpoint(m: UClass, i: int) -> WPoint:
    return WPoint(g=m.gs[i], X=m.X, orientation=m.orientation(i))


def u_symplectic(m: UClass, u: UTangent, v: UTangent) -> complex:
    """The quotient symplectic form: per-factor canonical forms sharing the
    single slice velocity."""
    if len(u.a_list) != m.n_factors or len(v.a_list) != m.n_factors:
        raise ValidationError("tangent factor count mismatch")
    total = 0.0 + 0.0j
    for i in range(m.n_factors):
        p = _factor_wpoint(m, i)
        total += w_symplectic(
            p, WTangent(a=u.a_list[i], dc=u.dc), WTangent(a=v.a_list[i], dc=v.dc)
        )
    return total


def u_symplectic_single_slice_form(m: UClass, u: UTangent, v: UTangent) -> complex:
    """The same form coded the other way round: one dX-pairing against the
    summed logarithmic directions plus per-factor curvature terms.  Used as
    an algebraic cross-check against `u_symplectic`."""
    x = slice_embed(m.X)
    dxu = slice_direction(m.X, u.dc)
    dxv = slice_direction(m.X, v.dc)
    sum_in_u = np.zeros_like(x)
    sum_in_v = np.zeros_like(x)
    sum_out_u = np.zeros_like(x)
    sum_out_v = np.zeros_like(x)
    curvature = 0.0 + 0.0j
    for i in range(m.n_factors):
        if m.orientation(i) == INCOMING:
            sum_in_u = sum_in_u + u.a_list[i]
            sum_in_v = sum_in_v + v.a_list[i]
            curvature += pairing(x, commutator(u.a_list[i], v.a_list[i]))
        else:
            g = m.gs[i]
            ginv = np.linalg.inv(g)
            bu = g @ u.a_list[i] @ ginv
            bv = g @ v.a_list[i] @ ginv
            sum_out_u = sum_out_u + bu
            sum_out_v = sum_out_v + bv
            curvature -= pairing(x, commutator(bu, bv))
    term = (
        pairing(sum_in_u, dxv)
        - pairing(sum_in_v, dxu)
        + pairing(sum_out_u, dxv)
        - pairing(sum_out_v, dxu)
    )
    return term + curvature


def _centralizer_residual(u: Matrix, x: Matrix) -> float:
    scale = max(1.0, float(np.max(np.abs(x)))) * max(1.0, float(np.max(np.abs(u))))
    return float(np.max(np.abs(commutator(u, x)))) / scale


def glue(m1: UClass, p_out: int, m2: UClass, q_in: int) -> UClass:
    """Symplectic quotient gluing: match the outgoing factor `p_out` of m1
    against the incoming factor `q_in` of m2.

    The moment condition forces the slice parts equal and
    u = g_{p'} h_q in Z(X); after gauge-fixing g_{p'} = 1 the leftover u is
    pushed into another factor through the equivalence relation (incoming
    absorb on the right, outgoing on the left), and the matched factors are
    dropped.  The resulting class is independent of the receiving factor.
    """
    if not (m1.b <= p_out < m1.n_factors):
        raise SignatureError("p_out must index an outgoing factor of m1")
    if not (0 <= q_in < m2.b):
        raise SignatureError("q_in must index an incoming factor of m2")
    if m1.X.k != m2.X.k:
        raise SignatureError("sizes differ")
    mu1 = u_moment(m1, p_out)
    mu2 = u_moment(m2, q_in)
    if np.max(np.abs(mu1 + mu2)) > GLUE_TOL * max(1.0, float(np.max(np.abs(mu1)))):
        raise GluingError("boundary moments do not match")
    if np.max(np.abs(m1.X.coeffs - m2.X.coeffs)) > GLUE_TOL:
        raise GluingError("slice parts differ despite matched moments")
    x = slice_embed(m1.X)
    u = m1.gs[p_out] @ m2.gs[q_in]
    if _centralizer_residual(u, x) > GLUE_TOL:
        raise GluingError("matched factors do not combine to a centralizer element")

    new_b = m1.b + m2.b - 1
    new_bprime = m1.bprime + m2.bprime - 1
    if new_b + new_bprime < 1:
        raise GluingError(
            "gluing a (0,1) against a (1,0) leaves no factors; "
            "use w00_from_glue for the closed-surface point"
        )
    kept: list[tuple[Matrix, str]] = []
    for i in range(m1.b):
        kept.append((m1.gs[i], INCOMING))
    for i in range(m2.b):
        if i != q_in:
            kept.append((m2.gs[i], INCOMING))
    for i in range(m1.b, m1.n_factors):
        if i != p_out:
            kept.append((m1.gs[i], OUTGOING))
    for i in range(m2.b, m2.n_factors):
        kept.append((m2.gs[i], OUTGOING))
    kept = absorb_centralizer(kept, u, 0)
    gs = tuple(g for g, _ in kept)
    return UClass(b=new_b, bprime=new_bprime, gs=gs, X=m1.X)


def absorb_centralizer(
    factors: list[tuple[Matrix, str]], u: Matrix, index: int
) -> list[tuple[Matrix, str]]:
    """Push a centralizer element into the factor at `index`: incoming
    factors multiply on the right by u, outgoing ones on the left by u."""
    out = list(factors)
    g, orient = out[index]
    if orient == INCOMING:
        out[index] = (g @ u, orient)
    else:
        out[index] = (u @ g, orient)
    return out


def glue_with_receiver(m1: UClass, p_out: int, m2: UClass, q_in: int, receiver: int) -> UClass:
    """Same as `glue` but the centralizer leftover goes into the factor with
    the given index of the concatenated tuple; used to verify independence."""
    base = glue(m1, p_out, m2, q_in)
    u = m1.gs[p_out] @ m2.gs[q_in]
    factors = [(base.gs[i], base.orientation(i)) for i in range(base.n_factors)]
    # undo the default absorption at index 0, redo at the requested index
    factors = absorb_centralizer(factors, np.linalg.inv(u), 0)
    factors = absorb_centralizer(factors, u, receiver)
    return UClass(b=base.b, bprime=base.bprime, gs=tuple(g for g, _ in factors), X=base.X)


def w00_from_glue(m_out: UClass, m_in: UClass) -> W00Point:
    """Glue a (0,1) class against a (1,0) class with matching moments down to
    the closed-surface point (g, X) with Ad(g) X = X."""
    if (m_out.b, m_out.bprime) != (0, 1) or (m_in.b, m_in.bprime) != (1, 0):
        raise SignatureError("need a (0,1) class and a (1,0) class")
    mu1 = u_moment(m_out, 0)
    mu2 = u_moment(m_in, 0)
    if np.max(np.abs(mu1 + mu2)) > GLUE_TOL * max(1.0, float(np.max(np.abs(mu1)))):
        raise GluingError("boundary moments do not match")
    w = m_out.gs[0] @ m_in.gs[0]
    return W00Point(g=w, X=m_in.X)


def u11_to_tstar(m: UClass) -> tuple[Matrix, Matrix]:
    """The isomorphism of a (1,1) class with a cotangent-bundle point:
    (g1, g2, X) -> (g1 g2, Ad(g1) X); constant on equivalence classes."""
    if (m.b, m.bprime) != (1, 1):
        raise SignatureError("signature must be (1,1)")
    g1, g2 = m.gs
    x = slice_embed(m.X)
    return g1 @ g2, g1 @ x @ np.linalg.inv(g1)


def find_cyclic_vector(x: Matrix) -> np.ndarray:
    """A deterministic cyclic vector for a regular matrix: try standard
    basis vectors, then seeded random vectors, maximizing Krylov conditioning."""
    k = x.shape[0]
    best = None
    best_sigma = -1.0
    candidates = [np.eye(k, dtype=complex)[i] for i in range(k)]
    rng = np.random.default_rng(12345)
    for _ in range(4):
        candidates.append(rng.standard_normal(k) + 1j * rng.standard_normal(k))
    for v in candidates:
        krylov = np.empty((k, k), dtype=complex)
        w = v.astype(complex)
        for j in range(k):
            krylov[:, j] = w
            w = x @ w
        sigma = np.linalg.svd(krylov, compute_uv=False)[-1]
        if sigma > best_sigma:
            best_sigma = sigma
            best = krylov
    if best_sigma <= 1e-13:
        raise SingularMatrixError("no usable cyclic vector: matrix not regular?")
    return best


def conjugation_to(x_from: Matrix, x_to: Matrix) -> Matrix:
    """An invertible g with g x_from g^{-1} = x_to, for regular matrices with
    equal characteristic polynomial, via matching Krylov frames."""
    b_from = find_cyclic_vector(x_from)
    b_to = find_cyclic_vector(x_to)
    # both satisfy  x b = b K  with the same companion K, so g = b_to b_from^{-1}
    g = b_to @ np.linalg.inv(b_from)
    return g


def u11_from_tstar(g: Matrix, y: Matrix) -> UClass:
    """Explicit inverse of `u11_to_tstar` on (g, regular Y)."""
    y = as_matrix(y)
    x = slice_representative(y)
    g1 = conjugation_to(slice_embed(x), y)
    g2 = np.linalg.inv(g1) @ g
    return UClass(b=1, bprime=1, gs=(g1, g2), X=x)


def sl_membership(m: UClass, trace_tol: float = 1e-10, det_tol: float = 1e-9) -> bool:
    """Whether the class lies in the special-linear subfamily: trace-free X
    and unit determinant product (outgoing factors contribute det^{-1})."""
    x = slice_embed(m.X)
    if abs(np.trace(x)) > trace_tol:
        return False
    prod = 1.0 + 0.0j
    for i in range(m.n_factors):
        d = np.linalg.det(m.gs[i])
        prod *= d if m.orientation(i) == INCOMING else 1.0 / d
    return abs(prod - 1.0) <= det_tol


def fibration_data(m: UClass) -> tuple[SlicePoint, list[Matrix]]:
    """(X, [moment values per factor]): the projection whose fibre is the
    centralizer of X."""
    return m.X, [u_moment(m, i) for i in range(m.n_factors)]


def phi_e_class(m: UClass) -> UClass:
    """Factor-wise orientation reversal on a class: the last incoming factor
    becomes the last outgoing one via g -> p theta(g)^{-1} p^{-1}; the slice
    part is fixed.  Anti-equivariant with the conjugated involution on the
    moved factor and plainly equivariant on the untouched ones."""
    from .wspace import opposite_slice_conjugator

    if m.b < 1:
        raise SignatureError("need an incoming factor to move")
    k = m.X.k
    conj = opposite_slice_conjugator(k)
    conj_inv = np.linalg.inv(conj)
    moved = conj @ m.gs[m.b - 1].T @ conj_inv
    gs = list(m.gs[: m.b - 1]) + list(m.gs[m.b :]) + [moved]
    return UClass(b=m.b - 1, bprime=m.bprime + 1, gs=tuple(gs), X=m.X)


def a0_action(element, m: UClass) -> UClass:
    """Factor-wise abelian action on a class: factor i moves by
    exp(C_{P_i}(X)) on its action side.  For a sum-zero tuple (the diagonal
    quotient group) the result is equivalent to the input."""
    from scipy.linalg import expm

    from .lie import gradient_of_combination

    if element.n_factors != m.n_factors:
        raise ValidationError("polynomial tuple length does not match factors")
    x = slice_embed(m.X)
    gs = list(m.gs)
    for i, summands in enumerate(element.factors):
        u = expm(gradient_of_combination(summands, x))
        if m.orientation(i) == INCOMING:
            gs[i] = gs[i] @ u
        else:
            gs[i] = u @ gs[i]
    return replace(m, gs=tuple(gs))


def stabilizer_solve(m: UClass, tol: float = 1e-9) -> Matrix:
    """Solve the freeness conditions for the first-factor action: find all
    (h, u_1..u_n) with u_i in Z(X), h u_1 = 1, the other factors fixed by
    their u_i, and prod u_i = 1.  Returns h (the identity when the action is
    free).  Raises if a nontrivial stabilizer shows up."""
    from .lie import centralizer_basis

    x = slice_embed(m.X)
    k = m.X.k
    basis = centralizer_basis(x)
    prod = np.eye(k, dtype=complex)
    for i in range(1, m.n_factors):
        g = m.gs[i]
        # solve g u = g  (incoming) / u g = g (outgoing) for u in span(basis)
        if m.orientation(i) == INCOMING:
            cols = np.stack([(g @ bm).ravel() for bm in basis], axis=1)
        else:
            cols = np.stack([(bm @ g).ravel() for bm in basis], axis=1)
        coeffs, *_ = np.linalg.lstsq(cols, g.ravel(), rcond=None)
        u = sum(c * bm for c, bm in zip(coeffs, basis))
        residual = np.max(np.abs((g @ u if m.orientation(i) == INCOMING else u @ g) - g))
        if residual > tol * max(1.0, float(np.max(np.abs(g)))):
            raise ValidationError("per-factor fixing equation unsolvable")
        # the homogeneous system must have no kernel: g invertible => unique
        sigma = np.linalg.svd(cols, compute_uv=False)
        if sigma[-1] <= 1e-9 * sigma[0]:
            raise ValidationError("unexpected kernel in the fixing equations")
        prod = prod @ u
    # h is forced by h u_1 = 1 with u_1 = (prod of the others)^{-1}
    u1 = np.linalg.inv(prod)
    h = np.linalg.inv(u1)
    return h
