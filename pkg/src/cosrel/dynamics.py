"""Fundamental 1-form, virtual work, invariance predicates and balance residuals.

Storage convention: every component array of the dynamical state is the exact
dual of the corresponding kinematical slot, so the Lagrangian virtual-work
pairing is an elementwise sum: F (*grid,4) pairs x, M (*grid,4,4) pairs e,
sigma (*grid,p,4) pairs x_a, mu (*grid,p,4,4) pairs e_a.  Barred moments carry
two lowered indices and pair with the index-raised Lorentz variation summed
over all index pairs (no 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import KinematicalState, is_integrable
from .lattice import Lattice
from .minkowski import ETA

_trapz = getattr(np, "trapezoid", None) or np.trapz


def _asym(A: np.ndarray) -> np.ndarray:
    return 0.5 * (A - np.swapaxes(A, -1, -2))


class DynamicalState:
    """Fundamental 1-form components (body force, couple, stress, couple-stress)."""

    def __init__(self, lattice: Lattice, F, M, sigma, mu):
        p = lattice.p
        F = np.asarray(F, dtype=float)
        M = np.asarray(M, dtype=float)
        sigma = np.asarray(sigma, dtype=float)
        mu = np.asarray(mu, dtype=float)
        if F.shape != lattice.shape + (4,) or M.shape != lattice.shape + (4, 4) \
                or sigma.shape != lattice.shape + (p, 4) or mu.shape != lattice.shape + (p, 4, 4):
            raise ValueError("dynamical state arrays do not match the lattice")
        for name, arr in (("F", F), ("M", M), ("sigma", sigma), ("mu", mu)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite entries in {name}")
        self.lattice = lattice
        self.F, self.M, self.sigma, self.mu = F, M, sigma, mu

    @classmethod
    def zeros(cls, lattice: Lattice) -> "DynamicalState":
        p = lattice.p
        return cls(lattice, np.zeros(lattice.shape + (4,)), np.zeros(lattice.shape + (4, 4)),
                   np.zeros(lattice.shape + (p, 4)), np.zeros(lattice.shape + (p, 4, 4)))


@dataclass
class LagrangianVariation:
    """Virtual displacement in the natural (Lagrangian) slots."""

    dx: np.ndarray
    de: np.ndarray
    dxj: np.ndarray
    dej: np.ndarray


@dataclass
class EulerianVariation:
    """Virtual displacement in the co-moving slots; dI is lowered-antisymmetric."""

    dxi: np.ndarray
    dI: np.ndarray
    dxij: np.ndarray
    dIj: np.ndarray

    def antisymmetry_defect(self) -> float:
        low = np.einsum("ij,...jk->...ik", ETA, self.dI)
        d = np.abs(low + np.swapaxes(low, -1, -2)).max()
        lowj = np.einsum("ij,...ajk->...aik", ETA, self.dIj)
        return float(max(d, np.abs(lowj + np.swapaxes(lowj, -1, -2)).max()))


def barred_moments(phi: DynamicalState, s: KinematicalState) -> tuple[np.ndarray, np.ndarray]:
    """Lowered antisymmetric couple moment and couple stress dressed by the state.

    Both outputs are the coefficients of the raised Lorentz variation slots in
    the co-moving expansion of the virtual work, antisymmetrized over the pair.
    """
    if phi.lattice != s.lattice:
        raise ValueError("dynamical state and kinematical state on different lattices")
    C = np.einsum("...i,...j->...ij", phi.F, s.x) \
        + np.einsum("...ik,...jk->...ij", phi.M, s.e) \
        + np.einsum("...ai,...aj->...ij", phi.sigma, s.xj) \
        + np.einsum("...aik,...ajk->...ij", phi.mu, s.ej)
    Mbar = _asym(C @ ETA)
    D = np.einsum("...ai,...j->...aij", phi.sigma, s.x) \
        + np.einsum("...aik,...jk->...aij", phi.mu, s.e)
    mubar = _asym(D @ ETA)
    return Mbar, mubar


def lagrangian_of(var: EulerianVariation, s: KinematicalState) -> LagrangianVariation:
    """Natural-slot variation generated by a co-moving variation on the state s."""
    dx = var.dxi + np.einsum("...ij,...j->...i", var.dI, s.x)
    de = np.einsum("...ij,...jk->...ik", var.dI, s.e)
    dxj = var.dxij + np.einsum("...aij,...j->...ai", var.dIj, s.x) \
        + np.einsum("...ij,...aj->...ai", var.dI, s.xj)
    dej = np.einsum("...aij,...jk->...aik", var.dIj, s.e) \
        + np.einsum("...ij,...ajk->...aik", var.dI, s.ej)
    return LagrangianVariation(dx, de, dxj, dej)


def virtual_work_density(phi: DynamicalState, s: KinematicalState, var) -> np.ndarray:
    """Pointwise pairing of the fundamental form with a virtual displacement."""
    if isinstance(var, LagrangianVariation):
        return (np.einsum("...i,...i->...", phi.F, var.dx)
                + np.einsum("...ij,...ij->...", phi.M, var.de)
                + np.einsum("...ai,...ai->...", phi.sigma, var.dxj)
                + np.einsum("...aij,...aij->...", phi.mu, var.dej))
    if isinstance(var, EulerianVariation):
        Mbar, mubar = barred_moments(phi, s)
        dI_up = var.dI @ ETA
        dIj_up = var.dIj @ ETA
        return (np.einsum("...i,...i->...", phi.F, var.dxi)
                + np.einsum("...ij,...ij->...", Mbar, dI_up)
                + np.einsum("...ai,...ai->...", phi.sigma, var.dxij)
                + np.einsum("...aij,...aij->...", mubar, dIj_up))
    raise TypeError("variation must be LagrangianVariation or EulerianVariation")


def _integrate(lattice: Lattice, values: np.ndarray) -> float:
    """Trapezoidal quadrature of a scalar field over the whole lattice."""
    acc = values
    for axis in reversed(range(lattice.p)):
        acc = _trapz(acc, dx=lattice.spacing[axis], axis=axis)
    return float(acc)


def _integrate_face(lattice: Lattice, values: np.ndarray, skip_axis: int) -> float:
    """Trapezoidal quadrature over a boundary face (values already sliced)."""
    acc = values
    axes = [a for a in range(lattice.p) if a != skip_axis]
    for pos in reversed(range(len(axes))):
        acc = _trapz(acc, dx=lattice.spacing[axes[pos]], axis=pos)
    return float(acc)


def _divergence(lattice: Lattice, jet_array: np.ndarray) -> np.ndarray:
    """Sum over material directions of d_a applied to (*grid, p, ...) arrays."""
    out = np.zeros(jet_array.shape[:lattice.p] + jet_array.shape[lattice.p + 1:])
    for a in range(lattice.p):
        out += lattice.gradient(jet_array[(Ellipsis, a) + (slice(None),) * (jet_array.ndim - lattice.p - 1)], a)
    return out


def jet_variation(lattice: Lattice, dxi0: np.ndarray, dI0: np.ndarray) -> EulerianVariation:
    """Integrable variation: jets are stencil derivatives of the point variation."""
    dxij = np.stack([lattice.gradient(dxi0, a) for a in range(lattice.p)], axis=lattice.p)
    dIj = np.stack([lattice.gradient(dI0, a) for a in range(lattice.p)], axis=lattice.p)
    return EulerianVariation(dxi0, dI0, dxij, dIj)


def total_virtual_work(phi: DynamicalState, s: KinematicalState,
                       dxi0: np.ndarray, dI0: np.ndarray) -> tuple[float, float]:
    """(bulk, boundary) split of the total virtual work of an integrable variation.

    The bulk term carries the balance operator, the boundary term the stress
    flux; their sum matches the direct integral of the pointwise pairing up to
    quadrature error.
    """
    lat = phi.lattice
    var = jet_variation(lat, dxi0, dI0)
    Mbar, mubar = barred_moments(phi, s)
    dI_up = var.dI @ ETA

    div_sigma = _divergence(lat, phi.sigma)
    div_mubar = _divergence(lat, mubar)
    bulk_density = (np.einsum("...i,...i->...", phi.F - div_sigma, var.dxi)
                    + np.einsum("...ij,...ij->...", Mbar - div_mubar, dI_up))
    bulk = _integrate(lat, bulk_density)

    flux = (np.einsum("...ai,...i->...a", phi.sigma, var.dxi)
            + np.einsum("...aij,...ij->...a", mubar, dI_up))
    boundary = 0.0
    for a in range(lat.p):
        hi = tuple(slice(None) if c != a else -1 for c in range(lat.p))
        lo = tuple(slice(None) if c != a else 0 for c in range(lat.p))
        boundary += _integrate_face(lat, flux[hi + (a,)], a)
        boundary -= _integrate_face(lat, flux[lo + (a,)], a)
    return bulk, boundary


def direct_virtual_work(phi: DynamicalState, s: KinematicalState,
                        dxi0: np.ndarray, dI0: np.ndarray) -> float:
    """Integral of the pointwise pairing with the prolonged variation (cross-check route)."""
    var = jet_variation(phi.lattice, dxi0, dI0)
    return _integrate(phi.lattice, virtual_work_density(phi, s, var))


def poincare_invariance_residual(phi: DynamicalState, s: KinematicalState) -> tuple[float, float]:
    """Max-norms of the body force and barred couple moment; (0, 0) certifies invariance."""
    Mbar, _ = barred_moments(phi, s)
    return float(np.abs(phi.F).max()), float(np.abs(Mbar).max())


def dressed_couple_stress(phi: DynamicalState, s: KinematicalState) -> np.ndarray:
    """Lowered antisymmetric couple stress mu^a_{mu nu} dressed by the frame alone."""
    D = np.einsum("...aik,...jk->...aij", phi.mu, s.e)
    return _asym(D @ ETA)


def spin_source(phi: DynamicalState, s: KinematicalState) -> np.ndarray:
    """Antisymmetrized stress moment sigma^a_[mu x_nu]a sourcing the couple balance."""
    xj_low = s.xj @ ETA
    return _asym(np.einsum("...ai,...aj->...ij", phi.sigma, xj_low))


def cosserat_residual(phi: DynamicalState, s: KinematicalState, invariant: bool = False,
                      integrability_tol: float = 1e-6) -> tuple[np.ndarray, np.ndarray]:
    """Balance-law residual fields (r1 force-like, r2 couple-like, antisymmetric).

    Standard variant: r1 = F - div sigma, r2 = Mbar - div mubar.  The invariant
    variant replaces F, Mbar by zero and sources the couple balance with the
    stress moment: r1 = -div sigma, r2 = -(div mu_dressed + spin source).
    """
    ok, res = is_integrable(s, integrability_tol)
    if not ok:
        raise ValueError(f"state is not integrable: residual {res:.3e} > {integrability_tol:.3e}")
    lat = phi.lattice
    if invariant:
        r1 = -_divergence(lat, phi.sigma)
        r2 = -(_divergence(lat, dressed_couple_stress(phi, s)) + spin_source(phi, s))
        return r1, r2
    Mbar, mubar = barred_moments(phi, s)
    r1 = phi.F - _divergence(lat, phi.sigma)
    r2 = Mbar - _divergence(lat, mubar)
    return r1, r2


def spatialize(phi: DynamicalState, s: KinematicalState, cond_max: float = 1e8,
               integrability_tol: float = 1e-6) -> tuple[np.ndarray, np.ndarray]:
    """Balance residuals pushed to the deformed coordinates (body dimension 4 only)."""
    lat = phi.lattice
    if lat.p != 4:
        raise ValueError("spatialize requires a four-dimensional body")
    ok, res = is_integrable(s, integrability_tol)
    if not ok:
        raise ValueError(f"state is not integrable: residual {res:.3e}")
    J = np.swapaxes(s.xj, -1, -2)  # J[..., mu, a] = x^mu_a
    cond = np.linalg.cond(J)
    if not np.all(np.isfinite(cond)) or cond.max() > cond_max:
        raise ValueError(f"deformation Jacobian ill-conditioned: max cond {cond.max():.3e}")
    Jinv = np.linalg.inv(J)  # [..., a, mu]

    sp_sigma = np.einsum("...an,...am->...nm", s.xj, phi.sigma)  # [nu][mu]
    r1 = np.zeros(lat.shape + (4,))
    for a in range(lat.p):
        r1 += np.einsum("...n,...nm->...m", Jinv[..., a, :], lat.gradient(sp_sigma, a))

    mulow = dressed_couple_stress(phi, s)
    sp_mu = np.einsum("...ak,...amn->...kmn", s.xj, mulow)
    r2 = np.zeros(lat.shape + (4, 4))
    for b in range(lat.p):
        r2 += np.einsum("...k,...kmn->...mn", Jinv[..., b, :], lat.gradient(sp_mu, b))
    sig_low = np.einsum("...km,kn->...mn", sp_sigma, ETA)
    r2 += _asym(sig_low)
    return r1, r2


def phi_from_lagrangian(lagrangian, s: KinematicalState, rel_step: float = 1e-6) -> DynamicalState:
    """Fundamental form as the jet-space gradient of a scalar density.

    `lagrangian(x, e, xj, ej)` must be vectorized over the grid and return a
    scalar field; partials use central differences with a relative step.
    """
    lat = s.lattice

    def diff(arrs, which, tail_index):
        plus = [a.copy() if i == which else a for i, a in enumerate(arrs)]
        minus = [a.copy() if i == which else a for i, a in enumerate(arrs)]
        sel = (Ellipsis,) + tail_index
        h = rel_step * np.maximum(1.0, np.abs(arrs[which][sel]))
        plus[which][sel] += h
        minus[which][sel] -= h
        return (lagrangian(*plus) - lagrangian(*minus)) / (2.0 * h)

    arrs = [s.x, s.e, s.xj, s.ej]
    F = np.stack([diff(arrs, 0, (m,)) for m in range(4)], axis=-1)
    M = np.stack([np.stack([diff(arrs, 1, (m, n)) for n in range(4)], axis=-1)
                  for m in range(4)], axis=-2)
    sigma = np.stack([np.stack([diff(arrs, 2, (a, m)) for m in range(4)], axis=-1)
                      for a in range(lat.p)], axis=-2)
    mu = np.stack([np.stack([np.stack([diff(arrs, 3, (a, m, n)) for n in range(4)], axis=-1)
                             for m in range(4)], axis=-2)
                   for a in range(lat.p)], axis=-3)
    return DynamicalState(lat, F, M, sigma, mu)
