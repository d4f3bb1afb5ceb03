"""Displacement fields and the nabla ladder: deformation, dislocation, incompatibility.

An iso(1,3)-valued k-form is a pair (translation part, Lorentz part).  The
Lie-algebra-valued wedge uses the matrix-product pairing, matching the index
structure w^mu_k ^ w^k_nu, not the bracket.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import FormField, Lattice, _read_arrays, _read_header, _write_array, ext_d, wedge
from .minkowski import ETA


@dataclass
class AlgebraForm:
    """iso(1,3)-valued form: vector-valued tra(nslation) and matrix-valued lor(entz) parts."""

    tra: FormField
    lor: FormField

    def __post_init__(self):
        if self.tra.lattice != self.lor.lattice or self.tra.degree != self.lor.degree:
            raise ValueError("translation and Lorentz parts must share lattice and degree")
        if self.tra.value_shape != (4,) or self.lor.value_shape != (4, 4):
            raise ValueError("translation part must be vector-valued, Lorentz part matrix-valued")

    @property
    def lattice(self) -> Lattice:
        return self.tra.lattice

    @property
    def degree(self) -> int:
        return self.tra.degree

    def interior_max(self) -> float:
        return max(self.tra.interior_max(), self.lor.interior_max())

    @classmethod
    def zeros(cls, lattice: Lattice, degree: int) -> "AlgebraForm":
        return cls(FormField.zeros(lattice, degree, (4,)), FormField.zeros(lattice, degree, (4, 4)))


class GroupField:
    """Poincare displacement field g(rho) = (a(rho), L(rho)) with Lorentz-valid L everywhere."""

    def __init__(self, lattice: Lattice, a: np.ndarray, L: np.ndarray, tol: float = 1e-8):
        a = np.asarray(a, dtype=float)
        L = np.asarray(L, dtype=float)
        if a.shape != lattice.shape + (4,) or L.shape != lattice.shape + (4, 4):
            raise ValueError("field arrays do not match the lattice")
        defect = np.abs(np.einsum("...ji,jk,...kl->...il", L, ETA, L) - ETA).max()
        if defect > tol:
            raise ValueError(f"L field is not Lorentz everywhere: defect {defect:.3e}")
        self.lattice = lattice
        self.a = a
        self.L = L

    @classmethod
    def from_function(cls, lattice: Lattice, fn, tol: float = 1e-8) -> "GroupField":
        """Sample fn(point) -> (a 4-vector, L 4x4) on the lattice."""
        a = np.zeros(lattice.shape + (4,))
        L = np.zeros(lattice.shape + (4, 4))
        for idx in np.ndindex(*lattice.shape):
            point = np.array([lattice.origin[c] + lattice.spacing[c] * idx[c]
                              for c in range(lattice.p)])
            a[idx], L[idx] = fn(point)
        return cls(lattice, a, L, tol)


def _adjoint_field(L: np.ndarray) -> np.ndarray:
    """Pointwise eta L^T eta (the Lorentz inverse)."""
    return np.einsum("ij,...kj,kl->...il", ETA, L, ETA)


def nabla_group(g: GroupField) -> AlgebraForm:
    """Eulerian deformation E = (xi, w): w_a = (d_a L) L~, xi_a = d_a a - w_a a."""
    lat = g.lattice
    Linv = _adjoint_field(g.L)
    xi = np.zeros(lat.shape + (lat.p, 4))
    om = np.zeros(lat.shape + (lat.p, 4, 4))
    for a in range(lat.p):
        dL = lat.gradient(g.L, a)
        da = lat.gradient(g.a, a)
        om_a = np.einsum("...ij,...jk->...ik", dL, Linv)
        om[..., a, :, :] = om_a
        xi[..., a, :] = da - np.einsum("...ij,...j->...i", om_a, g.a)
    # 1-form component axis == material axis
    return AlgebraForm(FormField(lat, 1, xi), FormField(lat, 1, om))


def nabla(E: AlgebraForm) -> AlgebraForm:
    """The ladder operator on a deformation 1-form: (d xi - w ^ xi, d w - w ^ w)."""
    if E.degree != 1:
        raise ValueError("nabla on forms is defined here for the degree-1 deformation")
    return AlgebraForm(ext_d(E.tra) - wedge(E.lor, E.tra),
                       ext_d(E.lor) - wedge(E.lor, E.lor))


def dislocation(E: AlgebraForm) -> AlgebraForm:
    """Dislocation 2-form of a deformation; vanishing is necessary for E = nabla g."""
    if E.lattice.p < 2:
        raise ValueError("dislocation requires a body of dimension >= 2")
    return nabla(E)


def incompatibility(Om: AlgebraForm, E: AlgebraForm) -> AlgebraForm:
    """Incompatibility 3-form of a 2-form Om relative to the deformation E."""
    if Om.lattice.p < 3:
        raise ValueError("incompatibility requires a body of dimension >= 3")
    if Om.lattice != E.lattice:
        raise ValueError("2-form and deformation live on different lattices")
    if Om.degree != 2 or E.degree != 1:
        raise ValueError("expected a 2-form and a deformation 1-form")
    xi, om = E.tra, E.lor
    psi_t = ext_d(Om.tra) + wedge(Om.lor, xi) - wedge(om, Om.tra)
    psi_l = ext_d(Om.lor) + wedge(Om.lor, om) - wedge(om, Om.lor)
    return AlgebraForm(psi_t, psi_l)


def closedness_residual(E: AlgebraForm) -> float:
    """Interior max-norm of d^E; near zero iff E is closed (Lagrangian integrability)."""
    if E.lattice.p < 2:
        raise ValueError("closedness needs a 2-form, so p >= 2")
    return max(ext_d(E.tra).interior_max(), ext_d(E.lor).interior_max())


def write_algebra_form(path, E: AlgebraForm):
    with open(path, "w") as fh:
        fh.write("cosrel-grid 1 algebra-form\n")
        fh.write(f"p {E.lattice.p}\n")
        fh.write(f"shape {' '.join(map(str, E.lattice.shape))}\n")
        fh.write(f"spacing {' '.join(repr(h) for h in E.lattice.spacing)}\n")
        fh.write(f"origin {' '.join(repr(o) for o in E.lattice.origin)}\n")
        fh.write(f"degree {E.degree}\n")
        _write_array(fh, "translation", E.tra.data)
        _write_array(fh, "lorentz", E.lor.data)


def read_algebra_form(path) -> AlgebraForm:
    with open(path, "r") as fh:
        lat, meta = _read_header(fh, "algebra-form")
        arrays = _read_arrays(fh)
    degree = int(meta["degree"][0])
    return AlgebraForm(FormField(lat, degree, arrays["translation"]),
                       FormField(lat, degree, arrays["lorentz"]))


def write_group_field(path, g: GroupField):
    with open(path, "w") as fh:
        fh.write("cosrel-grid 1 group\n")
        fh.write(f"p {g.lattice.p}\n")
        fh.write(f"shape {' '.join(map(str, g.lattice.shape))}\n")
        fh.write(f"spacing {' '.join(repr(h) for h in g.lattice.spacing)}\n")
        fh.write(f"origin {' '.join(repr(o) for o in g.lattice.origin)}\n")
        _write_array(fh, "a", g.a)
        _write_array(fh, "L", g.L)


def read_group_field(path) -> GroupField:
    with open(path, "r") as fh:
        lat, _ = _read_header(fh, "group")
        arrays = _read_arrays(fh)
    return GroupField(lat, arrays["a"], arrays["L"])
