"""Named verification suites: each runs a module's invariant battery and reports residuals.

Every check carries a stable id and a law tag (or "plumbing"), a measured
residual, its tolerance and a pass flag.  Randomized checks draw from a seeded
generator recorded in the report, so reports are deterministic for a fixed seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import algebra, deformation, dirac, dynamics, kinematics, weyssenhoff
from .lattice import FormField, Lattice, ext_d, wedge
from .minkowski import ETA, lorentz_adjoint
from .poincare import compose, to_homogeneous

SUITE_NAMES = ("algebra", "forms", "cosserat", "dirac", "weyssenhoff")


@dataclass
class Check:
    check_id: str
    law: str
    value: float
    tolerance: float
    passed: bool
    runtime_ms: float
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {"id": self.check_id, "law": self.law, "value": self.value,
             "tolerance": self.tolerance, "passed": self.passed,
             "runtime_ms": self.runtime_ms}
        if self.extra:
            d["extra"] = self.extra
        return d


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list
    passed: bool

    def as_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "passed": self.passed,
                "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.check_id)]}


class _Recorder:
    def __init__(self):
        self.checks = []

    def add(self, check_id, law, value, tol, extra=None, started=None):
        ms = (time.perf_counter() - started) * 1000.0 if started else 0.0
        self.checks.append(Check(check_id, law, float(value), float(tol),
                                 bool(value <= tol), ms, extra or {}))

    def bracket(self, check_id, law, lo, value, hi, extra=None, started=None):
        """Pass iff value falls in [lo, hi]; reported value is the midpoint distance."""
        ms = (time.perf_counter() - started) * 1000.0 if started else 0.0
        ok = lo <= value <= hi
        data = {"low": lo, "high": hi, "estimate": float(value)}
        data.update(extra or {})
        self.checks.append(Check(check_id, law, float(value), float(hi), ok, ms, data))


# --------------------------------------------------------------------------
# algebra suite


def _random_algebra(rng, scale=1.0) -> algebra.AlgebraElement:
    coeffs = rng.uniform(-scale, scale, size=10)
    gens = algebra.basis()
    v = sum(c * g.v for c, g in zip(coeffs, gens))
    w = sum(c * g.w for c, g in zip(coeffs, gens))
    return algebra.AlgebraElement(v, w)


def _expected_bracket_table() -> dict:
    """Structure constants assembled independently from the commutation tables."""
    eps = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
           (2, 1, 3): -1, (3, 2, 1): -1, (1, 3, 2): -1}
    names = algebra.BASIS_NAMES
    table = {}
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if i >= j:
                continue
            coeffs = {}
            if a.startswith("d") and b.startswith("d"):
                pass
            elif a.startswith("d") and b[0] in "JK":
                mu, k = int(a[1]), int(b[1])
                if b[0] == "J":
                    if mu != 0:
                        for l in range(1, 4):
                            e = eps.get((mu, k, l), 0)
                            if e:
                                coeffs[f"d{l}"] = e
                else:
                    if mu == 0:
                        coeffs[f"d{k}"] = -1
                    elif mu == k:
                        coeffs["d0"] = -1
            else:
                i1, j1 = int(a[1]), int(b[1])
                for l in range(1, 4):
                    e = eps.get((i1, j1, l), 0)
                    if not e:
                        continue
                    if a[0] == "J" and b[0] == "J":
                        coeffs[f"J{l}"] = e
                    elif a[0] == "J" and b[0] == "K":
                        coeffs[f"K{l}"] = e
                    elif a[0] == "K" and b[0] == "K":
                        coeffs[f"J{l}"] = -e
            table[(a, b)] = coeffs
    return table


def _suite_algebra(rec: _Recorder, rng, options):
    gens = {n: g for n, g in zip(algebra.BASIS_NAMES, algebra.basis())}
    table = _expected_bracket_table()
    t0 = time.perf_counter()
    worst = 0
    for (a, b), coeffs in table.items():
        got = algebra.bracket(gens[a], gens[b])
        want_v = sum((c * gens[n].v for n, c in coeffs.items()), np.zeros(4))
        want_w = sum((c * gens[n].w for n, c in coeffs.items()), np.zeros((4, 4)))
        worst = max(worst, int(np.abs(got.v - want_v).max()), int(np.abs(got.w - want_w).max()))
    rec.add("algebra.01-bracket-table", "basis-commutators", worst, 0,
            {"pairs": len(table)}, t0)

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(options.get("jacobi_samples", 1000)):
        x, y, z = (_random_algebra(rng) for _ in range(3))
        total = (algebra.bracket(algebra.bracket(x, y), z)
                 + algebra.bracket(algebra.bracket(y, z), x)
                 + algebra.bracket(algebra.bracket(z, x), y))
        worst = max(worst, np.abs(total.v).max(), np.abs(total.w).max())
    rec.add("algebra.02-jacobi", "jacobi-identity", worst, 1e-12, None, t0)

    t0 = time.perf_counter()
    worst_orth, worst_det = 0.0, 0.0
    for _ in range(options.get("exp_samples", 1000)):
        g = algebra.exp(_random_algebra(rng))
        worst_orth = max(worst_orth, np.abs(g.L.T @ ETA @ g.L - ETA).max())
        worst_det = max(worst_det, abs(np.linalg.det(g.L) - 1.0))
    rec.add("algebra.03-exp-orthogonality", "exp-lands-in-lorentz-group", worst_orth, 1e-10, None, t0)
    rec.add("algebra.04-exp-determinant", "exp-lands-in-lorentz-group", worst_det, 1e-9)

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(options.get("subgroup_samples", 200)):
        x = _random_algebra(rng)
        s, t = rng.uniform(-1, 1, size=2)
        left = compose(algebra.exp(s * x), algebra.exp(t * x))
        right = algebra.exp((s + t) * x)
        worst = max(worst, np.abs(left.a - right.a).max(), np.abs(left.L - right.L).max())
    rec.add("algebra.05-subgroup-law", "one-parameter-subgroup", worst, 1e-9, None, t0)

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        x = _random_algebra(rng)
        rot, boo = algebra.polarize(x)
        worst = max(worst, np.abs(rot.w + boo.w - x.w).max())
        rot2, boo2 = algebra.polarize(rot)
        worst = max(worst, np.abs(rot2.w - rot.w).max(), np.abs(boo2.w).max())
    rec.add("algebra.06-polarize-projection", "rotation-boost-split", worst, 1e-14, None, t0)

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        g = algebra.exp(_random_algebra(rng))
        worst = max(worst, np.abs(lorentz_adjoint(lorentz_adjoint(g.L)) - g.L).max())
        worst = max(worst, np.abs(g.L @ lorentz_adjoint(g.L) - np.eye(4)).max())
        h = algebra.exp(_random_algebra(rng))
        worst = max(worst, np.abs(to_homogeneous(compose(g, h))
                                  - to_homogeneous(g) @ to_homogeneous(h)).max())
    rec.add("algebra.07-adjoint-homomorphism", "adjoint-inverse-and-matrix-view",
            worst, 1e-10, None, t0)


# --------------------------------------------------------------------------
# forms suite


def _smooth_group_closure(which: int):
    J3 = algebra.rotation_matrix_generator(3)
    K1 = algebra.boost_matrix_generator(1)
    J1 = algebra.rotation_matrix_generator(1)
    import scipy.linalg

    def fn(point):
        r = np.sum(point)
        if which == 0:
            W = 0.3 * np.sin(point[0] + 0.5 * point[1]) * J3 + 0.2 * np.cos(r) * K1
            a = np.array([0.2 * np.sin(r), 0.1 * point[0], -0.15 * np.cos(point[1]), 0.05 * r])
        elif which == 1:
            W = 0.25 * np.cos(point[0]) * J1 + 0.15 * np.sin(point[-1] + 0.3) * K1 \
                + 0.2 * np.sin(0.7 * r) * J3
            a = np.array([0.1 * r, 0.2 * np.cos(point[0]), 0.1 * np.sin(r), 0.0])
        else:
            W = 0.2 * np.sin(r) * J3 + 0.1 * point[0] * K1 + 0.15 * np.cos(point[-1]) * J1
            a = np.array([0.05 * np.sin(point[0]), 0.1 * r, 0.0, 0.2 * np.cos(r)])
        return a, scipy.linalg.expm(W)

    return fn


def _lattice(p: int, n: int) -> Lattice:
    return Lattice((n,) * p, (1.0 / (n - 1),) * p)


def _dislocation_norm(p: int, n: int, which: int) -> float:
    lat = _lattice(p, n)
    g = deformation.GroupField.from_function(lat, _smooth_group_closure(which))
    E = deformation.nabla_group(g)
    return deformation.dislocation(E).interior_max()


def _random_algebra_form(lat: Lattice, rng) -> deformation.AlgebraForm:
    """Smooth random iso-valued 1-form from a few trig modes."""
    p = lat.p
    coords = lat.coords()
    xi = np.zeros(lat.shape + (p, 4))
    om = np.zeros(lat.shape + (p, 4, 4))
    gens = [algebra.rotation_matrix_generator(i) for i in (1, 2, 3)] \
        + [algebra.boost_matrix_generator(i) for i in (1, 2, 3)]
    for a in range(p):
        for m in range(4):
            amp, ph = rng.uniform(0.1, 0.4), rng.uniform(0, 6)
            ks = rng.uniform(0.5, 1.5, size=p)
            xi[..., a, m] = amp * np.sin(sum(k * c for k, c in zip(ks, coords)) + ph)
        for G in gens:
            amp, ph = rng.uniform(0.05, 0.25), rng.uniform(0, 6)
            ks = rng.uniform(0.5, 1.5, size=p)
            om[..., a, :, :] += (amp * np.sin(sum(k * c for k, c in zip(ks, coords)) + ph))[..., None, None] * G
    return deformation.AlgebraForm(FormField(lat, 1, xi), FormField(lat, 1, om))


def _suite_forms(rec: _Recorder, rng, options):
    grids = options.get("grids", (17, 33))
    n0, n1 = grids[0], grids[1]

    t0 = time.perf_counter()
    lat = _lattice(2, 15)
    data = rng.standard_normal(lat.shape + (1,))
    f = FormField(lat, 0, data)
    rec.add("forms.01-dd-zero", "nilpotent-exterior-derivative",
            ext_d(ext_d(f)).interior_max(), 1e-12, None, t0)

    t0 = time.perf_counter()
    a = FormField(lat, 1, rng.standard_normal(lat.shape + (2,)))
    b = FormField(lat, 1, rng.standard_normal(lat.shape + (2,)))
    asym = wedge(a, b) + wedge(b, a)
    rec.add("forms.02-wedge-antisymmetry", "graded-antisymmetry",
            asym.max_norm(), 1e-12, None, t0)

    for p in (2, 3):
        t0 = time.perf_counter()
        worst_ratio_lo, worst_ratio_hi, worst_fine = np.inf, 0.0, 0.0
        for which in range(3):
            coarse = _dislocation_norm(p, n0, which)
            fine = _dislocation_norm(p, n1, which)
            ratio = coarse / fine
            worst_ratio_lo = min(worst_ratio_lo, ratio)
            worst_ratio_hi = max(worst_ratio_hi, ratio)
            worst_fine = max(worst_fine, fine)
        order = float(np.log2(worst_ratio_lo))
        rec.bracket(f"forms.03-dislocation-order-p{p}", "nabla-squared-vanishes",
                    1.7, order, 2.3,
                    {"field": "dislocation", "grid": [n0, n1], "norm": worst_fine,
                     "order_estimate": order, "ratio_range": [worst_ratio_lo, worst_ratio_hi]},
                    t0)
        rec.add(f"forms.04-dislocation-norm-p{p}", "nabla-squared-vanishes", worst_fine, 1e-3)

    t0 = time.perf_counter()
    latc, latf = _lattice(3, n0), _lattice(3, n1)
    # same analytic modes on both grids: identical seed, identical draw sequence
    Ec = _random_algebra_form(latc, np.random.default_rng(123))
    Ef = _random_algebra_form(latf, np.random.default_rng(123))
    nc = deformation.incompatibility(deformation.dislocation(Ec), Ec).interior_max()
    nf = deformation.incompatibility(deformation.dislocation(Ef), Ef).interior_max()
    order = float(np.log2(nc / nf))
    rec.bracket("forms.05-bianchi-order", "second-compatibility-identity", 1.7, order, 2.3,
                {"field": "incompatibility", "grid": [n0, n1], "norm": nf,
                 "order_estimate": order}, t0)

    t0 = time.perf_counter()
    lat2 = _lattice(2, 21)
    coords = lat2.coords()
    xi = np.zeros(lat2.shape + (2, 4))
    xi[..., 0, 1] = coords[1]  # translation-valued rho^2 d rho^1
    E = deformation.AlgebraForm(FormField(lat2, 1, xi),
                                FormField(lat2, 1, np.zeros(lat2.shape + (2, 4, 4))))
    Om = deformation.dislocation(E)
    hand = np.zeros(lat2.shape + (1, 4))
    hand[..., 0, 1] = -1.0
    rec.add("forms.06-hand-dislocation", "torsion-of-a-linear-shear",
            float(np.abs(Om.tra.data - hand).max()), 1e-10,
            {"residual_closedness": deformation.closedness_residual(E)}, t0)


# --------------------------------------------------------------------------
# cosserat suite


def _canonical_state(lat: Lattice) -> kinematics.KinematicalState:
    """Identity embedding with constant canonical frame."""
    def fn(point):
        x = np.zeros(4)
        x[: lat.p] = point
        return x, np.eye(4)
    return kinematics.prolong(lat, fn)


def _bump_state(lat: Lattice) -> kinematics.KinematicalState:
    import scipy.linalg
    J3 = algebra.rotation_matrix_generator(3)
    K1 = algebra.boost_matrix_generator(1)

    def fn(point):
        r = np.sum(point)
        x = np.zeros(4)
        x[: lat.p] = point
        x[0] += 0.1 * np.sin(r)
        x[3] = 0.2 * np.cos(point[0])
        e = scipy.linalg.expm(0.2 * np.sin(point[0]) * J3 + 0.1 * np.cos(r) * K1)
        return x, e

    return kinematics.prolong(lat, fn)


def _random_phi(lat: Lattice, rng) -> dynamics.DynamicalState:
    p = lat.p
    return dynamics.DynamicalState(
        lat, rng.standard_normal(lat.shape + (4,)), rng.standard_normal(lat.shape + (4, 4)),
        rng.standard_normal(lat.shape + (p, 4)), rng.standard_normal(lat.shape + (p, 4, 4)))


def _random_eulerian_variation(lat: Lattice, rng) -> dynamics.EulerianVariation:
    p = lat.p
    def anti(shape):
        raw = rng.standard_normal(shape)
        low = 0.5 * (raw - np.swapaxes(raw, -1, -2))
        return np.einsum("ij,...jk->...ik", ETA, low)  # raise first index
    return dynamics.EulerianVariation(
        rng.standard_normal(lat.shape + (4,)), anti(lat.shape + (4, 4)),
        rng.standard_normal(lat.shape + (p, 4)), anti(lat.shape + (p, 4, 4)))


def _invariant_phi(lat: Lattice, s: kinematics.KinematicalState, rng) -> dynamics.DynamicalState:
    """Fundamental form with F = 0 and the couple chosen by the internal-couple identity."""
    p = lat.p
    sigma = rng.standard_normal(lat.shape + (p, 4))
    mu = rng.standard_normal(lat.shape + (p, 4, 4))
    phi0 = dynamics.DynamicalState(lat, np.zeros(lat.shape + (4,)),
                                   np.zeros(lat.shape + (4, 4)), sigma, mu)
    Mbar0, _ = dynamics.barred_moments(phi0, s)
    e_low_t = np.einsum("...jk,jl->...kl", s.e, ETA)          # (e^T eta) per point
    M = np.einsum("...ij,...jk->...ik", -Mbar0, np.linalg.inv(e_low_t))
    return dynamics.DynamicalState(lat, phi0.F, M, sigma, mu)


def _manufactured_standard(lat: Lattice):
    """Analytic sigma/mubar with hand divergences on the canonical state (p = 2)."""
    coords = lat.coords()
    r1, r2 = coords[0], coords[1]
    p = lat.p
    cvec = np.array([1.0, -0.7, 0.4, 0.2])
    dvec = np.array([0.3, 1.1, -0.5, 0.6])
    sigma = np.zeros(lat.shape + (p, 4))
    sigma[..., 0, :] = np.sin(r1 + 0.5 * r2)[..., None] * cvec
    sigma[..., 1, :] = np.cos(0.4 * r1 - r2)[..., None] * dvec
    div_sigma = (np.cos(r1 + 0.5 * r2)[..., None] * cvec
                 + np.sin(0.4 * r1 - r2)[..., None] * dvec)
    A1 = np.zeros((4, 4)); A1[0, 1], A1[1, 0] = 1.0, -1.0
    A2 = np.zeros((4, 4)); A2[2, 3], A2[3, 2] = 1.0, -1.0
    mubar = np.zeros(lat.shape + (p, 4, 4))
    mubar[..., 0, :, :] = np.sin(r1) [..., None, None] * A1 + (r2 ** 2)[..., None, None] * A2
    mubar[..., 1, :, :] = np.cos(r2)[..., None, None] * A1
    div_mubar = (np.cos(r1)[..., None, None] * A1
                 - np.sin(r2)[..., None, None] * A1)
    return sigma, div_sigma, mubar, div_mubar


def _phi_realizing(lat, s, sigma, F_target, mubar_target, Mbar_target) -> dynamics.DynamicalState:
    """Solve for raw (M, mu) so the barred moments hit the analytic targets."""
    e_low_t = np.einsum("...jk,jl->...kl", s.e, ETA)
    inv = np.linalg.inv(e_low_t)
    x_low = s.x @ ETA
    sig_x = 0.5 * (np.einsum("...ai,...j->...aij", sigma, x_low)
                   - np.einsum("...aj,...i->...aij", sigma, x_low))
    mu = np.einsum("...aij,...jk->...aik", mubar_target - sig_x, inv)
    phi0 = dynamics.DynamicalState(lat, F_target, np.zeros(lat.shape + (4, 4)), sigma, mu)
    Mbar0, _ = dynamics.barred_moments(phi0, s)
    M = np.einsum("...ij,...jk->...ik", Mbar_target - Mbar0, inv)
    return dynamics.DynamicalState(lat, F_target, M, sigma, mu)


def _manufactured_residual(n: int) -> float:
    lat = _lattice(2, n)
    s = _bump_state(lat)
    sigma, div_sigma, mubar_t, div_mubar = _manufactured_standard(lat)
    phi = _phi_realizing(lat, s, sigma, div_sigma, mubar_t, div_mubar)
    r1, r2 = dynamics.cosserat_residual(phi, s)
    sel = lat.interior()
    return max(float(np.abs(r1[sel]).max()), float(np.abs(r2[sel]).max()))


def _suite_cosserat(rec: _Recorder, rng, options):
    lat = _lattice(2, 9)
    s = _bump_state(lat)

    t0 = time.perf_counter()
    phi_inv = _invariant_phi(lat, s, rng)
    rF, rM = dynamics.poincare_invariance_residual(phi_inv, s)
    rec.add("cosserat.01-invariant-construction", "rigid-motion-work-vanishes",
            max(rF, rM), 1e-12, None, t0)

    t0 = time.perf_counter()
    phi = _random_phi(lat, rng)
    var_e = _random_eulerian_variation(lat, rng)
    var_l = dynamics.lagrangian_of(var_e, s)
    d1 = dynamics.virtual_work_density(phi, s, var_l)
    d2 = dynamics.virtual_work_density(phi, s, var_e)
    scale = max(1.0, float(np.abs(d1).max()))
    rec.add("cosserat.02-picture-crosscheck", "work-density-picture-independence",
            float(np.abs(d1 - d2).max()) / scale, 1e-12, None, t0)

    t0 = time.perf_counter()
    grids = options.get("cosserat_grids", options.get("grids", (9, 17)))
    nc, nf = _manufactured_residual(grids[0]), _manufactured_residual(grids[1])
    order = float(np.log2(nc / nf))
    rec.bracket("cosserat.03-manufactured-order", "stress-couple-balance", 1.7, order, 2.3,
                {"field": "balance-residual", "grid": list(grids), "norm": nf,
                 "order_estimate": order}, t0)

    t0 = time.perf_counter()
    mism = {}
    for n in grids:
        latn = _lattice(2, n)
        sn = _bump_state(latn)
        sigma_n, div_sigma_n, mubar_n, div_mubar_n = _manufactured_standard(latn)
        phin = _phi_realizing(latn, sn, sigma_n, div_sigma_n, mubar_n, div_mubar_n)
        coords = latn.coords()
        dxi0 = np.stack([np.sin(coords[0]), np.cos(0.7 * coords[1]),
                         coords[0] * coords[1], 0.5 * np.ones(latn.shape)], axis=-1)
        G = np.zeros((4, 4)); G[0, 1] = G[1, 0] = 1.0
        dI0 = np.cos(coords[0] + coords[1])[..., None, None] * G
        bulk, boundary = dynamics.total_virtual_work(phin, sn, dxi0, dI0)
        direct = dynamics.direct_virtual_work(phin, sn, dxi0, dI0)
        mism[n] = abs(bulk + boundary - direct)
    order = float(np.log2(mism[grids[0]] / mism[grids[1]]))
    rec.bracket("cosserat.04-integration-by-parts", "bulk-plus-flux-split", 1.5, order, 2.7,
                {"mismatch": mism[grids[1]], "grid": list(grids), "order_estimate": order}, t0)

    t0 = time.perf_counter()
    _, r2 = dynamics.cosserat_residual(phi, s)
    rec.add("cosserat.05-couple-residual-antisymmetry", "couple-balance-antisymmetry",
            float(np.abs(r2 + np.swapaxes(r2, -1, -2)).max()), 1e-12, None, t0)


# --------------------------------------------------------------------------
# dirac suite


def _boosted_momentum(rng, kappa=1.0):
    v = rng.uniform(-0.5, 0.5, size=3)
    return np.array([np.sqrt(kappa ** 2 + v @ v), *v])


def _suite_dirac(rec: _Recorder, rng, options):
    t0 = time.perf_counter()
    rec.add("dirac.01-clifford", "clifford-anticommutation", dirac.clifford_defect(),
            1e-14, None, t0)
    rec.add("dirac.02-hermiticity", "gamma-hermiticity-pattern", dirac.hermiticity_defect(), 1e-14)

    t0 = time.perf_counter()
    worst_res, worst_u, worst_us, worst_eq = 0.0, 0.0, 0.0, 0.0
    for _ in range(options.get("dirac_samples", 25)):
        p = _boosted_momentum(rng)
        st = dirac.make_plane_wave(p, int(rng.integers(2)), 1 if rng.uniform() < 0.5 else -1)
        x = rng.uniform(-1, 1, size=4)
        worst_res = max(worst_res, dirac.dirac_residual(st, x))
        j = dirac.current_j(st, x)
        rho, u = dirac.density_velocity(j, st.hbar, st.c)
        worst_u = max(worst_u, abs(float(u @ ETA @ u) - st.c ** 2))
        _, S2 = dirac.spin_tensor(st, x)
        worst_us = max(worst_us, float(np.abs((ETA @ u) @ S2).max()))
        Om = float((st.psi(x).conj() @ dirac.GAMMA_UP[0] @ st.psi(x)).real)
        Omh = float((1j * st.psi(x).conj() @ dirac.GAMMA_UP[0] @ dirac.GAMMA5 @ st.psi(x)).real)
        worst_eq = max(worst_eq, abs(Om ** 2 + Omh ** 2 - rho ** 2))
    rec.add("dirac.03-planewave-residual", "free-wave-equation", worst_res, 1e-12, None, t0)
    rec.add("dirac.04-velocity-normalization", "unit-speed-constraint", worst_u, 1e-10)
    rec.add("dirac.05-frenkel", "velocity-annihilates-spin", worst_us, 1e-10)
    rec.add("dirac.06-takabayasi-identity", "scalar-pseudoscalar-modulus", worst_eq, 1e-10)

    t0 = time.perf_counter()
    p1 = _boosted_momentum(np.random.default_rng(int(rng.integers(2 ** 31))))
    p2 = _boosted_momentum(np.random.default_rng(int(rng.integers(2 ** 31))))
    two = dirac.superpose(dirac.make_plane_wave(p1, 0), dirac.make_plane_wave(p2, 1))
    rep = dirac.conservation_report(two)
    rec.add("dirac.07-two-wave-conservation", "local-balance-laws", rep.max_residual(),
            1e-10, {"points": rep.points}, t0)

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(10):
        st = dirac.make_plane_wave(_boosted_momentum(rng), int(rng.integers(2)))
        x = rng.uniform(-1, 1, size=4)
        tk = dirac.takabayasi(st, x)
        rho, u = dirac.density_velocity(dirac.current_j(st, x))
        back = dirac.spin_form_from_dual(u, tk.S_hat, st.c)
        worst = max(worst, float(np.abs(back - tk.S_form).max()))
    rec.add("dirac.08-duality-roundtrip", "spin-axis-duality", worst, 1e-12, None, t0)


# --------------------------------------------------------------------------
# weyssenhoff suite


def _random_element(rng, c=1.0) -> weyssenhoff.WeyssenhoffElement:
    v = rng.uniform(-0.4, 0.4, size=3)
    gamma = 1.0 / np.sqrt(1 - (v @ v) / c ** 2)
    u = gamma * np.array([c, *v])
    P = weyssenhoff.frenkel_projector(u, c)
    raw_low = rng.standard_normal((4, 4))
    raw_low = 0.5 * (raw_low - raw_low.T)
    s = P @ (ETA @ raw_low) @ P
    rho0 = rng.uniform(0.5, 2.0)
    a_seed = P @ rng.standard_normal(4)
    pi = weyssenhoff.transverse_momentum(
        weyssenhoff.WeyssenhoffElement(np.zeros(4), u, rho0 * (ETA @ u), s, c=c), a_seed)
    g = rho0 * (ETA @ u) + ETA @ pi
    return weyssenhoff.WeyssenhoffElement(np.zeros(4), u, g, s, c=c)


def _suite_weyssenhoff(rec: _Recorder, rng, options):
    t0 = time.perf_counter()
    worst_tr, worst_split, worst_asym = 0.0, 0.0, 0.0
    for _ in range(50):
        el = _random_element(rng)
        st = weyssenhoff.stress_tensors(el)
        sp = weyssenhoff.split_momentum(el.g, el.u, el.c)
        worst_tr = max(worst_tr, abs(st.trace - sp.rho0 * el.c ** 2))
        u_low = ETA @ el.u
        expect = 0.5 * (np.outer(sp.pi_low, u_low) - np.outer(u_low, sp.pi_low))
        worst_asym = max(worst_asym, float(np.abs(st.T_asym - expect).max()))
        a, _, _ = weyssenhoff._acceleration(el.u, el.s, el.g, el.c, 1e-6)
        g2 = weyssenhoff.momentum_from_state(el, a, tol=1e-6)
        sp2 = weyssenhoff.split_momentum(g2, el.u, el.c)
        worst_split = max(worst_split, abs(sp2.rho0 - sp.rho0),
                          float(np.abs(sp2.pi_low - sp.pi_low).max()))
    rec.add("weyssenhoff.01-trace-identity", "stress-trace-is-rest-energy", worst_tr, 1e-12, None, t0)
    rec.add("weyssenhoff.02-antisymmetric-part", "transverse-momentum-bivector", worst_asym, 1e-12)
    rec.add("weyssenhoff.03-split-rebuild", "momentum-split-roundtrip", worst_split, 1e-12)

    t0 = time.perf_counter()
    c = 1.0
    u0 = np.array([c, 0, 0, 0])
    el = weyssenhoff.WeyssenhoffElement(np.zeros(4), u0, ETA @ u0 * 1.3,
                                        weyssenhoff.spin_matrix_from_components([0, 0, 0, 0.5, 0, 0]))
    traj = weyssenhoff.integrate_worldline(el, options.get("steps", 400), options.get("dtau", 0.01))
    dev = max(float(np.abs(traj.u - u0).max()),
              float(np.abs(traj.x - np.outer(traj.tau, u0)).max()))
    rec.add("weyssenhoff.04-aligned-momentum-is-inertial", "stationary-spin-solution",
            dev, 1e-10, None, t0)

    t0 = time.perf_counter()
    el = _random_element(np.random.default_rng(11))
    n = options.get("steps", 400)
    dt = options.get("dtau", 0.01)
    t1 = weyssenhoff.integrate_worldline(el, n, dt)
    t2 = weyssenhoff.integrate_worldline(el, 2 * n, dt / 2)
    d1 = max(t1.drift_summary()["u_norm"], t1.drift_summary()["frenkel"])
    d2 = max(t2.drift_summary()["u_norm"], t2.drift_summary()["frenkel"])
    order = float(np.log2(d1 / d2))
    rec.bracket("weyssenhoff.05-drift-order", "integrator-constraint-drift", 3.7, order, 100.0,
                {"coarse": d1, "fine": d2, "order_estimate": order}, t0)


_SUITES = {
    "algebra": _suite_algebra,
    "forms": _suite_forms,
    "cosserat": _suite_cosserat,
    "dirac": _suite_dirac,
    "weyssenhoff": _suite_weyssenhoff,
}


def run_suite(name: str, seed: int = 0, options: dict = None) -> list[SuiteReport]:
    """Run one named suite (or 'all'); returns one report per suite executed."""
    options = dict(options or {})
    names = list(SUITE_NAMES) if name == "all" else [name]
    reports = []
    for n in names:
        if n not in _SUITES:
            raise KeyError(f"unknown suite {n!r}; choose from {SUITE_NAMES + ('all',)}")
        rec = _Recorder()
        rng = np.random.default_rng(seed)
        _SUITES[n](rec, rng, options)
        reports.append(SuiteReport(n, seed, rec.checks, all(c.passed for c in rec.checks)))
    return reports
