"""Regular lattices over the material body and k-form fields on them.

Forms are stored by strictly increasing multi-index: a k-form on a p-dimensional
lattice holds C(p,k) independent components per point, each with scalar, 4-vector
or 4x4-matrix values.  Derivatives use second-order central stencils on the
interior and second-order one-sided stencils on the boundary (np.gradient with
edge_order=2); identity checks are asserted on interior points only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

_VALUE_KINDS = {(): "scalar", (4,): "vector", (4, 4): "matrix"}


@dataclass(frozen=True)
class Lattice:
    """Regular grid over O in R^p: sizes, spacings, origin offsets."""

    shape: tuple
    spacing: tuple
    origin: tuple = None

    def __post_init__(self):
        shape = tuple(int(n) for n in self.shape)
        spacing = tuple(float(h) for h in self.spacing)
        origin = tuple(float(o) for o in (self.origin if self.origin is not None
                                          else (0.0,) * len(shape)))
        if not 1 <= len(shape) <= 4:
            raise ValueError("lattice dimension must be between 1 and 4")
        if len(spacing) != len(shape) or len(origin) != len(shape):
            raise ValueError("shape, spacing and origin must have equal length")
        if any(n < 3 for n in shape):
            raise ValueError("each grid size must be at least 3 (stencil support)")
        if any(h <= 0 for h in spacing):
            raise ValueError("spacings must be positive")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "origin", origin)

    @property
    def p(self) -> int:
        return len(self.shape)

    def axis_coords(self, a: int) -> np.ndarray:
        return self.origin[a] + self.spacing[a] * np.arange(self.shape[a])

    def coords(self) -> list[np.ndarray]:
        """Meshgrid point coordinates, one (shape,) array per material direction."""
        return list(np.meshgrid(*[self.axis_coords(a) for a in range(self.p)], indexing="ij"))

    def interior(self) -> tuple:
        """Slice tuple selecting interior points (one layer stripped per axis)."""
        return tuple(slice(1, -1) for _ in range(self.p))

    def gradient(self, data: np.ndarray, axis: int) -> np.ndarray:
        """Partial derivative along material axis of data shaped (*shape, ...)."""
        return np.gradient(data, self.spacing[axis], axis=axis, edge_order=2)


def multi_indices(p: int, k: int) -> tuple:
    """Strictly increasing k-multi-indices over axes 0..p-1, lexicographic."""
    return tuple(itertools.combinations(range(p), k))


class FormField:
    """k-form on a lattice with values of a fixed kind (scalar/vector/matrix).

    data layout: (*lattice.shape, n_components, *value_shape).
    """

    def __init__(self, lattice: Lattice, degree: int, data: np.ndarray):
        if not 0 <= degree <= lattice.p:
            raise ValueError(f"degree {degree} out of range for p={lattice.p}")
        self.lattice = lattice
        self.degree = degree
        self.indices = multi_indices(lattice.p, degree)
        data = np.asarray(data, dtype=float)
        expected_lead = lattice.shape + (len(self.indices),)
        if data.shape[: lattice.p + 1] != expected_lead:
            raise ValueError(f"data shape {data.shape} does not match lattice+components {expected_lead}")
        self.value_shape = data.shape[lattice.p + 1:]
        if self.value_shape not in _VALUE_KINDS:
            raise ValueError(f"unsupported value shape {self.value_shape}")
        self.data = data

    @property
    def value_kind(self) -> str:
        return _VALUE_KINDS[self.value_shape]

    @classmethod
    def zeros(cls, lattice: Lattice, degree: int, value_shape=()) -> "FormField":
        n = len(multi_indices(lattice.p, degree))
        return cls(lattice, degree, np.zeros(lattice.shape + (n,) + tuple(value_shape)))

    @classmethod
    def from_function(cls, lattice: Lattice, degree: int, fn, value_shape=()) -> "FormField":
        """Sample an analytic closure fn(point) -> (n_components, *value_shape)."""
        n = len(multi_indices(lattice.p, degree))
        out = np.zeros(lattice.shape + (n,) + tuple(value_shape))
        for idx in np.ndindex(*lattice.shape):
            point = np.array([lattice.origin[a] + lattice.spacing[a] * idx[a]
                              for a in range(lattice.p)])
            out[idx] = fn(point)
        return cls(lattice, degree, out)

    def component(self, multi_idx) -> np.ndarray:
        """View of one antisymmetric component by its increasing multi-index."""
        return self.data[(Ellipsis, self.indices.index(tuple(multi_idx))) + (slice(None),) * len(self.value_shape)]

    def interior_max(self) -> float:
        sel = self.lattice.interior() + (Ellipsis,)
        return float(np.abs(self.data[sel]).max())

    def max_norm(self) -> float:
        return float(np.abs(self.data).max())

    def copy(self) -> "FormField":
        return FormField(self.lattice, self.degree, self.data.copy())

    def __add__(self, other: "FormField") -> "FormField":
        self._check_compatible(other)
        return FormField(self.lattice, self.degree, self.data + other.data)

    def __sub__(self, other: "FormField") -> "FormField":
        self._check_compatible(other)
        return FormField(self.lattice, self.degree, self.data - other.data)

    def __neg__(self) -> "FormField":
        return FormField(self.lattice, self.degree, -self.data)

    def __rmul__(self, t: float) -> "FormField":
        return FormField(self.lattice, self.degree, t * self.data)

    def _check_compatible(self, other: "FormField"):
        if self.lattice != other.lattice or self.degree != other.degree \
                or self.value_shape != other.value_shape:
            raise ValueError("incompatible form fields")


def ext_d(f: FormField) -> FormField:
    """Discrete exterior derivative: stencil differences antisymmetrized over the new index."""
    lat = f.lattice
    if f.degree >= lat.p:
        raise ValueError("exterior derivative of a top-degree form")
    out = FormField.zeros(lat, f.degree + 1, f.value_shape)
    src = {mi: f.component(mi) for mi in f.indices}
    for ci, C in enumerate(out.indices):
        acc = np.zeros(lat.shape + f.value_shape)
        for j, axis in enumerate(C):
            rest = C[:j] + C[j + 1:]
            acc += (-1.0) ** j * lat.gradient(src[rest], axis)
        out.data[(Ellipsis, ci) + (slice(None),) * len(f.value_shape)] = acc
    return out


def _pair_values(u: np.ndarray, us, v: np.ndarray, vs) -> tuple[np.ndarray, tuple]:
    """Pointwise value pairing: scalar*any, elementwise vectors, matrix products."""
    if us == ():
        return u[(Ellipsis,) + (np.newaxis,) * len(vs)] * v, vs
    if vs == ():
        return u * v[(Ellipsis,) + (np.newaxis,) * len(us)], us
    if us == (4,) and vs == (4,):
        return u * v, (4,)  # componentwise scalar pairing
    if us == (4, 4) and vs == (4, 4):
        return np.einsum("...ij,...jk->...ik", u, v), (4, 4)
    if us == (4, 4) and vs == (4,):
        return np.einsum("...ij,...j->...i", u, v), (4,)
    raise ValueError(f"no value pairing for shapes {us} x {vs}")


def _merge_sign(A: tuple, B: tuple) -> int:
    """Parity of merging the sorted tuples A, B into one sorted tuple."""
    inversions = sum(1 for a in A for b in B if a > b)
    return -1 if inversions % 2 else 1


def wedge(alpha: FormField, beta: FormField) -> FormField:
    """Pointwise antisymmetrized product; matrix-valued pairings do not commute."""
    if alpha.lattice != beta.lattice:
        raise ValueError("wedge of forms on different lattices")
    lat = alpha.lattice
    k, l = alpha.degree, beta.degree
    if k + l > lat.p:
        raise ValueError(f"degree {k}+{l} exceeds lattice dimension {lat.p}")
    sample, out_vs = _pair_values(alpha.data[(Ellipsis, 0) + (slice(None),) * len(alpha.value_shape)],
                                  alpha.value_shape,
                                  beta.data[(Ellipsis, 0) + (slice(None),) * len(beta.value_shape)],
                                  beta.value_shape)
    out = FormField.zeros(lat, k + l, out_vs)
    for ci, C in enumerate(out.indices):
        acc = np.zeros(lat.shape + out_vs)
        for positions in itertools.combinations(range(k + l), k):
            A = tuple(C[i] for i in positions)
            B = tuple(C[i] for i in range(k + l) if i not in positions)
            term, _ = _pair_values(alpha.component(A), alpha.value_shape,
                                   beta.component(B), beta.value_shape)
            acc += _merge_sign(A, B) * term
        out.data[(Ellipsis, ci) + (slice(None),) * len(out_vs)] = acc
    return out


# --- flat grid-file format -------------------------------------------------
#
# Text layout (whitespace separated):
#   line 1:  "cosrel-grid 1 <kind>"        kind: form | group | state | displacement
#   header:  "p", "shape", "spacing", "origin", then kind-specific keys
#   "data" line, then one block of floats per named array, row-major.

def _write_array(fh, name: str, arr: np.ndarray):
    fh.write(f"array {name} {' '.join(str(n) for n in arr.shape)}\n")
    flat = np.asarray(arr, dtype=float).reshape(-1)
    fh.write(" ".join(repr(float(x)) for x in flat))
    fh.write("\n")


def _read_header(fh, kind_expected: str) -> tuple[Lattice, dict]:
    magic = fh.readline().split()
    if len(magic) != 3 or magic[0] != "cosrel-grid" or magic[1] != "1":
        raise ValueError("not a cosrel grid file")
    if magic[2] != kind_expected:
        raise ValueError(f"expected kind {kind_expected!r}, found {magic[2]!r}")
    meta = {}
    while True:
        pos = fh.tell()
        line = fh.readline()
        if not line:
            raise ValueError("truncated grid file")
        parts = line.split()
        if parts[0] == "array":
            fh.seek(pos)
            break
        meta[parts[0]] = parts[1:]
    lat = Lattice(tuple(int(n) for n in meta["shape"]),
                  tuple(float(h) for h in meta["spacing"]),
                  tuple(float(o) for o in meta["origin"]))
    return lat, meta


def _read_arrays(fh) -> dict:
    arrays = {}
    while True:
        line = fh.readline()
        if not line:
            break
        parts = line.split()
        if not parts:
            continue
        if parts[0] != "array":
            raise ValueError(f"unexpected line in grid file: {line!r}")
        name = parts[1]
        shape = tuple(int(n) for n in parts[2:])
        flat = np.array(fh.readline().split(), dtype=float)
        arrays[name] = flat.reshape(shape)
    return arrays


def write_form(path, f: FormField):
    with open(path, "w") as fh:
        fh.write("cosrel-grid 1 form\n")
        fh.write(f"p {f.lattice.p}\n")
        fh.write(f"shape {' '.join(map(str, f.lattice.shape))}\n")
        fh.write(f"spacing {' '.join(repr(h) for h in f.lattice.spacing)}\n")
        fh.write(f"origin {' '.join(repr(o) for o in f.lattice.origin)}\n")
        fh.write(f"degree {f.degree}\n")
        fh.write(f"value {f.value_kind}\n")
        _write_array(fh, "coefficients", f.data)


def read_form(path) -> FormField:
    with open(path, "r") as fh:
        lat, meta = _read_header(fh, "form")
        arrays = _read_arrays(fh)
    return FormField(lat, int(meta["degree"][0]), arrays["coefficients"])
