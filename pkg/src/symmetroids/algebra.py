"""The convolution *-algebra of a finite groupoid.

The algebra is finite dimensional, so no completion is involved.  Integer
coefficients stay integral (int64) through convolution so golden checks are
exact; anything else is carried as complex128.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .bisections import Bisection, BisectionGroup
from .core import FiniteGroupoid, Report

PSD_TOL = 1e-9


def _coerce(values) -> np.ndarray:
    v = np.asarray(values)
    if v.dtype.kind in "biu":
        return v.astype(np.int64)
    if v.dtype.kind == "f" and np.all(np.isfinite(v)) and np.all(v == np.round(v)) \
            and np.all(np.abs(v) < 2**53):
        return v.astype(np.int64)
    v = v.astype(np.complex128)
    if np.all(v.imag == 0) and np.all(v.real == np.round(v.real)) and np.all(np.abs(v.real) < 2**53):
        return v.real.astype(np.int64)
    return v


class GroupoidFunction:
    """A complex function on the arrows of a groupoid."""

    __slots__ = ("groupoid", "values")

    def __init__(self, groupoid: FiniteGroupoid, values):
        v = _coerce(values)
        if v.shape != (groupoid.n_arrows,):
            raise ValueError(f"expected {groupoid.n_arrows} coefficients, got shape {v.shape}")
        v.flags.writeable = False
        self.groupoid = groupoid
        self.values = v

    @classmethod
    def zero(cls, g: FiniteGroupoid) -> "GroupoidFunction":
        return cls(g, np.zeros(g.n_arrows, dtype=np.int64))

    @classmethod
    def from_mapping(cls, g: FiniteGroupoid, coeffs: Mapping) -> "GroupoidFunction":
        """Coefficients keyed by arrow label or index; missing arrows are 0."""
        vals = [0] * g.n_arrows
        for k, c in coeffs.items():
            vals[g.arrow(k) if isinstance(k, str) else int(k)] = c
        return cls(g, vals)

    @property
    def exact(self) -> bool:
        return self.values.dtype == np.int64

    def __call__(self, a: int | str):
        return self.values[self.groupoid.arrow(a) if isinstance(a, str) else a]

    def _check(self, other: "GroupoidFunction"):
        if not isinstance(other, GroupoidFunction):
            return NotImplemented
        if other.groupoid != self.groupoid:
            raise ValueError("functions live on different groupoids")

    def __add__(self, other):
        self._check(other)
        return GroupoidFunction(self.groupoid, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return GroupoidFunction(self.groupoid, self.values - other.values)

    def __neg__(self):
        return GroupoidFunction(self.groupoid, -self.values)

    def __rmul__(self, scalar):
        return GroupoidFunction(self.groupoid, scalar * self.values)

    def __mul__(self, other):
        if isinstance(other, GroupoidFunction):
            return convolve(self, other)
        return GroupoidFunction(self.groupoid, self.values * other)

    def __matmul__(self, other):
        return convolve(self, other)

    def star(self) -> "GroupoidFunction":
        return involution(self)

    def allclose(self, other: "GroupoidFunction", atol: float = 1e-12) -> bool:
        self._check(other)
        if self.exact and other.exact:
            return bool(np.array_equal(self.values, other.values))
        return bool(np.allclose(self.values, other.values, rtol=0, atol=atol))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupoidFunction) or other.groupoid != self.groupoid:
            return False
        return self.allclose(other)

    __hash__ = None

    def support(self) -> list[int]:
        return [int(a) for a in np.nonzero(self.values)[0]]

    def to_dict(self) -> dict[str, list[float]]:
        """label -> [re, im]"""
        g = self.groupoid
        out = {}
        for a in range(g.n_arrows):
            c = complex(self.values[a])
            out[g.arrow_labels[a]] = [c.real, c.imag]
        return out

    def __repr__(self) -> str:
        g = self.groupoid
        terms = [f"{self.values[a]}·δ[{g.arrow_labels[a]}]" for a in self.support()]
        return "GroupoidFunction(" + (" + ".join(terms) or "0") + ")"


def delta(g: FiniteGroupoid, a: int | str) -> GroupoidFunction:
    v = np.zeros(g.n_arrows, dtype=np.int64)
    v[g.arrow(a) if isinstance(a, str) else a] = 1
    return GroupoidFunction(g, v)


def unit_element(g: FiniteGroupoid) -> GroupoidFunction:
    """u = Σ_x δ_{1_x}"""
    v = np.zeros(g.n_arrows, dtype=np.int64)
    v[g.units] = 1
    return GroupoidFunction(g, v)


def _pairs(g: FiniteGroupoid):
    bb, aa = np.nonzero(g.compose >= 0)
    return bb, aa, g.compose[bb, aa]


def convolve(f: GroupoidFunction, h: GroupoidFunction) -> GroupoidFunction:
    """``(f∗h)(α) = Σ_{β∘γ=α} f(β)h(γ)``, summed in ascending pair order."""
    g = f.groupoid
    if h.groupoid != g:
        raise ValueError("functions live on different groupoids")
    bb, aa, cc = _pairs(g)
    dtype = np.int64 if f.exact and h.exact else np.complex128
    out = np.zeros(g.n_arrows, dtype=dtype)
    np.add.at(out, cc, f.values[bb].astype(dtype) * h.values[aa].astype(dtype))
    return GroupoidFunction(g, out)


def involution(f: GroupoidFunction) -> GroupoidFunction:
    """``f*(α) = conj(f(α⁻¹))``"""
    v = f.values[f.groupoid.inverse]
    return GroupoidFunction(f.groupoid, v if f.exact else np.conj(v))


def characteristic_of_bisection(b: Bisection) -> GroupoidFunction:
    """χ_b = Σ_x δ_{b_s(x)}"""
    g = b.groupoid
    v = np.zeros(g.n_arrows, dtype=np.int64)
    v[list(b.arrows)] = 1
    return GroupoidFunction(g, v)


def associativity_check(g: FiniteGroupoid, triples: Iterable[tuple[int, int, int]] | None = None) -> Report:
    """(δ_a∗δ_b)∗δ_c = δ_a∗(δ_b∗δ_c) on basis triples (all of them by default)."""
    rep = Report("convolution associativity")
    n = g.n_arrows
    it = triples if triples is not None else ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
    d = [delta(g, a) for a in range(n)]
    count = 0
    for a, b, c in it:
        count += 1
        if convolve(convolve(d[a], d[b]), d[c]) != convolve(d[a], convolve(d[b], d[c])):
            rep.add("(f∗g)∗h = f∗(g∗h)", False, (a, b, c))
            return rep
    rep.add("(f∗g)∗h = f∗(g∗h)", True, detail=f"{count} basis triples")
    return rep


def rep_check(bg: BisectionGroup) -> Report:
    """b ↦ χ_b is an injective homomorphism into the unitary elements."""
    g = bg.groupoid
    chis = [characteristic_of_bisection(b) for b in bg]
    u = unit_element(g)
    rep = Report("characteristic-function representation")
    rep.add("χ_(b_e) = u", chis[bg.identity] == u)
    bad = None
    for i in range(len(bg)):
        for j in range(len(bg)):
            if convolve(chis[i], chis[j]) != chis[int(bg.table[i, j])]:
                bad = (i, j)
                break
        if bad:
            break
    rep.add("χ_b2 ∗ χ_b1 = χ_(b2∘b1)", bad is None, bad, f"{len(bg) ** 2} pairs")
    bad = [i for i, c in enumerate(chis) if convolve(involution(c), c) != u or convolve(c, involution(c)) != u]
    rep.add("χ_b* ∗ χ_b = u = χ_b ∗ χ_b*", not bad, bad[0] if bad else None)
    rep.add("injective", len({c.values.tobytes() for c in chis}) == len(chis))
    return rep


# ---------------------------------------------------------------- states

@dataclass
class GramBlock:
    obj: int
    arrows: list[int]
    matrix: np.ndarray
    eigenvalues: np.ndarray
    hermitian: bool
    psd: bool
    near_boundary: bool

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0]) if len(self.eigenvalues) else 0.0


@dataclass
class PositivityReport:
    blocks: list[GramBlock]
    tol: float
    unit_values_ok: bool
    report: Report = field(default_factory=lambda: Report("positive definiteness"))

    @property
    def ok(self) -> bool:
        return self.report.ok

    def to_dict(self) -> dict:
        return {
            "tol": self.tol,
            "objects": [{"object": b.obj, "eigenvalues": [float(e) for e in b.eigenvalues],
                         "hermitian": b.hermitian, "psd": b.psd, "near_boundary": b.near_boundary}
                        for b in self.blocks],
            "report": self.report.to_dict(),
        }


def gram_matrix(phi: GroupoidFunction, x: int) -> tuple[list[int], np.ndarray]:
    """``M[α,β] = φ(α∘β⁻¹)`` over the arrows with source ``x``."""
    g = phi.groupoid
    fib = [int(a) for a in np.nonzero(g.source == x)[0]]
    idx = g.compose[np.ix_(fib, g.inverse[fib])]
    return fib, phi.values[idx].astype(np.complex128)


def is_positive_definite(phi: GroupoidFunction, tol: float = PSD_TOL) -> PositivityReport:
    """Per-object Gram blocks must be Hermitian with min eigenvalue >= -tol.

    Eigenvalues within ``tol`` of zero are flagged as near the boundary
    rather than being rounded.
    """
    g = phi.groupoid
    blocks = []
    rep = Report("positive definiteness")
    for x in range(g.n_objects):
        arrows, M = gram_matrix(phi, x)
        herm = bool(np.allclose(M, M.conj().T, rtol=0, atol=tol))
        ev = np.linalg.eigvalsh((M + M.conj().T) / 2)
        psd = herm and bool(ev[0] >= -tol)
        near = bool(np.any(np.abs(ev) <= tol))
        blocks.append(GramBlock(x, arrows, M, ev, herm, psd, near))
        rep.add(f"Gram block at {g.object_labels[x]} PSD", psd, None if psd else x,
                f"min eigenvalue {ev[0]:.3g}" + (" (an eigenvalue lies within tolerance of 0)" if near else ""))
    uv = phi.values[g.units].astype(np.complex128)
    unit_ok = bool(np.all(np.abs(uv.imag) <= tol) and np.all(uv.real >= -tol))
    rep.add("φ(1_x) real and nonnegative", unit_ok)
    return PositivityReport(blocks, tol, unit_ok, rep)


@dataclass(frozen=True)
class StateFunctional:
    """The linear functional ``ρ(f) = Σ_α f(α)·φ(α)``, so ``ρ(δ_α) = φ(α)``."""

    phi: GroupoidFunction

    def __call__(self, f: GroupoidFunction):
        if f.groupoid != self.phi.groupoid:
            raise ValueError("function lives on another groupoid")
        return (f.values * self.phi.values).sum()


def state_functional(phi: GroupoidFunction) -> StateFunctional:
    return StateFunctional(phi)


# ---------------------------------------------------------------- substitutions

def invariance_under_substitution(f: GroupoidFunction, cells, atol: float = 0.0) -> Report:
    """``f(s(ξ)) = f(t(ξ))`` for every cell.

    ``cells`` is a TwoGroupoid or any iterable of (source, target) arrow pairs
    (labels or indices).
    """
    g = f.groupoid
    if hasattr(cells, "src") and hasattr(cells, "tgt"):
        if cells.base != g:
            raise ValueError("symmetroid lives over another groupoid")
        pairs = list(zip(cells.src.tolist(), cells.tgt.tolist()))
        names = list(cells.labels)
    else:
        pairs, names = [], []
        for c in cells:
            s, t = c[-2], c[-1]
            pairs.append((g.arrow(s) if isinstance(s, str) else int(s), g.arrow(t) if isinstance(t, str) else int(t)))
            names.append(str(c[0]) if len(c) > 2 else f"{g.arrow_labels[pairs[-1][0]]}=>{g.arrow_labels[pairs[-1][1]]}")
    v = f.values
    bad = [i for i, (s, t) in enumerate(pairs) if abs(v[s] - v[t]) > atol]
    rep = Report("invariance under substitutions")
    rep.add("f(source) = f(target) for every cell", not bad, names[bad[0]] if bad else None,
            f"{len(bad)} violating cells: {[names[i] for i in bad]}" if bad else f"{len(pairs)} cells")
    return rep


def violating_cells(f: GroupoidFunction, cells) -> list:
    rep = invariance_under_substitution(f, cells)
    if rep.ok:
        return []
    g = f.groupoid
    if hasattr(cells, "src"):
        return [cells.labels[i] for i in range(cells.n_cells) if f.values[cells.src[i]] != f.values[cells.tgt[i]]]
    out = []
    for c in cells:
        s, t = c[-2], c[-1]
        if f(s) != f(t):
            out.append(c)
    return out
