"""Truncated Jacobian ideals, dimension reports, rigidity, restriction.

The ideal is computed as a breadth-first span closure: start from the
cyclic derivatives, keep an echelon basis keyed on each element's
(degree, lex)-minimal path, and enqueue arrow multiples of every newly
inserted element.  All elements stay bigraded-homogeneous (every term of
an element shares one (head, tail) pair), which is what makes the
vertex-filtered dimension counts below correct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from collections import deque
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .core import (Path, Quiver, Series, canonicalize_potential,
                   cyclic_derivative, is_canonical_potential)
from .fields import QQ, FieldSpec

__all__ = [
    "QP", "TruncatedIdealBasis", "DimReport", "RigidityResult",
    "jacobian_generators", "ideal_truncated", "jacobian_dim", "kk_dim",
    "deformation_dim", "is_rigid", "restrict",
]


@dataclass(frozen=True)
class QP:
    """Loop-free quiver with a canonical potential at truncation degree N."""

    quiver: Quiver
    potential: Series
    trunc: int
    field: FieldSpec = QQ

    def __post_init__(self):
        if self.quiver.has_loops():
            raise ValueError("QP quiver must have no loops")
        if self.potential.quiver != self.quiver:
            raise ValueError("potential lives over a different quiver")
        if self.potential.trunc != self.trunc:
            raise ValueError("potential truncation differs from QP truncation")
        if not is_canonical_potential(self.potential):
            raise ValueError("potential is not in canonical rotation form")
        md = self.potential.min_degree()
        if md is not None and md < 2:
            raise ValueError("potential has terms of degree < 2")
        for c in self.potential.terms.values():
            if not self.field.element_of(c):
                raise ValueError("potential coefficient outside the QP's field")

    @staticmethod
    def of(quiver: Quiver, potential: Series, field: FieldSpec = QQ) -> "QP":
        return QP(quiver, canonicalize_potential(potential), potential.trunc, field)

    def retruncated(self, trunc: int) -> "QP":
        """Same QP at another truncation degree.

        Raising the degree treats the stored potential as the whole series;
        that is only sound when nothing was dropped when it was built
        (true for all catalog potentials, which are polynomials).
        """
        return QP(self.quiver, self.potential.retruncated(trunc), trunc, self.field)


class RigidityResult(NamedTuple):
    rigid: bool
    stabilized: bool
    witness_degree: int | None = None
    characteristic: int = 0


@dataclass(frozen=True)
class DimReport:
    """Per-degree dimensions with a stabilization verdict.

    dims[i] is the dimension in degree start_degree + i.  `stabilized` is
    true iff the top ceil(N/3) degrees are all zero; `total` is only
    reported (non-None) in that case, because a truncated computation
    cannot certify anything beyond N.
    """

    dims: tuple[int, ...]
    start_degree: int
    trunc: int
    stabilized: bool
    total: int | None

    @staticmethod
    def from_dims(dims: Iterable[int], start_degree: int, trunc: int) -> "DimReport":
        dims = tuple(dims)
        head = math.ceil(trunc / 3)
        top = dims[len(dims) - head:] if head else ()
        stabilized = all(d == 0 for d in top)
        total = sum(dims) if stabilized else None
        return DimReport(dims, start_degree, trunc, stabilized, total)

    def dim_in_degree(self, d: int) -> int:
        i = d - self.start_degree
        if i < 0 or i >= len(self.dims):
            raise ValueError(f"degree {d} outside report range")
        return self.dims[i]

    def table(self) -> str:
        lines = ["degree  dim"]
        for i, d in enumerate(self.dims):
            lines.append(f"{self.start_degree + i:>6}  {d}")
        if self.stabilized:
            lines.append(f"total   {self.total} (stabilized)")
        else:
            lines.append(f"total   unknown at N={self.trunc} (not stabilized)")
        return "\n".join(lines)


@lru_cache(maxsize=128)
def paths_by_degree(quiver: Quiver, trunc: int) -> tuple[tuple[Path, ...], ...]:
    """out[d] = all paths of degree d, built by left extension."""
    out: list[tuple[Path, ...]] = [tuple(Path((), v) for v in quiver.vertices)]
    layer: list[Path] = list(out[0])
    for _ in range(trunc):
        nxt: list[Path] = []
        for p in layer:
            h = p.head(quiver)
            for i in quiver.arrows_by_tail[h]:
                nxt.append(Path((i,) + p.arrows))
        out.append(tuple(nxt))
        layer = nxt
    return tuple(out)


def jacobian_generators(qp: QP) -> dict[str, Series]:
    return {a.name: cyclic_derivative(a.name, qp.potential)
            for a in qp.quiver.arrows}


# internal vector form: dict Path -> coefficient, never empty-normalized lazily

def _leading(vec: dict) -> Path:
    return min(vec, key=Path.sort_key)


def _reduce(vec: dict, basis: dict[Path, dict]) -> dict:
    """Head-reduction against an echelon basis; mutates and returns vec."""
    while vec:
        lp = _leading(vec)
        b = basis.get(lp)
        if b is None:
            return vec
        c = vec[lp]
        for p, x in b.items():
            s = vec.get(p)
            s = -c * x if s is None else s - c * x
            if s:
                vec[p] = s
            else:
                vec.pop(p, None)
    return vec


@dataclass(frozen=True)
class TruncatedIdealBasis:
    """Echelon basis of span{u * dS * v} in degrees <= N.

    Elements are monic on their leading path; leading paths are unique.
    """

    qp: QP
    elements: tuple[Series, ...]
    leading: tuple[Path, ...]

    @property
    def leading_set(self) -> frozenset[Path]:
        return frozenset(self.leading)

    def reduce(self, x: Series) -> Series:
        if x.quiver != self.qp.quiver or x.trunc != self.qp.trunc:
            raise ValueError("series incompatible with this ideal basis")
        basis = {lp: dict(e.terms) for lp, e in zip(self.leading, self.elements)}
        vec = _reduce(dict(x.terms), basis)
        return Series.make(self.qp.quiver, self.qp.trunc, vec)

    def contains(self, x: Series) -> bool:
        return self.reduce(x).is_zero()

    def leading_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.leading:
            out[p.degree] = out.get(p.degree, 0) + 1
        return out


def ideal_truncated(qp: QP) -> TruncatedIdealBasis:
    q, N = qp.quiver, qp.trunc
    one = qp.field.one()
    basis: dict[Path, dict] = {}
    queue: deque[dict] = deque()
    for a in q.arrows:
        g = cyclic_derivative(a.name, qp.potential)
        if g:
            queue.append(dict(g.terms))
    while queue:
        vec = _reduce(queue.popleft(), basis)
        if not vec:
            continue
        lp = _leading(vec)
        inv = one / vec[lp]
        vec = {p: inv * c for p, c in vec.items()}
        basis[lp] = vec
        # all terms share endpoints with lp, so one composability test suffices
        h = lp.head(q)
        t = lp.tail(q)
        if min(p.degree for p in vec) + 1 <= N:
            for i in q.arrows_by_tail[h]:
                nv = {Path((i,) + p.arrows): c for p, c in vec.items()
                      if p.degree + 1 <= N}
                if nv:
                    queue.append(nv)
            for i in q.arrows_by_head[t]:
                nv = {Path(p.arrows + (i,)): c for p, c in vec.items()
                      if p.degree + 1 <= N}
                if nv:
                    queue.append(nv)
    order = sorted(basis, key=Path.sort_key)
    return TruncatedIdealBasis(
        qp,
        tuple(Series.make(q, N, basis[lp]) for lp in order),
        tuple(order))


def jacobian_dim(qp: QP, ideal: TruncatedIdealBasis | None = None) -> DimReport:
    """Per-degree dimensions of the path algebra modulo the ideal, up to N."""
    ideal = ideal if ideal is not None else ideal_truncated(qp)
    pbd = paths_by_degree(qp.quiver, qp.trunc)
    lead = ideal.leading_counts()
    dims = [len(pbd[d]) - lead.get(d, 0) for d in range(qp.trunc + 1)]
    return DimReport.from_dims(dims, 0, qp.trunc)


def kk_dim(qp: QP, k: int, ideal: TruncatedIdealBasis | None = None) -> DimReport:
    """Dimensions of the quotient filtered to paths avoiding vertex k at both ends."""
    if k not in set(qp.quiver.vertices):
        raise ValueError(f"unknown vertex {k}")
    ideal = ideal if ideal is not None else ideal_truncated(qp)
    q = qp.quiver
    pbd = paths_by_degree(q, qp.trunc)

    def keep(p: Path) -> bool:
        return p.head(q) != k and p.tail(q) != k

    lead: dict[int, int] = {}
    for p in ideal.leading:
        if keep(p):
            lead[p.degree] = lead.get(p.degree, 0) + 1
    dims = [sum(1 for p in pbd[d] if keep(p)) - lead.get(d, 0)
            for d in range(qp.trunc + 1)]
    return DimReport.from_dims(dims, 0, qp.trunc)


def _cyclic_classes(quiver: Quiver, trunc: int) -> dict[int, set[Path]]:
    """Canonical rotation representatives of cyclic paths, per degree 1..N."""
    pbd = paths_by_degree(quiver, trunc)
    return {d: {p.canonical_rotation() for p in pbd[d] if p.is_cycle(quiver)}
            for d in range(1, trunc + 1)}


def _cyclic_ideal_basis(qp: QP, ideal: TruncatedIdealBasis) -> dict[Path, dict]:
    """Triangular basis of the ideal's cyclic projections in rotation-class
    coordinates (canonical representatives)."""
    one = qp.field.one()
    basis: dict[Path, dict] = {}
    for e in ideal.elements:
        proj = e.cyclic_part()
        if not proj:
            continue
        vec = dict(canonicalize_potential(proj).terms)
        vec = _reduce(vec, basis)
        if not vec:
            continue
        lp = _leading(vec)
        inv = one / vec[lp]
        basis[lp] = {p: inv * c for p, c in vec.items()}
    return basis


def deformation_dim(qp: QP, ideal: TruncatedIdealBasis | None = None) -> DimReport:
    """Dimensions of cyclic-part / (cyclic projections of the ideal + rotations).

    Working in rotation-class coordinates (canonical representatives as the
    basis) quotients out the rotation-difference span automatically.
    """
    ideal = ideal if ideal is not None else ideal_truncated(qp)
    q, N = qp.quiver, qp.trunc
    classes = _cyclic_classes(q, N)
    basis = _cyclic_ideal_basis(qp, ideal)
    lead: dict[int, int] = {}
    for p in basis:
        lead[p.degree] = lead.get(p.degree, 0) + 1
    dims = [len(classes[d]) - lead.get(d, 0) for d in range(1, N + 1)]
    return DimReport.from_dims(dims, 1, N)


def deformation_reduce(qp: QP, s: Series,
                       ideal: TruncatedIdealBasis | None = None) -> Series:
    """Canonical remainder of a cyclic series in the deformation quotient.

    The result is zero exactly when the class of `s` vanishes, so a nonzero
    remainder is a certificate that a particular cycle obstructs rigidity.
    """
    ideal = ideal if ideal is not None else ideal_truncated(qp)
    basis = _cyclic_ideal_basis(qp, ideal)
    vec = _reduce(dict(canonicalize_potential(s).terms), basis)
    out = Series.zero(qp.quiver, qp.trunc)
    for p, c in vec.items():
        out = out + Series.of_path(qp.quiver, qp.trunc, p, c)
    return out


def is_rigid(qp: QP, ideal: TruncatedIdealBasis | None = None) -> RigidityResult:
    dd = deformation_dim(qp, ideal)
    witness = None
    for i, d in enumerate(dd.dims):
        if d > 0:
            witness = dd.start_degree + i
            break
    rigid = dd.stabilized and dd.total == 0
    return RigidityResult(rigid, dd.stabilized, witness,
                          qp.field.characteristic)


def restrict(qp: QP, vertex_set: Iterable[int]) -> QP:
    """Kill every arrow with an endpoint outside vertex_set; vertices all kept.

    The potential terms that use a killed arrow are dropped (the killed
    arrows are substituted by zero); remaining terms keep their canonical
    rotations because the surviving arrows keep their relative order.
    """
    keep_vs = set(vertex_set)
    unknown = keep_vs - set(qp.quiver.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    q = qp.quiver
    kept = [(i, a) for i, a in enumerate(q.arrows)
            if a.tail in keep_vs and a.head in keep_vs]
    new_q = Quiver(q.vertices, tuple(a for _, a in kept))
    old_to_new = {i: j for j, (i, _) in enumerate(kept)}
    terms = {}
    for p, c in qp.potential.terms.items():
        if all(i in old_to_new for i in p.arrows):
            terms[Path(tuple(old_to_new[i] for i in p.arrows))] = c
    pot = Series.make(new_q, qp.trunc, terms)
    return QP(new_q, pot, qp.trunc, qp.field)
