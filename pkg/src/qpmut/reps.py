"""Decorated representations of a quiver with potential.

A representation assigns a finite dimensional space to every vertex and a
matrix to every arrow; the decoration is a second dimension vector that
carries no arrow action.  Matrices compose the way paths do: a path
``a1.a2.a3`` acts as ``matrix(a1) * matrix(a2) * matrix(a3)``, rightmost
factor applied first.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, NamedTuple, Sequence

from . import linalg
from .core import Path, Series, cyclic_derivative
from .jacobian import QP
from .linalg import Matrix


class DimVector(NamedTuple):
    """Dimensions and decoration dimensions, in quiver vertex order."""

    dims: tuple[int, ...]
    dec: tuple[int, ...]


def _coerce(fld, x):
    if fld.element_of(x):
        return x
    if isinstance(x, int):
        return fld.from_int(x)
    if isinstance(x, Fraction):
        return fld.from_fraction(x)
    raise ValueError(f"entry {x!r} is not an element of {fld.to_string()}")


@dataclass(frozen=True, eq=False)
class DecoratedRep:
    """Finite dimensional module over a truncated quiver algebra plus a
    decoration vector.

    Use :meth:`make` to build one; it fills in zero matrices and coerces
    plain integers into the coefficient field.  The constructor itself
    insists on fully specified, already coerced data.
    """

    qp: QP
    dims: Mapping[int, int]
    dec: Mapping[int, int]
    matrices: Mapping[str, Matrix]

    def __post_init__(self):
        q = self.qp.quiver
        dims = dict(self.dims)
        dec = dict(self.dec)
        mats = dict(self.matrices)
        for label, table in (("dims", dims), ("dec", dec)):
            if set(table) != set(q.vertices):
                raise ValueError(f"{label} must cover exactly the vertices")
            for v, d in table.items():
                if not isinstance(d, int) or d < 0:
                    raise ValueError(f"{label}[{v}] must be a nonnegative integer")
        if set(mats) != {a.name for a in q.arrows}:
            raise ValueError("matrices must cover exactly the arrows")
        for a in q.arrows:
            m = mats[a.name]
            if not isinstance(m, Matrix):
                raise ValueError(f"matrix for {a.name!r} is not a Matrix")
            if m.field != self.qp.field:
                raise ValueError(f"matrix for {a.name!r} is over the wrong field")
            if (m.rows, m.cols) != (dims[a.head], dims[a.tail]):
                raise ValueError(
                    f"matrix for {a.name!r} must be "
                    f"{dims[a.head]}x{dims[a.tail]}, got {m.rows}x{m.cols}")
        object.__setattr__(self, "dims", MappingProxyType(dims))
        object.__setattr__(self, "dec", MappingProxyType(dec))
        object.__setattr__(self, "matrices", MappingProxyType(mats))

    @staticmethod
    def make(qp: QP, dims: Mapping[int, int],
             matrices: Mapping[str, "Matrix | Sequence[Sequence]"] | None = None,
             dec: Mapping[int, int] | None = None) -> "DecoratedRep":
        q = qp.quiver
        dd = {v: int(dims.get(v, 0)) for v in q.vertices}
        cc = {v: int((dec or {}).get(v, 0)) for v in q.vertices}
        given = dict(matrices or {})
        mats: dict[str, Matrix] = {}
        for a in q.arrows:
            rows, cols = dd[a.head], dd[a.tail]
            m = given.pop(a.name, None)
            if m is None:
                mats[a.name] = linalg.zeros(qp.field, rows, cols)
            elif isinstance(m, Matrix):
                mats[a.name] = m
            else:
                coerced = [[_coerce(qp.field, x) for x in row] for row in m]
                if len(coerced) != rows:
                    raise ValueError(f"matrix for {a.name!r} must have {rows} rows")
                mats[a.name] = linalg.from_rows(qp.field, coerced, cols=cols)
        if given:
            raise ValueError(f"unknown arrows in matrices: {sorted(given)}")
        return DecoratedRep(qp, dd, cc, mats)

    @property
    def quiver(self):
        return self.qp.quiver

    @property
    def field(self):
        return self.qp.field

    def dim(self, v: int) -> int:
        return self.dims[v]

    def dec_dim(self, v: int) -> int:
        return self.dec[v]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def offsets(self) -> dict[int, int]:
        """Start offset of each vertex block inside the total space."""
        out, at = {}, 0
        for v in self.quiver.vertices:
            out[v] = at
            at += self.dims[v]
        return out

    def matrix(self, name: str) -> Matrix:
        try:
            return self.matrices[name]
        except KeyError:
            raise ValueError(f"unknown arrow {name!r}") from None

    def dim_vector(self) -> DimVector:
        vs = self.quiver.vertices
        return DimVector(tuple(self.dims[v] for v in vs),
                         tuple(self.dec[v] for v in vs))

    def __eq__(self, other):
        if not isinstance(other, DecoratedRep):
            return NotImplemented
        return (self.qp == other.qp and dict(self.dims) == dict(other.dims)
                and dict(self.dec) == dict(other.dec)
                and dict(self.matrices) == dict(other.matrices))

    __hash__ = None

    def __repr__(self):
        dv = self.dim_vector()
        return f"DecoratedRep(dims={dv.dims}, dec={dv.dec})"


def zero_rep(qp: QP) -> DecoratedRep:
    return DecoratedRep.make(qp, {})


def simple(qp: QP, v: int) -> DecoratedRep:
    """One dimensional module at vertex v, zero decoration."""
    if v not in qp.quiver.vertices:
        raise ValueError(f"unknown vertex {v}")
    return DecoratedRep.make(qp, {v: 1})


def negative_simple(qp: QP, v: int) -> DecoratedRep:
    """Zero module with a one dimensional decoration at vertex v."""
    if v not in qp.quiver.vertices:
        raise ValueError(f"unknown vertex {v}")
    return DecoratedRep.make(qp, {}, dec={v: 1})


def path_action(rep: DecoratedRep, p: Path) -> Matrix:
    q = rep.quiver
    if p.degree == 0:
        return linalg.identity(rep.field, rep.dim(p.vertex))
    m = rep.matrix(q.arrows[p.arrows[0]].name)
    for i in p.arrows[1:]:
        m = m * rep.matrix(q.arrows[i].name)
    return m


def evaluate_block(rep: DecoratedRep, x: Series, head: int, tail: int) -> Matrix:
    """Action of the terms of x running from vertex `tail` to vertex `head`."""
    if x.quiver != rep.quiver:
        raise ValueError("series is over a different quiver")
    out = linalg.zeros(rep.field, rep.dim(head), rep.dim(tail))
    for p, c in x.terms.items():
        if p.head(rep.quiver) == head and p.tail(rep.quiver) == tail:
            out = out + path_action(rep, p).scale(c)
    return out


def evaluate(rep: DecoratedRep, x: Series) -> Matrix:
    """Action of a series on the direct sum of all vertex spaces."""
    if x.quiver != rep.quiver:
        raise ValueError("series is over a different quiver")
    n = rep.total_dim
    offs = rep.offsets()
    grid = [[rep.field.zero()] * n for _ in range(n)]
    for p, c in x.terms.items():
        m = path_action(rep, p).scale(c)
        r0 = offs[p.head(rep.quiver)]
        c0 = offs[p.tail(rep.quiver)]
        for i in range(m.rows):
            for j in range(m.cols):
                grid[r0 + i][c0 + j] = grid[r0 + i][c0 + j] + m[i, j]
    return linalg.from_rows(rep.field, grid, cols=n)


def nilpotency_degree(rep: DecoratedRep) -> int | None:
    """Smallest n such that every path of degree n acts as zero.

    Returns None when the action is not nilpotent (the image chain stalls
    before reaching zero)."""
    q, fld = rep.quiver, rep.field
    spans = {v: linalg.identity(fld, rep.dim(v)) for v in q.vertices}
    n = 0
    while True:
        total = sum(m.cols for m in spans.values())
        if total == 0:
            return n
        nxt = {}
        for v in q.vertices:
            imgs = [rep.matrix(q.arrows[i].name) * spans[q.arrows[i].tail]
                    for i in q.arrows_by_head[v]]
            nxt[v] = linalg.column_space(
                linalg.hstack(fld, imgs, rows=rep.dim(v)))
        if sum(m.cols for m in nxt.values()) == total:
            return None
        spans = nxt
        n += 1


def validate(rep: DecoratedRep) -> list[str]:
    """Check the module axioms; returns a list of violations (empty = valid).

    A valid module is nilpotent, kills every path beyond the truncation
    degree, and satisfies the cyclic derivative relations of the potential.
    """
    problems = []
    nd = nilpotency_degree(rep)
    if nd is None:
        problems.append("module is not nilpotent: some cycle acts invertibly")
    elif nd > rep.qp.trunc + 1:
        problems.append(
            f"paths of degree {rep.qp.trunc + 1} act nonzero; "
            f"the module needs truncation degree >= {nd - 1}")
    for a in rep.quiver.arrows:
        rel = cyclic_derivative(a.name, rep.qp.potential)
        if not evaluate_block(rep, rel, a.tail, a.head).is_zero():
            problems.append(f"derivative relation at arrow {a.name} acts nonzero")
    return problems


def _same_qp(r1: DecoratedRep, r2: DecoratedRep):
    if r1.qp != r2.qp:
        raise ValueError("representations live over different quivers with potential")


def _block_diag(fld, a: Matrix, b: Matrix) -> Matrix:
    top = linalg.hstack(fld, [a, linalg.zeros(fld, a.rows, b.cols)], rows=a.rows)
    bot = linalg.hstack(fld, [linalg.zeros(fld, b.rows, a.cols), b], rows=b.rows)
    return linalg.vstack(fld, [top, bot], cols=a.cols + b.cols)


def direct_sum(r1: DecoratedRep, r2: DecoratedRep) -> DecoratedRep:
    """Coordinate convention: the r1 block comes first at every vertex."""
    _same_qp(r1, r2)
    q = r1.quiver
    dims = {v: r1.dim(v) + r2.dim(v) for v in q.vertices}
    dec = {v: r1.dec_dim(v) + r2.dec_dim(v) for v in q.vertices}
    mats = {a.name: _block_diag(r1.field, r1.matrix(a.name), r2.matrix(a.name))
            for a in q.arrows}
    return DecoratedRep(r1.qp, dims, dec, mats)


def hom_space(r1: DecoratedRep, r2: DecoratedRep) -> list[dict[int, Matrix]]:
    """Basis of the space of module maps r1 -> r2.

    A map is a family of matrices, one per vertex, commuting with every
    arrow.  Decorations play no role here.
    """
    _same_qp(r1, r2)
    q, fld = r1.quiver, r1.field
    offs, total = {}, 0
    for v in q.vertices:
        offs[v] = total
        total += r2.dim(v) * r1.dim(v)
    rows = []
    for a in q.arrows:
        am, bm = r1.matrix(a.name), r2.matrix(a.name)
        # phi_head * am == bm * phi_tail, one linear equation per entry
        for r in range(r2.dim(a.head)):
            for c in range(r1.dim(a.tail)):
                row = [fld.zero()] * total
                for s in range(r1.dim(a.head)):
                    k = offs[a.head] + r * r1.dim(a.head) + s
                    row[k] = row[k] + am[s, c]
                for s in range(r2.dim(a.tail)):
                    k = offs[a.tail] + s * r1.dim(a.tail) + c
                    row[k] = row[k] - bm[r, s]
                rows.append(row)
    ns = linalg.nullspace(linalg.from_rows(fld, rows, cols=total))
    basis = []
    for j in range(ns.cols):
        fam = {}
        for v in q.vertices:
            r1d, r2d = r1.dim(v), r2.dim(v)
            ent = [[ns[offs[v] + r * r1d + s, j] for s in range(r1d)]
                   for r in range(r2d)]
            fam[v] = linalg.from_rows(fld, ent, cols=r1d)
        basis.append(fam)
    return basis


def end_dim(rep: DecoratedRep) -> int:
    """Dimension of the endomorphism algebra.

    Equal to 1 exactly when the module is a brick; that certifies
    indecomposability."""
    return len(hom_space(rep, rep))


class IsoResult(NamedTuple):
    """`decided` is False when the search was inconclusive; `isomorphic`
    is only meaningful when `decided` is True."""

    isomorphic: bool
    decided: bool
    witness: dict[int, Matrix] | None = None


def is_isomorphic(r1: DecoratedRep, r2: DecoratedRep, *,
                  budget: int = 200_000, samples: int = 400,
                  rng: random.Random | None = None) -> IsoResult:
    """Decide whether two representations are isomorphic.

    Computes the space of module maps, then looks for a combination that is
    invertible at every vertex.  Over the rationals a full grid search of
    size (total dim + 1)^(hom dim) is exact either way; when that exceeds
    `budget` the fallback is random sampling, which can certify a yes but
    never a no, hence the `decided` flag.
    """
    _same_qp(r1, r2)
    fld, q = r1.field, r1.quiver
    if dict(r1.dims) != dict(r2.dims) or dict(r1.dec) != dict(r2.dec):
        return IsoResult(False, True)
    if r1.total_dim == 0:
        return IsoResult(True, True, {v: linalg.identity(fld, 0) for v in q.vertices})
    basis = hom_space(r1, r2)
    m = len(basis)
    if m == 0:
        return IsoResult(False, True)
    verts = [v for v in q.vertices if r1.dim(v)]

    def attempt(coeffs):
        fam = {}
        for v in q.vertices:
            acc = linalg.zeros(fld, r2.dim(v), r1.dim(v))
            for ci, b in zip(coeffs, basis):
                if ci:
                    acc = acc + b[v].scale(ci)
            fam[v] = acc
        for v in verts:
            if linalg.inverse(fam[v]) is None:
                return None
        return fam

    one, zero = fld.one(), fld.zero()
    for i in range(m):
        fam = attempt([one if j == i else zero for j in range(m)])
        if fam is not None:
            return IsoResult(True, True, fam)

    deg = r1.total_dim  # per-variable degree bound of the determinant product
    if fld.kind == "q":
        grid = [fld.from_int(i) for i in range(deg + 1)]
    else:
        grid = [fld.from_int(i) for i in range(fld.characteristic())]
    if len(grid) ** m <= budget:
        for coeffs in itertools.product(grid, repeat=m):
            fam = attempt(coeffs)
            if fam is not None:
                return IsoResult(True, True, fam)
        return IsoResult(False, True)

    rg = rng if rng is not None else random.Random(20260818)
    for _ in range(samples):
        if fld.kind == "q":
            coeffs = [fld.from_fraction(Fraction(rg.randint(-99, 99)))
                      for _ in range(m)]
        else:
            coeffs = [fld.from_int(rg.randint(0, fld.characteristic() - 1))
                      for _ in range(m)]
        fam = attempt(coeffs)
        if fam is not None:
            return IsoResult(True, True, fam)
    return IsoResult(False, False)


def transport_rep(rep: DecoratedRep, qp_to: QP,
                  vertex_map: Mapping[int, int] | None = None,
                  arrow_images: Mapping[str, tuple[str, object]] | None = None,
                  ) -> DecoratedRep:
    """Rebuild a representation over another quiver with potential.

    `vertex_map` is a bijection old vertex -> new vertex (identity when
    omitted).  `arrow_images` sends a target arrow name to a pair
    (source arrow name, scalar factor); unlisted target arrows take the
    matrix of the same-named source arrow with factor one.  Endpoints must
    correspond under the vertex map.
    """
    if qp_to.field != rep.qp.field:
        raise ValueError("target lives over a different field")
    q_from, q_to = rep.quiver, qp_to.quiver
    vm = dict(vertex_map) if vertex_map is not None else {v: v for v in q_from.vertices}
    if sorted(vm) != sorted(q_from.vertices) or sorted(vm.values()) != sorted(q_to.vertices):
        raise ValueError("vertex_map must be a bijection between the vertex sets")
    dims = {vm[v]: rep.dim(v) for v in q_from.vertices}
    dec = {vm[v]: rep.dec_dim(v) for v in q_from.vertices}
    imgs = dict(arrow_images or {})
    mats: dict[str, Matrix] = {}
    for b in q_to.arrows:
        src, factor = imgs.pop(b.name, (b.name, 1))
        a = q_from.arrow(src)
        if vm[a.tail] != b.tail or vm[a.head] != b.head:
            raise ValueError(
                f"arrow {src!r} does not land on the endpoints of {b.name!r}")
        mats[b.name] = rep.matrix(src).scale(_coerce(qp_to.field, factor))
    if imgs:
        raise ValueError(f"unknown target arrows: {sorted(imgs)}")
    return DecoratedRep.make(qp_to, dims, mats, dec)
