"""Mutation of decorated representations at a vertex.

The arrows through the chosen vertex k assemble into a triangle of maps

    (sum of spaces at arrow tails) --alpha--> M_k --beta--> (sum at heads)

closed up by gamma, the action of the second derivatives of the rewritten
potential, running from the beta side back to the alpha side.  The mutated
space at k is built from four pieces: a complement of the image of beta
inside the kernel of gamma, the image of gamma, a complement of that image
inside the kernel of alpha, and the old decoration.  The first and third
pieces require choices (a projection and a section); different choices give
isomorphic results, which the tests check by perturbing them.
"""

from __future__ import annotations

from typing import NamedTuple

from . import linalg
from .core import cyclic_derivative
from .jacobian import QP
from .linalg import Matrix
from .mutation import (MutationResult, PremutationData, ReductionResult,
                       mutate, premutation_data, star_name)
from .reps import DecoratedRep, evaluate_block, nilpotency_degree, validate


class Triangle(NamedTuple):
    """The three maps around a vertex, with per-arrow block sizes."""

    data: PremutationData
    rep: DecoratedRep
    alpha: Matrix  # in-space  -> M_k
    beta: Matrix   # M_k       -> out-space
    gamma: Matrix  # out-space -> in-space
    in_dims: tuple[int, ...]
    out_dims: tuple[int, ...]


def _row_block(m: Matrix, r0: int, r1: int) -> Matrix:
    return linalg.from_rows(m.field, [m.entries[i] for i in range(r0, r1)],
                            cols=m.cols)


def _col_block(m: Matrix, c0: int, c1: int) -> Matrix:
    return linalg.from_rows(m.field, [row[c0:c1] for row in m.entries],
                            cols=c1 - c0)


def triangle(rep: DecoratedRep, k: int) -> Triangle:
    """Assemble the maps around vertex k.

    Raises when the derivative relations fail there, since the whole
    construction is meaningless for a non-module."""
    data = premutation_data(rep.qp, k)
    q, fld = rep.quiver, rep.field
    in_dims = tuple(rep.dim(q.arrow(nm).tail) for nm in data.in_names)
    out_dims = tuple(rep.dim(q.arrow(nm).head) for nm in data.out_names)
    dk = rep.dim(k)
    alpha = linalg.hstack(fld, [rep.matrix(nm) for nm in data.in_names], rows=dk)
    beta = linalg.vstack(fld, [rep.matrix(nm) for nm in data.out_names], cols=dk)

    # composite arrows act through the original pair of arrows; stars never
    # occur in the rewritten potential, so their action is irrelevant
    aux_dims = dict(rep.dims)
    aux_mats: dict[str, Matrix] = {}
    comp_of = {v: key for key, v in data.composite.items()}
    stars = ({star_name(nm) for nm in data.in_names}
             | {star_name(nm) for nm in data.out_names})
    q2 = data.qp.quiver
    for a in q2.arrows:
        if a.name in comp_of:
            in_nm, out_nm = comp_of[a.name]
            aux_mats[a.name] = rep.matrix(out_nm) * rep.matrix(in_nm)
        elif a.name not in stars:
            aux_mats[a.name] = rep.matrix(a.name)
    aux = DecoratedRep.make(data.qp, aux_dims, aux_mats, dict(rep.dec))

    blocks = []
    for p, in_nm in enumerate(data.in_names):
        row = []
        for qq, out_nm in enumerate(data.out_names):
            deriv = cyclic_derivative(data.composite[(in_nm, out_nm)], data.bracket)
            row.append(evaluate_block(aux, deriv,
                                      q.arrow(in_nm).tail, q.arrow(out_nm).head))
        blocks.append(row)
    din, dout = sum(in_dims), sum(out_dims)
    if blocks and blocks[0]:
        gamma = linalg.block(fld, blocks)
    else:
        gamma = linalg.zeros(fld, din, dout)

    if not (gamma * beta).is_zero() or not (alpha * gamma).is_zero():
        raise ValueError(
            f"derivative relations fail around vertex {k}; "
            "the representation is not a module of this potential")
    return Triangle(data, rep, alpha, beta, gamma, in_dims, out_dims)


class SplittingData(NamedTuple):
    """The two choices the construction depends on.

    `projection` is an idempotent endomorphism of the out-space whose image
    is the kernel of gamma; `section` is a matrix of columns spanning a
    complement of the image of gamma inside the kernel of alpha.
    """

    projection: Matrix
    section: Matrix


def default_splitting(tri: Triangle) -> SplittingData:
    fld = tri.rep.field
    dout = tri.gamma.cols
    ker_g = linalg.nullspace(tri.gamma)
    extra = linalg.extend_basis(ker_g, linalg.identity(fld, dout))
    full = linalg.hstack(fld, [ker_g, extra], rows=dout)
    kept = linalg.hstack(fld, [ker_g, linalg.zeros(fld, dout, extra.cols)],
                         rows=dout)
    inv = linalg.inverse(full)
    if inv is None:
        raise RuntimeError("kernel basis extension is singular")
    proj = kept * inv
    im_g = linalg.column_space(tri.gamma)
    section = linalg.extend_basis(im_g, linalg.nullspace(tri.alpha))
    return SplittingData(proj, section)


def check_splitting(tri: Triangle, sd: SplittingData) -> None:
    din, dout = tri.gamma.rows, tri.gamma.cols
    p, s = sd.projection, sd.section
    if (p.rows, p.cols) != (dout, dout):
        raise ValueError("projection has the wrong shape")
    if p * p != p:
        raise ValueError("projection is not idempotent")
    ker_dim = dout - linalg.rank(tri.gamma)
    if not (tri.gamma * p).is_zero() or linalg.rank(p) != ker_dim:
        raise ValueError("projection image is not the kernel of gamma")
    im_g = linalg.column_space(tri.gamma)
    q3 = linalg.nullspace(tri.alpha).cols - im_g.cols
    if (s.rows, s.cols) != (din, q3):
        raise ValueError(f"section must be {din}x{q3}, got {s.rows}x{s.cols}")
    if not (tri.alpha * s).is_zero():
        raise ValueError("section columns must lie in the kernel of alpha")
    joined = linalg.hstack(tri.rep.field, [im_g, s], rows=din)
    if linalg.rank(joined) != im_g.cols + q3:
        raise ValueError("section does not complement the image of gamma")


def _premutate(tri: Triangle, sd: SplittingData) -> DecoratedRep:
    rep, data = tri.rep, tri.data
    fld, k = rep.field, data.vertex
    din, dout = tri.gamma.rows, tri.gamma.cols

    ker_g = linalg.nullspace(tri.gamma)
    im_b = linalg.column_space(tri.beta)
    q1_cols = linalg.extend_basis(im_b, ker_g)
    within = linalg.hstack(fld, [im_b, q1_cols], rows=dout)
    coords = linalg.solve(within, sd.projection)
    q2_cols = linalg.column_space(tri.gamma)
    coords_g = linalg.solve(q2_cols, tri.gamma)
    if coords is None or coords_g is None:
        raise RuntimeError("splitting data is inconsistent with the triangle")
    a1 = -_row_block(coords, im_b.cols, coords.rows)
    a2 = -coords_g

    q1, q2, q3 = q1_cols.cols, q2_cols.cols, sd.section.cols
    vk = rep.dec_dim(k)
    dk = q1 + q2 + q3 + vk
    abar = linalg.vstack(fld, [a1, a2, linalg.zeros(fld, q3, dout),
                               linalg.zeros(fld, vk, dout)], cols=dout)
    bbar = linalg.hstack(fld, [linalg.zeros(fld, din, q1), q2_cols,
                               sd.section, linalg.zeros(fld, din, vk)],
                         rows=din)
    if bbar * abar != -tri.gamma:
        raise RuntimeError("splitting data produced an inconsistent triangle")

    ker_b = linalg.nullspace(tri.beta)
    im_a = linalg.column_space(tri.alpha)
    meet = ker_b.cols + im_a.cols - linalg.rank(
        linalg.hstack(fld, [ker_b, im_a], rows=rep.dim(k)))
    dims = dict(rep.dims)
    dims[k] = dk
    dec = dict(rep.dec)
    dec[k] = ker_b.cols - meet

    in_off = [0]
    for d in tri.in_dims:
        in_off.append(in_off[-1] + d)
    out_off = [0]
    for d in tri.out_dims:
        out_off.append(out_off[-1] + d)
    star_of_in = {star_name(nm): p for p, nm in enumerate(data.in_names)}
    star_of_out = {star_name(nm): qq for qq, nm in enumerate(data.out_names)}
    comp_of = {v: key for key, v in data.composite.items()}

    mats: dict[str, Matrix] = {}
    for arr in data.qp.quiver.arrows:
        nm = arr.name
        if nm in comp_of:
            in_nm, out_nm = comp_of[nm]
            mats[nm] = rep.matrix(out_nm) * rep.matrix(in_nm)
        elif nm in star_of_in:
            p = star_of_in[nm]
            mats[nm] = _row_block(bbar, in_off[p], in_off[p + 1])
        elif nm in star_of_out:
            qq = star_of_out[nm]
            mats[nm] = _col_block(abar, out_off[qq], out_off[qq + 1])
        else:
            mats[nm] = rep.matrix(nm)
    return DecoratedRep(data.qp, dims, dec, mats)


def premutate_rep(rep: DecoratedRep, k: int,
                  splitting: SplittingData | None = None) -> DecoratedRep:
    """Mutated module over the premutated quiver with potential."""
    tri = triangle(rep, k)
    sd = splitting if splitting is not None else default_splitting(tri)
    check_splitting(tri, sd)
    return _premutate(tri, sd)


def reduce_rep(rep: DecoratedRep, reduction: ReductionResult) -> DecoratedRep:
    """Carry a module across a trivial-pair reduction.

    Every arrow of the reduced quiver acts through its image under the
    stored equivalence.  The stored truncation must dominate the module's
    nilpotency degree, otherwise the images are not exact where the module
    can still see them.
    """
    eq = reduction.equivalence
    if eq.quiver_from != rep.quiver or eq.trunc != rep.qp.trunc:
        raise ValueError("reduction data does not match the representation")
    n = nilpotency_degree(rep)
    if n is None:
        raise ValueError("module is not nilpotent")
    if rep.qp.trunc < n:
        raise ValueError(
            f"truncation degree {rep.qp.trunc} is too low to reduce this "
            f"module; needs >= {n}")
    mats = {}
    for a in reduction.qp.quiver.arrows:
        mats[a.name] = evaluate_block(rep, eq.images[a.name], a.head, a.tail)
    for f, g in reduction.trivial_pairs:
        for nm in (f, g):
            arr = rep.quiver.arrow(nm)
            if not evaluate_block(rep, eq.images[nm], arr.head, arr.tail).is_zero():
                raise RuntimeError(
                    f"trivial arrow {nm} acts nonzero after reduction")
    dims = {v: rep.dim(v) for v in reduction.qp.quiver.vertices}
    dec = {v: rep.dec_dim(v) for v in reduction.qp.quiver.vertices}
    return DecoratedRep(reduction.qp, dims, dec, mats)


class RepMutationResult(NamedTuple):
    vertex: int
    mutation: MutationResult
    premutated: DecoratedRep
    rep: DecoratedRep
    splitting: SplittingData

    @property
    def qp(self) -> QP:
        return self.mutation.qp

    @property
    def degenerate(self) -> bool:
        return self.mutation.degenerate


def mutate_rep(rep: DecoratedRep, k: int,
               splitting: SplittingData | None = None) -> RepMutationResult:
    """Mutate a decorated representation at vertex k.

    Runs the quiver-with-potential mutation alongside, raising the
    truncation degree first when the premutated module needs more room, and
    carries the module across the reduction.
    """
    problems = validate(rep)
    if problems:
        raise ValueError(f"input is not a valid module: {problems[0]}")
    tri = triangle(rep, k)
    sd = splitting if splitting is not None else default_splitting(tri)
    check_splitting(tri, sd)
    mbar = _premutate(tri, sd)
    n = nilpotency_degree(mbar)
    if n is None:
        raise RuntimeError("premutated module is not nilpotent")
    t = max(rep.qp.trunc, n, 3)
    qp_t = rep.qp if t == rep.qp.trunc else rep.qp.retruncated(t)
    if t != rep.qp.trunc:
        rep_t = DecoratedRep(qp_t, dict(rep.dims), dict(rep.dec),
                             dict(rep.matrices))
        tri = triangle(rep_t, k)
        check_splitting(tri, sd)
        mbar = _premutate(tri, sd)
    mut = mutate(qp_t, k)
    reduced = reduce_rep(mbar, mut.reduction)
    return RepMutationResult(k, mut, mbar, reduced, sd)
