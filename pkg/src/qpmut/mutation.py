"""Quiver-with-potential mutation.

Premutation at a vertex k replaces every length-two passage through k by a
composite arrow, adds one reversed arrow per arrow at k, and appends the
composite/reversed three-cycles to the rewritten potential.  Splitting then
eliminates two-cycle terms by an explicit invertible change of variables,
drops the arrow pairs those terms consume, and keeps the inverse change so
representations can be transported across the reduction.  Mutation is
premutation followed by splitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .core import (Arrow, ArrowSubstitution, Path, Quiver, Series,
                   apply_substitution, canonicalize_potential,
                   compose_substitutions, identity_substitution,
                   invert_substitution, path_of_names)
from .fields import QQ, FieldSpec
from .jacobian import QP, paths_by_degree

__all__ = [
    "STAR", "star_name", "BMatrix", "b_matrix", "matrix_mutate",
    "PremutationData", "premutation_data", "premutate",
    "ReductionResult", "split",
    "MutationResult", "mutate", "SequenceResult", "mutate_sequence",
    "random_potential",
]

STAR = "⋆"


def star_name(name: str) -> str:
    """Reversed-arrow name; stripping before appending keeps it involutive."""
    return name[: -len(STAR)] if name.endswith(STAR) else name + STAR


# ---------------------------------------------------------------------------
# signed arrow-count matrices

@dataclass(frozen=True)
class BMatrix:
    """Skew matrix of signed arrow counts: entry(i, j) = #(i->j) - #(j->i)."""

    vertices: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        idx = {v: n for n, v in enumerate(self.vertices)}
        return self.entries[idx[i]][idx[j]]

    def mutate(self, k: int) -> "BMatrix":
        return matrix_mutate(self, k)

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{e:>3}" for e in row) for row in self.entries)


def b_matrix(qp: "QP | Quiver") -> BMatrix:
    q = qp.quiver if isinstance(qp, QP) else qp
    idx = {v: n for n, v in enumerate(q.vertices)}
    n = len(q.vertices)
    m = [[0] * n for _ in range(n)]
    for a in q.arrows:
        m[idx[a.tail]][idx[a.head]] += 1
        m[idx[a.head]][idx[a.tail]] -= 1
    return BMatrix(q.vertices, tuple(tuple(row) for row in m))


def matrix_mutate(bm: BMatrix, k: int) -> BMatrix:
    if k not in bm.vertices:
        raise ValueError(f"unknown vertex {k}")
    ki = bm.vertices.index(k)
    e = bm.entries
    n = len(bm.vertices)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == ki or j == ki:
                row.append(-e[i][j])
            else:
                row.append(e[i][j]
                           + max(e[i][ki], 0) * max(e[ki][j], 0)
                           - max(-e[i][ki], 0) * max(-e[ki][j], 0))
        out.append(tuple(row))
    return BMatrix(bm.vertices, tuple(out))


# ---------------------------------------------------------------------------
# premutation

class PremutationData(NamedTuple):
    """Premutated QP plus the bookkeeping the representation side needs."""

    qp: QP
    vertex: int
    in_names: tuple[str, ...]
    out_names: tuple[str, ...]
    composite: Mapping[tuple[str, str], str]  # (in, out) -> composite name
    bracket: Series  # rewritten original potential, without the new 3-cycles


def _rewrite_cycle(q: Quiver, q2: Quiver, comp: Mapping[tuple[str, str], str],
                   k: int, p: Path) -> Path:
    """Rotate the cycle off k and contract every passage through k."""
    w = p.arrows
    rot = min(w[r:] + w[:r] for r in range(len(w))
              if q.arrows[(w[r:] + w[:r])[0]].head != k)
    names: list[str] = []
    i = 0
    while i < len(rot):
        cur = q.arrows[rot[i]]
        if cur.tail == k:
            nxt = q.arrows[rot[i + 1]]  # head == k by composability
            names.append(comp[(nxt.name, cur.name)])
            i += 2
        else:
            names.append(cur.name)
            i += 1
    return path_of_names(q2, *names)


def premutation_data(qp: QP, k: int) -> PremutationData:
    q = qp.quiver
    if k not in q.vertices:
        raise ValueError(f"unknown vertex {k}")
    if k in q.vertices_on_two_cycles():
        raise ValueError(f"vertex {k} lies on a two-cycle")
    if qp.trunc < 3:
        raise ValueError("mutation needs truncation degree >= 3")
    ins = [a for a in q.arrows if a.head == k]
    outs = [a for a in q.arrows if a.tail == k]
    kept = [a for a in q.arrows if k not in (a.head, a.tail)]

    arrows2: list[Arrow] = list(kept)
    comp: dict[tuple[str, str], str] = {}
    for a in ins:
        for b in outs:
            name = f"[{b.name}.{a.name}]"
            comp[(a.name, b.name)] = name
            arrows2.append(Arrow(name, a.tail, b.head))
    arrows2 += [Arrow(star_name(a.name), k, a.tail) for a in ins]
    arrows2 += [Arrow(star_name(b.name), b.head, k) for b in outs]
    q2 = Quiver(q.vertices, tuple(arrows2))

    N = qp.trunc
    bracket = Series.zero(q2, N)
    for p, c in qp.potential.terms.items():
        p2 = _rewrite_cycle(q, q2, comp, k, p)
        bracket = bracket + Series.of_path(q2, N, p2, c)
    bracket = canonicalize_potential(bracket)

    cycles = Series.zero(q2, N)
    one = qp.field.one()
    for a in ins:
        for b in outs:
            p = path_of_names(q2, comp[(a.name, b.name)],
                              star_name(a.name), star_name(b.name))
            cycles = cycles + Series.of_path(q2, N, p, one)

    pot = canonicalize_potential(bracket + cycles)
    return PremutationData(QP(q2, pot, N, qp.field), k,
                           tuple(a.name for a in ins),
                           tuple(b.name for b in outs), comp, bracket)


def premutate(qp: QP, k: int) -> QP:
    return premutation_data(qp, k).qp


# ---------------------------------------------------------------------------
# splitting off the trivial part

class ReductionResult(NamedTuple):
    """Reduced QP, the eliminated arrow pairs, and the inverse change.

    `equivalence` is a substitution on the input quiver sending the split
    normal form (trivial two-cycles plus the reduced potential) back to the
    input potential; restricted to the surviving arrows it tells how they
    act through the original presentation.
    """

    qp: QP
    trivial_pairs: tuple[tuple[str, str], ...]
    equivalence: ArrowSubstitution


def split(qp: QP) -> ReductionResult:
    q, N, fld = qp.quiver, qp.trunc, qp.field
    S = qp.potential
    total = identity_substitution(q, N, fld)
    one = fld.one()

    def arrow(name: str, coeff=None) -> Series:
        return Series.arrow(q, N, name, one if coeff is None else coeff)

    def substitute(images: dict[str, Series]):
        nonlocal S, total
        full = {a.name: arrow(a.name) for a in q.arrows}
        full.update(images)
        phi = ArrowSubstitution(q, q, N, full)
        S = canonicalize_potential(apply_substitution(phi, S))
        total = compose_substitutions(phi, total)

    def coeff2(fname: str, gname: str):
        cls = Path((q.arrow_index[fname], q.arrow_index[gname])).canonical_rotation()
        return S.terms.get(cls, fld.zero())

    # stage 1: per vertex pair, diagonalize the two-cycle coefficient block
    blocks: dict[tuple[int, int], tuple[list[str], list[str]]] = {}
    for a in q.arrows:
        i, j = a.tail, a.head
        if i < j:
            blocks.setdefault((i, j), ([], []))[0].append(a.name)
        elif j < i:
            blocks.setdefault((j, i), ([], []))[1].append(a.name)
    trivial: list[tuple[str, str]] = []
    for (i, j) in sorted(blocks):
        fs, gs = blocks[(i, j)]
        active_f, active_g = list(fs), list(gs)
        while active_f and active_g:
            pivot = next(((f, g) for f in active_f for g in active_g
                          if coeff2(f, g)), None)
            if pivot is None:
                break
            f0, g0 = pivot
            piv = coeff2(f0, g0)
            row = {g: coeff2(f0, g) for g in active_g if g != g0}
            if any(row.values()):
                img = arrow(g0)
                for g, c in row.items():
                    if c:
                        img = img - arrow(g, c / piv)
                substitute({g0: img})
            col = {f: coeff2(f, g0) for f in active_f if f != f0}
            if any(col.values()):
                img = arrow(f0)
                for f, c in col.items():
                    if c:
                        img = img - arrow(f, c / piv)
                substitute({f0: img})
            piv = coeff2(f0, g0)
            if piv != one:
                substitute({g0: arrow(g0, one / piv)})
            trivial.append((f0, g0))
            active_f.remove(f0)
            active_g.remove(g0)

    trivial_part = Series.zero(q, N)
    for f, g in trivial:
        cls = Path((q.arrow_index[f], q.arrow_index[g])).canonical_rotation()
        trivial_part = trivial_part + Series.of_path(q, N, cls, one)
    assert S.degree_part(2) == trivial_part

    # stage 2: push the eliminated arrows out of the higher-degree terms;
    # each pass raises the lowest degree where they can still occur
    partner_of_f = dict(trivial)
    partner_of_g = {g: f for f, g in trivial}
    triv_names = set(partner_of_f) | set(partner_of_g)
    for _ in range(N + 2):
        u: dict[str, Series] = {}
        v: dict[str, Series] = {}
        hit = False
        for p, c in (S - trivial_part).sorted_terms():
            occs = [(ai, pos) for pos, ai in enumerate(p.arrows)
                    if q.arrows[ai].name in triv_names]
            if not occs:
                continue
            hit = True
            ai, pos = min(occs)
            name = q.arrows[ai].name
            w = p.arrows
            if name in partner_of_f:
                rest = w[pos:][1:] + w[:pos]  # occurrence rotated to the front
                g = partner_of_f[name]
                u[g] = u.get(g, Series.zero(q, N)) + Series.of_path(q, N, Path(rest), c)
            else:
                rest = w[pos + 1:] + w[:pos + 1][:-1]  # rotated to the back
                f = partner_of_g[name]
                v[f] = v.get(f, Series.zero(q, N)) + Series.of_path(q, N, Path(rest), c)
        if not hit:
            break
        images = {f: arrow(f) - vf for f, vf in v.items()}
        images.update({g: arrow(g) - ug for g, ug in u.items()})
        substitute(images)
    else:
        raise RuntimeError("two-cycle reduction did not terminate")

    arrows_red = tuple(a for a in q.arrows if a.name not in triv_names)
    q_red = Quiver(q.vertices, arrows_red)
    # surviving arrows keep their relative order, so canonical rotations carry over
    s_red = Series.zero(q_red, N)
    for p, c in (S - trivial_part).terms.items():
        names = [q.arrows[ai].name for ai in p.arrows]
        s_red = s_red + Series.of_path(q_red, N, path_of_names(q_red, *names), c)
    qp_red = QP(q_red, canonicalize_potential(s_red), N, fld)
    return ReductionResult(qp_red, tuple(trivial), invert_substitution(total))


# ---------------------------------------------------------------------------
# mutation

class MutationResult(NamedTuple):
    vertex: int
    premutation: PremutationData
    reduction: ReductionResult

    @property
    def qp(self) -> QP:
        return self.reduction.qp

    @property
    def premutated(self) -> QP:
        return self.premutation.qp

    @property
    def trivial_pairs(self) -> tuple[tuple[str, str], ...]:
        return self.reduction.trivial_pairs

    @property
    def equivalence(self) -> ArrowSubstitution:
        return self.reduction.equivalence

    @property
    def degenerate(self) -> bool:
        return bool(self.qp.quiver.two_cycle_pairs())


def mutate(qp: QP, k: int) -> MutationResult:
    data = premutation_data(qp, k)
    return MutationResult(k, data, split(data.qp))


class SequenceResult(NamedTuple):
    """`stopped_at` is the index of the first unapplied vertex, if any."""

    steps: tuple[MutationResult, ...]
    qp: QP
    stopped_at: int | None
    diagnostic: str | None


def mutate_sequence(qp: QP, ks: Sequence[int]) -> SequenceResult:
    steps: list[MutationResult] = []
    cur = qp
    for i, k in enumerate(ks):
        if k in cur.quiver.vertices_on_two_cycles():
            return SequenceResult(tuple(steps), cur, i,
                                  f"step {i}: vertex {k} lies on a two-cycle")
        res = mutate(cur, k)
        steps.append(res)
        cur = res.qp
        if res.degenerate and i + 1 < len(ks):
            return SequenceResult(
                tuple(steps), cur, i + 1,
                f"step {i}: result has a two-cycle, later steps are undefined")
    diag = "final quiver has a two-cycle" if steps and steps[-1].degenerate else None
    return SequenceResult(tuple(steps), cur, None, diag)


# ---------------------------------------------------------------------------

def random_potential(quiver: Quiver, trunc: int, rng, field: FieldSpec = QQ,
                     terms: int = 4, max_degree: int | None = None) -> Series:
    """Random canonical potential with up to `terms` cycle classes."""
    md = min(trunc, trunc if max_degree is None else max_degree)
    table = paths_by_degree(quiver, md)
    classes = sorted({p.canonical_rotation()
                      for d in range(2, md + 1) for p in table[d]
                      if p.is_cycle(quiver)}, key=Path.sort_key)
    if not classes:
        return Series.zero(quiver, trunc)
    chosen = rng.sample(classes, min(terms, len(classes)))
    out = {}
    for p in chosen:
        if field.kind == "q":
            from fractions import Fraction
            num = rng.choice([n for n in range(-5, 6) if n])
            out[p] = Fraction(num, rng.randint(1, 3))
        else:
            out[p] = field.from_int(rng.randint(1, field.p - 1))
    return Series.make(quiver, trunc, out)
