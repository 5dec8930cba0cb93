"""Stock quivers with potential, cycle-built potentials, and the worked
representation families used throughout the tests and the command line
interface.
"""

from __future__ import annotations

from typing import Callable, Mapping, NamedTuple, Sequence

from . import linalg
from .core import (Arrow, Path, Quiver, Series, canonicalize_potential,
                   path_of_names)
from .fields import QQ, FieldSpec
from .jacobian import QP
from .reps import DecoratedRep


def _guarded_term(quiver: Quiver, trunc: int, names: Sequence[str], coeff) -> Series:
    p = path_of_names(quiver, *names)
    if p.degree > trunc:
        raise ValueError(
            f"potential term of degree {p.degree} exceeds truncation {trunc}")
    return Series.of_path(quiver, trunc, p, coeff)


def four_cycle(trunc: int, field: FieldSpec = QQ) -> QP:
    """Oriented four-cycle; the potential is the full cycle."""
    q = Quiver((1, 2, 3, 4), (Arrow("a", 1, 2), Arrow("b", 2, 3),
                              Arrow("c", 3, 4), Arrow("d", 4, 1)))
    s = _guarded_term(q, trunc, ("d", "c", "b", "a"), field.one())
    return QP.of(q, s, field)


def cyclic_triangle(trunc: int, coeffs: Sequence = (1,),
                    field: FieldSpec = QQ) -> QP:
    """Oriented triangle with potential sum_i coeffs[i] * (3-cycle)^(i+1)."""
    q = Quiver((1, 2, 3), (Arrow("a", 1, 2), Arrow("b", 2, 3), Arrow("c", 3, 1)))
    s = Series.zero(q, trunc)
    for i, c in enumerate(coeffs):
        if not c:
            continue
        coeff = field.from_int(c) if isinstance(c, int) else c
        s = s + _guarded_term(q, trunc, ("c", "b", "a") * (i + 1), coeff)
    return QP.of(q, s, field)


def double_triangle(trunc: int, field: FieldSpec = QQ) -> QP:
    """Triangle shape with two parallel arrows per side; the potential pairs
    them off into two disjoint 3-cycles."""
    q = Quiver((1, 2, 3), (Arrow("a1", 1, 2), Arrow("a2", 1, 2),
                           Arrow("b1", 2, 3), Arrow("b2", 2, 3),
                           Arrow("c1", 3, 1), Arrow("c2", 3, 1)))
    s = (_guarded_term(q, trunc, ("c1", "b1", "a1"), field.one())
         + _guarded_term(q, trunc, ("c2", "b2", "a2"), field.one()))
    return QP.of(q, s, field)


def a3(trunc: int, field: FieldSpec = QQ) -> QP:
    """Linear three-vertex quiver, zero potential."""
    q = Quiver((1, 2, 3), (Arrow("a", 1, 2), Arrow("b", 2, 3)))
    return QP(q, Series.zero(q, trunc), trunc, field)


def two_arrows(trunc: int, coeffs: Sequence = (1,),
               field: FieldSpec = QQ) -> QP:
    """Two vertices joined by a two-cycle, potential a polynomial in it.

    Mutation is undefined at both vertices; this entry exercises dimension
    counting and reduction, not mutation."""
    q = Quiver((1, 2), (Arrow("a", 1, 2), Arrow("b", 2, 1)))
    s = Series.zero(q, trunc)
    for i, c in enumerate(coeffs):
        if not c:
            continue
        coeff = field.from_int(c) if isinstance(c, int) else c
        s = s + _guarded_term(q, trunc, ("b", "a") * (i + 1), coeff)
    return QP.of(q, s, field)


def grid_vertex_ids(n: int) -> dict[tuple[int, int, int], int]:
    """Vertex numbering of the triangular grid: coordinate triples
    (p, q, r) with p+q+r = n, numbered 1.. in lexicographic order."""
    triples = sorted((p, q, n - p - q)
                     for p in range(n + 1) for q in range(n + 1 - p))
    return {t: i + 1 for i, t in enumerate(triples)}


def grid(n: int, trunc: int, field: FieldSpec = QQ) -> QP:
    """Triangular grid of side n.

    Vertices are the coordinate triples (p, q, r) >= 0 with p+q+r = n
    (numbered by `grid_vertex_ids`).  Each vertex emits up to three arrows,
    named after their type and source triple: a moves by (-1,+1,0), b by
    (0,-1,+1), c by (+1,0,-1).  Every short anticlockwise triangle
    contributes its 3-cycle with sign +1, every clockwise one with -1.
    """
    if not 1 <= n <= 9:
        raise ValueError("grid size must be between 1 and 9")
    ids = grid_vertex_ids(n)
    triples = sorted(ids)
    arrows = []
    for kind, delta, cond in (("a", (-1, 1, 0), lambda t: t[0] >= 1),
                              ("b", (0, -1, 1), lambda t: t[1] >= 1),
                              ("c", (1, 0, -1), lambda t: t[2] >= 1)):
        for t in triples:
            if cond(t):
                u = (t[0] + delta[0], t[1] + delta[1], t[2] + delta[2])
                arrows.append(Arrow(f"{kind}{t[0]}{t[1]}{t[2]}", ids[t], ids[u]))
    q = Quiver(tuple(ids[t] for t in triples), tuple(arrows))

    def nm(kind, t):
        return f"{kind}{t[0]}{t[1]}{t[2]}"

    s = Series.zero(q, trunc)
    for t in triples:
        p_, q_, r_ = t
        if p_ >= 1:
            j1 = (p_ - 1, q_ + 1, r_)
            j2 = (p_ - 1, q_, r_ + 1)
            s = s + _guarded_term(
                q, trunc, (nm("c", j2), nm("b", j1), nm("a", t)), field.one())
        if p_ >= 1 and r_ >= 1:
            j1 = (p_ - 1, q_ + 1, r_)
            j2 = (p_, q_ + 1, r_ - 1)
            s = s - _guarded_term(
                q, trunc, (nm("b", j2), nm("c", j1), nm("a", t)), field.one())
    return QP.of(q, s, field)


class CatalogEntry(NamedTuple):
    name: str
    summary: str
    build: Callable[..., QP]  # (trunc, field) -> QP


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry("four_cycle", "oriented four-cycle, potential the full cycle",
                 four_cycle),
    CatalogEntry("cyclic_triangle", "oriented triangle, potential the 3-cycle",
                 lambda trunc, field=QQ: cyclic_triangle(trunc, (1,), field)),
    CatalogEntry("cyclic_triangle_sq",
                 "oriented triangle, potential the squared 3-cycle",
                 lambda trunc, field=QQ: cyclic_triangle(trunc, (0, 1), field)),
    CatalogEntry("double_triangle",
                 "doubled triangle, potential two disjoint 3-cycles",
                 double_triangle),
    CatalogEntry("a3", "linear three-vertex quiver, zero potential", a3),
    CatalogEntry("two_arrows", "a two-cycle with itself as potential",
                 lambda trunc, field=QQ: two_arrows(trunc, (1,), field)),
    CatalogEntry("grid_1", "triangular grid of side 1",
                 lambda trunc, field=QQ: grid(1, trunc, field)),
    CatalogEntry("grid_2", "triangular grid of side 2",
                 lambda trunc, field=QQ: grid(2, trunc, field)),
)

_BY_NAME = {e.name: e for e in CATALOG}


def catalog_names() -> list[str]:
    return [e.name for e in CATALOG]


def make_qp(name: str, trunc: int, field: FieldSpec = QQ) -> QP:
    entry = _BY_NAME.get(name)
    if entry is None:
        raise ValueError(
            f"unknown catalog entry {name!r}; available: {', '.join(catalog_names())}")
    return entry.build(trunc, field)


def chordless_cycles(quiver: Quiver) -> list[Path]:
    """All chordless cycles of the underlying graph, as directed paths.

    The quiver must be simply laced (no loops, no two-cycles, at most one
    arrow between any two vertices) and every chordless cycle must be
    cyclically oriented; anything else raises ValueError.
    """
    if quiver.has_loops():
        raise ValueError("quiver has a loop")
    if quiver.two_cycle_pairs():
        raise ValueError("quiver has a two-cycle")
    by_pair: dict[frozenset, Arrow] = {}
    for a in quiver.arrows:
        key = frozenset((a.tail, a.head))
        if key in by_pair:
            raise ValueError(
                f"multiple arrows between vertices {a.tail} and {a.head}")
        by_pair[key] = a
    adj: dict[int, list[int]] = {v: [] for v in quiver.vertices}
    for a in quiver.arrows:
        adj[a.tail].append(a.head)
        adj[a.head].append(a.tail)
    for v in adj:
        adj[v].sort()

    cycles: list[tuple[int, ...]] = []

    def extend(start, path, seen):
        u = path[-1]
        for w in adj[u]:
            if w == start and len(path) >= 3:
                if path[1] < path[-1]:  # one direction per cycle
                    cycles.append(tuple(path))
            elif w > start and w not in seen:
                seen.add(w)
                path.append(w)
                extend(start, path, seen)
                path.pop()
                seen.remove(w)

    for s in sorted(quiver.vertices):
        extend(s, [s], {s})

    out = []
    for cyc in cycles:
        vs = set(cyc)
        inside = sum(1 for a in quiver.arrows if a.tail in vs and a.head in vs)
        if inside > len(cyc):  # a chord: not an induced cycle
            continue
        hops = list(zip(cyc, cyc[1:] + cyc[:1]))
        forward = all(by_pair[frozenset(h)].tail == h[0] for h in hops)
        backward = all(by_pair[frozenset(h)].head == h[0] for h in hops)
        if not (forward or backward):
            raise ValueError(
                f"chordless cycle through {sorted(vs)} is not cyclically oriented")
        if backward:
            hops = [(b, a) for a, b in reversed(hops)]
        names = [by_pair[frozenset(h)].name for h in reversed(hops)]
        out.append(path_of_names(quiver, *names).canonical_rotation())
    out.sort(key=Path.sort_key)
    return out


def primitive_potential(quiver: Quiver, trunc: int, coeffs: Sequence | None = None,
                        field: FieldSpec = QQ) -> Series:
    """One term per chordless cycle, with the given coefficients (default
    all one, ordered like `chordless_cycles`)."""
    cycles = chordless_cycles(quiver)
    if coeffs is None:
        coeffs = [field.one()] * len(cycles)
    if len(coeffs) != len(cycles):
        raise ValueError(
            f"expected {len(cycles)} coefficients, got {len(coeffs)}")
    s = Series.zero(quiver, trunc)
    for p, c in zip(cycles, coeffs):
        if not c:
            continue
        coeff = field.from_int(c) if isinstance(c, int) else c
        if p.degree > trunc:
            raise ValueError(
                f"cycle of degree {p.degree} exceeds truncation {trunc}")
        s = s + Series.of_path(quiver, trunc, p, coeff)
    return canonicalize_potential(s)


def band_rep(m: int, n: int, trunc: int = 5, field: FieldSpec = QQ) -> DecoratedRep:
    """Band module over the doubled triangle.

    Dimensions (m, m+n, n); the two a-arrows embed the first space as the
    top and bottom coordinate blocks of the middle one, the two b-arrows
    project onto the last n coordinates in the two opposite orders, and the
    c-arrows act as zero.
    """
    if m < 0 or n < 0:
        raise ValueError("band parameters must be nonnegative")
    qp = double_triangle(trunc, field)
    ident_m = linalg.identity(field, m)
    ident_n = linalg.identity(field, n)
    mats = {
        "a1": linalg.vstack(field, [ident_m, linalg.zeros(field, n, m)], cols=m),
        "a2": linalg.vstack(field, [linalg.zeros(field, n, m), ident_m], cols=m),
        "b1": linalg.hstack(field, [linalg.zeros(field, n, m), ident_n], rows=n),
        "b2": linalg.hstack(field, [ident_n, linalg.zeros(field, n, m)], rows=n),
    }
    return DecoratedRep.make(qp, {1: m, 2: m + n, 3: n}, mats)


def a3_indecomposables(qp: QP) -> dict[tuple[int, int, int], DecoratedRep]:
    """The six indecomposable modules of the linear three-vertex quiver,
    keyed by dimension vector."""
    q = qp.quiver
    if (q.vertices != (1, 2, 3) or len(q.arrows) != 2
            or q.arrow("a").tail != 1 or q.arrow("a").head != 2
            or q.arrow("b").tail != 2 or q.arrow("b").head != 3):
        raise ValueError("expected the linear three-vertex quiver")
    one = [[1]]
    out = {}
    for lo in (1, 2, 3):
        for hi in range(lo, 4):
            dims = {v: 1 for v in range(lo, hi + 1)}
            mats = {}
            if lo <= 1 and hi >= 2:
                mats["a"] = one
            if lo <= 2 and hi >= 3:
                mats["b"] = one
            rep = DecoratedRep.make(qp, dims, mats)
            out[rep.dim_vector().dims] = rep
    return out
