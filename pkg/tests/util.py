"""Shared quiver builders, independent path enumeration, random generators.

The enumeration and random constructions here are deliberately simple and
separate from the package internals so tests cross-check two code paths.
"""

from __future__ import annotations

import random
from fractions import Fraction

from qpmut.core import (Arrow, ArrowSubstitution, Path, Quiver, Series,
                        canonicalize_potential, compose_substitutions,
                        identity_substitution)
from qpmut.fields import QQ, FieldSpec


def q_two_arrows() -> Quiver:
    return Quiver((1, 2), (Arrow("a", 1, 2), Arrow("b", 2, 1)))


def q_triangle() -> Quiver:
    return Quiver((1, 2, 3), (Arrow("a", 1, 2), Arrow("b", 2, 3), Arrow("c", 3, 1)))


def q_four_cycle() -> Quiver:
    return Quiver((1, 2, 3, 4), (Arrow("a", 1, 2), Arrow("b", 2, 3),
                                 Arrow("c", 3, 4), Arrow("d", 4, 1)))


def q_a3() -> Quiver:
    return Quiver((1, 2, 3), (Arrow("a", 1, 2), Arrow("b", 2, 3)))


def q_double_triangle() -> Quiver:
    return Quiver((1, 2, 3), (
        Arrow("a1", 1, 2), Arrow("a2", 1, 2),
        Arrow("b1", 2, 3), Arrow("b2", 2, 3),
        Arrow("c1", 3, 1), Arrow("c2", 3, 1)))


def all_paths(q: Quiver, max_deg: int) -> list[Path]:
    """Every path of degree <= max_deg, trivial paths included."""
    out: list[Path] = [Path((), v) for v in q.vertices]
    layer: list[Path] = list(out)
    for _ in range(max_deg):
        nxt: list[Path] = []
        for p in layer:
            h = p.head(q)
            for i, a in enumerate(q.arrows):
                if a.tail == h:
                    nxt.append(Path((i,) + p.arrows, -1) if p.arrows
                               else Path((i,)))
        out.extend(nxt)
        layer = nxt
    return out


def cyclic_paths(q: Quiver, max_deg: int) -> list[Path]:
    return [p for p in all_paths(q, max_deg)
            if p.degree >= 1 and p.is_cycle(q)]


def random_coeff(rng: random.Random, field: FieldSpec = QQ, nonzero=False):
    while True:
        c = field.from_int(rng.randint(-5, 5))
        if c or not nonzero:
            return c


def random_series(q: Quiver, trunc: int, rng: random.Random, n_terms=4,
                  max_deg=4, field: FieldSpec = QQ, block=None,
                  min_deg=0) -> Series:
    pool = [p for p in all_paths(q, min(max_deg, trunc))
            if p.degree >= min_deg
            and (block is None or (p.head(q) == block[0] and p.tail(q) == block[1]))]
    acc = Series.zero(q, trunc)
    if not pool:
        return acc
    for _ in range(n_terms):
        p = rng.choice(pool)
        acc = acc + Series.of_path(q, trunc, p, random_coeff(rng, field))
    return acc


def random_potential_series(q: Quiver, trunc: int, rng: random.Random,
                            n_terms=3, max_deg=5, field: FieldSpec = QQ) -> Series:
    pool = [p for p in cyclic_paths(q, min(max_deg, trunc)) if p.degree >= 2]
    acc = Series.zero(q, trunc)
    for _ in range(n_terms):
        if not pool:
            break
        p = rng.choice(pool)
        acc = acc + Series.of_path(q, trunc, p, random_coeff(rng, field))
    return canonicalize_potential(acc)


def random_unitriangular(q: Quiver, trunc: int, rng: random.Random,
                         depth=1, field: FieldSpec = QQ) -> ArrowSubstitution:
    images = {}
    for a in q.arrows:
        img = Series.arrow(q, trunc, a.name, field.one())
        tail = random_series(q, trunc, rng, n_terms=2, max_deg=min(trunc, depth + 3),
                             field=field, block=(a.head, a.tail), min_deg=depth + 1)
        images[a.name] = img + tail
    return ArrowSubstitution(q, q, trunc, images)


def random_change_of_arrows(q: Quiver, trunc: int, rng: random.Random,
                            field: FieldSpec = QQ) -> ArrowSubstitution:
    """Invertible change of arrows: unimodular integer block matrices."""
    blocks: dict[tuple[int, int], list[int]] = {}
    for i, a in enumerate(q.arrows):
        blocks.setdefault((a.tail, a.head), []).append(i)
    images = {}
    for (t, h), idxs in blocks.items():
        m = len(idxs)
        mat = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        for _ in range(3 * m):
            i, j = rng.randrange(m), rng.randrange(m)
            if i != j:
                f = rng.randint(-2, 2)
                for k in range(m):
                    mat[i][k] += f * mat[j][k]
            elif rng.random() < 0.5:
                for k in range(m):
                    mat[i][k] = -mat[i][k]
        # phi(a_j) = sum_i mat[i][j] a_i
        for jj, aj in enumerate(idxs):
            img = Series.zero(q, trunc)
            for ii, ai in enumerate(idxs):
                c = field.from_int(mat[ii][jj])
                if c:
                    img = img + Series.of_path(
                        q, trunc, Path((ai,)), c)
            images[q.arrows[aj].name] = img
    return ArrowSubstitution(q, q, trunc, images)


def random_automorphism(q: Quiver, trunc: int, rng: random.Random,
                        field: FieldSpec = QQ) -> ArrowSubstitution:
    return compose_substitutions(
        random_change_of_arrows(q, trunc, rng, field),
        random_unitriangular(q, trunc, rng, depth=1, field=field))
