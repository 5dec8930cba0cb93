"""Quivers, truncated path-algebra arithmetic, potentials, cyclic calculus.

Everything is exact and immutable.  A Series lives over one quiver at one
truncation degree N; terms of degree > N are dropped at construction and
operations refuse to mix truncation degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .fields import GF, QQ, FieldSpec

__all__ = [
    "Arrow", "Quiver", "Path", "Series", "ArrowSubstitution",
    "series_mul", "canonicalize_potential", "is_canonical_potential",
    "cyclic_derivative", "delta", "box",
    "apply_substitution", "invert_substitution", "compose_substitutions",
    "identity_substitution", "format_series", "parse_series",
    "format_quiver", "parse_quiver",
]


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: int
    head: int


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with a fixed arrow order.

    The arrow order defines path lexicographic comparisons, so two quivers
    with the same arrows in a different order are different objects.
    """

    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        names = set()
        for a in self.arrows:
            if a.name in names:
                raise ValueError(f"duplicate arrow name {a.name!r}")
            names.add(a.name)
            if a.tail not in vs or a.head not in vs:
                raise ValueError(f"arrow {a.name!r} references unknown vertex")

    @cached_property
    def arrow_index(self) -> Mapping[str, int]:
        return MappingProxyType({a.name: i for i, a in enumerate(self.arrows)})

    @cached_property
    def arrows_by_tail(self) -> Mapping[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, a in enumerate(self.arrows):
            out[a.tail].append(i)
        return MappingProxyType({v: tuple(l) for v, l in out.items()})

    @cached_property
    def arrows_by_head(self) -> Mapping[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, a in enumerate(self.arrows):
            out[a.head].append(i)
        return MappingProxyType({v: tuple(l) for v, l in out.items()})

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[self.arrow_index[name]]
        except KeyError:
            raise ValueError(f"unknown arrow {name!r}") from None

    def has_loops(self) -> bool:
        return any(a.tail == a.head for a in self.arrows)

    def two_cycle_pairs(self) -> list[tuple[str, str]]:
        """All (f, g) with f: i->j, g: j->i, i < j by pair then arrow order."""
        pairs = []
        for i, f in enumerate(self.arrows):
            for g in self.arrows:
                if g.tail == f.head and g.head == f.tail and f.tail < f.head:
                    pairs.append((f.name, g.name))
        return pairs

    def vertices_on_two_cycles(self) -> set[int]:
        out: set[int] = set()
        for f, g in self.two_cycle_pairs():
            a = self.arrow(f)
            out.add(a.tail)
            out.add(a.head)
        return out


@dataclass(frozen=True, slots=True)
class Path:
    """Path a1...ad written left to right; arrows[0] is applied last.

    Composability means tail(arrows[p]) == head(arrows[p+1]).  A length-0
    path is the idempotent at `vertex` and has arrows == ().
    """

    arrows: tuple[int, ...] = ()
    vertex: int = -1

    @property
    def degree(self) -> int:
        return len(self.arrows)

    def head(self, q: Quiver) -> int:
        return q.arrows[self.arrows[0]].head if self.arrows else self.vertex

    def tail(self, q: Quiver) -> int:
        return q.arrows[self.arrows[-1]].tail if self.arrows else self.vertex

    def is_cycle(self, q: Quiver) -> bool:
        return self.head(q) == self.tail(q)

    def sort_key(self) -> tuple:
        if self.arrows:
            return (len(self.arrows), self.arrows)
        return (0, (self.vertex,))

    def label(self, q: Quiver) -> str:
        if not self.arrows:
            return f"e_{self.vertex}"
        return ".".join(q.arrows[i].name for i in self.arrows)

    def rotations(self) -> Iterator["Path"]:
        w = self.arrows
        for r in range(len(w)):
            yield Path(w[r:] + w[:r])

    def canonical_rotation(self) -> "Path":
        w = self.arrows
        if not w:
            return self
        best = min(w[r:] + w[:r] for r in range(len(w)))
        return Path(best)


def _check_path(q: Quiver, p: Path):
    if p.arrows:
        for x, y in zip(p.arrows, p.arrows[1:]):
            if q.arrows[x].tail != q.arrows[y].head:
                raise ValueError(f"non-composable path {p.label(q)}")
    elif p.vertex not in set(q.vertices):
        raise ValueError(f"unknown vertex {p.vertex}")


def path_of_names(q: Quiver, *names: str) -> Path:
    p = Path(tuple(q.arrow_index[n] for n in names))
    _check_path(q, p)
    return p


@dataclass(frozen=True)
class Series:
    """Finitely supported element of the path algebra modulo degree > trunc."""

    quiver: Quiver
    trunc: int
    _terms: dict  # Path -> nonzero coefficient; treated as immutable

    @staticmethod
    def make(quiver: Quiver, trunc: int, terms: Mapping[Path, object]) -> "Series":
        if trunc < 0:
            raise ValueError("truncation degree must be >= 0")
        kept = {p: c for p, c in terms.items() if c and p.degree <= trunc}
        return Series(quiver, trunc, kept)

    @staticmethod
    def zero(quiver: Quiver, trunc: int) -> "Series":
        return Series.make(quiver, trunc, {})

    @staticmethod
    def of_path(quiver: Quiver, trunc: int, p: Path, coeff) -> "Series":
        _check_path(quiver, p)
        return Series.make(quiver, trunc, {p: coeff})

    @staticmethod
    def idempotent(quiver: Quiver, trunc: int, v: int, coeff=Fraction(1)) -> "Series":
        return Series.of_path(quiver, trunc, Path((), v), coeff)

    @staticmethod
    def arrow(quiver: Quiver, trunc: int, name: str, coeff=Fraction(1)) -> "Series":
        return Series.of_path(quiver, trunc, Path((quiver.arrow_index[name],)), coeff)

    @property
    def terms(self) -> Mapping[Path, object]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.quiver == other.quiver and self.trunc == other.trunc
                and self._terms == other._terms)

    __hash__ = None  # type: ignore[assignment]

    def _compat(self, other: "Series"):
        if self.quiver != other.quiver:
            raise ValueError("series over different quivers")
        if self.trunc != other.trunc:
            raise ValueError(
                f"truncation mismatch: {self.trunc} vs {other.trunc}")

    def __add__(self, other: "Series") -> "Series":
        self._compat(other)
        out = dict(self._terms)
        for p, c in other._terms.items():
            s = out.get(p)
            s = c if s is None else s + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return Series(self.quiver, self.trunc, out)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __neg__(self) -> "Series":
        return Series(self.quiver, self.trunc,
                      {p: -c for p, c in self._terms.items()})

    def scale(self, c) -> "Series":
        if not c:
            return Series.zero(self.quiver, self.trunc)
        return Series(self.quiver, self.trunc,
                      {p: c * x for p, x in self._terms.items()})

    def __mul__(self, other: "Series") -> "Series":
        return series_mul(self, other)

    def min_degree(self) -> int | None:
        return min((p.degree for p in self._terms), default=None)

    def max_degree(self) -> int | None:
        return max((p.degree for p in self._terms), default=None)

    def degree_part(self, d: int) -> "Series":
        return Series(self.quiver, self.trunc,
                      {p: c for p, c in self._terms.items() if p.degree == d})

    def truncate_below(self, d: int) -> "Series":
        """Drop terms of degree < d."""
        return Series(self.quiver, self.trunc,
                      {p: c for p, c in self._terms.items() if p.degree >= d})

    def truncate_to(self, d: int) -> "Series":
        """Drop terms of degree > d (truncation flag unchanged)."""
        return Series(self.quiver, self.trunc,
                      {p: c for p, c in self._terms.items() if p.degree <= d})

    def block(self, i: int, j: int) -> "Series":
        """The bigraded component e_i * X * e_j."""
        q = self.quiver
        return Series(q, self.trunc, {
            p: c for p, c in self._terms.items()
            if p.head(q) == i and p.tail(q) == j})

    def cyclic_part(self) -> "Series":
        q = self.quiver
        return Series(q, self.trunc, {
            p: c for p, c in self._terms.items()
            if p.degree >= 1 and p.is_cycle(q)})

    def retruncated(self, trunc: int) -> "Series":
        """Reinterpret at another truncation degree.

        Raising the degree is only sound when the stored terms are the whole
        series (nothing was previously dropped); the caller owns that fact.
        """
        return Series.make(self.quiver, trunc, self._terms)

    def sorted_terms(self) -> list[tuple[Path, object]]:
        return sorted(self._terms.items(), key=lambda it: it[0].sort_key())

    def leading(self) -> tuple[Path, object] | None:
        """Term with the (degree, lex)-minimal path, or None."""
        if not self._terms:
            return None
        p = min(self._terms, key=Path.sort_key)
        return p, self._terms[p]

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"Series({format_series(self)!r}, N={self.trunc})"


def series_mul(x: Series, y: Series) -> Series:
    """Concatenation product; non-composable concatenations vanish."""
    x._compat(y)
    q = x.quiver
    out: dict[Path, object] = {}
    for px, cx in x._terms.items():
        tx = px.tail(q)
        for py, cy in y._terms.items():
            if tx != py.head(q):
                continue
            d = px.degree + py.degree
            if d > x.trunc:
                continue
            if px.degree == 0:
                p = py
            elif py.degree == 0:
                p = px
            else:
                p = Path(px.arrows + py.arrows)
            c = cx * cy
            s = out.get(p)
            s = c if s is None else s + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
    return Series(q, x.trunc, out)


def is_canonical_potential(x: Series) -> bool:
    q = x.quiver
    for p in x.terms:
        if p.degree == 0 or not p.is_cycle(q):
            return False
        if p.arrows != p.canonical_rotation().arrows:
            return False
    return True


def canonicalize_potential(x: Series) -> Series:
    """Rotate every cycle to its canonical rotation, summing coefficients.

    Degree-0 terms and non-cyclic terms are errors.
    """
    q = x.quiver
    out: dict[Path, object] = {}
    for p, c in x._terms.items():
        if p.degree == 0:
            raise ValueError("degree-0 term in potential")
        if not p.is_cycle(q):
            raise ValueError(f"non-cyclic term {p.label(q)} in potential")
        cp = p.canonical_rotation()
        s = out.get(cp)
        s = c if s is None else s + c
        if s:
            out[cp] = s
        else:
            out.pop(cp, None)
    return Series(q, x.trunc, out)


def cyclic_derivative(a: str, S: Series) -> Series:
    """Sum over occurrences of `a` of the rotated remainder.

    Invariant under rotation of the stored cycles.
    """
    q = S.quiver
    ai = q.arrow_index[a]
    out: dict[Path, object] = {}
    t_a, h_a = q.arrows[ai].tail, q.arrows[ai].head
    for p, c in S._terms.items():
        w = p.arrows
        for k, x in enumerate(w):
            if x != ai:
                continue
            rest = w[k + 1:] + w[:k]
            rp = Path(rest) if rest else Path((), t_a)
            s = out.get(rp)
            s = c if s is None else s + c
            if s:
                out[rp] = s
            else:
                out.pop(rp, None)
    return Series(q, S.trunc, out)


def delta(a: str, f: Series) -> list[tuple[Series, Series]]:
    """One (prefix, suffix) pair per occurrence of `a`; coefficient on the prefix.

    Degree-0 terms contribute nothing.
    """
    q = f.quiver
    ai = q.arrow_index[a]
    arr = q.arrows[ai]
    pairs: list[tuple[Series, Series]] = []
    for p, c in f.sorted_terms():
        w = p.arrows
        for k, x in enumerate(w):
            if x != ai:
                continue
            u = Path(w[:k]) if k else Path((), arr.head)
            v = Path(w[k + 1:]) if k + 1 < len(w) else Path((), arr.tail)
            pairs.append((Series.of_path(q, f.trunc, u, c),
                          Series.of_path(q, f.trunc, v, _one_like(c))))
    return pairs


def _one_like(c):
    if isinstance(c, GF):
        return GF(c.p, 1)
    return Fraction(1)


def box(pairs: Sequence[tuple[Series, Series]], g: Series) -> Series:
    """Sum of v*g*u over the tensor pairs (u, v)."""
    if not pairs:
        return Series.zero(g.quiver, g.trunc)
    acc = Series.zero(g.quiver, g.trunc)
    for u, v in pairs:
        acc = acc + (v * g) * u
    return acc


# ---------------------------------------------------------------------------
# serialization

def format_series(x: Series) -> str:
    if not x._terms:
        return "0"
    q = x.quiver
    chunks: list[str] = []
    for p, c in x.sorted_terms():
        if isinstance(c, Fraction) and c < 0:
            sign, mag = "-", -c
        else:
            sign, mag = "+", c
        body = f"{_fmt_coeff(mag)} * {p.label(q)}"
        if not chunks:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f"{'+' if sign == '+' else '-'} {body}")
    return " ".join(chunks)


def _fmt_coeff(c) -> str:
    if isinstance(c, GF):
        return str(c.v)
    return str(c)


def _split_top_level(text: str, seps: set[str]) -> list[str]:
    """Split on separator chars not inside [...] brackets."""
    parts: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced ']' in series text")
        if depth == 0 and ch in seps:
            parts.append("".join(cur))
            cur = [ch]  # keep the separator as a marker
            parts.append("".join(cur))
            cur = []
            continue
        cur.append(ch)
    if depth != 0:
        raise ValueError("unbalanced '[' in series text")
    parts.append("".join(cur))
    return [p for p in parts if p != ""]


def parse_series(text: str, quiver: Quiver, trunc: int,
                 field: FieldSpec = QQ) -> Series:
    """Parse 'c * a.b.c + ... - c * e_1' (signed sum, '.' joins arrow names)."""
    text = text.strip()
    if text in ("", "0"):
        return Series.zero(quiver, trunc)
    toks = _split_top_level(text, {"+", "-"})
    terms: list[tuple[int, str]] = []
    sign = 1
    for tk in toks:
        tk = tk.strip()
        if not tk:
            continue
        if tk == "+":
            continue
        if tk == "-":
            sign = -sign
            continue
        terms.append((sign, tk))
        sign = 1
    acc = Series.zero(quiver, trunc)
    for sgn, body in terms:
        star = _split_top_level(body, {"*"})
        if len(star) == 3 and star[1] == "*":
            coeff = field.parse(star[0])
            path_text = star[2].strip()
        elif len(star) == 1:
            coeff = field.one()
            path_text = star[0].strip()
        else:
            raise ValueError(f"cannot parse term {body!r}")
        if sgn < 0:
            coeff = -coeff
        if path_text.startswith("e_"):
            p = Path((), int(path_text[2:]))
        else:
            names = [n.strip() for n in _split_top_level(path_text, {"."})
                     if n.strip() != "."]
            idx = []
            for n in names:
                if n not in quiver.arrow_index:
                    raise ValueError(f"unknown arrow {n!r}")
                idx.append(quiver.arrow_index[n])
            p = Path(tuple(idx))
        _check_path(quiver, p)
        acc = acc + Series.of_path(quiver, trunc, p, coeff)
    return acc


def transport_series(x: Series, quiver_to: Quiver,
                     arrow_names: Mapping[str, str] | None = None,
                     vertex_map: Mapping[int, int] | None = None) -> Series:
    """Rebuild a series over another quiver by renaming arrows and vertices.

    Arrows not listed in `arrow_names` keep their name; composability over
    the target quiver is checked, so endpoint-breaking renamings fail.
    """
    src = x.quiver
    out = Series.zero(quiver_to, x.trunc)
    for p, c in x._terms.items():
        if not p.arrows:
            v = vertex_map[p.vertex] if vertex_map else p.vertex
            out = out + Series.idempotent(quiver_to, x.trunc, v, c)
            continue
        names = [src.arrows[i].name for i in p.arrows]
        if arrow_names:
            names = [arrow_names.get(n, n) for n in names]
        out = out + Series.of_path(quiver_to, x.trunc,
                                   path_of_names(quiver_to, *names), c)
    return out


def format_quiver(q: Quiver) -> list[str]:
    return [f"{a.name}: {a.tail} -> {a.head}" for a in q.arrows]


def parse_quiver(vertices: Iterable[int], lines: Iterable[str]) -> Quiver:
    arrows = []
    for ln in lines:
        ln = ln.strip()
        if not ln:
            continue
        name, rest = ln.split(":", 1)
        tail_s, head_s = rest.split("->")
        arrows.append(Arrow(name.strip(), int(tail_s), int(head_s)))
    return Quiver(tuple(vertices), tuple(arrows))


# ---------------------------------------------------------------------------
# substitutions

@dataclass(frozen=True)
class ArrowSubstitution:
    """Vertex-fixing algebra morphism determined by images of arrows.

    images maps every arrow name of quiver_from to a Series over quiver_to
    whose terms all share the arrow's endpoints and have degree >= 1.
    """

    quiver_from: Quiver
    quiver_to: Quiver
    trunc: int
    images: Mapping[str, Series] = field(compare=False)

    def __post_init__(self):
        if tuple(self.quiver_from.vertices) != tuple(self.quiver_to.vertices):
            raise ValueError("substitution endpoints live on different vertex sets")
        imgs = dict(self.images)
        for a in self.quiver_from.arrows:
            img = imgs.pop(a.name, None)
            if img is None:
                raise ValueError(f"no image for arrow {a.name!r}")
            if img.quiver != self.quiver_to or img.trunc != self.trunc:
                raise ValueError(f"image of {a.name!r} over wrong quiver or truncation")
            for p in img.terms:
                if p.degree == 0:
                    raise ValueError(f"image of {a.name!r} has a degree-0 term")
                if p.head(self.quiver_to) != a.head or p.tail(self.quiver_to) != a.tail:
                    raise ValueError(f"image of {a.name!r} breaks endpoints")
        if imgs:
            raise ValueError(f"images given for unknown arrows {sorted(imgs)}")
        object.__setattr__(self, "images", MappingProxyType(dict(self.images)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArrowSubstitution):
            return NotImplemented
        return (self.quiver_from == other.quiver_from
                and self.quiver_to == other.quiver_to
                and self.trunc == other.trunc
                and dict(self.images) == dict(other.images))

    __hash__ = None  # type: ignore[assignment]

    def linear_part(self) -> dict[str, Series]:
        return {a.name: self.images[a.name].degree_part(1)
                for a in self.quiver_from.arrows}

    def is_change_of_arrows(self) -> bool:
        return all((x.max_degree() or 1) <= 1 for x in self.images.values())

    def is_unitriangular(self) -> bool:
        if self.quiver_from != self.quiver_to:
            return False
        for a in self.quiver_from.arrows:
            lin = self.images[a.name].degree_part(1)
            if lin != Series.arrow(self.quiver_to, self.trunc, a.name,
                                   _coeff_one(lin, self.images[a.name])):
                return False
        return True

    def depth(self) -> int | None:
        """For unitriangular maps: d with correction in m^{d+1}; None if identity."""
        best: int | None = None
        for a in self.quiver_from.arrows:
            corr = self.images[a.name] - Series.arrow(
                self.quiver_to, self.trunc, a.name,
                _coeff_one(self.images[a.name], self.images[a.name]))
            md = corr.min_degree()
            if md is not None:
                best = md - 1 if best is None else min(best, md - 1)
        return best


def _coeff_one(*series_hint: Series):
    for s in series_hint:
        for c in s._terms.values():
            return _one_like(c)
    return Fraction(1)


def identity_substitution(q: Quiver, trunc: int, field: FieldSpec = QQ) -> ArrowSubstitution:
    return ArrowSubstitution(q, q, trunc, {
        a.name: Series.arrow(q, trunc, a.name, field.one()) for a in q.arrows})


def apply_substitution(phi: ArrowSubstitution, x: Series) -> Series:
    if x.quiver != phi.quiver_from:
        raise ValueError("series not over the substitution's source quiver")
    if x.trunc != phi.trunc:
        raise ValueError("truncation mismatch between series and substitution")
    qt = phi.quiver_to
    names = phi.quiver_from.arrows
    out = Series.zero(qt, phi.trunc)
    for p, c in x._terms.items():
        if not p.arrows:
            out = out + Series.idempotent(qt, phi.trunc, p.vertex, c)
            continue
        acc: Series | None = None
        for ai in p.arrows:
            img = phi.images[names[ai].name]
            acc = img if acc is None else acc * img
            if acc.is_zero():
                break
        assert acc is not None
        out = out + acc.scale(c)
    return out


def compose_substitutions(phi: ArrowSubstitution, psi: ArrowSubstitution) -> ArrowSubstitution:
    """phi after psi."""
    if psi.quiver_to != phi.quiver_from:
        raise ValueError("composition quiver mismatch")
    if psi.trunc != phi.trunc:
        raise ValueError("composition truncation mismatch")
    return ArrowSubstitution(psi.quiver_from, phi.quiver_to, phi.trunc, {
        name: apply_substitution(phi, img) for name, img in psi.images.items()})


def invert_substitution(phi: ArrowSubstitution) -> ArrowSubstitution:
    """Two-sided inverse up to the truncation degree.

    The linear part is inverted blockwise per (tail, head); the remaining
    unitriangular factor is inverted by fixed-point iteration.
    """
    from . import linalg

    qf, qt, N = phi.quiver_from, phi.quiver_to, phi.trunc
    fld = _field_of(phi)
    # group arrows per (tail, head)
    blocks: dict[tuple[int, int], tuple[list[str], list[str]]] = {}
    for a in qf.arrows:
        blocks.setdefault((a.tail, a.head), ([], []))[0].append(a.name)
    for b in qt.arrows:
        blocks.setdefault((b.tail, b.head), ([], []))[1].append(b.name)
    inv_images: dict[str, Series] = {}
    for (t, h), (src, dst) in blocks.items():
        if len(src) != len(dst):
            raise ValueError("linear part not invertible: arrow counts differ "
                             f"between {t} -> {h} blocks")
        if not src:
            continue
        # rows: dst arrows, cols: src arrows; entry = coeff of dst arrow in phi(src)
        rows = []
        for bn in dst:
            bp = Path((qt.arrow_index[bn],))
            rows.append(tuple(phi.images[an]._terms.get(bp, fld.zero())
                              for an in src))
        m = linalg.from_rows(fld, rows, cols=len(src))
        mi = linalg.inverse(m)
        if mi is None:
            raise ValueError(f"linear part singular on block {t} -> {h}")
        # psi0(dst_j) = sum_i mi[i][j] * src_i  (so that L(psi0(b)) = b)
        for j, bn in enumerate(dst):
            img = Series.zero(qf, N)
            for i, an in enumerate(src):
                img = img + Series.arrow(qf, N, an, mi[i, j])
            inv_images[bn] = img
    psi0 = ArrowSubstitution(qt, qf, N, inv_images)
    eta = compose_substitutions(phi, psi0)  # unitriangular endo of quiver_to
    zeta_imgs = {b.name: Series.arrow(qt, N, b.name, fld.one())
                 for b in qt.arrows}
    for _ in range(N + 2):
        changed = False
        new_imgs = {}
        for b in qt.arrows:
            bser = Series.arrow(qt, N, b.name, fld.one())
            err = apply_substitution(eta, zeta_imgs[b.name]) - bser
            if err:
                changed = True
            new_imgs[b.name] = zeta_imgs[b.name] - err
        zeta_imgs = new_imgs
        if not changed:
            break
    zeta = ArrowSubstitution(qt, qt, N, zeta_imgs)
    return compose_substitutions(psi0, zeta)


def _field_of(phi: ArrowSubstitution) -> FieldSpec:
    for img in phi.images.values():
        for c in img._terms.values():
            if isinstance(c, GF):
                return FieldSpec("fp", c.p)
            return QQ
    return QQ
