"""Command-line driver and a small local HTTP service.

Subcommands that need a quiver with potential read a text document from
stdin, and the ones that produce a new one print the same format, so runs
chain with pipes:

    qpmut catalog four_cycle | qpmut mutate -k 2 | qpmut rigid

The document starts with a `qpmut 1` header line, then `trunc`, `field`,
`vertices`, one `arrow name: tail -> head` line per arrow, a `potential`
line, and optionally named representation blocks (`rep`, `dims`, `dec`,
`matrix` with one row per line).  `--format json` switches command output
to the structured payload the service also speaks; all rationals are
rendered exactly (`p/q`), never as floats.

The service holds one session.  Undo restores stored snapshots rather than
mutating back, so it is bit-exact regardless of naming normalization.
"""

from __future__ import annotations

import argparse
import json
import sys
import threading
from dataclasses import dataclass, field as dc_field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Mapping, TextIO

from .catalog import CATALOG, cyclic_triangle, make_qp, two_arrows
from .core import Arrow, Quiver, parse_series
from .fields import QQ, FieldSpec
from .jacobian import QP, DimReport, deformation_dim, is_rigid, jacobian_dim
from .mutation import b_matrix, mutate, mutate_sequence, split
from .rep_mutation import mutate_rep
from .reps import DecoratedRep, validate

SCHEMA = 1
DOC_HEADER = "qpmut 1"

_COEFF_ENTRIES = {"cyclic_triangle": cyclic_triangle, "two_arrows": two_arrows}


# ---------------------------------------------------------------------------
# text document format

def print_doc(qp: QP, reps: Mapping[str, DecoratedRep] | None = None) -> str:
    q = qp.quiver
    lines = [DOC_HEADER,
             f"trunc {qp.trunc}",
             f"field {qp.field.to_string()}",
             "vertices " + " ".join(str(v) for v in q.vertices)]
    for a in q.arrows:
        lines.append(f"arrow {a.name}: {a.tail} -> {a.head}")
    lines.append(f"potential {qp.potential}")
    for name, rep in (reps or {}).items():
        lines.append(f"rep {name}")
        lines.append("dims " + " ".join(str(rep.dim(v)) for v in q.vertices))
        lines.append("dec " + " ".join(str(rep.dec_dim(v)) for v in q.vertices))
        for a in q.arrows:
            m = rep.matrix(a.name)
            if m.rows and m.cols and not m.is_zero():
                lines.append(f"matrix {a.name}")
                for row in m.entries:
                    lines.append(" ".join(qp.field.fmt(x) for x in row))
    return "\n".join(lines) + "\n"


class DocError(ValueError):
    pass


def parse_doc(text: str) -> tuple[QP, dict[str, DecoratedRep]]:
    lines = text.splitlines()
    pos = 0

    def peek() -> str | None:
        nonlocal pos
        while pos < len(lines):
            s = lines[pos].strip()
            if s and not s.startswith("#"):
                return s
            pos += 1
        return None

    def take() -> str:
        nonlocal pos
        s = peek()
        if s is None:
            raise DocError("unexpected end of document")
        pos += 1
        return s

    def expect(keyword: str) -> str:
        s = take()
        if not s.startswith(keyword + " ") and s != keyword:
            raise DocError(f"line {pos}: expected '{keyword} ...', got {s!r}")
        return s[len(keyword):].strip()

    if take() != DOC_HEADER:
        raise DocError(f"document must start with '{DOC_HEADER}'")
    trunc = int(expect("trunc"))
    fld = FieldSpec.from_string(expect("field"))
    vertices = tuple(int(t) for t in expect("vertices").split())

    arrows: list[Arrow] = []
    while (s := peek()) is not None and s.startswith("arrow "):
        take()
        head_body = s[len("arrow "):]
        if ":" not in head_body:
            raise DocError(f"line {pos}: malformed arrow line {s!r}")
        name, rest = head_body.split(":", 1)
        ends = rest.replace("->", " ").split()
        if len(ends) != 2:
            raise DocError(f"line {pos}: malformed arrow endpoints in {s!r}")
        arrows.append(Arrow(name.strip(), int(ends[0]), int(ends[1])))
    quiver = Quiver(vertices, tuple(arrows))
    pot = parse_series(expect("potential"), quiver, trunc, fld)
    qp = QP.of(quiver, pot, fld)

    reps: dict[str, DecoratedRep] = {}
    while (s := peek()) is not None:
        name = expect("rep")
        if not name:
            raise DocError(f"line {pos}: rep block needs a name")
        dims_vals = [int(t) for t in expect("dims").split()]
        if len(dims_vals) != len(vertices):
            raise DocError(f"line {pos}: dims must list {len(vertices)} values")
        dims = dict(zip(vertices, dims_vals))
        dec = None
        if (s := peek()) is not None and s.startswith("dec"):
            dec_vals = [int(t) for t in expect("dec").split()]
            if len(dec_vals) != len(vertices):
                raise DocError(f"line {pos}: dec must list {len(vertices)} values")
            dec = dict(zip(vertices, dec_vals))
        mats = {}
        while (s := peek()) is not None and s.startswith("matrix "):
            take()
            aname = s[len("matrix "):].strip()
            if aname not in quiver.arrow_index:
                raise DocError(f"line {pos}: unknown arrow {aname!r}")
            a = quiver.arrow(aname)
            if dims[a.head] == 0 or dims[a.tail] == 0:
                raise DocError(
                    f"line {pos}: matrix {aname} is zero-dimensional; "
                    "omit the block")
            rows = []
            for _ in range(dims[a.head]):
                row_line = take()
                row = [fld.parse(t) for t in row_line.split()]
                if len(row) != dims[a.tail]:
                    raise DocError(
                        f"line {pos}: matrix {aname} row needs "
                        f"{dims[a.tail]} entries")
                rows.append(row)
            mats[aname] = rows
        reps[name] = DecoratedRep.make(qp, dims, mats, dec)
    return qp, reps


# ---------------------------------------------------------------------------
# structured payloads

def qp_json(qp: QP) -> dict:
    q = qp.quiver
    bm = b_matrix(qp)
    return {
        "trunc": qp.trunc,
        "field": qp.field.to_string(),
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "tail": a.tail, "head": a.head}
                   for a in q.arrows],
        "potential": {
            "text": str(qp.potential),
            "terms": [{"coeff": qp.field.fmt(c),
                       "arrows": [q.arrows[i].name for i in p.arrows]}
                      for p, c in sorted(qp.potential.terms.items(),
                                         key=lambda kv: kv[0].sort_key())],
        },
        "b_matrix": [list(row) for row in bm.entries],
        "two_cycle_vertices": sorted(q.vertices_on_two_cycles()),
    }


def rep_json(name: str, rep: DecoratedRep) -> dict:
    q = rep.quiver
    return {
        "id": name,
        "trunc": rep.qp.trunc,
        "dims": [rep.dim(v) for v in q.vertices],
        "dec": [rep.dec_dim(v) for v in q.vertices],
        "matrices": {a.name: [[rep.field.fmt(x) for x in row]
                              for row in rep.matrix(a.name).entries]
                     for a in q.arrows
                     if not rep.matrix(a.name).is_zero()},
    }


def report_json(kind: str, report: DimReport) -> dict:
    return {"schema": SCHEMA, "kind": kind, "start_degree": report.start_degree,
            "trunc": report.trunc, "dims": list(report.dims),
            "stabilized": report.stabilized, "total": report.total}


# ---------------------------------------------------------------------------
# session state for the service

@dataclass
class SessionState:
    """One mutable QP plus named representations, with snapshot undo."""

    qp: QP
    reps: dict[str, DecoratedRep] = dc_field(default_factory=dict)
    history: list[dict] = dc_field(default_factory=list)
    snapshots: list[tuple[QP, dict[str, DecoratedRep]]] = dc_field(
        default_factory=list)
    seed: int | None = None

    def load(self, qp: QP, reps: dict[str, DecoratedRep] | None = None) -> None:
        self.qp = qp
        self.reps = dict(reps or {})
        self.history.clear()
        self.snapshots.clear()

    def snapshot(self) -> None:
        self.snapshots.append((self.qp, dict(self.reps)))

    def mutate(self, k: int) -> dict:
        if k not in self.qp.quiver.vertices:
            raise ValueError(f"unknown vertex {k}")
        if k in self.qp.quiver.vertices_on_two_cycles():
            raise BlockedError(f"vertex {k} lies on a two-cycle")
        self.snapshot()
        res = mutate(self.qp, k)
        self.qp = res.qp
        self.reps = {}
        entry = {"op": "mutate", "vertex": k, "degenerate": res.degenerate,
                 "trivial_pairs": [list(p) for p in res.trivial_pairs]}
        self.history.append(entry)
        return entry

    def repmutate(self, rep_id: str, k: int) -> dict:
        if rep_id not in self.reps:
            raise ValueError(f"unknown representation {rep_id!r}")
        rep = self.reps[rep_id]
        if k not in rep.quiver.vertices:
            raise ValueError(f"unknown vertex {k}")
        if k in rep.quiver.vertices_on_two_cycles():
            raise BlockedError(f"vertex {k} lies on a two-cycle")
        self.snapshot()
        res = mutate_rep(rep, k)
        self.reps[rep_id] = res.rep
        entry = {"op": "repmutate", "rep": rep_id, "vertex": k,
                 "degenerate": res.degenerate}
        self.history.append(entry)
        return entry

    def undo(self) -> None:
        if not self.snapshots:
            raise BlockedError("nothing to undo")
        self.qp, self.reps = self.snapshots.pop()
        self.history.pop()

    def payload(self) -> dict:
        return {"schema": SCHEMA, "qp": qp_json(self.qp),
                "history": list(self.history),
                "reps": [rep_json(n, r) for n, r in self.reps.items()],
                "seed": self.seed}


class BlockedError(Exception):
    """Request is well-formed but the state forbids it; maps to 409."""


# ---------------------------------------------------------------------------
# HTTP service

def build_catalog_qp(name: str, trunc: int, fld: FieldSpec,
                     coeffs: tuple | None = None) -> QP:
    if coeffs is not None:
        if name not in _COEFF_ENTRIES:
            raise ValueError(f"catalog entry {name!r} takes no coefficients")
        return _COEFF_ENTRIES[name](trunc, coeffs, fld)
    return make_qp(name, trunc, fld)


def make_handler(session: SessionState, lock: threading.Lock):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _send(self, status: int, payload: dict) -> None:
            body = json.dumps(payload).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _body(self) -> dict:
            n = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(n) if n else b"{}"
            data = json.loads(raw.decode() or "{}")
            if not isinstance(data, dict):
                raise ValueError("request body must be a JSON object")
            return data

        def do_GET(self):
            if self.path == "/state":
                with lock:
                    self._send(200, session.payload())
            elif self.path == "/reps":
                with lock:
                    self._send(200, {"schema": SCHEMA,
                                     "reps": [rep_json(n, r)
                                              for n, r in session.reps.items()]})
            else:
                self._send(404, {"error": f"no such endpoint {self.path}"})

        def do_POST(self):
            try:
                data = self._body()
            except ValueError as e:
                self._send(400, {"error": str(e)})
                return
            try:
                if self.path == "/mutate":
                    with lock:
                        last = session.mutate(int(data["vertex"]))
                        self._send(200, {**session.payload(), "last": last})
                elif self.path == "/repmutate":
                    with lock:
                        last = session.repmutate(str(data["rep"]),
                                                 int(data["vertex"]))
                        self._send(200, {**session.payload(), "last": last})
                elif self.path == "/undo":
                    with lock:
                        session.undo()
                        self._send(200, session.payload())
                elif self.path == "/load":
                    with lock:
                        if "text" in data:
                            qp, reps = parse_doc(str(data["text"]))
                        elif "catalog" in data:
                            trunc = int(data.get("trunc", 6))
                            fld = FieldSpec.from_string(data.get("field", "q"))
                            coeffs = (tuple(data["coeffs"])
                                      if "coeffs" in data else None)
                            qp = build_catalog_qp(str(data["catalog"]), trunc,
                                                  fld, coeffs)
                            reps = {}
                        else:
                            raise ValueError("load needs 'catalog' or 'text'")
                        session.load(qp, reps)
                        self._send(200, session.payload())
                else:
                    self._send(404, {"error": f"no such endpoint {self.path}"})
            except BlockedError as e:
                self._send(409, {"error": str(e)})
            except (ValueError, KeyError, DocError) as e:
                self._send(400, {"error": str(e)})

    return Handler


def serve(session: SessionState, host: str, port: int,
          ready: "threading.Event | None" = None,
          err: TextIO = sys.stderr) -> ThreadingHTTPServer:
    lock = threading.Lock()
    server = ThreadingHTTPServer((host, port), make_handler(session, lock))
    print(f"serving on http://{server.server_address[0]}:"
          f"{server.server_address[1]}", file=err)
    if ready is not None:
        ready.set()
    return server


# ---------------------------------------------------------------------------
# subcommands

@dataclass
class IO:
    stdin: TextIO
    stdout: TextIO
    stderr: TextIO


def _read_doc(io: IO, args) -> tuple[QP, dict[str, DecoratedRep]]:
    text = io.stdin.read()
    if not text.strip():
        raise DocError("expected a document on stdin")
    qp, reps = parse_doc(text)
    if args.trunc is not None and args.trunc != qp.trunc:
        qp = qp.retruncated(args.trunc)
        reps = {n: DecoratedRep.make(qp, dict(r.dims),
                                     dict(r.matrices), dict(r.dec))
                for n, r in reps.items()}
    if args.field is not None and FieldSpec.from_string(args.field) != qp.field:
        raise DocError("cannot change the field of an existing document")
    return qp, reps


def _emit_qp(io: IO, args, qp: QP, reps=None, extra: dict | None = None) -> None:
    if args.format == "json":
        payload = {"schema": SCHEMA, "qp": qp_json(qp),
                   "reps": [rep_json(n, r) for n, r in (reps or {}).items()]}
        payload.update(extra or {})
        print(json.dumps(payload, indent=2), file=io.stdout)
    else:
        io.stdout.write(print_doc(qp, reps))


def cmd_show(io: IO, args) -> int:
    qp, reps = _read_doc(io, args)
    _emit_qp(io, args, qp, reps)
    return 0


def cmd_catalog(io: IO, args) -> int:
    if args.name is None:
        for e in CATALOG:
            print(f"{e.name:<20} {e.summary}", file=io.stdout)
        return 0
    trunc = args.trunc if args.trunc is not None else 6
    fld = FieldSpec.from_string(args.field) if args.field else QQ
    coeffs = None
    if args.coeffs:
        coeffs = tuple(fld.parse(t) for t in args.coeffs.split(","))
    qp = build_catalog_qp(args.name, trunc, fld, coeffs)
    reps: dict[str, DecoratedRep] = {}
    if args.band:
        from .catalog import band_rep
        if args.name != "double_triangle":
            raise DocError("--band applies to the double_triangle entry")
        m, n = (int(t) for t in args.band.split(","))
        reps[f"band_{m}_{n}"] = band_rep(m, n, trunc=trunc, field=fld)
    if args.indecomposables:
        from .catalog import a3_indecomposables
        if args.name != "a3":
            raise DocError("--indecomposables applies to the a3 entry")
        for dims, r in sorted(a3_indecomposables(qp).items()):
            reps["m" + "".join(str(d) for d in dims)] = r
    _emit_qp(io, args, qp, reps)
    return 0


def cmd_mutate(io: IO, args) -> int:
    qp, reps = _read_doc(io, args)
    k = args.vertex
    if k not in qp.quiver.vertices:
        raise DocError(f"unknown vertex {k}")
    if k in qp.quiver.vertices_on_two_cycles():
        print(f"error: vertex {k} lies on a two-cycle; mutation undefined",
              file=io.stderr)
        return 2
    if reps:
        print("note: representations dropped; use repmutate to carry one",
              file=io.stderr)
    res = mutate(qp, k)
    _emit_qp(io, args, res.qp, extra={
        "degenerate": res.degenerate,
        "trivial_pairs": [list(p) for p in res.trivial_pairs]})
    if res.degenerate:
        cyc = sorted(res.qp.quiver.vertices_on_two_cycles())
        print(f"warning: mutation at {k} is degenerate; "
              f"vertices {cyc} now lie on two-cycles", file=io.stderr)
        return 3
    return 0


def cmd_seq(io: IO, args) -> int:
    qp, _ = _read_doc(io, args)
    ks = [int(t) for t in args.vertices.split(",") if t.strip()]
    res = mutate_sequence(qp, ks)
    extra = {"applied": [m.vertex for m in res.steps],
             "stopped_at": res.stopped_at, "diagnostic": res.diagnostic}
    _emit_qp(io, args, res.qp, extra=extra)
    if res.stopped_at is not None:
        print(f"error: {res.diagnostic}", file=io.stderr)
        return 3
    if res.diagnostic:
        print(f"warning: {res.diagnostic}", file=io.stderr)
    return 0


def cmd_reduce(io: IO, args) -> int:
    qp, _ = _read_doc(io, args)
    red = split(qp)
    _emit_qp(io, args, red.qp, extra={
        "trivial_pairs": [list(p) for p in red.trivial_pairs]})
    for f, g in red.trivial_pairs:
        print(f"removed trivial pair {f}, {g}", file=io.stderr)
    return 0


def cmd_jdim(io: IO, args) -> int:
    qp, _ = _read_doc(io, args)
    report = jacobian_dim(qp)
    if args.format == "json":
        print(json.dumps(report_json("jacobian", report), indent=2),
              file=io.stdout)
    else:
        print(report.table(), file=io.stdout)
    return 0


def cmd_defdim(io: IO, args) -> int:
    qp, _ = _read_doc(io, args)
    report = deformation_dim(qp)
    if args.format == "json":
        print(json.dumps(report_json("deformation", report), indent=2),
              file=io.stdout)
    else:
        print(report.table(), file=io.stdout)
    return 0


def cmd_rigid(io: IO, args) -> int:
    qp, _ = _read_doc(io, args)
    res = is_rigid(qp)
    report = deformation_dim(qp)
    if args.format == "json":
        payload = {"schema": SCHEMA, "rigid": res.rigid,
                   "stabilized": res.stabilized,
                   "witness_degree": res.witness_degree,
                   "deformation": report_json("deformation", report)}
        print(json.dumps(payload, indent=2), file=io.stdout)
        return 0
    if res.rigid and res.stabilized:
        last = max((report.start_degree + i
                    for i, d in enumerate(report.dims) if d != 0),
                   default=report.start_degree - 1)
        print(f"rigid (stabilized at degree {last + 1})", file=io.stdout)
    elif not res.rigid:
        print(f"not rigid: first witness in degree {res.witness_degree}",
              file=io.stdout)
    else:
        print(f"inconclusive at truncation {qp.trunc} (not stabilized)",
              file=io.stdout)
    return 0


def cmd_validate(io: IO, args) -> int:
    qp, reps = _read_doc(io, args)
    if not reps:
        print("document parsed; no representations to check", file=io.stdout)
        return 0
    bad = 0
    for name, rep in reps.items():
        problems = validate(rep)
        if problems:
            bad += 1
            for p in problems:
                print(f"rep {name}: {p}", file=io.stdout)
        else:
            print(f"rep {name}: ok", file=io.stdout)
    return 1 if bad else 0


def cmd_repmutate(io: IO, args) -> int:
    qp, reps = _read_doc(io, args)
    if not reps:
        raise DocError("repmutate needs a rep block in the input document")
    name = args.rep
    if name is None:
        if len(reps) > 1:
            raise DocError(f"several reps present {sorted(reps)}; "
                           "pick one with --rep")
        name = next(iter(reps))
    if name not in reps:
        raise DocError(f"unknown representation {name!r}")
    k = args.vertex
    rep = reps[name]
    if k in rep.quiver.vertices_on_two_cycles():
        print(f"error: vertex {k} lies on a two-cycle; mutation undefined",
              file=io.stderr)
        return 2
    dropped = sorted(set(reps) - {name})
    if dropped:
        print(f"note: reps {dropped} dropped; they live over the unmutated "
              "quiver", file=io.stderr)
    res = mutate_rep(rep, k)
    _emit_qp(io, args, res.rep.qp, {name: res.rep},
             extra={"degenerate": res.degenerate})
    if res.degenerate:
        print(f"warning: mutation at {k} is degenerate", file=io.stderr)
        return 3
    return 0


def cmd_serve(io: IO, args) -> int:
    if io.stdin is not None and not io.stdin.isatty():
        text = io.stdin.read()
    else:
        text = ""
    if text.strip():
        qp, reps = parse_doc(text)
    else:
        qp, reps = make_qp("four_cycle",
                           args.trunc if args.trunc is not None else 6,
                           QQ), {}
    session = SessionState(qp, dict(reps), seed=args.seed)
    server = serve(session, args.host, args.port, err=io.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qpmut",
        description="exact mutation engine for quivers with potential")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--trunc", type=int, default=None,
                    help="truncation degree (catalog default: 6)")
    ap.add_argument("--field", default=None, help="q or fp:<prime>")
    ap.add_argument("--seed", type=int, default=None)
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values parsed before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    common.add_argument("--trunc", type=int, default=argparse.SUPPRESS)
    common.add_argument("--field", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)
    parents = {"parents": [common]}

    sub.add_parser("show", help="parse and reprint a document", **parents)

    c = sub.add_parser("catalog", help="list entries or print one", **parents)
    c.add_argument("name", nargs="?")
    c.add_argument("--coeffs", default=None,
                   help="comma-separated coefficients for parametric entries")
    c.add_argument("--band", default=None, metavar="M,N",
                   help="attach the band representation M(m,n) (double_triangle)")
    c.add_argument("--indecomposables", action="store_true",
                   help="attach the six interval modules (a3)")

    m = sub.add_parser("mutate", help="mutate the QP at one vertex", **parents)
    m.add_argument("-k", dest="vertex", type=int, required=True)

    s = sub.add_parser("seq", help="mutate along a vertex sequence", **parents)
    s.add_argument("-k", dest="vertices", required=True,
                   help="comma-separated vertices")

    sub.add_parser("reduce", help="remove trivial two-cycle pairs", **parents)
    sub.add_parser("jdim", help="jacobian algebra dimensions by degree",
                   **parents)
    sub.add_parser("defdim", help="deformation space dimensions by degree",
                   **parents)
    sub.add_parser("rigid", help="decide rigidity at the stored truncation",
                   **parents)
    sub.add_parser("validate", help="check representation blocks", **parents)

    r = sub.add_parser("repmutate", help="mutate a decorated representation",
                       **parents)
    r.add_argument("-k", dest="vertex", type=int, required=True)
    r.add_argument("--rep", default=None, help="rep name when several present")

    v = sub.add_parser("serve", help="run the local HTTP service", **parents)
    v.add_argument("--host", default="127.0.0.1")
    v.add_argument("--port", type=int, default=8764)
    return ap


HANDLERS = {
    "show": cmd_show, "catalog": cmd_catalog, "mutate": cmd_mutate,
    "seq": cmd_seq, "reduce": cmd_reduce, "jdim": cmd_jdim,
    "defdim": cmd_defdim, "rigid": cmd_rigid, "validate": cmd_validate,
    "repmutate": cmd_repmutate, "serve": cmd_serve,
}


def main(argv: list[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    io = IO(stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return HANDLERS[args.command](io, args)
    except (DocError, ValueError) as e:
        print(f"error: {e}", file=io.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
