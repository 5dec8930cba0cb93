/**
 * Payload types for the mutation service (schema version 1) and a
 * validating parser.
 *
 * The view only ever renders a parsed payload, so a malformed or
 * wrong-version response becomes one SchemaError banner instead of a
 * half-drawn page.
 */

export const SCHEMA = 1;

export interface ArrowJson {
  name: string;
  tail: number;
  head: number;
}

export interface TermJson {
  coeff: string; // exact rational, verbatim "p/q"
  arrows: string[];
}

export interface QpJson {
  trunc: number;
  field: string;
  vertices: number[];
  arrows: ArrowJson[];
  potential: { text: string; terms: TermJson[] };
  b_matrix: number[][];
  two_cycle_vertices: number[];
}

export interface HistoryEntryJson {
  op: string;
  vertex: number;
  degenerate: boolean;
  rep?: string;
  trivial_pairs?: string[][];
}

export interface RepJson {
  id: string;
  trunc: number;
  dims: number[];
  dec: number[];
  matrices: Record<string, string[][]>;
}

export interface StatePayload {
  schema: number;
  qp: QpJson;
  history: HistoryEntryJson[];
  reps: RepJson[];
  seed: number | null;
}

export class SchemaError extends Error {}

function fail(msg: string): never {
  throw new SchemaError(msg);
}

function obj(x: unknown, where: string): Record<string, unknown> {
  if (typeof x !== "object" || x === null || Array.isArray(x)) {
    fail(`${where}: expected an object`);
  }
  return x as Record<string, unknown>;
}

function num(x: unknown, where: string): number {
  if (typeof x !== "number" || !Number.isFinite(x)) {
    fail(`${where}: expected a number`);
  }
  return x;
}

function str(x: unknown, where: string): string {
  if (typeof x !== "string") fail(`${where}: expected a string`);
  return x;
}

function arr(x: unknown, where: string): unknown[] {
  if (!Array.isArray(x)) fail(`${where}: expected an array`);
  return x;
}

function numbers(x: unknown, where: string): number[] {
  return arr(x, where).map((v, i) => num(v, `${where}[${i}]`));
}

function parseQp(data: unknown): QpJson {
  const q = obj(data, "qp");
  const pot = obj(q.potential, "qp.potential");
  return {
    trunc: num(q.trunc, "qp.trunc"),
    field: str(q.field, "qp.field"),
    vertices: numbers(q.vertices, "qp.vertices"),
    arrows: arr(q.arrows, "qp.arrows").map((a, i) => {
      const o = obj(a, `qp.arrows[${i}]`);
      return {
        name: str(o.name, `qp.arrows[${i}].name`),
        tail: num(o.tail, `qp.arrows[${i}].tail`),
        head: num(o.head, `qp.arrows[${i}].head`),
      };
    }),
    potential: {
      text: str(pot.text, "qp.potential.text"),
      terms: arr(pot.terms, "qp.potential.terms").map((t, i) => {
        const o = obj(t, `term[${i}]`);
        return {
          coeff: str(o.coeff, `term[${i}].coeff`),
          arrows: arr(o.arrows, `term[${i}].arrows`).map((n, j) =>
            str(n, `term[${i}].arrows[${j}]`),
          ),
        };
      }),
    },
    b_matrix: arr(q.b_matrix, "qp.b_matrix").map((row, i) =>
      numbers(row, `qp.b_matrix[${i}]`),
    ),
    two_cycle_vertices: numbers(q.two_cycle_vertices, "qp.two_cycle_vertices"),
  };
}

/** Validate a /state-shaped response; throws SchemaError when it does not
 * match schema version 1. Unknown extra fields are ignored. */
export function parseState(data: unknown): StatePayload {
  const o = obj(data, "payload");
  if (o.schema !== SCHEMA) {
    fail(`unsupported payload schema ${JSON.stringify(o.schema)}; expected ${SCHEMA}`);
  }
  return {
    schema: SCHEMA,
    qp: parseQp(o.qp),
    history: arr(o.history, "history").map((h, i) => {
      const e = obj(h, `history[${i}]`);
      return {
        op: str(e.op, `history[${i}].op`),
        vertex: num(e.vertex, `history[${i}].vertex`),
        degenerate: e.degenerate === true,
        rep: e.rep === undefined ? undefined : str(e.rep, `history[${i}].rep`),
        trivial_pairs:
          e.trivial_pairs === undefined
            ? undefined
            : arr(e.trivial_pairs, `history[${i}].trivial_pairs`).map((p, j) =>
                arr(p, `history[${i}].trivial_pairs[${j}]`).map((s, k) =>
                  str(s, `history[${i}].trivial_pairs[${j}][${k}]`),
                ),
              ),
      };
    }),
    reps: arr(o.reps, "reps").map((r, i) => {
      const e = obj(r, `reps[${i}]`);
      return {
        id: str(e.id, `reps[${i}].id`),
        trunc: num(e.trunc, `reps[${i}].trunc`),
        dims: numbers(e.dims, `reps[${i}].dims`),
        dec: numbers(e.dec, `reps[${i}].dec`),
        matrices: Object.fromEntries(
          Object.entries(obj(e.matrices, `reps[${i}].matrices`)).map(
            ([name, m]) => [
              name,
              arr(m, `reps[${i}].matrices[${name}]`).map((row, j) =>
                arr(row, `reps[${i}].matrices[${name}][${j}]`).map((x, k) =>
                  str(x, `reps[${i}].matrices[${name}][${j}][${k}]`),
                ),
              ),
            ],
          ),
        ),
      };
    }),
    seed: o.seed === null || o.seed === undefined ? null : num(o.seed, "seed"),
  };
}
