/**
 * Deterministic geometry for the quiver view. Vertices sit on a fixed
 * circle ordered by vertex id (12 o'clock first, clockwise); no physics,
 * so the same payload always renders the same picture. Parallel arrows
 * between a pair of vertices fan out on quadratic bezier lanes, and the
 * two directions of a 2-cycle bow apart.
 */

import { ArrowJson } from "./schema.js";

export interface Point {
  x: number;
  y: number;
}

export interface ArrowPath {
  name: string;
  tail: number;
  head: number;
  /** SVG path data "M x0 y0 Q cx cy x1 y1". */
  d: string;
  /** Label anchor at the curve midpoint. */
  label: Point;
}

export function circularLayout(
  vertices: number[],
  cx: number,
  cy: number,
  radius: number,
): Map<number, Point> {
  const sorted = [...vertices].sort((a, b) => a - b);
  const out = new Map<number, Point>();
  sorted.forEach((v, i) => {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / sorted.length;
    out.set(v, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  });
  return out;
}

const LANE_GAP = 22;
const PAIR_SEP = 14;

function unit(from: Point, to: Point): Point {
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const len = Math.hypot(dx, dy) || 1;
  return { x: dx / len, y: dy / len };
}

/** Perpendicular lane offsets in a shared frame per vertex pair: each
 * direction group is centred, opposite groups are pushed apart. */
function laneOffsets(forward: number, backward: number): [number[], number[]] {
  const sep = forward > 0 && backward > 0 ? PAIR_SEP : 0;
  const spread = (count: number, sign: number): number[] =>
    Array.from({ length: count }, (_, i) =>
      sign * (LANE_GAP * (i - (count - 1) / 2) + sep),
    );
  return [spread(forward, 1), spread(backward, -1)];
}

export function arrowGeometry(
  arrows: ArrowJson[],
  pos: Map<number, Point>,
  vertexRadius: number,
): ArrowPath[] {
  const groups = new Map<string, ArrowJson[]>();
  for (const a of arrows) {
    const key = `${Math.min(a.tail, a.head)}:${Math.max(a.tail, a.head)}`;
    const g = groups.get(key);
    if (g) g.push(a);
    else groups.set(key, [a]);
  }

  const out: ArrowPath[] = [];
  for (const group of groups.values()) {
    const lo = Math.min(group[0]!.tail, group[0]!.head);
    const forward = group.filter((a) => a.tail === lo);
    const backward = group.filter((a) => a.tail !== lo);
    const [fOff, bOff] = laneOffsets(forward.length, backward.length);

    const emit = (a: ArrowJson, offset: number) => {
      const p0 = pos.get(a.tail);
      const p1 = pos.get(a.head);
      if (!p0 || !p1) return;
      if (a.tail === a.head) {
        // loop: small circle above the vertex, lanes stacked outward
        const r = 16 + Math.abs(offset) / 2;
        out.push({
          name: a.name,
          tail: a.tail,
          head: a.head,
          d: `M ${p0.x} ${p0.y - vertexRadius} ` +
            `Q ${p0.x - 2 * r} ${p0.y - 3 * r} ${p0.x} ${p0.y - vertexRadius}`,
          label: { x: p0.x - r, y: p0.y - 2 * r },
        });
        return;
      }
      // normal in the pair frame (low -> high vertex) so opposite
      // directions share the same notion of "side"
      const loP = a.tail === lo ? p0 : p1;
      const hiP = a.tail === lo ? p1 : p0;
      const u = unit(loP, hiP);
      const n = { x: -u.y, y: u.x };
      const mid = { x: (p0.x + p1.x) / 2, y: (p0.y + p1.y) / 2 };
      const ctrl = { x: mid.x + n.x * offset, y: mid.y + n.y * offset };
      // trim the ends back to the vertex circles, along the tangents
      const t0 = unit(p0, ctrl);
      const t1 = unit(p1, ctrl);
      const q0 = { x: p0.x + t0.x * vertexRadius, y: p0.y + t0.y * vertexRadius };
      const q1 = { x: p1.x + t1.x * vertexRadius, y: p1.y + t1.y * vertexRadius };
      out.push({
        name: a.name,
        tail: a.tail,
        head: a.head,
        d: `M ${round(q0.x)} ${round(q0.y)} Q ${round(ctrl.x)} ${round(ctrl.y)} ${round(q1.x)} ${round(q1.y)}`,
        // quadratic bezier at t = 1/2
        label: {
          x: round(0.25 * q0.x + 0.5 * ctrl.x + 0.25 * q1.x),
          y: round(0.25 * q0.y + 0.5 * ctrl.y + 0.25 * q1.y),
        },
      });
    };

    forward.forEach((a, i) => emit(a, fOff[i]!));
    backward.forEach((a, i) => emit(a, bOff[i]!));
  }
  return out;
}

function round(x: number): number {
  return Math.round(x * 100) / 100;
}
