/**
 * Pure view: render(root, view) rebuilds the page from scratch on every
 * call, so the DOM is a function of the last accepted payload plus the
 * small bits of UI state (pending flag, toast, selection). No incremental
 * updates, no local mutation of quiver data.
 */

import { arrowGeometry, circularLayout } from "./layout.js";
import { ArrowJson, StatePayload } from "./schema.js";

export interface ViewState {
  state: StatePayload | null;
  /** Fatal render problem (schema mismatch): banner only, nothing else. */
  error: string | null;
  /** Transient service complaint; state is unchanged underneath it. */
  toast: string | null;
  pending: boolean;
  /** Highlighted representation id, display only. */
  selection: string | null;
}

export const CATALOG_NAMES = [
  "four_cycle",
  "cyclic_triangle",
  "cyclic_triangle_sq",
  "double_triangle",
  "a3",
  "two_arrows",
  "grid_1",
  "grid_2",
];

const SVG = "http://www.w3.org/2000/svg";
const VIEW_SIZE = 420;
const VERTEX_R = 16;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Arrows whose reverse is also present, i.e. the edges of 2-cycles. */
function twoCycleArrows(arrows: ArrowJson[]): Set<string> {
  const byPair = new Set(arrows.map((a) => `${a.tail}>${a.head}`));
  return new Set(
    arrows
      .filter((a) => a.tail !== a.head && byPair.has(`${a.head}>${a.tail}`))
      .map((a) => a.name),
  );
}

function toolbar(view: ViewState): HTMLElement {
  const bar = el("div", "toolbar");
  const select = document.createElement("select");
  select.setAttribute("data-role", "catalog");
  for (const name of CATALOG_NAMES) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    select.append(opt);
  }
  const trunc = document.createElement("input");
  trunc.setAttribute("data-role", "trunc");
  trunc.type = "number";
  trunc.min = "1";
  trunc.value = String(view.state?.qp.trunc ?? 6);

  const load = el("button", "", "load");
  load.setAttribute("data-action", "load");
  load.disabled = view.pending;

  const undo = el("button", "", "undo");
  undo.setAttribute("data-action", "undo");
  undo.disabled = view.pending || (view.state?.history.length ?? 0) === 0;

  bar.append(select, trunc, load, undo);
  return bar;
}

function quiverSvg(view: ViewState): SVGSVGElement {
  const svg = document.createElementNS(SVG, "svg");
  svg.setAttribute("class", "quiver");
  svg.setAttribute("viewBox", `0 0 ${VIEW_SIZE} ${VIEW_SIZE}`);

  const defs = document.createElementNS(SVG, "defs");
  const marker = document.createElementNS(SVG, "marker");
  marker.setAttribute("id", "head");
  marker.setAttribute("orient", "auto");
  marker.setAttribute("markerWidth", "8");
  marker.setAttribute("markerHeight", "8");
  marker.setAttribute("refX", "6");
  marker.setAttribute("refY", "3");
  const tip = document.createElementNS(SVG, "path");
  tip.setAttribute("d", "M 0 0 L 6 3 L 0 6 z");
  marker.append(tip);
  defs.append(marker);
  svg.append(defs);

  const state = view.state;
  if (!state) return svg;

  const pos = circularLayout(
    state.qp.vertices,
    VIEW_SIZE / 2,
    VIEW_SIZE / 2,
    VIEW_SIZE / 2 - 3 * VERTEX_R,
  );
  const doubled = twoCycleArrows(state.qp.arrows);
  const blocked = new Set(state.qp.two_cycle_vertices);

  for (const ap of arrowGeometry(state.qp.arrows, pos, VERTEX_R)) {
    const path = document.createElementNS(SVG, "path");
    path.setAttribute(
      "class",
      doubled.has(ap.name) ? "arrow two-cycle" : "arrow",
    );
    path.setAttribute("d", ap.d);
    path.setAttribute("fill", "none");
    path.setAttribute("marker-end", "url(#head)");
    path.setAttribute("data-arrow", ap.name);
    svg.append(path);

    const label = document.createElementNS(SVG, "text");
    label.setAttribute("class", "arrow-label");
    label.setAttribute("x", String(ap.label.x));
    label.setAttribute("y", String(ap.label.y));
    label.setAttribute("dy", "-4");
    label.textContent = ap.name;
    svg.append(label);
  }

  for (const v of state.qp.vertices) {
    const p = pos.get(v)!;
    const g = document.createElementNS(SVG, "g");
    const disabled = blocked.has(v) || view.pending;
    g.setAttribute("class", disabled ? "vertex disabled" : "vertex");
    g.setAttribute("data-vertex", String(v));
    const circle = document.createElementNS(SVG, "circle");
    circle.setAttribute("cx", String(p.x));
    circle.setAttribute("cy", String(p.y));
    circle.setAttribute("r", String(VERTEX_R));
    const label = document.createElementNS(SVG, "text");
    label.setAttribute("x", String(p.x));
    label.setAttribute("y", String(p.y));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("dominant-baseline", "central");
    label.textContent = String(v);
    g.append(circle, label);
    svg.append(g);
  }
  return svg;
}

function potentialPanel(state: StatePayload): HTMLElement {
  const panel = el("section", "potential");
  panel.append(el("h2", "", "potential"));
  const terms = state.qp.potential.terms;
  if (terms.length === 0) {
    panel.append(el("p", "empty", "0"));
    return panel;
  }
  const list = el("ul");
  for (const t of terms) {
    list.append(el("li", "term", `${t.coeff} * ${t.arrows.join(".")}`));
  }
  panel.append(list);
  return panel;
}

function bMatrixPanel(state: StatePayload): HTMLElement {
  const panel = el("section", "b-matrix");
  panel.append(el("h2", "", "B-matrix"));
  const table = el("table");
  const head = el("tr");
  head.append(el("th"));
  for (const v of state.qp.vertices) head.append(el("th", "", String(v)));
  table.append(head);
  state.qp.b_matrix.forEach((row, i) => {
    const tr = el("tr");
    tr.append(el("th", "", String(state.qp.vertices[i])));
    for (const x of row) tr.append(el("td", "", String(x)));
    table.append(tr);
  });
  panel.append(table);
  return panel;
}

function repsPanel(state: StatePayload, selection: string | null): HTMLElement {
  const panel = el("section", "reps");
  panel.append(el("h2", "", "representations"));
  if (state.reps.length === 0) {
    panel.append(el("p", "empty", "none"));
    return panel;
  }
  const list = el("ul");
  for (const r of state.reps) {
    const item = el(
      "li",
      r.id === selection ? "rep selected" : "rep",
      `${r.id}: dim (${r.dims.join(", ")}), dec (${r.dec.join(", ")})`,
    );
    item.setAttribute("data-rep", r.id);
    list.append(item);
  }
  panel.append(list);
  return panel;
}

function historyPanel(state: StatePayload): HTMLElement {
  const panel = el("section", "history");
  panel.append(el("h2", "", "history"));
  const list = el("ol");
  for (const h of state.history) {
    const rep = h.rep === undefined ? "" : ` ${h.rep}`;
    const note = h.degenerate ? " (degenerate)" : "";
    list.append(el("li", "", `${h.op}${rep} at ${h.vertex}${note}`));
  }
  panel.append(list);
  return panel;
}

export function render(root: HTMLElement, view: ViewState): void {
  root.textContent = "";
  if (view.error !== null) {
    const banner = el("div", "error-banner", view.error);
    root.append(banner);
    return;
  }
  root.append(toolbar(view));
  if (view.state) {
    root.append(
      quiverSvg(view),
      potentialPanel(view.state),
      bMatrixPanel(view.state),
      repsPanel(view.state, view.selection),
      historyPanel(view.state),
    );
  }
  if (view.toast !== null) {
    root.append(el("div", "toast", view.toast));
  }
}
