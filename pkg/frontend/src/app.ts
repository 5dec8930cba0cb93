/**
 * Controller wiring the service client to the pure renderer.
 *
 * One request in flight at a time; clicks while pending are dropped, not
 * queued. A service complaint (4xx/409) becomes a toast and leaves the
 * last good state on screen; a payload that fails schema validation
 * replaces the page with an error banner.
 */

import { Client, ServiceError } from "./api.js";
import { render, ViewState } from "./render.js";
import { SchemaError, StatePayload } from "./schema.js";

export class ExplorerApp {
  readonly view: ViewState = {
    state: null,
    error: null,
    toast: null,
    pending: false,
    selection: null,
  };
  private inflight: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly client: Client,
  ) {
    root.addEventListener("click", (ev) => this.onClick(ev));
    render(root, this.view);
  }

  /** Resolves once the current request (if any) has been applied. */
  settle(): Promise<void> {
    return this.inflight;
  }

  private onClick(ev: Event): void {
    const target = ev.target as Element | null;
    if (!target) return;
    const vertex = target.closest("[data-vertex]");
    if (vertex) {
      this.clickVertex(Number(vertex.getAttribute("data-vertex")));
      return;
    }
    const rep = target.closest("[data-rep]");
    if (rep) {
      const id = rep.getAttribute("data-rep")!;
      this.view.selection = this.view.selection === id ? null : id;
      render(this.root, this.view);
      return;
    }
    const action = target.closest("[data-action]")?.getAttribute("data-action");
    if (action === "undo") this.undo();
    else if (action === "load") this.loadFromToolbar();
  }

  private loadFromToolbar(): void {
    const select = this.root.querySelector<HTMLSelectElement>(
      "[data-role=catalog]",
    );
    const trunc = this.root.querySelector<HTMLInputElement>("[data-role=trunc]");
    if (!select) return;
    const n = trunc && trunc.value !== "" ? Number(trunc.value) : undefined;
    this.loadCatalog(select.value, n);
  }

  loadCatalog(name: string, trunc?: number): Promise<void> {
    return this.transition(() => this.client.loadCatalog(name, trunc));
  }

  loadText(text: string): Promise<void> {
    return this.transition(() => this.client.loadText(text));
  }

  refresh(): Promise<void> {
    return this.transition(() => this.client.state());
  }

  undo(): Promise<void> {
    return this.transition(() => this.client.undo());
  }

  clickVertex(v: number): Promise<void> {
    const state = this.view.state;
    // disabled vertices never reach the service
    if (!state || state.qp.two_cycle_vertices.includes(v)) {
      return Promise.resolve();
    }
    return this.transition(() => this.client.mutate(v));
  }

  private transition(fn: () => Promise<StatePayload>): Promise<void> {
    if (this.view.pending) return Promise.resolve();
    this.view.pending = true;
    render(this.root, this.view);
    const task = (async () => {
      try {
        const next = await fn();
        this.view.state = next;
        this.view.toast = null;
        this.view.error = null;
      } catch (e) {
        if (e instanceof ServiceError) {
          this.view.toast = e.message;
        } else if (e instanceof SchemaError) {
          this.view.error = e.message;
        } else {
          this.view.toast = e instanceof Error ? e.message : String(e);
        }
      } finally {
        this.view.pending = false;
        render(this.root, this.view);
      }
    })();
    this.inflight = task;
    return task;
  }
}
