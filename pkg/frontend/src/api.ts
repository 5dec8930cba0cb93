/**
 * Thin HTTP client for the mutation service. Every call resolves to a
 * parsed StatePayload or throws: ServiceError for an {"error": ...} body
 * (409 blocked mutation, 400 bad request, 404), SchemaError when a 200
 * body does not match the expected shape.
 */

import { parseState, StatePayload } from "./schema.js";

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export interface Client {
  state(): Promise<StatePayload>;
  loadCatalog(name: string, trunc?: number): Promise<StatePayload>;
  loadText(text: string): Promise<StatePayload>;
  mutate(vertex: number): Promise<StatePayload>;
  repmutate(rep: string, vertex: number): Promise<StatePayload>;
  undo(): Promise<StatePayload>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<Response>;

export function httpClient(base: string, fetchFn: FetchLike = fetch): Client {
  const root = base.replace(/\/$/, "");

  async function call(
    method: "GET" | "POST",
    path: string,
    body?: unknown,
  ): Promise<StatePayload> {
    const init =
      method === "GET"
        ? { method }
        : {
            method,
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body ?? {}),
          };
    const resp = await fetchFn(root + path, init);
    const data: unknown = await resp.json();
    if (!resp.ok) {
      const msg =
        typeof data === "object" && data !== null && "error" in data
          ? String((data as { error: unknown }).error)
          : `service returned ${resp.status}`;
      throw new ServiceError(resp.status, msg);
    }
    return parseState(data);
  }

  return {
    state: () => call("GET", "/state"),
    loadCatalog: (name, trunc) =>
      call("POST", "/load", trunc === undefined ? { catalog: name } : { catalog: name, trunc }),
    loadText: (text) => call("POST", "/load", { text }),
    mutate: (vertex) => call("POST", "/mutate", { vertex }),
    repmutate: (rep, vertex) => call("POST", "/repmutate", { rep, vertex }),
    undo: () => call("POST", "/undo"),
  };
}
