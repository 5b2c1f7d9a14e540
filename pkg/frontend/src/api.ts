/**
 * Backend client. Generation follows latest-wins: a new request aborts the
 * one in flight, so the preview pane never shows a stale result.
 */

import type {
  CatalogDocument,
  CompileOutcome,
  ExampleEntry,
  GenerateOutcome,
  BlockSpan,
  WorkspaceDocument,
} from "./types";

export type FetchLike = typeof fetch;

export class BackendClient {
  private generateController: AbortController | null = null;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  async catalog(): Promise<CatalogDocument> {
    const resp = await this.fetchImpl(`${this.baseUrl}/api/catalog`);
    if (!resp.ok) throw new Error(`catalog fetch failed: HTTP ${resp.status}`);
    return (await resp.json()) as CatalogDocument;
  }

  async examples(): Promise<ExampleEntry[]> {
    const resp = await this.fetchImpl(`${this.baseUrl}/api/examples`);
    if (!resp.ok) throw new Error(`examples fetch failed: HTTP ${resp.status}`);
    return (await resp.json()) as ExampleEntry[];
  }

  /** Generate C for a workspace; aborts any generate still in flight. */
  async generate(workspace: WorkspaceDocument): Promise<GenerateOutcome> {
    this.generateController?.abort();
    const controller = new AbortController();
    this.generateController = controller;
    let resp: Response;
    try {
      resp = await this.fetchImpl(`${this.baseUrl}/api/generate`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(workspace),
        signal: controller.signal,
      });
    } catch (err) {
      if (controller.signal.aborted) return { kind: "cancelled" };
      throw err;
    }
    if (controller.signal.aborted) return { kind: "cancelled" };
    if (resp.status === 422) {
      return { kind: "rejected", rejection: await resp.json() };
    }
    if (!resp.ok) throw new Error(`generate failed: HTTP ${resp.status}`);
    return { kind: "ok", result: await resp.json() };
  }

  async compile(cSource: string, blockMap: BlockSpan[]): Promise<CompileOutcome> {
    const resp = await this.fetchImpl(`${this.baseUrl}/api/compile`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ c_source: cSource, block_map: blockMap }),
    });
    if (resp.status === 422) {
      const body = await resp.json();
      return { kind: "errors", errors: body.errors };
    }
    if (resp.status === 502) {
      const body = await resp.json().catch(() => ({}));
      return {
        kind: "upstream_error",
        message: body.message ?? body.error ?? "compile service unavailable",
      };
    }
    if (!resp.ok) throw new Error(`compile failed: HTTP ${resp.status}`);
    return { kind: "ok", artifact: await resp.json() };
  }

  async simulate(scenario: Record<string, unknown>): Promise<Record<string, unknown>> {
    const resp = await this.fetchImpl(`${this.baseUrl}/api/simulate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(scenario),
    });
    if (!resp.ok) {
      const body = await resp.json().catch(() => ({}));
      throw new Error(`simulate failed: ${body.message ?? resp.status}`);
    }
    return await resp.json();
  }
}
