/** A fetch stub that records every outbound request for auditing. */

export interface RecordedRequest {
  url: string;
  method: string;
  body: string;
}

export type Responder = (req: RecordedRequest) => { status: number; json: unknown } | undefined;

export class RecordingFetch {
  requests: RecordedRequest[] = [];

  constructor(private readonly responder: Responder) {}

  get fetch(): typeof fetch {
    return (async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = typeof input === "string" ? input : input.toString();
      const request: RecordedRequest = {
        url,
        method: init?.method ?? "GET",
        body: typeof init?.body === "string" ? init.body : "",
      };
      this.requests.push(request);
      if (init?.signal?.aborted) {
        throw new DOMException("aborted", "AbortError");
      }
      const scripted = this.responder(request);
      if (!scripted) {
        return new Response(JSON.stringify({ error: "not scripted" }), { status: 404 });
      }
      return new Response(JSON.stringify(scripted.json), {
        status: scripted.status,
        headers: { "Content-Type": "application/json" },
      });
    }) as typeof fetch;
  }

  allBodies(): string {
    return this.requests.map((r) => `${r.url} ${r.body}`).join("\n");
  }
}
