/** Typed client for the annotation service. The UI computes nothing
 * semantic itself: statuses, verdicts, derivations and boxes all arrive
 * through these calls. */

export interface DocumentSummary {
  part: string;
  doc: number;
  languages: string[];
  gold_designated: boolean;
}

export interface LayerMeta {
  status: string;
  exists: boolean;
}

export interface ProjectionSentence {
  status: string;
  reason: string;
  alignment: [number, number][];
  notes: string[];
}

export interface ProjectionRecord {
  source_lang: string;
  target_lang: string;
  sentences: ProjectionSentence[];
}

export interface DocumentInfo {
  part: string;
  doc: number;
  gold_designated: boolean;
  languages: string[];
  raw: Record<string, string>;
  layers: Record<string, Record<string, LayerMeta>>;
  projections: Record<string, ProjectionRecord>;
}

export interface LayerPayload {
  lang: string;
  layer: string;
  status: string;
  bows: number;
  etag: string;
  values?: (string | null)[];
  labels?: string;
  text?: string;
}

export interface BowRequest {
  part: string;
  doc: number;
  lang: string;
  layer: string;
  position: number;
  value: unknown;
  annotator: string;
}

export interface ConflictInfo {
  id: string;
  part: string;
  doc: number;
  lang: string;
  layer: string;
  position: number;
  gold: unknown;
  new: unknown;
  state: string;
  kept: unknown;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function expectOk(response: Response): Promise<Response> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      /* no JSON body */
    }
    throw new ApiError(response.status, detail);
  }
  return response;
}

export class ApiClient {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return this.base + path;
  }

  async listDocuments(part?: string): Promise<DocumentSummary[]> {
    const q = part ? `?part=${encodeURIComponent(part)}` : "";
    const res = await expectOk(await fetch(this.url(`/documents${q}`)));
    return (await res.json()).documents;
  }

  async document(part: string, doc: number): Promise<DocumentInfo> {
    const res = await expectOk(await fetch(this.url(`/documents/${part}/${doc}`)));
    return await res.json();
  }

  async layer(part: string, doc: number, lang: string,
              layer: string): Promise<LayerPayload> {
    const res = await expectOk(
      await fetch(this.url(`/documents/${part}/${doc}/${lang}/layers/${layer}`)));
    return await res.json();
  }

  /** Plain-text read-only views (derivation s-expressions, token table). */
  async layerText(part: string, doc: number, lang: string,
                  layer: "deriv" | "tokens"): Promise<string | null> {
    const res = await fetch(
      this.url(`/documents/${part}/${doc}/${lang}/layers/${layer}`));
    if (res.status === 404) return null;
    await expectOk(res);
    return await res.text();
  }

  async postBow(bow: BowRequest, etag?: string):
      Promise<{ status: string; etag: string }> {
    const headers: Record<string, string> = {
      "Content-Type": "application/json",
    };
    if (etag) headers["If-Match"] = etag;
    const res = await expectOk(await fetch(this.url(`/bows`), {
      method: "POST",
      headers,
      body: JSON.stringify(bow),
    }));
    return await res.json();
  }

  async conflicts(state?: string): Promise<ConflictInfo[]> {
    const q = state ? `?state=${encodeURIComponent(state)}` : "";
    const res = await expectOk(await fetch(this.url(`/conflicts${q}`)));
    return (await res.json()).conflicts;
  }

  async resolveConflict(id: string, kept: unknown, annotator: string):
      Promise<{ state: string; status: string }> {
    const res = await expectOk(
      await fetch(this.url(`/conflicts/${encodeURIComponent(id)}/resolve`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ kept, annotator }),
      }));
    return await res.json();
  }

  async reannotate(part: string, doc: number, lang: string):
      Promise<ConflictInfo[]> {
    const res = await expectOk(await fetch(
      this.url(`/documents/${part}/${doc}/${lang}/reannotate`),
      { method: "POST" }));
    return (await res.json()).conflicts;
  }
}
