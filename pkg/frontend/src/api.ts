/**
 * Typed client for the workbench HTTP API. All editor traffic goes
 * through this module; nothing else touches the network.
 */

export interface MotionCell {
  shape_class: string;
  plane: string;
  repetition: number;
}

export interface GlyphEntry {
  ref: string;
  name: string;
  status: string;
  taxonomy: string[];
  tags: string[];
  motion: MotionCell | null;
  geometry: string; // inline path text, unit box
  box: [number, number]; // canvas-unit bounding box
}

export interface UserGlyphRecord {
  ref: string;
  tags: string[];
  geometry: string;
  author?: string;
  session?: string;
  created_at?: string;
}

export interface MatchHit {
  ref: string;
  distance: number;
}

export interface CheckResult {
  status: "pass" | "warn" | "fail";
  diagnostics: { rule: string; message: string }[];
  suggestion?: string;
}

export interface Verdict {
  overall: "pass" | "warn" | "fail";
  coherence: CheckResult;
  utility: CheckResult;
  legibility: CheckResult;
}

export interface SubmitResult {
  id: string;
  verdict: Verdict;
  suggestions: MatchHit[];
}

export interface SketchPayload {
  strokes: [number, number][][];
  canvas_w?: number;
  canvas_h?: number;
}

export type ChildrenResult =
  | { kind: "labels"; items: string[] }
  | { kind: "entries"; items: GlyphEntry[] };

/** Surface the editor needs; FakeApi in the tests implements it too. */
export interface WorkbenchApi {
  categories(): Promise<string[]>;
  children(path: string[]): Promise<ChildrenResult>;
  glyph(ref: string): Promise<GlyphEntry>;
  glyphOrNull(ref: string): Promise<GlyphEntry | null>;
  match(sketch: SketchPayload, k: number): Promise<MatchHit[]>;
  saveSign(xml: string): Promise<string>;
  submitUserGlyph(sketch: SketchPayload, tags: string[]): Promise<SubmitResult>;
  listUserGlyphs(): Promise<UserGlyphRecord[]>;
  paletteUserGlyph(ref: string): Promise<UserGlyphRecord>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly diagnostics: unknown[] = [],
  ) {
    super(message);
  }
}

export interface ApiOptions {
  role?: "user" | "researcher";
  session?: string;
  author?: string;
  fetchFn?: typeof fetch;
}

export class ApiClient implements WorkbenchApi {
  private fetchFn: typeof fetch;

  constructor(
    readonly baseUrl: string,
    readonly options: ApiOptions = {},
  ) {
    this.fetchFn = options.fetchFn ?? fetch.bind(globalThis);
  }

  private headers(): Record<string, string> {
    const h: Record<string, string> = { "Content-Type": "application/json" };
    if (this.options.role) h["X-Role"] = this.options.role;
    if (this.options.session) h["X-Session"] = this.options.session;
    if (this.options.author) h["X-Author"] = this.options.author;
    return h;
  }

  private async request<T>(path: string, init: RequestInit = {}): Promise<T> {
    const res = await this.fetchFn(this.baseUrl + path, {
      ...init,
      headers: { ...this.headers(), ...(init.headers ?? {}) },
    });
    const body = await res.json().catch(() => null);
    if (!res.ok) {
      const err = (body ?? {}) as {
        code?: string;
        message?: string;
        diagnostics?: unknown[];
      };
      throw new ApiError(
        res.status,
        err.code ?? "http-error",
        err.message ?? `${res.status} on ${path}`,
        err.diagnostics ?? [],
      );
    }
    return body as T;
  }

  async categories(): Promise<string[]> {
    const body = await this.request<{ categories: string[] }>(
      "/registry/categories",
    );
    return body.categories;
  }

  async children(path: string[]): Promise<ChildrenResult> {
    const query = encodeURIComponent(path.join("/"));
    return this.request<ChildrenResult>(`/registry/children?path=${query}`);
  }

  async glyph(ref: string): Promise<GlyphEntry> {
    return this.request<GlyphEntry>(`/registry/glyph/${ref}`);
  }

  async glyphOrNull(ref: string): Promise<GlyphEntry | null> {
    try {
      return await this.glyph(ref);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) return null;
      throw err;
    }
  }

  async match(sketch: SketchPayload, k: number): Promise<MatchHit[]> {
    const body = await this.request<{ matches: MatchHit[] }>("/match", {
      method: "POST",
      body: JSON.stringify({ sketch, k }),
    });
    return body.matches;
  }

  async saveSign(xml: string): Promise<string> {
    const body = await this.request<{ id: string }>("/signs", {
      method: "POST",
      body: JSON.stringify({ xml }),
    });
    return body.id;
  }

  signSvgUrl(id: string): string {
    return `${this.baseUrl}/signs/${id}.svg`;
  }

  async submitUserGlyph(
    sketch: SketchPayload,
    tags: string[],
  ): Promise<SubmitResult> {
    return this.request<SubmitResult>("/userglyphs", {
      method: "POST",
      body: JSON.stringify({ sketch, tags }),
    });
  }

  async listUserGlyphs(): Promise<UserGlyphRecord[]> {
    const body = await this.request<{ glyphs: UserGlyphRecord[] }>(
      "/userglyphs",
    );
    return body.glyphs;
  }

  async paletteUserGlyph(ref: string): Promise<UserGlyphRecord> {
    return this.request<UserGlyphRecord>(`/userglyphs/${ref}`);
  }
}
