// Typed client for the retrieval service. The UI never computes statistics
// itself; everything numeric comes from these endpoints.

export type Method = "pm1" | "pm2" | "pm3" | "pm4" | "pm5";
export type Scope = "group" | "corpus";

export interface ImageSummary {
  name: string;
  width: number;
  height: number;
  threshold: number;
  thumbnail_url: string;
}

export interface FeatureVector {
  name: string;
  width: number;
  height: number;
  threshold: number;
  mean_r: number;
  mean_g: number;
  mean_b: number;
  median_r: number;
  median_g: number;
  median_b: number;
  std_r: number;
  std_g: number;
  std_b: number;
}

export interface QueryRequest {
  query_name: string;
  method: Method;
  channels: string;
  df: number;
  scope: Scope;
  top: number;
}

export interface RankedResult {
  name: string;
  score: number;
  rank: number;
  thumbnail_url: string;
}

export interface QueryResponse {
  query: FeatureVector;
  results: RankedResult[];
  excluded_count: number;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async getJson<T>(path: string): Promise<T> {
    const resp = await fetch(this.baseUrl + path);
    if (!resp.ok) {
      throw new Error(`GET ${path} failed: ${resp.status}`);
    }
    return resp.json() as Promise<T>;
  }

  listImages(): Promise<ImageSummary[]> {
    return this.getJson<ImageSummary[]>("/api/images");
  }

  imageFeatures(name: string): Promise<FeatureVector> {
    return this.getJson<FeatureVector>(
      `/api/images/${encodeURIComponent(name)}/features`,
    );
  }

  async runQuery(req: QueryRequest, signal?: AbortSignal): Promise<QueryResponse> {
    const resp = await fetch(this.baseUrl + "/api/query", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(req),
      signal,
    });
    if (!resp.ok) {
      const body = await resp.json().catch(() => ({ error: `HTTP ${resp.status}` }));
      throw new Error((body as { error?: string }).error ?? `HTTP ${resp.status}`);
    }
    return resp.json() as Promise<QueryResponse>;
  }

  resolveUrl(relative: string): string {
    return this.baseUrl + relative;
  }
}
