import type {
  ApiErrorBody,
  ClassifyResponse,
  HealthResponse,
  IngredientsResponse,
  RecommendResponse,
} from "./types";

export class ApiError extends Error {
  constructor(
    public readonly code: ApiErrorBody["code"],
    message: string,
    public readonly details?: Record<string, unknown>,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** What the session store needs from the backend; the tests substitute a fake. */
export interface Api {
  recommend(ingredients: string[], exclude: string[]): Promise<RecommendResponse>;
  classify(ingredients: string[]): Promise<ClassifyResponse>;
  suggest(prefix: string): Promise<IngredientsResponse>;
}

export class ApiClient implements Api {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError("internal", `service unreachable: ${String(err)}`);
    }
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const error = (body ?? {}) as Partial<ApiErrorBody>;
      throw new ApiError(
        error.code ?? "internal",
        error.message ?? `request failed with status ${response.status}`,
        error.details,
      );
    }
    return body as T;
  }

  recommend(ingredients: string[], exclude: string[]): Promise<RecommendResponse> {
    return this.request<RecommendResponse>("/api/recommend", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ ingredients, exclude }),
    });
  }

  classify(ingredients: string[]): Promise<ClassifyResponse> {
    return this.request<ClassifyResponse>("/api/classify", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ ingredients }),
    });
  }

  suggest(prefix: string): Promise<IngredientsResponse> {
    const query = prefix ? `?prefix=${encodeURIComponent(prefix)}` : "";
    return this.request<IngredientsResponse>(`/api/ingredients${query}`);
  }

  health(): Promise<HealthResponse> {
    return this.request<HealthResponse>("/api/health");
  }
}
