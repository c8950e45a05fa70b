import { ApiError, type Api } from "./api";
import type { ClassifyResponse, RecommendResponse } from "./types";

export type Status = "idle" | "loading" | "error";

export interface SessionState {
  included: string[];
  excluded: string[];
  lastResponse: RecommendResponse | null;
  classification: ClassifyResponse | null;
  status: Status;
  error: string | null;
}

function normalize(name: string): string {
  return name.trim().toLowerCase().replace(/\s+/g, " ");
}

/**
 * All UI state and transitions. Included and excluded ingredient lists are
 * kept disjoint by construction and re-checked before every request; a new
 * request supersedes any in-flight one (last write wins).
 */
export class SessionStore {
  private state: SessionState = {
    included: [],
    excluded: [],
    lastResponse: null,
    classification: null,
    status: "idle",
    error: null,
  };
  private listeners = new Set<(state: SessionState) => void>();
  private requestSeq = 0;

  constructor(private readonly api: Api) {}

  getState(): SessionState {
    return this.state;
  }

  subscribe(listener: (state: SessionState) => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private setState(patch: Partial<SessionState>): void {
    this.state = { ...this.state, ...patch };
    this.assertDisjoint();
    for (const listener of this.listeners) listener(this.state);
  }

  /** The state-level guard: included and excluded may never overlap. */
  assertDisjoint(): void {
    const overlap = this.state.included.filter((n) => this.state.excluded.includes(n));
    if (overlap.length > 0) {
      throw new Error(`state invariant violated: ${overlap.join(", ")} in both lists`);
    }
  }

  /** Add an ingredient chip. Duplicates coalesce; an excluded name moves back in. */
  addIngredient(raw: string): boolean {
    const name = normalize(raw);
    if (!name) return false;
    if (this.state.included.includes(name)) return false;
    this.setState({
      included: [...this.state.included, name],
      excluded: this.state.excluded.filter((n) => n !== name),
    });
    return true;
  }

  removeIngredient(raw: string): void {
    const name = normalize(raw);
    this.setState({ included: this.state.included.filter((n) => n !== name) });
  }

  /**
   * Exclude an ingredient (network-node click or chip). Base ingredients
   * cannot be excluded: returns false and changes nothing, so the caller
   * can show the explanatory tooltip instead.
   */
  excludeIngredient(raw: string): boolean {
    const name = normalize(raw);
    if (!name || this.state.included.includes(name)) return false;
    if (!this.state.excluded.includes(name)) {
      this.setState({ excluded: [...this.state.excluded, name] });
    }
    return true;
  }

  unexcludeIngredient(raw: string): void {
    const name = normalize(raw);
    this.setState({ excluded: this.state.excluded.filter((n) => n !== name) });
  }

  /** Click on a network node: exclude it and immediately re-query. */
  async excludeFromNetwork(nodeId: string): Promise<boolean> {
    if (!this.excludeIngredient(nodeId)) return false;
    await this.runRecommendation();
    return true;
  }

  /** Chip removal on an excluded ingredient: un-exclude and re-query. */
  async unexcludeAndRequery(name: string): Promise<void> {
    this.unexcludeIngredient(name);
    if (this.state.lastResponse) await this.runRecommendation();
  }

  async runRecommendation(): Promise<void> {
    if (this.state.included.length === 0) return;
    this.assertDisjoint();
    const seq = ++this.requestSeq;
    this.setState({ status: "loading", error: null });
    try {
      const response = await this.api.recommend(
        [...this.state.included],
        [...this.state.excluded],
      );
      if (seq !== this.requestSeq) return; // a newer request superseded this one
      this.setState({ status: "idle", lastResponse: response });
    } catch (err) {
      if (seq !== this.requestSeq) return;
      this.setState({ status: "error", error: describeError(err) });
    }
  }

  async runClassification(): Promise<void> {
    if (this.state.included.length === 0) return;
    try {
      const response = await this.api.classify([...this.state.included]);
      this.setState({ classification: response });
    } catch (err) {
      this.setState({ status: "error", error: describeError(err) });
    }
  }
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  return String(err);
}
