// Mirrors the backend JSON schemas in src/larder/schemas/.

export interface NetworkNode {
  id: string;
  label: string;
  degree: number;
  in_base: boolean;
}

export interface NetworkLink {
  source: string;
  target: string;
  weight: number;
}

export interface NetworkDocument {
  nodes: NetworkNode[];
  links: NetworkLink[];
  clusters: string[][];
}

export interface RecommendedRecipe {
  recipe_id: string;
  title: string;
  ingredients: string[];
  labels: Record<string, string[]>;
  matched_consequents: string[];
  matched_combination_size: number;
  ingredient_count: number;
}

export interface RecommendResponse {
  recommendations: RecommendedRecipe[];
  network: NetworkDocument;
  unresolved: string[];
}

export interface TaxonomyPrediction {
  probabilities: Record<string, number>;
  assigned: string[];
}

export interface ClassifyResponse {
  per_taxonomy: Record<string, TaxonomyPrediction>;
  unresolved: string[];
}

export interface IngredientMatch {
  id: string;
  name: string;
}

export interface IngredientsResponse {
  matches: IngredientMatch[];
}

export interface HealthResponse {
  status: "loading" | "ready";
  artifact_manifest_hash: string | null;
  counts: { recipes: number; rules: number; ingredients: number } | null;
}

export interface ApiErrorBody {
  code: "bad_request" | "unknown_ingredient" | "not_ready" | "internal";
  message: string;
  details?: Record<string, unknown>;
}
