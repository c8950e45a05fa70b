import { ApiClient } from "./api";
import { renderNetwork } from "./graph";
import { SessionStore, type SessionState } from "./store";
import type { RecommendedRecipe } from "./types";

const API_BASE = (import.meta as { env?: Record<string, string> }).env?.VITE_API_BASE ?? "";

const api = new ApiClient(API_BASE);
const store = new SessionStore(api);

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

const input = el<HTMLInputElement>("ingredient-input");
const suggestions = el<HTMLUListElement>("suggestions");
const includedChips = el<HTMLDivElement>("included-chips");
const excludedChips = el<HTMLDivElement>("excluded-chips");
const excludedRow = el<HTMLDivElement>("excluded-row");
const recipeList = el<HTMLDivElement>("recipe-list");
const statusLine = el<HTMLDivElement>("status-line");
const classifyPanel = el<HTMLDivElement>("classify-panel");
const runButton = el<HTMLButtonElement>("run-button");
const svg = document.querySelector<SVGSVGElement>("#network");
if (!svg) throw new Error("missing #network svg");

let debounceTimer: number | undefined;

input.addEventListener("input", () => {
  window.clearTimeout(debounceTimer);
  const prefix = input.value.trim();
  if (!prefix) {
    suggestions.replaceChildren();
    return;
  }
  debounceTimer = window.setTimeout(async () => {
    try {
      const { matches } = await api.suggest(prefix);
      suggestions.replaceChildren(
        ...matches.map((m) => {
          const item = document.createElement("li");
          item.textContent = m.name;
          item.addEventListener("click", () => {
            store.addIngredient(m.name);
            input.value = "";
            suggestions.replaceChildren();
            input.focus();
          });
          return item;
        }),
      );
    } catch {
      suggestions.replaceChildren(); // autocomplete failing is not fatal
    }
  }, 150);
});

input.addEventListener("keydown", (event) => {
  if (event.key === "Enter" && input.value.trim()) {
    store.addIngredient(input.value);
    input.value = "";
    suggestions.replaceChildren();
  }
});

runButton.addEventListener("click", () => {
  void store.runRecommendation();
  void store.runClassification();
});

function chip(name: string, onRemove: () => void, kind: "included" | "excluded") {
  const span = document.createElement("span");
  span.className = `chip ${kind}`;
  const text = document.createElement("span");
  text.textContent = name;
  const button = document.createElement("button");
  button.type = "button";
  button.textContent = "×";
  button.setAttribute("aria-label", `Remove ${name}`);
  button.addEventListener("click", onRemove);
  span.append(text, button);
  return span;
}

function renderRecipe(rec: RecommendedRecipe): HTMLElement {
  const card = document.createElement("article");
  card.className = "recipe-card";

  const heading = document.createElement("h3");
  heading.textContent = rec.title;
  card.appendChild(heading);

  const matched = document.createElement("div");
  matched.className = "badges";
  for (const name of rec.matched_consequents) {
    const badge = document.createElement("span");
    badge.className = "badge matched";
    badge.textContent = name;
    badge.title = "rule-suggested ingredient present in this recipe";
    matched.appendChild(badge);
  }
  card.appendChild(matched);

  const ingredients = document.createElement("p");
  ingredients.className = "ingredients";
  ingredients.textContent = rec.ingredients.join(", ");
  card.appendChild(ingredients);

  const labels = document.createElement("p");
  labels.className = "labels";
  labels.textContent = Object.entries(rec.labels)
    .map(([tax, classes]) => `${tax}: ${classes.join(", ")}`)
    .join(" | ");
  card.appendChild(labels);
  return card;
}

function render(state: SessionState): void {
  includedChips.replaceChildren(
    ...state.included.map((name) =>
      chip(name, () => store.removeIngredient(name), "included"),
    ),
  );
  excludedChips.replaceChildren(
    ...state.excluded.map((name) =>
      chip(name, () => void store.unexcludeAndRequery(name), "excluded"),
    ),
  );
  excludedRow.hidden = state.excluded.length === 0;
  runButton.disabled = state.status === "loading" || state.included.length === 0;
  input.disabled = state.status === "loading";

  if (state.status === "loading") {
    statusLine.textContent = "loading…";
    statusLine.className = "status loading";
  } else if (state.status === "error") {
    statusLine.textContent = state.error ?? "something went wrong";
    statusLine.className = "status error";
  } else {
    statusLine.textContent = "";
    statusLine.className = "status";
  }

  const response = state.lastResponse;
  if (response) {
    if (response.recommendations.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "No recipes match this ingredient set.";
      recipeList.replaceChildren(empty);
    } else {
      // rendered order is exactly the response order
      recipeList.replaceChildren(...response.recommendations.map(renderRecipe));
    }
    if (response.unresolved.length > 0) {
      const warn = document.createElement("p");
      warn.className = "unresolved";
      warn.textContent = `Not recognized: ${response.unresolved.join(", ")}`;
      recipeList.prepend(warn);
    }
    renderNetwork(svg!, response.network, {
      onExclude: (id) => void store.excludeFromNetwork(id),
      onBaseClick: () => {
        statusLine.textContent = "Base ingredients cannot be excluded.";
        statusLine.className = "status hint";
      },
    });
  }

  const classification = state.classification;
  if (classification) {
    classifyPanel.replaceChildren(
      ...Object.entries(classification.per_taxonomy).map(([tax, info]) => {
        const group = document.createElement("div");
        group.className = "badge-group";
        const name = document.createElement("h4");
        name.textContent = tax;
        group.appendChild(name);
        for (const cls of info.assigned) {
          const badge = document.createElement("span");
          const probability = info.probabilities[cls] ?? 0;
          badge.className = probability < 0.3 ? "badge low-confidence" : "badge";
          badge.textContent = cls;
          badge.title = `p = ${probability.toFixed(3)}`;
          group.appendChild(badge);
        }
        return group;
      }),
    );
  }
}

store.subscribe(render);
render(store.getState());
