// @vitest-environment jsdom

import { describe, expect, it } from "vitest";

import { renderNetwork } from "../src/graph";
import type { RecommendResponse } from "../src/types";
import { fixture } from "./fake_api";

const network = fixture<RecommendResponse>("recommend_garlic_basil.json").network;

function makeSvg(): SVGSVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("width", "640");
  svg.setAttribute("height", "440");
  document.body.appendChild(svg);
  return svg;
}

describe("network renderer", () => {
  it("renders exactly the nodes of the response document", () => {
    const svg = makeSvg();
    renderNetwork(svg, network, { onExclude: () => {} });
    const rendered = [...svg.querySelectorAll(".node")].map((g) =>
      g.getAttribute("data-id"),
    );
    expect(new Set(rendered)).toEqual(new Set(network.nodes.map((n) => n.id)));
    expect(rendered.length).toBe(network.nodes.length);
  });

  it("marks base nodes distinctly", () => {
    const svg = makeSvg();
    renderNetwork(svg, network, { onExclude: () => {} });
    const baseIds = new Set(network.nodes.filter((n) => n.in_base).map((n) => n.id));
    expect(baseIds).toEqual(new Set(["garlic", "basil"]));
    for (const g of svg.querySelectorAll(".node")) {
      const id = g.getAttribute("data-id")!;
      expect(g.classList.contains("base")).toBe(baseIds.has(id));
    }
  });

  it("clicking a non-base node fires the exclude handler", () => {
    const svg = makeSvg();
    const excluded: string[] = [];
    const baseClicks: string[] = [];
    renderNetwork(svg, network, {
      onExclude: (id) => excluded.push(id),
      onBaseClick: (id) => baseClicks.push(id),
    });
    const onionNode = svg.querySelector<SVGGElement>('.node[data-id="onions"]');
    onionNode!.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(excluded).toEqual(["onions"]);
    expect(baseClicks).toEqual([]);
  });

  it("clicking a base node fires the tooltip handler, not exclusion", () => {
    const svg = makeSvg();
    const excluded: string[] = [];
    const baseClicks: string[] = [];
    renderNetwork(svg, network, {
      onExclude: (id) => excluded.push(id),
      onBaseClick: (id) => baseClicks.push(id),
    });
    const garlicNode = svg.querySelector<SVGGElement>('.node[data-id="garlic"]');
    garlicNode!.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(excluded).toEqual([]);
    expect(baseClicks).toEqual(["garlic"]);
  });

  it("renders one line per link and re-renders cleanly", () => {
    const svg = makeSvg();
    renderNetwork(svg, network, { onExclude: () => {} });
    expect(svg.querySelectorAll("line").length).toBe(network.links.length);
    renderNetwork(svg, network, { onExclude: () => {} });
    expect(svg.querySelectorAll(".node").length).toBe(network.nodes.length);
    expect(svg.querySelectorAll("line").length).toBe(network.links.length);
  });
});
