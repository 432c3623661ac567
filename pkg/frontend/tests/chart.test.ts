import { describe, expect, it } from "vitest";

import { chartModel, renderChart } from "../src/chart.js";
import type { WireBounds, WPoint } from "../src/types.js";

const BOUNDS: WireBounds = { lcb: "-inf", ucb: 1.9713071, l1: null, l2: 5.64 };

function points(): WPoint[] {
  return [
    { m: 1, w1: 0.69, w2: 0.0 },
    { m: 2, w1: 0.69, w2: -0.05 },
    { m: 3, w1: 0.64, w2: -0.05 },
    { m: 4, w1: 1.33, w2: -0.05 },
  ];
}

describe("chartModel", () => {
  it("plots only steps from the completed blocked pair onwards", () => {
    const model = chartModel(points(), BOUNDS, 10);
    expect(model.series1.split(" ")).toHaveLength(3); // m = 2, 3, 4
  });

  it("renders a sentinel bound as absent and a finite one as a line", () => {
    const model = chartModel(points(), BOUNDS, 10);
    expect(model.lcbY).toBeNull();
    expect(model.ucbY).not.toBeNull();
  });

  it("spans the x axis from 2 to the budget", () => {
    const model = chartModel(points(), BOUNDS, 10);
    expect(model.xTicks[0].label).toBe("2");
    expect(model.xTicks[model.xTicks.length - 1].label).toBe("10");
    const xs = model.series1.split(" ").map((pair) => Number(pair.split(",")[0]));
    expect(xs[0]).toBe(model.xTicks[0].x);
    expect(Math.max(...xs)).toBeLessThan(model.width);
  });

  it("keeps the finite bound inside the y range", () => {
    const model = chartModel(points(), BOUNDS, 10);
    const ys = model.series1.split(" ").map((pair) => Number(pair.split(",")[1]));
    expect(model.ucbY as number).toBeLessThan(Math.min(...ys)); // higher W = smaller y
  });

  it("copes with an empty series", () => {
    const model = chartModel([], BOUNDS, 10);
    expect(model.series1).toBe("");
    expect(model.ucbY).not.toBeNull();
  });
});

describe("renderChart", () => {
  it("writes polylines and bound lines into the container", () => {
    const host = document.createElement("div");
    renderChart(host, chartModel(points(), BOUNDS, 10));
    expect(host.querySelectorAll("polyline")).toHaveLength(2);
    expect(host.querySelectorAll("line.bound")).toHaveLength(1);
    expect(host.querySelector("svg")?.getAttribute("viewBox")).toContain("640");
  });
});
