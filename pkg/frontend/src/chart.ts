// W trajectory chart: scaling model plus SVG rendering. Pure functions so
// the geometry is unit-testable without a DOM.

import type { WireBounds, WPoint } from "./types.js";

export interface ChartModel {
  width: number;
  height: number;
  series1: string; // polyline points for W1
  series2: string; // polyline points for W2
  lcbY: number | null; // absent when the bound is a sentinel
  ucbY: number | null;
  zeroY: number | null;
  xTicks: { x: number; label: string }[];
  yTicks: { y: number; label: string }[];
}

const MARGIN = { left: 46, right: 12, top: 10, bottom: 24 };

export function chartModel(
  points: WPoint[],
  bounds: WireBounds,
  n: number,
  width = 640,
  height = 280,
): ChartModel {
  // the trajectory is defined from the completed blocked pair onwards
  const visible = points.filter((p) => p.m >= 2);
  const lcb = bounds.lcb === "-inf" ? null : bounds.lcb;
  const ucb = bounds.ucb === "+inf" ? null : bounds.ucb;

  const values: number[] = [];
  for (const p of visible) {
    values.push(p.w1, p.w2);
  }
  if (lcb !== null) values.push(lcb);
  if (ucb !== null) values.push(ucb);
  values.push(0);
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (!Number.isFinite(lo) || !Number.isFinite(hi)) {
    lo = -1;
    hi = 1;
  }
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = 0.08 * (hi - lo);
  lo -= pad;
  hi += pad;

  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const xOf = (m: number) =>
    MARGIN.left + (n === 2 ? 0 : ((m - 2) / (n - 2)) * plotW);
  const yOf = (w: number) => MARGIN.top + ((hi - w) / (hi - lo)) * plotH;

  const toPoints = (pick: (p: WPoint) => number) =>
    visible.map((p) => `${xOf(p.m).toFixed(1)},${yOf(pick(p)).toFixed(1)}`).join(" ");

  const xTicks: { x: number; label: string }[] = [];
  const step = n <= 12 ? 1 : Math.ceil((n - 2) / 10);
  for (let m = 2; m <= n; m += step) {
    xTicks.push({ x: xOf(m), label: String(m) });
  }
  const yTicks: { y: number; label: string }[] = [];
  for (let i = 0; i <= 4; i++) {
    const w = lo + ((hi - lo) * i) / 4;
    yTicks.push({ y: yOf(w), label: w.toFixed(2) });
  }

  return {
    width,
    height,
    series1: toPoints((p) => p.w1),
    series2: toPoints((p) => p.w2),
    lcbY: lcb === null ? null : yOf(lcb),
    ucbY: ucb === null ? null : yOf(ucb),
    zeroY: 0 >= lo && 0 <= hi ? yOf(0) : null,
    xTicks,
    yTicks,
  };
}

function boundLine(y: number | null, cls: string, width: number): string {
  if (y === null) return "";
  return `<line class="${cls}" x1="${MARGIN.left}" y1="${y.toFixed(1)}" x2="${width - MARGIN.right}" y2="${y.toFixed(1)}" />`;
}

export function renderChart(container: HTMLElement, model: ChartModel): void {
  const ticks = model.xTicks
    .map(
      (t) =>
        `<text class="tick" x="${t.x.toFixed(1)}" y="${model.height - 6}" text-anchor="middle">${t.label}</text>`,
    )
    .join("");
  const yTicks = model.yTicks
    .map(
      (t) =>
        `<text class="tick" x="${MARGIN.left - 6}" y="${t.y.toFixed(1)}" text-anchor="end" dominant-baseline="middle">${t.label}</text>`,
    )
    .join("");
  const series1 = model.series1
    ? `<polyline class="w1" points="${model.series1}" />`
    : "";
  const series2 = model.series2
    ? `<polyline class="w2" points="${model.series2}" />`
    : "";
  container.innerHTML = `
<svg viewBox="0 0 ${model.width} ${model.height}" role="img" aria-label="W trajectories">
  ${boundLine(model.zeroY, "zero", model.width)}
  ${boundLine(model.lcbY, "bound lcb", model.width)}
  ${boundLine(model.ucbY, "bound ucb", model.width)}
  ${series1}
  ${series2}
  ${ticks}
  ${yTicks}
</svg>`;
}
