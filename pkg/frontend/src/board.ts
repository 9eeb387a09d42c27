// Pure snapshot -> markup rendering. Everything shown here is read
// straight from the server snapshot; the client computes layout only.

import type { AdversarySnapshot } from "./types.js";

export const BOARD_WIDTH = 1000;
export const BOARD_HEIGHT = 240;
const TOP_Y = 60;
const BOTTOM_Y = 180;

export interface VertexSpot {
  x: number;
  y: number;
  row: "top" | "bottom";
}

/** Fixed horizontal slot per position; flips only move vertices vertically. */
export function vertexLayout(snapshot: AdversarySnapshot): Map<number, VertexSpot> {
  const spots = new Map<number, VertexSpot>();
  const total = 2 * snapshot.n;
  const place = (positions: number[], row: "top" | "bottom", y: number) => {
    for (const p of positions) {
      spots.set(p, { x: ((p + 0.5) / total) * BOARD_WIDTH, y, row });
    }
  };
  place(snapshot.top, "top", TOP_Y);
  place(snapshot.bottom, "bottom", BOTTOM_Y);
  return spots;
}

export function edgeClass(snapshot: AdversarySnapshot, edge: [number, number]): string {
  const bottom = new Set(snapshot.bottom);
  const crossing = bottom.has(edge[0]) !== bottom.has(edge[1]);
  return crossing ? "edge pillar" : "edge intra";
}

export function edgesSvg(snapshot: AdversarySnapshot): string {
  const layout = vertexLayout(snapshot);
  const lines = snapshot.edges
    .map((edge) => {
      const a = layout.get(edge[0])!;
      const b = layout.get(edge[1])!;
      return (
        `<line class="${edgeClass(snapshot, edge)}" ` +
        `data-edge="${edge[0]}-${edge[1]}" ` +
        `x1="${a.x.toFixed(1)}" y1="${a.y}" x2="${b.x.toFixed(1)}" y2="${b.y}"/>`
      );
    })
    .join("");
  const cliques =
    snapshot.phase === "ambiguous" && snapshot.certificate === "two_disjoint_n_cliques"
      ? `<rect class="clique-band" x="0" y="${TOP_Y - 28}" width="${BOARD_WIDTH}" height="56"/>` +
        `<rect class="clique-band" x="0" y="${BOTTOM_Y - 28}" width="${BOARD_WIDTH}" height="56"/>`
      : "";
  return (
    `<svg class="edges" viewBox="0 0 ${BOARD_WIDTH} ${BOARD_HEIGHT}" preserveAspectRatio="none">` +
    cliques +
    lines +
    `</svg>`
  );
}

export function certificateLabel(snapshot: AdversarySnapshot): string {
  if (snapshot.phase === "committed") {
    const majority = snapshot.committed_majority ?? [];
    return `adversary committed to majority {${majority.join(", ")}}`;
  }
  switch (snapshot.certificate) {
    case "two_disjoint_n_cliques":
      return "two disjoint candidate groups survive (each row)";
    case "one_n_plus_1_clique":
      return "an oversized candidate group survives";
    default:
      return "ambiguity exhausted: a safe output exists";
  }
}

function vertexDiv(pos: number, spot: VertexSpot): string {
  const left = ((spot.x / BOARD_WIDTH) * 100).toFixed(2);
  return (
    `<div class="vertex ${spot.row}" data-pos="${pos}" ` +
    `style="left:${left}%;top:${spot.y}px">${pos}</div>`
  );
}

export function boardHtml(snapshot: AdversarySnapshot): string {
  const layout = vertexLayout(snapshot);
  const vertices = [...layout.entries()]
    .sort(([a], [b]) => a - b)
    .map(([pos, spot]) => vertexDiv(pos, spot))
    .join("");
  return (
    `<div class="board" style="height:${BOARD_HEIGHT}px">` +
    edgesSvg(snapshot) +
    `<span class="row-label" style="top:${TOP_Y}px">above</span>` +
    `<span class="row-label" style="top:${BOTTOM_Y}px">table</span>` +
    vertices +
    `</div>`
  );
}

export function hudHtml(snapshot: AdversarySnapshot): string {
  const feasible =
    snapshot.feasible_count === null
      ? ""
      : `<span class="feasible">${snapshot.feasible_count} consistent majority sets</span>`;
  return (
    `<div class="hud">` +
    `<span class="gauge" data-used="${snapshot.comparisons}">` +
    `${snapshot.comparisons} / ${snapshot.budget} comparisons</span>` +
    `<span class="certificate ${snapshot.phase}">${certificateLabel(snapshot)}</span>` +
    feasible +
    `</div>`
  );
}
