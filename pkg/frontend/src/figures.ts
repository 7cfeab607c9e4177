/**
 * Figure composition: turn a scene into draw lists.
 *
 * Five figures are supported: the demand box, the feasible polytope, the
 * polytope with solution markers, the incremental-transfer trace, and the
 * frontier classification cloud.  Faces come straight from the scene's
 * facet/vertex incidence; classification colors come from the scene's
 * hfs/pareto flags.  Everything is deterministic for a fixed spec.
 */

import { Camera, DEFAULT_CAMERA, lift, normalizer, project, Projected, viewportMapper } from "./camera.js";
import { circle, Drawing, Point2, polygon, polyline, Primitive, text } from "./draw.js";
import type { Scene } from "./scene.js";

export const FIGURE_KINDS = ["box", "polytope", "solutions", "inm-trace", "frontier"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export const WIDTH = 640;
export const HEIGHT = 520;
const MARGIN = 60;

const FACE_FILL = "#7fb3d5";
const EDGE_COLOR = "#2c3e50";
const BOX_COLOR = "#aab2b8";
const AXIS_COLOR = "#5d6d7e";
const MARKER_COLORS: Record<string, string> = {
  inm: "#c0392b",
  flowmax: "#2980b9",
  greedy: "#1e8449",
};
const FRONTIER_COLORS = {
  hfsPareto: "#1e8449",
  paretoOnly: "#f5b041",
  interior: "#d5d8dc",
};

interface Projector {
  toPixel: (point: number[]) => Point2;
  depth: (point: number[]) => number;
}

class FigureError extends Error {}

function makeProjector(scene: Scene, camera: Camera): Projector {
  if (scene.dimension > 3) {
    throw new FigureError(
      `scene has ${scene.dimension} incoming links; figures are drawable up to 3`,
    );
  }
  const normalize = normalizer(scene.demands);
  const projectPoint = (p: number[]): Projected => project(normalize(p), camera);

  // fit the viewport to the demand box corners plus every referenced point
  const anchors: number[][] = [...boxCorners(scene.demands), ...scene.vertices];
  for (const m of scene.markers) anchors.push(m.point);
  for (const t of scene.traces) anchors.push(...t.points);
  for (const s of scene.frontier) anchors.push(s.point);
  const mapper = viewportMapper(anchors.map(projectPoint), WIDTH, HEIGHT, MARGIN);

  return {
    toPixel: (point) => mapper(projectPoint(point)),
    depth: (point) => projectPoint(point).depth,
  };
}

function boxCorners(demands: number[]): number[][] {
  const [dx, dy, dz] = lift(demands);
  const corners: number[][] = [];
  for (const x of [0, dx]) {
    for (const y of [0, dy]) {
      for (const z of [0, dz]) {
        corners.push([x, y, z]);
      }
    }
  }
  return corners;
}

const BOX_EDGES: [number, number][] = [
  [0, 1], [0, 2], [0, 4], [1, 3], [1, 5], [2, 3],
  [2, 6], [3, 7], [4, 5], [4, 6], [5, 7], [6, 7],
];

function boxWireframe(scene: Scene, proj: Projector): Primitive[] {
  const corners = boxCorners(scene.demands).map(proj.toPixel);
  return BOX_EDGES.map(([a, b]) =>
    polyline([corners[a], corners[b]], { stroke: BOX_COLOR, strokeWidth: 1, dash: "4 3" }),
  );
}

function axisLabels(scene: Scene, proj: Projector): Primitive[] {
  const prims: Primitive[] = [];
  const [dx, dy, dz] = lift(scene.demands);
  const ends: number[][] = [[dx, 0, 0], [0, dy, 0], [0, 0, dz]];
  const origin = proj.toPixel([0, 0, 0]);
  for (let axis = 0; axis < Math.min(scene.dimension, 3); axis++) {
    const tip = proj.toPixel(ends[axis]);
    prims.push(polyline([origin, tip], { stroke: AXIS_COLOR, strokeWidth: 1.5 }));
    const label = scene.incomingLabels[axis] ?? `q${axis + 1}`;
    const nudgeX = tip.x >= origin.x ? 8 : -8;
    prims.push(
      text({ x: tip.x + nudgeX, y: tip.y - 6 }, `q(${label})`, {
        size: 12,
        color: AXIS_COLOR,
        anchor: tip.x >= origin.x ? "start" : "end",
      }),
    );
  }
  return prims;
}

/** Order a convex face's vertices by angle around its centroid in-plane. */
function orderFace(points: number[][]): number[][] {
  if (points.length <= 3) {
    return points;
  }
  const lifted = points.map(lift);
  const n = lifted.length;
  const centroid = [0, 1, 2].map(
    (k) => lifted.reduce((acc, p) => acc + p[k], 0) / n,
  ) as [number, number, number];

  // plane basis from the two longest independent spokes
  const spokes = lifted.map((p) => sub(p, centroid));
  const u = longest(spokes);
  let v: [number, number, number] | null = null;
  for (const s of spokes) {
    const rejected = sub(s, scale(u, dot(s, u) / (dot(u, u) || 1)));
    if (norm(rejected) > 1e-9) {
      v = rejected;
      break;
    }
  }
  if (v === null) {
    return points; // degenerate (collinear) face: draw as-is
  }
  const order = spokes
    .map((s, i) => ({ i, angle: Math.atan2(dot(s, v!) / norm(v!), dot(s, u) / norm(u)) }))
    .sort((a, b) => a.angle - b.angle || a.i - b.i)
    .map((e) => e.i);
  return order.map((i) => points[i]);
}

function sub(a: [number, number, number], b: [number, number, number]): [number, number, number] {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

function scale(a: [number, number, number], k: number): [number, number, number] {
  return [a[0] * k, a[1] * k, a[2] * k];
}

function dot(a: [number, number, number], b: [number, number, number]): number {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

function norm(a: [number, number, number]): number {
  return Math.sqrt(dot(a, a));
}

function longest(spokes: [number, number, number][]): [number, number, number] {
  let best = spokes[0];
  for (const s of spokes) {
    if (norm(s) > norm(best)) best = s;
  }
  return best;
}

function polytopeFaces(scene: Scene, proj: Projector, fill: boolean): Primitive[] {
  const faces = scene.facets
    .filter((f) => f.vertexIds.length >= 3)
    .map((f) => {
      const points = orderFace(f.vertexIds.map((id) => scene.vertices[id]));
      const depth =
        points.reduce((acc, p) => acc + proj.depth(p), 0) / points.length;
      return { points, depth };
    })
    .sort((a, b) => a.depth - b.depth); // painter: far faces first

  return faces.map((face) =>
    polygon(face.points.map(proj.toPixel), {
      fill: fill ? FACE_FILL : null,
      fillOpacity: 0.35,
      stroke: EDGE_COLOR,
      strokeWidth: 1.2,
    }),
  );
}

function vertexDots(scene: Scene, proj: Projector): Primitive[] {
  return scene.vertices.map((v) =>
    circle(proj.toPixel(v), 2.5, { fill: EDGE_COLOR }),
  );
}

function markerLayer(scene: Scene, proj: Projector): Primitive[] {
  const prims: Primitive[] = [];
  scene.markers.forEach((marker, index) => {
    const at = proj.toPixel(marker.point);
    const color = MARKER_COLORS[marker.kind] ?? "#7d3c98";
    prims.push(circle(at, 5, { fill: color, stroke: "#ffffff" }));
    // alternate label side to reduce collisions between coincident rows
    const dy = index % 2 === 0 ? -10 : 18;
    prims.push(
      text({ x: at.x + 8, y: at.y + dy }, marker.name, { size: 13, color }),
    );
  });
  return prims;
}

function traceLayer(scene: Scene, proj: Projector): Primitive[] {
  const prims: Primitive[] = [];
  for (const trace of scene.traces) {
    const pixels = trace.points.map(proj.toPixel);
    prims.push(
      polyline(pixels, { stroke: MARKER_COLORS.inm, strokeWidth: 2, dash: "7 4" }),
    );
    for (const p of pixels) {
      prims.push(circle(p, 3.5, { fill: MARKER_COLORS.inm, stroke: "#ffffff" }));
    }
    const last = pixels[pixels.length - 1];
    prims.push(
      text({ x: last.x + 8, y: last.y - 8 }, trace.name, {
        size: 13,
        color: MARKER_COLORS.inm,
      }),
    );
  }
  return prims;
}

function frontierLayer(scene: Scene, proj: Projector): Primitive[] {
  const prims: Primitive[] = [];
  const byClass = (s: { hfs: boolean; pareto: boolean }) =>
    s.hfs && s.pareto
      ? FRONTIER_COLORS.hfsPareto
      : s.pareto
        ? FRONTIER_COLORS.paretoOnly
        : FRONTIER_COLORS.interior;
  // interior dots first so frontier classes stay visible on top
  const order = [...scene.frontier].sort(
    (a, b) => Number(a.pareto) - Number(b.pareto) || Number(a.hfs) - Number(b.hfs),
  );
  for (const sample of order) {
    prims.push(circle(proj.toPixel(sample.point), 3, { fill: byClass(sample) }));
  }
  return prims;
}

function legend(entries: [string, string][]): Primitive[] {
  const prims: Primitive[] = [];
  entries.forEach(([label, color], i) => {
    const y = 24 + i * 18;
    prims.push(circle({ x: 18, y: y - 4 }, 5, { fill: color }));
    prims.push(text({ x: 30, y }, label, { size: 12 }));
  });
  return prims;
}

export function buildFigure(
  scene: Scene,
  kind: FigureKind,
  camera: Camera = DEFAULT_CAMERA,
): Drawing | null {
  const proj = makeProjector(scene, camera);
  const prims: Primitive[] = [];

  prims.push(...boxWireframe(scene, proj));
  prims.push(...axisLabels(scene, proj));

  switch (kind) {
    case "box":
      break;
    case "polytope":
      prims.push(...polytopeFaces(scene, proj, true));
      prims.push(...vertexDots(scene, proj));
      break;
    case "solutions":
      prims.push(...polytopeFaces(scene, proj, true));
      prims.push(...vertexDots(scene, proj));
      prims.push(...markerLayer(scene, proj));
      break;
    case "inm-trace":
      if (scene.traces.length === 0) {
        return null; // caller warns and skips
      }
      prims.push(...polytopeFaces(scene, proj, true));
      prims.push(...traceLayer(scene, proj));
      break;
    case "frontier":
      prims.push(...polytopeFaces(scene, proj, false));
      prims.push(...frontierLayer(scene, proj));
      prims.push(
        ...legend([
          ["holding-free (on Pareto frontier)", FRONTIER_COLORS.hfsPareto],
          ["Pareto-optimal only", FRONTIER_COLORS.paretoOnly],
          ["dominated interior", FRONTIER_COLORS.interior],
        ]),
      );
      break;
  }

  return { width: WIDTH, height: HEIGHT, background: "#ffffff", primitives: prims };
}
