/**
 * Scene file parsing.
 *
 * The scene JSON is the single source of truth: vertices, facet/vertex
 * incidence, solution markers, solver traces and frontier classification
 * all arrive precomputed.  The renderer's only numeric step on flow data
 * is converting "num/den" strings to floats for drawing.
 */

import { readFileSync } from "fs";

export const SUPPORTED_SCENE_VERSION = 1;

export interface Facet {
  label: string;
  vertexIds: number[];
}

export interface Marker {
  name: string;
  kind: string;
  point: number[];
}

export interface Trace {
  name: string;
  points: number[][];
}

export interface FrontierSample {
  point: number[];
  hfs: boolean;
  pareto: boolean;
}

export interface Scene {
  dimension: number;
  incomingLabels: string[];
  demands: number[];
  vertices: number[][];
  facets: Facet[];
  markers: Marker[];
  traces: Trace[];
  frontier: FrontierSample[];
  mode: string;
}

/** Convert "600", "50/3" or a float's decimal repr to a number. */
export function ratioToNumber(text: string): number {
  const slash = text.indexOf("/");
  if (slash >= 0) {
    const num = Number(text.slice(0, slash));
    const den = Number(text.slice(slash + 1));
    if (!Number.isFinite(num) || !Number.isFinite(den) || den === 0) {
      throw new Error(`bad rational literal: ${text}`);
    }
    return num / den;
  }
  const value = Number(text);
  if (!Number.isFinite(value)) {
    throw new Error(`bad numeric literal: ${text}`);
  }
  return value;
}

function parsePoint(values: string[]): number[] {
  return values.map(ratioToNumber);
}

export function parseScene(jsonText: string): Scene {
  const data = JSON.parse(jsonText);
  if (data.scene_version !== SUPPORTED_SCENE_VERSION) {
    throw new Error(
      `unsupported scene version ${data.scene_version}; expected ${SUPPORTED_SCENE_VERSION}`,
    );
  }
  const incoming = data.problem.incoming as { label: string; demand: string }[];
  return {
    dimension: incoming.length,
    incomingLabels: incoming.map((l) => l.label),
    demands: incoming.map((l) => ratioToNumber(l.demand)),
    vertices: (data.vertices as string[][]).map(parsePoint),
    facets: (data.facets as { label: string; vertex_ids: number[] }[]).map((f) => ({
      label: f.label,
      vertexIds: f.vertex_ids,
    })),
    markers: (data.markers as { name: string; kind: string; point: string[] }[]).map(
      (m) => ({ name: m.name, kind: m.kind, point: parsePoint(m.point) }),
    ),
    traces: (data.traces as { name: string; points: string[][] }[]).map((t) => ({
      name: t.name,
      points: t.points.map(parsePoint),
    })),
    frontier: (
      data.frontier as { point: string[]; hfs: boolean; pareto: boolean }[]
    ).map((s) => ({ point: parsePoint(s.point), hfs: s.hfs, pareto: s.pareto })),
    mode: data.metadata?.mode ?? "exact",
  };
}

export function loadScene(path: string): Scene {
  return parseScene(readFileSync(path, "utf8"));
}
