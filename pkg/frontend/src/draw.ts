/**
 * Backend-neutral draw list: figures compose primitives, then either the
 * SVG writer or the PNG rasterizer consumes them.  Coordinates are pixels.
 */

export interface Point2 {
  x: number;
  y: number;
}

export interface PolygonPrim {
  kind: "polygon";
  points: Point2[];
  fill: string | null;
  fillOpacity: number;
  stroke: string | null;
  strokeWidth: number;
}

export interface PolylinePrim {
  kind: "polyline";
  points: Point2[];
  stroke: string;
  strokeWidth: number;
  dash: string | null;
}

export interface CirclePrim {
  kind: "circle";
  center: Point2;
  radius: number;
  fill: string;
  stroke: string | null;
}

export interface TextPrim {
  kind: "text";
  at: Point2;
  content: string;
  size: number;
  color: string;
  anchor: "start" | "middle" | "end";
}

export type Primitive = PolygonPrim | PolylinePrim | CirclePrim | TextPrim;

export interface Drawing {
  width: number;
  height: number;
  background: string;
  primitives: Primitive[];
}

export function polygon(
  points: Point2[],
  options: Partial<Omit<PolygonPrim, "kind" | "points">> = {},
): PolygonPrim {
  return {
    kind: "polygon",
    points,
    fill: options.fill ?? null,
    fillOpacity: options.fillOpacity ?? 1,
    stroke: options.stroke ?? null,
    strokeWidth: options.strokeWidth ?? 1,
  };
}

export function polyline(
  points: Point2[],
  options: Partial<Omit<PolylinePrim, "kind" | "points">> = {},
): PolylinePrim {
  return {
    kind: "polyline",
    points,
    stroke: options.stroke ?? "#000000",
    strokeWidth: options.strokeWidth ?? 1,
    dash: options.dash ?? null,
  };
}

export function circle(
  center: Point2,
  radius: number,
  options: Partial<Omit<CirclePrim, "kind" | "center" | "radius">> = {},
): CirclePrim {
  return {
    kind: "circle",
    center,
    radius,
    fill: options.fill ?? "#000000",
    stroke: options.stroke ?? null,
  };
}

export function text(
  at: Point2,
  content: string,
  options: Partial<Omit<TextPrim, "kind" | "at" | "content">> = {},
): TextPrim {
  return {
    kind: "text",
    at,
    content,
    size: options.size ?? 12,
    color: options.color ?? "#1a1a1a",
    anchor: options.anchor ?? "start",
  };
}
