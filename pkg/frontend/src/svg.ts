/**
 * Minimal SVG writer for the draw list.  Numbers are emitted with fixed
 * precision so identical drawings serialize to identical bytes.
 */

import type { Drawing, Point2, Primitive } from "./draw.js";

function fmt(value: number): string {
  return value.toFixed(2);
}

function pointList(points: Point2[]): string {
  return points.map((p) => `${fmt(p.x)},${fmt(p.y)}`).join(" ");
}

function escapeText(content: string): string {
  return content
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function renderPrimitive(prim: Primitive): string {
  switch (prim.kind) {
    case "polygon": {
      const fill = prim.fill ?? "none";
      const stroke = prim.stroke ?? "none";
      const opacity =
        prim.fillOpacity < 1 ? ` fill-opacity="${fmt(prim.fillOpacity)}"` : "";
      return (
        `<polygon points="${pointList(prim.points)}" fill="${fill}"${opacity} ` +
        `stroke="${stroke}" stroke-width="${fmt(prim.strokeWidth)}"/>`
      );
    }
    case "polyline": {
      const dash = prim.dash ? ` stroke-dasharray="${prim.dash}"` : "";
      return (
        `<polyline points="${pointList(prim.points)}" fill="none" ` +
        `stroke="${prim.stroke}" stroke-width="${fmt(prim.strokeWidth)}"${dash}/>`
      );
    }
    case "circle": {
      const stroke = prim.stroke ? ` stroke="${prim.stroke}"` : "";
      return (
        `<circle cx="${fmt(prim.center.x)}" cy="${fmt(prim.center.y)}" ` +
        `r="${fmt(prim.radius)}" fill="${prim.fill}"${stroke}/>`
      );
    }
    case "text":
      return (
        `<text x="${fmt(prim.at.x)}" y="${fmt(prim.at.y)}" ` +
        `font-family="Helvetica, Arial, sans-serif" font-size="${prim.size}" ` +
        `fill="${prim.color}" text-anchor="${prim.anchor}">` +
        `${escapeText(prim.content)}</text>`
      );
  }
}

export function toSvg(drawing: Drawing): string {
  const lines = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${drawing.width}" ` +
      `height="${drawing.height}" viewBox="0 0 ${drawing.width} ${drawing.height}">`,
    `<rect width="${drawing.width}" height="${drawing.height}" fill="${drawing.background}"/>`,
  ];
  for (const prim of drawing.primitives) {
    lines.push(renderPrimitive(prim));
  }
  lines.push("</svg>");
  return lines.join("\n") + "\n";
}
