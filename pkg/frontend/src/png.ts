/**
 * Software rasterizer + PNG encoder for the draw list.
 *
 * Polygons fill by even-odd scanline, strokes stamp a small circular
 * brush along line segments, and the RGBA buffer is encoded as an 8-bit
 * truecolor-alpha PNG (filter 0, zlib via node).  Text primitives are
 * not rasterized; labels are an SVG-only feature.
 */

import { deflateSync } from "zlib";
import type { Drawing, Point2, Primitive } from "./draw.js";

interface Rgba {
  r: number;
  g: number;
  b: number;
  a: number;
}

function parseColor(color: string, alpha = 1): Rgba {
  const hex = color.replace("#", "");
  const full = hex.length === 3 ? hex.split("").map((c) => c + c).join("") : hex;
  return {
    r: parseInt(full.slice(0, 2), 16),
    g: parseInt(full.slice(2, 4), 16),
    b: parseInt(full.slice(4, 6), 16),
    a: alpha,
  };
}

class Canvas {
  readonly data: Uint8ClampedArray;

  constructor(readonly width: number, readonly height: number, background: Rgba) {
    this.data = new Uint8ClampedArray(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.data[i * 4] = background.r;
      this.data[i * 4 + 1] = background.g;
      this.data[i * 4 + 2] = background.b;
      this.data[i * 4 + 3] = 255;
    }
  }

  blend(x: number, y: number, color: Rgba): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    const a = color.a;
    this.data[i] = color.r * a + this.data[i] * (1 - a);
    this.data[i + 1] = color.g * a + this.data[i + 1] * (1 - a);
    this.data[i + 2] = color.b * a + this.data[i + 2] * (1 - a);
    this.data[i + 3] = 255;
  }
}

function fillPolygon(canvas: Canvas, points: Point2[], color: Rgba): void {
  if (points.length < 3) return;
  const ys = points.map((p) => p.y);
  const top = Math.max(0, Math.floor(Math.min(...ys)));
  const bottom = Math.min(canvas.height - 1, Math.ceil(Math.max(...ys)));
  for (let y = top; y <= bottom; y++) {
    const scan = y + 0.5;
    const crossings: number[] = [];
    for (let i = 0; i < points.length; i++) {
      const a = points[i];
      const b = points[(i + 1) % points.length];
      if (a.y === b.y) continue;
      const [lo, hi] = a.y < b.y ? [a, b] : [b, a];
      if (scan >= lo.y && scan < hi.y) {
        crossings.push(lo.x + ((scan - lo.y) / (hi.y - lo.y)) * (hi.x - lo.x));
      }
    }
    crossings.sort((p, q) => p - q);
    for (let k = 0; k + 1 < crossings.length; k += 2) {
      const from = Math.max(0, Math.round(crossings[k]));
      const to = Math.min(canvas.width - 1, Math.round(crossings[k + 1]));
      for (let x = from; x <= to; x++) {
        canvas.blend(x, y, color);
      }
    }
  }
}

function stampBrush(canvas: Canvas, cx: number, cy: number, radius: number, color: Rgba): void {
  const r = Math.max(0.5, radius);
  for (let y = Math.floor(cy - r); y <= Math.ceil(cy + r); y++) {
    for (let x = Math.floor(cx - r); x <= Math.ceil(cx + r); x++) {
      const dx = x - cx;
      const dy = y - cy;
      if (dx * dx + dy * dy <= r * r) {
        canvas.blend(x, y, color);
      }
    }
  }
}

function strokeSegment(canvas: Canvas, a: Point2, b: Point2, width: number, color: Rgba): void {
  const length = Math.hypot(b.x - a.x, b.y - a.y);
  const steps = Math.max(1, Math.ceil(length));
  for (let s = 0; s <= steps; s++) {
    const t = s / steps;
    stampBrush(canvas, a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t, width / 2, color);
  }
}

function strokePath(canvas: Canvas, points: Point2[], width: number, color: Rgba, closed: boolean): void {
  for (let i = 0; i + 1 < points.length; i++) {
    strokeSegment(canvas, points[i], points[i + 1], width, color);
  }
  if (closed && points.length > 2) {
    strokeSegment(canvas, points[points.length - 1], points[0], width, color);
  }
}

function rasterize(drawing: Drawing): Canvas {
  const canvas = new Canvas(drawing.width, drawing.height, parseColor(drawing.background));
  for (const prim of drawing.primitives) {
    rasterizePrimitive(canvas, prim);
  }
  return canvas;
}

function rasterizePrimitive(canvas: Canvas, prim: Primitive): void {
  switch (prim.kind) {
    case "polygon":
      if (prim.fill) {
        fillPolygon(canvas, prim.points, parseColor(prim.fill, prim.fillOpacity));
      }
      if (prim.stroke) {
        strokePath(canvas, prim.points, prim.strokeWidth, parseColor(prim.stroke), true);
      }
      break;
    case "polyline":
      strokePath(canvas, prim.points, prim.strokeWidth, parseColor(prim.stroke), false);
      break;
    case "circle": {
      stampBrush(canvas, prim.center.x, prim.center.y, prim.radius, parseColor(prim.fill));
      break;
    }
    case "text":
      break; // labels are SVG-only
  }
}

// --- PNG encoding -----------------------------------------------------------

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

export function crc32(bytes: Uint8Array): number {
  let crc = 0xffffffff;
  for (const byte of bytes) {
    crc = CRC_TABLE[(crc ^ byte) & 0xff] ^ (crc >>> 8);
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(payload.length, 0);
  head.write(type, 4, "ascii");
  const body = Buffer.concat([head.subarray(4), Buffer.from(payload)]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head.subarray(0, 4), body, tail]);
}

export function encodePng(width: number, height: number, rgba: Uint8ClampedArray): Buffer {
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // truecolor + alpha
  ihdr[10] = 0;
  ihdr[11] = 0;
  ihdr[12] = 0;

  const stride = width * 4;
  const raw = Buffer.alloc((stride + 1) * height);
  for (let y = 0; y < height; y++) {
    raw[y * (stride + 1)] = 0; // filter: none
    raw.set(rgba.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
  }

  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(raw, { level: 9 })),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function toPng(drawing: Drawing): Buffer {
  const canvas = rasterize(drawing);
  return encodePng(canvas.width, canvas.height, canvas.data);
}
