/**
 * Orthographic projection of (up to) 3D flow space onto the drawing plane.
 *
 * Points are first normalized per axis by the demand box so differently
 * scaled axes stay comparable, then rotated by azimuth (about the vertical
 * axis) and elevation.  Depth increases toward the viewer, which drives
 * painter's-algorithm face ordering.
 */

export interface Camera {
  azimuthDeg: number;
  elevationDeg: number;
}

export interface Projected {
  x: number;
  y: number;
  depth: number;
}

export const DEFAULT_CAMERA: Camera = { azimuthDeg: -60, elevationDeg: 25 };

/** Pad a 1D/2D point to 3D so one projection path serves every scene. */
export function lift(point: number[]): [number, number, number] {
  return [point[0] ?? 0, point[1] ?? 0, point[2] ?? 0];
}

export function normalizer(demands: number[]): (p: number[]) => [number, number, number] {
  const scale = lift(demands).map((d) => (d > 0 ? d : 1));
  return (point) => {
    const [x, y, z] = lift(point);
    return [x / scale[0], y / scale[1], z / scale[2]];
  };
}

export function project(point: [number, number, number], camera: Camera): Projected {
  const az = (camera.azimuthDeg * Math.PI) / 180;
  const el = (camera.elevationDeg * Math.PI) / 180;
  const [x, y, z] = point;
  const u = -Math.sin(az) * x + Math.cos(az) * y;
  const v =
    -Math.cos(az) * Math.sin(el) * x -
    Math.sin(az) * Math.sin(el) * y +
    Math.cos(el) * z;
  const depth =
    Math.cos(az) * Math.cos(el) * x +
    Math.sin(az) * Math.cos(el) * y +
    Math.sin(el) * z;
  return { x: u, y: v, depth };
}

/** Map projected coordinates into pixel space with a uniform fit + margin. */
export function viewportMapper(
  projected: Projected[],
  width: number,
  height: number,
  margin: number,
): (p: Projected) => { x: number; y: number } {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const p of projected) {
    minX = Math.min(minX, p.x);
    maxX = Math.max(maxX, p.x);
    minY = Math.min(minY, p.y);
    maxY = Math.max(maxY, p.y);
  }
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const fit = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
  const offsetX = (width - fit * spanX) / 2;
  const offsetY = (height - fit * spanY) / 2;
  return (p) => ({
    x: offsetX + (p.x - minX) * fit,
    // SVG y grows downward; flip so larger flow draws higher
    y: height - offsetY - (p.y - minY) * fit,
  });
}
