/**
 * render --scene scene.json --out dir --figures polytope,solutions,frontier --format svg
 *
 * One image per selected figure lands in the output directory as
 * <figure>.<format>.  A missing trace only skips the inm-trace figure
 * with a warning; an unknown scene version is a hard error.
 */

import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";
import { DEFAULT_CAMERA } from "./camera.js";
import { buildFigure, FIGURE_KINDS, FigureKind } from "./figures.js";
import { toPng } from "./png.js";
import { loadScene } from "./scene.js";
import { toSvg } from "./svg.js";

export interface RenderSpec {
  scenePath: string;
  outDir: string;
  figures: FigureKind[];
  format: "svg" | "png";
  azimuthDeg: number;
  elevationDeg: number;
}

export function parseArgs(argv: string[]): RenderSpec {
  const spec: RenderSpec = {
    scenePath: "",
    outDir: ".",
    figures: ["polytope", "solutions", "frontier"],
    format: "svg",
    azimuthDeg: DEFAULT_CAMERA.azimuthDeg,
    elevationDeg: DEFAULT_CAMERA.elevationDeg,
  };
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new Error(`missing value for ${arg}`);
      return argv[i];
    };
    switch (arg) {
      case "--scene":
        spec.scenePath = next();
        break;
      case "--out":
        spec.outDir = next();
        break;
      case "--figures": {
        const names = next().split(",").map((s) => s.trim()).filter(Boolean);
        if (names.length === 0) throw new Error("--figures selection is empty");
        for (const name of names) {
          if (!FIGURE_KINDS.includes(name as FigureKind)) {
            throw new Error(
              `unknown figure ${name}; expected one of ${FIGURE_KINDS.join(", ")}`,
            );
          }
        }
        spec.figures = names as FigureKind[];
        break;
      }
      case "--format": {
        const fmt = next();
        if (fmt !== "svg" && fmt !== "png") {
          throw new Error(`unknown format ${fmt}; expected svg or png`);
        }
        spec.format = fmt;
        break;
      }
      case "--azimuth":
        spec.azimuthDeg = Number(next());
        break;
      case "--elevation":
        spec.elevationDeg = Number(next());
        break;
      default:
        throw new Error(`unknown argument ${arg}`);
    }
  }
  if (!spec.scenePath) throw new Error("--scene is required");
  if (!Number.isFinite(spec.azimuthDeg) || !Number.isFinite(spec.elevationDeg)) {
    throw new Error("camera angles must be numbers");
  }
  return spec;
}

export function render(spec: RenderSpec): string[] {
  const scene = loadScene(spec.scenePath);
  const camera = { azimuthDeg: spec.azimuthDeg, elevationDeg: spec.elevationDeg };
  mkdirSync(spec.outDir, { recursive: true });

  const written: string[] = [];
  for (const kind of spec.figures) {
    const drawing = buildFigure(scene, kind, camera);
    if (drawing === null) {
      console.warn(`warning: scene has no trace; skipping ${kind}`);
      continue;
    }
    const path = join(spec.outDir, `${kind}.${spec.format}`);
    if (spec.format === "svg") {
      writeFileSync(path, toSvg(drawing));
    } else {
      writeFileSync(path, toPng(drawing));
    }
    written.push(path);
  }
  return written;
}

export function main(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    const written = render(spec);
    for (const path of written) {
      console.log(path);
    }
    return 0;
  } catch (error) {
    console.error(`error: ${error instanceof Error ? error.message : error}`);
    return 1;
  }
}

import { fileURLToPath } from "url";
if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(main(process.argv.slice(2)));
}
