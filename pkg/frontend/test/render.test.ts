import { mkdtempSync, readFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { DEFAULT_CAMERA } from "../src/camera.js";
import { buildFigure, FIGURE_KINDS } from "../src/figures.js";
import { crc32, toPng } from "../src/png.js";
import { parseScene, ratioToNumber } from "../src/scene.js";
import { toSvg } from "../src/svg.js";
import { main, parseArgs, render } from "../src/cli.js";

const FIXTURE = join(__dirname, "fixtures", "demo-scene.json");
const sceneText = readFileSync(FIXTURE, "utf8");

/** Minimal XML well-formedness check: balanced, properly nested tags. */
function assertWellFormedXml(text: string): void {
  const tags = text.match(/<[^>]+>/g) ?? [];
  expect(tags.length).toBeGreaterThan(0);
  const stack: string[] = [];
  for (const tag of tags) {
    if (tag.startsWith("<?") || tag.startsWith("<!--") || tag.endsWith("/>")) continue;
    const name = tag.match(/^<\/?([a-zA-Z][\w:-]*)/)?.[1];
    expect(name, `unparseable tag ${tag}`).toBeTruthy();
    if (tag.startsWith("</")) {
      expect(stack.pop()).toBe(name);
    } else {
      stack.push(name!);
    }
  }
  expect(stack).toEqual([]);
}

describe("scene parsing", () => {
  it("converts rational strings to numbers", () => {
    expect(ratioToNumber("600")).toBe(600);
    expect(ratioToNumber("50/3")).toBeCloseTo(16.6667, 3);
    expect(ratioToNumber("16.7")).toBeCloseTo(16.7);
    expect(() => ratioToNumber("1/0")).toThrow();
    expect(() => ratioToNumber("abc")).toThrow();
  });

  it("reads the demo fixture", () => {
    const scene = parseScene(sceneText);
    expect(scene.dimension).toBe(3);
    expect(scene.incomingLabels).toEqual(["E", "N", "S"]);
    expect(scene.demands).toEqual([100, 600, 600]);
    expect(scene.vertices).toHaveLength(8);
    expect(scene.markers.map((m) => m.name)).toEqual([
      "INM", "FM-A", "FM-B", "Gr-A", "Gr-B",
    ]);
    expect(scene.traces).toHaveLength(1);
    expect(scene.frontier.length).toBeGreaterThan(0);
  });

  it("rejects unknown scene versions", () => {
    const tampered = JSON.stringify({
      ...JSON.parse(sceneText),
      scene_version: 99,
    });
    expect(() => parseScene(tampered)).toThrow(/unsupported scene version/);
  });
});

describe("figure building", () => {
  const scene = parseScene(sceneText);

  it("produces every figure kind for the demo scene", () => {
    for (const kind of FIGURE_KINDS) {
      const drawing = buildFigure(scene, kind);
      expect(drawing, kind).not.toBeNull();
      expect(drawing!.primitives.length).toBeGreaterThan(0);
    }
  });

  it("skips the trace figure when the scene has no trace", () => {
    const traceless = { ...scene, traces: [] };
    expect(buildFigure(traceless, "inm-trace")).toBeNull();
    expect(buildFigure(traceless, "polytope")).not.toBeNull();
  });

  it("draws frontier dots per classification, not recomputed", () => {
    const drawing = buildFigure(scene, "frontier")!;
    const dots = drawing.primitives.filter((p) => p.kind === "circle");
    const hfsCount = scene.frontier.filter((s) => s.hfs && s.pareto).length;
    const green = dots.filter((d) => d.kind === "circle" && d.fill === "#1e8449");
    // every hfs sample contributes one green dot (plus 1 legend swatch)
    expect(green.length).toBe(hfsCount + 1);
  });

  it("refuses scenes with more than three axes", () => {
    const wide = {
      ...scene,
      dimension: 4,
      incomingLabels: ["a", "b", "c", "d"],
      demands: [1, 1, 1, 1],
    };
    expect(() => buildFigure(wide, "box")).toThrow(/up to 3/);
  });
});

describe("svg output", () => {
  const scene = parseScene(sceneText);

  it("is well-formed and non-empty for the three release figures", () => {
    for (const kind of ["polytope", "solutions", "frontier"] as const) {
      const svg = toSvg(buildFigure(scene, kind)!);
      expect(svg.length).toBeGreaterThan(200);
      expect(svg.startsWith("<svg ")).toBe(true);
      assertWellFormedXml(svg);
    }
  });

  it("labels all five solution markers", () => {
    const svg = toSvg(buildFigure(scene, "solutions")!);
    for (const name of ["INM", "FM-A", "FM-B", "Gr-A", "Gr-B"]) {
      expect(svg).toContain(`>${name}</text>`);
    }
  });

  it("is deterministic for a fixed spec", () => {
    const first = toSvg(buildFigure(scene, "solutions")!);
    const second = toSvg(buildFigure(scene, "solutions")!);
    expect(first).toBe(second);
  });

  it("responds to camera angles", () => {
    const tilted = toSvg(
      buildFigure(scene, "polytope", { azimuthDeg: -30, elevationDeg: 55 })!,
    );
    const standard = toSvg(buildFigure(scene, "polytope", DEFAULT_CAMERA)!);
    expect(tilted).not.toBe(standard);
  });
});

describe("png output", () => {
  const scene = parseScene(sceneText);

  it("encodes a structurally valid png", () => {
    const png = toPng(buildFigure(scene, "polytope")!);
    expect([...png.subarray(0, 8)]).toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    expect(png.subarray(12, 16).toString("ascii")).toBe("IHDR");
    expect(png.readUInt32BE(16)).toBe(640); // width
    expect(png.readUInt32BE(20)).toBe(520); // height
    // IHDR crc: type+payload bytes 12..29, crc at 29
    expect(png.readUInt32BE(29)).toBe(crc32(png.subarray(12, 29)));
    expect(png.includes(Buffer.from("IEND", "ascii"))).toBe(true);
    expect(png.length).toBeGreaterThan(1000);
  });
});

describe("cli", () => {
  it("parses the documented invocation", () => {
    const spec = parseArgs([
      "--scene", "s.json", "--out", "dir",
      "--figures", "polytope,solutions,frontier", "--format", "svg",
    ]);
    expect(spec.figures).toEqual(["polytope", "solutions", "frontier"]);
    expect(spec.format).toBe("svg");
  });

  it("rejects bad arguments", () => {
    expect(() => parseArgs([])).toThrow(/--scene/);
    expect(() => parseArgs(["--scene", "s", "--figures", "bogus"])).toThrow(/unknown figure/);
    expect(() => parseArgs(["--scene", "s", "--format", "gif"])).toThrow(/format/);
    expect(() => parseArgs(["--scene", "s", "--wat"])).toThrow(/unknown argument/);
  });

  it("renders the release figure set to disk", () => {
    const outDir = mkdtempSync(join(tmpdir(), "figs-"));
    const written = render({
      scenePath: FIXTURE,
      outDir,
      figures: ["polytope", "solutions", "frontier"],
      format: "svg",
      azimuthDeg: DEFAULT_CAMERA.azimuthDeg,
      elevationDeg: DEFAULT_CAMERA.elevationDeg,
    });
    expect(written).toHaveLength(3);
    for (const path of written) {
      const content = readFileSync(path, "utf8");
      expect(content.length).toBeGreaterThan(200);
      assertWellFormedXml(content);
    }
    const solutions = readFileSync(join(outDir, "solutions.svg"), "utf8");
    for (const name of ["INM", "FM-A", "FM-B", "Gr-A", "Gr-B"]) {
      expect(solutions).toContain(`>${name}</text>`);
    }
  });

  it("renders png when asked", () => {
    const outDir = mkdtempSync(join(tmpdir(), "figs-"));
    const written = render({
      scenePath: FIXTURE,
      outDir,
      figures: ["polytope"],
      format: "png",
      azimuthDeg: DEFAULT_CAMERA.azimuthDeg,
      elevationDeg: DEFAULT_CAMERA.elevationDeg,
    });
    const bytes = readFileSync(written[0]);
    expect(bytes.subarray(1, 4).toString("ascii")).toBe("PNG");
  });

  it("main returns 1 on a bad scene path", () => {
    expect(main(["--scene", "/nonexistent/scene.json"])).toBe(1);
  });
});
