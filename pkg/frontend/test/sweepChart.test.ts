import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { describe, expect, it } from "vitest";

import { parseArgs, run } from "../src/plot_sweep.js";
import {
  buildSweepChart,
  groupRows,
  parseSweepCsv,
  SchemaError,
} from "../src/sweepChart.js";

const DATA = path.join(__dirname, "..", "data", "access_points_example.csv");

const HEADER = "mu1_db,mu2_db,rytov_var,n_leds,pt_w,L_m,gamma_th_db,"
  + "pout_analytic,pout_fso_only,pout_floor,pout_mc,mc_ci95,mc_samples";

function countMatches(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("parseSweepCsv", () => {
  it("reads the shipped six-curve sweep artifact", () => {
    const rows = parseSweepCsv(readFileSync(DATA, "utf-8"));
    expect(rows.length).toBe(186); // 31 axis points x 6 variants
    expect(rows[0].pout_analytic).toBeGreaterThan(0);
    expect(rows[0].pout_fso_only).toBeNull(); // baseline column shipped empty
    expect(rows[0].mc_samples).toBe(20000);
  });

  it("raises a schema error naming missing required columns", () => {
    const bad = "mu1_db,mu2_db\n1.0,1.0\n";
    expect(() => parseSweepCsv(bad)).toThrow(SchemaError);
    expect(() => parseSweepCsv(bad)).toThrow(/rytov_var/);
  });

  it("treats the Monte Carlo columns as optional", () => {
    const slim = HEADER.replace(",pout_mc,mc_ci95,mc_samples", "");
    const text = `${slim}\n10.0,10.0,2.0,8,1.0,3.0,10.0,0.25,,0.01\n`;
    const rows = parseSweepCsv(text);
    expect(rows[0].pout_mc).toBeNull();
    expect(rows[0].pout_floor).toBe(0.01);
  });
});

describe("buildSweepChart", () => {
  it("renders six curves with floors, markers and error bars", () => {
    const rows = parseSweepCsv(readFileSync(DATA, "utf-8"));
    const svg = buildSweepChart(rows);
    expect(countMatches(svg, 'class="curve"')).toBe(6);
    expect(countMatches(svg, 'class="floor"')).toBe(6);
    expect(countMatches(svg, 'class="mc"')).toBeGreaterThan(100);
    expect(countMatches(svg, 'class="mc-err"')).toBeGreaterThan(100);
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
  });

  it("honors a custom group-by selection", () => {
    const rows = parseSweepCsv(readFileSync(DATA, "utf-8"));
    const svg = buildSweepChart(rows, { groupKeys: ["rytov_var"] });
    expect(countMatches(svg, 'class="curve"')).toBe(2);
    expect(() => groupRows(rows, ["nonsense"])).toThrow(/group-by/);
  });

  it("survives a single-row CSV as a lone marker", () => {
    const text = `${HEADER}\n25.0,25.0,2.0,8,1.0,3.0,10.0,0.004,,0.0008,,,\n`;
    const svg = buildSweepChart(parseSweepCsv(text));
    expect(countMatches(svg, 'class="curve"')).toBe(1);
    expect(svg).toContain("<circle");
  });

  it("draws lines only when MC columns are absent", () => {
    const slim = HEADER.replace(",pout_mc,mc_ci95,mc_samples", "");
    const lines = [slim];
    for (const mu of [0, 10, 20, 30]) {
      lines.push(`${mu}.0,${mu}.0,2.0,8,1.0,3.0,10.0,${0.5 / (mu + 1)},,0.001`);
    }
    const svg = buildSweepChart(parseSweepCsv(lines.join("\n") + "\n"));
    expect(countMatches(svg, 'class="curve"')).toBe(1);
    expect(countMatches(svg, 'class="mc"')).toBe(0);
    expect(countMatches(svg, 'class="mc-err"')).toBe(0);
  });
});

describe("plot_sweep CLI", () => {
  it("parses flags and writes an SVG once", async () => {
    const dir = mkdtempSync(path.join(tmpdir(), "owcplot-"));
    const out = path.join(dir, "chart.svg");
    const args = parseArgs(["--input", DATA, "--output", out,
                            "--group-by", "rytov_var,n_leds"]);
    await run(args);
    const svg = readFileSync(out, "utf-8");
    expect(countMatches(svg, 'class="curve"')).toBe(6);

    // input untouched, overwrite refused without the flag
    const before = readFileSync(DATA, "utf-8");
    await expect(run(args)).rejects.toThrow(/overwrite/);
    expect(readFileSync(DATA, "utf-8")).toBe(before);
    await run({ ...args, overwrite: true });
  });

  it("rejects malformed invocations", () => {
    expect(() => parseArgs(["--input", "x.csv"])).toThrow(/required/);
    expect(() => parseArgs(["--bogus"])).toThrow(/unknown argument/);
    expect(() => parseArgs(["--input"])).toThrow(/needs a value/);
  });

  it("propagates schema errors from bad inputs", async () => {
    const dir = mkdtempSync(path.join(tmpdir(), "owcplot-"));
    const bad = path.join(dir, "bad.csv");
    writeFileSync(bad, "a,b\n1,2\n");
    const out = path.join(dir, "bad.svg");
    await expect(run({ input: bad, output: out, groupBy: ["rytov_var"],
                       overwrite: false })).rejects.toThrow(SchemaError);
  });
});
