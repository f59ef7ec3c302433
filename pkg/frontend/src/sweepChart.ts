/**
 * Sweep CSV → SVG outage chart.
 *
 * Consumes the sweep artifact schema produced by `owcrelay sweep`:
 *
 *   mu1_db, mu2_db, rytov_var, n_leds, pt_w, L_m, gamma_th_db,
 *   pout_analytic, pout_fso_only, pout_floor, pout_mc, mc_ci95, mc_samples
 *
 * One line per distinct group-key tuple (default: the variant columns),
 * analytic values as lines on a log y-axis, Monte Carlo estimates as
 * markers with 95% error bars, and a dashed horizontal line per group at
 * the outage floor.  The three MC columns are optional; everything else is
 * required and a missing column raises a schema error.
 */

export interface SweepRow {
  mu1_db: number;
  mu2_db: number;
  rytov_var: number;
  n_leds: number;
  pt_w: number;
  L_m: number;
  gamma_th_db: number;
  pout_analytic: number;
  pout_fso_only: number | null;
  pout_floor: number;
  pout_mc: number | null;
  mc_ci95: number | null;
  mc_samples: number | null;
}

export const REQUIRED_COLUMNS = [
  "mu1_db", "mu2_db", "rytov_var", "n_leds", "pt_w", "L_m", "gamma_th_db",
  "pout_analytic", "pout_floor",
] as const;

export const OPTIONAL_COLUMNS = [
  "pout_fso_only", "pout_mc", "mc_ci95", "mc_samples",
] as const;

export const DEFAULT_GROUP_KEYS = ["rytov_var", "n_leds", "pt_w", "L_m"] as const;

export class SchemaError extends Error {}

function parseCell(raw: string): number | null {
  const trimmed = raw.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`cannot parse numeric cell ${JSON.stringify(raw)}`);
  }
  return value;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) throw new SchemaError("empty CSV");
  const header = lines[0].split(",").map((h) => h.trim());
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`missing required column(s): ${missing.join(", ")}`);
  }
  const index = new Map(header.map((name, i) => [name, i]));

  const rows: SweepRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const get = (name: string): number | null => {
      const i = index.get(name);
      return i === undefined || i >= cells.length ? null : parseCell(cells[i]);
    };
    const required = (name: string): number => {
      const v = get(name);
      if (v === null) throw new SchemaError(`empty value in required column ${name}`);
      return v;
    };
    rows.push({
      mu1_db: required("mu1_db"),
      mu2_db: required("mu2_db"),
      rytov_var: required("rytov_var"),
      n_leds: required("n_leds"),
      pt_w: required("pt_w"),
      L_m: required("L_m"),
      gamma_th_db: required("gamma_th_db"),
      pout_analytic: required("pout_analytic"),
      pout_fso_only: get("pout_fso_only"),
      pout_floor: required("pout_floor"),
      pout_mc: get("pout_mc"),
      mc_ci95: get("mc_ci95"),
      mc_samples: get("mc_samples"),
    });
  }
  if (rows.length === 0) throw new SchemaError("CSV has a header but no data rows");
  return rows;
}

export interface Group {
  label: string;
  rows: SweepRow[];
}

export function groupRows(rows: SweepRow[], keys: readonly string[]): Group[] {
  for (const key of keys) {
    if (!REQUIRED_COLUMNS.includes(key as (typeof REQUIRED_COLUMNS)[number])) {
      throw new SchemaError(`unknown group-by column: ${key}`);
    }
  }
  const groups = new Map<string, SweepRow[]>();
  for (const row of rows) {
    const tuple = keys.map((k) => row[k as keyof SweepRow]);
    const id = JSON.stringify(tuple);
    const bucket = groups.get(id);
    if (bucket) bucket.push(row);
    else groups.set(id, [row]);
  }
  // drop keys that never vary so legends stay short
  const varying = keys.filter((k) =>
    new Set(rows.map((r) => r[k as keyof SweepRow])).size > 1);
  const labelKeys = varying.length > 0 ? varying : keys.slice(0, 1);
  return [...groups.values()].map((bucket) => ({
    label: labelKeys.map((k) => `${k}=${bucket[0][k as keyof SweepRow]}`).join(", "),
    rows: bucket,
  }));
}

const PALETTE = [
  "#4361ee", "#e63946", "#2d6a4f", "#f77f00", "#9d4edd", "#0096c7",
  "#b5838d", "#386641", "#bc6c25", "#5e548e",
];

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface ChartOptions {
  groupKeys?: readonly string[];
  title?: string;
  width?: number;
  height?: number;
}

/** Pick the swept dB axis: whichever backhaul SNR column actually varies. */
function axisColumn(rows: SweepRow[]): "mu1_db" | "mu2_db" {
  const mu1Varies = new Set(rows.map((r) => r.mu1_db)).size > 1;
  const mu2Varies = new Set(rows.map((r) => r.mu2_db)).size > 1;
  return !mu1Varies && mu2Varies ? "mu2_db" : "mu1_db";
}

export function buildSweepChart(rows: SweepRow[], opts: ChartOptions = {}): string {
  const keys = opts.groupKeys ?? DEFAULT_GROUP_KEYS;
  const groups = groupRows(rows, keys);
  const axis = axisColumn(rows);
  for (const g of groups) g.rows.sort((a, b) => a[axis] - b[axis]);

  const W = opts.width ?? 760;
  const H = opts.height ?? 420;
  const ml = 64, mr = 200, mt = 40, mb = 48;
  const pw = W - ml - mr;
  const ph = H - mt - mb;

  const xs = rows.map((r) => r[axis]);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const xOf = (v: number) => ml + ((v - xMin) / (xMax - xMin || 1)) * pw;

  // log y-range from every positive plotted quantity, floors included
  const positives: number[] = [];
  for (const r of rows) {
    if (r.pout_analytic > 0) positives.push(r.pout_analytic);
    if (r.pout_floor > 0) positives.push(r.pout_floor);
    if (r.pout_mc !== null && r.pout_mc > 0) positives.push(r.pout_mc);
  }
  if (positives.length === 0) positives.push(1e-8, 1);
  let yLo = Math.floor(Math.log10(Math.min(...positives)));
  let yHi = Math.ceil(Math.log10(Math.max(...positives)));
  yLo = Math.max(yLo, yHi - 12); // cap the dynamic range at 12 decades
  if (yLo === yHi) yLo = yHi - 1;
  const yOf = (p: number) =>
    mt + ph - ((Math.log10(p) - yLo) / (yHi - yLo)) * ph;
  const clampP = (p: number) => Math.max(p, Math.pow(10, yLo));

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;
  const title = opts.title ?? "Outage probability vs. backhaul SNR";
  s += `<text x="${ml}" y="${mt - 18}" font-size="13" font-weight="600" fill="#222">${esc(title)}</text>\n`;
  s += `<text x="${ml}" y="${mt - 5}" font-size="9" fill="#888">${rows.length} rows, ${groups.length} curve(s); threshold ${rows[0].gamma_th_db} dB</text>\n`;

  // decade grid and y tick labels
  for (let k = yLo; k <= yHi; k++) {
    const y = yOf(Math.pow(10, k));
    s += `<line x1="${ml}" y1="${y.toFixed(1)}" x2="${ml + pw}" y2="${y.toFixed(1)}" stroke="#eee" stroke-width="0.6"/>\n`;
    s += `<text x="${ml - 6}" y="${(y + 3).toFixed(1)}" font-size="9" fill="#444" text-anchor="end">1e${k}</text>\n`;
  }
  // x ticks every 10 dB (or 5 points if the span is narrow)
  const xStep = xMax - xMin > 30 ? 10 : Math.max((xMax - xMin) / 5, 1e-9);
  for (let v = Math.ceil(xMin / xStep) * xStep; v <= xMax + 1e-9; v += xStep) {
    const x = xOf(v);
    s += `<line x1="${x.toFixed(1)}" y1="${mt + ph}" x2="${x.toFixed(1)}" y2="${mt + ph + 4}" stroke="#333" stroke-width="0.7"/>\n`;
    s += `<text x="${x.toFixed(1)}" y="${mt + ph + 16}" font-size="9" fill="#444" text-anchor="middle">${Number(v.toFixed(6))}</text>\n`;
  }
  s += `<text x="${ml + pw / 2}" y="${H - 10}" font-size="10" fill="#222" text-anchor="middle">${axis === "mu1_db" ? "mu1 = mu2" : "mu2"} (dB)</text>\n`;
  s += `<text x="14" y="${mt + ph / 2}" font-size="10" fill="#222" text-anchor="middle" transform="rotate(-90 14 ${mt + ph / 2})">outage probability</text>\n`;

  groups.forEach((group, gi) => {
    const color = PALETTE[gi % PALETTE.length];

    // dashed per-variant floor line
    const floor = group.rows[0].pout_floor;
    if (floor > 0) {
      const y = yOf(clampP(floor)).toFixed(1);
      s += `<line class="floor" x1="${ml}" y1="${y}" x2="${ml + pw}" y2="${y}" stroke="${color}" stroke-width="0.8" stroke-dasharray="6,4" opacity="0.55"/>\n`;
    }

    // analytic curve (line needs at least two points; lone points get a dot)
    const pts = group.rows
      .filter((r) => r.pout_analytic > 0)
      .map((r) => `${xOf(r[axis]).toFixed(1)},${yOf(clampP(r.pout_analytic)).toFixed(1)}`);
    if (pts.length >= 2) {
      s += `<polyline class="curve" fill="none" stroke="${color}" stroke-width="1.6" points="${pts.join(" ")}"/>\n`;
    } else if (pts.length === 1) {
      const [x, y] = pts[0].split(",");
      s += `<circle class="curve" cx="${x}" cy="${y}" r="3" fill="${color}"/>\n`;
    }

    // Monte Carlo markers with 95% error bars
    for (const r of group.rows) {
      if (r.pout_mc === null || r.pout_mc <= 0) continue;
      const x = xOf(r[axis]).toFixed(1);
      const y = yOf(clampP(r.pout_mc)).toFixed(1);
      if (r.mc_ci95 !== null && r.mc_ci95 > 0) {
        const lo = yOf(clampP(Math.max(r.pout_mc - r.mc_ci95, Math.pow(10, yLo)))).toFixed(1);
        const hi = yOf(clampP(r.pout_mc + r.mc_ci95)).toFixed(1);
        s += `<line class="mc-err" x1="${x}" y1="${lo}" x2="${x}" y2="${hi}" stroke="${color}" stroke-width="0.9"/>\n`;
      }
      s += `<circle class="mc" cx="${x}" cy="${y}" r="2.2" fill="none" stroke="${color}" stroke-width="1.1"/>\n`;
    }

    // legend entry
    const ly = mt + 12 + gi * 16;
    s += `<line x1="${ml + pw + 12}" y1="${ly}" x2="${ml + pw + 34}" y2="${ly}" stroke="${color}" stroke-width="1.6"/>\n`;
    s += `<text x="${ml + pw + 40}" y="${ly + 3}" font-size="9" fill="#333">${esc(group.label)}</text>\n`;
  });

  // axes frame
  s += `<line x1="${ml}" y1="${mt}" x2="${ml}" y2="${mt + ph}" stroke="#333" stroke-width="0.8"/>\n`;
  s += `<line x1="${ml}" y1="${mt + ph}" x2="${ml + pw}" y2="${mt + ph}" stroke="#333" stroke-width="0.8"/>\n`;
  s += `</svg>\n`;
  return s;
}
