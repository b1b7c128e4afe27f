/** Chart layout: fidelity versus success probability, one series per
 * scenario in the sweep table.
 */

import { SweepRow, SweepTable } from "./csv";
import { encodePng } from "./png";
import { BLACK, Canvas, Color, GREY } from "./render";
import { textWidth } from "./font";

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = { left: 80, right: 24, top: 48, bottom: 56 } as const;

const PALETTE: Color[] = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
  [148, 103, 189],
];

interface Range {
  min: number;
  max: number;
}

function padded(values: number[]): Range {
  let min = Math.min(...values);
  let max = Math.max(...values);
  if (min === max) {
    const pad = Math.max(Math.abs(min) * 0.1, 0.01);
    min -= pad;
    max += pad;
  }
  const pad = (max - min) * 0.05;
  return { min: min - pad, max: max + pad };
}

function formatTick(value: number): string {
  if (value === 0) {
    return "0";
  }
  return Number(value.toPrecision(3)).toString();
}

/** A polyline only makes sense when one knob varies; grids get markers. */
function lineOrder(rows: SweepRow[]): SweepRow[] | null {
  if (rows.length < 2) {
    return null;
  }
  const sameR = rows.every((row) => row.r === rows[0].r);
  const sameTau = rows.every((row) => row.tau === rows[0].tau);
  if (!sameR && !sameTau) {
    return null;
  }
  const key = sameR ? (row: SweepRow) => row.tau : (row: SweepRow) => row.r;
  return [...rows].sort((a, b) => key(a) - key(b));
}

export function renderSweep(table: SweepTable): Buffer {
  const canvas = new Canvas(WIDTH, HEIGHT);
  const plot = {
    x0: MARGIN.left,
    y0: MARGIN.top,
    x1: WIDTH - MARGIN.right,
    y1: HEIGHT - MARGIN.bottom,
  };
  const xRange = padded(table.rows.map((row) => row.pSuccess));
  const yRange = padded(table.rows.map((row) => row.fidelity));
  const toX = (v: number): number =>
    plot.x0 + ((v - xRange.min) / (xRange.max - xRange.min)) * (plot.x1 - plot.x0);
  const toY = (v: number): number =>
    plot.y1 - ((v - yRange.min) / (yRange.max - yRange.min)) * (plot.y1 - plot.y0);

  const title = `fidelity vs success probability (q_gamma=${formatTick(table.rows[0].qGamma)})`;
  canvas.drawText((WIDTH - textWidth(title)) / 2, 16, title, BLACK);

  for (let i = 0; i <= 4; i++) {
    const fx = xRange.min + (i / 4) * (xRange.max - xRange.min);
    const fy = yRange.min + (i / 4) * (yRange.max - yRange.min);
    const px = Math.round(toX(fx));
    const py = Math.round(toY(fy));
    canvas.drawLine(px, plot.y0, px, plot.y1, GREY);
    canvas.drawLine(plot.x0, py, plot.x1, py, GREY);
    const xLabel = formatTick(fx);
    canvas.drawText(px - textWidth(xLabel) / 2, plot.y1 + 8, xLabel, BLACK);
    const yLabel = formatTick(fy);
    canvas.drawText(plot.x0 - textWidth(yLabel) - 8, py - 3, yLabel, BLACK);
  }
  canvas.drawLine(plot.x0, plot.y0, plot.x0, plot.y1, BLACK);
  canvas.drawLine(plot.x0, plot.y1, plot.x1, plot.y1, BLACK);
  const xTitle = "success probability";
  canvas.drawText((plot.x0 + plot.x1 - textWidth(xTitle)) / 2, plot.y1 + 24,
                  xTitle, BLACK);
  canvas.drawText(8, plot.y0 - 16, "fidelity", BLACK);

  table.scenarios.forEach((scenario, s) => {
    const color = PALETTE[s % PALETTE.length];
    const rows = table.rows.filter((row) => row.scenario === scenario);
    const ordered = lineOrder(rows);
    if (ordered !== null) {
      for (let i = 1; i < ordered.length; i++) {
        canvas.drawLine(toX(ordered[i - 1].pSuccess), toY(ordered[i - 1].fidelity),
                        toX(ordered[i].pSuccess), toY(ordered[i].fidelity),
                        color);
      }
    }
    for (const row of rows) {
      canvas.drawMarker(toX(row.pSuccess), toY(row.fidelity), color);
    }
    const ly = plot.y0 + 10 + s * 14;
    canvas.fillRect(plot.x0 + 10, ly, 10, 10, color);
    canvas.drawText(plot.x0 + 26, ly + 1, scenario, BLACK);
  });

  return encodePng(WIDTH, HEIGHT, canvas.data);
}
