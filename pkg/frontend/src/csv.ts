/** Parsing for the sweep CSV schema produced by the kfun CLI.
 *
 * Expected header: scenario,q_gamma,r,tau,p_success,fidelity
 * Every data row carries one (scenario, r, tau) point.
 */

export interface SweepRow {
  scenario: string;
  qGamma: number;
  r: number;
  tau: number;
  pSuccess: number;
  fidelity: number;
}

export interface SweepTable {
  /** Scenario names in order of first appearance. */
  scenarios: string[];
  rows: SweepRow[];
}

const REQUIRED = ["scenario", "q_gamma", "r", "tau", "p_success", "fidelity"];

export function parseSweepCsv(text: string): SweepTable {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length < 2) {
    throw new Error("CSV must contain a header line and at least one row");
  }
  const header = lines[0].split(",").map((cell) => cell.trim());
  const index = new Map<string, number>();
  header.forEach((name, i) => index.set(name, i));
  for (const name of REQUIRED) {
    if (!index.has(name)) {
      throw new Error(`CSV is missing required column '${name}'`);
    }
  }
  const col = (cells: string[], name: string): string =>
    cells[index.get(name) as number];
  const num = (cells: string[], name: string, lineNo: number): number => {
    const value = Number(col(cells, name));
    if (!Number.isFinite(value)) {
      throw new Error(`non-numeric '${name}' value on line ${lineNo}`);
    }
    return value;
  };

  const scenarios: string[] = [];
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",").map((cell) => cell.trim());
    if (cells.length < header.length) {
      throw new Error(`line ${i + 1} has ${cells.length} fields, expected ${header.length}`);
    }
    const scenario = col(cells, "scenario");
    if (!scenarios.includes(scenario)) {
      scenarios.push(scenario);
    }
    rows.push({
      scenario,
      qGamma: num(cells, "q_gamma", i + 1),
      r: num(cells, "r", i + 1),
      tau: num(cells, "tau", i + 1),
      pSuccess: num(cells, "p_success", i + 1),
      fidelity: num(cells, "fidelity", i + 1),
    });
  }
  return { scenarios, rows };
}
