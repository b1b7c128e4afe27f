import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { PNG_SIGNATURE } from "../src/png";
import { main } from "../src/plot_sweep";

const FIXTURES = join(__dirname, "fixtures");

describe("plot_sweep CLI", () => {
  let dir: string;

  beforeEach(() => {
    dir = mkdtempSync(join(tmpdir(), "plot-sweep-"));
    vi.spyOn(console, "error").mockImplementation(() => {});
  });

  afterEach(() => {
    vi.restoreAllMocks();
  });

  it("renders a fixture CSV to a PNG file", () => {
    const out = join(dir, "plot.png");
    expect(main([join(FIXTURES, "bell_q01.csv"), out])).toBe(0);
    expect(existsSync(out)).toBe(true);
    const png = readFileSync(out);
    expect(png.subarray(0, 8).equals(PNG_SIGNATURE)).toBe(true);
  });

  it("renders a single-row CSV", () => {
    const csv = join(dir, "one.csv");
    writeFileSync(
      csv,
      "scenario,q_gamma,r,tau,p_success,fidelity\nonly,0.3,0.5,0.5,0.25,0.75\n",
    );
    const out = join(dir, "one.png");
    expect(main([csv, out])).toBe(0);
    expect(readFileSync(out).subarray(0, 8).equals(PNG_SIGNATURE)).toBe(true);
  });

  it("returns 2 on wrong argument count", () => {
    expect(main([])).toBe(2);
    expect(main(["a", "b", "c"])).toBe(2);
  });

  it("returns 1 when the input file is missing", () => {
    expect(main([join(dir, "nope.csv"), join(dir, "out.png")])).toBe(1);
  });

  it("returns 1 on a schema violation", () => {
    const csv = join(dir, "bad.csv");
    writeFileSync(csv, "scenario,q_gamma\na,1\n");
    expect(main([csv, join(dir, "out.png")])).toBe(1);
  });
});
