import { mkdtempSync, readFileSync, writeFileSync, existsSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

import { beforeAll, describe, expect, it } from "vitest";

import { main } from "../src/cli";
import { loadFigureData, SchemaError } from "../src/csv";
import { render } from "../src/render";

let dir: string;

beforeAll(() => {
  dir = mkdtempSync(join(tmpdir(), "trustnet-plots-"));
});

function fixture(name: string, content: string): string {
  const path = join(dir, name);
  writeFileSync(path, content, "utf-8");
  return path;
}

const ERROR_CURVE_CSV =
  "w_m,w_fa,w_e\n" +
  "0,0,0\n0,0.5,0.1\n0,1,0.2\n" +
  "0.25,0,0.2\n0.25,0.5,0.3\n0.25,1,0.4\n" +
  "0.5,0,0.4\n0.5,0.5,0.5\n0.5,1,0.6\n";

// rows produced by the simulator CLI for mu1=0.4, mu3=0.1, snr_lid=10
const SNR_CURVE_CSV =
  "snr_md,rho,r_nid\n" +
  "0,0,1.72972\n" +
  "5,0.454545,1.52528\n" +
  "10,0.909091,1.47706\n" +
  "20,1.81818,1.43996\n";

const COMPROMISE_CSV =
  "trust_enabled,network_size,mean_compromised_count\n" +
  "true,25,3.2\ntrue,100,11.5\n" +
  "false,25,14.1\nfalse,100,58.9\n";

describe("loadFigureData", () => {
  it("groups error-curve rows by w_m", () => {
    const path = fixture("ec.csv", ERROR_CURVE_CSV);
    const data = loadFigureData(path, "error-curve");
    expect(data.series).toHaveLength(3);
    expect(data.series.map((s) => s.key)).toEqual(["0", "0.25", "0.5"]);
    expect(data.series[0].points).toHaveLength(3);
  });

  it("treats ungrouped kinds as a single series", () => {
    const path = fixture("as.csv", "alpha,mean_compromised_fraction,stddev\n0,0,0\n1,0.6,0.1\n");
    const data = loadFigureData(path, "attack-strength");
    expect(data.series).toHaveLength(1);
  });

  it("rejects a header mismatch", () => {
    const path = fixture("bad-header.csv", "a,b,c\n1,2,3\n");
    expect(() => loadFigureData(path, "error-curve")).toThrow(SchemaError);
  });

  it("rejects a CSV with no data rows", () => {
    const path = fixture("empty.csv", "w_m,w_fa,w_e\n");
    expect(() => loadFigureData(path, "error-curve")).toThrow(/no data rows/);
  });

  it("rejects non-numeric plot values", () => {
    const path = fixture("nan.csv", "w_m,w_fa,w_e\n0,oops,0.1\n");
    expect(() => loadFigureData(path, "error-curve")).toThrow(SchemaError);
  });
});

describe("render", () => {
  it("draws one series per w_m group", () => {
    const input = fixture("ec-render.csv", ERROR_CURVE_CSV);
    const out = join(dir, "ec.svg");
    const result = render({ inputCsv: input, figureKind: "error-curve", outputImage: out });
    expect(result.seriesCount).toBe(3);
    const svg = readFileSync(out, "utf-8");
    expect(svg.match(/class="series"/g)).toHaveLength(3);
    expect(svg).toContain("probability of false authentication");
  });

  it("does not modify its input CSV", () => {
    const input = fixture("ec-untouched.csv", ERROR_CURVE_CSV);
    const before = readFileSync(input);
    render({ inputCsv: input, figureKind: "error-curve", outputImage: join(dir, "x.svg") });
    expect(readFileSync(input).equals(before)).toBe(true);
  });

  it("renders the snr curve whose throughput data is non-increasing", () => {
    const input = fixture("snr.csv", SNR_CURVE_CSV);
    const data = loadFigureData(input, "snr-curve");
    const ys = data.series[0].points.map((p) => p.y);
    for (let i = 1; i < ys.length; i++) {
      expect(ys[i]).toBeLessThanOrEqual(ys[i - 1]);
    }
    const result = render({ inputCsv: input, figureKind: "snr-curve", outputImage: join(dir, "snr.svg") });
    expect(result.seriesCount).toBe(1);
  });

  it("splits compromise rows by trust setting", () => {
    const input = fixture("comp.csv", COMPROMISE_CSV);
    const result = render({ inputCsv: input, figureKind: "compromise", outputImage: join(dir, "comp.svg") });
    expect(result.seriesCount).toBe(2);
    const svg = readFileSync(join(dir, "comp.svg"), "utf-8");
    expect(svg).toContain("trust_enabled = true");
    expect(svg).toContain("trust_enabled = false");
  });

  it("refuses non-SVG output paths", () => {
    const input = fixture("ec-png.csv", ERROR_CURVE_CSV);
    expect(() =>
      render({ inputCsv: input, figureKind: "error-curve", outputImage: join(dir, "x.png") })
    ).toThrow(RangeError);
  });
});

describe("cli", () => {
  it("renders a figure and exits 0", () => {
    const input = fixture("cli-ok.csv", ERROR_CURVE_CSV);
    const out = join(dir, "cli-ok.svg");
    expect(main([input, "--kind", "error-curve", "--out", out])).toBe(0);
    expect(existsSync(out)).toBe(true);
  });

  it("exits 1 on usage errors", () => {
    expect(main(["--kind", "error-curve"])).toBe(1);
    const input = fixture("cli-kind.csv", ERROR_CURVE_CSV);
    expect(main([input, "--kind", "not-a-kind"])).toBe(1);
  });

  it("exits 2 on schema mismatch", () => {
    const input = fixture("cli-schema.csv", "a,b\n1,2\n");
    expect(main([input, "--kind", "error-curve", "--out", join(dir, "y.svg")])).toBe(2);
  });

  it("exits 2 when the input file is missing", () => {
    expect(main([join(dir, "absent.csv"), "--kind", "error-curve"])).toBe(2);
  });

  it("exits 2 on empty data", () => {
    const input = fixture("cli-empty.csv", "w_m,w_fa,w_e\n");
    expect(main([input, "--kind", "error-curve", "--out", join(dir, "z.svg")])).toBe(2);
  });
});
