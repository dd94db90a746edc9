import { execFile } from "node:child_process";
import { mkdtemp, readFile, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import path from "node:path";
import { promisify } from "node:util";

import { describe, expect, it } from "vitest";

import {
  VERSION,
  boundDecode,
  boundSweep,
  parseDenseLines,
  toDenseLines,
} from "../src/index.js";

const execFileAsync = promisify(execFile);

// ---------------------------------------------------------------------------
// Fixtures built on the test side so the oracle comparisons stay independent
// of the wrapper's marshalling.

const HAMMING = [
  "1001011",
  "0101101",
  "0010111",
];

function identity(n: number): number[][] {
  return Array.from({ length: n }, (_, i) =>
    Array.from({ length: n }, (_, j) => (i === j ? 1 : 0)),
  );
}

function cyclicDifference(L: number): number[][] {
  const h = Array.from({ length: L }, () => Array(L).fill(0));
  for (let i = 0; i < L; i++) {
    h[i][i] = 1;
    h[i][(i + 1) % L] = 1;
  }
  return h;
}

function transpose(m: number[][]): number[][] {
  return m[0].map((_, j) => m.map((row) => row[j]));
}

function kron(a: number[][], b: number[][]): number[][] {
  const out: number[][] = [];
  for (const arow of a) {
    for (const brow of b) {
      const row: number[] = [];
      for (const av of arow) {
        for (const bv of brow) {
          row.push(av * bv);
        }
      }
      out.push(row);
    }
  }
  return out;
}

function hstack(a: number[][], b: number[][]): number[][] {
  return a.map((row, i) => [...row, ...b[i]]);
}

/** Toric code PCMs from the hypergraph product of two cyclic repetition codes. */
function toricPair(L: number): { hx: number[][]; hz: number[][] } {
  const h = cyclicDifference(L);
  const id = identity(L);
  const ht = transpose(h);
  return {
    hx: hstack(kron(h, id), kron(id, ht)),
    hz: hstack(kron(id, h), kron(ht, id)),
  };
}

function matVecMod2(m: number[][], x: number[]): number[] {
  return m.map((row) => row.reduce((acc, v, j) => acc ^ (v & x[j]), 0));
}

/** Small deterministic PRNG so trials are reproducible across runs. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function sampleError(n: number, p: number, rnd: () => number): number[] {
  return Array.from({ length: n }, () => (rnd() < p ? 1 : 0));
}

/** Direct CLI invocation, independent of the wrapper's plumbing. */
async function cliDecode(
  hx: string[],
  hz: string[],
  syndrome: string,
  extra: string[],
): Promise<{ estimate: string; converged: boolean; growth_steps: number }> {
  const dir = await mkdtemp(path.join(tmpdir(), "qldpcdec-oracle-"));
  try {
    const hxPath = path.join(dir, "hx.pcm");
    const hzPath = path.join(dir, "hz.pcm");
    await writeFile(hxPath, hx.join("\n") + "\n", "ascii");
    await writeFile(hzPath, hz.join("\n") + "\n", "ascii");
    const { stdout } = await execFileAsync("python3", [
      "-m", "qldpcdec.cli", "decode",
      "--hx", hxPath, "--hz", hzPath, "--syndrome", syndrome, ...extra,
    ]);
    return JSON.parse(stdout);
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}

describe("matrix marshalling", () => {
  it("round-trips every bit through the dense boundary format", async () => {
    const rnd = mulberry32(7);
    for (let trial = 0; trial < 20; trial++) {
      const rows = 1 + Math.floor(rnd() * 5);
      const cols = 1 + Math.floor(rnd() * 9);
      const matrix = Array.from({ length: rows }, () =>
        Array.from({ length: cols }, () => (rnd() < 0.4 ? 1 : 0)),
      );
      expect(parseDenseLines(toDenseLines(matrix))).toEqual(matrix);

      const dir = await mkdtemp(path.join(tmpdir(), "qldpcdec-rt-"));
      try {
        const file = path.join(dir, "m.pcm");
        await writeFile(file, toDenseLines(matrix).join("\n") + "\n", "ascii");
        const back = (await readFile(file, "ascii")).trim().split("\n");
        expect(parseDenseLines(back)).toEqual(matrix);
      } finally {
        await rm(dir, { recursive: true, force: true });
      }
    }
  });

  it("rejects malformed matrices locally", () => {
    expect(() => toDenseLines([])).toThrow(TypeError);
    expect(() => toDenseLines([[0, 2]])).toThrow(/0 or 1/);
    expect(() => toDenseLines(["01", "0"])).toThrow(/unequal/);
  });
});

describe("boundDecode", () => {
  it("reproduces the known single-check correction on the Steane code", async () => {
    const result = await boundDecode(HAMMING, HAMMING, "010");
    expect(result.converged).toBe(true);
    expect(result.estimate).toBe("0100000");
    expect(result.growthSteps).toBe(1);
    expect(result.decodeNs).toBeGreaterThanOrEqual(0);
  });

  it("maps a zero syndrome to a zero estimate", async () => {
    const result = await boundDecode(HAMMING, HAMMING, [0, 0, 0], { decoder: "ufh" });
    expect(result.converged).toBe(true);
    expect(result.estimate).toBe("0000000");
  });

  it("surfaces core shape errors with the core's message", async () => {
    const bad = ["10", "01"]; // two columns against the 7-column hz
    await expect(boundDecode(bad, HAMMING, "010")).rejects.toThrow(/column mismatch/);
  });

  it("agrees bitwise with the CLI on 100 seeded toric(4) instances", async () => {
    const { hx, hz } = toricPair(4);
    const hxLines = toDenseLines(hx);
    const hzLines = toDenseLines(hz);
    for (let seed = 0; seed < 100; seed++) {
      const rnd = mulberry32(0xabc0 + seed);
      const error = sampleError(hx[0].length, 0.06, rnd);
      const syndrome = matVecMod2(hz, error).join("");
      const viaBindings = await boundDecode(hx, hz, syndrome, {
        decoder: "ufh",
        growth: "ssg",
        seed,
      });
      const viaCli = await cliDecode(hxLines, hzLines, syndrome, [
        "--decoder", "ufh", "--growth", "ssg", "--seed", String(seed),
      ]);
      expect(viaBindings.estimate).toBe(viaCli.estimate);
      expect(viaBindings.converged).toBe(viaCli.converged);
      expect(viaBindings.growthSteps).toBe(viaCli.growth_steps);
    }
  });
});

describe("boundSweep", () => {
  it("reports zero failures at zero noise", async () => {
    const points = await boundSweep({
      hx: HAMMING,
      hz: HAMMING,
      perStart: 0,
      perEnd: 0,
      perPoints: 1,
      samples: 10,
      seed: 5,
      threads: 1,
    });
    expect(points).toHaveLength(1);
    expect(points[0].failures).toBe(0);
    expect(points[0].wordErrorRate).toBe(0);
  });

  it("matches the CLI CSV failure counts for a fixed config", async () => {
    const { hx, hz } = toricPair(4);
    const points = await boundSweep({
      hx,
      hz,
      perStart: 0.01,
      perEnd: 0.04,
      perPoints: 2,
      samples: 200,
      seed: 77,
      decoder: "ufh",
      growth: "ssg",
      threads: 2,
    });

    const dir = await mkdtemp(path.join(tmpdir(), "qldpcdec-sweep-"));
    try {
      const hxPath = path.join(dir, "hx.pcm");
      const hzPath = path.join(dir, "hz.pcm");
      const outPath = path.join(dir, "ref.csv");
      await writeFile(hxPath, toDenseLines(hx).join("\n") + "\n", "ascii");
      await writeFile(hzPath, toDenseLines(hz).join("\n") + "\n", "ascii");
      await execFileAsync("python3", [
        "-m", "qldpcdec.cli", "simulate",
        "--hx", hxPath, "--hz", hzPath,
        "--per-start", "0.01", "--per-end", "0.04", "--per-points", "2",
        "--samples", "200", "--decoder", "ufh", "--growth", "ssg",
        "--seed", "77", "--threads", "2", "--out", outPath,
      ]);
      const reference = (await readFile(outPath, "ascii")).trim().split("\n").slice(1);
      expect(points).toHaveLength(reference.length);
      reference.forEach((line, i) => {
        const fields = line.split(",");
        expect(points[i].per).toBe(Number(fields[0]));
        expect(points[i].samples).toBe(Number(fields[1]));
        expect(points[i].failures).toBe(Number(fields[2]));
        expect(points[i].seed).toBe(77);
      });
    } finally {
      await rm(dir, { recursive: true, force: true });
    }
  });

  it("reports word error rate equal to block error rate for a k=1 code", async () => {
    const points = await boundSweep({
      hx: HAMMING,
      hz: HAMMING,
      perStart: 0.05,
      perEnd: 0.05,
      perPoints: 1,
      samples: 150,
      seed: 11,
      threads: 1,
    });
    expect(points[0].wordErrorRate).toBeCloseTo(points[0].blockErrorRate, 12);
  });

  it("rejects an invalid config before any computation", async () => {
    await expect(
      boundSweep({
        hx: HAMMING,
        hz: HAMMING,
        perStart: 0.2,
        perEnd: 0.1,
        perPoints: 2,
        samples: 5,
        seed: 1,
      }),
    ).rejects.toThrow(/per-start/);
  });
});

describe("package metadata", () => {
  it("mirrors the core version", () => {
    expect(VERSION).toMatch(/^\d+\.\d+\.\d+$/);
  });
});
