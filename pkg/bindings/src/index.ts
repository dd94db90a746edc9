/**
 * TypeScript bindings for the qldpcdec decoding toolkit.
 *
 * The heavy lifting happens in the toolkit's command-line core; these
 * bindings marshal matrices and syndromes across that boundary (parity-check
 * matrices as dense 0/1 files, results as JSON or CSV) and surface core
 * errors as ordinary exceptions carrying the core's message text.  All calls
 * are asynchronous: the core runs in a child process and never blocks the
 * event loop.
 */

import { spawn } from "node:child_process";
import { mkdtemp, readFile, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import path from "node:path";

/** Mirrors the core package version. */
export const VERSION = "0.1.0";

/** Rows of 0/1 numbers, or rows as '0'/'1' strings. */
export type MatrixInput = ReadonlyArray<ReadonlyArray<number>> | ReadonlyArray<string>;

export type DecoderName = "general" | "ufh";
export type GrowthStrategy = "ag" | "ssg" | "srg";
export type Side = "x" | "z";

export interface DecodeResult {
  estimate: string;
  converged: boolean;
  growthSteps: number;
  decodeNs: number;
}

export interface SweepPoint {
  per: number;
  samples: number;
  failures: number;
  blockErrorRate: number;
  wordErrorRate: number;
  meanDecodeNs: number;
  decoder: string;
  growth: string;
  seed: number;
}

export interface DecodeOptions {
  decoder?: DecoderName;
  growth?: GrowthStrategy;
  seed?: number;
  side?: Side;
  /** Override the core invocation, e.g. ["python3", "-m", "qldpcdec.cli"]. */
  command?: ReadonlyArray<string>;
}

export interface SweepConfig {
  hx: MatrixInput;
  hz: MatrixInput;
  perStart: number;
  perEnd: number;
  perPoints: number;
  samples: number;
  seed: number;
  decoder?: DecoderName;
  growth?: GrowthStrategy;
  side?: Side;
  threads?: number;
  command?: ReadonlyArray<string>;
}

function coreCommand(override?: ReadonlyArray<string>): string[] {
  if (override && override.length > 0) return [...override];
  const env = process.env.QLDPCDEC_CLI;
  if (env) return env.split(" ").filter((tok) => tok.length > 0);
  return ["python3", "-m", "qldpcdec.cli"];
}

function runCore(args: string[], override?: ReadonlyArray<string>): Promise<string> {
  const [bin, ...rest] = coreCommand(override);
  return new Promise((resolve, reject) => {
    const child = spawn(bin, [...rest, ...args], { stdio: ["ignore", "pipe", "pipe"] });
    let out = "";
    let err = "";
    child.stdout.on("data", (chunk) => (out += chunk));
    child.stderr.on("data", (chunk) => (err += chunk));
    child.on("error", reject);
    child.on("close", (status) => {
      if (status === 0) {
        resolve(out);
      } else {
        reject(new Error(err.trim() || `decoder core exited with status ${status}`));
      }
    });
  });
}

/** Render a matrix as the core's dense PCM format, one 0/1 row per line. */
export function toDenseLines(matrix: MatrixInput): string[] {
  if (matrix.length === 0) {
    throw new TypeError("matrix needs at least one row");
  }
  const lines: string[] = [];
  let width: number | null = null;
  for (const row of matrix) {
    let line: string;
    if (typeof row === "string") {
      line = row;
      if (!/^[01]+$/.test(line)) {
        throw new TypeError(`matrix rows must contain only 0/1, got ${JSON.stringify(row)}`);
      }
    } else {
      if (row.length === 0) {
        throw new TypeError("matrix rows must not be empty");
      }
      line = row
        .map((v) => {
          if (v !== 0 && v !== 1) {
            throw new TypeError(`matrix entries must be 0 or 1, got ${v}`);
          }
          return String(v);
        })
        .join("");
    }
    if (width === null) {
      width = line.length;
    } else if (line.length !== width) {
      throw new TypeError("matrix rows have unequal lengths");
    }
    lines.push(line);
  }
  return lines;
}

/** Inverse of toDenseLines, for round-trip checks and CSV-side tooling. */
export function parseDenseLines(lines: ReadonlyArray<string>): number[][] {
  return toDenseLines(lines).map((line) => [...line].map((ch) => Number(ch)));
}

function syndromeBits(syndrome: string | ReadonlyArray<number>): string {
  const text = typeof syndrome === "string" ? syndrome : syndrome.map(String).join("");
  if (!/^[01]+$/.test(text)) {
    throw new TypeError("syndrome must be a nonempty sequence of 0/1 bits");
  }
  return text;
}

async function withMatrixFiles<T>(
  hx: MatrixInput,
  hz: MatrixInput,
  body: (hxPath: string, hzPath: string, dir: string) => Promise<T>,
): Promise<T> {
  const dir = await mkdtemp(path.join(tmpdir(), "qldpcdec-"));
  try {
    const hxPath = path.join(dir, "hx.pcm");
    const hzPath = path.join(dir, "hz.pcm");
    await writeFile(hxPath, toDenseLines(hx).join("\n") + "\n", "ascii");
    await writeFile(hzPath, toDenseLines(hz).join("\n") + "\n", "ascii");
    return await body(hxPath, hzPath, dir);
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}

/** Decode one syndrome; bit-identical to the core CLI for equal inputs and seed. */
export async function boundDecode(
  hx: MatrixInput,
  hz: MatrixInput,
  syndrome: string | ReadonlyArray<number>,
  options: DecodeOptions = {},
): Promise<DecodeResult> {
  const bits = syndromeBits(syndrome);
  return withMatrixFiles(hx, hz, async (hxPath, hzPath) => {
    const args = [
      "decode",
      "--hx", hxPath,
      "--hz", hzPath,
      "--syndrome", bits,
      "--decoder", options.decoder ?? "general",
      "--growth", options.growth ?? "ag",
      "--seed", String(options.seed ?? 0),
      "--side", options.side ?? "x",
    ];
    const raw = JSON.parse(await runCore(args, options.command)) as {
      estimate: string;
      converged: boolean;
      growth_steps: number;
      decode_ns: number;
    };
    return {
      estimate: raw.estimate,
      converged: raw.converged,
      growthSteps: raw.growth_steps,
      decodeNs: raw.decode_ns,
    };
  });
}

function parseSweepCsv(text: string): SweepPoint[] {
  const lines = text.trim().split(/\r?\n/);
  const header = lines[0];
  const expected = "per,samples,failures,block_error_rate,word_error_rate,mean_decode_ns,decoder,growth,seed";
  if (header !== expected) {
    throw new Error(`unexpected sweep CSV header: ${header}`);
  }
  return lines.slice(1).map((line) => {
    const f = line.split(",");
    return {
      per: Number(f[0]),
      samples: Number(f[1]),
      failures: Number(f[2]),
      blockErrorRate: Number(f[3]),
      wordErrorRate: Number(f[4]),
      meanDecodeNs: Number(f[5]),
      decoder: f[6],
      growth: f[7],
      seed: Number(f[8]),
    };
  });
}

/** Run a word-error-rate sweep; numerically identical to the core for equal seeds. */
export async function boundSweep(cfg: SweepConfig): Promise<SweepPoint[]> {
  return withMatrixFiles(cfg.hx, cfg.hz, async (hxPath, hzPath, dir) => {
    const outPath = path.join(dir, "sweep.csv");
    const args = [
      "simulate",
      "--hx", hxPath,
      "--hz", hzPath,
      "--per-start", String(cfg.perStart),
      "--per-end", String(cfg.perEnd),
      "--per-points", String(cfg.perPoints),
      "--samples", String(cfg.samples),
      "--decoder", cfg.decoder ?? "general",
      "--growth", cfg.growth ?? "ag",
      "--seed", String(cfg.seed),
      "--side", cfg.side ?? "x",
      "--out", outPath,
    ];
    if (cfg.threads !== undefined) {
      args.push("--threads", String(cfg.threads));
    }
    await runCore(args, cfg.command);
    return parseSweepCsv(await readFile(outPath, "ascii"));
  });
}
