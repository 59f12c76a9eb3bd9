/** Shared test utilities: a seeded PRNG, a scripted getMax build, a fuzzer
 * that drives the editor through random legal edit sequences, and a spawner
 * for the real checking service (the frontend's only allowed backend). */

import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { spawn, type ChildProcess } from "node:child_process";

import { BlockGraph } from "../src/graph.js";
import type { SignatureDoc } from "../src/types.js";

export const GETMAX_SIG: SignatureDoc = {
  name: "getMax",
  params: [{ name: "a", type: "int[]" }],
  returnType: "int",
};

export const GETMAX_MODEL_SPEC = [
  "method getMax(a: int[]) -> int;",
  "pre(a != null);",
  "pre(a.length > 0);",
  "post(exists(a, i -> a[i] == retval));",
  "post(forall(a, i -> a[i] <= retval));",
].join("\n");

/** Assemble the getMax specification through ordinary editor edits. Every
 * connect is asserted accepted — the editor must permit the canonical use. */
export function buildGetMax(graph: BlockGraph = new BlockGraph(GETMAX_SIG)): BlockGraph {
  const must = (refusal: string | null): void => {
    if (refusal != null) throw new Error(`edit refused: ${refusal}`);
  };
  // pre: a != null && a.length > 0
  const preAnd = graph.addBlock("and");
  const neq = graph.addBlock("neq");
  must(graph.connect(neq, 0, graph.addBlock("var", { name: "a" })));
  must(graph.connect(neq, 1, graph.addBlock("null")));
  const gt = graph.addBlock("gt");
  const len = graph.addBlock("length");
  must(graph.connect(len, 0, graph.addBlock("var", { name: "a" })));
  must(graph.connect(gt, 0, len));
  must(graph.connect(gt, 1, graph.addBlock("int", { value: 0 })));
  must(graph.connect(preAnd, 0, neq));
  must(graph.connect(preAnd, 1, gt));
  must(graph.setRoot("pre", preAnd));

  // post: exists(a, i -> a[i] == retval) && forall(a, i -> a[i] <= retval)
  const postAnd = graph.addBlock("and");
  const quantified = (
    kind: "forall" | "exists",
    cmp: "eq" | "le",
  ): number => {
    const q = graph.addBlock(kind);
    must(graph.connect(q, 0, graph.addBlock("var", { name: "a" })));
    const body = graph.addBlock(cmp);
    const idx = graph.addBlock("index");
    must(graph.connect(idx, 0, graph.addBlock("var", { name: "a" })));
    must(graph.connect(idx, 1, graph.addBinder(q)));
    must(graph.connect(body, 0, idx));
    must(graph.connect(body, 1, graph.addBlock("var", { name: "retval" })));
    must(graph.connect(q, 1, body));
    return q;
  };
  must(graph.connect(postAnd, 0, quantified("exists", "eq")));
  must(graph.connect(postAnd, 1, quantified("forall", "le")));
  must(graph.setRoot("post", postAnd));
  return graph;
}

// -- seeded PRNG -----------------------------------------------------------

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function pick<T>(rnd: () => number, xs: readonly T[]): T {
  return xs[Math.floor(rnd() * xs.length)]!;
}

// -- editor fuzzer ---------------------------------------------------------

interface FuzzCtx {
  rnd: () => number;
  graph: BlockGraph;
  inPost: boolean;
  binders: number[]; // quantifier ids whose body scope we are inside
}

/** Build a random well-typed bool subtree through editor edits and return
 * its root block id. Every edit taken is asserted legal: a refusal of a
 * sequence this generator considers legal fails the test. */
function genBool(ctx: FuzzCtx, depth: number): number {
  const g = ctx.graph;
  const must = (r: string | null): void => {
    if (r != null) throw new Error(`fuzzer edit refused: ${r}`);
  };
  const leaf = depth <= 0;
  const choice = leaf
    ? "bool"
    : pick(ctx.rnd, [
        "bool", "not", "and", "or", "imp", "cmp", "eqNum", "eqBool",
        "nullCheck", "quant",
      ]);
  switch (choice) {
    case "bool":
      return g.addBlock("bool", { value: ctx.rnd() < 0.5 });
    case "not": {
      const id = g.addBlock("not");
      must(g.connect(id, 0, genBool(ctx, depth - 1)));
      return id;
    }
    case "and":
    case "or":
    case "imp": {
      const id = g.addBlock(choice);
      must(g.connect(id, 0, genBool(ctx, depth - 1)));
      must(g.connect(id, 1, genBool(ctx, depth - 1)));
      return id;
    }
    case "cmp": {
      const id = g.addBlock(pick(ctx.rnd, ["lt", "le", "gt", "ge"] as const));
      must(g.connect(id, 0, genInt(ctx, depth - 1)));
      must(g.connect(id, 1, genInt(ctx, depth - 1)));
      return id;
    }
    case "eqNum": {
      const id = g.addBlock(pick(ctx.rnd, ["eq", "neq"] as const));
      must(g.connect(id, 0, genInt(ctx, depth - 1)));
      must(g.connect(id, 1, genInt(ctx, depth - 1)));
      return id;
    }
    case "eqBool": {
      const id = g.addBlock(pick(ctx.rnd, ["eq", "neq"] as const));
      must(g.connect(id, 0, genBool(ctx, depth - 1)));
      must(g.connect(id, 1, genBool(ctx, depth - 1)));
      return id;
    }
    case "nullCheck": {
      const id = g.addBlock(pick(ctx.rnd, ["eq", "neq"] as const));
      const arr = g.addBlock("var", { name: "a" });
      const nul = g.addBlock("null");
      if (ctx.rnd() < 0.5) {
        must(g.connect(id, 0, arr));
        must(g.connect(id, 1, nul));
      } else {
        must(g.connect(id, 0, nul));
        must(g.connect(id, 1, arr));
      }
      return id;
    }
    case "quant": {
      const q = g.addBlock(ctx.rnd() < 0.5 ? "forall" : "exists");
      must(g.connect(q, 0, g.addBlock("var", { name: "a" })));
      ctx.binders.push(q);
      const body = genBool(ctx, depth - 1);
      ctx.binders.pop();
      must(g.connect(q, 1, body));
      return q;
    }
    default:
      throw new Error(`unhandled ${choice}`);
  }
}

function genInt(ctx: FuzzCtx, depth: number): number {
  const g = ctx.graph;
  const must = (r: string | null): void => {
    if (r != null) throw new Error(`fuzzer edit refused: ${r}`);
  };
  const options = ["lit", "length"];
  if (ctx.inPost) options.push("retval");
  if (ctx.binders.length > 0) options.push("binder", "element");
  if (depth > 0) options.push("arith", "neg", "element0");
  const choice = depth <= 0 ? pick(ctx.rnd, options.filter((o) => o !== "arith" && o !== "neg" && o !== "element0")) : pick(ctx.rnd, options);
  switch (choice) {
    case "lit":
      return g.addBlock("int", { value: Math.floor(ctx.rnd() * 7) - 3 });
    case "retval":
      return g.addBlock("var", { name: "retval" });
    case "length": {
      const id = g.addBlock("length");
      must(g.connect(id, 0, g.addBlock("var", { name: "a" })));
      return id;
    }
    case "binder":
      return g.addBinder(pick(ctx.rnd, ctx.binders));
    case "element": {
      const id = g.addBlock("index");
      must(g.connect(id, 0, g.addBlock("var", { name: "a" })));
      must(g.connect(id, 1, g.addBinder(pick(ctx.rnd, ctx.binders))));
      return id;
    }
    case "element0": {
      const id = g.addBlock("index");
      must(g.connect(id, 0, g.addBlock("var", { name: "a" })));
      must(g.connect(id, 1, genInt(ctx, depth - 1)));
      return id;
    }
    case "neg": {
      const id = g.addBlock("neg");
      must(g.connect(id, 0, genInt(ctx, depth - 1)));
      return id;
    }
    case "arith": {
      const id = g.addBlock(pick(ctx.rnd, ["add", "sub", "mul", "div", "mod"] as const));
      must(g.connect(id, 0, genInt(ctx, depth - 1)));
      must(g.connect(id, 1, genInt(ctx, depth - 1)));
      return id;
    }
    default:
      throw new Error(`unhandled ${choice}`);
  }
}

/** One fuzzed edit session: build random pre and post trees, shake the
 * result with disconnect/reconnect churn, and return the completed graph. */
export function fuzzGraph(seed: number): BlockGraph {
  const rnd = mulberry32(seed);
  const graph = new BlockGraph(GETMAX_SIG);
  const must = (r: string | null): void => {
    if (r != null) throw new Error(`fuzzer edit refused: ${r}`);
  };
  const depth = 1 + Math.floor(rnd() * 3);
  const preCtx: FuzzCtx = { rnd, graph, inPost: false, binders: [] };
  const pre = genBool(preCtx, depth);
  const postCtx: FuzzCtx = { rnd, graph, inPost: true, binders: [] };
  const post = genBool(postCtx, depth);
  must(graph.setRoot("pre", pre));
  must(graph.setRoot("post", post));

  // churn: detach a random wired block and put it back where it was
  const wired = graph.allBlocks().filter((b) => graph.parentOf(b.id));
  for (let i = 0; i < Math.min(3, wired.length); i++) {
    const b = pick(rnd, wired);
    const link = graph.parentOf(b.id);
    if (!link) continue;
    must(graph.disconnect(b.id));
    must(graph.connect(link.parent, link.slot, b.id));
  }
  return graph;
}

// -- service process -------------------------------------------------------

export interface TestServer {
  baseUrl: string;
  stop: () => void;
}

/** Spawn the real service on a fresh port with a small, fast check config. */
export async function startServer(opts: { trials: number }): Promise<TestServer> {
  const dir = mkdtempSync(join(tmpdir(), "fzweb-"));
  const configPath = join(dir, "app.toml");
  writeFileSync(configPath, [
    "[eval]",
    "int_range = [-3, 3]",
    "max_array_len = 3",
    "quant_bound = 8",
    "",
    "[check]",
    `trials = ${opts.trials}`,
    "use_smt = false",
    "",
    "[service]",
    `data_dir = "${join(dir, "data").replaceAll("\\", "/")}"`,
    "",
  ].join("\n"));
  const port = 21000 + Math.floor(Math.random() * 20000);
  const proc: ChildProcess = spawn(
    "specgame",
    ["serve", "--config", configPath, "--port", String(port)],
    { stdio: ["ignore", "ignore", "pipe"] },
  );
  let stderr = "";
  proc.stderr?.on("data", (d) => {
    stderr += String(d);
  });
  const baseUrl = `http://127.0.0.1:${port}`;
  for (let i = 0; i < 100; i++) {
    if (proc.exitCode != null) {
      throw new Error(`service exited early: ${stderr}`);
    }
    try {
      const res = await fetch(`${baseUrl}/api/exercises`);
      if (res.ok) return { baseUrl, stop: () => proc.kill() };
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  proc.kill();
  throw new Error(`service did not come up: ${stderr}`);
}
