/** Editor soundness acceptance: any graph the editor permits must be
 * accepted by the server. 500 seeded random edit sessions each build a
 * complete specification through ordinary editor operations; every exported
 * AST document is submitted to a live instance of the real service and must
 * come back without a single diagnostic. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/client.js";
import {
  GETMAX_MODEL_SPEC,
  fuzzGraph,
  startServer,
  type TestServer,
} from "./helpers.js";

const SEQUENCES = 500;

let server: TestServer;
let client: ServiceClient;

beforeAll(async () => {
  server = await startServer({ trials: 2500 });
  client = new ServiceClient(server.baseUrl);
  await client.createExercise("dev-token", {
    id: "getmax",
    title: "getMax",
    modelSpec: GETMAX_MODEL_SPEC,
  });
}, 60_000);

afterAll(() => server?.stop());

describe("editor soundness", () => {
  it(
    `${SEQUENCES} fuzzed edit sequences export server-clean AST documents`,
    async () => {
      let submitted = 0;
      for (let seed = 1; seed <= SEQUENCES; seed++) {
        // throws if the editor refuses an edit the generator knows is legal
        const graph = fuzzGraph(seed);
        const doc = graph.exportAst();
        try {
          const res = await client.submitAst("getmax", doc, 1);
          expect(res.verdict.pre).toBeDefined();
          expect(res.sessionId).toBeTruthy();
        } catch (err) {
          throw new Error(
            `seed ${seed}: server rejected an editor-built document: ${err}\n` +
              JSON.stringify(doc),
          );
        }
        submitted++;
      }
      expect(submitted).toBe(SEQUENCES);
      console.log(`editor soundness: PASS (${SEQUENCES} documents, 0 diagnostics)`);
    },
    300_000,
  );
});
