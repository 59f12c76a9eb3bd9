/** Block kinds, slot shapes, and the small type system the editor enforces.
 *
 * Types are the server's string names ("int", "bool", "int[]", ...). A slot
 * carries a predicate over the *known* type of a candidate child; children
 * whose type cannot be determined yet (incomplete subtrees) are handled by
 * the graph-level validation, which re-checks after every edit.
 */

import type { BinaryKind, QuantKind, SignatureDoc, UnaryKind } from "./types.js";

export type Ty = string; // "int" | "short" | "long" | "float" | "double" | "bool" | T + "[]"

export const NUMERIC_RANK: Record<string, number> = {
  short: 0, int: 1, long: 2, float: 3, double: 4,
};

export function isArray(t: Ty): boolean {
  return t.endsWith("[]");
}

export function elemOf(t: Ty): Ty {
  return t.slice(0, -2);
}

export function isNumeric(t: Ty): boolean {
  return t in NUMERIC_RANK;
}

export function isInteger(t: Ty): boolean {
  return t === "short" || t === "int" || t === "long";
}

/** Least common numeric type, or null when the pair is not coercible. */
export function widen(a: Ty, b: Ty): Ty | null {
  if (!isNumeric(a) || !isNumeric(b)) return null;
  return (NUMERIC_RANK[a] ?? 0) >= (NUMERIC_RANK[b] ?? 0) ? a : b;
}

export type BlockKind =
  | "int" | "real" | "bool" | "null" | "var" | "binder"
  | UnaryKind | BinaryKind | "imp" | "length" | "index" | QuantKind;

export interface SlotSpec {
  label: string;
  /** Accepts a candidate child of known type `t`? Checked again on every
   * edit so a hole filled later can still be refused. */
  accepts: (t: Ty) => boolean;
}

const boolSlot = (label: string): SlotSpec => ({ label, accepts: (t) => t === "bool" });
const numSlot = (label: string): SlotSpec => ({ label, accepts: isNumeric });
const intSlot = (label: string): SlotSpec => ({ label, accepts: isInteger });
const arraySlot = (label: string): SlotSpec => ({ label, accepts: isArray });
const anySlot = (label: string): SlotSpec => ({ label, accepts: () => true });

export interface KindSpec {
  slots: SlotSpec[];
  /** Result type given the (possibly null = not yet known) child types.
   * Returns null when it cannot be determined yet. */
  result: (children: (Ty | null)[]) => Ty | null;
  /** Display label for the palette. */
  label: string;
}

const BOOL2: SlotSpec[] = [boolSlot("left"), boolSlot("right")];
const NUM2: SlotSpec[] = [numSlot("left"), numSlot("right")];

function cmpResult(): Ty | null {
  return "bool";
}

function arithResult(children: (Ty | null)[]): Ty | null {
  const [l, r] = children;
  if (l == null || r == null) return null;
  return widen(l, r);
}

export const KIND_SPECS: Record<string, KindSpec> = {
  int: { slots: [], result: () => "int", label: "int literal" },
  real: { slots: [], result: () => "double", label: "real literal" },
  bool: { slots: [], result: () => "bool", label: "bool literal" },
  // `null` only types up inside ==/!= against an array; standalone it has
  // no type, which confines it to equality slots (graph.ts special-cases it).
  null: { slots: [], result: () => null, label: "null" },
  var: { slots: [], result: () => null, label: "variable" }, // typed per instance
  binder: { slots: [], result: () => "int", label: "bound index" },

  not: { slots: [boolSlot("operand")], result: () => "bool", label: "!" },
  neg: {
    slots: [numSlot("operand")],
    result: (c) => c[0] ?? null,
    label: "unary -",
  },

  and: { slots: BOOL2, result: () => "bool", label: "&&" },
  or: { slots: BOOL2, result: () => "bool", label: "||" },
  imp: { slots: BOOL2, result: () => "bool", label: "imp" },

  // ==/!= are polymorphic server-side; the editor only forbids the cases the
  // server reports as errors (null vs non-array), handled in graph.ts.
  eq: { slots: [anySlot("left"), anySlot("right")], result: cmpResult, label: "==" },
  neq: { slots: [anySlot("left"), anySlot("right")], result: cmpResult, label: "!=" },

  lt: { slots: NUM2, result: cmpResult, label: "<" },
  le: { slots: NUM2, result: cmpResult, label: "<=" },
  gt: { slots: NUM2, result: cmpResult, label: ">" },
  ge: { slots: NUM2, result: cmpResult, label: ">=" },

  add: { slots: NUM2, result: arithResult, label: "+" },
  sub: { slots: NUM2, result: arithResult, label: "-" },
  mul: { slots: NUM2, result: arithResult, label: "*" },
  div: { slots: NUM2, result: arithResult, label: "/" },
  mod: { slots: NUM2, result: arithResult, label: "%" },

  length: { slots: [arraySlot("array")], result: () => "int", label: ".length" },
  index: {
    slots: [arraySlot("array"), intSlot("index")],
    result: (c) => (c[0] != null && isArray(c[0]) ? elemOf(c[0]) : null),
    label: "a[i]",
  },

  forall: {
    slots: [
      { label: "array", accepts: (t) => isArray(t) && isNumeric(elemOf(t)) },
      boolSlot("body"),
    ],
    result: () => "bool",
    label: "forall",
  },
  exists: {
    slots: [
      { label: "array", accepts: (t) => isArray(t) && isNumeric(elemOf(t)) },
      boolSlot("body"),
    ],
    result: () => "bool",
    label: "exists",
  },
};

export interface PaletteEntry {
  kind: BlockKind;
  label: string;
  /** For "var": the variable name; its type is looked up in the signature. */
  name?: string;
}

/** Palette for an exercise: every expression form, plus one variable entry
 * per parameter and (when the method returns a value) retval. Bound index
 * blocks are not here — they are minted from quantifier blocks on canvas. */
export function paletteFor(sig: SignatureDoc): PaletteEntry[] {
  const entries: PaletteEntry[] = [];
  for (const kind of Object.keys(KIND_SPECS)) {
    if (kind === "var" || kind === "binder") continue;
    entries.push({ kind: kind as BlockKind, label: KIND_SPECS[kind]!.label });
  }
  for (const p of sig.params) {
    entries.push({ kind: "var", label: p.name, name: p.name });
  }
  if (sig.returnType !== "void") {
    entries.push({ kind: "var", label: "retval", name: "retval" });
  }
  return entries;
}

export function varType(sig: SignatureDoc, name: string): Ty | null {
  if (name === "retval") {
    return sig.returnType === "void" ? null : sig.returnType;
  }
  const p = sig.params.find((q) => q.name === name);
  return p ? p.type : null;
}
