/** The block-and-wire graph behind the editor canvas.
 *
 * Every edit goes through `connect`/`disconnect`/`setRoot`, each of which
 * refuses anything that would put the graph into a state the server would
 * reject: slot type mismatches, arity overflow, a second parent, cycles,
 * `retval` under the pre-condition root, a bound index escaping its
 * quantifier, or `null` outside an equality against an array. Refusals
 * return a human-readable reason for the UI to surface; accepted edits
 * return null. The graph itself therefore never holds an ill-typed wiring.
 */

import {
  KIND_SPECS,
  type BlockKind,
  type Ty,
  isArray,
  varType,
} from "./blocks.js";
import type { AstNode, SignatureDoc, SpecDoc } from "./types.js";

export type Side = "pre" | "post";

export interface Block {
  id: number;
  kind: BlockKind;
  value?: number | boolean; // literals
  name?: string; // variables
  quantId?: number; // binder blocks: the quantifier that owns them
}

export type Refusal = string; // reason shown to the user
const OK = null;

const BINDER_NAMES = ["i", "j", "k", "l", "m", "n"];

export class BlockGraph {
  readonly sig: SignatureDoc;
  private nextId = 1;
  private blocks = new Map<number, Block>();
  private slots = new Map<number, (number | null)[]>(); // parent -> children
  private parents = new Map<number, { parent: number; slot: number }>();
  private roots: { pre: number | null; post: number | null } = { pre: null, post: null };

  constructor(sig: SignatureDoc) {
    this.sig = sig;
  }

  // -- queries -------------------------------------------------------------

  block(id: number): Block | undefined {
    return this.blocks.get(id);
  }

  allBlocks(): Block[] {
    return [...this.blocks.values()];
  }

  childrenOf(id: number): (number | null)[] {
    return [...(this.slots.get(id) ?? [])];
  }

  parentOf(id: number): { parent: number; slot: number } | undefined {
    return this.parents.get(id);
  }

  root(side: Side): number | null {
    return this.roots[side];
  }

  /** Result type of the subtree at `id`, or null while undetermined. */
  typeOf(id: number): Ty | null {
    const b = this.blocks.get(id);
    if (!b) return null;
    if (b.kind === "var") return b.name ? varType(this.sig, b.name) : null;
    const spec = KIND_SPECS[b.kind]!;
    const childTypes = (this.slots.get(id) ?? []).map((c) =>
      c == null ? null : this.typeOf(c),
    );
    return spec.result(childTypes);
  }

  // -- edits ---------------------------------------------------------------

  addBlock(kind: BlockKind, opts: { value?: number | boolean; name?: string } = {}): number {
    if (kind === "binder") {
      throw new Error("bound index blocks are minted with addBinder(quantifierId)");
    }
    const spec = KIND_SPECS[kind];
    if (!spec) throw new Error(`unknown block kind ${kind}`);
    if (kind === "var") {
      if (!opts.name || varType(this.sig, opts.name) == null) {
        throw new Error(`unknown variable ${opts.name ?? "<missing>"}`);
      }
    }
    const id = this.nextId++;
    this.blocks.set(id, { id, kind, value: opts.value, name: opts.name });
    this.slots.set(id, spec.slots.map(() => null));
    return id;
  }

  /** Mint a bound-index block belonging to a quantifier already on canvas. */
  addBinder(quantId: number): number {
    const q = this.blocks.get(quantId);
    if (!q || (q.kind !== "forall" && q.kind !== "exists")) {
      throw new Error("binder blocks belong to a forall/exists block");
    }
    const id = this.nextId++;
    this.blocks.set(id, { id, kind: "binder", quantId });
    this.slots.set(id, []);
    return id;
  }

  connect(parentId: number, slot: number, childId: number): Refusal | null {
    const parent = this.blocks.get(parentId);
    const child = this.blocks.get(childId);
    if (!parent || !child) return "no such block";
    const spec = KIND_SPECS[parent.kind]!;
    if (slot < 0 || slot >= spec.slots.length) {
      return `${spec.label} has no slot ${slot}`;
    }
    if (this.slots.get(parentId)![slot] != null) {
      return `the ${spec.slots[slot]!.label} slot is already wired`;
    }
    if (this.parents.has(childId)) {
      return "a block can only be connected to one parent";
    }
    if (childId === parentId || this.isAncestor(childId, parentId)) {
      return "connection would create a cycle";
    }
    // tentatively wire, then re-validate the whole graph; anything the
    // server would flag rolls the edit back
    this.slots.get(parentId)![slot] = childId;
    this.parents.set(childId, { parent: parentId, slot });
    const problem = this.validate();
    if (problem != null) {
      this.slots.get(parentId)![slot] = null;
      this.parents.delete(childId);
      return problem;
    }
    return OK;
  }

  disconnect(childId: number): Refusal | null {
    const link = this.parents.get(childId);
    if (!link) return "block is not connected";
    this.slots.get(link.parent)![link.slot] = null;
    this.parents.delete(childId);
    return OK;
  }

  removeBlock(id: number): Refusal | null {
    const b = this.blocks.get(id);
    if (!b) return "no such block";
    if (b.kind === "forall" || b.kind === "exists") {
      const orphan = this.allBlocks().find((x) => x.quantId === id);
      if (orphan) return "remove its bound index blocks first";
    }
    if (this.parents.has(id)) this.disconnect(id);
    for (const [i, c] of this.childrenOf(id).entries()) {
      if (c != null) {
        this.slots.get(id)![i] = null;
        this.parents.delete(c);
      }
    }
    if (this.roots.pre === id) this.roots.pre = null;
    if (this.roots.post === id) this.roots.post = null;
    this.blocks.delete(id);
    this.slots.delete(id);
    return OK;
  }

  setRoot(side: Side, id: number | null): Refusal | null {
    if (id == null) {
      this.roots[side] = null;
      return OK;
    }
    if (!this.blocks.has(id)) return "no such block";
    if (this.parents.has(id)) return "a root block cannot have a parent";
    const other: Side = side === "pre" ? "post" : "pre";
    if (this.roots[other] === id) return `block is already the ${other} root`;
    const t = this.typeOf(id);
    if (t != null && t !== "bool") {
      return `${side}-condition must be bool, got ${t}`;
    }
    const prev = this.roots[side];
    this.roots[side] = id;
    const problem = this.validate();
    if (problem != null) {
      this.roots[side] = prev;
      return problem;
    }
    return OK;
  }

  // -- validation ----------------------------------------------------------

  private isAncestor(maybeAncestor: number, id: number): boolean {
    let cur = this.parents.get(id);
    while (cur) {
      if (cur.parent === maybeAncestor) return true;
      cur = this.parents.get(cur.parent);
    }
    return false;
  }

  /** First problem anywhere in the current wiring, or null. Holes (empty
   * slots, unknown child types) are fine; definite mismatches are not. */
  private validate(): Refusal | null {
    for (const b of this.blocks.values()) {
      const spec = KIND_SPECS[b.kind]!;
      const kids = this.slots.get(b.id)!;
      for (const [i, c] of kids.entries()) {
        if (c == null) continue;
        const childBlock = this.blocks.get(c)!;
        if (childBlock.kind === "null") {
          const p = this.nullPlacementProblem(b, i, kids);
          if (p) return p;
          continue;
        }
        const t = this.typeOf(c);
        if (t != null && !spec.slots[i]!.accepts(t)) {
          return `${spec.slots[i]!.label} slot of ${spec.label} does not accept ${t}`;
        }
      }
    }
    for (const b of this.blocks.values()) {
      if (b.kind === "var" && b.name === "retval") {
        const p = this.retvalProblem(b.id);
        if (p) return p;
      }
      if (b.kind === "binder") {
        const p = this.binderProblem(b);
        if (p) return p;
      }
    }
    for (const side of ["pre", "post"] as const) {
      const r = this.roots[side];
      if (r != null) {
        const t = this.typeOf(r);
        if (t != null && t !== "bool") return `${side}-condition must be bool`;
      }
    }
    return null;
  }

  private nullPlacementProblem(
    parent: Block,
    slot: number,
    kids: (number | null)[],
  ): Refusal | null {
    if (parent.kind !== "eq" && parent.kind !== "neq") {
      return "null can only be compared with == or !=";
    }
    const sibling = kids[1 - slot];
    if (sibling == null) return null; // hole: the array side may come later
    const sib = this.blocks.get(sibling)!;
    if (sib.kind === "null") return "null cannot be compared against null";
    const t = this.typeOf(sibling);
    if (t != null && !isArray(t)) {
      return "null may only be compared against an array";
    }
    return null;
  }

  private retvalProblem(id: number): Refusal | null {
    let cur: number = id;
    for (;;) {
      if (this.roots.pre === cur) {
        return "retval is not available in the pre-condition";
      }
      const link = this.parents.get(cur);
      if (!link) return null;
      cur = link.parent;
    }
  }

  private binderProblem(b: Block): Refusal | null {
    // Walking up must reach the owning quantifier through its body slot
    // before hitting a condition root (or the quantifier's array slot).
    let cur = this.parents.get(b.id);
    let prevSlot = -1;
    let prevId = b.id;
    while (cur) {
      if (cur.parent === b.quantId) {
        return cur.slot === 1 ? null : "bound index cannot appear in the array slot";
      }
      prevSlot = cur.slot;
      prevId = cur.parent;
      cur = this.parents.get(cur.parent);
    }
    void prevSlot;
    if (this.roots.pre === prevId || this.roots.post === prevId) {
      return "bound index used outside its quantifier body";
    }
    return null; // floating fragment: may still be wired under the body
  }

  // -- export --------------------------------------------------------------

  /** Empty required slots under both roots, as "<block label>.<slot>". */
  missingSlots(): string[] {
    const out: string[] = [];
    const visit = (id: number | null, where: string): void => {
      if (id == null) {
        out.push(where);
        return;
      }
      const b = this.blocks.get(id)!;
      const spec = KIND_SPECS[b.kind]!;
      const kids = this.slots.get(id)!;
      kids.forEach((c, i) => visit(c, `${spec.label}.${spec.slots[i]!.label}`));
    };
    for (const side of ["pre", "post"] as const) {
      const r = this.roots[side];
      if (r == null) out.push(`${side} root`);
      else visit(r, `${side} root`);
    }
    return out;
  }

  /** The exact AST document the server parses; throws if the graph is
   * incomplete (message lists the empty slots). */
  exportAst(): SpecDoc {
    const missing = this.missingSlots();
    if (missing.length > 0) {
      throw new Error(`incomplete graph: ${missing.join(", ")}`);
    }
    const binderNames = new Map<number, string>();
    const taken = new Set(this.sig.params.map((p) => p.name));
    taken.add("retval");
    const convert = (id: number, depth: number): AstNode => {
      const b = this.blocks.get(id)!;
      const kids = this.slots.get(id)!;
      switch (b.kind) {
        case "int":
          return { kind: "int", value: typeof b.value === "number" ? Math.trunc(b.value) : 0 };
        case "real":
          return { kind: "real", value: typeof b.value === "number" ? b.value : 0 };
        case "bool":
          return { kind: "bool", value: b.value === true };
        case "null":
          return { kind: "null" };
        case "var":
          return { kind: "var", name: b.name! };
        case "binder":
          return { kind: "var", name: binderNames.get(b.quantId!)! };
        case "not":
        case "neg":
        case "length":
          return { kind: b.kind, children: [convert(kids[0]!, depth)] };
        case "forall":
        case "exists": {
          let name = BINDER_NAMES[depth % BINDER_NAMES.length]!;
          while (taken.has(name) || [...binderNames.values()].includes(name)) {
            name = `${name}${b.id}`;
          }
          binderNames.set(b.id, name);
          const node: AstNode = {
            kind: b.kind,
            binder: name,
            children: [convert(kids[0]!, depth), convert(kids[1]!, depth + 1)],
          };
          binderNames.delete(b.id);
          return node;
        }
        default:
          return {
            kind: b.kind,
            children: [convert(kids[0]!, depth), convert(kids[1]!, depth)],
          } as AstNode;
      }
    };
    return {
      signature: this.sig,
      pres: [convert(this.roots.pre!, 0)],
      posts: [convert(this.roots.post!, 0)],
    };
  }
}
