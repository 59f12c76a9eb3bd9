/** Browser entry point: exercise picker, block editor, and play view.
 *
 * All game state is server-authoritative; this file is DOM plumbing around
 * the pure modules (graph.ts, render.ts, client.ts). There is deliberately
 * no free-text formula input anywhere: specifications are only buildable
 * from blocks.
 */

import { KIND_SPECS, paletteFor } from "./blocks.js";
import { GameClient } from "./client.js";
import { ServiceClient } from "./client.js";
import { BlockGraph, type Side } from "./graph.js";
import { buildScene, drawScene } from "./render.js";
import type {
  BoardFrame,
  ExerciseSummary,
  ScoreReportFrame,
  ServerFrame,
  SnapshotFrame,
} from "./types.js";

const CELL_PX = 40;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text != null) node.textContent = text;
  return node;
}

function toast(message: string): void {
  const t = el("div", "toast", message);
  document.body.appendChild(t);
  setTimeout(() => t.remove(), 2500);
}

class EditorView {
  readonly graph: BlockGraph;
  private selectedSlot: { block: number; slot: number } | null = null;
  private canvas: HTMLElement;
  private positions = new Map<number, { x: number; y: number }>();

  constructor(
    private readonly exercise: ExerciseSummary,
    private readonly container: HTMLElement,
    private readonly onSubmit: (graph: BlockGraph) => void,
  ) {
    this.graph = new BlockGraph(exercise.signatureAst);
    this.canvas = el("div", "editor-canvas");
    this.render();
  }

  private render(): void {
    this.container.replaceChildren();
    const header = el("div", "editor-header");
    header.append(
      el("h2", "", this.exercise.title),
      el("p", "sig", this.exercise.signature),
      el("p", "", this.exercise.description),
    );
    this.container.append(header, this.buildPalette(), this.canvas);
    const controls = el("div", "editor-controls");
    for (const side of ["pre", "post"] as const) {
      const btn = el("button", "", `set selected block as ${side}-condition root`);
      btn.onclick = () => this.setRootFromSelection(side);
      controls.append(btn);
    }
    const submit = el("button", "primary", "submit & play");
    submit.onclick = () => {
      const missing = this.graph.missingSlots();
      if (missing.length > 0) {
        toast(`incomplete: ${missing.join(", ")}`);
        return;
      }
      this.onSubmit(this.graph);
    };
    controls.append(submit);
    this.container.append(controls);
    this.redrawBlocks();
  }

  private buildPalette(): HTMLElement {
    const palette = el("div", "palette");
    for (const entry of paletteFor(this.exercise.signatureAst)) {
      const item = el("div", "palette-item", entry.label);
      item.draggable = true;
      item.ondragstart = (ev) => {
        ev.dataTransfer?.setData("text/plain", JSON.stringify(entry));
      };
      item.onclick = () => this.spawn(entry.kind, entry.name, 40, 40);
      palette.append(item);
    }
    this.canvas.ondragover = (ev) => ev.preventDefault();
    this.canvas.ondrop = (ev) => {
      ev.preventDefault();
      const raw = ev.dataTransfer?.getData("text/plain");
      if (!raw) return;
      const entry = JSON.parse(raw);
      this.spawn(entry.kind, entry.name, ev.offsetX, ev.offsetY);
    };
    return palette;
  }

  private spawn(kind: string, name: string | undefined, x: number, y: number): void {
    let value: number | boolean | undefined;
    if (kind === "int" || kind === "real") {
      const raw = window.prompt("value", "0") ?? "0";
      value = kind === "int" ? Math.trunc(Number(raw)) || 0 : Number(raw) || 0;
    } else if (kind === "bool") {
      value = window.confirm("true? (cancel = false)");
    }
    try {
      const id = this.graph.addBlock(kind as never, { value, name });
      this.positions.set(id, { x, y });
    } catch (err) {
      toast(String(err));
    }
    this.redrawBlocks();
  }

  private setRootFromSelection(side: Side): void {
    if (!this.selectedSlot) {
      toast("click a block first");
      return;
    }
    const refusal = this.graph.setRoot(side, this.selectedSlot.block);
    if (refusal) toast(refusal);
    this.redrawBlocks();
  }

  private redrawBlocks(): void {
    this.canvas.replaceChildren();
    for (const b of this.graph.allBlocks()) {
      const spec = KIND_SPECS[b.kind]!;
      const pos = this.positions.get(b.id) ?? { x: 30, y: 30 };
      const node = el("div", "block");
      node.style.left = `${pos.x}px`;
      node.style.top = `${pos.y}px`;
      let label = spec.label;
      if (b.kind === "var") label = b.name!;
      if (b.kind === "int" || b.kind === "real" || b.kind === "bool") {
        label = String(b.value ?? label);
      }
      const title = el("span", "block-label", label);
      title.onclick = () => {
        this.selectedSlot = { block: b.id, slot: -1 };
        this.tryWireTo(b.id);
      };
      node.append(title);
      if (this.graph.root("pre") === b.id) node.classList.add("root-pre");
      if (this.graph.root("post") === b.id) node.classList.add("root-post");
      this.graph.childrenOf(b.id).forEach((child, i) => {
        const slot = el(
          "button",
          child == null ? "slot empty" : "slot wired",
          spec.slots[i]!.label,
        );
        slot.onclick = () => {
          if (child != null) {
            this.graph.disconnect(child);
            this.redrawBlocks();
          } else {
            this.selectedSlot = { block: b.id, slot: i };
            slot.classList.add("selected");
          }
        };
        node.append(slot);
      });
      if (b.kind === "forall" || b.kind === "exists") {
        const mint = el("button", "slot", "+index");
        mint.onclick = () => {
          const id = this.graph.addBinder(b.id);
          this.positions.set(id, { x: pos.x + 30, y: pos.y + 50 });
          this.redrawBlocks();
        };
        node.append(mint);
      }
      const remove = el("button", "remove", "x");
      remove.onclick = () => {
        const refusal = this.graph.removeBlock(b.id);
        if (refusal) toast(refusal);
        this.redrawBlocks();
      };
      node.append(remove);
      this.canvas.append(node);
    }
  }

  /** Click-to-wire: a selected empty slot plus a clicked block = one wire. */
  private tryWireTo(blockId: number): void {
    const sel = this.selectedSlot;
    if (!sel || sel.slot < 0 || sel.block === blockId) return;
    const refusal = this.graph.connect(sel.block, sel.slot, blockId);
    if (refusal) toast(refusal);
    this.selectedSlot = null;
    this.redrawBlocks();
  }
}

class PlayView {
  private board: BoardFrame | null = null;
  private lastSnapshot: SnapshotFrame | null = null;
  private canvas: HTMLCanvasElement;
  private hud: HTMLElement;
  private selectedTower = "zapper";
  private client: GameClient;

  constructor(
    container: HTMLElement,
    service: ServiceClient,
    sessionId: string,
    private readonly onDone: (report: ScoreReportFrame) => void,
  ) {
    container.replaceChildren();
    this.hud = el("div", "hud");
    this.canvas = el("canvas") as HTMLCanvasElement;
    this.canvas.width = 17 * CELL_PX;
    this.canvas.height = 8 * CELL_PX;
    const towers = el("div", "tower-picker");
    const start = el("button", "primary", "start wave");
    start.onclick = () => this.client.startWave();
    container.append(this.hud, this.canvas, towers, start);
    this.canvas.onclick = (ev) => {
      const cell: [number, number] = [
        Math.round(ev.offsetX / CELL_PX),
        Math.round(ev.offsetY / CELL_PX),
      ];
      this.client.placeTower(this.selectedTower, cell);
    };
    this.client = new GameClient(
      service.sessionUrl(sessionId),
      (url) => new WebSocket(url),
      {
        onFrame: (frame) => this.onFrame(frame, towers),
        onReconnect: (n) => toast(`connection lost, retrying (${n})`),
        onClose: (why) => {
          if (why === "gaveUp") toast("connection lost");
        },
      },
    );
    this.client.connect();
  }

  private onFrame(frame: ServerFrame, towerPicker: HTMLElement): void {
    if (frame.type === "board") {
      this.board = frame;
      towerPicker.replaceChildren();
      for (const [kind, spec] of Object.entries(frame.towers)) {
        const btn = el("button", "", `${kind} (${spec.cost})`);
        btn.onclick = () => {
          this.selectedTower = kind;
        };
        towerPicker.append(btn);
      }
    } else if (frame.type === "snapshot") {
      this.lastSnapshot = frame;
      this.redraw();
    } else if (frame.type === "error") {
      toast(frame.error);
    } else if (frame.type === "scoreReport") {
      this.onDone(frame);
    }
  }

  private redraw(): void {
    if (!this.board || !this.lastSnapshot) return;
    const scene = buildScene(this.board, this.lastSnapshot);
    const ctx = this.canvas.getContext("2d");
    if (ctx) drawScene(ctx, scene, CELL_PX);
    const { budget, health, score, pending } = scene.hud;
    this.hud.textContent =
      `budget ${budget}   health ${health}   score ${score}   incoming ${pending}`;
  }
}

function feedbackFor(report: ScoreReportFrame): string[] {
  const lines = [`score ${report.score} / ${report.maxScore}, health ${report.health}`];
  const leaked = report.outcomes["redUnmarked"];
  const falseAlarm = report.outcomes["blueMarked"];
  if (leaked && leaked.reachedEnd + leaked.destroyed > 0) {
    lines.push("your scanner lets corrupted data through — the condition is too weak");
  }
  if (falseAlarm && falseAlarm.reachedEnd + falseAlarm.destroyed > 0) {
    lines.push("your scanner flags clean data — the condition is too strong");
  }
  if (lines.length === 1) lines.push("every blob was classified correctly");
  return lines;
}

async function boot(): Promise<void> {
  const root = document.getElementById("app")!;
  const service = new ServiceClient(window.location.origin);
  const exercises = await service.listExercises();
  const list = el("div", "exercise-list");
  root.replaceChildren(el("h1", "", "specification trainer"), list);
  for (const ex of exercises) {
    const btn = el("button", "", `${ex.title} — ${ex.signature}`);
    btn.onclick = () => openEditor(ex);
    list.append(btn);
  }

  function openEditor(ex: ExerciseSummary): void {
    new EditorView(ex, root, async (graph) => {
      try {
        const doc = graph.exportAst();
        const sub = await service.submitAst(ex.id, doc);
        new PlayView(root, service, sub.sessionId, (report) => {
          const screen = el("div", "score-screen");
          screen.append(el("h2", "", "wave complete"));
          for (const line of feedbackFor(report)) screen.append(el("p", "", line));
          const again = el("button", "", "back to exercises");
          again.onclick = () => void boot();
          screen.append(again);
          root.replaceChildren(screen);
        });
      } catch (err) {
        toast(String(err));
      }
    });
  }
}

if (typeof document !== "undefined") {
  void boot();
}
