/** Stateless play-view renderer.
 *
 * `buildScene(board, snapshot)` is a pure function from the latest server
 * frames to a draw list; rendering frame N never depends on frame N-1, so a
 * client that reconnects mid-wave shows exactly what a client that watched
 * from the start would. `drawScene` paints a scene onto a canvas context.
 */

import type { BlobView, BoardFrame, Cell, SnapshotFrame } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export type BlobBadge =
  | "ok"
  /** A red (corrupt) blob past its scanner and still unmarked: the
   * student's formula let bad data through. */
  | "leak"
  /** A blue (clean) blob the student's formula marked: a false alarm. */
  | "falseAlarm";

export interface BlobSprite {
  id: number;
  at: Point;
  color: "red" | "blue";
  marked: boolean;
  badge: BlobBadge;
}

export interface TowerSprite {
  id: number;
  kind: string;
  at: Point;
  range: number;
}

export interface Scene {
  phase: SnapshotFrame["phase"];
  hud: { budget: number; health: number; score: number; pending: number };
  lanes: { input: Point[]; output: Point[] };
  scanners: { input: Point; output: Point };
  buildable: Point[];
  blobs: BlobSprite[];
  towers: TowerSprite[];
}

function pathLength(pts: Cell[]): number {
  let total = 0;
  for (let i = 1; i < pts.length; i++) {
    const [x0, y0] = pts[i - 1]!;
    const [x1, y1] = pts[i]!;
    total += Math.hypot(x1 - x0, y1 - y0);
  }
  return total;
}

/** Board position of path parameter t in [0, 1]; mirrors the server's
 * interpolation so sprites land where the simulation thinks they are. */
export function pointAt(pts: Cell[], t: number): Point {
  const target = Math.max(0, Math.min(1, t)) * pathLength(pts);
  let walked = 0;
  for (let i = 1; i < pts.length; i++) {
    const [x0, y0] = pts[i - 1]!;
    const [x1, y1] = pts[i]!;
    const seg = Math.hypot(x1 - x0, y1 - y0);
    if (walked + seg >= target && seg > 0) {
      const f = (target - walked) / seg;
      return { x: x0 + f * (x1 - x0), y: y0 + f * (y1 - y0) };
    }
    walked += seg;
  }
  const [x, y] = pts[pts.length - 1]!;
  return { x, y };
}

/** Positions in snapshots are rounded; a blob exactly on the scanner line
 * may round up before the marking tick is visible. The slack is far below
 * one tick of movement, so real leaks still show on the next frame. */
const SCANNER_SLACK = 1e-4;

export function badgeFor(blob: BlobView, scanner: number): BlobBadge {
  if (blob.color === "blue" && blob.marked) return "falseAlarm";
  if (blob.color === "red" && !blob.marked && blob.position > scanner + SCANNER_SLACK) {
    return "leak";
  }
  return "ok";
}

export function buildScene(board: BoardFrame, snap: SnapshotFrame): Scene {
  const lane = (side: "input" | "output"): Cell[] =>
    side === "input" ? board.inputPath : board.outputPath;
  const scannerParam = (side: "input" | "output"): number =>
    side === "input" ? board.inputScanner : board.outputScanner;
  return {
    phase: snap.phase,
    hud: {
      budget: snap.budget,
      health: snap.health,
      score: snap.score,
      pending: snap.pending,
    },
    lanes: {
      input: board.inputPath.map(([x, y]) => ({ x, y })),
      output: board.outputPath.map(([x, y]) => ({ x, y })),
    },
    scanners: {
      input: pointAt(board.inputPath, board.inputScanner),
      output: pointAt(board.outputPath, board.outputScanner),
    },
    buildable: board.buildableCells.map(([x, y]) => ({ x, y })),
    blobs: snap.blobs.map((b) => ({
      id: b.id,
      at: pointAt(lane(b.side), b.position),
      color: b.color,
      marked: b.marked,
      badge: badgeFor(b, scannerParam(b.side)),
    })),
    towers: snap.towers.map((t) => ({
      id: t.id,
      kind: t.kind,
      at: { x: t.cell[0], y: t.cell[1] },
      range: board.towers[t.kind]?.range ?? 0,
    })),
  };
}

// -- canvas painting -------------------------------------------------------

const COLORS: Record<string, string> = {
  lane: "#3d4a5c",
  scanner: "#8be9fd",
  buildable: "#222b38",
  red: "#e05252",
  blue: "#5276e0",
  mark: "#f1fa8c",
  tower: "#50fa7b",
};

export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  cellPx: number,
): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  const px = (p: Point): [number, number] => [p.x * cellPx, p.y * cellPx];

  for (const p of scene.buildable) {
    const [x, y] = px(p);
    ctx.fillStyle = COLORS.buildable!;
    ctx.fillRect(x - cellPx * 0.45, y - cellPx * 0.45, cellPx * 0.9, cellPx * 0.9);
  }
  for (const lane of [scene.lanes.input, scene.lanes.output]) {
    ctx.strokeStyle = COLORS.lane!;
    ctx.lineWidth = cellPx * 0.6;
    ctx.beginPath();
    lane.forEach((p, i) => {
      const [x, y] = px(p);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  }
  for (const s of [scene.scanners.input, scene.scanners.output]) {
    const [x, y] = px(s);
    ctx.strokeStyle = COLORS.scanner!;
    ctx.lineWidth = 2;
    ctx.strokeRect(x - cellPx * 0.5, y - cellPx * 0.8, cellPx, cellPx * 1.6);
  }
  for (const t of scene.towers) {
    const [x, y] = px(t.at);
    ctx.fillStyle = COLORS.tower!;
    ctx.fillRect(x - cellPx * 0.35, y - cellPx * 0.35, cellPx * 0.7, cellPx * 0.7);
  }
  for (const b of scene.blobs) {
    const [x, y] = px(b.at);
    ctx.fillStyle = COLORS[b.color]!;
    ctx.beginPath();
    ctx.arc(x, y, cellPx * 0.3, 0, Math.PI * 2);
    ctx.fill();
    if (b.marked) {
      ctx.strokeStyle = COLORS.mark!;
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.arc(x, y, cellPx * 0.42, 0, Math.PI * 2);
      ctx.stroke();
    }
  }
}
