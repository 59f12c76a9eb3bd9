/** Wire schemas shared with the checking service. Field names and shapes
 * mirror the server's JSON exactly; nothing here is invented client-side. */

// -- AST document ----------------------------------------------------------

export type BinaryKind =
  | "and" | "or"
  | "eq" | "neq" | "lt" | "le" | "gt" | "ge"
  | "add" | "sub" | "mul" | "div" | "mod";

export type UnaryKind = "not" | "neg";
export type QuantKind = "forall" | "exists";

export type AstNode =
  | { kind: "int"; value: number; type?: string }
  | { kind: "real"; value: number; type?: string }
  | { kind: "bool"; value: boolean; type?: string }
  | { kind: "null"; type?: string }
  | { kind: "var"; name: string; type?: string }
  | { kind: UnaryKind; children: [AstNode]; type?: string }
  | { kind: BinaryKind | "imp" | "index"; children: [AstNode, AstNode]; type?: string }
  | { kind: "length"; children: [AstNode]; type?: string }
  | { kind: QuantKind; binder: string; children: [AstNode, AstNode]; type?: string };

export interface ParamDoc {
  name: string;
  type: string; // "int", "int[]", "double[][]", ...
}

export interface SignatureDoc {
  name: string;
  params: ParamDoc[];
  returnType: string; // "void" when there is no retval
}

export interface SpecDoc {
  signature: SignatureDoc;
  pres: AstNode[];
  posts: AstNode[];
}

// -- REST ------------------------------------------------------------------

export interface Diagnostic {
  line: number;
  col: number;
  message: string;
}

export interface ExerciseSummary {
  id: string;
  title: string;
  description: string;
  signature: string; // DSL header text, for display
  signatureAst: SignatureDoc;
  createdAt: string;
}

export type SideStatus = "Equivalent" | "TooWeak" | "TooStrong" | "NotEquivalent" | "Undetermined";

export interface VerdictSide {
  status: SideStatus;
  proved: boolean;
  quadrants: Record<string, { status: string; witness?: Record<string, unknown> }>;
}

export interface VerdictJson {
  pre: VerdictSide;
  post: VerdictSide;
  eliminated?: unknown;
}

export type BlobKind = "redUnmarked" | "blueMarked" | "redMarked" | "blueUnmarked";

export interface SubmissionResponse {
  submissionId: string;
  sessionId: string;
  verdict: VerdictJson;
  blobSummary: { input: BlobKind[]; output: BlobKind[]; count: number };
}

// -- WebSocket session frames ---------------------------------------------

export type Cell = [number, number];

export interface BoardFrame {
  type: "board";
  inputPath: Cell[];
  outputPath: Cell[];
  inputScanner: number; // path parameter in [0, 1]
  outputScanner: number;
  buildableCells: Cell[];
  towers: Record<string, { cost: number; range: number }>;
}

export interface BlobView {
  id: number;
  side: "input" | "output";
  color: "red" | "blue";
  marked: boolean;
  position: number; // path parameter in [0, 1]
}

export interface TowerView {
  id: number;
  kind: string;
  cell: Cell;
}

export interface SnapshotFrame {
  type: "snapshot";
  tick: number;
  phase: "building" | "wave" | "ended";
  budget: number;
  health: number;
  score: number;
  pending: number;
  blobs: BlobView[];
  towers: TowerView[];
}

export interface ScoreReportFrame {
  type: "scoreReport";
  score: number;
  health: number;
  maxScore: number;
  outcomes: Record<string, { destroyed: number; reachedEnd: number }>;
}

export interface ErrorFrame {
  type: "error";
  error: string;
}

export type ServerFrame = BoardFrame | SnapshotFrame | ScoreReportFrame | ErrorFrame;

export type ClientAction =
  | { action: "placeTower"; params: { kind: string; cell: Cell } }
  | { action: "startWave"; params: Record<string, never> };
