/** Wire types for the backend API and catalog document. */

export interface CatalogField {
  name: string;
  type: "integer" | "text" | "account_address" | "account_list";
  choices: string[];
}

export interface CatalogInput {
  name: string;
  type: "number" | "text" | "boolean" | "account";
  optional: boolean;
}

export interface CatalogKind {
  kind: string;
  category: "entry" | "action" | "value" | "control" | "logic";
  fields: CatalogField[];
  inputs: CatalogInput[];
  statements: string[];
  output: "number" | "text" | "boolean" | "account" | null;
  terminal: boolean;
}

export interface CatalogDocument {
  version: string;
  kinds: CatalogKind[];
}

export interface BlockSpan {
  start_line: number;
  end_line: number;
  block_id: string;
}

export interface GenerateSuccess {
  c_source: string;
  source_digest: string;
  block_map: BlockSpan[];
  static_step_bound: number;
  warnings: Issue[];
}

export interface Issue {
  severity: string;
  block_id: string;
  rule: string;
  message: string;
}

export interface GenerateRejection {
  stage: "parse" | "validate" | "guard_check";
  issues: Array<Issue | ParseErrorPayload>;
}

export interface ParseErrorPayload {
  code: string;
  message: string;
  [extra: string]: unknown;
}

export type GenerateOutcome =
  | { kind: "ok"; result: GenerateSuccess }
  | { kind: "rejected"; rejection: GenerateRejection }
  | { kind: "cancelled" };

export interface CompileSuccess {
  wasm_base64: string;
  source_digest: string;
  compiler_id: string;
  size_bytes: number;
}

export interface CompileErrorItem {
  line: number;
  column: number | null;
  message: string;
  mapped_block_id: string | null;
}

export type CompileOutcome =
  | { kind: "ok"; artifact: CompileSuccess }
  | { kind: "errors"; errors: CompileErrorItem[] }
  | { kind: "upstream_error"; message: string };

export interface ExampleEntry {
  name: string;
  description: string;
  workspace: WorkspaceDocument;
}

export interface WorkspaceDocument {
  blocks: { languageVersion: number; blocks: unknown[] };
  metadata?: Record<string, string>;
}

export interface SubmitOutcome {
  status: "success" | "failure";
  engineCode: string;
  txHash: string | null;
}
