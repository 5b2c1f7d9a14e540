/**
 * Blockly block definitions and toolbox, generated from the backend catalog
 * so the editor and the language share one source of truth. Nothing here is
 * hand-duplicated: add a kind server-side and it appears in the toolbox.
 */

import * as Blockly from "blockly/core";

import type { CatalogDocument, CatalogField, CatalogKind } from "./types";

const TYPE_CHECKS: Record<string, string> = {
  number: "Number",
  text: "String",
  boolean: "Boolean",
  account: "Account",
};

const CATEGORY_COLOURS: Record<string, number> = {
  entry: 20,
  action: 160,
  value: 230,
  control: 120,
  logic: 210,
};

const CATEGORY_LABELS: Record<string, string> = {
  entry: "Entry",
  action: "Actions",
  value: "Values",
  control: "Control",
  logic: "Logic",
};

/** Text field whose saved value is a list of addresses (one per comma). */
export class FieldAccountList extends Blockly.FieldTextInput {
  static register(): void {
    if (!Blockly.registry.hasItem(Blockly.registry.Type.FIELD, "field_account_list")) {
      Blockly.fieldRegistry.register("field_account_list", FieldAccountList);
    }
  }

  static fromJson(options: Blockly.FieldTextInputFromJsonConfig): FieldAccountList {
    return new FieldAccountList(options.text ?? "");
  }

  override saveState(): string[] {
    const raw = this.getValue() ?? "";
    return raw
      .split(",")
      .map((part: string) => part.trim())
      .filter((part: string) => part.length > 0);
  }

  override loadState(state: unknown): void {
    if (Array.isArray(state)) {
      this.setValue(state.join(", "));
    } else {
      this.setValue(String(state ?? ""));
    }
  }
}

function fieldDefinition(field: CatalogField, kind: CatalogKind): Record<string, unknown> {
  if (field.type === "integer") {
    const def: Record<string, unknown> = {
      type: "field_number",
      name: field.name,
      value: defaultInteger(field, kind),
      precision: 1,
    };
    if (
      (kind.kind === "guard" && field.name === "MAXITER") ||
      (kind.kind === "repeat" && field.name === "COUNT")
    ) {
      def.min = 1;
    }
    return def;
  }
  if (field.type === "account_list") {
    return { type: "field_account_list", name: field.name, text: "" };
  }
  if (field.choices.length > 0) {
    return {
      type: "field_dropdown",
      name: field.name,
      options: field.choices.map((c) => [c, c] as [string, string]),
    };
  }
  return { type: "field_input", name: field.name, text: "" };
}

function defaultInteger(field: CatalogField, kind: CatalogKind): number {
  if (kind.kind === "guard" && field.name === "MAXITER") return 1;
  if (kind.kind === "guard" && field.name === "G_ID") return 1;
  if (kind.kind === "repeat" && field.name === "COUNT") return 1;
  if (kind.kind === "percent_of" && field.name === "PERCENT") return 1;
  return 0;
}

export function blockDefinition(kind: CatalogKind): Record<string, unknown> {
  const args: Record<string, unknown>[] = [];
  const words: string[] = [kind.kind.replace(/_/g, " ")];
  for (const field of kind.fields) {
    args.push(fieldDefinition(field, kind));
    words.push(`%${args.length}`);
  }
  for (const input of kind.inputs) {
    args.push({
      type: "input_value",
      name: input.name,
      check: TYPE_CHECKS[input.type],
    });
    words.push(`${input.name.toLowerCase()} %${args.length}`);
  }
  for (const statement of kind.statements) {
    args.push({ type: "input_statement", name: statement });
    words.push(`${statement.toLowerCase()} %${args.length}`);
  }

  const def: Record<string, unknown> = {
    type: kind.kind,
    message0: words.join(" "),
    args0: args,
    colour: CATEGORY_COLOURS[kind.category] ?? 0,
    tooltip: kind.kind,
  };
  if (kind.output !== null) {
    def.output = TYPE_CHECKS[kind.output];
  } else if (kind.category === "entry") {
    def.nextStatement = null; // hat block: chain hangs off it
  } else {
    def.previousStatement = null;
    if (!kind.terminal) def.nextStatement = null; // nothing chains after accept/rollback
  }
  return def;
}

export function defineBlocksFromCatalog(catalog: CatalogDocument): void {
  FieldAccountList.register();
  const fresh = catalog.kinds.filter((k) => !Blockly.Blocks[k.kind]);
  Blockly.defineBlocksWithJsonArray(fresh.map(blockDefinition));
}

export function toolboxFromCatalog(catalog: CatalogDocument): Record<string, unknown> {
  const order = ["entry", "action", "value", "control", "logic"];
  const contents = order.map((category) => ({
    kind: "category",
    name: CATEGORY_LABELS[category],
    colour: String(CATEGORY_COLOURS[category]),
    contents: catalog.kinds
      .filter((k) => k.category === category)
      .map((k) => ({ kind: "block", type: k.kind })),
  }));
  return { kind: "categoryToolbox", contents };
}
