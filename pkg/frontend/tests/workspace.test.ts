/**
 * Catalog-driven block definitions and interchange-format compatibility,
 * exercised on a headless Blockly workspace (no DOM).
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

import * as Blockly from "blockly/core";
import { beforeAll, describe, expect, it } from "vitest";

import { blockDefinition, defineBlocksFromCatalog, toolboxFromCatalog } from "../src/blocks";
import type { CatalogDocument, CatalogKind, WorkspaceDocument } from "../src/types";
import { EditorWorkspace } from "../src/workspace";

const FIXTURES = join(__dirname, "fixtures");
const catalog: CatalogDocument = JSON.parse(readFileSync(join(FIXTURES, "catalog.json"), "utf-8"));
const acceptAll: WorkspaceDocument = JSON.parse(
  readFileSync(join(FIXTURES, "accept_all.workspace.json"), "utf-8"),
);
const carbon: WorkspaceDocument = JSON.parse(
  readFileSync(join(FIXTURES, "carbon_offset.workspace.json"), "utf-8"),
);

function kind(name: string): CatalogKind {
  const found = catalog.kinds.find((k) => k.kind === name);
  if (!found) throw new Error(`catalog fixture is missing ${name}`);
  return found;
}

beforeAll(() => {
  defineBlocksFromCatalog(catalog);
});

describe("block definitions", () => {
  it("entry blocks are hats: next but no previous", () => {
    const def = blockDefinition(kind("hook_entry"));
    expect(def.nextStatement).toBeNull();
    expect(def.previousStatement).toBeUndefined();
    expect(def.output).toBeUndefined();
  });

  it("terminals cannot chain a next statement", () => {
    const def = blockDefinition(kind("accept"));
    expect(def.previousStatement).toBeNull();
    expect(def.nextStatement).toBeUndefined();
  });

  it("expressions carry typed output checks", () => {
    expect(blockDefinition(kind("otxn_amount")).output).toBe("Number");
    expect(blockDefinition(kind("otxn_account")).output).toBe("Account");
    expect(blockDefinition(kind("compare")).output).toBe("Boolean");
    expect(blockDefinition(kind("literal_text")).output).toBe("String");
  });

  it("value sockets carry matching checks", () => {
    const def = blockDefinition(kind("emit_payment"));
    const args = def.args0 as Array<Record<string, unknown>>;
    const dest = args.find((a) => a.name === "DESTINATION");
    expect(dest).toMatchObject({ type: "input_value", check: "Account" });
  });

  it("guard bounds get a minimum of one in the editor", () => {
    const def = blockDefinition(kind("guard"));
    const args = def.args0 as Array<Record<string, unknown>>;
    const maxiter = args.find((a) => a.name === "MAXITER");
    expect(maxiter).toMatchObject({ type: "field_number", min: 1 });
  });

  it("every catalog kind is registered with Blockly", () => {
    for (const entry of catalog.kinds) {
      expect(Blockly.Blocks[entry.kind], entry.kind).toBeDefined();
    }
  });
});

describe("toolbox", () => {
  it("is generated from the catalog, one category per block family", () => {
    const toolbox = toolboxFromCatalog(catalog) as {
      contents: Array<{ name: string; contents: Array<{ type: string }> }>;
    };
    const names = toolbox.contents.map((c) => c.name);
    expect(names).toEqual(["Entry", "Actions", "Values", "Control", "Logic"]);
    const placed = toolbox.contents.flatMap((c) => c.contents.map((b) => b.type));
    expect(new Set(placed)).toEqual(new Set(catalog.kinds.map((k) => k.kind)));
  });
});

describe("workspace save/load", () => {
  it("loads the accept-all example and saves the identical interchange shape", () => {
    const editor = EditorWorkspace.headless();
    editor.load(acceptAll);
    const saved = editor.save();
    expect(saved.blocks.languageVersion).toBe(0);
    const tops = saved.blocks.blocks as Array<Record<string, unknown>>;
    expect(tops).toHaveLength(1);
    const entry = tops[0];
    expect(entry.type).toBe("hook_entry");
    const chainKinds: string[] = [];
    let node = (entry.next as Record<string, unknown> | undefined)?.block as
      | Record<string, unknown>
      | undefined;
    while (node) {
      chainKinds.push(node.type as string);
      node = (node.next as Record<string, unknown> | undefined)?.block as
        | Record<string, unknown>
        | undefined;
    }
    expect(chainKinds).toEqual(["guard", "trace", "accept"]);
    editor.workspace.dispose();
  });

  it("preserves fields and nested inputs through load/save round-trip", () => {
    const editor = EditorWorkspace.headless();
    editor.load(carbon);
    const saved = editor.save();
    const json = JSON.stringify(saved);
    expect(json).toContain('"G_ID":1');
    expect(json).toContain('"PERCENT":1');
    expect(json).toContain("rUwj5vpQqLbhiXCEzT3UfkBbe8NAhtGCg5");
    expect(json).toContain('"otxn_amount"');
    // ids survive, so diagnostics can be attached after a round trip
    expect(json).toContain('"id":"emit1"');
    editor.workspace.dispose();
  });

  it("account list fields save as a list of strings", () => {
    const editor = EditorWorkspace.headless();
    const block = editor.workspace.newBlock("account_list_contains");
    block.setFieldValue(
      "rRxcsL2tJkg5SiYFAeihcFrnw1Cb6PUdA, rH2SsiWJYdNLT99rPidRK9KB9MBZpqdET2",
      "LIST",
    );
    const saved = editor.save();
    const top = (saved.blocks.blocks as Array<Record<string, unknown>>)[0];
    const fields = top.fields as Record<string, unknown>;
    expect(fields.LIST).toEqual([
      "rRxcsL2tJkg5SiYFAeihcFrnw1Cb6PUdA",
      "rH2SsiWJYdNLT99rPidRK9KB9MBZpqdET2",
    ]);
    editor.workspace.dispose();
  });

  it("removing the guard block leaves a guardless chain (for diagnostics)", () => {
    const editor = EditorWorkspace.headless();
    editor.load(acceptAll);
    expect(editor.removeBlock("guard1")).toBe(true);
    const saved = JSON.stringify(editor.save());
    expect(saved).not.toContain('"guard"');
    expect(saved).toContain('"trace"');
    editor.workspace.dispose();
  });
});
