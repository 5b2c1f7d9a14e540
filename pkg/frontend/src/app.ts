/**
 * Two-pane editor: block canvas on the left, live C preview (or inline
 * diagnostics) on the right, with compile/deploy and a simulation panel.
 */

import * as Blockly from "blockly";

import { BackendClient } from "./api";
import { defineBlocksFromCatalog, toolboxFromCatalog } from "./blocks";
import type { AppConfig } from "./config";
import { DeployFlow, accountFileContents } from "./deploy";
import { addressFromSeed } from "./xrpl/keys";
import type { ExampleEntry, GenerateSuccess, Issue, ParseErrorPayload } from "./types";
import { EditorWorkspace } from "./workspace";

// Fixture identities used by the built-in simulation scenario.
const SIM_SENDER = "rRxcsL2tJkg5SiYFAeihcFrnw1Cb6PUdA";
const SIM_RECEIVER = "rBumbgTNuubyPvHHDod9H7Hcy58Jhw6jhz";
const SIM_EXTRA = "rUwj5vpQqLbhiXCEzT3UfkBbe8NAhtGCg5";

export class App {
  private backend: BackendClient;
  private deployFlow: DeployFlow;
  private editor!: EditorWorkspace;
  private lastGenerate: GenerateSuccess | null = null;
  private examples: ExampleEntry[] = [];

  constructor(
    private readonly root: Document,
    config: AppConfig,
  ) {
    this.backend = new BackendClient(config.backendUrl);
    this.deployFlow = new DeployFlow(this.backend, config.testnetUrl);
  }

  async start(): Promise<void> {
    const catalog = await this.backend.catalog();
    defineBlocksFromCatalog(catalog);
    const workspace = Blockly.inject(this.byId("blockly-host"), {
      toolbox: toolboxFromCatalog(catalog) as unknown as Blockly.utils.toolbox.ToolboxDefinition,
      trashcan: true,
    });
    this.editor = new EditorWorkspace(workspace);
    this.editor.onProgramChange(() => void this.refreshPreview());

    this.examples = await this.backend.examples();
    const selector = this.byId<HTMLSelectElement>("example-select");
    for (const example of this.examples) {
      const option = this.root.createElement("option");
      option.value = example.name;
      option.textContent = example.name;
      selector.appendChild(option);
    }
    selector.addEventListener("change", () => this.loadExample(selector.value));

    this.byId("compile-button").addEventListener("click", () => void this.compile());
    this.byId("deploy-button").addEventListener("click", () => void this.deploy());
    this.byId("simulate-button").addEventListener("click", () => void this.simulate());
    this.byId("download-account").addEventListener("click", () => this.downloadAccountFile());
    const seedInput = this.byId<HTMLInputElement>("seed-input");
    seedInput.addEventListener("input", () => this.showDerivedAddress(seedInput.value));

    if (this.examples.length > 0) {
      selector.value = this.examples[0].name;
      this.loadExample(this.examples[0].name);
    }
  }

  loadExample(name: string): void {
    const example = this.examples.find((e) => e.name === name);
    if (!example) return;
    this.editor.clear();
    this.editor.load(example.workspace);
    void this.refreshPreview();
  }

  async refreshPreview(): Promise<void> {
    const outcome = await this.backend.generate(this.editor.save());
    if (outcome.kind === "cancelled") return;
    const preview = this.byId("c-preview");
    const diagnostics = this.byId("diagnostics");
    diagnostics.replaceChildren();
    this.clearHighlights();
    if (outcome.kind === "ok") {
      this.lastGenerate = outcome.result;
      preview.textContent = outcome.result.c_source;
      this.byId("compile-button").removeAttribute("disabled");
      return;
    }
    this.lastGenerate = null;
    preview.textContent = "";
    this.byId("compile-button").setAttribute("disabled", "disabled");
    for (const issue of outcome.rejection.issues) {
      diagnostics.appendChild(this.renderIssue(issue));
    }
  }

  private renderIssue(issue: Issue | ParseErrorPayload): HTMLElement {
    const item = this.root.createElement("div");
    item.className = "diagnostic";
    const rule = "rule" in issue ? issue.rule : issue.code;
    const blockId = "block_id" in issue ? issue.block_id : undefined;
    item.textContent = `[${rule}] ${issue.message}` + (blockId ? ` (block ${blockId})` : "");
    if (blockId) this.highlightBlock(String(blockId));
    return item;
  }

  private highlightBlock(blockId: string): void {
    const block = this.editor.workspace.getBlockById(blockId);
    if (block && "setHighlighted" in block) {
      (block as Blockly.BlockSvg).setHighlighted(true);
    }
  }

  private clearHighlights(): void {
    for (const block of this.editor.workspace.getAllBlocks(false)) {
      if ("setHighlighted" in block) (block as Blockly.BlockSvg).setHighlighted(false);
    }
  }

  async compile(): Promise<void> {
    if (!this.lastGenerate) return;
    const status = this.byId("compile-status");
    status.textContent = "compiling...";
    const outcome = await this.deployFlow.compile(
      this.lastGenerate.c_source,
      this.lastGenerate.block_map,
    );
    if (outcome.kind === "ok") {
      status.textContent = `wasm ready: ${outcome.artifact.size_bytes} bytes (${outcome.artifact.compiler_id})`;
      this.byId("deploy-button").removeAttribute("disabled");
    } else if (outcome.kind === "errors") {
      status.textContent = outcome.errors
        .map((e) => `line ${e.line}: ${e.message}` + (e.mapped_block_id ? ` (block ${e.mapped_block_id})` : ""))
        .join("\n");
      for (const error of outcome.errors) {
        if (error.mapped_block_id) this.highlightBlock(error.mapped_block_id);
      }
    } else {
      status.textContent = `compile service unavailable: ${outcome.message}`;
    }
  }

  async deploy(): Promise<void> {
    const seed = this.byId<HTMLInputElement>("seed-input").value.trim();
    const sequence = Number(this.byId<HTMLInputElement>("sequence-input").value || "1");
    const fee = BigInt(this.byId<HTMLInputElement>("fee-input").value || "10");
    const status = this.byId("deploy-status");
    if (!seed) {
      status.textContent = "enter your family seed (it never leaves this browser)";
      return;
    }
    status.textContent = "signing and submitting...";
    try {
      const result = await this.deployFlow.deploy({ seed, sequence, feeDrops: fee });
      status.textContent =
        result.outcome.status === "success"
          ? `success: ${result.outcome.txHash}`
          : `failure: ${result.outcome.engineCode}`;
    } catch (err) {
      status.textContent = `failure: ${(err as Error).message}`;
    }
  }

  async simulate(): Promise<void> {
    const log = this.byId("trace-log");
    const amount = Number(this.byId<HTMLInputElement>("sim-amount").value || "25000000");
    const scenario = {
      genesis: {
        [SIM_SENDER]: 10_000_000_000,
        [SIM_RECEIVER]: 10_000_000_000,
        [SIM_EXTRA]: 0,
      },
      installs: [
        { account: SIM_RECEIVER, workspace: this.editor.save(), trigger: "both" },
      ],
      transactions: [{ from: SIM_SENDER, to: SIM_RECEIVER, amount_drops: amount }],
    };
    try {
      const report = await this.backend.simulate(scenario);
      log.textContent = renderSimulation(report);
    } catch (err) {
      log.textContent = `simulation failed: ${(err as Error).message}`;
    }
  }

  private showDerivedAddress(seed: string): void {
    const label = this.byId("derived-address");
    if (!seed.trim()) {
      label.textContent = "";
      return;
    }
    try {
      label.textContent = addressFromSeed(seed.trim());
    } catch {
      label.textContent = "(not a valid seed)";
    }
  }

  private downloadAccountFile(): void {
    const seed = this.byId<HTMLInputElement>("seed-input").value.trim();
    if (!seed) return;
    const blob = new Blob([accountFileContents(seed)], { type: "application/json" });
    const link = this.root.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "account.json";
    link.click();
    URL.revokeObjectURL(link.href);
  }

  private byId<T extends HTMLElement = HTMLElement>(id: string): T {
    const el = this.root.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el as T;
  }
}

export function renderSimulation(report: Record<string, unknown>): string {
  const lines: string[] = [];
  const txs = (report.transactions as Array<Record<string, unknown>>) ?? [];
  txs.forEach((tx, i) => {
    lines.push(`tx[${i}] ${tx.applied ? "applied" : `rejected (${tx.reason})`}`);
    for (const key of ["sender_hook", "receiver_hook"] as const) {
      const hook = tx[key] as Record<string, unknown> | null;
      if (!hook) continue;
      const disposition = hook.disposition as Record<string, unknown>;
      lines.push(`  ${key}: ${disposition.kind} (${disposition.msg ?? disposition.g_id ?? ""})`);
      for (const entry of (hook.trace_log as string[]) ?? []) {
        lines.push(`    trace: ${entry}`);
      }
    }
    for (const emitted of (tx.emitted as Array<Record<string, unknown>>) ?? []) {
      const etx = emitted.tx as Record<string, unknown>;
      lines.push(
        `  emitted ${etx.amount} drops -> ${etx.destination}: ${emitted.applied ? "applied" : emitted.reason}`,
      );
      const cbak = emitted.cbak as Record<string, unknown> | null;
      if (cbak) {
        for (const entry of (cbak.trace_log as string[]) ?? []) {
          lines.push(`    cbak trace: ${entry}`);
        }
      }
    }
  });
  const ledger = report.final_ledger as Record<string, unknown> | undefined;
  if (ledger) {
    lines.push("final balances:");
    for (const [addr, drops] of Object.entries(ledger.accounts as Record<string, number>)) {
      lines.push(`  ${addr}: ${drops}`);
    }
  }
  return lines.join("\n");
}
