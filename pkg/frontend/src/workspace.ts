/**
 * Workspace wrapper: save/load in the backend's interchange format (which is
 * Blockly's native save shape) and debounced change notification.
 */

import * as Blockly from "blockly/core";

import type { WorkspaceDocument } from "./types";

export class EditorWorkspace {
  constructor(readonly workspace: Blockly.Workspace) {}

  /** Headless workspace for tests and non-rendered use. */
  static headless(): EditorWorkspace {
    return new EditorWorkspace(new Blockly.Workspace());
  }

  save(metadata?: Record<string, string>): WorkspaceDocument {
    const doc = Blockly.serialization.workspaces.save(this.workspace) as unknown as
      | WorkspaceDocument
      | Record<string, never>;
    const blocks = (doc as WorkspaceDocument).blocks ?? { languageVersion: 0, blocks: [] };
    const out: WorkspaceDocument = { blocks };
    if (metadata && Object.keys(metadata).length > 0) out.metadata = metadata;
    return out;
  }

  load(doc: WorkspaceDocument): void {
    Blockly.serialization.workspaces.load(doc as unknown as Record<string, unknown>, this.workspace);
  }

  clear(): void {
    this.workspace.clear();
  }

  removeBlock(blockId: string): boolean {
    const block = this.workspace.getBlockById(blockId);
    if (!block) return false;
    block.dispose(true);
    return true;
  }

  /**
   * Fire on every meaningful edit, debounced; UI events (scroll, select)
   * are ignored so only program changes regenerate the preview.
   */
  onProgramChange(callback: () => void, debounceMs = 250): () => void {
    let timer: ReturnType<typeof setTimeout> | null = null;
    const listener = (event: Blockly.Events.Abstract) => {
      if (event.isUiEvent) return;
      if (timer !== null) clearTimeout(timer);
      timer = setTimeout(callback, debounceMs);
    };
    this.workspace.addChangeListener(listener);
    return () => {
      if (timer !== null) clearTimeout(timer);
      this.workspace.removeChangeListener(listener);
    };
  }
}
