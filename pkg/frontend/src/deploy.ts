/**
 * Compile-and-deploy flow. Compilation goes through the backend; signing
 * and submission happen here in the client against the configured testnet,
 * so the seed is never part of any backend request.
 */

import type { BackendClient, FetchLike } from "./api";
import type { BlockSpan, CompileOutcome, SubmitOutcome } from "./types";
import { toHex } from "./xrpl/bytes";
import { HOOK_ON_PAYMENT, DEFAULT_NAMESPACE, type SetHookTx } from "./xrpl/codec";
import { addressFromSeed } from "./xrpl/keys";
import { signSetHook, submitBlob } from "./xrpl/signing";

export interface DeployRequest {
  seed: string;
  sequence: number;
  feeDrops: bigint;
}

export interface DeployResult {
  address: string;
  blobHex: string;
  outcome: SubmitOutcome;
}

export class DeployFlow {
  private wasmBase64: string | null = null;
  private inFlight = false;

  constructor(
    private readonly backend: BackendClient,
    private readonly testnetUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  get hasArtifact(): boolean {
    return this.wasmBase64 !== null;
  }

  get busy(): boolean {
    return this.inFlight;
  }

  async compile(cSource: string, blockMap: BlockSpan[]): Promise<CompileOutcome> {
    if (this.inFlight) throw new Error("a compile or deploy is already running");
    this.inFlight = true;
    try {
      const outcome = await this.backend.compile(cSource, blockMap);
      this.wasmBase64 = outcome.kind === "ok" ? outcome.artifact.wasm_base64 : null;
      return outcome;
    } finally {
      this.inFlight = false;
    }
  }

  /** Sign with the locally held seed and submit straight to the testnet. */
  async deploy(request: DeployRequest): Promise<DeployResult> {
    if (this.wasmBase64 === null) throw new Error("compile a hook before deploying");
    if (this.inFlight) throw new Error("a compile or deploy is already running");
    this.inFlight = true;
    try {
      const address = addressFromSeed(request.seed);
      const wasmHex = toHex(base64ToBytes(this.wasmBase64));
      const tx: SetHookTx = {
        account: address,
        wasmHex,
        sequence: request.sequence,
        feeDrops: request.feeDrops,
        hookOn: HOOK_ON_PAYMENT,
        namespace: DEFAULT_NAMESPACE,
      };
      const blobHex = signSetHook(tx, request.seed);
      const outcome = await submitBlob(blobHex, this.testnetUrl, this.fetchImpl);
      return { address, blobHex, outcome };
    } finally {
      this.inFlight = false;
    }
  }
}

const B64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

function base64ToBytes(b64: string): Uint8Array {
  const clean = b64.replace(/=+$/, "");
  const out: number[] = [];
  let buffer = 0;
  let bits = 0;
  for (const ch of clean) {
    const value = B64.indexOf(ch);
    if (value < 0) throw new Error(`invalid base64 character '${ch}'`);
    buffer = (buffer << 6) | value;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push((buffer >> bits) & 0xff);
    }
  }
  return new Uint8Array(out);
}

/** Account file matching the CLI's format, offered as a download. */
export function accountFileContents(seed: string, balanceDrops = 0): string {
  return (
    JSON.stringify(
      { address: addressFromSeed(seed), secret_seed: seed, balance_drops: balanceDrops },
      null,
      2,
    ) + "\n"
  );
}
