/**
 * Local signing and direct testnet submission.
 *
 * The seed stays in memory inside this module's call frames; the only bytes
 * that leave the browser are the signed blob and the faucet/node URLs. The
 * deploy flow never routes credentials through the backend.
 */

import { sha512 } from "@noble/hashes/sha2.js";

import { concat, fromHex, toHex } from "./bytes";
import { serializeSetHook, signingPayload, TXID_PREFIX, type SetHookTx } from "./codec";
import { keypairFromSeed, signPayload } from "./keys";
import type { SubmitOutcome } from "../types";
import type { FetchLike } from "../api";

export function signSetHook(tx: SetHookTx, seed: string): string {
  const keypair = keypairFromSeed(seed);
  const payload = signingPayload(tx, keypair.publicKey);
  const signature = signPayload(payload, keypair);
  return toHex(serializeSetHook(tx, keypair.publicKey, signature));
}

export function txHash(signedBlobHex: string): string {
  const digest = sha512(concat(TXID_PREFIX, fromHex(signedBlobHex)));
  return toHex(digest.slice(0, 32));
}

export async function submitBlob(
  blobHex: string,
  nodeUrl: string,
  fetchImpl: FetchLike = fetch,
): Promise<SubmitOutcome> {
  const resp = await fetchImpl(nodeUrl, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ method: "submit", params: [{ tx_blob: blobHex }] }),
  });
  if (!resp.ok) throw new Error(`node rejected the request: HTTP ${resp.status}`);
  const body = await resp.json();
  const engine: string = body?.result?.engine_result ?? "";
  if (!engine) throw new Error("malformed node response");
  const success = engine.startsWith("tes");
  return {
    status: success ? "success" : "failure",
    engineCode: engine,
    txHash: body?.result?.tx_json?.hash ?? (success ? txHash(blobHex) : null),
  };
}
