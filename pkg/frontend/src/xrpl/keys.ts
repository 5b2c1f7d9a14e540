/**
 * Ed25519 keys from family seeds. The raw signing key is SHA-512(entropy)
 * truncated to 32 bytes; the wire public key carries the 0xED prefix.
 * Everything here runs locally; seeds never reach the network.
 */

import * as ed from "@noble/ed25519";
import { ripemd160 } from "@noble/hashes/legacy.js";
import { sha256, sha512 } from "@noble/hashes/sha2.js";

import { decodeEd25519Seed, encodeClassicAddress } from "./base58";
import { concat } from "./bytes";

ed.hashes.sha512 = sha512; // enable the sync signing path

const ED_PREFIX = new Uint8Array([0xed]);

export interface KeyPair {
  rawPrivate: Uint8Array;
  /** 33-byte wire public key (0xED || point). */
  publicKey: Uint8Array;
}

export function keypairFromSeed(seed: string): KeyPair {
  const entropy = decodeEd25519Seed(seed);
  const rawPrivate = sha512(entropy).slice(0, 32);
  const publicKey = concat(ED_PREFIX, ed.getPublicKey(rawPrivate));
  return { rawPrivate, publicKey };
}

export function addressFromSeed(seed: string): string {
  const { publicKey } = keypairFromSeed(seed);
  return encodeClassicAddress(ripemd160(sha256(publicKey)));
}

export function signPayload(payload: Uint8Array, keypair: KeyPair): Uint8Array {
  return ed.sign(payload, keypair.rawPrivate);
}

export function verifyPayload(
  payload: Uint8Array,
  signature: Uint8Array,
  publicKey: Uint8Array,
): boolean {
  const point = publicKey.length === 33 ? publicKey.slice(1) : publicKey;
  try {
    return ed.verify(signature, payload, point);
  } catch {
    return false;
  }
}
