/**
 * Bootstrap configuration, injected as a single JSON document so deployments
 * can rebase the backend and testnet without rebuilding:
 *
 *   <script type="application/json" id="hookforge-config">
 *     {"backendUrl": "...", "testnetUrl": "..."}
 *   </script>
 */

export interface AppConfig {
  backendUrl: string;
  testnetUrl: string;
}

const DEFAULTS: AppConfig = {
  backendUrl: "http://127.0.0.1:8400",
  testnetUrl: "https://hooks-testnet-v3.xrpl-labs.com",
};

export function loadConfig(doc: Document | null = typeof document === "undefined" ? null : document): AppConfig {
  if (!doc) return { ...DEFAULTS };
  const el = doc.getElementById("hookforge-config");
  if (!el || !el.textContent) return { ...DEFAULTS };
  try {
    return { ...DEFAULTS, ...JSON.parse(el.textContent) };
  } catch {
    return { ...DEFAULTS };
  }
}
