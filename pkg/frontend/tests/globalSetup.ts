/** Boots the real proof service for the flow tests; the client is only a
 * view layer, so its tests exercise the API it will actually talk to. */

import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import { dirname, resolve } from "node:path";

export const PORT = 8799;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | undefined;

async function waitUntilReady(): Promise<void> {
  const deadline = Date.now() + 20000;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/api/v1/sessions/probe`);
      if (resp.status === 404) return;
    } catch {
      // not listening yet
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("proof service did not come up on " + BASE);
}

export default async function setup(): Promise<() => void> {
  const repoRoot = resolve(dirname(fileURLToPath(import.meta.url)), "../..");
  server = spawn("python3", ["-m", "setproof", "serve", "--port", String(PORT)],
                 { cwd: repoRoot, stdio: "ignore" });
  await waitUntilReady();
  return () => {
    server?.kill();
  };
}
