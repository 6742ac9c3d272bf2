// Scripted end-to-end workflow: the real UI code driven in a DOM against
// the real corpus service on fixture data. Covers the three flows the
// release gate asks for: duplicate submission notice, approve -> public
// browse, and inflected search retrieving the stored form.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { App, boot } from "../src/app.js";
import { STR } from "../src/strings.js";

const REPO = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");
const PY_ENV = { ...process.env, PYTHONPATH: path.join(REPO, "src") };

let workDir: string;
let service: ChildProcess;
let base: string;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address && typeof address === "object") {
        const port = address.port;
        probe.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitForService(url: string, proc: ChildProcess): Promise<void> {
  for (let attempt = 0; attempt < 150; attempt++) {
    if (proc.exitCode !== null) {
      throw new Error(`service exited with ${proc.exitCode}`);
    }
    try {
      const response = await fetch(`${url}/api/stats`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("service did not come up");
}

async function serverFetch(path: string, init?: RequestInit): Promise<Response> {
  return fetch(base + path, init);
}

beforeAll(async () => {
  workDir = mkdtempSync(path.join(tmpdir(), "similemine-ui-"));
  const store = path.join(workDir, "similes.db");
  execFileSync(
    "python3",
    ["-m", "similemine.cli", "user-add", "--name", "cur", "--role", "curator",
     "--password", "lozinka123", "--store", store],
    { env: PY_ENV },
  );
  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  const config = path.join(workDir, "serve.cfg");
  writeFileSync(config,
    `port = ${port}\nhost = 127.0.0.1\nstore = ${store}\nrate_limit = 1000\n`);
  service = spawn("python3", ["-m", "similemine.cli", "serve", "--config", config],
                  { env: PY_ENV, stdio: ["ignore", "pipe", "pipe"] });
  await waitForService(base, service);

  // fixture data: one approved simile seeded through the public API
  const created = await serverFetch("/api/similes", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ phrase: "beo kao sneg" }),
  });
  if (created.status !== 201) throw new Error(`seed submit failed: ${created.status}`);
  const recordId = (await created.json()).record.id;
  const login = await serverFetch("/api/login", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ username: "cur", password: "lozinka123" }),
  });
  const token = (await login.json()).token;
  const approved = await serverFetch(`/api/similes/${recordId}/approve`, {
    method: "POST",
    headers: { Authorization: `Bearer ${token}` },
  });
  if (approved.status !== 200) throw new Error("seed approve failed");
}, 60000);

afterAll(() => {
  if (service) service.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

async function freshApp(): Promise<App> {
  document.body.innerHTML = '<div id="app"></div>';
  return boot(document.getElementById("app") as HTMLElement, base);
}

describe("UI workflow against the real service", () => {
  it("submitting a duplicate shows the duplicate notice with the stored form", async () => {
    const app = await freshApp();
    await app.show("submit");
    // the seeded simile is "beo kao sneg"; this is an inflected variant
    await app.runSubmit("bela kao sneg", "pera");
    const banner = document.querySelector(".banner.duplicate");
    expect(banner).toBeTruthy();
    expect(banner?.textContent).toContain(STR.duplicateNotice);
    expect(banner?.textContent).toContain("beo kao sneg");
  });

  it("approving a pending simile makes it appear in public browse", async () => {
    const app = await freshApp();
    await app.show("submit");
    await app.runSubmit("vredan kao mrav", "mika");
    expect(document.querySelector(".banner.notice")?.textContent)
      .toBe(STR.pendingNotice);

    // not visible to the public before approval
    await app.show("browse");
    expect(document.body.textContent).not.toContain("vredan kao mrav");

    await app.show("curate");
    expect(document.querySelector("#login-form")).toBeTruthy();
    await app.runLogin("cur", "lozinka123");
    const row = Array.from(document.querySelectorAll("#queue .queue-row"))
      .find((r) => r.textContent?.includes("vredan kao mrav"));
    expect(row).toBeTruthy();
    const id = Number((row as HTMLElement).dataset.id);
    await app.runDecision(id, "approve");

    await app.show("browse");
    const forms = Array.from(document.querySelectorAll("#browse-list .form"))
      .map((n) => n.textContent);
    expect(forms).toContain("vredan kao mrav");
    expect(forms).toContain("beo kao sneg");
  });

  it("searching an inflected variant retrieves the stored simile", async () => {
    const app = await freshApp();
    await app.show("search");
    await app.runSearch("bela kao sneg");
    const forms = Array.from(document.querySelectorAll("#search-results .form"))
      .map((n) => n.textContent);
    expect(forms).toEqual(["beo kao sneg"]);
  });
});
