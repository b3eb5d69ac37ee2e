import { readFile } from "node:fs/promises";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { ArtifactClient } from "../src/artifacts.js";
import type { GraphMode } from "../src/types.js";

export const ARTIFACT_DIR = join(
  dirname(dirname(fileURLToPath(import.meta.url))),
  ".artifacts",
);

/** File-backed client: same contract as HTTP, fed by the built bundle. */
export class FileArtifactClient implements ArtifactClient {
  calls: Record<GraphMode, number> = { inbound: 0, outbound: 0 };

  constructor(private readonly dir: string = ARTIFACT_DIR) {}

  async toc(): Promise<string> {
    return readFile(join(this.dir, "toc.html"), "utf-8");
  }

  async fragment(nodeId: string): Promise<string> {
    if (!/^s[0-9A-Za-z]+$/.test(nodeId)) {
      throw new Error(`bad fragment id: ${nodeId}`);
    }
    return readFile(join(this.dir, "sections", `${nodeId}.html`), "utf-8");
  }

  async graph(mode: GraphMode): Promise<unknown> {
    this.calls[mode] += 1;
    return JSON.parse(await readFile(join(this.dir, `${mode}.json`), "utf-8")) as unknown;
  }
}

export async function loadGraphFile(mode: GraphMode): Promise<{ nodes: any[]; links: any[] }> {
  return JSON.parse(await readFile(join(ARTIFACT_DIR, `${mode}.json`), "utf-8"));
}

/** Three-panel page skeleton matching index.html. */
export function mountSkeleton(): void {
  document.body.dataset.activeView = "";
  document.body.innerHTML = `
    <header class="topbar">
      <nav class="views">
        <button type="button" data-view="opv">reading</button>
        <button type="button" data-view="inbound">inbound</button>
        <button type="button" data-view="outbound">outbound</button>
      </nav>
    </header>
    <main id="layout">
      <section id="toc-panel" class="panel"><h2>Table of contents</h2><div id="toc" class="panel-body"></div></section>
      <section id="stage-panel" class="panel"><h2 id="stage-title">Highlighted contents</h2><div id="stage" class="panel-body"></div></section>
      <section id="zih-panel" class="panel"><h2>Zoomed-in hyperlinks</h2><div id="zih" class="panel-body"></div></section>
    </main>
    <aside id="preview" class="preview" hidden></aside>
  `;
}

export async function until(check: () => boolean, what = "condition"): Promise<void> {
  for (let i = 0; i < 200; i++) {
    if (check()) return;
    await new Promise((resolve) => setTimeout(resolve, 5));
  }
  throw new Error(`timed out waiting for ${what}`);
}

export function click(element: Element): void {
  element.dispatchEvent(new MouseEvent("click", { bubbles: true, cancelable: true }));
}
