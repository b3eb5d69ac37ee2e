/** Explorer application: wires the three panels and the network views.
 *
 * Pure consumer of the emitted artifact directory; performs no writes.
 */

import type { ArtifactClient } from "./artifacts.js";
import { renderNetwork } from "./network.js";
import { initialState, navigateViews, type ViewState } from "./state.js";
import {
  SchemaError,
  validateGraphDocument,
  type GraphDocument,
  type GraphMode,
  type GraphNode,
} from "./types.js";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export class ExplorerApp {
  state: ViewState = initialState();
  /** Count of graph-file loads per mode; each visit refetches. */
  readonly graphLoads: Record<GraphMode, number> = { inbound: 0, outbound: 0 };

  private readonly doc: Document;
  private readonly fragmentCache = new Map<string, string>();
  private currentGraph: GraphDocument | null = null;

  constructor(
    root: Document,
    private readonly client: ArtifactClient,
  ) {
    this.doc = root;
  }

  private panel(id: string): HTMLElement {
    const el = this.doc.getElementById(id);
    if (!el) throw new Error(`missing #${id} in page skeleton`);
    return el;
  }

  async start(): Promise<void> {
    this.doc.addEventListener("click", (event) => this.onClick(event));
    this.panel("zih").innerHTML = '<p class="placeholder">Nothing selected yet.</p>';
    this.panel("stage").innerHTML = '<p class="placeholder">Pick a section from the contents.</p>';
    try {
      this.panel("toc").innerHTML = await this.client.toc();
    } catch (error) {
      this.renderErrorCard(this.panel("toc"), `Could not load the table of contents: ${String(error)}`);
    }
    await this.applyView();
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement | null;
    if (!target) return;
    const viewButton = target.closest<HTMLElement>("button[data-view]");
    if (viewButton?.dataset.view) {
      void this.switchView(viewButton.dataset.view);
      return;
    }
    const zihJump = target.closest<HTMLElement>("[data-zih-section]");
    if (zihJump?.dataset.zihSection) {
      event.preventDefault();
      void this.loadZihFragment(zihJump.dataset.zihSection);
      return;
    }
    const link = target.closest<HTMLAnchorElement>("a");
    if (!link) return;
    if (link.classList.contains("toc-section") && link.dataset.section) {
      event.preventDefault();
      void this.loadHc(link.dataset.section);
      return;
    }
    if (link.classList.contains("outbound")) {
      event.preventDefault();
      this.showCitation(link);
      return;
    }
    if (link.classList.contains("inbound") && link.dataset.target) {
      event.preventDefault();
      void this.loadHc(link.dataset.target);
    }
  }

  async switchView(target: string): Promise<void> {
    const next = navigateViews(this.state, target);
    if (next === this.state && target !== this.state.activeView) return; // unknown target
    this.state = next;
    await this.applyView();
  }

  private async applyView(): Promise<void> {
    const view = this.state.activeView;
    this.doc.body.dataset.activeView = view;
    for (const button of this.doc.querySelectorAll<HTMLElement>("button[data-view]")) {
      button.classList.toggle("active", button.dataset.view === view);
    }
    const tocPanel = this.panel("toc-panel");
    tocPanel.hidden = view !== "opv";
    const stage = this.panel("stage");
    const stageTitle = this.doc.getElementById("stage-title");

    if (view === "opv") {
      if (stageTitle) stageTitle.textContent = "Highlighted contents";
      if (this.state.hcSection) {
        await this.loadHc(this.state.hcSection);
      }
      return;
    }

    if (stageTitle) {
      stageTitle.textContent = view === "inbound" ? "Inbound network" : "Outbound network";
    }
    stage.innerHTML = '<p class="loading">Loading network…</p>';
    let graph: GraphDocument;
    try {
      const raw = await this.client.graph(view);
      graph = validateGraphDocument(raw);
      this.graphLoads[view] += 1;
    } catch (error) {
      this.currentGraph = null;
      const kind = error instanceof SchemaError ? "Invalid graph document" : "Could not load graph";
      stage.innerHTML = `<div class="error-screen"><h3>${kind}</h3><p>${escapeHtml(String(error))}</p></div>`;
      return;
    }
    this.currentGraph = graph;
    renderNetwork(stage, graph, {
      onNodeClick: (node) => void this.onNodeClick(node),
      onNodeHover: (node) => void this.onNodeHover(node),
    });
  }

  /** Load a section fragment into the highlighted-contents panel. */
  async loadHc(nodeId: string): Promise<void> {
    this.state = { ...this.state, hcSection: nodeId };
    const stage = this.panel("stage");
    if (this.state.activeView !== "opv") {
      await this.switchView("opv");
      return;
    }
    stage.innerHTML = '<p class="loading">Loading…</p>';
    try {
      stage.innerHTML = await this.fragment(nodeId);
    } catch (error) {
      this.renderErrorCard(stage, `Could not load ${nodeId}: ${String(error)}`);
    }
  }

  /** Outbound hyperlink in HC: show the cited provision in the ZIH panel. */
  private showCitation(link: HTMLAnchorElement): void {
    const act = link.dataset.act ?? "external Act";
    const section = link.dataset.section;
    const locator = section ? `${act} s.${section}` : act;
    this.state = { ...this.state, zihSection: locator };
    const zih = this.panel("zih");
    const headline = section ? `Section ${escapeHtml(section)} of the ${escapeHtml(act)}` : escapeHtml(act);
    zih.innerHTML = [
      '<div class="citation-card">',
      `<h3>${headline}</h3>`,
      `<p class="citation-text">${escapeHtml(link.textContent ?? "")}</p>`,
      `<p><a class="external-link" href="${escapeHtml(link.href)}" target="_blank" rel="noopener">`,
      "Open on the legislation site</a></p>",
      "</div>",
    ].join("");
  }

  /** Load a same-Act provision fragment into the ZIH panel. */
  async loadZihFragment(nodeId: string): Promise<void> {
    this.state = { ...this.state, zihSection: nodeId };
    const zih = this.panel("zih");
    zih.innerHTML = '<p class="loading">Loading…</p>';
    try {
      zih.innerHTML = await this.fragment(nodeId);
    } catch (error) {
      this.renderErrorCard(zih, `Could not load ${nodeId}: ${String(error)}`);
    }
  }

  private async onNodeClick(node: GraphNode): Promise<void> {
    if (node.group === "external") {
      this.showExternalReferences(node);
      return;
    }
    await this.loadZihFragment(node.id);
  }

  /** External-Act node: list every outbound reference connecting to it. */
  private showExternalReferences(node: GraphNode): void {
    const zih = this.panel("zih");
    this.state = { ...this.state, zihSection: node.id };
    const graph = this.currentGraph;
    const rows: string[] = [];
    if (graph) {
      for (const link of graph.links) {
        if (link.target !== node.id) continue;
        const source = graph.nodes.find((n) => n.id === link.source);
        const label = source ? source.label : link.source;
        rows.push(
          `<li><button class="ref-row" data-zih-section="${escapeHtml(link.source)}">` +
            `section ${escapeHtml(label)}</button> <span class="thick">×${link.thick}</span></li>`,
        );
      }
    }
    zih.innerHTML = [
      '<div class="external-references">',
      `<h3>${escapeHtml(node.label)}</h3>`,
      `<p>${rows.length} referencing sections</p>`,
      `<ul>${rows.join("")}</ul>`,
      node.url ? `<p><a class="external-link" href="${escapeHtml(node.url)}">Open on the legislation site</a></p>` : "",
      "</div>",
    ].join("");
  }

  /** Hover preview: the section heading plus its first subsection. */
  private async onNodeHover(node: GraphNode | null): Promise<void> {
    this.state = { ...this.state, hoveredNode: node ? node.id : null };
    const preview = this.doc.getElementById("preview");
    if (!preview) return;
    if (!node) {
      preview.hidden = true;
      preview.innerHTML = "";
      return;
    }
    preview.hidden = false;
    if (node.group === "external") {
      preview.innerHTML = `<h4>${escapeHtml(node.label)}</h4><p>cited ${node.nodeSize} times</p>`;
      return;
    }
    preview.innerHTML = `<h4>${escapeHtml(node.label)}</h4>`;
    try {
      const fragment = await this.fragment(node.id);
      if (this.state.hoveredNode !== node.id) return; // hover moved on
      const scratch = this.doc.createElement("div");
      scratch.innerHTML = fragment;
      const heading = scratch.querySelector("h2")?.textContent ?? node.label;
      const first = scratch.querySelector(".subsection")?.textContent ?? "";
      preview.innerHTML =
        `<h4>${escapeHtml(heading)}</h4>` +
        `<p>${escapeHtml(first.trim().slice(0, 280))}</p>`;
    } catch {
      // keep the label-only preview on fetch trouble
    }
  }

  private async fragment(nodeId: string): Promise<string> {
    const cached = this.fragmentCache.get(nodeId);
    if (cached !== undefined) return cached;
    const body = await this.client.fragment(nodeId);
    this.fragmentCache.set(nodeId, body);
    return body;
  }

  private renderErrorCard(panel: HTMLElement, message: string): void {
    panel.innerHTML = `<div class="error-card">${escapeHtml(message)}</div>`;
  }
}
