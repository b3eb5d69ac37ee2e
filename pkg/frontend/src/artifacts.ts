/** Read-only access to the emitted artifact directory. */

import type { GraphMode } from "./types.js";

export interface ArtifactClient {
  toc(): Promise<string>;
  fragment(nodeId: string): Promise<string>;
  graph(mode: GraphMode): Promise<unknown>;
}

export class HttpArtifactClient implements ArtifactClient {
  constructor(private readonly base: string) {}

  private async text(path: string): Promise<string> {
    const response = await fetch(`${this.base}/${path}`);
    if (!response.ok) {
      throw new Error(`HTTP ${response.status} for ${path}`);
    }
    return response.text();
  }

  toc(): Promise<string> {
    return this.text("toc.html");
  }

  fragment(nodeId: string): Promise<string> {
    return this.text(`sections/${nodeId}.html`);
  }

  async graph(mode: GraphMode): Promise<unknown> {
    return JSON.parse(await this.text(`${mode}.json`)) as unknown;
  }
}
