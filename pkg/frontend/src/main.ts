import { ExplorerApp } from "./app.js";
import { HttpArtifactClient } from "./artifacts.js";

const base = document.body.dataset.artifactBase ?? "..";
const app = new ExplorerApp(document, new HttpArtifactClient(base));
void app.start();
