import { httpClient } from "./api.js";
import { ExplorerApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("service") ?? "http://127.0.0.1:8764";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

const app = new ExplorerApp(root, httpClient(base));
// show whatever the service is already holding
void app.refresh();
