import { App } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = new App(root);
  app.init().catch((err: unknown) => {
    root.textContent = `failed to start: ${err instanceof Error ? err.message : String(err)}`;
  });
}
