import { App } from "./app";
import { loadConfig } from "./config";

const app = new App(document, loadConfig());
app.start().catch((err) => {
  const preview = document.getElementById("c-preview");
  if (preview) preview.textContent = `failed to start: ${err}`;
  console.error(err);
});
