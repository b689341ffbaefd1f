import { ApiClient } from "./api.js";
import { ExplorerApp } from "./app.js";

function bootstrap(): void {
  const root = document.getElementById("app");
  if (root === null) throw new Error("missing #app container");
  const app = new ExplorerApp(root, new ApiClient(""));
  void app.init();
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", bootstrap);
} else {
  bootstrap();
}
