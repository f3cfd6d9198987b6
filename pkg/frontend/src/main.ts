import { ApiClient } from "./api.js";
import { ProofApp } from "./app.js";

const base = document.querySelector("meta[name='api-base']")
  ?.getAttribute("content") ?? "http://127.0.0.1:8000";

const root = document.getElementById("app");
if (root) {
  new ProofApp(root, new ApiClient(base)).mount();
}
