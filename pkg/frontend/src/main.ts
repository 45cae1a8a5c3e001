import { ApiClient } from "./api.js";
import { mount } from "./ui.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "http://127.0.0.1:8765";
const role = params.get("role") === "researcher" ? "researcher" : "user";

const api = new ApiClient(base, {
  role,
  session: `tab-${Math.random().toString(36).slice(2, 10)}`,
  author: params.get("author") ?? "",
});

mount(document.getElementById("app")!, api);
