import { bootstrap } from "./app.js";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "";
bootstrap(document, apiBase);
