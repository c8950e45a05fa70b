import { defineConfig } from "vitest/config";

// /api proxies to the Python service during development:
//   larder serve --artifacts ./artifacts --port 8000
export default defineConfig({
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8000",
    },
  },
  test: {
    environment: "node",
  },
});
