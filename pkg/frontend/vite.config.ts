import { defineConfig } from "vite";

// Dev flow: `greenops serve --seed demo` on :8000, then `npm run dev`;
// API and upload paths proxy through so the console runs same-origin.
export default defineConfig({
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8000",
      "/uploads": "http://127.0.0.1:8000",
    },
  },
  build: { outDir: "dist" },
});
