import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    // e2e files each spawn a backend; run files one at a time so small
    // machines are not juggling several servers at once
    fileParallelism: false,
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
