import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    globalSetup: "./tests/globalSetup.ts",
    testTimeout: 20000,
    hookTimeout: 30000,
  },
});
