import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // the cross-interface oracle spawns the core CLI a few hundred times
    testTimeout: 300_000,
    hookTimeout: 60_000,
  },
});
