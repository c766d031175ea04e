import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // javac invocations dominate; generous per-test budget
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
