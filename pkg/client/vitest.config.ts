import { defineConfig } from "vitest/config";

export default defineConfig({
    test: {
        include: ["tests/**/*.test.ts"],
        testTimeout: 30_000,
        hookTimeout: 30_000,
        // e2e tests spawn one shared server; keep files sequential
        fileParallelism: false,
    },
});
