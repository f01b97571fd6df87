#!/usr/bin/env node
/**
 * asr-client: stream a WAV file to a recognition server and print the
 * transcript. Partials rewrite one line; the final lands on its own
 * line. Exit 0 after FINAL, 1 on any error, 2 on usage mistakes.
 */

import { parseArgs } from "node:util";

import { streamFile } from "./client.js";

function usage(): string {
    return "usage: asr-client --host HOST --port PORT --lang CODE [--chunk-ms N] [--timeout S] file.wav";
}

async function main(): Promise<number> {
    let args;
    try {
        args = parseArgs({
            args: process.argv.slice(2),
            options: {
                host: { type: "string", default: "127.0.0.1" },
                port: { type: "string" },
                lang: { type: "string" },
                "chunk-ms": { type: "string", default: "200" },
                timeout: { type: "string", default: "10" },
            },
            allowPositionals: true,
        });
    } catch (err) {
        console.error((err as Error).message);
        console.error(usage());
        return 2;
    }

    const { values, positionals } = args;
    const port = Number(values.port);
    const chunkMs = Number(values["chunk-ms"]);
    const timeoutS = Number(values.timeout);
    if (!values.lang || !Number.isInteger(port) || port <= 0 || positionals.length !== 1) {
        console.error(usage());
        return 2;
    }

    let sawPartial = false;
    let lastLen = 0;
    const rewrite = (text: string) => {
        // pad so a shorter update fully covers the previous one
        process.stdout.write("\r" + text + " ".repeat(Math.max(0, lastLen - text.length)));
        lastLen = text.length;
    };

    try {
        for await (const ev of streamFile(
            { host: values.host!, port, language: values.lang, chunkMs, timeoutS },
            positionals[0]!,
        )) {
            if (ev.kind === "partial") {
                sawPartial = true;
                rewrite(ev.text);
            } else if (ev.kind === "final") {
                if (sawPartial) {
                    rewrite(ev.text);
                    process.stdout.write("\n");
                } else {
                    process.stdout.write(ev.text + "\n");
                }
                return 0;
            } else {
                if (sawPartial) {
                    process.stdout.write("\n");
                }
                console.error(`error ${ev.code}: ${ev.message}`);
                return 1;
            }
        }
    } catch (err) {
        console.error((err as Error).message);
        return 1;
    }
    console.error("connection ended without a final transcript");
    return 1;
}

main().then((code) => {
    process.exitCode = code;
});
