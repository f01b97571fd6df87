/**
 * Streaming recognition client: one TCP connection per session, audio
 * pushed in fixed-duration chunks, transcript events yielded in server
 * order. A final or error event is terminal; nothing is yielded after
 * it even if more frames arrive. Client objects are not shareable
 * across concurrent calls; run several clients for several sessions.
 */

import { Socket, connect } from "node:net";

import {
    ErrorCode,
    FrameDecoder,
    Message,
    MsgType,
    buildStartPayload,
    encodeMessage,
    message,
    parseErrorPayload,
} from "./protocol.js";
import { WavAudio, readWav } from "./wav.js";

export interface ClientConfig {
    host: string;
    port: number;
    /** language code the server was configured with, e.g. "th" or "id" */
    language: string;
    /** audio per AUDIO frame; small enough to exercise multi-chunk paths */
    chunkMs?: number;
    /** inactivity limit for connect and for each reply */
    timeoutS?: number;
    /** session id to request; random when omitted */
    sessionId?: bigint;
}

export type RecognitionEvent =
    | { kind: "partial"; text: string; sessionId: bigint }
    | { kind: "final"; text: string; sessionId: bigint }
    | { kind: "error"; code: number; message: string; sessionId: bigint };

const DEFAULT_CHUNK_MS = 200;
const DEFAULT_TIMEOUT_S = 10;

function randomSessionId(): bigint {
    return (BigInt(Date.now()) << 20n) ^ BigInt(Math.floor(Math.random() * 0xfffff));
}

/** Stream a WAV file; yields events until final or error. */
export async function* streamFile(cfg: ClientConfig, wavPath: string): AsyncGenerator<RecognitionEvent> {
    yield* streamAudio(cfg, readWav(wavPath));
}

export async function* streamAudio(cfg: ClientConfig, audio: WavAudio): AsyncGenerator<RecognitionEvent> {
    const chunkMs = cfg.chunkMs ?? DEFAULT_CHUNK_MS;
    if (chunkMs <= 0) {
        throw new RangeError(`chunk duration must be positive, got ${chunkMs}`);
    }
    const timeoutMs = (cfg.timeoutS ?? DEFAULT_TIMEOUT_S) * 1000;
    const sessionId = cfg.sessionId ?? randomSessionId();

    // events cross from socket callbacks to the generator through a queue
    const queue: RecognitionEvent[] = [];
    let wake: (() => void) | null = null;
    let done = false;

    const push = (ev: RecognitionEvent) => {
        if (done) {
            return;
        }
        if (ev.kind === "final" || ev.kind === "error") {
            done = true;
        }
        queue.push(ev);
        wake?.();
    };
    const fail = (code: number, msg: string) => push({ kind: "error", code, message: msg, sessionId });

    const decoder = new FrameDecoder();
    const socket: Socket = connect({ host: cfg.host, port: cfg.port });
    // Local failures are deferred to 'close', which Node fires only after
    // every pending 'data' event: a terminal frame that already arrived
    // must win over our own EPIPE from writing into the closing socket.
    let localError: string | null = null;
    socket.setTimeout(timeoutMs, () => {
        fail(0, `no reply within ${timeoutMs} ms`);
        socket.destroy();
    });
    socket.on("error", (err: Error) => {
        localError = localError ?? err.message;
    });
    socket.on("close", () => {
        if (!done) {
            fail(0, localError ?? "connection closed before FINAL");
        }
    });
    socket.on("data", (data: Buffer) => {
        let frames: Message[];
        try {
            frames = decoder.feed(data);
        } catch (err) {
            fail(0, `malformed server frame: ${(err as Error).message}`);
            return;
        }
        for (const frame of frames) {
            if (frame.type === MsgType.PARTIAL) {
                push({ kind: "partial", text: frame.payload.toString("utf-8"), sessionId: frame.sessionId });
            } else if (frame.type === MsgType.FINAL) {
                push({ kind: "final", text: frame.payload.toString("utf-8"), sessionId: frame.sessionId });
            } else if (frame.type === MsgType.ERROR) {
                const { code, message: detail } = parseErrorPayload(frame.payload);
                push({ kind: "error", code, message: detail, sessionId: frame.sessionId });
            } else {
                fail(0, `unexpected ${MsgType[frame.type]} frame from server`);
            }
        }
    });

    const writeAll = (buf: Buffer) =>
        new Promise<void>((resolve, reject) => {
            socket.write(buf, (err) => (err ? reject(err) : resolve()));
        });

    // Lets queued 'data' events run between writes, so a terminal frame
    // flips `done` before we push more audio at a closing connection.
    const breathe = () => new Promise<void>((resolve) => setImmediate(resolve));

    socket.once("connect", () => {
        void (async () => {
            try {
                await writeAll(encodeMessage(message(MsgType.START, sessionId, buildStartPayload(cfg.language, audio.sampleRateHz))));
                const chunkBytes = Math.max(2, 2 * Math.round((audio.sampleRateHz * chunkMs) / 1000));
                for (let off = 0; off < audio.pcm.length && !done; off += chunkBytes) {
                    await breathe();
                    if (done) {
                        return;
                    }
                    await writeAll(encodeMessage(message(MsgType.AUDIO, sessionId, audio.pcm.subarray(off, off + chunkBytes))));
                }
                if (!done) {
                    await writeAll(encodeMessage(message(MsgType.END, sessionId)));
                }
            } catch (err) {
                // write race with a server close; 'close' will surface it
                localError = localError ?? (err as Error).message;
                if (!socket.destroyed) {
                    socket.destroy();
                }
            }
        })();
    });

    try {
        for (;;) {
            while (queue.length === 0) {
                await new Promise<void>((resolve) => {
                    wake = resolve;
                });
                wake = null;
            }
            const ev = queue.shift()!;
            yield ev;
            if (ev.kind === "final" || ev.kind === "error") {
                return;
            }
        }
    } finally {
        done = true;
        socket.destroy();
    }
}

/** Collect the full event sequence for a WAV file (small-file helper). */
export async function recognizeFile(cfg: ClientConfig, wavPath: string): Promise<RecognitionEvent[]> {
    const events: RecognitionEvent[] = [];
    for await (const ev of streamFile(cfg, wavPath)) {
        events.push(ev);
    }
    return events;
}

export { ErrorCode };
