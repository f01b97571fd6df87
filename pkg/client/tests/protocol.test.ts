import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
    ErrorCode,
    FrameDecoder,
    HEADER_LEN,
    MAGIC,
    MAX_PAYLOAD,
    MsgType,
    ProtocolError,
    buildStartPayload,
    encodeMessage,
    message,
    parseErrorPayload,
    parseStartPayload,
    tryDecode,
} from "../src/protocol.js";

const WIRE_DIR = join(__dirname, "..", "..", "fixtures", "wire");

interface GoldenEntry {
    file: string;
    type: number;
    session_id: number;
    payload_hex: string;
    language?: string;
    sample_rate?: number;
    encoding?: number;
    text?: string;
    code?: number;
    message?: string;
}

function golden(): GoldenEntry[] {
    return JSON.parse(readFileSync(join(WIRE_DIR, "manifest.json"), "utf-8"));
}

// mulberry32: tiny deterministic PRNG so failures reproduce
function rng(seed: number): () => number {
    let s = seed >>> 0;
    return () => {
        s = (s + 0x6d2b79f5) >>> 0;
        let t = s;
        t = Math.imul(t ^ (t >>> 15), t | 1);
        t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

describe("golden frame interop", () => {
    it("parses every golden frame produced by the server component", () => {
        for (const entry of golden()) {
            const raw = readFileSync(join(WIRE_DIR, entry.file));
            const frames = new FrameDecoder().feed(raw);
            expect(frames).toHaveLength(1);
            const msg = frames[0]!;
            expect(msg.type).toBe(entry.type);
            expect(msg.sessionId).toBe(BigInt(entry.session_id));
            expect(msg.payload.toString("hex")).toBe(entry.payload_hex);

            if (entry.language !== undefined) {
                const start = parseStartPayload(msg.payload);
                expect(start.language).toBe(entry.language);
                expect(start.sampleRate).toBe(entry.sample_rate);
                expect(start.encoding).toBe(entry.encoding);
            }
            if (entry.text !== undefined) {
                expect(msg.payload.toString("utf-8")).toBe(entry.text);
            }
            if (entry.code !== undefined) {
                const err = parseErrorPayload(msg.payload);
                expect(err.code).toBe(entry.code);
                expect(err.message).toBe(entry.message);
            }
        }
    });

    it("re-encodes every golden frame byte-exactly", () => {
        for (const entry of golden()) {
            const raw = readFileSync(join(WIRE_DIR, entry.file));
            const msg = new FrameDecoder().feed(raw)[0]!;
            expect(encodeMessage(msg).equals(raw)).toBe(true);
        }
    });

    it("builds the golden START payload from its fields", () => {
        const th = golden().find((e) => e.file === "start_th.bin")!;
        const built = buildStartPayload(th.language!, th.sample_rate!, th.encoding!);
        expect(built.toString("hex")).toBe(th.payload_hex);
    });
});

describe("round trips", () => {
    it("random messages survive encode/decode under random chunking", () => {
        const rand = rng(20260816);
        const types = [MsgType.START, MsgType.AUDIO, MsgType.END, MsgType.PARTIAL, MsgType.FINAL, MsgType.ERROR];
        for (let trial = 0; trial < 300; trial++) {
            const type = types[Math.floor(rand() * types.length)]!;
            const session = (BigInt(Math.floor(rand() * 0xffffffff)) << 32n) | BigInt(Math.floor(rand() * 0xffffffff));
            const payload = Buffer.alloc(Math.floor(rand() * 200));
            for (let i = 0; i < payload.length; i++) {
                payload[i] = Math.floor(rand() * 256);
            }
            const encoded = encodeMessage(message(type, session, payload));

            const decoder = new FrameDecoder();
            const out = [];
            let pos = 0;
            while (pos < encoded.length) {
                const step = 1 + Math.floor(rand() * 7);
                out.push(...decoder.feed(encoded.subarray(pos, pos + step)));
                pos += step;
            }
            expect(out).toHaveLength(1);
            expect(out[0]!.type).toBe(type);
            expect(out[0]!.sessionId).toBe(session);
            expect(out[0]!.payload.equals(payload)).toBe(true);
            expect(decoder.pendingBytes).toBe(0);
        }
    });

    it("decodes back-to-back frames from one buffer", () => {
        const a = encodeMessage(message(MsgType.AUDIO, 1n, Buffer.from([1, 2])));
        const b = encodeMessage(message(MsgType.END, 1n));
        const frames = new FrameDecoder().feed(Buffer.concat([a, b]));
        expect(frames.map((m) => m.type)).toEqual([MsgType.AUDIO, MsgType.END]);
    });
});

describe("truncation and corruption", () => {
    const whole = encodeMessage(message(MsgType.PARTIAL, 7n, Buffer.from("ba", "utf-8")));

    it("needs more bytes for every strict prefix", () => {
        for (let cut = 0; cut < whole.length; cut++) {
            expect(tryDecode(whole.subarray(0, cut))).toBeNull();
        }
        const out = tryDecode(whole);
        expect(out).not.toBeNull();
        expect(out!.rest.length).toBe(0);
    });

    it("rejects bad magic as soon as four bytes are in", () => {
        const dec = new FrameDecoder();
        expect(dec.feed(Buffer.from("SEA"))).toEqual([]);
        expect(() => dec.feed(Buffer.from("X"))).toThrow(ProtocolError);
    });

    it("rejects a wrong version at the fifth byte", () => {
        expect(() => tryDecode(Buffer.concat([MAGIC, Buffer.from([9])]))).toThrow(/version/);
    });

    it("rejects an unknown message type at the sixth byte", () => {
        expect(() => tryDecode(Buffer.concat([MAGIC, Buffer.from([1, 0x4f])]))).toThrow(/type/);
    });

    it("rejects a declared payload over the cap straight from the header", () => {
        const header = Buffer.alloc(HEADER_LEN);
        MAGIC.copy(header, 0);
        header.writeUInt8(1, 4);
        header.writeUInt8(MsgType.AUDIO, 5);
        header.writeBigUInt64BE(1n, 8);
        header.writeUInt32BE(MAX_PAYLOAD + 1, 16);
        expect(() => tryDecode(header)).toThrow(/cap/);
    });

    it("waits for a cap-sized payload instead of rejecting it", () => {
        const header = Buffer.alloc(HEADER_LEN);
        MAGIC.copy(header, 0);
        header.writeUInt8(1, 4);
        header.writeUInt8(MsgType.AUDIO, 5);
        header.writeBigUInt64BE(1n, 8);
        header.writeUInt32BE(MAX_PAYLOAD, 16);
        expect(tryDecode(header)).toBeNull();
    });
});

describe("payload helpers", () => {
    it("start payload round-trips", () => {
        const built = buildStartPayload("id", 16000);
        expect(parseStartPayload(built)).toEqual({ language: "id", sampleRate: 16000, encoding: 1 });
    });

    it("start payload rejects bad shapes", () => {
        expect(() => buildStartPayload("", 16000)).toThrow(ProtocolError);
        expect(() => parseStartPayload(Buffer.alloc(0))).toThrow(/empty/);
        expect(() => parseStartPayload(Buffer.from([5, 0x74]))).toThrow(/length mismatch/);
        expect(() => parseStartPayload(Buffer.concat([Buffer.from([2, 0xff, 0xfe]), Buffer.alloc(5)]))).toThrow(/UTF-8/);
    });

    it("error payload round-trips and rejects short input", () => {
        const payload = Buffer.concat([Buffer.from([0, ErrorCode.OVERLOADED]), Buffer.from("too many sessions")]);
        expect(parseErrorPayload(payload)).toEqual({ code: ErrorCode.OVERLOADED, message: "too many sessions" });
        expect(() => parseErrorPayload(Buffer.from([1]))).toThrow(/shorter/);
    });

    it("encode rejects out-of-range session ids and oversized payloads", () => {
        expect(() => encodeMessage(message(MsgType.END, -1n))).toThrow(/u64/);
        expect(() => encodeMessage(message(MsgType.END, 1n << 64n))).toThrow(/u64/);
    });
});
