/**
 * Client-side framing for the seasr wire protocol.
 *
 * Frame layout (all integers big-endian):
 *
 *     magic "SEA1" | version 0x01 | msg_type u8 | reserved u16 |
 *     session_id u64 | payload_len u32 | payload
 *
 * Byte-compatible with the server's codec; the shared golden frames
 * under fixtures/wire/ pin that down. Truncated input is not an
 * error: decoding waits for more bytes, so a TCP reassembly buffer
 * can be fed as chunks arrive.
 */

export const MAGIC = Buffer.from("SEA1", "ascii");
export const VERSION = 0x01;
export const HEADER_LEN = 20;
export const MAX_PAYLOAD = 16 * 1024 * 1024;
export const ENCODING_PCM16LE = 0x01;

export enum MsgType {
    START = 0x01,
    AUDIO = 0x02,
    END = 0x03,
    PARTIAL = 0x04,
    FINAL = 0x05,
    ERROR = 0x06,
}

export enum ErrorCode {
    UNKNOWN_LANGUAGE = 0x0001,
    BAD_STATE = 0x0002,
    MALFORMED_PAYLOAD = 0x0003,
    OVERLOADED = 0x0004,
    SESSION_TIMEOUT = 0x0005,
}

export class ProtocolError extends Error {}

export interface Message {
    readonly type: MsgType;
    readonly sessionId: bigint;
    readonly payload: Buffer;
}

export function message(type: MsgType, sessionId: bigint, payload: Buffer = Buffer.alloc(0)): Message {
    return { type, sessionId, payload };
}

const U64_MAX = (1n << 64n) - 1n;

export function encodeMessage(msg: Message): Buffer {
    if (!(msg.type in MsgType)) {
        throw new ProtocolError(`unknown message type ${msg.type}`);
    }
    if (msg.sessionId < 0n || msg.sessionId > U64_MAX) {
        throw new ProtocolError("session id out of u64 range");
    }
    if (msg.payload.length > MAX_PAYLOAD) {
        throw new ProtocolError(`payload of ${msg.payload.length} bytes exceeds cap`);
    }
    const header = Buffer.alloc(HEADER_LEN);
    MAGIC.copy(header, 0);
    header.writeUInt8(VERSION, 4);
    header.writeUInt8(msg.type, 5);
    header.writeUInt16BE(0, 6);
    header.writeBigUInt64BE(msg.sessionId, 8);
    header.writeUInt32BE(msg.payload.length, 16);
    return Buffer.concat([header, msg.payload]);
}

/**
 * Decode one frame from the head of buf. Returns null when more bytes
 * are needed; throws ProtocolError as soon as the available prefix is
 * provably invalid. Reserved bytes are ignored on read.
 */
export function tryDecode(buf: Buffer): { msg: Message; rest: Buffer } | null {
    if (buf.length >= 4 && !buf.subarray(0, 4).equals(MAGIC)) {
        throw new ProtocolError(`bad magic ${JSON.stringify(buf.subarray(0, 4).toString("latin1"))}`);
    }
    if (buf.length >= 5 && buf[4] !== VERSION) {
        throw new ProtocolError(`unknown protocol version ${buf[4]}`);
    }
    if (buf.length >= 6 && !(buf[5]! in MsgType)) {
        throw new ProtocolError(`unknown message type 0x${buf[5]!.toString(16).padStart(2, "0")}`);
    }
    if (buf.length < HEADER_LEN) {
        return null;
    }
    const type = buf.readUInt8(5) as MsgType;
    const sessionId = buf.readBigUInt64BE(8);
    const payloadLen = buf.readUInt32BE(16);
    if (payloadLen > MAX_PAYLOAD) {
        throw new ProtocolError(`declared payload of ${payloadLen} bytes exceeds cap`);
    }
    const end = HEADER_LEN + payloadLen;
    if (buf.length < end) {
        return null;
    }
    return {
        msg: { type, sessionId, payload: Buffer.from(buf.subarray(HEADER_LEN, end)) },
        rest: Buffer.from(buf.subarray(end)),
    };
}

/** Incremental reassembly of a frame stream off a socket. */
export class FrameDecoder {
    private buf: Buffer = Buffer.alloc(0);

    feed(data: Buffer): Message[] {
        this.buf = Buffer.concat([this.buf, data]);
        const out: Message[] = [];
        for (;;) {
            const decoded = tryDecode(this.buf);
            if (decoded === null) {
                return out;
            }
            out.push(decoded.msg);
            this.buf = decoded.rest;
        }
    }

    get pendingBytes(): number {
        return this.buf.length;
    }
}

const strictUtf8 = new TextDecoder("utf-8", { fatal: true });

export function buildStartPayload(language: string, sampleRate: number, encoding = ENCODING_PCM16LE): Buffer {
    const lang = Buffer.from(language, "utf-8");
    if (lang.length === 0 || lang.length > 255) {
        throw new ProtocolError("language code must be 1..255 UTF-8 bytes");
    }
    const tail = Buffer.alloc(5);
    tail.writeUInt32BE(sampleRate, 0);
    tail.writeUInt8(encoding, 4);
    return Buffer.concat([Buffer.from([lang.length]), lang, tail]);
}

export function parseStartPayload(payload: Buffer): { language: string; sampleRate: number; encoding: number } {
    if (payload.length < 1) {
        throw new ProtocolError("empty START payload");
    }
    const n = payload[0]!;
    if (n === 0 || payload.length !== 1 + n + 5) {
        throw new ProtocolError("START payload length mismatch");
    }
    let language: string;
    try {
        language = strictUtf8.decode(payload.subarray(1, 1 + n));
    } catch {
        throw new ProtocolError("language code is not valid UTF-8");
    }
    return {
        language,
        sampleRate: payload.readUInt32BE(1 + n),
        encoding: payload.readUInt8(1 + n + 4),
    };
}

export function buildErrorPayload(code: number, text: string): Buffer {
    const head = Buffer.alloc(2);
    head.writeUInt16BE(code, 0);
    return Buffer.concat([head, Buffer.from(text, "utf-8")]);
}

export function parseErrorPayload(payload: Buffer): { code: number; message: string } {
    if (payload.length < 2) {
        throw new ProtocolError("ERROR payload shorter than the code field");
    }
    return { code: payload.readUInt16BE(0), message: payload.subarray(2).toString("utf-8") };
}
