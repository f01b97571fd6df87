/**
 * Minimal WAV reader for the formats the recognition service accepts:
 * mono, 16-bit, uncompressed PCM. Anything else is rejected rather
 * than resampled, so a bad input fails here and not server-side.
 */

import { readFileSync } from "node:fs";

export class WavError extends Error {}

export interface WavAudio {
    readonly sampleRateHz: number;
    /** raw PCM16LE bytes, 2 per sample */
    readonly pcm: Buffer;
    readonly numSamples: number;
}

export function readWav(source: string | Buffer): WavAudio {
    const buf = typeof source === "string" ? readFileSync(source) : source;
    if (buf.length < 12 || buf.toString("ascii", 0, 4) !== "RIFF" || buf.toString("ascii", 8, 12) !== "WAVE") {
        throw new WavError("not a RIFF/WAVE file");
    }

    let fmt: { format: number; channels: number; rate: number; bits: number } | null = null;
    let data: Buffer | null = null;
    let pos = 12;
    while (pos + 8 <= buf.length) {
        const id = buf.toString("ascii", pos, pos + 4);
        const size = buf.readUInt32LE(pos + 4);
        const body = buf.subarray(pos + 8, pos + 8 + size);
        if (body.length < size) {
            throw new WavError(`truncated ${JSON.stringify(id)} chunk`);
        }
        if (id === "fmt ") {
            if (size < 16) {
                throw new WavError("fmt chunk too short");
            }
            fmt = {
                format: body.readUInt16LE(0),
                channels: body.readUInt16LE(2),
                rate: body.readUInt32LE(4),
                bits: body.readUInt16LE(14),
            };
        } else if (id === "data") {
            data = Buffer.from(body);
        }
        pos += 8 + size + (size % 2); // chunks are word-aligned
    }

    if (fmt === null || data === null) {
        throw new WavError("missing fmt or data chunk");
    }
    if (fmt.format !== 1) {
        throw new WavError(`unsupported compression format ${fmt.format}`);
    }
    if (fmt.channels !== 1) {
        throw new WavError(`expected mono audio, got ${fmt.channels} channels`);
    }
    if (fmt.bits !== 16) {
        throw new WavError(`expected 16-bit samples, got ${fmt.bits}-bit`);
    }
    if (data.length % 2 !== 0) {
        throw new WavError("PCM16 byte count must be even");
    }
    return { sampleRateHz: fmt.rate, pcm: data, numSamples: data.length / 2 };
}
