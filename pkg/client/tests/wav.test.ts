import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { WavError, readWav } from "../src/wav.js";

const FIXTURE = join(__dirname, "..", "..", "fixtures", "toy", "fixture.wav");

/** canonical 44-byte mono PCM16 WAV around the given payload */
export function makeWav(pcm: Buffer, rate = 16000): Buffer {
    const header = Buffer.alloc(44);
    header.write("RIFF", 0, "ascii");
    header.writeUInt32LE(36 + pcm.length, 4);
    header.write("WAVE", 8, "ascii");
    header.write("fmt ", 12, "ascii");
    header.writeUInt32LE(16, 16);
    header.writeUInt16LE(1, 20); // PCM
    header.writeUInt16LE(1, 22); // mono
    header.writeUInt32LE(rate, 24);
    header.writeUInt32LE(rate * 2, 28);
    header.writeUInt16LE(2, 32);
    header.writeUInt16LE(16, 34);
    header.write("data", 36, "ascii");
    header.writeUInt32LE(pcm.length, 40);
    return Buffer.concat([header, pcm]);
}

describe("readWav", () => {
    it("reads the shared one-second fixture", () => {
        const wav = readWav(FIXTURE);
        expect(wav.sampleRateHz).toBe(16000);
        expect(wav.numSamples).toBe(16000);
        expect(wav.pcm.length).toBe(32000);
    });

    it("round-trips a synthetic file", () => {
        const pcm = Buffer.from([0, 0, 1, 0, 255, 127, 0, 128]);
        const wav = readWav(makeWav(pcm, 16000));
        expect(wav.pcm.equals(pcm)).toBe(true);
        expect(wav.numSamples).toBe(4);
    });

    it("accepts a zero-sample file", () => {
        const wav = readWav(makeWav(Buffer.alloc(0)));
        expect(wav.numSamples).toBe(0);
    });

    it("rejects non-WAV bytes", () => {
        expect(() => readWav(Buffer.from("RIFF but not really a wav"))).toThrow(WavError);
    });

    it("rejects stereo and non-PCM input", () => {
        const stereo = makeWav(Buffer.alloc(4));
        stereo.writeUInt16LE(2, 22);
        expect(() => readWav(stereo)).toThrow(/mono/);

        const alaw = makeWav(Buffer.alloc(4));
        alaw.writeUInt16LE(6, 20);
        expect(() => readWav(alaw)).toThrow(/format/);
    });

    it("rejects a truncated data chunk", () => {
        const wav = makeWav(Buffer.alloc(8));
        expect(() => readWav(wav.subarray(0, wav.length - 3))).toThrow(/truncated/);
    });
});
