"""Regenerate the checked-in test fixtures.

Run from the repository root:

    python3 tools/make_fixtures.py

Everything is deterministic; running twice produces byte-identical
output. The wire frames and the MFCC golden are built from first
principles here (manual struct packing, a plain-loop DFT pipeline) so
they stay independent of the package under test. The toy decoding
bundle does go through the package writers: it is a consistency
fixture, not an oracle.
"""

import cmath
import json
import math
import random
import struct
import wave
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"


# -- audio helpers ------------------------------------------------------

def write_wav(path: Path, samples_int16, rate=16000):
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(rate)
        w.writeframes(struct.pack(f"<{len(samples_int16)}h", *samples_int16))


def read_wav_float(path: Path):
    with wave.open(str(path), "rb") as w:
        raw = w.readframes(w.getnframes())
    ints = struct.unpack(f"<{len(raw) // 2}h", raw)
    return [v / 32768.0 for v in ints]


def quantize(values):
    out = []
    for v in values:
        q = int(round(max(-1.0, min(1.0, v)) * 32767))
        out.append(q)
    return out


# -- toy decoding bundle ------------------------------------------------

def make_toy():
    from seasr.decoder import TableScorer, write_table_scorer
    from seasr.lexicon import load_inventory_file
    from seasr.lm import train_ngram, write_arpa_file

    toy = FIX / "toy"
    toy.mkdir(parents=True, exist_ok=True)

    (toy / "toy.inv").write_text(
        "# toy inventory\n"
        "a\tvowel\t0\n"
        "b\tplosive\t0\n"
        "d\tplosive\t0\n",
        encoding="utf-8")
    (toy / "toy.lex").write_text("ba\tb a\nda\td a\n", encoding="utf-8")

    lm = train_ngram(["ba da", "da ba", "ba da"], order=2)
    write_arpa_file(lm, toy / "toy.arpa")

    inv = load_inventory_file(toy / "toy.inv", "toy")
    segments = [("b", 0, 24), ("a", 24, 49), ("d", 49, 74), ("a", 74, 98)]
    table = {}
    for phoneme, lo, hi in segments:
        base = inv.symbol_index(phoneme) * 3
        for frame in range(lo, hi):
            for pos in range(3):
                table[(base + pos, frame)] = 0.0
    write_table_scorer(TableScorer(table, default=-8.0), toy / "toy.table")

    (toy / "toy.graph").write_text(
        "[graph]\n"
        "language = toy\n"
        "inventory = toy.inv\n"
        "lexicon = toy.lex\n"
        "arpa = toy.arpa\n",
        encoding="utf-8")
    (toy / "server.conf").write_text(
        "[server]\n"
        "port = 8722\n"
        "partial_interval_frames = 50\n"
        "idle_timeout_s = 30.0\n"
        "\n"
        "[language:toy]\n"
        "graph = toy.graph\n"
        "scorer = toy.table\n"
        "max_sessions = 64\n",
        encoding="utf-8")

    # 1 s of 440 Hz; featurizes to 98 frames. The transcript comes from
    # the frame-keyed table, so the tone of the audio is irrelevant.
    samples = [0.3 * math.sin(2 * math.pi * 440 * n / 16000) for n in range(16000)]
    write_wav(toy / "fixture.wav", quantize(samples))
    print(f"toy bundle -> {toy}")


# -- wire protocol goldens ----------------------------------------------

def _frame(msg_type: int, session_id: int, payload: bytes) -> bytes:
    return struct.pack(">4sBBHQI", b"SEA1", 0x01, msg_type, 0,
                       session_id, len(payload)) + payload


def make_wire():
    wire = FIX / "wire"
    wire.mkdir(parents=True, exist_ok=True)

    start_th = bytes([2]) + b"th" + struct.pack(">IB", 16000, 0x01)
    start_id = bytes([2]) + b"id" + struct.pack(">IB", 16000, 0x01)
    audio = struct.pack("<32h", *range(-16, 16))
    err = struct.pack(">H", 0x0001) + "language 'xx' is not loaded".encode()

    frames = [
        ("start_th.bin", 0x01, 1, start_th,
         {"language": "th", "sample_rate": 16000, "encoding": 1}),
        ("start_id.bin", 0x01, 2, start_id,
         {"language": "id", "sample_rate": 16000, "encoding": 1}),
        ("audio.bin", 0x02, 1, audio, {}),
        ("end.bin", 0x03, 1, b"", {}),
        ("partial.bin", 0x04, 7, "ba".encode(), {"text": "ba"}),
        ("final.bin", 0x05, 7, "ba da".encode(), {"text": "ba da"}),
        ("error.bin", 0x06, 9, err,
         {"code": 1, "message": "language 'xx' is not loaded"}),
    ]
    manifest = []
    for name, msg_type, session_id, payload, fields in frames:
        (wire / name).write_bytes(_frame(msg_type, session_id, payload))
        entry = {"file": name, "type": msg_type, "session_id": session_id,
                 "payload_hex": payload.hex()}
        entry.update(fields)
        manifest.append(entry)
    (wire / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print(f"wire goldens -> {wire}")


# -- HTML extraction golden ----------------------------------------------

_PAGE = """<html>
<head>
<title>Berita Utama</title>
<style>body { color: red } .x { display: none }</style>
<script type="text/javascript">var x = "<div>tidak tampil</div>";</script>
</head>
<body>
<div>Harga beras   naik
lagi</div>
<p>Pemerintah &amp; pedagang bertemu <b>hari ini</b>.</p>
<ul>
<li>satu</li>
<li>dua</li>
</ul>
<!-- komentar dibuang -->
<table><tr><td>baris</td><td>kolom</td></tr></table>
<p>   </p>
<img src="x.jpg"/>
<div>akhir &#8220;kutipan&#8221;</div>
</body>
</html>
"""

_GOLDEN_TEXT = "\n".join([
    "Berita Utama",
    "Harga beras naik lagi",
    "Pemerintah & pedagang bertemu hari ini.",
    "satu",
    "dua",
    "baris",
    "kolom",
    "akhir “kutipan”",
])


def make_html():
    html = FIX / "html"
    html.mkdir(parents=True, exist_ok=True)
    (html / "page.html").write_bytes(_PAGE.encode("utf-8"))
    (html / "golden.txt").write_text(_GOLDEN_TEXT + "\n", encoding="utf-8")
    print(f"html golden -> {html}")


# -- corpus manifest fixture ---------------------------------------------

def make_manifest():
    man = FIX / "manifest"
    man.mkdir(parents=True, exist_ok=True)
    (man / "speakers.tsv").write_text(
        "# id gender age region native\n"
        "spk01\tm\t34\tjakarta\t1\n"
        "spk02\tf\t28\tbandung\t1\n"
        "spk03\tm\t41\tsurabaya\t1\n"
        "spk04\tf\t23\tmedan\t1\n",
        encoding="utf-8")
    long_sentence = " ".join(f"kata{i}" for i in range(25))
    repeated = "selamat pagi semua"
    lines = [
        f"spk01\t3.2\t{long_sentence}",
        f"spk01\t2.1\t{repeated}",
        f"spk02\t2.0\t{repeated}",
        f"spk03\t2.4\t{repeated}",
        f"spk04\t1.9\t{repeated}",
        "spk02\t4.0\tharga beras naik lagi",
        "spk03\t3.5\tpemerintah dan pedagang bertemu hari ini",
    ]
    (man / "utterances.tsv").write_text(
        "# speaker duration_s text\n" + "\n".join(lines) + "\n",
        encoding="utf-8")
    print(f"manifest fixture -> {man}")


# -- MFCC golden via a plain-loop DFT pipeline ----------------------------

RATE = 16000
FRAME_LEN = 400
FRAME_SHIFT = 160
NFFT = 512
N_FILTERS = 23
N_CEPSTRA = 13
PREEMPH = 0.97
LOG_FLOOR = 1e-10


def _naive_mel_bank():
    def to_mel(hz):
        return 2595.0 * math.log10(1.0 + hz / 700.0)

    def to_hz(mel):
        return 700.0 * (10.0 ** (mel / 2595.0) - 1.0)

    low, high = to_mel(0.0), to_mel(RATE / 2.0)
    points = [low + (high - low) * i / (N_FILTERS + 1) for i in range(N_FILTERS + 2)]
    bins = [math.floor((NFFT + 1) * to_hz(m) / RATE) for m in points]
    bank = [[0.0] * (NFFT // 2 + 1) for _ in range(N_FILTERS)]
    for j in range(N_FILTERS):
        left, center, right = bins[j], bins[j + 1], bins[j + 2]
        for i in range(left, center):
            bank[j][i] = (i - left) / (center - left)
        for i in range(center, right):
            bank[j][i] = (right - i) / (right - center)
    return bank


def _naive_mfcc(signal):
    pre = [signal[0]] + [signal[n] - PREEMPH * signal[n - 1]
                         for n in range(1, len(signal))]
    window = [0.54 - 0.46 * math.cos(2 * math.pi * n / (FRAME_LEN - 1))
              for n in range(FRAME_LEN)]
    bank = _naive_mel_bank()
    n_frames = 1 + (len(signal) - FRAME_LEN) // FRAME_SHIFT

    rows = []
    for t in range(n_frames):
        start = t * FRAME_SHIFT
        frame = [pre[start + n] * window[n] for n in range(FRAME_LEN)]
        power = []
        for k in range(NFFT // 2 + 1):
            acc = 0j
            for n, value in enumerate(frame):
                acc += value * cmath.exp(-2j * math.pi * k * n / NFFT)
            power.append((acc.real ** 2 + acc.imag ** 2) / NFFT)
        logs = []
        for j in range(N_FILTERS):
            energy = sum(bank[j][i] * power[i] for i in range(NFFT // 2 + 1))
            logs.append(math.log(max(energy, LOG_FLOOR)))
        row = []
        for k in range(N_CEPSTRA):
            scale = math.sqrt(1.0 / N_FILTERS) if k == 0 else math.sqrt(2.0 / N_FILTERS)
            row.append(scale * sum(
                logs[j] * math.cos(math.pi * k * (2 * j + 1) / (2 * N_FILTERS))
                for j in range(N_FILTERS)))
        rows.append(row)
    return rows


def make_mfcc_golden():
    mfcc = FIX / "mfcc"
    mfcc.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20260816)
    samples = []
    for n in range(1600):
        value = (0.4 * math.sin(2 * math.pi * 300 * n / RATE)
                 + 0.2 * math.sin(2 * math.pi * 1700 * n / RATE + 0.5)
                 + rng.uniform(-0.05, 0.05))
        samples.append(value)
    write_wav(mfcc / "signal.wav", quantize(samples))

    loaded = read_wav_float(mfcc / "signal.wav")
    rows = _naive_mfcc(loaded)
    with open(mfcc / "golden.txt", "w", encoding="utf-8") as f:
        f.write(f"# naive-DFT MFCC golden: {len(rows)} frames x {N_CEPSTRA}\n")
        for row in rows:
            f.write(" ".join(f"{v:.17e}" for v in row) + "\n")
    print(f"mfcc golden -> {mfcc} ({len(rows)} frames)")


if __name__ == "__main__":
    make_toy()
    make_wire()
    make_html()
    make_manifest()
    make_mfcc_golden()
