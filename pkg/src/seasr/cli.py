"""Command-line interface.

Tool subcommands (frontend/lex/lm/corpus/decode/score) run in-process
on local files. `serve` hosts the streaming TCP service plus the HTTP
control plane; `recognize` is a thin HTTP client for a running server,
so batch recognition goes through the same service path users hit.
"""

from __future__ import annotations

import argparse
import base64
import json
import logging
import sys
import urllib.error
import urllib.request
from pathlib import Path


def _read_lines(path) -> list[str]:
    text = Path(path).read_text(encoding="utf-8")
    return [line for line in text.splitlines() if line.strip()]


# -- frontend -------------------------------------------------------------

def _cmd_frontend_extract(args) -> int:
    from .audio import read_wav
    from .frontend import extract_features, write_feat

    audio = read_wav(args.wav)
    feats = extract_features(audio)
    write_feat(feats, args.out)
    print(f"{args.out}: {len(feats)} frames x {feats.width}")
    return 0


# -- lexicon --------------------------------------------------------------

def _tone_set(spec: str):
    from .lexicon import ToneSet

    if spec == "thai":
        return ToneSet.thai()
    return ToneSet(tuple(t.strip() for t in spec.split(",") if t.strip()))


def _cmd_lex_expand(args) -> int:
    from .lexicon import expand_tonal, load_inventory_file, serialize_inventory

    inv = load_inventory_file(args.inventory)
    expanded = expand_tonal(inv, _tone_set(args.tones))
    Path(args.out).write_text(serialize_inventory(expanded), encoding="utf-8")
    print(f"{args.out}: {len(inv)} units -> {len(expanded)}")
    return 0


def _cmd_lex_validate(args) -> int:
    from .lexicon import load_inventory_file, load_lexicon_file, validate_lexicon

    lex = load_lexicon_file(args.lexicon)
    inv = load_inventory_file(args.inventory)
    violations = validate_lexicon(lex, inv)
    for v in violations:
        print(f"{v.kind}\t{v.word}\t{v.detail}")
    print(f"{len(lex)} words checked, {len(violations)} violations", file=sys.stderr)
    return 1 if violations else 0


def _cmd_lex_g2p(args) -> int:
    from .lexicon import G2PError, apply_g2p, load_rules_file

    rules = load_rules_file(args.rules)
    words = list(args.words)
    if args.words_file:
        words.extend(_read_lines(args.words_file))
    if not words:
        print("no words given", file=sys.stderr)
        return 2
    status = 0
    for word in words:
        try:
            phonemes = apply_g2p(word, rules)
        except G2PError as e:
            print(f"# {e}", file=sys.stderr)
            status = 1
            continue
        print(f"{word}\t{' '.join(phonemes)}")
    return status


# -- language model --------------------------------------------------------

def _cmd_lm_train(args) -> int:
    from .lm import train_ngram, write_arpa_file

    corpus = _read_lines(args.infile)
    model = train_ngram(corpus, order=args.order, smoothing=args.smoothing,
                        min_count=args.min_count)
    write_arpa_file(model, args.out)
    print(f"{args.out}: order {model.order}, vocab {len(model.vocab)}")
    return 0


def _cmd_lm_interp(args) -> int:
    from .lm import interpolate, read_arpa_file, write_arpa_file

    merged = interpolate(read_arpa_file(args.a), read_arpa_file(args.b), args.lam)
    write_arpa_file(merged, args.out)
    print(f"{args.out}: lambda {args.lam}")
    return 0


def _cmd_lm_ppl(args) -> int:
    from .lm import read_arpa_file

    model = read_arpa_file(args.model)
    sentences = _read_lines(args.infile)
    print(f"{model.perplexity(sentences):.6f}")
    return 0


# -- corpus -----------------------------------------------------------------

def _cmd_corpus_freq(args) -> int:
    from .corpus import build_frequency_list

    ranked = build_frequency_list(_read_lines(args.infile), args.top)
    out = "\n".join(f"{w}\t{c}" for w, c in ranked)
    if args.out:
        Path(args.out).write_text(out + "\n", encoding="utf-8")
    else:
        print(out)
    return 0


def _load_frequency_file(path):
    from .corpus import FrequencyList

    lines = _read_lines(path)
    if all("\t" in line for line in lines):
        ranked = [(w, int(c)) for w, _, c in (ln.partition("\t") for ln in lines)]
    else:
        # bare word list: synthesize counts preserving the given order
        ranked = [(w, len(lines) - i) for i, w in enumerate(lines)]
    return FrequencyList(tuple(ranked))


def _cmd_corpus_queries(args) -> int:
    from .corpus import generate_pair_queries, generate_single_queries

    top = _load_frequency_file(args.top)
    if args.singles:
        vocab = _read_lines(args.vocab)
        queries = generate_single_queries(vocab, top)
    else:
        queries = generate_pair_queries(top, args.pairs, args.seed)
    for q in queries.as_strings():
        print(q)
    return 0


def _cmd_corpus_filter_urls(args) -> int:
    from .corpus import filter_urls

    result = filter_urls(_read_lines(args.infile), domain_suffix=args.domain)
    for url in result.urls:
        print(url)
    print(f"kept {len(result.urls)}/{result.n_input} "
          f"(dup {result.n_duplicate}, ext {result.n_blocked_extension}, "
          f"domain {result.n_wrong_domain}, bad {result.n_unparseable})",
          file=sys.stderr)
    return 0


def _cmd_corpus_extract(args) -> int:
    from .corpus import extract_main_text

    text = extract_main_text(Path(args.infile).read_bytes())
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def _cmd_corpus_validate(args) -> int:
    from .corpus import ManifestRules, load_manifest, validate_manifest

    manifest = load_manifest(args.speakers, args.utterances)
    violations = validate_manifest(manifest, ManifestRules())
    for v in violations:
        print(f"{v.kind}\t{v.subject}\t{v.detail}")
    print(f"{len(manifest.speakers)} speakers, {len(manifest.utterances)} "
          f"utterances, {len(violations)} violations", file=sys.stderr)
    return 1 if violations else 0


# -- decode / score -----------------------------------------------------------

def _cmd_decode(args) -> int:
    from .decoder import (BeamConfig, SearchFailure, load_graph_recipe,
                          load_scorer, viterbi_decode)
    from .frontend import read_feat

    graph = load_graph_recipe(args.graph)
    scorer = load_scorer(args.scorer)
    cfg = BeamConfig(beam=args.beam, max_active=args.max_active,
                     lm_scale=args.lm_scale,
                     insertion_penalty=args.insertion_penalty)
    feats = read_feat(args.feat)
    try:
        hyp = viterbi_decode(feats, graph, scorer, cfg)
    except SearchFailure as e:
        print(f"search failed: {e}", file=sys.stderr)
        return 1
    print(hyp.text)
    if args.word_frames:
        for word, (start, end) in zip(hyp.words, hyp.boundaries):
            print(f"{word}\t{start}\t{end}", file=sys.stderr)
    return 0


def _cmd_score_wer(args) -> int:
    from .scoring import corpus_wer, round_display, wer

    refs = Path(args.ref).read_text(encoding="utf-8").splitlines()
    hyps = Path(args.hyp).read_text(encoding="utf-8").splitlines()
    if len(refs) != len(hyps):
        print(f"line count mismatch: {len(refs)} refs vs {len(hyps)} hyps",
              file=sys.stderr)
        return 2
    pairs = [(r.split(), h.split()) for r, h in zip(refs, hyps)]
    for i, (ref, hyp) in enumerate(pairs):
        line = wer(ref, hyp)
        print(f"{i}\t{line.substitutions}\t{line.deletions}\t{line.insertions}"
              f"\t{line.ref_token_count}\t{round_display(line.wer)}")
    total = corpus_wer(pairs)
    print(f"total\t{total.substitutions}\t{total.deletions}\t{total.insertions}"
          f"\t{total.ref_token_count}\t{round_display(total.wer)}")
    return 0


# -- serve / recognize ---------------------------------------------------------

def _cmd_serve(args) -> int:
    import asyncio

    import uvicorn

    from .server import AsrServer, DecoderPool, load_server_config
    from .service import create_app

    logging.basicConfig(level=logging.INFO,
                        format="%(asctime)s %(name)s %(message)s")
    cfg = load_server_config(args.config)
    pool = DecoderPool.from_config(cfg)

    async def main():
        tcp = AsrServer(cfg, pool)
        await tcp.start(args.host, args.port)
        tasks = [tcp.serve_forever()]
        if not args.no_http:
            app = create_app(cfg, pool)
            http = uvicorn.Server(uvicorn.Config(
                app, host=args.host, port=args.http_port, log_level="warning"))
            tasks.append(http.serve())
        await asyncio.gather(*tasks)

    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        pass
    return 0


def _cmd_recognize(args) -> int:
    wav_b64 = base64.b64encode(Path(args.wav).read_bytes()).decode("ascii")
    body = json.dumps({"language": args.language, "audio_base64": wav_b64})
    url = f"http://{args.host}:{args.http_port}/v1/recognize"
    request = urllib.request.Request(
        url, data=body.encode("utf-8"),
        headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(request, timeout=args.timeout) as response:
            payload = json.load(response)
    except urllib.error.HTTPError as e:
        print(f"server error {e.code}: {e.read().decode('utf-8', 'replace')}",
              file=sys.stderr)
        return 1
    except urllib.error.URLError as e:
        print(f"cannot reach {url}: {e.reason}", file=sys.stderr)
        return 1
    print(payload["transcript"])
    if args.word_frames:
        for span in payload["words"]:
            print(f"{span['word']}\t{span['start_frame']}\t{span['end_frame']}",
                  file=sys.stderr)
    return 0


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seasr", description="Southeast Asian speech recognition toolkit")
    top = parser.add_subparsers(dest="group", required=True)

    frontend = top.add_parser("frontend", help="feature extraction").add_subparsers(
        dest="command", required=True)
    p = frontend.add_parser("extract", help="WAV to binary feature matrix")
    p.add_argument("--wav", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_frontend_extract)

    lex = top.add_parser("lex", help="inventories and lexicons").add_subparsers(
        dest="command", required=True)
    p = lex.add_parser("expand", help="tone-expand an inventory")
    p.add_argument("--inventory", required=True)
    p.add_argument("--tones", default="thai",
                   help="'thai' or comma-separated tone labels")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_lex_expand)
    p = lex.add_parser("validate", help="check a lexicon against an inventory")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--inventory", required=True)
    p.set_defaults(func=_cmd_lex_validate)
    p = lex.add_parser("g2p", help="apply grapheme-to-phoneme rules")
    p.add_argument("--rules", required=True)
    p.add_argument("--words-file")
    p.add_argument("words", nargs="*")
    p.set_defaults(func=_cmd_lex_g2p)

    lm = top.add_parser("lm", help="n-gram language models").add_subparsers(
        dest="command", required=True)
    p = lm.add_parser("train", help="train and write an ARPA model")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--smoothing", choices=["witten-bell", "mle"],
                   default="witten-bell")
    p.add_argument("--min-count", type=int, default=1)
    p.set_defaults(func=_cmd_lm_train)
    p = lm.add_parser("interp", help="interpolate two ARPA models")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="weight on model A in [0, 1]")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_lm_interp)
    p = lm.add_parser("ppl", help="perplexity of a text file")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_lm_ppl)

    corpus = top.add_parser("corpus", help="web-corpus pipeline").add_subparsers(
        dest="command", required=True)
    p = corpus.add_parser("freq", help="top-k word frequency list")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--top", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_corpus_freq)
    p = corpus.add_parser("queries", help="search queries from a frequency list")
    p.add_argument("--top", required=True, help="frequency list file")
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--singles", action="store_true",
                   help="single-word queries for vocab words outside the top list")
    p.add_argument("--vocab", help="full vocabulary file (with --singles)")
    p.set_defaults(func=_cmd_corpus_queries)
    p = corpus.add_parser("filter-urls", help="dedup and filter a URL list")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--domain", help="required host suffix, e.g. 'id'")
    p.set_defaults(func=_cmd_corpus_filter_urls)
    p = corpus.add_parser("extract", help="main text from an HTML file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_corpus_extract)
    p = corpus.add_parser("validate", help="check a recording manifest")
    p.add_argument("--speakers", required=True)
    p.add_argument("--utterances", required=True)
    p.set_defaults(func=_cmd_corpus_validate)

    p = top.add_parser("decode", help="batch-decode a feature file")
    p.add_argument("--graph", required=True, help="graph recipe file")
    p.add_argument("--scorer", required=True)
    p.add_argument("--feat", required=True)
    p.add_argument("--beam", type=float, default=float("inf"))
    p.add_argument("--max-active", type=int, default=None)
    p.add_argument("--lm-scale", type=float, default=1.0)
    p.add_argument("--insertion-penalty", type=float, default=0.0)
    p.add_argument("--word-frames", action="store_true",
                   help="also print per-word frame spans to stderr")
    p.set_defaults(func=_cmd_decode)

    score = top.add_parser("score", help="evaluation metrics").add_subparsers(
        dest="command", required=True)
    p = score.add_parser("wer", help="word error rate of line-aligned files")
    p.add_argument("--ref", required=True)
    p.add_argument("--hyp", required=True)
    p.set_defaults(func=_cmd_score_wer)

    p = top.add_parser("serve", help="run the streaming TCP service")
    p.add_argument("--config", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help="TCP port (default from config)")
    p.add_argument("--http-port", type=int, default=8723,
                   help="control-plane HTTP port")
    p.add_argument("--no-http", action="store_true",
                   help="TCP protocol only, no HTTP control plane")
    p.set_defaults(func=_cmd_serve)

    p = top.add_parser("recognize", help="recognize a WAV via a running server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--http-port", type=int, default=8723)
    p.add_argument("--language", required=True)
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--word-frames", action="store_true")
    p.add_argument("wav")
    p.set_defaults(func=_cmd_recognize)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
