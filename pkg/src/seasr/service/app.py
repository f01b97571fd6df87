"""HTTP control plane over the recognition core.

Offline endpoints only: batch recognition of an uploaded WAV, WER
scoring, and perplexity under a loaded language's LM. Streaming goes
through the TCP protocol, not HTTP. The app shares the DecoderPool
with the TCP server, so session caps and counts are global.
"""

from __future__ import annotations

import base64
import binascii

from fastapi import FastAPI, HTTPException

from ..audio import AudioError, read_wav
from ..decoder import SearchFailure, viterbi_decode
from ..frontend import FrontendError, extract_features
from ..lm import LMError
from ..protocol import ErrorCode
from ..scoring import EvalResult, corpus_wer, wer
from ..server.config import ServerConfig
from ..server.pool import DecoderPool, PoolError
from .schemas import (
    HealthResponse,
    LanguageInfo,
    LanguagesResponse,
    PerplexityRequest,
    PerplexityResponse,
    RecognizeRequest,
    RecognizeResponse,
    WerCounts,
    WerPair,
    WerRequest,
    WerResponse,
    WordSpan,
)

_POOL_STATUS = {
    ErrorCode.UNKNOWN_LANGUAGE: 404,
    ErrorCode.OVERLOADED: 503,
}


def _counts(result: EvalResult) -> WerCounts:
    return WerCounts(
        substitutions=result.substitutions,
        deletions=result.deletions,
        insertions=result.insertions,
        ref_token_count=result.ref_token_count,
        wer=result.wer,
    )


def create_app(config: ServerConfig, pool: DecoderPool | None = None) -> FastAPI:
    pool = pool if pool is not None else DecoderPool.from_config(config)
    app = FastAPI(title="seasr control plane", version="1.0")
    app.state.pool = pool

    @app.get("/healthz", response_model=HealthResponse)
    def healthz():
        return HealthResponse()

    @app.get("/v1/languages", response_model=LanguagesResponse)
    def languages():
        infos = []
        for code in pool.languages:
            bundle = pool.bundle(code)
            infos.append(LanguageInfo(
                code=code,
                active_sessions=pool.active_count(code),
                max_sessions=bundle.max_sessions,
            ))
        return LanguagesResponse(languages=infos)

    @app.post("/v1/recognize", response_model=RecognizeResponse)
    def recognize(req: RecognizeRequest):
        try:
            wav_bytes = base64.b64decode(req.audio_base64, validate=True)
        except (binascii.Error, ValueError):
            raise HTTPException(400, "audio_base64 is not valid base64")
        try:
            bundle = pool.acquire(req.language)
        except PoolError as e:
            raise HTTPException(_POOL_STATUS.get(e.code, 500), str(e))
        try:
            try:
                audio = read_wav(wav_bytes)
                feats = extract_features(audio, bundle.frontend)
            except (AudioError, FrontendError) as e:
                raise HTTPException(400, str(e))
            try:
                hyp = viterbi_decode(feats, bundle.graph, bundle.scorer, bundle.beam)
            except SearchFailure:
                return RecognizeResponse(
                    language=req.language, transcript="", words=[],
                    frames=len(feats), score=None)
            words = [WordSpan(word=w, start_frame=s, end_frame=e)
                     for w, (s, e) in zip(hyp.words, hyp.boundaries)]
            return RecognizeResponse(
                language=req.language, transcript=hyp.text, words=words,
                frames=len(feats), score=hyp.score)
        finally:
            pool.release(req.language)

    @app.post("/v1/score/wer", response_model=WerResponse)
    def score_wer(req: WerRequest):
        per_line = []
        try:
            for pair in req.pairs:
                per_line.append(wer(pair.ref.split(), pair.hyp.split()))
            aggregate = corpus_wer(
                (p.ref.split(), p.hyp.split()) for p in req.pairs)
        except ValueError as e:
            raise HTTPException(400, str(e))
        return WerResponse(aggregate=_counts(aggregate),
                           per_line=[_counts(r) for r in per_line])

    @app.post("/v1/lm/perplexity", response_model=PerplexityResponse)
    def perplexity(req: PerplexityRequest):
        bundle = pool.bundle(req.language)
        if bundle is None:
            raise HTTPException(404, f"language {req.language!r} is not loaded")
        try:
            value = bundle.graph.lm.perplexity(req.sentences)
        except LMError as e:
            raise HTTPException(400, str(e))
        return PerplexityResponse(language=req.language, perplexity=value,
                                  sentence_count=len(req.sentences))

    return app
