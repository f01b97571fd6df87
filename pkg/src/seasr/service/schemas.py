"""Request/response models for the HTTP control plane."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str = "ok"


class LanguageInfo(BaseModel):
    code: str
    active_sessions: int
    max_sessions: int


class LanguagesResponse(BaseModel):
    languages: list[LanguageInfo]


class RecognizeRequest(BaseModel):
    language: str
    audio_base64: str = Field(description="WAV file (mono PCM16 16 kHz), base64")


class WordSpan(BaseModel):
    word: str
    start_frame: int
    end_frame: int


class RecognizeResponse(BaseModel):
    language: str
    transcript: str
    words: list[WordSpan]
    frames: int
    score: float | None = None  # None when the search found no full path


class WerPair(BaseModel):
    ref: str
    hyp: str


class WerRequest(BaseModel):
    pairs: list[WerPair] = Field(min_length=1)


class WerCounts(BaseModel):
    substitutions: int
    deletions: int
    insertions: int
    ref_token_count: int
    wer: float


class WerResponse(BaseModel):
    aggregate: WerCounts
    per_line: list[WerCounts]


class PerplexityRequest(BaseModel):
    language: str
    sentences: list[str] = Field(min_length=1)


class PerplexityResponse(BaseModel):
    language: str
    perplexity: float
    sentence_count: int


class ErrorResponse(BaseModel):
    detail: str
