"""Recognition session state machine, independent of any transport.

A session consumes client Messages and returns the Messages to send
back. Legal flow: AWAITING_START --START--> STREAMING --END-->
FINALIZING --> CLOSED, with any state jumping to CLOSED on error or
timeout. Exactly one FINAL is emitted on the happy path; every failure
emits exactly one ERROR. Audio that is too short to produce frames, or
a search that never reaches a word boundary, yields an empty FINAL
rather than an error: silence is a valid utterance.
"""

from __future__ import annotations

import enum
import logging
import time

from ..audio import AudioError, pcm16_to_samples
from ..decoder import IncrementalDecoder, SearchFailure
from ..frontend import CANONICAL_SAMPLE_RATE_HZ, FrontendError, StreamingFeaturizer
from ..protocol import (
    ENCODING_PCM16LE,
    ErrorCode,
    Message,
    MsgType,
    ProtocolError,
    build_error_payload,
    parse_start_payload,
)
from .pool import DecoderPool, PoolError

log = logging.getLogger("seasr.server")


class SessionState(enum.Enum):
    AWAITING_START = "awaiting-start"
    STREAMING = "streaming"
    FINALIZING = "finalizing"
    CLOSED = "closed"


class RecognitionSession:
    def __init__(self, pool: DecoderPool, partial_interval_frames: int = 50,
                 clock=time.monotonic):
        self._pool = pool
        self._interval = partial_interval_frames
        self._clock = clock
        self.state = SessionState.AWAITING_START
        self.session_id = 0
        self.language: str | None = None
        self.created_at = clock()
        self.last_activity = self.created_at
        self._bundle = None
        self._featurizer: StreamingFeaturizer | None = None
        self._decoder: IncrementalDecoder | None = None
        self._pending = b""  # torn PCM16 sample across AUDIO frames
        self._frames_since_partial = 0
        self._slot_held = False

    @property
    def closed(self) -> bool:
        return self.state is SessionState.CLOSED

    # -- lifecycle ------------------------------------------------------

    def handle(self, msg: Message) -> list[Message]:
        """Process one client message; returns the responses to send."""
        if self.closed:
            return []
        self.last_activity = self._clock()
        if msg.msg_type is MsgType.START:
            return self._on_start(msg)
        if msg.msg_type is MsgType.AUDIO:
            return self._on_audio(msg)
        if msg.msg_type is MsgType.END:
            return self._on_end(msg)
        return self._fail(ErrorCode.BAD_STATE,
                          f"client may not send {msg.msg_type.name}")

    def on_timeout(self) -> list[Message]:
        if self.closed:
            return []
        return self._fail(ErrorCode.SESSION_TIMEOUT,
                          "session idle past the timeout")

    def close(self) -> None:
        """Release resources; safe to call repeatedly (disconnects)."""
        if self._slot_held:
            self._pool.release(self.language)
            self._slot_held = False
        if not self.closed:
            log.info("event=close session=%d language=%s", self.session_id, self.language)
        self.state = SessionState.CLOSED

    # -- message handlers -----------------------------------------------

    def _on_start(self, msg: Message) -> list[Message]:
        if self.state is not SessionState.AWAITING_START:
            return self._fail(ErrorCode.BAD_STATE, "duplicate START")
        self.session_id = msg.session_id
        try:
            language, rate, encoding = parse_start_payload(msg.payload)
        except ProtocolError as e:
            return self._fail(ErrorCode.MALFORMED_PAYLOAD, str(e))
        if encoding != ENCODING_PCM16LE:
            return self._fail(ErrorCode.MALFORMED_PAYLOAD,
                              f"unsupported encoding tag 0x{encoding:02x}")
        if rate != CANONICAL_SAMPLE_RATE_HZ:
            return self._fail(
                ErrorCode.MALFORMED_PAYLOAD,
                f"unsupported sample rate {rate}; expected {CANONICAL_SAMPLE_RATE_HZ}")
        try:
            self._bundle = self._pool.acquire(language)
        except PoolError as e:
            return self._fail(e.code, str(e))
        self._slot_held = True
        self.language = language
        self._featurizer = StreamingFeaturizer(self._bundle.frontend)
        self._decoder = IncrementalDecoder(
            self._bundle.graph, self._bundle.scorer, self._bundle.beam)
        self.state = SessionState.STREAMING
        log.info("event=start session=%d language=%s rate=%d",
                 self.session_id, language, rate)
        return []

    def _on_audio(self, msg: Message) -> list[Message]:
        if self.state is not SessionState.STREAMING:
            return self._fail(ErrorCode.BAD_STATE, "AUDIO before START")
        if msg.session_id != self.session_id:
            return self._fail(ErrorCode.BAD_STATE,
                              f"session id changed mid-stream to {msg.session_id}")
        data = self._pending + msg.payload
        keep = len(data) % 2
        self._pending = data[len(data) - keep:] if keep else b""
        data = data[:len(data) - keep] if keep else data
        if not data:
            return []
        try:
            samples = pcm16_to_samples(data)
        except AudioError as e:
            return self._fail(ErrorCode.MALFORMED_PAYLOAD, str(e))
        rows = self._featurizer.push(samples)
        if len(rows):
            self._decoder.push(rows)
            self._frames_since_partial += len(rows)
        if self._frames_since_partial >= self._interval:
            self._frames_since_partial = 0
            text = self._decoder.partial().text
            log.info("event=partial session=%d chars=%d", self.session_id, len(text))
            return [Message(MsgType.PARTIAL, self.session_id, text.encode("utf-8"))]
        return []

    def _on_end(self, msg: Message) -> list[Message]:
        if self.state is not SessionState.STREAMING:
            return self._fail(ErrorCode.BAD_STATE, "END before START")
        if msg.session_id != self.session_id:
            return self._fail(ErrorCode.BAD_STATE,
                              f"session id changed mid-stream to {msg.session_id}")
        if self._pending:
            return self._fail(ErrorCode.MALFORMED_PAYLOAD,
                              "audio stream ended with half a PCM16 sample")
        self.state = SessionState.FINALIZING
        text = ""
        try:
            rows = self._featurizer.finalize()
            if len(rows):
                self._decoder.push(rows)
            text = self._decoder.finalize().text
        except (FrontendError, SearchFailure):
            text = ""  # silence or an unreachable word boundary
        log.info("event=final session=%d language=%s text=%r",
                 self.session_id, self.language, text)
        self.close()
        return [Message(MsgType.FINAL, self.session_id, text.encode("utf-8"))]

    def _fail(self, code: ErrorCode, detail: str) -> list[Message]:
        log.warning("event=error session=%d code=0x%04x detail=%s",
                    self.session_id, int(code), detail)
        reply = Message(MsgType.ERROR, self.session_id,
                        build_error_payload(code, detail))
        self.close()
        return [reply]
