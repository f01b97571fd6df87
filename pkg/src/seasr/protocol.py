"""Binary wire protocol for the streaming recognition service.

Frame layout (all integers big-endian):

    magic "SEA1" | version 0x01 | msg_type u8 | reserved u16 |
    session_id u64 | payload_len u32 | payload

Payload conventions:

    START   u8 language length, language UTF-8, u32 sample rate, u8 encoding
            tag (0x01 = PCM16LE)
    AUDIO   raw PCM16LE bytes
    PARTIAL / FINAL   UTF-8 transcript
    ERROR   u16 error code, UTF-8 message

Truncated input is not an error: decoding reports "need more bytes" so a
TCP reassembly buffer can wait for the rest of the frame.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from enum import IntEnum

MAGIC = b"SEA1"
VERSION = 0x01
MAX_PAYLOAD = 16 * 1024 * 1024
HEADER = struct.Struct(">4sBBHQI")
HEADER_LEN = HEADER.size  # 20

_START_TAIL = struct.Struct(">IB")  # sample rate, encoding tag
ENCODING_PCM16LE = 0x01


class MsgType(IntEnum):
    START = 0x01
    AUDIO = 0x02
    END = 0x03
    PARTIAL = 0x04
    FINAL = 0x05
    ERROR = 0x06


class ErrorCode(IntEnum):
    UNKNOWN_LANGUAGE = 0x0001
    BAD_STATE = 0x0002
    MALFORMED_PAYLOAD = 0x0003
    OVERLOADED = 0x0004
    SESSION_TIMEOUT = 0x0005


class ProtocolError(Exception):
    """Unrecoverable framing violation (bad magic/version/type/length)."""


@dataclass(frozen=True)
class Message:
    msg_type: MsgType
    session_id: int
    payload: bytes = b""


def encode_message(msg: Message) -> bytes:
    if not isinstance(msg.msg_type, MsgType):
        MsgType(msg.msg_type)  # raises ValueError for unknown values
    if not 0 <= msg.session_id < 1 << 64:
        raise ProtocolError("session id out of u64 range")
    if len(msg.payload) > MAX_PAYLOAD:
        raise ProtocolError(f"payload of {len(msg.payload)} bytes exceeds cap")
    return HEADER.pack(MAGIC, VERSION, int(msg.msg_type), 0, msg.session_id, len(msg.payload)) + msg.payload


def try_decode(buf: bytes) -> tuple[Message, bytes] | None:
    """Decode one frame from the head of buf.

    Returns (message, remainder) or None when more bytes are needed.
    Raises ProtocolError as soon as the available prefix is provably
    invalid. Reserved bytes are ignored on read.
    """
    if len(buf) >= 4 and buf[:4] != MAGIC:
        raise ProtocolError(f"bad magic {buf[:4]!r}")
    if len(buf) >= 5 and buf[4] != VERSION:
        raise ProtocolError(f"unknown protocol version {buf[4]}")
    if len(buf) >= 6 and buf[5] not in MsgType._value2member_map_:
        raise ProtocolError(f"unknown message type 0x{buf[5]:02x}")
    if len(buf) < HEADER_LEN:
        return None
    _, _, msg_type, _, session_id, payload_len = HEADER.unpack_from(buf)
    if payload_len > MAX_PAYLOAD:
        raise ProtocolError(f"declared payload of {payload_len} bytes exceeds cap")
    end = HEADER_LEN + payload_len
    if len(buf) < end:
        return None
    return Message(MsgType(msg_type), session_id, bytes(buf[HEADER_LEN:end])), bytes(buf[end:])


@dataclass
class FrameDecoder:
    """Incremental reassembly of a frame stream (e.g. off a TCP socket)."""

    _buf: bytearray = field(default_factory=bytearray)

    def feed(self, data: bytes) -> list[Message]:
        self._buf.extend(data)
        out: list[Message] = []
        while True:
            decoded = try_decode(bytes(self._buf))
            if decoded is None:
                return out
            msg, rest = decoded
            out.append(msg)
            self._buf = bytearray(rest)

    @property
    def pending_bytes(self) -> int:
        return len(self._buf)


def build_start_payload(language: str, sample_rate: int, encoding: int = ENCODING_PCM16LE) -> bytes:
    lang = language.encode("utf-8")
    if not lang or len(lang) > 255:
        raise ProtocolError("language code must be 1..255 UTF-8 bytes")
    return bytes([len(lang)]) + lang + _START_TAIL.pack(sample_rate, encoding)


def parse_start_payload(payload: bytes) -> tuple[str, int, int]:
    """Returns (language, sample_rate, encoding_tag); raises ProtocolError."""
    if len(payload) < 1:
        raise ProtocolError("empty START payload")
    n = payload[0]
    if n == 0 or len(payload) != 1 + n + _START_TAIL.size:
        raise ProtocolError("START payload length mismatch")
    try:
        language = payload[1 : 1 + n].decode("utf-8")
    except UnicodeDecodeError as e:
        raise ProtocolError("language code is not valid UTF-8") from e
    rate, encoding = _START_TAIL.unpack_from(payload, 1 + n)
    return language, rate, encoding


def build_error_payload(code: ErrorCode, text: str) -> bytes:
    return struct.pack(">H", int(code)) + text.encode("utf-8")


def parse_error_payload(payload: bytes) -> tuple[int, str]:
    if len(payload) < 2:
        raise ProtocolError("ERROR payload shorter than the code field")
    (code,) = struct.unpack_from(">H", payload)
    return code, payload[2:].decode("utf-8", errors="replace")
