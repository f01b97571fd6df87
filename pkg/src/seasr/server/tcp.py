"""Asyncio TCP front end for the recognition service.

One connection carries one session. Bytes are reassembled into frames,
frames are handed to the session state machine, and its replies are
written back in order. A connection is closed after FINAL, after any
ERROR, on EOF, or when idle past the configured timeout (which sends
ERROR 0x0005 first). Sessions progress concurrently; within one
connection messages are processed strictly serially.
"""

from __future__ import annotations

import asyncio
import logging

from ..protocol import (
    ErrorCode,
    FrameDecoder,
    Message,
    MsgType,
    ProtocolError,
    build_error_payload,
    encode_message,
)
from .config import ServerConfig
from .pool import DecoderPool
from .session import RecognitionSession

log = logging.getLogger("seasr.server")


class AsrServer:
    def __init__(self, config: ServerConfig, pool: DecoderPool | None = None):
        self.config = config
        self.pool = pool if pool is not None else DecoderPool.from_config(config)
        self._server: asyncio.Server | None = None

    @property
    def port(self) -> int:
        """Actual bound port (differs from config when bound to port 0)."""
        if self._server is None:
            raise RuntimeError("server is not started")
        return self._server.sockets[0].getsockname()[1]

    async def start(self, host: str = "127.0.0.1", port: int | None = None) -> None:
        if port is None:
            port = self.config.port
        self._server = await asyncio.start_server(self._handle_connection, host, port)
        log.info("event=listen host=%s port=%d languages=%s",
                 host, self.port, ",".join(self.pool.languages))

    async def serve_forever(self) -> None:
        if self._server is None:
            await self.start()
        async with self._server:
            await self._server.serve_forever()

    async def stop(self) -> None:
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()
            self._server = None

    async def _handle_connection(self, reader: asyncio.StreamReader,
                                 writer: asyncio.StreamWriter) -> None:
        session = RecognitionSession(self.pool, self.config.partial_interval_frames)
        frames = FrameDecoder()

        async def send(msgs) -> None:
            for m in msgs:
                writer.write(encode_message(m))
            if msgs:
                await writer.drain()

        try:
            while not session.closed:
                try:
                    data = await asyncio.wait_for(
                        reader.read(65536), timeout=self.config.idle_timeout_s)
                except asyncio.TimeoutError:
                    await send(session.on_timeout())
                    break
                if not data:
                    break  # client went away
                try:
                    messages = frames.feed(data)
                except ProtocolError as e:
                    await send([Message(
                        MsgType.ERROR, session.session_id,
                        build_error_payload(ErrorCode.MALFORMED_PAYLOAD, str(e)))])
                    break
                for msg in messages:
                    await send(session.handle(msg))
                    if session.closed:
                        break
        except (ConnectionResetError, BrokenPipeError):
            pass  # peer vanished mid-write; nothing left to tell it
        except Exception:
            log.exception("event=connection-crash session=%d", session.session_id)
        finally:
            session.close()
            writer.close()
            try:
                await writer.wait_closed()
            except (ConnectionResetError, BrokenPipeError):
                pass


def run_server(config: ServerConfig, host: str = "127.0.0.1",
               port: int | None = None) -> None:
    """Blocking entry point used by the CLI."""

    async def main():
        server = AsrServer(config)
        await server.start(host, port)
        await server.serve_forever()

    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        pass
