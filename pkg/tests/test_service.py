import base64

import pytest
from fastapi.testclient import TestClient

from seasr.service import create_app


@pytest.fixture(scope="module")
def client(request):
    fixtures = request.config.rootpath / "fixtures"
    from seasr.server import DecoderPool, load_server_config

    cfg = load_server_config(fixtures / "toy" / "server.conf")
    pool = DecoderPool.from_config(cfg)
    app = create_app(cfg, pool)
    with TestClient(app) as c:
        c.pool = pool
        yield c


@pytest.fixture(scope="module")
def wav_b64(request):
    wav = (request.config.rootpath / "fixtures" / "toy" / "fixture.wav").read_bytes()
    return base64.b64encode(wav).decode("ascii")


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_languages(client):
    r = client.get("/v1/languages")
    assert r.status_code == 200
    body = r.json()
    assert body["languages"] == [
        {"code": "toy", "active_sessions": 0, "max_sessions": 64}
    ]


def test_recognize_fixture_wav(client, wav_b64):
    r = client.post("/v1/recognize", json={"language": "toy", "audio_base64": wav_b64})
    assert r.status_code == 200
    body = r.json()
    assert body["transcript"] == "ba da"
    assert body["frames"] == 98
    assert [w["word"] for w in body["words"]] == ["ba", "da"]
    assert body["words"][0] == {"word": "ba", "start_frame": 0, "end_frame": 49}
    assert body["score"] < 0
    # the slot is returned after the batch decode
    assert client.pool.active_count("toy") == 0


def test_recognize_unknown_language(client, wav_b64):
    r = client.post("/v1/recognize", json={"language": "xx", "audio_base64": wav_b64})
    assert r.status_code == 404
    assert "xx" in r.json()["detail"]


def test_recognize_bad_base64(client):
    r = client.post("/v1/recognize", json={"language": "toy", "audio_base64": "$$$"})
    assert r.status_code == 400


def test_recognize_not_a_wav(client):
    blob = base64.b64encode(b"mp3 data, honest").decode()
    r = client.post("/v1/recognize", json={"language": "toy", "audio_base64": blob})
    assert r.status_code == 400


def test_recognize_missing_field(client):
    r = client.post("/v1/recognize", json={"language": "toy"})
    assert r.status_code == 422


def test_recognize_overloaded(client, wav_b64, request):
    pool = client.pool
    for _ in range(64):
        pool.acquire("toy")
    try:
        r = client.post("/v1/recognize", json={"language": "toy", "audio_base64": wav_b64})
        assert r.status_code == 503
    finally:
        for _ in range(64):
            pool.release("toy")


def test_wer_endpoint(client):
    r = client.post("/v1/score/wer", json={"pairs": [
        {"ref": "x", "hyp": "y"},
        {"ref": "a b c", "hyp": "a b c"},
    ]})
    assert r.status_code == 200
    body = r.json()
    assert body["aggregate"]["wer"] == 25.0
    assert body["aggregate"]["ref_token_count"] == 4
    assert [line["wer"] for line in body["per_line"]] == [100.0, 0.0]


def test_wer_empty_reference_is_400(client):
    r = client.post("/v1/score/wer", json={"pairs": [{"ref": "", "hyp": "x"}]})
    assert r.status_code == 400


def test_wer_requires_pairs(client):
    r = client.post("/v1/score/wer", json={"pairs": []})
    assert r.status_code == 422


def test_perplexity_in_domain(client):
    r = client.post("/v1/lm/perplexity", json={
        "language": "toy", "sentences": ["ba da", "da ba"]})
    assert r.status_code == 200
    body = r.json()
    assert body["language"] == "toy"
    assert body["sentence_count"] == 2
    # hand value for the bundled bigram LM, through ARPA quantization
    assert body["perplexity"] == pytest.approx(2.4209101306752094, abs=1e-5)


def test_perplexity_unknown_language(client):
    r = client.post("/v1/lm/perplexity", json={"language": "zz", "sentences": ["ba"]})
    assert r.status_code == 404


def test_unknown_route_is_404(client):
    assert client.get("/v1/nope").status_code == 404
