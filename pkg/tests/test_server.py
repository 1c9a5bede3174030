import json
import threading
import urllib.error
import urllib.request

import pytest

from tabletloom import server
from tabletloom.bandio import load_catalog

GOOD_PLAN = "tablets 2\npalette r #cc0000\npalette w #ffffff\nthread 1-2 S r r w w\nF\nF\n"


@pytest.fixture(scope="module")
def base_url():
    srv = server.make_server(0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()


def post(url, body: str):
    req = urllib.request.Request(url, data=body.encode(), method="POST")
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read(), dict(resp.headers)
    except urllib.error.HTTPError as exc:
        return exc.code, exc.read(), dict(exc.headers)


def get(url):
    try:
        with urllib.request.urlopen(url) as resp:
            return resp.status, resp.read(), dict(resp.headers)
    except urllib.error.HTTPError as exc:
        return exc.code, exc.read(), dict(exc.headers)


def test_health(base_url):
    status, body, _ = get(base_url + "/health")
    assert status == 200
    assert json.loads(body) == {"status": "ok"}


def test_simulate_matches_cli_bytes(base_url):
    status, body, headers = post(base_url + "/simulate", GOOD_PLAN)
    assert status == 200
    assert body == server.simulate_bytes(GOOD_PLAN)
    assert headers["Access-Control-Allow-Origin"] == "*"


def test_simulate_parse_error(base_url):
    status, body, _ = post(base_url + "/simulate", "tablets")
    assert status == 400
    diags = json.loads(body)
    assert len(diags) >= 1
    assert {"line", "col", "code", "msg"} <= set(diags[0])


def test_examples_listing(base_url):
    status, body, _ = get(base_url + "/examples")
    assert status == 200
    entries = json.loads(body)
    ids = [e["id"] for e in entries]
    assert "diagonals" in ids
    assert ids == sorted(ids)
    local = {e.id: e.source for e in load_catalog()[0]}
    for e in entries:
        assert e["source"] == local[e["id"]]


def test_unknown_path_404(base_url):
    assert get(base_url + "/nope")[0] == 404
    assert post(base_url + "/nope", "x")[0] == 404


def test_stateless_order_independence(base_url):
    a1 = post(base_url + "/simulate", GOOD_PLAN)[1]
    post(base_url + "/simulate", "tablets")  # error in between
    post(base_url + "/simulate", GOOD_PLAN.replace("F\nF\n", "B\n"))
    a2 = post(base_url + "/simulate", GOOD_PLAN)[1]
    assert a1 == a2


def test_concurrent_requests(base_url):
    results = [None] * 8
    def worker(i):
        results[i] = post(base_url + "/simulate", GOOD_PLAN)[1]
    threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
