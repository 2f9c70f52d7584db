"""CLI contract (exit codes, CSV, reports) and the HTTP service surface."""

import json

import httpx
import pytest

from starga.cli import main
from starga.service.app import app
from starga.verify import Check, Report, exit_code


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_command(capsys):
    code, out, _ = run_cli(capsys, "eval", "sigma1 * sigma2")
    assert code == 0 and out.strip() == "sigma1 sigma2"
    code, out, _ = run_cli(capsys, "eval", "tr(1)", "--algebra", "sta")
    assert code == 0 and out.strip() == "4"


def test_eval_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "eval", "sigma1 &")
    assert code == 1 and "byte 7" in err
    code, _, err = run_cli(capsys, "eval", "gamma0", "--algebra", "sigma3")
    assert code == 1 and "sigma1" in err


def test_eval_relations_env(capsys, monkeypatch):
    monkeypatch.setenv("GA_RELATIONS", "circular")
    code, out, _ = run_cli(capsys, "eval", "c^2 + s^2")
    assert code == 0 and out.strip() == "1"


def test_verify_all_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "pauli")
    assert code == 0
    assert "suite pauli" in out and "0 failed" in out


def test_verify_json_is_machine_readable(capsys):
    code, out, _ = run_cli(capsys, "verify", "hydrogen", "--json")
    assert code == 0
    reports = json.loads(out)
    assert reports[0]["suite"] == "hydrogen"
    flagged = [c for c in reports[0]["checks"] if c["status"] == "flagged"]
    assert len(flagged) == 1
    assert all(c["anchor"] for c in reports[0]["checks"])
    # stable key order
    assert list(reports[0]["checks"][0]) == ["id", "anchor", "status", "residual"]


def test_verify_exit_code_contract():
    passing = Report("demo", [Check("a", "x = x", "pass")])
    failing = Report("demo", [Check("a", "x = x", "pass"),
                              Check("b", "y = y", "fail", "residual y")])
    flagged = Report("demo", [Check("a", "x = x", "pass"),
                              Check("n", "note", "flagged", "printed typo")])
    assert exit_code([passing]) == 0
    assert exit_code([flagged]) == 0
    assert exit_code([passing, failing]) == 1
    assert not failing.ok and failing.failed == 1
    assert flagged.ok and flagged.flagged == 1


def test_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "verify", "bogus")
    assert code == 1 and "unknown suite" in err


def test_kepler_csv_and_summary(capsys):
    code, out, err = run_cli(capsys, "kepler", "--e", "0.3", "--a", "1",
                             "--orbits", "1", "--steps", "400",
                             "--sample", "100", "--method", "ks")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "s,t,x1,x2,x3,v1,v2,v3,E_rel_drift"
    assert len(lines) >= 4
    first = [float(v) for v in lines[1].split(",")]
    assert first[2] == pytest.approx(1.3)  # apoapsis of e=0.3, a=1
    assert "summary:" in err
    assert "ks_final_drift" in err and "newton_final_drift" in err


def test_kepler_out_file(tmp_path, capsys):
    target = tmp_path / "orbit.csv"
    code, out, _ = run_cli(capsys, "kepler", "--e", "0", "--steps", "200",
                           "--method", "newton", "--out", str(target))
    assert code == 0
    assert "summary:" in out
    header = target.read_text().splitlines()[0]
    assert header.startswith("s,t,x1")


def test_kepler_invalid_params_exit_two(capsys):
    code, _, err = run_cli(capsys, "kepler", "--e", "1.5")
    assert code == 2 and "eccentricity" in err


def request(method: str, path: str, payload=None) -> httpx.Response:
    import asyncio

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://service") as c:
            if method == "get":
                return await c.get(path)
            return await c.post(path, json=payload)

    return asyncio.run(go())


def test_service_health():
    data = request("get", "/health").json()
    assert data["status"] == "ok"
    assert "sta" in data["algebras"]
    assert "pauli" in data["suites"]


def test_service_eval():
    ok = request("post", "/eval", {"expression": "sigma1*sigma1"})
    assert ok.status_code == 200 and ok.json()["result"] == "1"
    bad = request("post", "/eval", {"expression": "sigma1 &"})
    assert bad.status_code == 400 and "byte 7" in bad.json()["detail"]
    unknown = request("post", "/eval", {"expression": "x", "algebra": "huh"})
    assert unknown.status_code == 400


def test_service_verify():
    data = request("post", "/verify", {"suite": "wigner"}).json()
    assert data["ok"] is True and data["exit_code"] == 0
    assert data["reports"][0]["suite"] == "wigner"


def test_service_kepler():
    good = request("post", "/kepler", {"method": "ks", "e": 0.2, "a": 1.0,
                                       "orbits": 1, "steps": 300,
                                       "sample_every": 100})
    assert good.status_code == 200
    body = good.json()
    assert body["columns"][0] == "s"
    assert body["summary"]["ks_final_drift"] < 1e-8
    assert "newton_final_drift" in body["summary"]
    bad = request("post", "/kepler", {"method": "ks", "e": 2.0})
    assert bad.status_code == 400


def test_cli_against_live_server(capsys):
    # the CLI --server path, exercised over a real socket
    import socket
    import threading
    import time

    import uvicorn

    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
    config = uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    try:
        deadline = time.time() + 10
        while time.time() < deadline:
            try:
                httpx.get(f"http://127.0.0.1:{port}/health", timeout=1.0)
                break
            except httpx.TransportError:
                time.sleep(0.05)
        code, out, _ = run_cli(capsys, "eval", "sigma1*sigma1",
                               "--server", f"http://127.0.0.1:{port}")
        assert code == 0 and out.strip() == "1"
    finally:
        server.should_exit = True
        thread.join(timeout=5)
