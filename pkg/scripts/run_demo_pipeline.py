#!/usr/bin/env python3
"""Run the whole pipeline against a bundled in-process demo site.

Spins up a tiny local web site, crawls it, extracts and classifies
candidates, loads the positives into a fresh store and prints the stats.
Everything lands in ./demo_run/.
"""

import json
import subprocess
import sys
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from similemine.features import write_labeled  # noqa: E402
from similemine.synthetic import make_synthetic  # noqa: E402

PAGES = {
    "/": '<div id="menu">Pocetna</div><div id="content">Radi kao konj. '
         'Vredan kao mrav.</div><a href="/a">a</a> <a href="/b">b</a>',
    "/a": '<div id="content">Lep kao cvet. Spava kao beba.</div>',
    "/b": '<div id="content">Radi kao pravnik. Ljut kao ris. '
          'Hladan k\'o krastavac.</div>',
}


def serve_pages():
    class Handler(BaseHTTPRequestHandler):
        def do_GET(self):
            body = PAGES.get(self.path)
            if body is None:
                self.send_response(404)
                self.end_headers()
                return
            data = f"<html><body>{body}</body></html>".encode()
            self.send_response(200)
            self.send_header("Content-Type", "text/html; charset=utf-8")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        def log_message(self, *args):
            pass

    server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
    threading.Thread(target=server.serve_forever, daemon=True).start()
    return server


def cli(*args):
    cmd = [sys.executable, "-m", "similemine.cli", *args]
    env = {"PYTHONPATH": str(ROOT / "src"), "PATH": "/usr/bin:/bin"}
    result = subprocess.run(cmd, env=env, capture_output=True, text=True)
    if result.returncode != 0:
        print(result.stderr, file=sys.stderr)
        raise SystemExit(f"step failed: {' '.join(args)}")
    return result.stdout


def main():
    out = ROOT / "demo_run"
    out.mkdir(exist_ok=True)
    server = serve_pages()
    port = server.server_address[1]
    try:
        (out / "site.cfg").write_text(
            f"site_id = demo\nseed_urls = http://localhost:{port}/\n"
            "domain = localhost\ncontent_selector = div[id=content]\n"
            "max_pages = 10\npoliteness_delay_ms = 0\nmax_depth = 3\n",
            encoding="utf-8",
        )
        write_labeled(out / "labeled.tsv", make_synthetic())
        cli("crawl", "--site", str(out / "site.cfg"), "--out", str(out / "docs.jsonl"))
        cli("extract", "--in", str(out / "docs.jsonl"), "--out", str(out / "cands.jsonl"))
        cli("train", "--data", str(out / "labeled.tsv"), "--model", "nb",
            "--out", str(out / "nb.model.json"))
        cli("classify", "--model", str(out / "nb.model.json"),
            "--in", str(out / "cands.jsonl"), "--out", str(out / "classified.jsonl"))
        cli("load-candidates", "--in", str(out / "classified.jsonl"),
            "--store", str(out / "similes.db"))
        stats = cli("stats", "--store", str(out / "similes.db"))
        print("pipeline stats:", json.dumps(json.loads(stats), indent=2, ensure_ascii=False))
        print(f"artifacts in {out}")
    finally:
        server.shutdown()


if __name__ == "__main__":
    main()
