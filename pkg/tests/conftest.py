import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from similemine.stemming import default_rules
from similemine.tagging import default_lexicon


@pytest.fixture(scope="session")
def rules():
    return default_rules()


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


class FixtureSite:
    """In-process HTTP server serving a dict of path -> (content-type, bytes).

    Records every requested path so tests can assert what the crawler hit.
    """

    def __init__(self, pages: dict):
        self.pages = dict(pages)
        self.requests: list[str] = []
        site = self

        class Handler(BaseHTTPRequestHandler):
            def do_GET(self):
                site.requests.append(self.path)
                entry = site.pages.get(self.path)
                if entry is None:
                    self.send_response(404)
                    self.end_headers()
                    return
                content_type, body = entry
                if isinstance(body, str):
                    body = body.encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", content_type)
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, *args):
                pass

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.port = self.server.server_address[1]
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    def url(self, path: str, host: str = "localhost") -> str:
        return f"http://{host}:{self.port}{path}"

    def page_requests(self) -> list[str]:
        return [p for p in self.requests if p != "/robots.txt"]

    def close(self):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def fixture_site():
    sites = []

    def make(pages: dict) -> FixtureSite:
        site = FixtureSite(pages)
        sites.append(site)
        return site

    yield make
    for site in sites:
        site.close()
