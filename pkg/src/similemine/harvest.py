"""Focused site crawler.

Fetches pages breadth-first inside one registrable domain, extracts the
text of a single configured content container per page (menus, headers
and footers stay out), and emits Document records. Robots exclusion and
a per-host politeness delay are always on. Traversal is sequential, which
trivially satisfies the one-in-flight-request-per-host rule.
"""

from __future__ import annotations

import datetime as _dt
import logging
import re
import time
import urllib.robotparser
from collections import deque
from dataclasses import asdict, dataclass
from html.parser import HTMLParser
from urllib.parse import urljoin, urlsplit, urlunsplit

import requests

log = logging.getLogger(__name__)

USER_AGENT = "similemine/0.1 (simile corpus research crawler)"


class HarvestError(Exception):
    pass


class MalformedUrlError(HarvestError):
    pass


@dataclass(frozen=True)
class Selector:
    element: str
    attr_name: str
    attr_value: str

    @classmethod
    def parse(cls, spec: str) -> "Selector":
        m = re.fullmatch(r"\s*(\w+)\[([\w-]+)=([^\]]+)\]\s*", spec)
        if not m:
            raise HarvestError(f"bad selector {spec!r}, expected name[attr=value]")
        return cls(m.group(1).lower(), m.group(2).lower(), m.group(3))


@dataclass
class SiteConfig:
    site_id: str
    seed_urls: list[str]
    domain: str
    content_selector: Selector
    max_pages: int = 100
    politeness_delay_ms: int = 1000
    max_depth: int = 3

    def __post_init__(self):
        if self.max_pages < 1 or self.max_depth < 1:
            raise HarvestError("max_pages and max_depth must be >= 1")
        if self.politeness_delay_ms < 0:
            raise HarvestError("politeness_delay_ms must be >= 0")
        for url in self.seed_urls:
            if not in_scope(url, self):
                raise HarvestError(f"seed {url!r} is outside domain {self.domain!r}")


def load_site_config(path) -> SiteConfig:
    """Read a plain key=value config file, one site per file."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    try:
        return SiteConfig(
            site_id=values["site_id"],
            seed_urls=values["seed_urls"].split(),
            domain=values["domain"].lower(),
            content_selector=Selector.parse(values["content_selector"]),
            max_pages=int(values.get("max_pages", 100)),
            politeness_delay_ms=int(values.get("politeness_delay_ms", 1000)),
            max_depth=int(values.get("max_depth", 3)),
        )
    except KeyError as exc:
        raise HarvestError(f"missing config key {exc.args[0]!r} in {path}") from exc


@dataclass
class Document:
    url: str
    site_id: str
    fetched_at: str
    text: str

    def to_dict(self) -> dict:
        return asdict(self)


def _host_of(url: str) -> str:
    try:
        parts = urlsplit(url)
    except ValueError as exc:
        raise MalformedUrlError(f"unparsable URL {url!r}") from exc
    if parts.scheme not in ("http", "https") or not parts.hostname:
        raise MalformedUrlError(f"not an absolute http(s) URL: {url!r}")
    return parts.hostname.lower()


def in_scope(url: str, cfg: SiteConfig) -> bool:
    """True iff the URL's host is the configured domain or a subdomain."""
    host = _host_of(url)
    domain = cfg.domain.lower()
    return host == domain or host.endswith("." + domain)


def canonical_url(url: str, base: str | None = None) -> str:
    """Resolve against base, lowercase the host, drop the fragment."""
    if base:
        url = urljoin(base, url)
    parts = urlsplit(url)
    netloc = parts.netloc.lower()
    return urlunsplit((parts.scheme.lower(), netloc, parts.path or "/", parts.query, ""))


class _PageParser(HTMLParser):
    """Collects links from the whole page and text from one container."""

    _SKIP = frozenset({"script", "style"})

    def __init__(self, selector: Selector):
        super().__init__(convert_charrefs=True)
        self.selector = selector
        self.links: list[str] = []
        self.text_parts: list[str] = []
        self._container_depth = 0
        self._container_done = False
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag == "a":
            for name, value in attrs:
                if name == "href" and value:
                    self.links.append(value)
        if tag in self._SKIP:
            self._skip_depth += 1
            return
        if self._container_depth > 0:
            if tag == self.selector.element:
                self._container_depth += 1
        elif not self._container_done and tag == self.selector.element:
            attr_map = {k: (v or "") for k, v in attrs}
            if attr_map.get(self.selector.attr_name) == self.selector.attr_value:
                self._container_depth = 1

    def handle_endtag(self, tag):
        if tag in self._SKIP and self._skip_depth > 0:
            self._skip_depth -= 1
            return
        if self._container_depth > 0 and tag == self.selector.element:
            self._container_depth -= 1
            if self._container_depth == 0:
                self._container_done = True

    def handle_data(self, data):
        if self._container_depth > 0 and self._skip_depth == 0:
            self.text_parts.append(data)


_META_CHARSET = re.compile(
    rb"""<meta[^>]+charset\s*=\s*["']?\s*([a-zA-Z0-9_\-]+)""", re.IGNORECASE
)


def decode_page(body: bytes, header_charset: str | None = None) -> str:
    """Decode page bytes: HTTP header charset, then meta tag, then UTF-8."""
    tried = []
    if header_charset:
        tried.append(header_charset)
    m = _META_CHARSET.search(body[:4096])
    if m:
        tried.append(m.group(1).decode("ascii", "ignore"))
    tried.append("utf-8")
    for charset in tried:
        try:
            return body.decode(charset)
        except (UnicodeDecodeError, LookupError):
            continue
    raise HarvestError("undecodable page bytes")


def parse_page(body: bytes, selector: Selector,
               header_charset: str | None = None) -> tuple[str, list[str]]:
    """(container text, raw links).

    Text nodes are joined with single spaces (DOM text-walk semantics,
    so "<p>a</p><p>c</p>" reads "a c") and whitespace is collapsed.
    """
    html = decode_page(body, header_charset)
    parser = _PageParser(selector)
    parser.feed(html)
    parser.close()
    text = " ".join(" ".join(parser.text_parts).split())
    return text, parser.links


def extract_text(body: bytes, selector: Selector, header_charset: str | None = None) -> str:
    return parse_page(body, selector, header_charset)[0]


@dataclass
class CrawlReport:
    fetched: int = 0
    emitted: int = 0
    skipped_errors: int = 0
    skipped_robots: int = 0
    out_of_scope: int = 0


def _default_fetch(url: str, timeout: float) -> tuple[int, str | None, bytes]:
    """(status, content-type header, body)."""
    resp = requests.get(url, headers={"User-Agent": USER_AGENT}, timeout=timeout)
    return resp.status_code, resp.headers.get("content-type"), resp.content


def _charset_of(content_type: str | None) -> str | None:
    if not content_type:
        return None
    m = re.search(r"charset=([\w\-]+)", content_type)
    return m.group(1) if m else None


def crawl(cfg: SiteConfig, fetch=None, report: CrawlReport | None = None,
          timeout: float = 10.0, sleep=time.sleep):
    """Yield one Document per reachable in-domain page with non-empty text.

    Breadth-first from the seeds; each canonical URL fetched at most once,
    at most cfg.max_pages fetches, links followed to cfg.max_depth.
    """
    if fetch is None:
        fetch = _default_fetch
    if report is None:
        report = CrawlReport()
    robots: dict[str, urllib.robotparser.RobotFileParser] = {}
    last_fetch: dict[str, float] = {}

    def allowed(url: str) -> bool:
        parts = urlsplit(url)
        base = f"{parts.scheme}://{parts.netloc}"
        rp = robots.get(base)
        if rp is None:
            rp = urllib.robotparser.RobotFileParser()
            try:
                status, _, body = fetch(base + "/robots.txt", timeout)
                if status == 200:
                    rp.parse(body.decode("utf-8", "replace").splitlines())
                else:
                    rp.parse([])
            except Exception:
                rp.parse([])
            robots[base] = rp
        return rp.can_fetch(USER_AGENT, url)

    queue: deque[tuple[str, int]] = deque()
    visited: set[str] = set()
    for seed in cfg.seed_urls:
        try:
            url = canonical_url(seed)
        except ValueError:
            report.skipped_errors += 1
            continue
        if url not in visited:
            visited.add(url)
            queue.append((url, 0))
    if not queue:
        log.warning("crawl of %s: no reachable seeds", cfg.site_id)

    while queue and report.fetched < cfg.max_pages:
        url, depth = queue.popleft()
        if not allowed(url):
            report.skipped_robots += 1
            continue
        host = _host_of(url)
        wait = cfg.politeness_delay_ms / 1000.0 - (time.monotonic() - last_fetch.get(host, 0.0))
        if wait > 0:
            sleep(wait)
        last_fetch[host] = time.monotonic()
        report.fetched += 1
        try:
            status, content_type, body = fetch(url, timeout)
        except Exception as exc:
            log.info("fetch failed for %s: %s", url, exc)
            report.skipped_errors += 1
            continue
        if status != 200:
            report.skipped_errors += 1
            continue
        if content_type and "html" not in content_type:
            continue
        try:
            text, links = parse_page(body, cfg.content_selector, _charset_of(content_type))
        except HarvestError:
            report.skipped_errors += 1
            continue
        if depth < cfg.max_depth:
            for raw in links:
                try:
                    link = canonical_url(raw, base=url)
                except ValueError:
                    continue
                try:
                    if not in_scope(link, cfg):
                        report.out_of_scope += 1
                        continue
                except MalformedUrlError:
                    report.out_of_scope += 1
                    continue
                if link not in visited:
                    visited.add(link)
                    queue.append((link, depth + 1))
        if text:
            report.emitted += 1
            yield Document(
                url=url,
                site_id=cfg.site_id,
                fetched_at=_dt.datetime.now(_dt.timezone.utc)
                .isoformat(timespec="seconds")
                .replace("+00:00", "Z"),
                text=text,
            )
