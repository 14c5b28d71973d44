"""Cross-checks of generated table slices against known integer sequences.

The offline checks compare slices of the generated triangles (diagonals and
columns) against reference terms vendored in ``data/oeis_reference.txt``.
An optional read-only OEIS client can look the same prefixes up remotely; it
degrades to a "skipped" result whenever the network is unavailable.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Sequence

import requests

DEFAULT_OEIS_URL = "https://oeis.org"
DEFAULT_OEIS_TIMEOUT = 10.0
OEIS_URL_ENV = "PERMPROB_OEIS_URL"
OEIS_TIMEOUT_ENV = "PERMPROB_OEIS_TIMEOUT"

_ID_PATTERN = re.compile(r"A\d{6}")


class OEISFormatError(ValueError):
    """The lookup endpoint returned a body that is not in its text format."""


@dataclass(frozen=True)
class SequenceRef:
    """One table slice and the sequence identifier it is checked against."""

    oeis_id: str
    description: str
    slice_name: str
    generator: Callable[[int], int] = field(repr=False)


@dataclass(frozen=True)
class ReferenceEntry:
    oeis_id: str
    slice_name: str
    first_n: int
    self_ref_from: int | None
    terms: tuple[int, ...]


@dataclass(frozen=True)
class SequenceCheck:
    """Outcome of comparing a generated slice against its vendored terms."""

    ref: SequenceRef
    first_n: int
    expected: tuple[int, ...]
    generated: tuple[int, ...]
    passed: bool
    self_ref_from: int | None

    @property
    def window(self) -> str:
        return f"n={self.first_n}..{self.first_n + len(self.expected) - 1}"


def _refs() -> tuple[SequenceRef, ...]:
    from .termdist import v_closed_form, w_closed_form

    return (
        SequenceRef("A000166", "derangement numbers", "W_n(n)",
                    lambda n: w_closed_form(n, n)),
        SequenceRef("A000217", "triangular numbers", "W_n(2)",
                    lambda n: w_closed_form(n, 2)),
        SequenceRef("A007290", "2*C(n,3)", "W_n(3)",
                    lambda n: w_closed_form(n, 3)),
        SequenceRef("A060008", "9*C(n,4)", "W_n(4)",
                    lambda n: w_closed_form(n, 4)),
        SequenceRef("A060836", "44*C(n,5)", "W_n(5)",
                    lambda n: w_closed_form(n, 5)),
        SequenceRef("A000255", "shifted derangements D(n+1)/n", "V_n(n)",
                    lambda n: v_closed_form(n, n)),
        SequenceRef("A045943", "triangular matchstick numbers", "V_n(3)",
                    lambda n: v_closed_form(n, 3)),
    )


REFS: tuple[SequenceRef, ...] = _refs()


def load_reference_terms() -> dict[str, ReferenceEntry]:
    """Parse the vendored reference-data file."""
    text = (
        resources.files("permprob").joinpath("data/oeis_reference.txt").read_text()
    )
    entries: dict[str, ReferenceEntry] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = dict(item.split("=", 1) for item in line.split()[1:])
        oeis_id = line.split()[0]
        self_ref = fields["self_ref_from"]
        entries[oeis_id] = ReferenceEntry(
            oeis_id=oeis_id,
            slice_name=fields["slice"],
            first_n=int(fields["first_n"]),
            self_ref_from=None if self_ref == "none" else int(self_ref),
            terms=tuple(int(t) for t in fields["terms"].split(",")),
        )
    return entries


def builtin_checks() -> list[SequenceCheck]:
    """Compare every registered slice against its vendored terms, offline."""
    entries = load_reference_terms()
    checks = []
    for ref in REFS:
        entry = entries[ref.oeis_id]
        if entry.slice_name != ref.slice_name:
            raise RuntimeError(
                f"reference data for {ref.oeis_id} describes slice "
                f"{entry.slice_name!r}, expected {ref.slice_name!r}"
            )
        generated = tuple(
            ref.generator(n)
            for n in range(entry.first_n, entry.first_n + len(entry.terms))
        )
        checks.append(
            SequenceCheck(
                ref=ref,
                first_n=entry.first_n,
                expected=entry.terms,
                generated=generated,
                passed=generated == entry.terms,
                self_ref_from=entry.self_ref_from,
            )
        )
    return checks


@dataclass(frozen=True)
class LookupResult:
    """Outcome of one remote lookup; ``skipped`` status is not a failure."""

    status: str  # "ok" or "skipped"
    ids: tuple[str, ...]
    note: str = ""


def _http_fetch(url: str, timeout: float) -> str:
    response = requests.get(url, timeout=timeout)
    response.raise_for_status()
    return response.text


def _parse_search_text(text: str) -> tuple[str, ...]:
    ids = []
    seen = set()
    has_marker = False
    for line in text.splitlines():
        if line.startswith("%"):
            has_marker = True
            parts = line.split()
            if len(parts) >= 2 and _ID_PATTERN.fullmatch(parts[1]):
                if parts[1] not in seen:
                    seen.add(parts[1])
                    ids.append(parts[1])
        elif "No results" in line or line.startswith("# "):
            has_marker = True
    if not has_marker:
        raise OEISFormatError("response is not in the expected text format")
    return tuple(ids)


def oeis_lookup(
    prefix: Sequence[int],
    base_url: str | None = None,
    timeout: float | None = None,
    fetch: Callable[[str, float], str] | None = None,
) -> LookupResult:
    """Search the OEIS for sequences starting with ``prefix``.

    Read-only; network trouble yields ``status="skipped"`` rather than an
    exception so offline runs keep working.  A 200 response that is not in
    the endpoint's text format raises :class:`OEISFormatError`.
    """
    prefix = list(prefix)
    if len(prefix) < 4:
        raise ValueError(f"prefix must have at least 4 terms, got {len(prefix)}")
    base = base_url or os.environ.get(OEIS_URL_ENV) or DEFAULT_OEIS_URL
    if timeout is None:
        timeout = float(
            os.environ.get(OEIS_TIMEOUT_ENV) or DEFAULT_OEIS_TIMEOUT
        )
    query = ",".join(str(t) for t in prefix)
    url = f"{base.rstrip('/')}/search?q={query}&fmt=text"
    fetch = fetch or _http_fetch
    try:
        body = fetch(url, timeout)
    except requests.RequestException as exc:
        return LookupResult(status="skipped", ids=(), note=f"network unreachable: {exc}")
    return LookupResult(status="ok", ids=_parse_search_text(body))
