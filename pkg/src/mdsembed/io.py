"""JSON file formats for codes and certificates.

Every document carries ``format`` and ``version`` fields.  Symbols are JSON
integers or strings; pair symbols are written as two-element lists and read
back as tuples.  Vector symbols are lists of residues mod ``p``.

Code file::

    {"format": "mdsembed/code", "version": 1, "d": 3, "q": 3,
     "words": [[0, 0, 0], [1, 1, 1]], "declared_distance": 3}

``"q"`` means every alphabet is ``0..q-1``; give ``"alphabets"`` (one list
per coordinate) instead for anything else.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .core_codes import ExplicitCode
from .embed_general import PatchedMdsCode, patched_from_parts
from .embed_latin import LatinEmbeddingCertificate, LatinHypercube

FORMAT_VERSION = 1
CODE_FORMAT = "mdsembed/code"
CERT_FORMAT = "mdsembed/certificate"


class FileFormatError(ValueError):
    """Malformed input file; the message names the offending field or line."""


def _symbol_in(x, where: str):
    if isinstance(x, bool) or x is None or isinstance(x, float):
        raise FileFormatError(f"{where}: symbols must be integers, strings or lists, got {x!r}")
    if isinstance(x, list):
        return tuple(_symbol_in(y, where) for y in x)
    if isinstance(x, (int, str)):
        return x
    raise FileFormatError(f"{where}: unsupported symbol {x!r}")


def _symbol_out(x):
    if isinstance(x, tuple):
        return [_symbol_out(y) for y in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def _loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FileFormatError("top level must be a JSON object")
    return doc


def _check_header(doc: dict, fmt: str) -> None:
    if doc.get("format") != fmt:
        raise FileFormatError(f"field 'format': expected {fmt!r}, got {doc.get('format')!r}")
    if doc.get("version") != FORMAT_VERSION:
        raise FileFormatError(f"field 'version': unsupported version {doc.get('version')!r}")


def _dumps(doc: dict) -> str:
    """One field per line; list-valued fields get one element per line."""
    parts = []
    for key, value in doc.items():
        if isinstance(value, list) and value:
            inner = ",\n  ".join(json.dumps(x) for x in value)
            parts.append(f" {json.dumps(key)}: [\n  {inner}\n ]")
        else:
            parts.append(f" {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def code_to_dict(C: ExplicitCode) -> dict:
    doc: dict[str, Any] = {"format": CODE_FORMAT, "version": FORMAT_VERSION, "d": C.d}
    q = C.orders[0] if len(set(C.orders)) == 1 else None
    if q is not None and all(a == tuple(range(q)) for a in C.alphabets):
        doc["q"] = q
    else:
        doc["alphabets"] = [[_symbol_out(s) for s in a] for a in C.alphabets]
    doc["words"] = [[_symbol_out(s) for s in w] for w in C.sorted_words()]
    if C.declared_distance is not None:
        doc["declared_distance"] = C.declared_distance
    return doc


def code_from_dict(doc: dict) -> ExplicitCode:
    _check_header(doc, CODE_FORMAT)
    d = doc.get("d")
    if not isinstance(d, int) or d < 1:
        raise FileFormatError(f"field 'd': expected a positive integer, got {d!r}")
    if "alphabets" in doc:
        alph = doc["alphabets"]
        if not isinstance(alph, list) or len(alph) != d:
            raise FileFormatError(f"field 'alphabets': expected {d} lists")
        alphabets = tuple(
            tuple(_symbol_in(s, f"alphabets[{i}]") for s in a) for i, a in enumerate(alph)
        )
    elif "q" in doc:
        q = doc["q"]
        if not isinstance(q, int) or q < 1:
            raise FileFormatError(f"field 'q': expected a positive integer, got {q!r}")
        alphabets = (tuple(range(q)),) * d
    else:
        raise FileFormatError("one of the fields 'q' or 'alphabets' is required")
    raw = doc.get("words")
    if not isinstance(raw, list):
        raise FileFormatError("field 'words': expected a list")
    words = []
    seen = set()
    for k, w in enumerate(raw):
        if not isinstance(w, list) or len(w) != d:
            raise FileFormatError(f"words[{k}]: expected a list of {d} symbols")
        word = tuple(_symbol_in(s, f"words[{k}]") for s in w)
        for i, s in enumerate(word):
            if s not in alphabets[i]:
                raise FileFormatError(f"words[{k}]: symbol {s!r} is outside the alphabet of coordinate {i}")
        if word in seen:
            raise FileFormatError(f"words[{k}]: duplicate word {list(w)!r}")
        seen.add(word)
        words.append(word)
    dd = doc.get("declared_distance")
    if dd is not None and (not isinstance(dd, int) or dd < 1):
        raise FileFormatError(f"field 'declared_distance': expected a positive integer, got {dd!r}")
    try:
        return ExplicitCode(alphabets, frozenset(words), dd)
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None


def parse_code_file(text: str) -> ExplicitCode:
    return code_from_dict(_loads(text))


def emit_code(C: ExplicitCode) -> str:
    return _dumps(code_to_dict(C))


def _rows(M) -> list:
    return np.asarray(M).astype(int).tolist()


def patched_to_dict(P: PatchedMdsCode, C: ExplicitCode) -> dict:
    return {
        "format": CERT_FORMAT,
        "version": FORMAT_VERSION,
        "kind": "patched_mds",
        "p": P.p,
        "n": P.n,
        "d": P.d,
        "t": P.t,
        "check_matrix": [list(r) for r in P.base.matrix.rows],
        "symbol_map": [[j, _symbol_out(s), k] for j, s, k in P.embedding.entries()],
        "patches": [
            {
                "w": [_symbol_out(s) for s in pt.source_word],
                "w_bar": _rows(pt.w_bar),
                "u": _rows(pt.u),
                "W": _rows(pt.W.basis),
            }
            for pt in P.patches
        ],
        "input": code_to_dict(C),
    }


def patched_from_dict(doc: dict) -> tuple[PatchedMdsCode, ExplicitCode]:
    """Rebuild from the stored matrix, symbol map and source words; stored derived data must agree."""
    _check_header(doc, CERT_FORMAT)
    if doc.get("kind") != "patched_mds":
        raise FileFormatError(f"field 'kind': expected 'patched_mds', got {doc.get('kind')!r}")
    try:
        C = code_from_dict(doc["input"])
        entries = [(int(j), _symbol_in(s, "symbol_map"), int(k)) for j, s, k in doc["symbol_map"]]
        words = [tuple(_symbol_in(s, "patches.w") for s in pt["w"]) for pt in doc["patches"]]
        P = patched_from_parts(int(doc["p"]), doc["check_matrix"], entries, int(doc["d"]), words)
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"certificate field missing or malformed: {exc}") from None
    if P.n != doc["n"] or P.t != doc["t"]:
        raise FileFormatError("fields 'n'/'t' disagree with the check matrix and symbol map")
    for k, (pt, stored) in enumerate(zip(P.patches, doc["patches"])):
        for name, value in (("w_bar", pt.w_bar), ("u", pt.u), ("W", pt.W.basis)):
            if _rows(value) != stored[name]:
                raise FileFormatError(f"patches[{k}].{name} disagrees with the recomputed value")
    return P, C


def latin_to_dict(cert: LatinEmbeddingCertificate) -> dict:
    return {
        "format": CERT_FORMAT,
        "version": FORMAT_VERSION,
        "kind": "latin_embedding",
        "d": cert.output.d,
        "order": cert.order,
        "hypercube": _rows(cert.output.array),
        "injections": [[i, _symbol_out(s), int(v)] for i, m in enumerate(cert.injections) for s, v in m.items()],
        "trace": cert.trace,
        "input": code_to_dict(cert.code),
    }


def latin_from_dict(doc: dict) -> LatinEmbeddingCertificate:
    _check_header(doc, CERT_FORMAT)
    if doc.get("kind") != "latin_embedding":
        raise FileFormatError(f"field 'kind': expected 'latin_embedding', got {doc.get('kind')!r}")
    try:
        C = code_from_dict(doc["input"])
        arr = np.array(doc["hypercube"], dtype=np.int64)
        injections: list[dict] = [dict() for _ in range(C.d)]
        for i, s, v in doc["injections"]:
            injections[int(i)][_symbol_in(s, "injections")] = int(v)
        trace = doc["trace"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"certificate field missing or malformed: {exc}") from None
    if arr.ndim != doc.get("d", 0) - 1 or any(n != doc.get("order") for n in arr.shape):
        raise FileFormatError("field 'hypercube' does not match 'd' and 'order'")
    return LatinEmbeddingCertificate(C, LatinHypercube(arr), injections, trace)


def emit_certificate(obj, C: ExplicitCode | None = None) -> str:
    if isinstance(obj, LatinEmbeddingCertificate):
        return _dumps(latin_to_dict(obj))
    if isinstance(obj, PatchedMdsCode):
        if C is None:
            raise ValueError("the input code is needed to write a patched-code certificate")
        return _dumps(patched_to_dict(obj, C))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def parse_certificate(text: str):
    """Returns ``(PatchedMdsCode, ExplicitCode)`` or a ``LatinEmbeddingCertificate``."""
    doc = _loads(text)
    kind = doc.get("kind")
    if kind == "patched_mds":
        return patched_from_dict(doc)
    if kind == "latin_embedding":
        return latin_from_dict(doc)
    raise FileFormatError(f"field 'kind': unknown certificate kind {kind!r}")


def parse_vector_word(text: str, d: int) -> list:
    doc = _loads('{"w": ' + text + "}")["w"]
    if not isinstance(doc, list) or len(doc) != d:
        raise FileFormatError(f"word must be a list of {d} vectors")
    return doc
