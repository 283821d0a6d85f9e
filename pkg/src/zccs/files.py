"""
Reading and writing code-set files.

JSON files hold one object with the construction metadata and a ``codes``
array of shape K x M x N. CSV files carry the same metadata as JSON on a
leading ``# zccs-codeset`` comment line, a header row, then one line per
sequence: ``code_index,row_index,phase_0,...,phase_{N-1}``.

Phases are always stored as integers in Z_q. The optional complex export
appends real/imaginary parts with 17 significant digits; readers ignore it.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from . import __version__
from .construct import CodeSet, ConstructionParams, ParameterError
from .seqcore import roots_of_unity

__all__ = ["FileFormatError", "FORMAT_VERSION", "write_codeset", "read_codeset", "dumps", "loads"]

FORMAT_VERSION = 1
_CSV_TAG = "# zccs-codeset "
_PARAM_KEYS = ("p", "q", "r", "path_sizes", "perms", "gamma", "theta",
               "pmepr_term", "strict_gamma", "indexing")


class FileFormatError(ValueError):
    """The file is not a readable code set."""


def _metadata(cs: CodeSet) -> dict:
    meta = {"format_version": FORMAT_VERSION, "generator": f"zccs {__version__}",
            "q": cs.q, "shape": [cs.K, cs.M, cs.N]}
    P = cs.params
    if P is not None:
        meta.update(p=P.p, k=P.k, r=P.r, path_sizes=list(P.path_sizes),
                    perms=[list(v) for v in P.perms], gamma=list(P.gamma), theta=P.theta,
                    pmepr_term=P.pmepr_term, strict_gamma=P.strict_gamma,
                    indexing=P.indexing, claimed=list(P.shape))
    return meta


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dumps(cs: CodeSet, fmt: str = "json", signs: bool = False, complex_values: bool = False) -> str:
    meta = _metadata(cs)
    if fmt == "json":
        doc = dict(meta, codes=cs.codes.tolist())
        if complex_values:
            z = roots_of_unity(cs.q)[cs.codes]
            doc["codes_complex"] = np.stack([z.real, z.imag], axis=-1).tolist()
        return json.dumps(doc, sort_keys=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    if signs and cs.q != 2:
        raise ValueError("sign rendering needs q == 2")
    buf = io.StringIO()
    buf.write(_CSV_TAG + json.dumps(meta, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    header = ["code_index", "row_index"] + [f"phase_{j}" for j in range(cs.N)]
    if complex_values:
        header += [f"{part}_{j}" for j in range(cs.N) for part in ("re", "im")]
    w.writerow(header)
    roots = roots_of_unity(cs.q)
    for s in range(cs.K):
        for b in range(cs.M):
            row = cs.codes[s, b]
            fields = ["+-"[v] for v in row] if signs else [str(v) for v in row]
            if complex_values:
                z = roots[row]
                fields += [_fmt(c) for v in z for c in (v.real, v.imag)]
            w.writerow([s, b] + fields)
    return buf.getvalue()


def write_codeset(cs: CodeSet, path, fmt: str | None = None, **kw) -> Path:
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    path.write_text(dumps(cs, fmt, **kw), encoding="utf-8")
    return path


def _params_from(meta: dict) -> ConstructionParams | None:
    if meta.get("p") is None or meta.get("path_sizes") is None:
        return None
    kw = {k: meta[k] for k in _PARAM_KEYS if meta.get(k) is not None}
    for key in ("path_sizes", "gamma"):
        if key in kw:
            kw[key] = tuple(kw[key])
    if "perms" in kw:
        kw["perms"] = tuple(tuple(v) for v in kw["perms"])
    try:
        return ConstructionParams(**kw)
    except (ParameterError, TypeError) as exc:
        raise FileFormatError(f"bad construction metadata: {exc}") from None


def _finish(meta: dict, codes) -> CodeSet:
    if not isinstance(meta, dict):
        raise FileFormatError("metadata must be an object")
    version = meta.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise FileFormatError(f"unsupported format_version {version}")
    q = meta.get("q")
    if not isinstance(q, int) or q < 2:
        raise FileFormatError("missing or invalid modulus q")
    try:
        arr = np.array(codes, dtype=np.int64)
    except (ValueError, TypeError):
        raise FileFormatError("codes array is ragged or not integral") from None
    if arr.ndim != 3 or 0 in arr.shape:
        raise FileFormatError("codes must be a non-empty K x M x N array")
    if arr.min() < 0 or arr.max() >= q:
        raise FileFormatError(f"phases must lie in [0, {q})")
    if "shape" in meta and list(meta["shape"]) != list(arr.shape):
        raise FileFormatError(f"declared shape {meta['shape']} does not match codes {list(arr.shape)}")
    params = _params_from(meta)
    if params is not None:
        if params.q != q:
            raise FileFormatError("metadata q disagrees with construction q")
        if (params.K, params.M, params.N) != arr.shape:
            raise FileFormatError("codes do not have the shape the parameters imply")
    claimed = meta.get("claimed")
    if claimed is not None:
        if not isinstance(claimed, list) or len(claimed) != 4 or (claimed[0], claimed[1], claimed[3]) != arr.shape:
            raise FileFormatError(f"claimed (K, M, Z, N) = {claimed} does not match the codes")
        claimed = tuple(int(c) for c in claimed)
    return CodeSet(params, arr, q, claimed=claimed)


def _loads_csv(text: str) -> CodeSet:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(_CSV_TAG):
        raise FileFormatError("CSV code set must start with a '# zccs-codeset' metadata line")
    try:
        meta = json.loads(lines[0][len(_CSV_TAG):])
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"bad CSV metadata: {exc}") from None
    rows = list(csv.reader(lines[1:]))
    if not rows:
        raise FileFormatError("CSV code set has no header")
    header, body = rows[0], [r for r in rows[1:] if r]
    phase_cols = [i for i, h in enumerate(header) if h.startswith("phase_")]
    if header[:2] != ["code_index", "row_index"] or not phase_cols:
        raise FileFormatError("CSV header must be code_index,row_index,phase_0,...")
    cells = {}
    try:
        for r in body:
            s, b = int(r[0]), int(r[1])
            cells[s, b] = [_phase(r[i]) for i in phase_cols]
    except (ValueError, IndexError):
        raise FileFormatError("unreadable CSV row") from None
    if not cells:
        raise FileFormatError("CSV code set has no sequences")
    K = max(s for s, _ in cells) + 1
    M = max(b for _, b in cells) + 1
    if len(cells) != K * M:
        raise FileFormatError("CSV rows do not cover a full K x M grid")
    return _finish(meta, [[cells[s, b] for b in range(M)] for s in range(K)])


def _phase(tok: str) -> int:
    tok = tok.strip()
    if tok == "+":
        return 0
    if tok in ("-", "−"):
        return 1
    return int(tok)


def loads(text: str) -> CodeSet:
    stripped = text.lstrip()
    if not stripped:
        raise FileFormatError("empty file")
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"invalid JSON: {exc}") from None
        if "codes" not in doc:
            raise FileFormatError("JSON code set has no 'codes' array")
        return _finish({k: v for k, v in doc.items() if k not in ("codes", "codes_complex")}, doc["codes"])
    return _loads_csv(stripped)


def read_codeset(path) -> CodeSet:
    """Read a JSON or CSV code set written by :func:`write_codeset` (or by hand)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from None
    return loads(text)
