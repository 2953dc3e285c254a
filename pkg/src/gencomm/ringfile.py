"""Plain-text ring presentations.

Example::

    name: M2(GF2)
    dim: 4
    modulus: 2
    labels: e11 e12 e21 e22
    unity: 1 0 0 1
    products:
      1 1 -> 1:1
      1 2 -> 2:1

Indices in ``products`` are 1-based; pairs that are not listed multiply to 0.
``#`` starts a comment.  An optional ``scales:`` line gives display multipliers.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError
from .ring import Ring, RingPresentation, make_ring

_FIELDS = ("name", "dim", "modulus", "labels", "unity", "scales")
_PRODUCT_RE = re.compile(r"^(\d+)\s+(\d+)\s*->\s*(.*)$")


def _int(text: str, what: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"line {lineno}: {what} must be an integer, got {text!r}") from None


def parse_ring_text(text: str) -> RingPresentation:
    fields: dict[str, tuple[str, int]] = {}
    products: list[tuple[str, int]] = []
    in_products = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if sep and key in _FIELDS + ("products",):
            in_products = key == "products"
            if key in fields or (key == "products" and products):
                raise ParseError(f"line {lineno}: duplicate field {key!r}")
            if in_products:
                if value.strip():
                    products.append((value.strip(), lineno))
            else:
                fields[key] = (value.strip(), lineno)
            continue
        if in_products:
            products.append((line, lineno))
            continue
        raise ParseError(f"line {lineno}: unexpected content {line!r}")

    for req in ("dim", "modulus"):
        if req not in fields:
            raise ParseError(f"missing field {req!r}")
    dim = _int(fields["dim"][0], "dim", fields["dim"][1])
    modulus = _int(fields["modulus"][0], "modulus", fields["modulus"][1])
    if dim < 1:
        raise ParseError("dim must be >= 1")
    if modulus < 0:
        raise ParseError("modulus must be >= 0")

    def canonical(c: int, lineno: int) -> int:
        if modulus and not 0 <= c < modulus:
            raise ParseError(f"line {lineno}: {c} is not a canonical residue modulo {modulus}")
        return c

    labels = None
    if "labels" in fields:
        labels = fields["labels"][0].replace(",", " ").split()
        if len(labels) != dim:
            raise ParseError(f"{len(labels)} labels for dim {dim}")
    unity = None
    if "unity" in fields:
        vals, ln = fields["unity"]
        unity = [canonical(_int(v, "unity entry", ln), ln) for v in vals.replace(",", " ").split()]
        if len(unity) != dim:
            raise ParseError(f"line {ln}: unity has {len(unity)} entries, expected {dim}")
    scales = None
    if "scales" in fields:
        vals, ln = fields["scales"]
        scales = [_int(v, "scale", ln) for v in vals.replace(",", " ").split()]

    consts = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for line, ln in products:
        m = _PRODUCT_RE.match(line)
        if not m:
            raise ParseError(f"line {ln}: expected 'i j -> k:c ...', got {line!r}")
        i, j = int(m.group(1)), int(m.group(2))
        for idx in (i, j):
            if not 1 <= idx <= dim:
                raise ParseError(f"line {ln}: index {idx} out of range 1..{dim}")
        if (i, j) in seen:
            raise ParseError(f"line {ln}: product {i} {j} given twice")
        seen.add((i, j))
        out = consts[i - 1][j - 1]
        for term in m.group(3).split():
            k_txt, colon, c_txt = term.partition(":")
            if not colon:
                raise ParseError(f"line {ln}: term {term!r} is not 'k:c'")
            k, c = _int(k_txt, "index", ln), _int(c_txt, "coefficient", ln)
            if not 1 <= k <= dim:
                raise ParseError(f"line {ln}: index {k} out of range 1..{dim}")
            if out[k - 1]:
                raise ParseError(f"line {ln}: index {k} repeated")
            out[k - 1] = canonical(c, ln)

    name = fields.get("name", ("R", 0))[0] or "R"
    return RingPresentation(dim, modulus, consts, labels, unity, name, scales)


def load_ring(path: str | Path) -> Ring:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return make_ring(parse_ring_text(text))


def dump_ring(ring: Ring) -> str:
    lines = [
        f"name: {ring.name}",
        f"dim: {ring.dim}",
        f"modulus: {ring.modulus}",
        f"labels: {' '.join(ring.labels)}",
    ]
    if any(s != 1 for s in ring.scales):
        lines.append(f"scales: {' '.join(map(str, ring.scales))}")
    if ring.unity is not None:
        lines.append(f"unity: {' '.join(map(str, ring.unity))}")
    lines.append("products:")
    for i in range(ring.dim):
        for j in range(ring.dim):
            terms = [f"{k + 1}:{c}" for k, c in enumerate(ring.table[i][j]) if c]
            if terms:
                lines.append(f"  {i + 1} {j + 1} -> {' '.join(terms)}")
    return "\n".join(lines) + "\n"
