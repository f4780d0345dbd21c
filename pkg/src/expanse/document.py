"""Input documents and the monomial string grammar.

    monomial := factor ('*' factor)* | '1'
    factor   := var ('^' uint)?
    var      := 'x' uint ('_' uint)?

``x4_2`` names copy 2 of variable 4 in an expanded ring, where a variable
with a single copy keeps its plain name.  Without a shape ``x5`` is a flat
index.  Indices are 1-based on the wire and 0-based inside the library.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .core import TermOrder, Lex
from .errors import ExpanseError
from .expansion import ExpansionShape


class InputError(ExpanseError, ValueError):
    """Malformed input; ``offset`` is a byte offset into the offending text."""

    def __init__(self, message: str, offset: int | None = None, text: str | None = None):
        self.offset = offset
        self.text = text
        where = f" at byte {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")


_UINT = re.compile(r"[0-9]+")


def _uint(s: str, pos: int, what: str) -> tuple:
    m = _UINT.match(s, pos)
    if not m:
        raise InputError(f"expected {what}", _byte(s, pos), s)
    return int(m.group()), m.end()


def _byte(s: str, pos: int) -> int:
    return len(s[:pos].encode("utf-8"))


def parse_monomial(text: str, n: int | None = None, shape: ExpansionShape | None = None) -> tuple:
    """Exponent vector of a monomial string.

    With ``shape`` the vector lives in the expanded ring and ``x4_2`` is
    allowed; otherwise ``n`` (or the largest index seen) fixes the length.
    """
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if s == "1":
        if shape is None and n is None:
            raise InputError("the monomial 1 needs a declared dimension", _byte(text, lead), text)
        return (0,) * (shape.total if shape else n)
    exps: dict = {}
    pos = 0
    while True:
        if pos >= len(s) or s[pos] != "x":
            raise InputError("expected a variable 'x<index>'", _byte(text, lead + pos), text)
        start = pos
        i, pos = _uint(s, pos + 1, "a variable index")
        j = None
        if pos < len(s) and s[pos] == "_":
            j, pos = _uint(s, pos + 1, "a copy index")
        e = 1
        if pos < len(s) and s[pos] == "^":
            e, pos = _uint(s, pos + 1, "an exponent")
        flat = _flat_index(i, j, n, shape, text, lead + start)
        exps[flat] = exps.get(flat, 0) + e
        if pos == len(s):
            break
        if s[pos] != "*":
            raise InputError("expected '*' between factors", _byte(text, lead + pos), text)
        pos += 1
    dim = shape.total if shape else (n if n is not None else max(exps) + 1)
    if max(exps) >= dim:
        raise InputError(f"variable index exceeds dimension {dim}", None, text)
    out = [0] * dim
    for k, e in exps.items():
        out[k] = e
    return tuple(out)


def _flat_index(i, j, n, shape, text, at):
    if i < 1:
        raise InputError("variable indices start at 1", _byte(text, at), text)
    if j is None and shape is not None:
        # an unsplit variable keeps its plain name
        if not 1 <= i <= shape.n:
            raise InputError(f"variable x{i} outside the {shape.n} blocks", _byte(text, at), text)
        if shape.alpha[i - 1] != 1:
            raise InputError(f"x{i} is split; name a copy as x{i}_<j>", _byte(text, at), text)
        return shape.flat(i - 1, 0)
    if j is None:
        if n is not None and i > n:
            raise InputError(f"variable x{i} outside dimension {n}", _byte(text, at), text)
        return i - 1
    if shape is None:
        raise InputError("copy index given without an expansion shape", _byte(text, at), text)
    if not (1 <= i <= shape.n and 1 <= j <= shape.alpha[i - 1]):
        raise InputError(f"no variable x{i}_{j} in shape {list(shape.alpha)}", _byte(text, at), text)
    return shape.flat(i - 1, j - 1)


def format_monomial(u, shape: ExpansionShape | None = None) -> str:
    """Inverse of :func:`parse_monomial`."""
    parts = []
    for p, e in enumerate(u):
        if not e:
            continue
        if shape is not None and shape.alpha[shape.label(p)[0]] > 1:
            i, j = shape.label(p)
            name = f"x{i + 1}_{j + 1}"
        elif shape is not None:
            name = f"x{shape.label(p)[0] + 1}"
        else:
            name = f"x{p + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def parse_alpha(text: str) -> ExpansionShape:
    try:
        entries = [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"alpha must be comma separated integers, got {text!r}") from None
    try:
        return ExpansionShape(tuple(entries))
    except ValueError as e:
        raise InputError(str(e)) from None


KINDS = ("ideal", "set", "bases")


@dataclass(frozen=True)
class ConfigDocument:
    n: int
    monomials: tuple
    alpha: ExpansionShape | None = None
    kind: str = "set"
    order: TermOrder | None = None
    extra: dict | None = None

    def to_json(self) -> dict:
        out = {"n": self.n, "kind": self.kind, "monomials": [list(u) for u in self.monomials]}
        if self.alpha is not None:
            out["alpha"] = list(self.alpha.alpha)
        return out


def load_document(raw: bytes) -> ConfigDocument:
    """Parse a UTF-8 JSON document with fields n, monomials, alpha, kind, order."""
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise InputError("input is not valid UTF-8", e.start) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg}", _byte(text, e.pos)) from None
    if not isinstance(data, dict):
        raise InputError("document must be a JSON object")
    kind = data.get("kind", "set")
    if kind not in KINDS:
        raise InputError(f"kind must be one of {KINDS}, got {kind!r}")
    alpha = None
    if data.get("alpha") is not None:
        a = data["alpha"]
        if not isinstance(a, list) or not all(isinstance(k, int) and not isinstance(k, bool) for k in a):
            raise InputError("alpha must be a list of integers")
        try:
            alpha = ExpansionShape(tuple(a))
        except ValueError as e:
            raise InputError(str(e)) from None
    n = data.get("n")
    if n is not None and (not isinstance(n, int) or isinstance(n, bool) or n < 1):
        raise InputError("n must be a positive integer")
    rows = data.get("monomials")
    if not isinstance(rows, list) or not rows:
        raise InputError("monomials must be a nonempty list")
    vectors = []
    for k, row in enumerate(rows):
        if isinstance(row, str):
            try:
                vectors.append(parse_monomial(row, n))
            except InputError as e:
                raise InputError(f"monomials[{k}]: {e}") from None
        elif isinstance(row, list) and all(isinstance(e, int) and not isinstance(e, bool) for e in row):
            if any(e < 0 for e in row):
                raise InputError(f"monomials[{k}] has a negative exponent")
            vectors.append(tuple(row))
        else:
            raise InputError(f"monomials[{k}] must be a string or a list of integers")
    if n is None:
        n = max(len(v) for v in vectors)
        vectors = [v + (0,) * (n - len(v)) for v in vectors]
    for k, v in enumerate(vectors):
        if len(v) != n:
            raise InputError(f"monomials[{k}] has length {len(v)}, expected {n}")
    if alpha is not None and alpha.n != n:
        raise InputError(f"alpha has {alpha.n} entries, expected {n}")
    if kind == "bases" and len({sum(v) for v in vectors}) > 1:
        raise InputError("bases must all have the same modulus")
    order = _parse_order(data.get("order"), n)
    extra = {k: v for k, v in data.items() if k not in ("n", "monomials", "alpha", "kind", "order")}
    return ConfigDocument(n, tuple(vectors), alpha, kind, order, extra or None)


def _parse_order(spec, n):
    """Only orders on the x-variables are accepted: lex with an optional permutation.

    The y-order is always the one induced by it.
    """
    if spec is None or spec == "lex":
        return None
    if isinstance(spec, dict) and spec.get("kind") == "lex":
        perm = spec.get("perm")
        if perm is None:
            return None
        if sorted(perm) != list(range(1, n + 1)):
            raise InputError(f"order.perm must be a permutation of 1..{n}")
        return Lex(tuple(p - 1 for p in perm))
    raise InputError(f"unsupported order {spec!r}; use 'lex' or {{'kind': 'lex', 'perm': [...]}}")
