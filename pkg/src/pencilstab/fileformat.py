"""JSON pencil files.

    {"field": "QQ" | "GF(p)", "n": 5,
     "f": [[1, 1, "1"], [2, 3, "1"], [5, 5, "t"]],
     "g": [[4, 4, "1"], [1, 3, "1"], [2, 2, "t^2"]],
     "name": "...", "comment": "..."}

Entries are (i, j, literal) with 1 <= i <= j <= n, where the literal is the
coefficient of the monomial x_i x_j written in the literal syntax of the ring
module.  Printing sorts entries by (i, j) and drops zeros, so parse and print
are inverse to each other on canonical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .pencil import Pencil, QuadraticForm, monomials
from .ring import FieldSpec, LiteralSyntaxError, format_literal, parse_literal


class PencilFileError(ValueError):
    pass


@dataclass(frozen=True)
class PencilFile:
    field: FieldSpec
    n: int
    f: tuple  # ((i, j, LaurentScalar), ...) 1-based, sorted
    g: tuple
    name: str | None = None
    comment: str | None = None

    def to_pencil(self):
        return Pencil(self._form(self.f), self._form(self.g))

    def _form(self, entries):
        return QuadraticForm.from_entries(self.field, self.n, {(i - 1, j - 1): c for i, j, c in entries})

    @classmethod
    def from_pencil(cls, P, name=None, comment=None):
        def entries(q):
            return tuple((i + 1, j + 1, c) for (i, j), c in zip(monomials(q.n), q.coeffs) if c)

        return cls(P.field, P.n, entries(P.f), entries(P.g), name, comment)

    def to_json(self):
        data = {
            "field": str(self.field),
            "n": self.n,
            "f": [[i, j, format_literal(c)] for i, j, c in self.f],
            "g": [[i, j, format_literal(c)] for i, j, c in self.g],
        }
        if self.name is not None:
            data["name"] = self.name
        if self.comment is not None:
            data["comment"] = self.comment
        return data

    def dumps(self):
        return json.dumps(self.to_json(), indent=2) + "\n"


def _entries(field, n, raw, label, max_degree):
    if not isinstance(raw, list):
        raise PencilFileError(f"{label}: expected a list of [i, j, literal] entries")
    seen = {}
    for k, item in enumerate(raw):
        where = f"{label}[{k}]"
        if not (isinstance(item, list) and len(item) == 3):
            raise PencilFileError(f"{where}: expected [i, j, literal]")
        i, j, lit = item
        if not (isinstance(i, int) and isinstance(j, int)) or isinstance(i, bool) or isinstance(j, bool):
            raise PencilFileError(f"{where}: indices must be integers")
        if not 1 <= i <= j <= n:
            raise PencilFileError(f"{where}: need 1 <= i <= j <= n, got ({i}, {j})")
        if (i, j) in seen:
            raise PencilFileError(f"{where}: duplicate entry ({i}, {j}), first at {label}[{seen[(i, j)]}]")
        if not isinstance(lit, str):
            raise PencilFileError(f"{where}: literal must be a string")
        try:
            c = parse_literal(field, lit, allow_negative=False, max_degree=max_degree)
        except LiteralSyntaxError as exc:
            raise PencilFileError(f"{where}: {exc}") from exc
        seen[(i, j)] = k
        if c:
            yield (i, j, c)


def parse_pencil_data(data, max_degree=None):
    if not isinstance(data, dict):
        raise PencilFileError("top level must be a JSON object")
    unknown = set(data) - {"field", "n", "f", "g", "name", "comment"}
    if unknown:
        raise PencilFileError(f"unknown keys: {sorted(unknown)}")
    for key in ("field", "n", "f", "g"):
        if key not in data:
            raise PencilFileError(f"missing key {key!r}")
    if not isinstance(data["field"], str):
        raise PencilFileError("field must be a string such as 'QQ' or 'GF(7)'")
    try:
        field = FieldSpec.parse(data["field"])
    except ValueError as exc:
        raise PencilFileError(f"field: {exc}") from exc
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise PencilFileError("n must be a positive integer")
    f = tuple(sorted(_entries(field, n, data["f"], "f", max_degree), key=lambda e: e[:2]))
    g = tuple(sorted(_entries(field, n, data["g"], "g", max_degree), key=lambda e: e[:2]))
    for key in ("name", "comment"):
        if key in data and not isinstance(data[key], str):
            raise PencilFileError(f"{key} must be a string")
    return PencilFile(field, n, f, g, data.get("name"), data.get("comment"))


def parse_pencil_file(text, max_degree=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PencilFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_pencil_data(data, max_degree)


def load(path, max_degree=None):
    with open(path, encoding="utf-8") as fh:
        return parse_pencil_file(fh.read(), max_degree)
