"""The structure-constant JSON interchange format.

One file shape serves algebras, Poisson inputs, and product candidates:

    {
      "name": "...",
      "basis": [{"id": "L(1,0)", "family": "L", "grade": [1, 0], "parity": 0}, ...],
      "brackets": [{"x": "...", "y": "...", "terms": [{"key": "...", "coeff": "p/q"}]}, ...],
      "products": [...same shape...]          # optional
    }

Coefficients are reduced fraction strings ("3", "-1/2").  Basis entries are
sorted canonically, bracket pairs appear in canonical order only, and the
serializer is deterministic, so generate -> parse -> re-serialize is
byte-identical.  A missing "products" array parses as the zero product;
product entries are allowed out of canonical order so that the
supercommutativity audit can inspect them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import BasisKey, SuperAlgebra, Terms, parse_scalar
from .errors import AlgebraFormatError
from .grades import Window
from .kantor import PoissonAlgebraInput
from .tpa import ProductCandidate

Entry = tuple[BasisKey, BasisKey, Terms]


@dataclass(frozen=True)
class AlgebraFile:
    """Parsed contents of one interchange file."""

    name: str
    basis: tuple[BasisKey, ...]
    brackets: tuple[Entry, ...]
    products: tuple[Entry, ...] | None

    def window(self) -> Window:
        n = max((max(abs(k.grade[0]), abs(k.grade[1])) for k in self.basis), default=1)
        return Window(max(n, 1))

    def to_superalgebra(self) -> SuperAlgebra:
        table = {}
        for x, y, terms in self.brackets:
            if (y, x) < (x, y):
                raise AlgebraFormatError(f"bracket pair ({x.id}, {y.id}) not canonical")
            if (x, y) in table:
                raise AlgebraFormatError(f"duplicate bracket pair ({x.id}, {y.id})")
            table[(x, y)] = dict(terms)
        return SuperAlgebra(self.name, self.window(), self.basis, table)

    def to_product_candidate(self) -> ProductCandidate:
        entries = [(x, y, dict(t)) for x, y, t in (self.products or ())]
        return ProductCandidate.from_entries(self.name, self.window(), self.basis, entries)

    def to_poisson_input(self) -> PoissonAlgebraInput:
        if self.products is None:
            raise AlgebraFormatError("Poisson input needs a products array")
        lie = {}
        for x, y, terms in self.brackets:
            lie[(x, y)] = dict(terms)
        product = {}
        for x, y, terms in self.products:
            key = (x, y) if (x, y) <= (y, x) else (y, x)
            product[key] = dict(terms)
        return PoissonAlgebraInput(self.name, self.window(), self.basis, product, lie)


def from_superalgebra(alg: SuperAlgebra, products: tuple[Entry, ...] | None = None) -> AlgebraFile:
    brackets = tuple(
        (x, y, dict(terms)) for (x, y), terms in sorted(alg.brackets.items())
    )
    return AlgebraFile(alg.name, alg.basis, brackets, products)


def from_poisson_input(p: PoissonAlgebraInput) -> AlgebraFile:
    brackets = tuple((x, y, dict(t)) for (x, y), t in sorted(p.lie.items()))
    products = tuple((x, y, dict(t)) for (x, y), t in sorted(p.product.items()))
    return AlgebraFile(p.name, p.basis, brackets, products)


def _entry_json(by_key: dict[BasisKey, str], x: BasisKey, y: BasisKey, terms: Terms) -> dict:
    return {
        "x": by_key[x],
        "y": by_key[y],
        "terms": [
            {"key": by_key[k], "coeff": str(c)} for k, c in sorted(terms.items())
        ],
    }


def dumps(f: AlgebraFile) -> str:
    """Canonical serialization: sorted basis, canonical entry order, indent 2."""
    basis = sorted(f.basis)
    by_key = {k: k.id for k in basis}
    doc = {
        "name": f.name,
        "basis": [
            {"id": k.id, "family": k.family, "grade": list(k.grade), "parity": k.parity}
            for k in basis
        ],
        "brackets": [_entry_json(by_key, *e) for e in sorted(f.brackets, key=lambda e: (e[0], e[1]))],
    }
    if f.products is not None:
        doc["products"] = [
            _entry_json(by_key, *e) for e in sorted(f.products, key=lambda e: (e[0], e[1]))
        ]
    return json.dumps(doc, indent=2) + "\n"


def _parse_terms(raw, ids: dict[str, BasisKey], where: str) -> Terms:
    if not isinstance(raw, list):
        raise AlgebraFormatError(f"{where}: terms must be a list")
    terms: Terms = {}
    for t in raw:
        try:
            key = ids[t["key"]]
            coeff = parse_scalar(t["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraFormatError(f"{where}: bad term {t!r}") from exc
        if coeff == 0:
            raise AlgebraFormatError(f"{where}: stored zero coefficient for {t['key']}")
        if key in terms:
            raise AlgebraFormatError(f"{where}: duplicate term key {t['key']}")
        terms[key] = coeff
    return terms


def _parse_entries(raw, ids: dict[str, BasisKey], label: str) -> tuple[Entry, ...]:
    if not isinstance(raw, list):
        raise AlgebraFormatError(f"{label} must be a list")
    entries = []
    for i, e in enumerate(raw):
        where = f"{label}[{i}]"
        try:
            x = ids[e["x"]]
            y = ids[e["y"]]
        except (KeyError, TypeError) as exc:
            raise AlgebraFormatError(f"{where}: unknown pair ids") from exc
        entries.append((x, y, _parse_terms(e.get("terms", []), ids, where)))
    return tuple(entries)


def loads(text: str) -> AlgebraFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise AlgebraFormatError("top level must be an object")
    name = doc.get("name")
    if not isinstance(name, str):
        raise AlgebraFormatError("missing or non-string name")
    ids: dict[str, BasisKey] = {}
    basis = []
    for i, b in enumerate(doc.get("basis", [])):
        try:
            grade = b["grade"]
            key = BasisKey(str(b["family"]), (int(grade[0]), int(grade[1])), int(b["parity"]))
            bid = str(b["id"])
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise AlgebraFormatError(f"basis[{i}]: malformed entry") from exc
        if key.parity not in (0, 1):
            raise AlgebraFormatError(f"basis[{i}]: parity must be 0 or 1")
        if key.grade == (0, 0):
            raise AlgebraFormatError(f"basis[{i}]: grade (0,0) is excluded by convention")
        if bid in ids:
            raise AlgebraFormatError(f"basis[{i}]: duplicate id {bid}")
        ids[bid] = key
        basis.append(key)
    if len(set(basis)) != len(basis):
        raise AlgebraFormatError("duplicate basis keys")
    brackets = _parse_entries(doc.get("brackets", []), ids, "brackets")
    products = None
    if "products" in doc:
        products = _parse_entries(doc["products"], ids, "products")
    return AlgebraFile(name, tuple(sorted(basis)), brackets, products)


def load_path(path) -> AlgebraFile:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dump_path(f: AlgebraFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(f))
