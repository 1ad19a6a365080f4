"""Loading, validation, and canonical rendering.

Presentation files are JSON: {"name", "generators": [{"symbol",
"degree"}], "brackets": [{"args": [...], "value": [{"symbol", "coeff"}]}],
optional "max_arity"}; coefficients are strings "p/q" in lowest terms.
Unlisted brackets are zero.  Loading validates degree homogeneity and
reports failures with file context.  Rendering is canonical and
byte-stable; parse(render(x)) == x on forms, vectors, presentations,
and simplices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from linfty.algebra import GVector, LInftyAlgebra, TensorElement
from linfty.forms import Form, parse_form
from linfty.mc_gamma import SimplexElement


class LoadError(ValueError):
    """A structured diagnostic for a failed load, with file context."""

    def __init__(self, path, message):
        self.path = str(path)
        self.message = message
        super().__init__(f"{path}: {message}")


@dataclass
class PresentationFile:
    """A loaded presentation plus its validation summary."""

    path: str
    algebra: LInftyAlgebra
    nilpotency_index: int | None

    def summary(self) -> str:
        nil = (
            f"nilpotent of index {self.nilpotency_index}"
            if self.nilpotency_index is not None
            else "NOT nilpotent within the iteration cap"
        )
        return (
            f"{self.algebra.name}: {self.algebra.dim} generators, "
            f"max arity {self.algebra.max_arity}, {nil}"
        )


def rational_to_str(value: Fraction) -> str:
    return str(value)


def rational_from_str(text: str) -> Fraction:
    return Fraction(text)


def presentation_to_data(algebra: LInftyAlgebra) -> dict:
    brackets = []
    for key in sorted(
        algebra.brackets, key=lambda k: (len(k), [algebra.index[s] for s in k])
    ):
        value = algebra.brackets[key]
        brackets.append(
            {
                "args": list(key),
                "value": [
                    {"symbol": sym, "coeff": rational_to_str(value[sym])}
                    for sym in algebra.symbols
                    if sym in value
                ],
            }
        )
    return {
        "name": algebra.name,
        "generators": [
            {"symbol": sym, "degree": algebra.degrees[sym]}
            for sym in algebra.symbols
        ],
        "brackets": brackets,
        "max_arity": algebra.max_arity,
    }


def presentation_from_data(data: dict, path="<memory>") -> LInftyAlgebra:
    try:
        name = data["name"]
        generators = [
            (entry["symbol"], int(entry["degree"]))
            for entry in data.get("generators", [])
        ]
        brackets = {}
        for entry in data.get("brackets", []):
            args = tuple(entry["args"])
            value = {
                item["symbol"]: rational_from_str(item["coeff"])
                for item in entry["value"]
            }
            if args in brackets:
                raise ValueError(f"bracket on {args} specified twice")
            brackets[args] = value
        max_arity = data.get("max_arity")
    except (KeyError, TypeError, ValueError) as exc:
        raise LoadError(path, f"malformed presentation: {exc}") from exc
    try:
        return LInftyAlgebra(name, generators, brackets, max_arity=max_arity)
    except ValueError as exc:
        raise LoadError(path, str(exc)) from exc


def load_presentation(path) -> PresentationFile:
    """Parse and validate a presentation file."""
    path = Path(path)
    if not path.exists():
        raise LoadError(path, "file does not exist")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise LoadError(path, f"invalid JSON at line {exc.lineno}: {exc.msg}")
    algebra = presentation_from_data(data, path)
    report = algebra.lower_central()
    return PresentationFile(
        path=str(path),
        algebra=algebra,
        nilpotency_index=report.nilpotency_index,
    )


def save_presentation(algebra: LInftyAlgebra, path):
    Path(path).write_text(
        json.dumps(presentation_to_data(algebra), indent=2) + "\n"
    )


# -- vectors -------------------------------------------------------------


def render_vector(v: GVector) -> str:
    return v.render()


def parse_vector(text: str, algebra: LInftyAlgebra) -> GVector:
    """Inverse of GVector.render: a +/- separated list of
    coefficient*symbol factors."""
    text = text.strip()
    if text in ("", "0"):
        return algebra.zero_vector()
    text = text.replace(" - ", " + -").replace("- ", "-")
    coeffs: dict = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = Fraction(1)
        while chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:].strip()
        if "*" in chunk:
            coeff_text, sym = chunk.split("*", 1)
            coeff = sign * Fraction(coeff_text.strip())
        else:
            sym, coeff = chunk, sign
        sym = sym.strip()
        if sym not in algebra.index:
            raise ValueError(f"unknown symbol {sym!r}")
        coeffs[sym] = coeffs.get(sym, Fraction(0)) + coeff
    return GVector(algebra, coeffs)


# -- simplices -------------------------------------------------------------


def simplex_to_data(simplex: SimplexElement) -> dict:
    return {
        "algebra": simplex.algebra.name,
        "n": simplex.n,
        "components": [
            {"generator": sym, "form": simplex.value.comps[sym].render()}
            for sym in simplex.algebra.symbols
            if sym in simplex.value.comps
        ],
    }


def simplex_from_data(data: dict, algebra: LInftyAlgebra,
                      validate: bool = True) -> SimplexElement:
    if data.get("algebra") != algebra.name:
        raise ValueError(
            f"simplex belongs to algebra {data.get('algebra')!r}, "
            f"expected {algebra.name!r}"
        )
    n = int(data["n"])
    comps = {}
    for entry in data.get("components", []):
        comps[entry["generator"]] = parse_form(entry["form"], n)
    return SimplexElement(
        algebra, n, TensorElement(algebra, n, comps), validate=validate
    )


def load_simplex(path, algebra: LInftyAlgebra) -> SimplexElement:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise LoadError(path, f"invalid JSON at line {exc.lineno}: {exc.msg}")
    try:
        return simplex_from_data(data, algebra)
    except (KeyError, TypeError, ValueError) as exc:
        raise LoadError(path, str(exc)) from exc


def save_simplex(simplex: SimplexElement, path):
    Path(path).write_text(json.dumps(simplex_to_data(simplex), indent=2) + "\n")


def render(value) -> str:
    """Canonical text rendering for any supported value."""
    if isinstance(value, (Form, GVector, TensorElement, SimplexElement)):
        return value.render()
    if isinstance(value, Fraction):
        return rational_to_str(value)
    raise TypeError(f"no canonical rendering for {type(value).__name__}")
