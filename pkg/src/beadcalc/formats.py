"""JSON readers and writers for diagrams, combinations and beaded combinations."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .beads import (
    BeadedDiagram,
    GBeadedForm,
    LaurentPoly,
    expand_multilinear,
    key_coords,
    normal_exponents,
    parse_laurent,
    push_normal_form,
)
from .canon import canonicalize, decode
from .diagram import Diagram, validate
from .errors import ValidationError
from .linear import LinComb, as_fraction


def parse_coeff(raw) -> Fraction:
    try:
        return as_fraction(raw if not isinstance(raw, str) else raw.strip())
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError(f"bad coefficient {raw!r}") from None


def _key_from_hex(text: str) -> bytes:
    try:
        key = bytes.fromhex(text)
    except ValueError:
        raise ValidationError(f"not a hex encoding: {text!r}") from None
    decode(key)
    return key


def parse_beads(d: Diagram, raw) -> BeadedDiagram:
    if not isinstance(raw, dict):
        raise ValidationError("beads must be an object edge -> polynomial")
    beads: dict[int, LaurentPoly] = {}
    for k, text in raw.items():
        try:
            beads[int(k)] = parse_laurent(text)
        except ValueError:
            raise ValidationError(f"bad bead edge index {k!r}") from None
    return BeadedDiagram.from_mapping(d, beads)


def parse_lincomb(data) -> LinComb:
    """``[{"coeff": "p/q", "diagram": <object or hex>}, ...]`` over classical diagrams."""
    if not isinstance(data, list):
        raise ValidationError("a combination file holds a JSON array")
    acc = []
    for entry in data:
        if not isinstance(entry, dict) or "diagram" not in entry:
            raise ValidationError("each term needs a 'diagram'")
        c = parse_coeff(entry.get("coeff", 1))
        diag = entry["diagram"]
        if isinstance(diag, str):
            acc.append(LinComb({_key_from_hex(diag): c}))
        else:
            acc.append(LinComb.of(canonicalize(validate(diag)), c))
    return LinComb.sum(acc)


def parse_beaded_lincomb(data) -> LinComb:
    """Combination of beaded diagrams, expanded multilinearly into normal forms.

    A term's diagram may carry ``"beads"`` (Laurent polynomials) or
    ``"exponents"`` (one integer per edge); without either it has bead 1
    everywhere.  A hex string names a canonical beaded form directly.
    """
    if not isinstance(data, list):
        raise ValidationError("a combination file holds a JSON array")
    acc = []
    for entry in data:
        if not isinstance(entry, dict) or "diagram" not in entry:
            raise ValidationError("each term needs a 'diagram'")
        c = parse_coeff(entry.get("coeff", 1))
        diag = entry["diagram"]
        if isinstance(diag, str):
            key = _key_from_hex(diag)
            key_coords(key)
            acc.append(LinComb({key: c}))
            continue
        if not isinstance(diag, dict):
            raise ValidationError("diagram must be an object or hex string")
        d = validate(diag)
        if "exponents" in diag:
            x = [int(e) for e in diag["exponents"]]
            acc.append(LinComb.of(push_normal_form(d, x), c))  # type: ignore[arg-type]
        else:
            bd = parse_beads(d, diag.get("beads", {}))
            acc.append(expand_multilinear(bd).scale(c))
    return LinComb.sum(acc)


def coeff_text(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def lincomb_to_json(v: LinComb) -> list[dict[str, Any]]:
    out = []
    for key, c in v.items():
        out.append({"coeff": coeff_text(c), "diagram": decode(key).to_json(), "hex": key.hex()})
    return out


def beaded_lincomb_to_json(v: LinComb) -> list[dict[str, Any]]:
    out = []
    for key, c in v.items():
        g = GBeadedForm(key, 1)
        d = g.diagram()
        x = normal_exponents(d, g.coords)
        obj = d.to_json()
        obj["beads"] = {str(k): str(LaurentPoly.monomial(e)) for k, e in enumerate(x) if e}
        out.append(
            {
                "coeff": coeff_text(c),
                "diagram": obj,
                "class": list(g.coords),
                "bead_degree": g.bead_degree,
                "hex": key.hex(),
            }
        )
    return out
