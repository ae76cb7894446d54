"""The polynomial text grammar shared by all file formats.

A polynomial is a ``+``-separated sum of terms.  A term is an optional integer
coefficient followed by ``*``-joined factors ``v`` or ``v^K``; a bare integer is
a constant.  The integer encodes a field element through its base-p digits.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .field import FiniteField
from .mpoly import MPoly
from .poly import Polynomial

_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9']*)(?:\^(\d+))?$")


def _parse_terms(text: str, field: FiniteField, variables: tuple[str, ...]):
    text = "".join(text.split())
    if not text:
        raise ParseError("empty polynomial")
    if "-" in text:
        raise ParseError("only '+' is allowed between terms")
    terms: dict[tuple[int, ...], int] = {}
    for raw in text.split("+"):
        if not raw:
            raise ParseError(f"empty term in {text!r}")
        coeff = 1
        exps = [0] * len(variables)
        for k, piece in enumerate(raw.split("*")):
            if not piece:
                raise ParseError(f"malformed term {raw!r}")
            if piece.isdigit():
                if k != 0:
                    raise ParseError(f"coefficient must lead the term in {raw!r}")
                coeff = int(piece)
                if coeff >= field.order:
                    raise ParseError(f"coefficient {coeff} is not an element of {field!r}")
                continue
            m = _FACTOR.match(piece)
            if not m:
                raise ParseError(f"malformed factor {piece!r}")
            name, power = m.group(1), int(m.group(2) or 1)
            if name not in variables:
                raise ParseError(f"unknown variable {name!r}")
            exps[variables.index(name)] += power
        key = tuple(exps)
        terms[key] = field.add(terms.get(key, 0), coeff)
    return terms


def parse_poly(text: str, field: FiniteField, var: str = "t") -> Polynomial:
    """Parse a univariate polynomial such as ``1 + t + 3*t^4``."""
    terms = _parse_terms(text, field, (var,))
    deg = max((e[0] for e in terms), default=0)
    coeffs = [0] * (deg + 1)
    for (e,), c in terms.items():
        coeffs[e] = c
    return Polynomial(field, coeffs, var)


def parse_mpoly(text: str, field: FiniteField, variables) -> MPoly:
    """Parse a multivariate polynomial such as ``z^2 + x*y``."""
    variables = tuple(variables)
    return MPoly(field, variables, _parse_terms(text, field, variables))
