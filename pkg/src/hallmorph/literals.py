"""Element literals and serialization for the CLI.

Grammar (whitespace-insensitive):

    element := factor ('*' factor)*
    factor  := 'K[' a1,...,an ']'
             | 'X(' ['M=' modsum] [';' 'P=' projsum] ')'
             | 'u(' same body ')'
    modsum  := label['^'mult] ('+' label['^'mult])*      labels from the catalog
    projsum := P<i>['^'mult] ('+' P<i>['^'mult])*

'*'-products of K/X factors are evaluated in MH_Lambda (the twisted product);
'u' factors multiply in the twisted derived algebra.  Torus elements serialize
as {exponent, scalar} records sorted lexicographically by exponent.
"""

from __future__ import annotations

import re

from .derived import DerivedContext, DHElement
from .hall import HallContext, MHElement
from .repcat import ZERO_CLASS, IsoClass
from .scalar import Scalar
from .torus import TorusElt


class LiteralError(ValueError):
    pass


_FACTOR_RE = re.compile(r"K\[[^\]]*\]|X\([^)]*\)|u\([^)]*\)")


def _split_factors(text: str):
    text = text.replace(" ", "")
    out, pos = [], 0
    while pos < len(text):
        m = _FACTOR_RE.match(text, pos)
        if not m:
            raise LiteralError(f"cannot parse element literal at ...{text[pos:]!r}")
        out.append(m.group(0))
        pos = m.end()
        if pos < len(text):
            if text[pos] != "*":
                raise LiteralError(f"expected '*' between factors in {text!r}")
            pos += 1
    if not out:
        raise LiteralError("empty element literal")
    return out


def _parse_sum(body: str):
    """'S1^2+P1' -> [('S1', 2), ('P1', 1)]; '0' or '' -> []."""
    body = body.strip()
    if body in ("", "0"):
        return []
    items = []
    for piece in body.split("+"):
        if "^" in piece:
            lbl, mult = piece.split("^", 1)
            items.append((lbl, int(mult)))
        else:
            items.append((piece, 1))
    return items


def _parse_projsum(body: str, n: int):
    mult = [0] * n
    for lbl, c in _parse_sum(body):
        m = re.fullmatch(r"P(\d+)", lbl)
        if not m:
            raise LiteralError(f"projective label {lbl!r} must look like P<i>")
        i = int(m.group(1)) - 1
        if not 0 <= i < n:
            raise LiteralError(f"projective index out of range in {lbl!r}")
        mult[i] += c
    return tuple(mult)


def _parse_body(body: str, n: int, cat):
    mparts, pmult = [], (0,) * n
    for field in filter(None, body.split(";")):
        if field.startswith("M="):
            mparts = _parse_sum(field[2:])
        elif field.startswith("P="):
            pmult = _parse_projsum(field[2:], n)
        else:
            raise LiteralError(f"unknown field {field!r} in element literal")
    mcls = cat.make_class(mparts) if mparts else ZERO_CLASS
    return mcls, pmult


def parse_mh_element(hall: HallContext, text: str) -> MHElement:
    """Parse K/X factors and multiply them in MH_Lambda."""
    result = None
    for factor in _split_factors(text):
        if factor.startswith("K["):
            alpha = tuple(
                int(x) for x in factor[2:-1].split(",") if x
            )
            if len(alpha) != hall.n:
                raise LiteralError(f"K needs {hall.n} integers")
            elt = hall.K(alpha)
        elif factor.startswith("X("):
            mcls, pmult = _parse_body(factor[2:-1], hall.n, hall.cat)
            elt = hall.X(mcls, pmult)
        else:
            raise LiteralError("derived u(...) factors are not MH elements")
        result = elt if result is None else hall.mult_twisted(result, elt)
    return result


def parse_dh_element(der: DerivedContext, text: str) -> DHElement:
    """Parse u(...) factors over the framed category; product is twisted."""
    result = None
    for factor in _split_factors(text):
        if not factor.startswith("u("):
            raise LiteralError("derived elements are products of u(...) factors")
        mcls, pmult = _parse_body(factor[2:-1], der.m, der.cat)
        elt = der.u(mcls, pmult)
        result = elt if result is None else der.dh_mult_twisted(result, elt)
    return result


# -- serialization ------------------------------------------------------------


def _proj_label(pmult) -> str:
    if not any(pmult):
        return "0"
    return "+".join(
        f"P{i+1}^{c}" if c > 1 else f"P{i+1}" for i, c in enumerate(pmult) if c
    )


def mh_records(x: MHElement) -> list:
    out = []
    for (alpha, mcls, pmult), c in x.items():
        out.append(
            {
                "alpha": list(alpha),
                "module_label": mcls.label(),
                "proj_label": _proj_label(pmult),
                "scalar": c.as_dict(),
            }
        )
    return out


def mh_from_records(hall: HallContext, records) -> MHElement:
    terms = {}
    for rec in records:
        mparts = _parse_sum(rec["module_label"])
        mcls = hall.cat.make_class(mparts) if mparts else ZERO_CLASS
        pmult = _parse_projsum(
            "" if rec["proj_label"] == "0" else rec["proj_label"], hall.n
        )
        term = hall.term(tuple(rec["alpha"]), mcls, pmult)
        terms[term] = Scalar.from_dict(rec["scalar"], hall.q)
    return MHElement(terms)


def dh_records(x: DHElement) -> list:
    out = []
    for (mcls, pmult), c in x.items():
        out.append(
            {
                "module_label": mcls.label(),
                "proj_label": _proj_label(pmult),
                "scalar": c.as_dict(),
            }
        )
    return out


def torus_records(x: TorusElt) -> list:
    return [
        {"exponent": list(e), "scalar": c.as_dict()}
        for e, c in sorted(x.terms.items())
    ]


def torus_from_records(records, q: int, mode="lambda") -> TorusElt:
    return TorusElt(
        {tuple(r["exponent"]): Scalar.from_dict(r["scalar"], q) for r in records},
        mode,
    )
