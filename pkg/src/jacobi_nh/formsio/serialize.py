r"""
JSON documents for exact Fourier data.

A form document looks like::

    {"format": "jacobi-nh/1", "kind": "form", "h": 2, "k": 4, "s": 0,
     "level": 1, "two_m": [[2, -1], [-1, 2]], "trunc": 10,
     "coeffs": [{"n_num": 1, "n_den": 1, "r": [0, 1],
                 "value": [[a, nu_1, ..., nu_h, num, den], ...]}, ...]}

Nearly holomorphic data adds ``"alpha"`` and ``"beta"`` exponents to a
coefficient entry.  Output is canonical (sorted keys, sorted entries), so a
serialize / deserialize round trip is bit-exact.
"""

import json
from fractions import Fraction

from ..errors import JacobiError, ParseError
from ..exactcore import HalfIntSymMatrix, MultiIndexPair
from ..nhfun import FourierPoly, NearlyHoloElt
from ..scalarproj import NHDecomposition
from ..vvsplit import ComponentTuple
from .data import JacobiFormData

__all__ = [
    "FORMAT",
    "serialize",
    "deserialize",
    "serialize_nh",
    "deserialize_nh",
    "serialize_components",
    "deserialize_components",
    "serialize_decomposition",
    "deserialize_decomposition",
    "load",
    "dump",
]

FORMAT = "jacobi-nh/1"


def _dumps(doc):
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _coeff_entries(terms, h):
    """``terms``: {(nu, r, n, rv, mono): c} -> sorted list of JSON entries."""
    groups = {}
    for (nu, r, n, rv, mono), c in terms.items():
        groups.setdefault((n, rv, nu, r), []).append(list(mono) + [c.numerator, c.denominator])
    out = []
    for (n, rv, nu, r) in sorted(groups):
        entry = {"n_num": n.numerator, "n_den": n.denominator, "r": list(rv), "value": sorted(groups[(n, rv, nu, r)])}
        if any(nu) or r:
            entry["alpha"] = list(nu)
            entry["beta"] = r
        out.append(entry)
    return out


def _header(h, k, s, level, m, trunc, kind):
    return {"format": FORMAT, "kind": kind, "h": h, "k": k, "s": s, "level": level, "two_m": m.two_m(), "trunc": trunc}


def serialize(phi):
    """Bytes of a :class:`JacobiFormData`."""
    terms = {((0,) * phi.h, 0, n, rv, mono): c for (n, rv, mono), c in phi.coeffs.coeffs.items()}
    doc = _header(phi.h, phi.k, phi.s, phi.level, phi.m, phi.trunc, "form")
    doc["coeffs"] = _coeff_entries(terms, phi.h)
    return _dumps(doc)


def serialize_nh(f, trunc=None):
    """Bytes of a nearly holomorphic element (``trunc`` defaults to its top mode)."""
    if trunc is None:
        trunc = max((n for n, _ in f.modes()), default=0)
        trunc = int(trunc) if Fraction(trunc).denominator == 1 else str(trunc)
    doc = _header(f.h, f.k, f.s, f.level, f.m, trunc, "form")
    doc["coeffs"] = _coeff_entries(f.terms, f.h)
    return _dumps(doc)


def _req(doc, key, typ, loc):
    if not isinstance(doc, dict):
        raise ParseError("expected an object", loc)
    if key not in doc:
        raise ParseError(f"missing field {key!r}", loc)
    val = doc[key]
    if typ is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ParseError("expected an integer", f"{loc}.{key}")
    if typ is list and not isinstance(val, list):
        raise ParseError("expected a list", f"{loc}.{key}")
    return val


def _int_list(val, length, loc):
    if not isinstance(val, list) or len(val) != length or any(isinstance(x, bool) or not isinstance(x, int) for x in val):
        raise ParseError(f"expected a list of {length} integers", loc)
    return val


def _parse_form_doc(doc, loc="$", where=None):
    if not isinstance(doc, dict):
        raise ParseError("expected an object", loc)
    if doc.get("format") != FORMAT:
        raise ParseError(f"unknown format {doc.get('format')!r}", f"{loc}.format")
    h = _req(doc, "h", int, loc)
    k = _req(doc, "k", int, loc)
    s = _req(doc, "s", int, loc)
    level = _req(doc, "level", int, loc)
    trunc = doc.get("trunc", 0)
    if h < 1 or s < 0 or level < 1:
        raise ParseError("h and level must be positive, s non-negative", loc)
    two_m = _req(doc, "two_m", list, loc)
    if len(two_m) != h:
        raise ParseError(f"two_m must have {h} rows", f"{loc}.two_m")
    for i, row in enumerate(two_m):
        _int_list(row, h, f"{loc}.two_m[{i}]")
    try:
        m = HalfIntSymMatrix.from_two_m(two_m)
    except JacobiError as exc:
        raise ParseError(str(exc), f"{loc}.two_m") from exc
    terms = {}
    for i, entry in enumerate(_req(doc, "coeffs", list, loc)):
        eloc = f"{loc}.coeffs[{i}]"
        n_num = _req(entry, "n_num", int, eloc)
        n_den = _req(entry, "n_den", int, eloc)
        if n_den <= 0:
            raise ParseError("n_den must be positive", f"{eloc}.n_den")
        n = Fraction(n_num, n_den)
        if (n * level).denominator != 1:
            raise ParseError(f"n = {n} is not in (1/{level})Z", eloc)
        rv = tuple(_int_list(_req(entry, "r", list, eloc), h, f"{eloc}.r"))
        if where is not None:
            where.setdefault((n, rv), eloc)
        nu = tuple(_int_list(entry.get("alpha", [0] * h), h, f"{eloc}.alpha"))
        beta = entry.get("beta", 0)
        if isinstance(beta, bool) or not isinstance(beta, int) or beta < 0 or min(nu) < 0:
            raise ParseError("alpha/beta exponents must be non-negative integers", eloc)
        for j, row in enumerate(_req(entry, "value", list, eloc)):
            vloc = f"{eloc}.value[{j}]"
            row = _int_list(row, h + 3, vloc)
            mono = tuple(row[: h + 1])
            if sum(mono) != s or min(mono) < 0:
                raise ParseError(f"monomial {mono} is not of degree {s}", vloc)
            if row[-1] <= 0:
                raise ParseError("denominator must be positive", vloc)
            key = (nu, beta, n, rv, mono)
            if key in terms:
                raise ParseError("duplicate coefficient", vloc)
            terms[key] = Fraction(row[-2], row[-1])
    return h, k, s, level, m, trunc, terms


def _loads(data):
    try:
        return json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"invalid JSON: {exc}", "$") from exc


def deserialize_nh(data):
    h, k, s, level, m, trunc, terms = _parse_form_doc(_loads(data))
    return NearlyHoloElt(k, m, terms, s=s, level=level)


def deserialize(data, strict=False):
    """A :class:`JacobiFormData`; ``strict`` rejects modes outside the PSD support."""
    where = {}
    h, k, s, level, m, trunc, terms = _parse_form_doc(_loads(data), where=where)
    if any(any(nu) or r for nu, r, _, _, _ in terms):
        raise ParseError("form data must be holomorphic (no alpha/beta exponents)", "$.coeffs")
    coeffs = FourierPoly(h, {(n, rv, mono): c for (_, _, n, rv, mono), c in terms.items()}, s=s, level=level)
    if not isinstance(trunc, int):
        raise ParseError("trunc must be an integer", "$.trunc")
    phi = JacobiFormData(h, k, s, m, level, trunc, coeffs)
    if strict:
        bad = phi.violations()
        if bad:
            n, rv = bad[0]
            raise ParseError(f"mode (n={n}, r={list(rv)}) violates the support condition", where[(n, rv)])
    return phi


def _scalar_doc(g, h, k, level, m):
    terms = {((0,) * h, 0, n, rv, mono): c for (n, rv, mono), c in g.coeffs.items()}
    doc = _header(h, k, 0, level, m, 0, "form")
    doc["coeffs"] = _coeff_entries(terms, h)
    return doc


def serialize_components(t):
    """Bytes of a :class:`ComponentTuple` (one nested form document per part)."""
    level = next((p.level for part in t.parts for p in part), 1)
    doc = {
        "format": FORMAT,
        "kind": "components",
        "k": t.k,
        "s": t.s,
        "two_m": t.m.two_m(),
        "parts": [[_scalar_doc(p, t.m.h, t.k + lv, level, t.m) for p in part] for lv, part in enumerate(t.parts)],
    }
    return _dumps(doc)


def deserialize_components(data):
    doc = _loads(data)
    if not isinstance(doc, dict) or doc.get("kind") != "components":
        raise ParseError("expected a components document", "$.kind")
    k, s = _req(doc, "k", int, "$"), _req(doc, "s", int, "$")
    m = HalfIntSymMatrix.from_two_m(_req(doc, "two_m", list, "$"))
    parts = []
    for lv, part in enumerate(_req(doc, "parts", list, "$")):
        row = []
        for i, sub in enumerate(part):
            h, _, _, level, _, _, terms = _parse_form_doc(sub, f"$.parts[{lv}][{i}]")
            row.append(FourierPoly(h, {(n, rv, mono): c for (_, _, n, rv, mono), c in terms.items()}, level=level))
        parts.append(row)
    return ComponentTuple(k, s, m, parts)


def serialize_decomposition(dec):
    level = next((g.level for g in dec.components.values()), 1)
    doc = {
        "format": FORMAT,
        "kind": "nh-decomposition",
        "k": dec.k,
        "d": dec.d,
        "two_m": dec.m.two_m(),
        "components": [
            {"alpha": list(pair.nu), "beta": pair.r, "form": _scalar_doc(g, dec.m.h, dec.k - pair.degree, level, dec.m)}
            for pair, g in dec.components.items()
        ],
    }
    return _dumps(doc)


def deserialize_decomposition(data):
    doc = _loads(data)
    if not isinstance(doc, dict) or doc.get("kind") != "nh-decomposition":
        raise ParseError("expected an nh-decomposition document", "$.kind")
    k, d = _req(doc, "k", int, "$"), _req(doc, "d", int, "$")
    m = HalfIntSymMatrix.from_two_m(_req(doc, "two_m", list, "$"))
    comps = {}
    for i, entry in enumerate(_req(doc, "components", list, "$")):
        loc = f"$.components[{i}]"
        pair = MultiIndexPair(_int_list(_req(entry, "alpha", list, loc), m.h, f"{loc}.alpha"), _req(entry, "beta", int, loc))
        h, _, _, level, _, _, terms = _parse_form_doc(entry.get("form"), f"{loc}.form")
        comps[pair] = FourierPoly(h, {(n, rv, mono): c for (_, _, n, rv, mono), c in terms.items()}, level=level)
    return NHDecomposition(k, m, d, comps)


def load(path, strict=False):
    with open(path, "rb") as fh:
        return deserialize(fh.read(), strict=strict)


def dump(phi, path):
    with open(path, "wb") as fh:
        fh.write(serialize(phi))
