"""JSON action files: parsing with pointer-carrying errors, canonical dumps.

Shapes (``field`` is ``{"char": 0}``, ``{"char": p}`` or
``{"char": 0, "cyclotomic": N}``)::

    {"kind": "diagonalizable", "field": ..., "nvars": 2, "moduli": [3],
     "weights": [[1], [2]], "infinitesimal": false}
    {"kind": "permutation", "field": ..., "nvars": 6, "generators": ["(1,2)(3,4)(5,6)"]}
    {"kind": "alpha", "field": {"char": 2}, "q": 2, "l": 3}
    {"kind": "alpha", "field": {"char": 2}, "q": 2, "nvars": 2,
     "matrix": [[{"0": "1"}, {"1": "1"}], [{}, {"0": "1"}]]}
    {"kind": "product", "field": ..., "nvars": 4,
     "diagonal": {"moduli": [2], "weights": [[1], [1], [1], [1]]},
     "permutation": {"generators": ["(1,2)(3,4)"]}}

``matrix[j][i]`` maps a t-power to the coefficient of ``A_ji``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .actions import (AlphaCoaction, DiagonalizableAction, PermutationAction,
                      ProductAction, format_cycles, parse_cycles, standard_alpha_rep)
from .errors import ActionFileError, InvariantForgeError
from .fields import FieldSpec, prime_power_base
from .poly import parse_polynomial

KINDS = ("diagonalizable", "permutation", "alpha", "product")


def _get(obj, key, ptr, typ=None, required=True, default=None):
    if not isinstance(obj, dict):
        raise ActionFileError("expected an object", ptr)
    if key not in obj:
        if required:
            raise ActionFileError(f"missing required field {key!r}", ptr)
        return default
    val = obj[key]
    if typ is not None and (not isinstance(val, typ) or (typ is int and isinstance(val, bool))):
        raise ActionFileError(f"expected {getattr(typ, '__name__', typ)}", f"{ptr}/{key}")
    return val


def _int_list(val, ptr, minimum=None):
    if not isinstance(val, list):
        raise ActionFileError("expected a list", ptr)
    for k, x in enumerate(val):
        if not isinstance(x, int) or isinstance(x, bool):
            raise ActionFileError("expected an integer", f"{ptr}/{k}")
        if minimum is not None and x < minimum:
            raise ActionFileError(f"must be >= {minimum}", f"{ptr}/{k}")
    return val


def parse_field(obj, ptr="/field") -> FieldSpec:
    char = _get(obj, "char", ptr, int)
    cyc = _get(obj, "cyclotomic", ptr, int, required=False)
    extra = set(obj) - {"char", "cyclotomic"}
    if extra:
        raise ActionFileError(f"unknown field key {sorted(extra)[0]!r}", f"{ptr}/{sorted(extra)[0]}")
    try:
        if char == 0:
            return FieldSpec.cyclotomic(cyc) if cyc is not None else FieldSpec.rational()
        if cyc is not None:
            raise ActionFileError("cyclotomic extensions need characteristic 0", f"{ptr}/cyclotomic")
        return FieldSpec.prime(char)
    except InvariantForgeError as exc:
        if isinstance(exc, ActionFileError):
            raise
        raise ActionFileError(str(exc), f"{ptr}/char") from None


def dump_field(field: FieldSpec) -> dict:
    if field.kind == "prime":
        return {"char": field.modulus}
    if field.kind == "cyclotomic":
        return {"char": 0, "cyclotomic": field.modulus}
    return {"char": 0}


def _diag(obj, field, nvars, ptr):
    moduli = _int_list(_get(obj, "moduli", ptr), f"{ptr}/moduli", minimum=1)
    weights = _get(obj, "weights", ptr, list)
    if nvars is not None and len(weights) != nvars:
        raise ActionFileError(f"expected {nvars} weight rows", f"{ptr}/weights")
    for i, row in enumerate(weights):
        _int_list(row, f"{ptr}/weights/{i}")
        if len(row) != len(moduli):
            raise ActionFileError(f"expected {len(moduli)} entries", f"{ptr}/weights/{i}")
    infinitesimal = _get(obj, "infinitesimal", ptr, bool, required=False, default=False)
    try:
        return DiagonalizableAction(tuple(moduli), tuple(map(tuple, weights)), field, infinitesimal)
    except InvariantForgeError as exc:
        raise ActionFileError(str(exc), f"{ptr}/infinitesimal") from None


def _perm(obj, field, nvars, ptr):
    gens = _get(obj, "generators", ptr, list)
    parsed = []
    for k, g in enumerate(gens):
        if not isinstance(g, str):
            raise ActionFileError("expected a cycle-notation string", f"{ptr}/generators/{k}")
        try:
            parsed.append(parse_cycles(g, nvars))
        except ValueError as exc:
            raise ActionFileError(str(exc), f"{ptr}/generators/{k}") from None
    try:
        return PermutationAction(nvars, tuple(parsed), field)
    except InvariantForgeError as exc:
        raise ActionFileError(str(exc), f"{ptr}/generators") from None


def _alpha(obj, field, ptr):
    q = _get(obj, "q", ptr, int)
    p = prime_power_base(q)
    if p is None:
        raise ActionFileError(f"q={q} is not a prime power", f"{ptr}/q")
    if field.characteristic != p:
        raise ActionFileError(f"q={q} needs characteristic {p}", f"{ptr}/field/char")
    if "matrix" not in obj:
        l = _get(obj, "l", ptr, int)
        if l < 1:
            raise ActionFileError("l must be positive", f"{ptr}/l")
        return standard_alpha_rep(q, l)
    n = _get(obj, "nvars", ptr, int)
    rows = _get(obj, "matrix", ptr, list)
    if len(rows) != n:
        raise ActionFileError(f"expected {n} rows", f"{ptr}/matrix")
    matrix = []
    for j, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ActionFileError(f"expected {n} entries", f"{ptr}/matrix/{j}")
        out_row = []
        for i, entry in enumerate(row):
            eptr = f"{ptr}/matrix/{j}/{i}"
            if not isinstance(entry, dict):
                raise ActionFileError("expected an object {t-power: coefficient}", eptr)
            coeffs = [0] * q
            for key, text in entry.items():
                if not key.isdigit() or int(key) >= q:
                    raise ActionFileError(f"t-power must be an integer in 0..{q - 1}", f"{eptr}/{key}")
                try:
                    c = parse_polynomial(str(text), field, 0)
                except (ValueError, SyntaxError, ZeroDivisionError) as exc:
                    raise ActionFileError(f"bad coefficient: {exc}", f"{eptr}/{key}") from None
                coeffs[int(key)] = c.coefficient(()).value
            out_row.append(tuple(coeffs))
        matrix.append(tuple(out_row))
    return AlphaCoaction(p, q, tuple(matrix))


def load_action(obj, ptr=""):
    """Build an action descriptor from a parsed JSON document."""
    kind = _get(obj, "kind", ptr, str)
    if kind not in KINDS:
        raise ActionFileError(f"kind must be one of {', '.join(KINDS)}", f"{ptr}/kind")
    field = parse_field(_get(obj, "field", ptr, dict), f"{ptr}/field")
    nvars = _get(obj, "nvars", ptr, int, required=kind in ("permutation", "product"))
    if nvars is not None and nvars < 0:
        raise ActionFileError("nvars must be non-negative", f"{ptr}/nvars")
    if kind == "diagonalizable":
        return _diag(obj, field, nvars, ptr)
    if kind == "permutation":
        return _perm(obj, field, nvars, ptr)
    if kind == "alpha":
        return _alpha(obj, field, ptr)
    diag = _diag(_get(obj, "diagonal", ptr, dict), field, nvars, f"{ptr}/diagonal")
    perm = _perm(_get(obj, "permutation", ptr, dict), field, nvars, f"{ptr}/permutation")
    try:
        return ProductAction(diag, perm)
    except InvariantForgeError as exc:
        raise ActionFileError(str(exc), f"{ptr}/permutation/generators") from None


def dump_action(action) -> dict:
    """Canonical JSON-ready dict; ``load_action(dump_action(a)) == a``."""
    out = {"kind": action.kind, "field": dump_field(action.field)}
    if action.kind == "diagonalizable":
        out.update(nvars=action.nvars, moduli=list(action.moduli),
                   weights=[list(w) for w in action.weights], infinitesimal=action.infinitesimal)
    elif action.kind == "permutation":
        out.update(nvars=action.nvars, generators=[format_cycles(g) for g in action.generators])
    elif action.kind == "alpha":
        l = action.nvars // 2
        if action.nvars % 2 == 0 and l and action.matrix == standard_alpha_rep(action.q, l).matrix:
            out.update(q=action.q, l=l)
        else:
            out.update(q=action.q, nvars=action.nvars, matrix=[
                [{str(m): str(c) for m, c in enumerate(entry) if c} for entry in row]
                for row in action.matrix])
    else:
        out.update(nvars=action.nvars,
                   diagonal={"moduli": list(action.diag.moduli),
                             "weights": [list(w) for w in action.diag.weights]},
                   permutation={"generators": [format_cycles(g) for g in action.perm.generators]})
    return out


def dumps_action(action) -> str:
    return json.dumps(dump_action(action), indent=2) + "\n"


def read_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ActionFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ActionFileError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None


def read_action_file(path):
    return load_action(read_json(path))
