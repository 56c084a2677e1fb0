"""Exact row reduction and null spaces over any supported field.

Rows are sparse dicts ``{column: raw value}`` (dense sequences are accepted
by the public helpers).  Prime fields go through the dense int64 kernel in
:mod:`invariant_forge.kernels` when the matrix fits under
:data:`DENSE_LIMIT` entries; everything else uses sparse Gauss-Jordan in
pure Python.  Results are always the unique reduced row echelon form, so
the two routes are interchangeable.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import FieldMismatchError, PreconditionError
from .fields import PRIME, FieldSpec, Scalar

DENSE_LIMIT = 6_000_000

Row = dict  # {column: raw nonzero value}


def _as_sparse(row, field: FieldSpec) -> Row:
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    if field.kind == PRIME:
        p = field.modulus
        return {c: v % p for c, v in items if v % p}
    return {c: v for c, v in items if not field.is_zero(v)}


def _rref_sparse(rows: Iterable[Row], field: FieldSpec) -> dict[int, Row]:
    F = field
    piv: dict[int, Row] = {}
    for row in rows:
        r = dict(row)
        while r:
            c = min(r)
            prow = piv.get(c)
            if prow is None:
                inv = F.inv(r[c])
                piv[c] = {j: F.mul(v, inv) for j, v in r.items()}
                break
            f = r[c]
            for j, v in prow.items():
                nv = F.sub(r[j], F.mul(f, v)) if j in r else F.neg(F.mul(f, v))
                if F.is_zero(nv):
                    r.pop(j, None)
                else:
                    r[j] = nv
    # back substitution: rows with larger pivots are reduced first
    for c in sorted(piv, reverse=True):
        row = piv[c]
        for j in [j for j in row if j != c and j in piv]:
            f = row[j]
            for k, v in piv[j].items():
                nv = F.sub(row[k], F.mul(f, v)) if k in row else F.neg(F.mul(f, v))
                if F.is_zero(nv):
                    row.pop(k, None)
                else:
                    row[k] = nv
    return piv


def _rref_dense_prime(rows: list[Row], p: int, ncols: int) -> dict[int, Row]:
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            A[i, c] = v
    rank, pivots = kernels.rref_mod_p(A, p)
    out = {}
    for i in range(rank):
        nz = np.flatnonzero(A[i])
        out[int(pivots[i])] = {int(j): int(A[i, j]) for j in nz}
    return out


def rref(rows: Iterable, field: FieldSpec, ncols: int | None = None) -> dict[int, Row]:
    """Reduced row echelon form as ``{pivot column: row}`` (pivot entries are 1)."""
    rows = [r for r in (_as_sparse(r, field) for r in rows) if r]
    if not rows:
        return {}
    if ncols is None:
        ncols = 1 + max(max(r) for r in rows)
    if field.kind == PRIME and len(rows) * ncols <= DENSE_LIMIT:
        return _rref_dense_prime(rows, field.modulus, ncols)
    return _rref_sparse(rows, field)


def rank(rows: Iterable, field: FieldSpec, ncols: int | None = None) -> int:
    return len(rref(rows, field, ncols))


def echelon_rows(piv: Mapping[int, Row]) -> list[Row]:
    """RREF rows sorted by pivot column."""
    return [piv[c] for c in sorted(piv)]


def reduce_vector(piv: Mapping[int, Row], vec: Row, field: FieldSpec) -> Row:
    """Reduce ``vec`` modulo the row space of a fully reduced echelon form."""
    F = field
    r = dict(vec)
    for c in [c for c in vec if c in piv]:
        f = r.get(c)
        if f is None:
            continue
        for k, v in piv[c].items():
            nv = F.sub(r[k], F.mul(f, v)) if k in r else F.neg(F.mul(f, v))
            if F.is_zero(nv):
                r.pop(k, None)
            else:
                r[k] = nv
    return r


def nullspace(rows: Iterable, field: FieldSpec, ncols: int) -> list[Row]:
    """Null space basis in reduced echelon form (leading coefficient 1).

    The system is reduced with its columns reversed; the free-variable
    parameterisation of that reduction is then exactly the RREF of the
    null space in the original column order.
    """
    flipped = []
    for r in rows:
        r = _as_sparse(r, field)
        if any(c < 0 or c >= ncols for c in r):
            raise PreconditionError("row entry outside the column range")
        flipped.append({ncols - 1 - c: v for c, v in r.items()})
    piv = rref(flipped, field, ncols)
    F = field
    vecs: dict[int, Row] = {f: {f: F.one} for f in range(ncols) if f not in piv}
    for c, row in piv.items():
        for j, v in row.items():
            if j != c:
                vecs[j][c] = F.neg(v)
    out = []
    for f in sorted(vecs, reverse=True):
        out.append({ncols - 1 - j: v for j, v in vecs[f].items()})
    return out


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None,
                 field: FieldSpec | None = None) -> list[list[Scalar]]:
    """Null space of a matrix given as coefficient rows.

    Entries may be :class:`Scalar` (the field is inferred) or plain ints /
    Fractions when ``field`` is given.  Returns dense Scalar vectors in
    reduced echelon form.
    """
    fields = {x.field for r in rows for x in r if isinstance(x, Scalar)}
    if field is not None:
        fields.add(field)
    if len(fields) > 1:
        raise FieldMismatchError(f"rows mix fields {sorted(map(str, fields))}")
    if not fields:
        raise PreconditionError("cannot infer the field; pass field=")
    field = fields.pop()
    lengths = {len(r) for r in rows}
    if ncols is None:
        if not lengths:
            raise PreconditionError("ncols is required for an empty system")
        ncols = lengths.pop()
        lengths.add(ncols)
    if lengths - {ncols}:
        raise PreconditionError("rows have inconsistent lengths")
    raw = [[field.coerce(x) for x in r] for r in rows]
    out = []
    for vec in nullspace(raw, field, ncols):
        out.append([Scalar(field, vec.get(c, field.zero)) for c in range(ncols)])
    return out
