"""Regression corpus: named checks replayed by ``invariant-forge examples``.

A corpus is a JSON object ``{"items": [...]}``.  Every item has a ``name``
and a ``check``; actions are either inline objects or file names resolved
against the corpus directory.  Check kinds:

``molien``             coefficients to ``degree`` by ``method`` equal ``expected``
``beta``               generator search to ``degree``; ``beta_lower`` exact or
                       ``beta_lower_at_least``, optional ``certified``
``invariant``          every polynomial in ``polynomials`` is invariant
``relation``           ``lhs == rhs`` after substituting ``definitions``
``not-in-subalgebra``  ``polynomial`` is invariant and outside the subalgebra
                       generated by invariants of degree <= ``max_factor_degree``
``alpha``              identities for all i and the lower-bound certificate
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from .actionfile import load_action, parse_field, read_json
from .alpha import richman_certificate, verify_identity3
from .errors import ActionFileError
from .invariants import (graded_invariant_basis, in_span, is_invariant,
                         minimal_generators, subalgebra_pieces)
from .molien import molien_by_counting, molien_charsum, molien_compare
from .poly import parse_polynomial

CHECKS = ("molien", "beta", "invariant", "relation", "not-in-subalgebra", "alpha")


def bundled_corpus() -> Path:
    return Path(str(resources.files("invariant_forge") / "data" / "corpus.json"))


@dataclass
class ItemResult:
    name: str
    check: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "check": self.check, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 6), "data": self.data}


class Corpus:
    def __init__(self, items: list[dict], base: Path):
        self.items = items
        self.base = base

    @classmethod
    def load(cls, path=None) -> Corpus:
        path = Path(path) if path is not None else bundled_corpus()
        doc = read_json(path)
        if not isinstance(doc, dict) or not isinstance(doc.get("items"), list):
            raise ActionFileError("corpus must be an object with an 'items' list", "/items")
        seen = set()
        for k, item in enumerate(doc["items"]):
            ptr = f"/items/{k}"
            if not isinstance(item, dict):
                raise ActionFileError("expected an object", ptr)
            name = item.get("name")
            if not isinstance(name, str) or not name:
                raise ActionFileError("missing item name", f"{ptr}/name")
            if name in seen:
                raise ActionFileError(f"duplicate item name {name!r}", f"{ptr}/name")
            seen.add(name)
            if item.get("check") not in CHECKS:
                raise ActionFileError(f"check must be one of {', '.join(CHECKS)}", f"{ptr}/check")
        return cls(doc["items"], path.parent)

    def names(self) -> list[str]:
        return [item["name"] for item in self.items]

    def action(self, item: dict, ptr: str):
        ref = item.get("action")
        if isinstance(ref, str):
            try:
                return load_action(read_json(self.base / ref))
            except ActionFileError as exc:
                raise ActionFileError(f"{ref}: {exc}", f"{ptr}/action") from None
        return load_action(ref, f"{ptr}/action")

    def run(self) -> list[ItemResult]:
        return [self.run_item(k) for k in range(len(self.items))]

    def run_item(self, k: int) -> ItemResult:
        item = self.items[k]
        t0 = time.perf_counter()
        try:
            passed, detail, data = _RUNNERS[item["check"]](self, item, f"/items/{k}")
        except ActionFileError as exc:
            passed, detail, data = False, f"invalid item: {exc}", {}
        except (ValueError, SyntaxError, ArithmeticError) as exc:
            passed, detail, data = False, f"error: {exc}", {}
        return ItemResult(item["name"], item["check"], passed, detail,
                          time.perf_counter() - t0, data)


def _molien(corpus, item, ptr):
    action = corpus.action(item, ptr)
    D = item["degree"]
    method = item.get("method", "both")
    expected = list(item["expected"])
    if method == "counting":
        got = list(molien_by_counting(action, D).coeffs)
    elif method == "charsum":
        got = molien_charsum(action, D).integers()
    else:
        cmp = molien_compare(action, D)
        got = list(cmp.native)
        if not cmp.agree:
            return False, f"methods disagree in degrees {list(cmp.mismatches)}", {"coefficients": got}
    ok = got == expected
    return ok, "coefficients match" if ok else f"expected {expected}, got {got}", {"coefficients": got}


def _beta(corpus, item, ptr):
    cert = minimal_generators(corpus.action(item, ptr), item["degree"])
    data = {"beta_lower": cert.beta_lower, "certified_complete": cert.certified_complete,
            "generator_degrees": list(cert.generator_degrees)}
    problems = []
    if "beta_lower" in item and cert.beta_lower != item["beta_lower"]:
        problems.append(f"beta_lower {cert.beta_lower} != {item['beta_lower']}")
    if "beta_lower_at_least" in item and cert.beta_lower < item["beta_lower_at_least"]:
        problems.append(f"beta_lower {cert.beta_lower} < {item['beta_lower_at_least']}")
    if "certified" in item and cert.certified_complete != item["certified"]:
        problems.append(f"certified_complete is {cert.certified_complete}")
    return not problems, "; ".join(problems) or f"beta_lower = {cert.beta_lower}", data


def _definitions(item, field, nvars, ptr):
    defs = {}
    for key, text in item.get("definitions", {}).items():
        try:
            defs[key] = parse_polynomial(text, field, nvars, definitions=defs)
        except (ValueError, SyntaxError) as exc:
            raise ActionFileError(f"cannot parse: {exc}", f"{ptr}/definitions/{key}") from None
    return defs


def _invariant(corpus, item, ptr):
    action = corpus.action(item, ptr)
    defs = _definitions(item, action.field, action.nvars, ptr)
    bad = [name for name, f in defs.items() if not is_invariant(action, f)]
    return not bad, f"not invariant: {', '.join(bad)}" if bad else f"{len(defs)} invariants", {}


def _relation(corpus, item, ptr):
    field = parse_field(item.get("field", {"char": 0}), f"{ptr}/field")
    n = item["nvars"]
    defs = _definitions(item, field, n, ptr)
    lhs = parse_polynomial(item["lhs"], field, n, definitions=defs)
    rhs = parse_polynomial(item["rhs"], field, n, definitions=defs)
    diff = lhs - rhs
    if diff.is_zero():
        return True, "relation holds", {}
    return False, f"lhs - rhs = {diff.format()}", {}


def _not_in_subalgebra(corpus, item, ptr):
    action = corpus.action(item, ptr)
    f = parse_polynomial(item["polynomial"], action.field, action.nvars)
    if not f.is_homogeneous():
        raise ActionFileError("polynomial must be homogeneous", f"{ptr}/polynomial")
    d = f.degree()
    if not is_invariant(action, f):
        return False, "polynomial is not invariant", {}
    graded = graded_invariant_basis(action, d)
    pieces = subalgebra_pieces(graded, item["max_factor_degree"], d)
    inside = in_span(pieces[d], f, d)
    return not inside, ("polynomial lies in the subalgebra" if inside
                        else "invariant and outside the subalgebra"), {}


def _alpha(corpus, item, ptr):
    q, l = item["q"], item["l"]
    bad = [i for i in range(q) if not verify_identity3(l, i, q)]
    cert = richman_certificate(q, l)
    data = {"identities_failed": bad, "certified": cert.certified,
            "beta_lower": cert.beta_lower_from_engine}
    if bad:
        return False, f"identity fails for i in {bad}", data
    if not cert.certified:
        return False, "lower-bound certificate failed", data
    return True, f"beta >= {l} certified", data


_RUNNERS = {"molien": _molien, "beta": _beta, "invariant": _invariant,
            "relation": _relation, "not-in-subalgebra": _not_in_subalgebra, "alpha": _alpha}
