"""JSON documents for groups, elements, matroids and reports.

Group:    {"kind": "free", "rank": k}  or  {"kind": "finite", "moduli": [...]}
Element:  an integer array (a bare integer is accepted for one-coordinate groups)
Matroid:  {"ctx": ..., "ground": [[...], ...], "bases": [[indices], ...]}
          plus "allow_loops": true when some ground element lies in no basis

Constructor shorthands accepted by :func:`matroid_from_json`::

    {"uniform":   {"n": 2, "ground": [1, 2, 3]}}
    {"panhandle": {"n": 3, "s": 4, "m": 5, "a": [2, -1, 0]}}
    {"schubert":  {"m": 5, "a": [2, -1, 0], "S": [[2, -1, 0], [4, -2, 0], [10, -5, 0]]}}
    {"dual": <matroid document>}
    {"direct_sum": [<matroid document>, <matroid document>]}

``ctx`` may sit at the top level or inside the shorthand body.  When it is
missing, Z^k is assumed with k taken from the first element seen.
"""

from __future__ import annotations

from . import matroids
from .errors import StructureError
from .groups import FINITE, FREE, Element, GroupCtx
from .matroids import Matroid, PanhandleParams, SchubertParams, bits

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise StructureError(f"{what} must be an integer, got {x!r}")
    if not INT64_MIN <= x <= INT64_MAX:
        raise StructureError(f"{what} {x} does not fit in a signed 64-bit integer")
    return x


def ctx_to_json(ctx: GroupCtx) -> dict:
    if ctx.kind == FREE:
        return {"kind": FREE, "rank": ctx.rank}
    return {"kind": FINITE, "moduli": list(ctx.moduli)}


def ctx_from_json(doc) -> GroupCtx:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise StructureError(f"bad group document {doc!r}")
    if doc["kind"] == FREE:
        return GroupCtx.free(_int(doc.get("rank", 1), "rank"))
    if doc["kind"] == FINITE:
        moduli = doc.get("moduli")
        if not isinstance(moduli, list):
            raise StructureError("finite group needs a 'moduli' list")
        return GroupCtx.finite(*(_int(n, "modulus") for n in moduli))
    raise StructureError(f"unknown group kind {doc['kind']!r}")


def element_to_json(x: Element) -> list[int]:
    return list(x)


def element_from_json(ctx: GroupCtx, x) -> Element:
    if isinstance(x, list):
        for c in x:
            _int(c, "coordinate")
    else:
        _int(x, "coordinate")
    return ctx.element(x)


def _guess_ctx(sample) -> GroupCtx:
    if isinstance(sample, list):
        return GroupCtx.free(len(sample))
    return GroupCtx.free(1)


def _ctx_for(doc: dict, body: dict, sample) -> GroupCtx:
    raw = body.get("ctx", doc.get("ctx")) if isinstance(body, dict) else doc.get("ctx")
    if raw is None:
        return _guess_ctx(sample)
    return ctx_from_json(raw)


def matroid_to_json(M: Matroid) -> dict:
    doc = {
        "ctx": ctx_to_json(M.ctx),
        "ground": [element_to_json(x) for x in M.ground],
        "bases": [bits(b) for b in M.sorted_bases()],
    }
    if M.loops:
        doc["allow_loops"] = True
    return doc


def matroid_from_json(doc) -> Matroid:
    if not isinstance(doc, dict):
        raise StructureError(f"matroid document must be an object, got {type(doc).__name__}")
    if "uniform" in doc:
        body = doc["uniform"]
        ground = body.get("ground") or []
        ctx = _ctx_for(doc, body, ground[0] if ground else 0)
        return matroids.make_uniform(
            ctx, [element_from_json(ctx, x) for x in ground], _int(body.get("n"), "n")
        )
    if "panhandle" in doc:
        body = doc["panhandle"]
        ctx = _ctx_for(doc, body, body.get("a"))
        p = PanhandleParams(
            _int(body.get("n"), "n"), _int(body.get("s"), "s"), _int(body.get("m"), "m"),
            element_from_json(ctx, body.get("a")),
        )
        return matroids.make_panhandle(ctx, p)
    if "schubert" in doc:
        body = doc["schubert"]
        ctx = _ctx_for(doc, body, body.get("a"))
        S = body.get("S")
        if not isinstance(S, list):
            raise StructureError("schubert needs an 'S' list")
        p = SchubertParams(
            _int(body.get("m"), "m"), element_from_json(ctx, body.get("a")),
            tuple(element_from_json(ctx, x) for x in S),
        )
        return matroids.make_schubert(ctx, p)
    if "dual" in doc:
        return matroids.dual(matroid_from_json(doc["dual"]))
    if "direct_sum" in doc:
        parts = doc["direct_sum"]
        if not isinstance(parts, list) or len(parts) != 2:
            raise StructureError("direct_sum needs a list of two matroid documents")
        return matroids.direct_sum(matroid_from_json(parts[0]), matroid_from_json(parts[1]))
    if "ground" in doc and "bases" in doc:
        ground = doc["ground"]
        ctx = _ctx_for(doc, {}, ground[0] if ground else 0)
        bases = doc["bases"]
        if not isinstance(bases, list) or not all(isinstance(b, list) for b in bases):
            raise StructureError("'bases' must be a list of index lists")
        return matroids.make_from_bases(
            ctx, [element_from_json(ctx, x) for x in ground],
            [[_int(i, "basis index") for i in b] for b in bases],
            allow_loops=doc.get("allow_loops") is True,
        )
    raise StructureError(
        "unrecognised matroid document; expected ground/bases or one of "
        "uniform, panhandle, schubert, dual, direct_sum"
    )
