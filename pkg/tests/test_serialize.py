import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelmatch import matroids
from abelmatch.errors import StructureError
from abelmatch.groups import GroupCtx
from abelmatch.serialize import (
    ctx_from_json,
    ctx_to_json,
    element_from_json,
    matroid_from_json,
    matroid_to_json,
)

Z = GroupCtx.free(1)


@pytest.mark.parametrize("ctx", [GroupCtx.free(1), GroupCtx.free(3), GroupCtx.finite(7), GroupCtx.finite(2, 6)])
def test_ctx_round_trip(ctx):
    assert ctx_from_json(json.loads(json.dumps(ctx_to_json(ctx)))) == ctx


def test_ctx_errors():
    for bad in [None, {}, {"kind": "torus"}, {"kind": "finite"}, {"kind": "free", "rank": 1.5}]:
        with pytest.raises(StructureError):
            ctx_from_json(bad)


def test_elements():
    assert element_from_json(Z, 5) == (5,)
    assert element_from_json(GroupCtx.finite(7), [9]) == (2,)
    for bad in (True, 1.0, [2**63], ["1"]):
        with pytest.raises(StructureError):
            element_from_json(Z, bad)


def test_shorthands():
    P = matroid_from_json({"panhandle": {"n": 3, "s": 4, "m": 5, "a": [2, -1, 0]}})
    assert P.ctx == GroupCtx.free(3) and len(P.bases) == 10
    U = matroid_from_json({"uniform": {"n": 2, "ground": [1, 2, 3]}})
    assert len(U.bases) == 3
    S = matroid_from_json({"ctx": {"kind": "free", "rank": 3},
                           "schubert": {"m": 5, "a": [2, -1, 0], "S": [[2, -1, 0], [4, -2, 0], [10, -5, 0]]}})
    assert len(S.bases) == 3
    D = matroid_from_json({"dual": {"uniform": {"n": 1, "ground": [1, 2, 3]}}})
    assert D.rank == 2
    T = matroid_from_json({"direct_sum": [{"uniform": {"n": 1, "ground": [1, 2]}},
                                          {"uniform": {"n": 1, "ground": [3]}}]})
    assert T.rank == 2 and len(T.bases) == 2
    F = matroid_from_json({"ctx": {"kind": "finite", "moduli": [2**31 - 1]},
                           "panhandle": {"n": 2, "s": 2, "m": 3, "a": [5]}})
    assert F.ground == ((5,), (10,), (15,))


def test_bad_documents():
    for bad in [[], {"foo": 1}, {"ground": [1, 2], "bases": "x"}, {"schubert": {"m": 3, "a": 1}},
                {"direct_sum": [{"uniform": {"n": 1, "ground": [1]}}]}]:
        with pytest.raises(StructureError):
            matroid_from_json(bad)


def test_explicit_round_trip_with_loops():
    S = matroids.make_schubert(Z, matroids.SchubertParams(4, 1, ((1,), (2,))))
    doc = matroid_to_json(S)
    assert doc["allow_loops"] is True
    assert matroid_from_json(json.loads(json.dumps(doc))) == S


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, m - 1))).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.integers(1, t[1]))),
    st.sampled_from([[1], [-3], [2, -1, 0]]))
def test_family_round_trip(msn, a):
    m, s, n = msn
    M = matroid_from_json({"panhandle": {"n": n, "s": s, "m": m, "a": a}})
    doc = matroid_to_json(M)
    assert matroid_from_json(json.loads(json.dumps(doc))) == M
    assert matroid_to_json(matroid_from_json(doc)) == doc
