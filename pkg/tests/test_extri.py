import numpy as np
import pytest

from extricat.errors import NoCompletion, NoProjectives
from extricat.extri import (
    ExtTables,
    check_axioms,
    complete_morphism,
    deflation_sum,
    direct_sum_triangles,
    equivalent_conflations,
    et4_glue,
    et4op_glue,
    lift_mod_projectives,
    mor_inverse,
    mor_is_iso,
    op_instance,
    six_term_check,
    triangle_morphism_space,
    triangle_test_set,
)
from extricat.fincat import Mor, Obj, compose


def obj(*names):
    return Obj(tuple(names))


def ar_triangle(a2):
    return a2.realize(a2.ext_elem(obj("S1"), obj("P2"), [1]))


# -- push / pull -----------------------------------------------------------


def test_push_identity_and_zero(a2):
    d = a2.ext_elem(obj("S1"), obj("P2"), [1])
    idp2 = Mor.identity(a2.spec, obj("P2"))
    assert a2.push(idp2, d) == d
    z = Mor.zero(a2.spec, obj("P2"), obj("P2"))
    assert a2.push(z, d).is_zero()
    ids1 = Mor.identity(a2.spec, obj("S1"))
    assert a2.pull(ids1, d) == d


def test_push_pull_linear(a2):
    C = obj("S1", "S1")
    A = obj("P2")
    d = a2.ext_elem(C, A, [1, 1])
    diag = Mor.zero(a2.spec, obj("S1"), C)
    diag.blocks[0][0] = a2.spec.identity["S1"].copy()
    diag.blocks[1][0] = a2.spec.identity["S1"].copy()
    pulled = a2.pull(diag, d)
    # both blocks pull back onto the single S1 slot and add up: 1 + 1 = 0
    assert pulled.is_zero()


# -- realize ---------------------------------------------------------------


def test_realize_zero_is_split(a2):
    t = a2.realize(a2.ext_zero(obj("S1"), obj("P2")))
    assert t.B == obj("P2", "S1")
    assert compose(t.y, t.x).is_zero()
    sp = a2.split_conflation(obj("S1"), obj("P2"))
    assert equivalent_conflations(a2, t.conf, sp) is not None


def test_realize_ar_class(a2):
    t = ar_triangle(a2)
    assert t.B == obj("P1")
    # class recomputes to itself
    assert np.array_equal(a2.class_oracle(t.conf), np.array([1]))


def test_realize_block_diagonal_is_direct_sum(a2):
    C = obj("S1", "S1")
    A = obj("P2", "P2")
    sl = a2.ext_block_slices(C, A)
    coords = np.zeros(a2.edim(C, A), dtype=np.int64)
    coords[sl[(0, 0)]] = 1
    coords[sl[(1, 1)]] = 1
    t = a2.realize(a2.ext_elem(C, A, coords))
    single = ar_triangle(a2)
    ds = direct_sum_triangles(a2, [single, single])
    assert equivalent_conflations(a2, t.conf, ds.conf) is not None


def test_realize_mixed_splits_zero_rows(a2):
    # one nonzero block, one isolated summand on each side
    C = obj("S1", "P1")
    A = obj("P2")
    sl = a2.ext_block_slices(C, A)
    coords = np.zeros(a2.edim(C, A), dtype=np.int64)
    coords[sl[(0, 0)]] = 1
    t = a2.realize(a2.ext_elem(C, A, coords))
    assert t.A == A and t.C == C
    assert sorted(t.B.summands) == ["P1", "P1"]


# -- deflations -------------------------------------------------------------


def test_is_deflation(a2):
    q = a2.spec.basis_morphism("P1_S1")
    b = a2.spec.basis_morphism("P2_P1")
    assert a2.is_deflation(q)
    assert not a2.is_deflation(b)
    # split epi
    pr = Mor.zero(a2.spec, obj("P1", "S1"), obj("S1"))
    pr.blocks[0][1] = a2.spec.identity["S1"].copy()
    assert a2.is_deflation(pr)
    assert a2.is_inflation(b)
    assert not a2.is_inflation(q)


# -- completion (ET3-style) --------------------------------------------------


def test_complete_identity(a2):
    t = ar_triangle(a2)
    ida = Mor.identity(a2.spec, t.A)
    idb = Mor.identity(a2.spec, t.B)
    a, b, c = complete_morphism(a2, t, t, {"a": ida, "b": idb})
    assert c == Mor.identity(a2.spec, t.C)


def test_complete_to_zero_triangle(a2):
    t = ar_triangle(a2)
    z = a2.realize(a2.ext_zero(Obj(), Obj()))
    a, b, c = complete_morphism(
        a2, t, z, {"a": Mor.zero(a2.spec, t.A, Obj()), "b": Mor.zero(a2.spec, t.B, Obj())}
    )
    assert c.is_zero()


def test_complete_inconsistent_raises(a2):
    t = ar_triangle(a2)
    sp = a2.realize(a2.ext_zero(obj("S1"), obj("P2")))
    ida = Mor.identity(a2.spec, obj("P2"))
    idc = Mor.identity(a2.spec, obj("S1"))
    # (id, id) is not a morphism of extensions: delta != 0 = pulled class
    with pytest.raises(NoCompletion):
        complete_morphism(a2, t, sp, {"a": ida, "c": idc})
    # and no middle morphism makes the left square commute with a = id
    with pytest.raises(NoCompletion):
        complete_morphism(
            a2, t, sp, {"a": ida, "b": Mor.zero(a2.spec, t.B, sp.B)}
        )


# -- gluing ------------------------------------------------------------------


def _assert_et4_identities(inst, t1, t2, data):
    # second row (A -> C -> E) realizes delta2 with first map h = g.f
    assert data.h == compose(t2.x, t1.x)
    ref = inst.realize(data.delta2)
    from extricat.extri import Conflation

    row = Conflation(t1.A, t2.B, data.E, data.h, data.h_prime)
    assert equivalent_conflations(inst, row, ref.conf) is not None
    assert inst.pull(data.d, data.delta2) == t1.delta
    assert inst.push(t1.x, data.delta2) == inst.pull(data.e, t2.delta)
    col = Conflation(t1.C, data.E, t2.C, data.d, data.e)
    refc = inst.realize(inst.push(t1.y, t2.delta))
    assert equivalent_conflations(inst, col, refc.conf) is not None


def test_et4_with_split_second(a2):
    t1 = ar_triangle(a2)
    t2 = a2.realize(a2.ext_zero(obj("S1"), obj("P1")))  # P1 -> P1+S1 -> S1
    data = et4_glue(a2, t1, t2)
    _assert_et4_identities(a2, t1, t2, data)
    from extricat.fincat import iso_obj

    # middle of the glued row is iso to D + F
    assert iso_obj(a2.spec, data.E, obj("S1", "S1")) is not None


def test_et4_with_split_first(a2):
    t1 = a2.realize(a2.ext_zero(obj("P1"), obj("P2")))  # P2 -> P2+P1 -> P1
    t2s = [t for t in triangle_test_set(a2) if t.A == t1.B]
    for t2 in t2s:
        data = et4_glue(a2, t1, t2)
        _assert_et4_identities(a2, t1, t2, data)


def test_et4op_identities(a2):
    T = triangle_test_set(a2)
    pairs = [(t1, t2) for t1 in T for t2 in T if t1.C == t2.B and not t1.C.is_zero()]
    assert pairs
    for t1, t2 in pairs[:6]:
        data = et4op_glue(a2, t1, t2)
        # (E -> A -> C) is an s-triangle with deflation h = composite
        assert data.h == compose(t2.y, t1.y)
        from extricat.extri import Conflation

        ref = a2.realize(data.delta2)
        col = Conflation(data.E, t1.B, t2.C, data.h_prime, data.h)
        assert equivalent_conflations(a2, col, ref.conf) is not None
        assert a2.push(data.e, data.delta2) == t2.delta
        assert a2.push(data.d, t1.delta) == a2.pull(t2.y, data.delta2)
        row = Conflation(t1.A, data.E, t2.A, data.d, data.e)
        refr = a2.realize(a2.pull(t2.x, t1.delta))
        assert equivalent_conflations(a2, row, refr.conf) is not None


# -- syzygies ----------------------------------------------------------------


def test_omega(a2):
    t = a2.omega(obj("S1"))
    assert t.A == obj("P2") and t.B == obj("P1")
    tp = a2.omega(obj("P1"))
    assert tp.A.is_zero()


def test_sigma(a2):
    t = a2.sigma(obj("P2"))
    assert t.B == obj("P1") and t.C == obj("S1")
    with pytest.raises(NoProjectives):
        # sigma needs envelope data; pentagon-style gap is tested elsewhere
        op = op_instance(a2)
        op.envelope_triangle("nonexistent")


def test_ext_i(a2):
    assert a2.ext_i_dim(obj("S1"), obj("P2"), 1) == 1
    for y in ["P1", "P2", "S1"]:
        assert a2.ext_i_dim(obj("S1"), obj(y), 2) == 0
        assert a2.ext_i_dim(obj("P1"), obj(y), 1) == 0
        assert a2.ext_i_dim(obj("P1"), obj(y), 3) == 0


def test_is_projective(a2):
    assert a2.is_projective(Obj())
    assert a2.is_projective(obj("P1"))
    assert not a2.is_projective(obj("S1"))


# -- six-term ----------------------------------------------------------------


def test_six_term_split_and_ar(a2):
    split = a2.realize(a2.ext_zero(obj("S1"), obj("P2")))
    assert six_term_check(a2, split, i_max=3) == []
    assert six_term_check(a2, ar_triangle(a2), i_max=3) == []


# -- lemmas with projectives ---------------------------------------------------


def test_deflation_sum(a2):
    q = a2.spec.basis_morphism("P1_S1")
    f0 = Mor.zero(a2.spec, obj("P2"), obj("S1"))
    s = deflation_sum(a2, f0, q)
    assert s.dom == obj("P2", "P1")
    assert a2.is_deflation(s)
    s2 = deflation_sum(a2, q, q)
    assert s2.dom == obj("P1", "P1")
    assert a2.is_deflation(s2)


def test_deflation_sum_rejects_nonprojective(a2):
    q = a2.spec.basis_morphism("P1_S1")
    ids1 = Mor.identity(a2.spec, obj("S1"))
    with pytest.raises(ValueError):
        deflation_sum(a2, q, ids1)


def test_lift_mod_projectives_exact_case(a2):
    q = a2.spec.basis_morphism("P1_S1")
    f = Mor.identity(a2.spec, obj("P1"))
    h = compose(q, f)
    pobj, u, v = lift_mod_projectives(a2, f, q, h)
    assert pobj.is_zero()


def test_lift_mod_projectives_discrepancy(a2):
    q = a2.spec.basis_morphism("P1_S1")
    f = Mor.identity(a2.spec, obj("P1"))
    h = Mor.zero(a2.spec, obj("P1"), obj("S1"))
    # q.f - h = q factors through the projective P1
    pobj, u, v = lift_mod_projectives(a2, f, q, h)
    assert all(s in a2.projectives for s in pobj.summands)
    got = compose(q, f.sub(compose(v, u)))
    assert got == h


def test_lift_mod_projectives_fails_when_not_stable(a2):
    # over the stable category, id_{S1} != 0, so no lift exists
    from extricat.errors import StableEqualityFails

    ids1 = Mor.identity(a2.spec, obj("S1"))
    q = a2.spec.basis_morphism("P1_S1")
    zero = Mor.zero(a2.spec, obj("S1"), obj("S1"))
    with pytest.raises(StableEqualityFails):
        # g = id (a deflation), f = id, h = 0: g.f - h = id, not through P
        lift_mod_projectives(a2, ids1, ids1, zero)


# -- morphism spaces -----------------------------------------------------------


def test_triangle_morphism_space_identity(a2):
    t = ar_triangle(a2)
    basis, dims = triangle_morphism_space(a2, t, t)
    # identity must lie in the span
    vecs = [np.concatenate([m1.to_vec(), m2.to_vec(), m3.to_vec()]) for m1, m2, m3 in basis]
    ide = np.concatenate(
        [
            Mor.identity(a2.spec, t.A).to_vec(),
            Mor.identity(a2.spec, t.B).to_vec(),
            Mor.identity(a2.spec, t.C).to_vec(),
        ]
    )
    from extricat.linalg import in_row_space, row_space_basis

    basis_mat = row_space_basis(np.stack(vecs), a2.p)
    assert in_row_space(ide, basis_mat, a2.p)


# -- iso utilities --------------------------------------------------------------


def test_mor_inverse(a2):
    x = obj("P1", "P2")
    ide = Mor.identity(a2.spec, x)
    assert mor_inverse(ide) == ide
    b = a2.spec.basis_morphism("P2_P1")
    assert not mor_is_iso(b)


# -- axiom checker on mutated instances ------------------------------------------


def test_check_axioms_pass(a2):
    rep = check_axioms(a2, i_max=3)
    assert rep.ok, rep.summary()


def test_mutated_action_trips_et1(a2):
    import copy

    bad = copy.copy(a2)
    cov = dict(a2.ext.cov)
    cov[("P2", "P2", 0, "S1")] = np.array([[0]])  # identity action corrupted
    bad.ext = ExtTables(a2.p, dict(a2.ext.dims), cov, dict(a2.ext.con))
    bad.meta = dict(a2.meta)
    bad.meta.pop("op_cache", None)
    rep = check_axioms(bad)
    assert not rep.ok
    assert any("ET1" in name for name, _ in rep.failures())


def test_opposite_instance_passes_axioms(a2):
    op = op_instance(a2)
    rep = check_axioms(op)
    assert rep.ok, rep.summary()
    assert op.projectives == a2.injectives
    # covers of the opposite are the envelopes of the base
    t = op.cover_triangle("P2")
    assert t.B == obj("P1")
