"""Table-driven instance: diagonals of a convex pentagon.

Five objects d_j = {j, j+2} (indices mod 5), one-dimensional Hom spaces
along the cycle d_j -> d_{j+3}, extensions E(X, Y) = F_2 exactly when
the diagonals cross, zero composites of consecutive arrows, and
projectives/injectives consisting of zero objects only.

Realizations of the crossing classes: for each j the class in
E(d_j, d_{j-1}) is realized by d_{j-1} -> d_{j+2} -> d_j (the two
crossing diagonals resolve through the third one), and the class in
E(d_j, d_{j+1}) by d_{j+1} -> 0 -> d_j.  Everything else follows by
additivity.  The instance is meant to be machine-validated by the axiom
checker after construction.
"""

from __future__ import annotations

import numpy as np

from .errors import RealizationMissing
from .extri import Conflation, ExtTables, Instance
from .fincat import Mor, Obj, Spectroid, Subcat

__all__ = ["DIAGONALS", "crossing", "build_pentagon_instance", "pentagon_file_text"]

# d_j = {j, j+2} around the pentagon, named by vertex pairs
DIAGONALS = ("d02", "d13", "d24", "d03", "d14")


def crossing(i: int, j: int) -> bool:
    """Whether diagonals d_i and d_j cross in the interior."""
    return (j - i) % 5 in (1, 4)


def _name(j: int) -> str:
    return DIAGONALS[j % 5]


def _arrow(j: int) -> str:
    return f"a{j % 5}"


def build_pentagon_instance(max_summands: int = 4) -> Instance:
    p = 2
    names = list(DIAGONALS)
    idx = {name: j for j, name in enumerate(names)}
    one = np.ones((1, 1, 1), dtype=np.int64)

    hom_dims = {}
    basis_names = {}
    for j in range(5):
        hom_dims[(_name(j), _name(j))] = 1
        basis_names[(_name(j), _name(j))] = (f"e{j}",)
        hom_dims[(_name(j), _name(j + 3))] = 1
        basis_names[(_name(j), _name(j + 3))] = (_arrow(j),)
    comp = {}
    for j in range(5):
        x, y = _name(j), _name(j + 3)
        comp[(x, x, x)] = one
        comp[(x, x, y)] = one
        comp[(x, y, y)] = one
        # consecutive arrows compose to zero: table for (x, y, y+3) omitted
    identity = {name: np.array([1]) for name in names}
    spec = Spectroid(p, names, hom_dims, comp, identity, basis_names)

    edims = {}
    for i in range(5):
        for j in range(5):
            if crossing(i, j):
                edims[(_name(i), _name(j))] = 1
    one_mat = np.array([[1]], dtype=np.int64)
    cov = {}
    con = {}
    for j in range(5):
        # arrow a_j: d_j -> d_{j+3}
        cov[(_name(j), _name(j + 3), 0, _name(j + 4))] = one_mat
        con[(_name(j), _name(j + 3), 0, _name(j + 4))] = one_mat
        # identity basis elements act as the identity on both arguments
        for i in range(5):
            if crossing(i, j):
                con[(_name(j), _name(j), 0, _name(i))] = one_mat
                cov[(_name(j), _name(j), 0, _name(i))] = one_mat
    ext = ExtTables(p, edims, cov, con)

    table = {}

    def add_entry(C: Obj, A: Obj, coords, conf: Conflation):
        table[(C.summands, A.summands, tuple(int(v) for v in coords))] = conf

    for j in range(5):
        cj = Obj((_name(j),))
        # E(d_j, d_{j-1}): resolve the crossing through d_{j+2}
        aj = Obj((_name(j - 1),))
        mid = Obj((_name(j + 2),))
        x = spec.basis_morphism(_arrow(j - 1))
        y = spec.basis_morphism(_arrow(j + 2))
        add_entry(cj, aj, (1,), Conflation(aj, mid, cj, x, y))
        # E(d_j, d_{j+1}): zero middle
        ak = Obj((_name(j + 1),))
        z = Obj(())
        add_entry(
            cj,
            ak,
            (1,),
            Conflation(ak, z, cj, Mor.zero(spec, ak, z), Mor.zero(spec, z, cj)),
        )

    def realize_core(C: Obj, A: Obj, coords) -> Conflation:
        key = (C.summands, A.summands, tuple(int(v) for v in np.asarray(coords)))
        conf = table.get(key)
        if conf is None:
            raise RealizationMissing(f"no pentagon table entry for {key}")
        return conf

    return Instance(
        name="pentagon",
        spec=spec,
        ext=ext,
        realize_core=realize_core,
        projectives=Subcat(),
        injectives=Subcat(),
        covers={},
        envelopes={},
        deflation_rule="always",
        inflation_rule="always",
        enough_projectives=True,
        enough_injectives=True,
        max_summands=max_summands,
        realize_coverage=1,
        meta={"kind": "pentagon"},
    )


def pentagon_file_text() -> str:
    from .instances import instance_to_text

    return instance_to_text(build_pentagon_instance())
