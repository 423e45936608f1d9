import numpy as np
import pytest

from cut600 import grouptools as gt
from cut600.golden import INNER_SELF, inner4
from cut600.model import (
    Model,
    ModelError,
    automorphism_upper_bound,
    build_vertices,
    export_model_text,
    triangle_count,
    verify_model,
)


def test_vertex_count_and_norms():
    verts = build_vertices()
    assert len(verts) == 120
    assert len(set(verts)) == 120
    for v in verts:
        assert inner4(v, v) == INNER_SELF


def test_negation_closure():
    verts = set(build_vertices())
    assert {-v for v in verts} == verts


def test_headline_counts(model):
    summary = verify_model(model)
    assert summary == {
        "vertices": 120,
        "edges": 720,
        "triangles": 1200,
        "cells": 600,
        "group": 14400,
    }


def test_degrees_and_cells_per_vertex(model):
    assert (model.adj.sum(axis=1) == 12).all()
    per_vertex = np.bincount(model.cells.ravel(), minlength=120)
    assert (per_vertex == 20).all()


def test_triangle_count(model):
    assert triangle_count(model) == 1200


def test_no_five_clique(model):
    for cell in model.cells:
        common = (
            model.nbr_mask[int(cell[0])]
            & model.nbr_mask[int(cell[1])]
            & model.nbr_mask[int(cell[2])]
            & model.nbr_mask[int(cell[3])]
        )
        assert common == 0


def test_group_order_and_identity(model):
    assert len(model.perms) == 14400
    ident = np.arange(120, dtype=np.int8)
    assert (model.perms[model.identity_perm] == ident).all()
    assert model.proper[model.identity_perm]


def test_group_preserves_edges_exhaustive(model):
    eu = model.perms[:, model.edges[:, 0]].astype(np.int32)
    ev = model.perms[:, model.edges[:, 1]].astype(np.int32)
    assert model.adj[eu, ev].all()


def test_vertex_transitivity(model):
    assert len(np.unique(model.perms[:, 0])) == 120


def test_group_closed_under_composition_sampled(model):
    rng = np.random.default_rng(7)
    rows = {model.perms[i].tobytes() for i in range(14400)}
    for _ in range(300):
        a, b = rng.integers(0, 14400, size=2)
        comp = gt.compose(model.perms[a], model.perms[b])
        assert comp.tobytes() in rows
    for i in rng.integers(0, 14400, size=50):
        assert gt.invert(model.perms[i]).astype(np.int8).tobytes() in rows


def test_group_permutes_cells(model):
    codes = gt.pack_sets(np.sort(model.cells, axis=1).astype(np.int8))
    cellset = set(codes.tolist())
    imgs = np.sort(model.perms[:, model.cells], axis=2).astype(np.int8)
    img_codes = gt.pack_sets(imgs)
    assert set(np.unique(img_codes).tolist()) <= cellset


def test_proper_half(model):
    assert int(model.proper.sum()) == 7200


def test_rebuild_determinism(model):
    again = Model.build()
    assert again.fingerprint == model.fingerprint
    assert (again.perms == model.perms).all()
    assert (again.cells == model.cells).all()
    assert again.vertices == model.vertices


def test_automorphism_bound_equals_group_order(model):
    # Aut(skeleton) is at least the 14400 constructed permutations and the
    # rigidity certificate bounds it above by the same number.
    assert automorphism_upper_bound(model) == 14400


def test_rows_mapping_to_zero_index(model):
    for w in (0, 17, 119):
        rows = model.rmz[w]
        assert len(rows) == 120
        assert (model.perms[rows, w] == 0).all()


def test_export_model_text_deterministic(model):
    a = export_model_text(model, include_group=False)
    b = export_model_text(model, include_group=False)
    assert a == b
    lines = a.splitlines()
    assert lines[0] == "# cut600 model export v1"
    assert sum(1 for ln in lines if ln.startswith("vertex ")) == 120
    assert sum(1 for ln in lines if ln.startswith("edge ")) == 720
    assert sum(1 for ln in lines if ln.startswith("cell ")) == 600


def test_verify_model_detects_corruption(model):
    broken = Model.build()
    broken.adj[0, 1] = broken.adj[1, 0] = True
    with pytest.raises(ModelError):
        verify_model(broken)
