import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_independent_set
from cut600 import classify as cl
from cut600 import grouptools as gt


def all_sets_of_size(model, k):
    """Every labeled independent set of size k (plain nested loops)."""
    if k == 1:
        return [(v,) for v in range(120)]
    out = []

    def rec(prefix, mask):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            rec(prefix + [v], mask & ~model.nbr_mask[v] & model.above_mask[v])

    rec([], (1 << 120) - 1)
    return out


def test_validate_cut_errors(model):
    with pytest.raises(gt.CutError):
        gt.validate_cut(model, (0, 33))  # adjacent
    with pytest.raises(gt.CutError):
        gt.validate_cut(model, (5, 3))  # not increasing
    with pytest.raises(gt.CutError):
        gt.validate_cut(model, (7, 7))
    with pytest.raises(gt.CutError):
        gt.validate_cut(model, (200,))
    assert gt.validate_cut(model, (0, 1)) == (0, 1)


def test_empty_cut(model):
    assert gt.orbit_size(model, ()) == 1
    assert gt.stabilizer(model, ()).order == 14400
    assert gt.is_lex_min(model, ())
    assert gt.min_image(model, ()) == ()


def test_singletons(model):
    assert gt.orbit_size(model, (0,)) == 120
    assert gt.stabilizer(model, (0,)).order == 120
    assert gt.is_lex_min(model, (0,))
    for k in (1, 17, 119):
        assert not gt.is_lex_min(model, (k,))
        assert gt.min_image(model, (k,)) == (0,)


def test_snub24_orbit_and_stabilizer(model):
    cut = cl.named_cut(model, "snub24")
    assert gt.orbit_size(model, cut) == 25
    assert gt.stabilizer(model, cut).order == 576


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=12))
def test_orbit_stabilizer_identity(model, seed, cap):
    cut = random_independent_set(model, seed, cap)
    assert gt.orbit_size(model, cut) * gt.stabilizer(model, cut).order == 14400


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=10))
def test_min_image_idempotent_and_orbit_constant(model, seed, cap):
    cut = random_independent_set(model, seed, cap)
    mi = gt.min_image(model, cut)
    assert gt.min_image(model, mi) == mi
    assert gt.is_lex_min(model, mi)
    # applying random group elements never changes the canonical form
    rng = np.random.default_rng(seed)
    for row in rng.integers(0, 14400, size=3):
        image = tuple(sorted(int(t) for t in model.perms[row, list(cut)]))
        assert gt.min_image(model, image) == mi


def test_is_lex_min_equals_canonical_form(model):
    for seed in range(60):
        cut = random_independent_set(model, seed, 8)
        assert gt.is_lex_min(model, cut) == (gt.min_image(model, cut) == cut)


def test_lex_min_exhaustive_sizes_1_and_2(model):
    for cut in all_sets_of_size(model, 1) + all_sets_of_size(model, 2):
        brute = gt.min_image_full_scan(model, cut)
        assert gt.is_lex_min(model, cut) == (brute == cut)
        assert gt.min_image(model, cut) == brute


def test_lex_min_exhaustive_size_3_batched(model):
    sets3 = np.array(all_sets_of_size(model, 3), dtype=np.int16)
    assert len(sets3) == 202600
    pruned = []
    full = []
    for lo in range(0, len(sets3), 2048):
        chunk = sets3[lo : lo + 2048]
        pruned.append(gt.min_image_batch(model, chunk))
        full.append(gt.min_image_batch(model, chunk, restrict=False))
    pruned = np.concatenate(pruned)
    full = np.concatenate(full)
    assert (pruned == full).all()
    # scalar path spot check against the brute-force scan
    rng = np.random.default_rng(3)
    for i in rng.integers(0, len(sets3), size=400):
        cut = tuple(int(t) for t in sets3[i])
        brute_code = int(full[i])
        self_code = int(gt.pack_sets(sets3[i].astype(np.int8)))
        assert gt.is_lex_min(model, cut) == (brute_code == self_code)


def test_prefix_closure_exhaustive_to_size_4(model):
    from cut600.engine import EnumConfig, enumerate_cuts

    reps: list[tuple[int, ...]] = []
    enumerate_cuts(model, EnumConfig(max_size=4), visitor=lambda c, s: reps.append(c))
    assert len(reps) == 1 + 7 + 39 + 436
    for cut in reps:
        for j in range(len(cut)):
            assert gt.is_lex_min(model, cut[:j])


def test_stabilizer_is_subgroup(model):
    cut = cl.named_cut(model, "antiprism10")
    stab = gt.stabilizer(model, cut)
    rows = {model.perms[r].tobytes() for r in stab.rows}
    assert np.arange(120, dtype=np.int8).tobytes() in rows
    rng = np.random.default_rng(0)
    idx = stab.rows
    for _ in range(100):
        a, b = rng.choice(idx, size=2)
        comp = gt.compose(model.perms[a], model.perms[b]).astype(np.int8)
        assert comp.tobytes() in rows


def test_conjugation_consistency(model):
    rng = np.random.default_rng(5)
    for seed in range(8):
        cut = random_independent_set(model, seed, 6)
        stab = gt.stabilizer(model, cut)
        row = int(rng.integers(0, 14400))
        image = tuple(sorted(int(t) for t in model.perms[row, list(cut)]))
        stab_img = gt.stabilizer(model, image)
        assert stab_img.order == stab.order
        # g stab(C) g^-1 == stab(g(C)) as sets
        g = model.perms[row]
        ginv = gt.invert(g)
        conj = {
            gt.compose(g, gt.compose(model.perms[r], ginv)).astype(np.int8).tobytes()
            for r in stab.rows
        }
        expect = {model.perms[r].tobytes() for r in stab_img.rows}
        assert conj == expect


def test_canonical_stabilizer_matches_full_scan(model):
    for seed in range(30):
        cut = gt.min_image(model, random_independent_set(model, seed, 7))
        a = gt.canonical_stabilizer(model, cut)
        b = gt.stabilizer(model, cut)
        assert np.array_equal(np.sort(a.rows), np.sort(b.rows))


def test_pack_unpack_roundtrip():
    sets = np.array([[0, 5, 119], [1, 2, 3]], dtype=np.int8)
    codes = gt.pack_sets(sets)
    assert (gt.unpack_sets(codes, 3) == sets).all()
    assert codes[1] < codes[0]
