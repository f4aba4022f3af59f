import csv
import io
import math

import pytest

import vsacap


def test_sizing_examples():
    assert vsacap.size("mapi", "pairs", C=8, N=16, M=100, delta=0.01)["m"] == 1179
    assert vsacap.size("mapb", "member", n=10, d=256, delta=0.05)["m"] == 1367
    r = vsacap.size("cbloom", "intersection", K_b=1, eps=1, delta=math.exp(-3), n_v=0, n_w=0)
    assert r["k"] == 2
    with pytest.raises(ValueError):
        vsacap.size("mapi", "norm", eps=0.5)


def test_mapi_intersection_rounds_exactly():
    cb = vsacap.Codebook("dense-sign", m=4096, d=100, seed=3, scaled=True)
    x = vsacap.SymbolSet(100, [1, 2, 3, 40])
    y = vsacap.SymbolSet(100, [2, 3, 41])
    assert vsacap.intersection_size(x, y) == 2
    assert vsacap.intersection_estimate(vsacap.sketch(cb, x), vsacap.sketch(cb, y)) == 2
    assert vsacap.sketch(cb, x) + vsacap.sketch(cb, y) == vsacap.sketch(cb, vsacap.SymbolSet(100, {1: 1, 2: 2, 3: 2, 40: 1, 41: 1}))


def test_mapb_membership():
    cb = vsacap.Codebook("dense-sign", m=1367, d=256, seed=1)
    x = vsacap.SymbolSet(256, range(10))
    b = vsacap.bundle_sign(cb, x)
    assert all(vsacap.membership_test(b, j, 0.05).is_member == (j < 10) for j in range(256))


def test_bloom_and_counting_bloom():
    assert vsacap.h_mk(1000, 4, 1000 * (1 - (1 - 1 / 1000) ** 200)) == pytest.approx(50, rel=1e-12)
    cb = vsacap.Codebook("sparse-binary-exact", m=2000, d=100, k=4, seed=2)
    v = vsacap.SymbolSet(100, {1: 3, 2: 1})
    w = vsacap.SymbolSet(100, {1: 2, 5: 4})
    bv, bw = vsacap.bundle_count(cb, v), vsacap.bundle_count(cb, w)
    assert bv.mass() == 4 * v.l1_norm()
    assert vsacap.generalized_intersection_estimate(bv, bw) >= vsacap.wedgedot(v, w)


def test_hopfield_recall():
    cb = vsacap.Codebook("dense-sign", m=512, d=8, seed=4)
    net = vsacap.train_columns(cb, 8)
    x = cb.column(3)
    noisy = [0] * 200 + x[200:]
    state, converged, _ = vsacap.recall(net, noisy)
    assert converged and state == x


def test_oracles():
    assert vsacap.agreement_probability(4) == 0.6875
    assert vsacap.depth_agreement_probability(3) == pytest.approx(0.625)


def test_experiment_is_deterministic():
    config = {"arch": "mapb", "task": "member", "grid": {"n": [4], "d": [64]}, "trials": 20, "seed": 5}
    one = vsacap.experiment(config)
    assert one == vsacap.experiment({**config, "threads": 4})
    rows = list(csv.DictReader(io.StringIO(one)))
    assert rows[0]["rng_version"] == vsacap.rng_version
    assert rows[0]["status"] == "ok"


def test_bundle_files(tmp_path):
    cb = vsacap.Codebook("sparse-binary-trials", m=256, d=50, k=3, seed=9)
    b = vsacap.bundle_bloom(cb, vsacap.SymbolSet(50, [1, 7]))
    path = str(tmp_path / "b.vsab")
    vsacap.save_bundle(path, b)
    assert vsacap.load_bundle(path) == b
    with pytest.raises(OSError):
        vsacap.load_bundle(str(tmp_path / "missing"))
