import math

import pytest

import spmvsel

# 4x4 example with an empty row:
# [1 0 0 2]
# [0 3 0 0]
# [0 0 0 0]
# [4 5 0 6]
E_ENTRIES = [(0, 0, 1.0), (0, 3, 2.0), (1, 1, 3.0), (3, 0, 4.0), (3, 1, 5.0), (3, 3, 6.0)]


def matrix_e():
    return spmvsel.CsrMatrix.from_triplets(4, 4, E_ENTRIES)


def dense_matvec(entries, n, x):
    y = [0.0] * n
    for r, c, v in entries:
        y[r] += v * x[c]
    return y


def test_csr_layout():
    a = matrix_e()
    assert (a.nrows, a.ncols, a.nnz) == (4, 4, 6)
    assert a.rowptr == [0, 2, 3, 3, 6]
    assert a.colind == [0, 3, 1, 0, 1, 3]


def test_invalid_csr_rejected():
    with pytest.raises(Exception):
        spmvsel.CsrMatrix(2, 2, [0, 2, 1], [0, 1], [1.0, 2.0])


def test_matrix_market_round_trip(tmp_path):
    a = matrix_e()
    path = tmp_path / "e.mtx"
    path.write_text(a.to_matrix_market())
    b = spmvsel.load_matrix(path)
    assert (b.rowptr, b.colind, b.values) == (a.rowptr, a.colind, a.values)
    c = spmvsel.parse_matrix(a.to_matrix_market())
    assert c.values == a.values


def test_spmv_matches_dense():
    x = [1.0, 2.0, 3.0, 4.0]
    want = dense_matvec(E_ENTRIES, 4, x)
    for workers in (1, 2, 4):
        assert spmvsel.spmv(matrix_e(), x, workers=workers) == want


def test_spmv_dimension_error():
    with pytest.raises(Exception):
        spmvsel.spmv(matrix_e(), [1.0, 2.0])


def test_features_of_e():
    f = spmvsel.extract_features(matrix_e())
    assert list(f) == spmvsel.feature_names()
    assert f["density"] == 0.375
    assert (f["nnz_min"], f["nnz_max"], f["nnz_avg"]) == (0, 3, 1.5)
    assert f["dispersion_avg"] == 0.5625
    # population sd of per-row dispersions {0.5, 1, 0, 0.75}
    assert math.isclose(f["dispersion_sd"], math.sqrt(0.13671875), rel_tol=1e-12)
    assert f["miss_ratio"] == 0


def test_presets():
    assert set(spmvsel.feature_subset("xeon-phi-nb")) <= set(spmvsel.feature_names())
    assert spmvsel.feature_subset("all") == spmvsel.feature_names()
    with pytest.raises(Exception):
        spmvsel.feature_subset("nope")


def test_profiling_advice():
    a = spmvsel.generate("banded", 2000, 5, seed=1)
    cfg = spmvsel.AdvisorConfig(workers=1, reps=3, warmup=1)
    r = spmvsel.advise(a, "profiling", config=cfg)
    assert r["class"] in {"CML", "MB", "IMB", "CMP"}
    assert r["benchmark"]["t_baseline"] > 0
    assert r["features"] is None


def test_train_persist_and_advise(tmp_path):
    names = ["nnz_avg"]
    x = [[1.0], [2.0], [3.0], [10.0], [11.0], [12.0]]
    y = ["CMP", "CMP", "CMP", "MB", "MB", "MB"]
    for kind in ("tree", "nb"):
        model = spmvsel.train_model(x, y, names, kind)
        assert model.kind == kind
        assert model.predict([2.5]) == "CMP"
        assert model.predict([11.5]) == "MB"
        path = tmp_path / f"{kind}.json"
        model.save(path)
        again = spmvsel.load_model(path)
        assert again.to_json() == model.to_json()
        assert spmvsel.loo_accuracy(x, y, names, kind) == 1.0
    r = spmvsel.advise(spmvsel.generate("irregular", 500, 12, seed=3), "features", model=again)
    assert r["class"] == "MB"
    assert r["benchmark"] is None
    assert r["features"]["nnz_avg"] == 12


def test_features_mode_needs_model():
    with pytest.raises(spmvsel.UsageError):
        spmvsel.advise(matrix_e(), "features")


def test_generator_is_deterministic():
    a = spmvsel.generate("skewed", 300, 6, seed=7)
    b = spmvsel.generate("skewed", 300, 6, seed=7)
    assert (a.rowptr, a.colind, a.values) == (b.rowptr, b.colind, b.values)


def test_speedup_stats():
    assert spmvsel.speedup_stats([1, 2, 3, 4, 5]) == {"min": 1, "q1": 2, "mean": 3, "q3": 4, "max": 5}
