import json
from math import comb

import pytest

from heisdyn.words import (WordCountTable, free_group_series, load_or_compute, word_count_free,
                           word_count_heisenberg, word_count_z2, z2_closed_form)
from heisdyn.ring import X, Y, power


@pytest.fixture(scope="module")
def heis():
    return word_count_heisenberg(40).counts


def test_small_heisenberg_counts(heis):
    assert [heis[n] for n in range(0, 11)] == [1, 0, 4, 0, 28, 0, 232, 0, 2156, 0, 21944]


def test_counts_match_brute_force():
    h = X + X ** -1 + Y + Y ** -1
    for n in range(0, 9):
        assert power(h, n).constant_term() == word_count_heisenberg(8).counts[n]


def test_free_group_counts():
    assert [int(v) for v in free_group_series(4)[1:]] == [4, 28, 232, 2092]
    t = word_count_free(12).counts
    assert t[1] == 0 and t[8] == 2092


def test_z2_counts():
    t = word_count_z2(20).counts
    for n in range(21):
        assert t[n] == z2_closed_form(n)
    assert t[4] == comb(4, 2) ** 2


def test_ordering(heis):
    free = word_count_free(40).counts
    z2 = word_count_z2(40).counts
    for n in range(0, 41, 2):
        assert free[n] <= heis[n] <= z2[n]


def test_heisenberg_asymptotic(heis):
    # r(2n) ~ 4^(2n) / (2 n^2)
    for n in range(15, 21):
        assert 0.7 < heis[2 * n] * 2 * n * n / 4 ** (2 * n) < 1.3


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "wc.json"
    a = load_or_compute("heisenberg", 12, path)
    d = json.loads(path.read_text())
    assert d["schema"] == "heisdyn-wordcounts/1"
    assert all(isinstance(v, str) for v in d["counts"].values())
    b = load_or_compute("heisenberg", 10, path)
    assert b.counts == {n: c for n, c in a.counts.items() if n <= 10}
    assert WordCountTable.from_json(d).counts == a.counts


def test_cache_env_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("HEISDYN_CACHE", str(tmp_path))
    load_or_compute("z2", 6)
    assert (tmp_path / "wordcounts-z2.json").exists()


def test_corrupt_cache_is_recomputed(tmp_path):
    path = tmp_path / "wc.json"
    path.write_text("{not json")
    assert load_or_compute("free2", 6, path).counts[6] == 232
