import itertools
import math

import pytest

import seqbias


def test_relative_ranks_round_trip():
    assert seqbias.relative_ranks([2, 3, 1]) == [1, 2, 1]
    for perm in itertools.permutations(range(1, 6)):
        perm = list(perm)
        assert seqbias.from_relative_ranks(seqbias.relative_ranks(perm)) == perm


def test_metrics():
    rev = [4, 3, 2, 1]
    ident = [1, 2, 3, 4]
    assert seqbias.d_kt(rev, ident) == pytest.approx(6 / 16)
    assert seqbias.d_sf(ident, ident) == 0.0
    assert seqbias.d_inv(rev, ident) <= seqbias.d_kt(rev, ident)
    with pytest.raises(ValueError):
        seqbias.d_sf([1, 2], [1, 2, 3])


def test_noiseless_scores_and_estimate():
    y = seqbias.generate_scores([2, 3, 1])
    assert y == pytest.approx([1 / 2, 2 / 3, 1 / 4])
    res = seqbias.ls_estimate(y)
    assert res["ranking"] == [2, 3, 1]
    assert res["rhat"] == [1, 2, 1]
    assert res["objective"] == pytest.approx(0.0)


def test_ls_matches_brute_force():
    y = seqbias.generate_scores([3, 1, 4, 2, 5], noise="uniform:0.3", seed=11)
    res = seqbias.ls_estimate(y)
    minimizers, objective = seqbias.brute_force_ls(y)
    assert res["ranking"] in minimizers
    assert res["objective"] == pytest.approx(objective, abs=1e-12)


def test_induced_ranking_and_conflicts():
    assert seqbias.ranking_from_scores([0.5, 0.2, 0.7]) == [2, 1, 3]
    assert (1, 5) in seqbias.detect_conflicts([1, 3, 4, 5, 2])
    assert seqbias.detect_conflicts(seqbias.exists_conflict_ranking(4))


def test_adversarial_and_bayes():
    adv = seqbias.adversarial_permutation(8)
    assert adv == [1, 2, 3, 4, 5, 7, 6, 8]
    induced = seqbias.ranking_from_scores(seqbias.generate_scores(adv))
    assert seqbias.d_kt(induced, adv) >= 1 / 64
    assert seqbias.exact_bayes_loss(2) == pytest.approx(1 / 36, abs=1e-12)
    shifted = seqbias.exact_bayes_loss(3, lambda t, r: (r + 0.5) / (t + 1))
    assert seqbias.exact_bayes_loss(3) <= shifted


def test_bound_and_trial():
    assert seqbias.sf_error_bound([1, 2, 3], 0.5) == pytest.approx(1 / 3)
    rec = seqbias.run_trial(50, 0.0, seed=4)
    assert rec["d_sf_ls"] == 0.0
    assert len(rec["entrywise_induced"]) == 50


def test_simulate_writes_csv(tmp_path):
    files = seqbias.simulate("per_position", [10], [0.1], trials=3, seed=1, out_dir=str(tmp_path))
    with open(files["trials"]) as f:
        assert f.readline().strip() == "sweep,n,delta,trial,seed,d_sf_ls,d_sf_induced,d_kt_ls,d_kt_induced"
    assert "per_position" in files
    with pytest.raises(ValueError):
        seqbias.simulate("vary_m", [10], [0.1])


def test_bad_input():
    with pytest.raises(ValueError):
        seqbias.relative_ranks([1, 1, 2])
    with pytest.raises(ValueError):
        seqbias.ranking_from_scores([0.1, math.nan])
    with pytest.raises(ValueError):
        seqbias.generate_scores([1, 2], noise="uniform:2")
