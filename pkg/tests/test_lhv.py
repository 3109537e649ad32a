import pytest

from graph_selftest.certificates import MeasurementSetting, make_certificate
from graph_selftest.devices import IncompatibleProviderError, compute_epsilon
from graph_selftest.graph import GraphError, is_bipartite
from graph_selftest.lhv import (
    HiddenAssignment,
    LHVProvider,
    LHVSettingError,
    all_xz_settings,
    bipartite_completeness_check,
    enumerate_lhv_expectation,
    lhv_expectation,
    lhv_sample_expectation,
    nonbipartite_violation,
)

from conftest import CORPUS, NON_BIPARTITE, SMALL, cycle, path

S = MeasurementSetting
BIPARTITE = [name for name in CORPUS if name not in NON_BIPARTITE]


class TestAnalytic:
    def test_p3_examples(self):
        assert lhv_expectation(path(3), S("ZXZ")) == 1
        assert lhv_expectation(path(3), S("ZZI")) == 0

    def test_c5_all_x_is_plus_one(self):
        # N(V) is empty on a cycle, so the product is deterministic
        assert lhv_expectation(cycle(5), S("XXXXX")) == 1
        assert enumerate_lhv_expectation(cycle(5), S("XXXXX")) == 1

    def test_d_rejected(self):
        with pytest.raises(LHVSettingError):
            lhv_expectation(path(2), S("DZ"))
        with pytest.raises(LHVSettingError):
            lhv_sample_expectation(path(2), S("DZ"), 10, 0)

    @pytest.mark.parametrize("name", SMALL)
    def test_matches_enumeration(self, name):
        g = CORPUS[name]
        for s in all_xz_settings(g.n):
            assert lhv_expectation(g, s) == enumerate_lhv_expectation(g, s)

    def test_x_values_recomputed(self):
        h = HiddenAssignment(path(3), (1, -1, -1))
        assert h.x_values == (-1, -1, -1)
        assert h.outcome(S("ZXZ")) == 1


class TestSampler:
    def test_fair_coin(self):
        assert abs(lhv_sample_expectation(path(3), S("ZII"), 100_000, seed=1)) <= 0.02

    @pytest.mark.parametrize("name", BIPARTITE)
    def test_stabilizer_rows_exact(self, name):
        g = CORPUS[name]
        for row in make_certificate(g, 2).rows[: g.n]:
            assert lhv_sample_expectation(g, row.setting, 50, seed=7) == 1.0

    def test_c3_all_x(self):
        assert lhv_sample_expectation(cycle(3), S("XXX"), 1000, seed=0) == 1.0

    def test_deterministic(self):
        a = lhv_sample_expectation(cycle(5), S("ZZIII"), 500, seed=3)
        b = lhv_sample_expectation(cycle(5), S("ZZIII"), 500, seed=3)
        assert a == b

    def test_zero_trials(self):
        with pytest.raises(ValueError):
            lhv_sample_expectation(path(2), S("ZI"), 0, seed=0)


class TestCompleteness:
    @pytest.mark.parametrize("name,count", [("P2", 9), ("P4", 81), ("C4", 81)])
    def test_examples(self, name, count):
        rep = bipartite_completeness_check(CORPUS[name])
        assert rep.complete and rep.settings_checked == count and rep.mismatches == []

    @pytest.mark.parametrize("name", BIPARTITE)
    def test_corpus(self, name):
        assert bipartite_completeness_check(CORPUS[name]).complete

    def test_rejects_non_bipartite(self):
        with pytest.raises(GraphError):
            bipartite_completeness_check(cycle(3))


class TestViolation:
    @pytest.mark.parametrize("name,row", [("C3", "XXX"), ("C5", "XXXXX"), ("tri+pendant", "XXXZ")])
    def test_gap_two(self, name, row):
        rep = nonbipartite_violation(CORPUS[name])
        assert rep.row == row
        assert (rep.lhv, rep.quantum, rep.gap) == (1.0, -1.0, 2.0)
        assert rep.both_signs_fail

    def test_rejects_bipartite(self):
        with pytest.raises(GraphError):
            nonbipartite_violation(path(4))

    def test_dict(self):
        d = nonbipartite_violation(cycle(3)).to_dict()
        assert d["bipartite"] is False and d["gap"] == 2.0


class TestProvider:
    def test_c5_kind1_epsilon(self):
        c = make_certificate(cycle(5), 1)
        rep = compute_epsilon(LHVProvider(c.graph), c)
        assert rep.epsilon == 2.0 and rep.worst_row().settings == "XXXXX"

    @pytest.mark.parametrize("name", BIPARTITE)
    def test_kind2_d_rows_rejected(self, name):
        g = CORPUS[name]
        assert is_bipartite(g)
        c = make_certificate(g, 2)
        with pytest.raises(IncompatibleProviderError):
            compute_epsilon(LHVProvider(g), c)

    def test_sampled_provider(self):
        c = make_certificate(cycle(3), 1)
        rep = compute_epsilon(LHVProvider(c.graph, trials=200, seed=5), c)
        assert rep.epsilon == 2.0
