import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monoscope.ggm import (
    ggm,
    gghz_boundary,
    gghz_boundary_two_copies,
    proposition_check,
)
from monoscope.monogamy import monogamy_score, monogamy_score_m_copies, score_parts
from monoscope.rng import SeededRng
from monoscope.states import (
    GGHZParams,
    InvalidStateError,
    PureState,
    basis_state,
    gghz_state,
    haar_random_pure,
    sample_ghz_class,
    sample_w_class,
)

from conftest import random_unitary


def _ggm_oracle(psi):
    # numpy-only: largest eigenvalue of each single-qubit marginal
    t = psi.amplitudes.reshape(2, 2, 2)
    best = 0.0
    for k in range(3):
        m = np.moveaxis(t, k, 0).reshape(2, 4)
        best = max(best, np.linalg.eigvalsh(m @ m.conj().T)[-1])
    return 1.0 - best


class TestGgm:
    def test_product(self):
        assert ggm(basis_state("000")).value == pytest.approx(0.0, abs=1e-14)

    def test_ghz(self, ghz):
        assert ggm(ghz).value == pytest.approx(0.5)

    def test_w(self, w):
        assert ggm(w).value == pytest.approx(1 / 3)

    @pytest.mark.parametrize("alpha", [0.5, 0.7, 0.95])
    def test_gghz(self, alpha):
        assert ggm(gghz_state(GGHZParams(alpha))).value == pytest.approx(1 - alpha, abs=1e-12)

    def test_random_vs_numpy(self):
        for i in range(50):
            psi = haar_random_pure((2, 2, 2), SeededRng(i))
            assert ggm(psi).value == pytest.approx(_ggm_oracle(psi), abs=1e-12)

    def test_local_unitary_invariance(self, nprng):
        for i in range(10):
            psi = sample_ghz_class(SeededRng(i))
            u = np.kron(np.kron(random_unitary(nprng, 2), random_unitary(nprng, 2)), random_unitary(nprng, 2))
            assert ggm(PureState(u @ psi.amplitudes)).value == pytest.approx(ggm(psi).value, abs=1e-10)

    def test_range(self):
        for i in range(100):
            assert 0.0 <= ggm(haar_random_pure((2, 2, 2), SeededRng(i))).value <= 0.5 + 1e-12

    def test_rejects_non_three_qubit(self):
        with pytest.raises(InvalidStateError):
            ggm(PureState(np.ones(4) / 2))


class TestBoundary:
    def test_examples(self):
        assert gghz_boundary(0.0) == pytest.approx(0.0, abs=1e-15)
        assert gghz_boundary(0.5) == pytest.approx(0.5)
        assert gghz_boundary(np.sqrt(0.75 * 0.25)) == pytest.approx(0.25)
        assert gghz_boundary_two_copies(0.0) == pytest.approx(0.0, abs=1e-15)
        assert gghz_boundary_two_copies(1.5) == pytest.approx(0.5)

    def test_vectorized(self):
        out = gghz_boundary(np.array([0.0, 0.5]))
        np.testing.assert_allclose(out, [0.0, 0.5], atol=1e-15)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.5, 1.0))
    def test_round_trip_one_copy(self, alpha):
        psi = gghz_state(GGHZParams(alpha))
        delta = monogamy_score(score_parts(psi))
        assert gghz_boundary(max(delta, 0.0)) == pytest.approx(1 - alpha, abs=1e-7)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.5, 1.0))
    def test_round_trip_two_copies(self, alpha):
        psi = gghz_state(GGHZParams(alpha))
        d2 = monogamy_score_m_copies(score_parts(psi), 2)
        assert gghz_boundary_two_copies(max(d2, 0.0)) == pytest.approx(1 - alpha, abs=1e-7)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.0, 0.5), st.floats(0.0, 0.5))
    def test_monotone(self, x, y):
        lo, hi = sorted((x, y))
        assert gghz_boundary(lo) <= gghz_boundary(hi) + 1e-15

    @pytest.mark.parametrize("bad", [-0.1, 0.51, float("nan")])
    def test_range_errors(self, bad):
        with pytest.raises(ValueError):
            gghz_boundary(bad)

    @pytest.mark.parametrize("bad", [-0.1, 1.6])
    def test_range_errors_two_copies(self, bad):
        with pytest.raises(ValueError):
            gghz_boundary_two_copies(bad)


class TestPropositionCheck:
    @pytest.mark.parametrize("alpha", [0.5, 0.6, 0.9])
    def test_gghz_on_boundary(self, alpha):
        chk = proposition_check(gghz_state(GGHZParams(alpha)))
        assert chk.holds and chk.holds_2
        assert chk.ggm == pytest.approx(chk.bound, abs=1e-7)
        assert chk.ggm == pytest.approx(chk.bound_2, abs=1e-7)

    def test_ghz(self, ghz):
        chk = proposition_check(ghz)
        assert chk.delta == pytest.approx(0.5)
        assert chk.bound == pytest.approx(0.5)
        assert chk.holds

    def test_w(self, w):
        chk = proposition_check(w)
        assert chk.delta == pytest.approx(0.0593818616, abs=1e-9)
        assert chk.bound == pytest.approx(0.0035394, abs=1e-6)
        assert chk.ggm == pytest.approx(1 / 3)
        assert chk.holds and chk.holds_2
        assert chk.nodal_attains_max

    def test_random_monogamous_hold(self):
        n = 0
        for i in range(300):
            psi = sample_w_class(SeededRng(i)) if i % 2 else sample_ghz_class(SeededRng(i))
            if monogamy_score(score_parts(psi)) < 0:
                continue
            chk = proposition_check(psi)
            assert chk.holds and chk.holds_2
            n += 1
        assert n > 100

    def test_rejects_nonmonogamous(self):
        for i in range(200):
            psi = sample_w_class(SeededRng(i))
            if monogamy_score(score_parts(psi)) < -1e-6:
                with pytest.raises(ValueError):
                    proposition_check(psi)
                return
        pytest.fail("no nonmonogamous sample found")
