import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import adaptive_brute, lattice_count_23, products_of, psi_brute, psi_table, smooth_trial
from smoothgaps.arith import NumericKind, sieve_primes
from smoothgaps.errors import CapacityError, DomainError
from smoothgaps.smooth import (
    SmoothnessBound,
    enumerate_adaptive,
    enumerate_smooth,
    ennola_main_term_log,
    is_smooth,
    psi_ennola_main,
    psi_exact,
    psi_exact_log,
    read_step_file,
)

B = SmoothnessBound


class TestSmoothnessBound:
    def test_clamped_to_three(self):
        for bound in (B.constant(2), B.log_multiple(0.1), B.slow_regime(1), B.power_log(1, 0.5)):
            assert np.all(bound.evaluate([1, 2, 10, 1000]) >= 3)
            assert bound(1) == 3.0

    @pytest.mark.parametrize("bound", [B.constant(5), B.log_multiple(1.5), B.slow_regime(2), B.power_log(2, 0.7),
                                       B.step_table([(10, 4), (1000, 11), (10**5, 13)])])
    def test_non_decreasing(self, bound):
        xs = np.unique(np.geomspace(1, 1e12, 4000).round())
        ys = bound.evaluate(xs)
        assert np.all(np.diff(ys) >= 0)

    @pytest.mark.parametrize("bound", [B.constant(5), B.log_multiple(1.5), B.slow_regime(2), B.power_log(2, 0.7),
                                       B.step_table([(10, 4), (1000, 11)])])
    def test_scalar_vector_and_log_agree(self, bound):
        for x in (1, 7, 10, 999, 1000, 12345, 10**9):
            assert bound(x) == bound.evaluate([x])[0] == pytest.approx(bound.at_log(math.log(x)))

    def test_log_multiple_formula(self):
        assert B.log_multiple(2)(10**6) == pytest.approx(2 * math.log(10**6))

    def test_slow_regime_formula(self):
        x = 1e300
        l2 = math.log(math.log(x))
        l3 = math.log(l2)
        l4 = max(1.0, math.log(l3))
        assert B.slow_regime(10).at_log(math.log(x)) == pytest.approx(max(3, 10 * l2 * l3 / l4))

    def test_step_boundaries_are_inclusive(self):
        b = B.step_table([(10, 5), (100, 7)])
        assert (b(9), b(10), b(99), b(100)) == (3.0, 5.0, 5.0, 7.0)

    def test_step_validation(self):
        with pytest.raises(DomainError):
            B.step_table([(10, 7), (100, 5)])
        with pytest.raises(DomainError):
            B.step_table([(100, 5), (10, 7)])

    def test_parse_roundtrip(self, tmp_path):
        f = tmp_path / "steps.csv"
        f.write_text("threshold,value\n10,5\n100,7\n")
        assert read_step_file(f) == [(10.0, 5.0), (100.0, 7.0)]
        for text in ("const:3", "logmul:1.5", "slow:2", "powlog:1,0.5", f"step:{f}"):
            b = B.parse(text)
            assert B.from_dict(b.to_dict()) == b

    @pytest.mark.parametrize("text", ["const", "foo:1", "powlog:1", "logmul:-1", "step:/nonexistent"])
    def test_parse_errors(self, text):
        with pytest.raises(DomainError):
            B.parse(text)


class TestIsSmooth:
    def test_values(self):
        assert is_smooth(80, 5)
        assert not is_smooth(14, 5)
        assert is_smooth(1, 3)


class TestPsiExact:
    def test_examples(self):
        assert psi_exact(100, 5) == 34 == psi_brute(100, 5)
        assert psi_exact(10, 2) == 4

    def test_two_three_lattice(self):
        assert psi_exact(10**6, 3) == lattice_count_23(math.log(10**6))
        assert psi_exact_log(30, 3) == lattice_count_23(30) == 627

    @pytest.mark.parametrize("y", [2, 3, 5.5, 7, 11, 30])
    def test_oracle_small(self, y):
        tab = psi_table(3000, y)
        for x in range(1, 3001, 17):
            assert psi_exact(x, y) == tab[x]

    @given(st.integers(1, 10**5), st.sampled_from([2, 3, 4, 5, 6.5, 7, 11, 13]))
    def test_plateau(self, x, y):
        p_r = max(p for p in (2, 3, 5, 7, 11, 13) if p <= y)
        assert psi_exact(x, y) == psi_exact(x, p_r)

    def test_domain(self):
        with pytest.raises(DomainError):
            psi_exact(10, 1.5)
        assert psi_exact(0, 3) == 0

    def test_large_y_against_sieve(self):
        seq = enumerate_adaptive(B.constant(97), 10**5)
        assert psi_exact(10**5, 97) == len(seq)


class TestEnnola:
    def test_examples(self):
        est = ennola_main_term_log(30, 3)
        assert est.value == pytest.approx(900 / (math.log(2) * 2 * math.log(3)), rel=1e-12)
        assert est.value == pytest.approx(590.94, abs=0.01)
        assert est.in_regime
        est9 = ennola_main_term_log(9, 3)
        assert est9.value == pytest.approx(81 / (2 * math.log(2) * math.log(3)), rel=1e-12)
        assert est9.in_regime

    def test_r_equals_one(self):
        est = psi_ennola_main(100, 2)
        assert est.value == pytest.approx(math.log(100) / math.log(2), rel=1e-12)
        # 2 <= sqrt(log 100) ~ 2.146, so the regime condition holds
        assert est.in_regime

    def test_out_of_regime_flag(self):
        assert not psi_ennola_main(100, 5).in_regime

    def test_needs_a_prime(self):
        with pytest.raises(DomainError):
            ennola_main_term_log(10, 1.5)


class TestEnumerateSmooth:
    def test_small(self):
        assert [int(v) for v in enumerate_smooth(3, 0, math.log(13))] == [2, 3, 4, 6, 8, 9, 12]
        assert [int(v) for v in enumerate_smooth(2, 0, math.log(8))] == [2, 4, 8]

    def test_count_against_lattice(self):
        assert len(enumerate_smooth(3, 50, 100)) == lattice_count_23(100) - lattice_count_23(50)

    @pytest.mark.parametrize("y", [2, 3, 5, 7, 11])
    def test_consistency_with_psi(self, y):
        for x in (10, 97, 1000, 4096, 10**5):
            vals = enumerate_smooth(y, 0, math.log(x))
            assert len(vals) == psi_exact(x, y) - 1
            assert [int(v) for v in vals] == products_of([p for p in (2, 3, 5, 7, 11) if p <= y], x)[1:]

    def test_sorted_and_log_consistent(self):
        vals = enumerate_smooth(13, 0, 30)
        exact = [v.exact_value for v in vals]
        assert exact == sorted(exact) and len(set(exact)) == len(exact)
        for v in vals:
            assert abs(v.log_value - math.log(v.exact_value)) <= 1e-9 * math.log(v.exact_value)

    def test_log_values_to_200(self):
        for v in enumerate_smooth(5, 195, 200):
            assert abs(v.log_value - math.log(v.exact_value)) <= 1e-9 * v.log_value

    def test_boundary_exact(self):
        vals = [int(v) for v in enumerate_smooth(3, math.log(100) / 2, math.log(100))]
        assert vals[0] == 12 and vals[-1] == 96
        vals = [int(v) for v in enumerate_smooth(3, math.log(8), math.log(9))]
        assert vals == [9]

    def test_capacity(self):
        with pytest.raises(CapacityError):
            enumerate_smooth(7, 0, 30, max_count=100)

    def test_domain(self):
        with pytest.raises(DomainError):
            enumerate_smooth(3, 5, 4)


class TestEnumerateAdaptive:
    @pytest.mark.parametrize(
        "bound, limit, expected",
        [
            (B.constant(3), 13, [1, 2, 3, 4, 6, 8, 9, 12]),
            (B.constant(5), 30, [1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24, 25, 27, 30]),
            (B.log_multiple(1), 20, [1, 2, 3, 4, 6, 8, 9, 12, 16, 18]),
        ],
    )
    def test_examples(self, bound, limit, expected):
        assert list(enumerate_adaptive(bound, limit)) == expected

    @pytest.mark.parametrize("bound", [B.constant(7), B.log_multiple(1.3), B.slow_regime(3), B.power_log(1, 0.8),
                                       B.step_table([(50, 5), (500, 7), (3000, 13)])])
    def test_brute_force(self, bound):
        seq = enumerate_adaptive(bound, 6000, segment=1000)
        assert list(seq) == adaptive_brute(bound, 6000)
        assert all(smooth_trial(n, bound(n)) for n in seq)

    def test_segment_and_threads_do_not_change_output(self):
        bound = B.log_multiple(1)
        base = enumerate_adaptive(bound, 200_000)
        for seg, th in ((997, 1), (4096, 4), (1 << 16, 2)):
            other = enumerate_adaptive(bound, 200_000, segment=seg, threads=th)
            assert np.array_equal(base.terms, other.terms)
            assert np.array_equal(base.gpf, other.gpf)

    def test_doubling_closure(self):
        seq = enumerate_adaptive(B.log_multiple(1), 10**5)
        terms = set(seq)
        assert all(2 * n in terms for n in terms if 2 * n <= 10**5)

    def test_first_term_and_contains(self):
        seq = enumerate_adaptive(B.constant(3), 100)
        assert seq.terms[0] == 1
        assert 96 in seq and 97 not in seq

    def test_capacity(self):
        with pytest.raises(CapacityError):
            enumerate_adaptive(B.constant(3), 2**64)
        with pytest.raises(CapacityError):
            enumerate_adaptive(B.constant(3), 100, segment=64, capacity=32)

    def test_numeric_kind_parse(self):
        assert NumericKind.parse("big") is NumericKind.BIG
        with pytest.raises(DomainError):
            NumericKind.parse("32")

    def test_gpf_cached(self):
        seq = enumerate_adaptive(B.constant(5), 1000)
        for n, p in zip(seq.terms, seq.gpf):
            assert smooth_trial(int(n), 5) and int(p) == max([1] + [q for q in (2, 3, 5) if n % q == 0])
