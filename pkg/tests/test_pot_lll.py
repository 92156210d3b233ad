import math
import unittest

import numpy as np

from common.errors import ContractViolation
from common.gso import compute_gso, new_gso
from common.insertion import apply_deep_insertion, log_ratio, run_insertion_loop
from common.latgen import CriticalBasisSpec, GenSpec, critical_basis, generate_random_hnf
from common.potential import exact_gso, exact_potential, exact_projections
from common.types import Basis, InsertionStrategy, ReductionParams, ReductionStats
from LLL.lll import is_lll_reduced
from POTLLL.pot_lll import (
    accumulated_projections,
    is_pot_reduced,
    pot_lll_reduce,
    potential_ratio_scan,
    potential_rule,
)
from tests.oracles import hnf, random_basis


class TestDeepInsertion(unittest.TestCase):
    def test_same_place_is_identity(self):
        basis = random_basis(4, seed=1)
        gso = compute_gso(basis)
        before = basis.to_list()
        apply_deep_insertion(basis, gso, 2, 2)
        self.assertEqual(basis.to_list(), before)
        self.assertEqual(gso.valid_prefix, 4)

    def test_cycle(self):
        basis = Basis([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
        gso = compute_gso(basis)
        apply_deep_insertion(basis, gso, 0, 2)
        self.assertEqual(basis.to_list(), [[0, 0, 3], [1, 0, 0], [0, 2, 0]])
        self.assertEqual(gso.valid_prefix, 1)
        self.assertEqual(gso.bstar_sq[0], 9)

    def test_bounds(self):
        basis = random_basis(3, seed=2)
        gso = compute_gso(basis)
        with self.assertRaises(ContractViolation):
            apply_deep_insertion(basis, gso, 2, 1)
        with self.assertRaises(ContractViolation):
            apply_deep_insertion(basis, gso, 0, 3)

    def test_potential_change_matches_projections(self):
        for seed in range(120):
            n = 4 + seed % 6
            basis = random_basis(n, seed=seed)
            gso = compute_gso(basis)
            mu, bstar_sq = exact_gso(basis)
            rng = np.random.default_rng(seed)
            k, l = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
            proj = exact_projections(mu, bstar_sq, l)
            expected = math.prod(proj[i] / bstar_sq[i] for i in range(k, l))

            moved = basis.copy()
            moved.rotate(k, l)
            ratio = exact_potential(moved) / exact_potential(basis)
            self.assertEqual(ratio, expected)
            self.assertTrue(math.isclose(math.exp(log_ratio(gso, gso.projections(l), k, l)),
                                         float(ratio), rel_tol=1e-7), seed)


class TestPotentialRatioScan(unittest.TestCase):
    def test_first_row(self):
        gso = compute_gso(Basis([[1, 0], [0, 1]]))
        row = potential_ratio_scan(gso, 0)
        self.assertEqual((row.argmin_k, row.log_p_min), (0, 0.0))

    def test_orthogonal_rows_never_insert(self):
        gso = compute_gso(Basis([[1, 0], [0, 1]]))
        row = potential_ratio_scan(gso, 1)
        self.assertEqual(row.p_min, 1.0)
        self.assertEqual(list(row.log_p), [0.0, 0.0])

    def test_matches_exact_potential_ratio(self):
        basis = random_basis(8, seed=17)
        gso = compute_gso(basis)
        pot = exact_potential(basis)
        for l in range(1, 8):
            row = potential_ratio_scan(gso, l, gso.projections(l))
            for j in range(l):
                moved = basis.copy()
                moved.rotate(j, l)
                expected = float(exact_potential(moved) / pot)
                self.assertTrue(math.isclose(math.exp(row.log_p[j]), expected, rel_tol=1e-7), (j, l))
            self.assertEqual(row.log_p_min, min(0.0, float(row.log_p[:l].min())))

    def test_ties_keep_larger_place(self):
        # P_{0,2} == P_{1,2} == 1/16
        basis = Basis([[1, 0, 0], [0, 4, 0], [0, 0, 1]])
        gso = compute_gso(basis)
        row = potential_ratio_scan(gso, 2)
        self.assertAlmostEqual(row.p_min, 1 / 16)
        self.assertEqual(row.argmin_k, 1)

    def test_accumulated_agrees_with_by_product(self):
        basis = random_basis(9, seed=23)
        gso = compute_gso(basis)
        for l in range(9):
            np.testing.assert_allclose(accumulated_projections(gso, l), gso.projections(l), rtol=1e-9)
            potential_ratio_scan(gso, l, gso.projections(l), debug=True)

    def test_debug_check_fires_on_mismatch(self):
        gso = compute_gso(random_basis(4, seed=3))
        bad = np.array(gso.projections(3), copy=True)
        bad[0] *= 2
        with self.assertRaises(AssertionError):
            potential_ratio_scan(gso, 3, bad, debug=True)


class TestPotLLL(unittest.TestCase):
    def test_identity_untouched(self):
        basis = Basis([[int(i == j) for j in range(6)] for i in range(6)])
        stats = pot_lll_reduce(basis)
        self.assertEqual(stats.insertions, 0)
        self.assertEqual(basis.to_list(), [[int(i == j) for j in range(6)] for i in range(6)])

    def test_hand_example(self):
        basis = Basis([[3, 0], [1, 1]])
        result = is_pot_reduced(basis, 0.99)
        self.assertEqual(result.violation.kind, "potential")
        self.assertEqual((result.violation.k, result.violation.l), (0, 1))
        self.assertAlmostEqual(result.violation.value, 2 / 9)
        pot_lll_reduce(basis)
        self.assertTrue(is_pot_reduced(basis, 0.99).ok)

    def test_outputs_pass_both_oracles(self):
        for strategy in InsertionStrategy:
            for n in (5, 12, 20, 30):
                basis = generate_random_hnf(GenSpec(n, seed=n))
                params = ReductionParams(insertion_strategy=strategy)
                stats = pot_lll_reduce(basis, params)
                self.assertTrue(is_pot_reduced(basis, 0.99).ok, (strategy, n))
                self.assertTrue(is_lll_reduced(basis, 0.99).ok, (strategy, n))
                self.assertLessEqual(stats.max_insertion_log_ratio, math.log(0.99) + 1e-12)

    def test_exact_oracle_agrees(self):
        for seed in range(4):
            basis = random_basis(8, seed=50 + seed)
            pot_lll_reduce(basis, ReductionParams(preprocess=False))
            self.assertTrue(is_pot_reduced(basis, 0.99, exact=True).ok, seed)

    def test_exact_oracle_rank_limit(self):
        with self.assertRaises(ContractViolation):
            is_pot_reduced(random_basis(11, seed=0), 0.99, exact=True)

    def test_exact_oracle_rejects(self):
        result = is_pot_reduced(Basis([[3, 0], [1, 1]]), 0.99, exact=True)
        self.assertFalse(result.ok)
        self.assertAlmostEqual(result.violation.value, 2 / 9)

    def test_lattice_preserved(self):
        strategies = list(InsertionStrategy)
        for seed in range(100):
            basis = random_basis(3 + seed % 8, seed=200 + seed)
            expected = hnf(basis.to_list())
            pot_lll_reduce(basis, ReductionParams(insertion_strategy=strategies[seed % 2]))
            self.assertEqual(hnf(basis.to_list()), expected, seed)

    def test_every_insertion_lowers_exact_potential(self):
        delta = 0.99
        for strategy in InsertionStrategy:
            for seed in range(5):
                basis = random_basis(8, seed=400 + seed, spread=200)
                stats = ReductionStats()
                seen = []

                def record(b, gso, l):
                    seen.append((stats.insertions, exact_potential(b)))

                run_insertion_loop(basis, new_gso(basis), potential_rule(delta, strategy), stats, on_pass=record)
                seen.append((stats.insertions, exact_potential(basis)))
                self.assertGreater(stats.insertions, 0, (strategy, seed))
                for (before, pot0), (after, pot1) in zip(seen, seen[1:]):
                    if after > before:
                        self.assertLess(pot1, pot0)
                        self.assertLessEqual(float(pot1 / pot0), delta * (1 + 1e-9))
                    else:
                        self.assertEqual(pot1, pot0)

    def test_debug_checks(self):
        basis = generate_random_hnf(GenSpec(15, seed=7))
        pot_lll_reduce(basis, ReductionParams(debug_checks=True))
        self.assertTrue(is_pot_reduced(basis, 0.99).ok)

    def test_critical_basis_is_fixed(self):
        for n in (5, 10, 20):
            basis = critical_basis(CriticalBasisSpec(n))
            before = basis.to_list()
            first = basis.norm_sq(0)
            stats = pot_lll_reduce(basis, ReductionParams(delta=1 - 1e-6))
            self.assertEqual(stats.insertions, 0, n)
            self.assertEqual(basis.to_list(), before, n)
            self.assertEqual(basis.norm_sq(0), first)


if __name__ == "__main__":
    unittest.main()
