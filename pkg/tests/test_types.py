import math
import os
import unittest
from unittest import mock

import numpy as np

from common.errors import ContractViolation
from common.types import (
    Basis,
    FloatConfig,
    FloatKind,
    GSOState,
    InsertionStrategy,
    ReductionParams,
    ReductionStats,
)


class TestBasis(unittest.TestCase):
    def test_integer_rows_stay_exact(self):
        b = Basis([[10**40, 1], [3, -7]])
        self.assertTrue(b.is_integral)
        self.assertEqual(b.rows.dtype, object)
        self.assertEqual(b.to_list(), [[10**40, 1], [3, -7]])
        self.assertEqual(b.norm_sq(0), 10**80 + 1)

    def test_float_rows(self):
        b = Basis(np.array([[1.0, 0.0], [0.5, 0.75]]))
        self.assertFalse(b.is_integral)
        self.assertEqual(b.to_list(), [[1.0, 0.0], [0.5, 0.75]])

    def test_shape_contract(self):
        with self.assertRaises(ContractViolation):
            Basis([[1], [2]])
        with self.assertRaises(ContractViolation):
            Basis([[1, 2], [3]])
        with self.assertRaises(ContractViolation):
            Basis([])
        with self.assertRaises(ContractViolation):
            Basis([["a", "b"]])
        self.assertEqual((Basis([[1, 2, 3]]).n, Basis([[1, 2, 3]]).m), (1, 3))

    def test_rotate_moves_row_l_to_k(self):
        b = Basis([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 4]])
        b.rotate(0, 2)
        self.assertEqual(b.to_list(), [[0, 0, 3, 0], [1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 0, 4]])
        b.rotate(3, 3)
        self.assertEqual(b.to_list()[3], [0, 0, 0, 4])

    def test_insert_and_delete_row(self):
        b = Basis([[1, 0], [0, 1]])
        b.insert_row(1, [5, 5])
        self.assertEqual(b.to_list(), [[1, 0], [5, 5], [0, 1]])
        self.assertTrue(b.is_integral)
        b.delete_row(0)
        self.assertEqual(b.to_list(), [[5, 5], [0, 1]])

    def test_copy_is_independent(self):
        b = Basis([[1, 2], [3, 4]])
        c = b.copy()
        c.rows[0, 0] = 9
        self.assertEqual(b.to_list()[0][0], 1)
        self.assertNotEqual(b, c)
        self.assertEqual(b, Basis([[1, 2], [3, 4]]))

    def test_zero_row(self):
        b = Basis([[0, 0], [1, 1]])
        self.assertTrue(b.is_zero_row(0))
        self.assertFalse(b.is_zero_row(1))

    def test_max_norm_sq_log2(self):
        self.assertEqual(Basis([[2**600, 0], [0, 1]]).max_norm_sq_log2(), 1201.0)


class TestFloatConfig(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(ContractViolation):
            FloatConfig(relative_tolerance=0)
        with self.assertRaises(ContractViolation):
            FloatConfig(relative_tolerance=1e-2)
        with self.assertRaises(ContractViolation):
            FloatConfig(kind="quad")
        self.assertIs(FloatConfig(kind="extended").kind, FloatKind.EXTENDED)
        self.assertEqual(FloatConfig().dtype, np.float64)

    def test_kind_follows_entry_size(self):
        with mock.patch.dict(os.environ, {}, clear=False):
            os.environ.pop("POTLLL_FLOAT", None)
            self.assertIs(FloatConfig.for_basis(Basis([[3, 1], [1, 2]])).kind, FloatKind.HARDWARE_DOUBLE)
            self.assertIs(FloatConfig.for_basis(Basis([[2**600, 0], [0, 1]])).kind, FloatKind.EXTENDED)

    def test_environment_override(self):
        with mock.patch.dict(os.environ, {"POTLLL_FLOAT": "extended"}):
            self.assertIs(FloatConfig.for_basis(Basis([[1, 0], [0, 1]])).kind, FloatKind.EXTENDED)
        with mock.patch.dict(os.environ, {"POTLLL_FLOAT": "bogus"}):
            with self.assertRaises(ContractViolation):
                FloatConfig.for_basis(Basis([[1, 0], [0, 1]]))


class TestGSOState(unittest.TestCase):
    def test_empty_state_is_invalid(self):
        gso = GSOState.empty(3, FloatConfig())
        self.assertEqual(gso.valid_prefix, 0)
        self.assertEqual(gso.n, 3)
        with self.assertRaises(ContractViolation):
            gso.require_valid(1)
        gso.require_valid(0)

    def test_insert_and_delete_keep_shapes(self):
        gso = GSOState.empty(3, FloatConfig())
        gso.valid_prefix = 3
        gso.insert_row(1)
        self.assertEqual(gso.mu.shape, (4, 4))
        self.assertEqual(gso.mu[1, 1], 1)
        self.assertEqual(gso.valid_prefix, 1)
        gso.valid_prefix = 4
        gso.delete_row(2)
        self.assertEqual(gso.proj_sq.shape, (3, 3))
        self.assertEqual(gso.bstar_sq.shape, (3,))
        self.assertEqual(gso.valid_prefix, 2)


class TestParamsAndStats(unittest.TestCase):
    def test_delta_range(self):
        with self.assertRaises(ContractViolation):
            ReductionParams(delta=0.25)
        with self.assertRaises(ContractViolation):
            ReductionParams(delta=1.01)
        self.assertEqual(ReductionParams(delta=1).delta, 1)

    def test_beta(self):
        with self.assertRaises(ContractViolation):
            ReductionParams(beta=1)
        with self.assertRaises(ContractViolation):
            ReductionParams().require_beta()
        self.assertEqual(ReductionParams(beta=4).require_beta(), 4)

    def test_strategy_coerced(self):
        p = ReductionParams(insertion_strategy="first_below_delta")
        self.assertIs(p.insertion_strategy, InsertionStrategy.FIRST_BELOW_DELTA)

    def test_stats_merge_and_dict(self):
        a = ReductionStats(loop_iterations=3, insertions=1, elapsed=0.5)
        a.record_insertion(-0.2)
        b = ReductionStats(loop_iterations=2, sweeps=1)
        a.merge(b)
        self.assertEqual((a.loop_iterations, a.insertions, a.sweeps), (5, 2, 1))
        self.assertAlmostEqual(a.max_insertion_log_ratio, -0.2)
        self.assertIsNone(ReductionStats().to_dict()["max_insertion_log_ratio"])
        self.assertEqual(a.to_dict()["loop_iterations"], 5)
        self.assertTrue(math.isinf(ReductionStats().max_insertion_log_ratio))


if __name__ == "__main__":
    unittest.main()
