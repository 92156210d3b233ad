import argparse
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "source"))

from BKZ.bkz import is_bkz_reduced
from DEEPLLL.deep_lll import is_deep_reduced
from LLL.lll import is_lll_reduced
from POTLLL.pot_lll import is_pot_reduced
from common import config
from common.basis_io import read_basis
from common.errors import LatticeError
from common.gso import compute_gso, first_size_violation
from common.types import Basis

NOTIONS = ("lll", "deep", "pot", "bkz")


def fatal_errors(basis):
    fatal_errors = []

    if basis.n > config.DIM_CAP:
        fatal_errors.append(f'rank {basis.n} is above the supported cap of {config.DIM_CAP}!!!')

    if any(basis.is_zero_row(i) for i in range(basis.n)):
        fatal_errors.append('The basis contains a zero row!!!')

    return fatal_errors


def run_oracle(basis, notion, delta, beta, exact=False):
    if notion == 'lll':
        return is_lll_reduced(basis, delta)
    if notion == 'deep':
        return is_deep_reduced(basis, delta, beta)
    if notion == 'bkz':
        return is_bkz_reduced(basis, delta, beta)
    return is_pot_reduced(basis, delta, exact=exact)


def check_basis(basis, notion='pot', delta=config.DEFAULT_DELTA, beta=None, exact=False):
    """'Valid basis', or the list of problems found."""
    if notion not in NOTIONS:
        return [f'unknown notion {notion!r}']
    beta = beta or config.DEFAULT_BETA

    if not isinstance(basis, Basis):
        try:
            basis = read_basis(basis)
        except (OSError, LatticeError) as e:
            return [f'cannot read basis: {e}']

    errors = fatal_errors(basis)
    if errors:
        return errors

    try:
        gso = compute_gso(basis)
    except LatticeError as e:
        return [f'rows are not independent: {e}']

    # every |mu_ij| <= 1/2
    size = first_size_violation(gso, config.ORACLE_SLACK)
    if size is not None:
        i, j, mu = size
        errors.append(f'Not size-reduced: |mu[{i},{j}]| = {abs(mu):.6g}')

    result = run_oracle(basis, notion, delta, beta, exact)
    if not result.ok and result.violation.kind != 'size':
        v = result.violation
        errors.append(f'The {v.kind} condition fails at (k, l) = ({v.k}, {v.l}), value {v.value:.6g}')

    return 'Valid basis' if len(errors) == 0 else errors


if __name__ == '__main__':

    parser = argparse.ArgumentParser(description="Check reducedness of lattice basis files.")
    parser.add_argument("basis_directory", help="Path to the directory containing basis files")
    parser.add_argument("--notion", choices=NOTIONS, default="pot")
    parser.add_argument("--delta", type=float, default=config.DEFAULT_DELTA)
    parser.add_argument("--beta", type=int, default=None)
    parser.add_argument("--exact", action="store_true")
    args = parser.parse_args()

    directory = args.basis_directory
    invalid = 0

    for f in sorted(os.listdir(directory)):
        path = os.path.join(directory, f)
        if not os.path.isfile(path) or f.endswith(('.csv', '.json', '.jsonl', '.md')):
            continue

        message = check_basis(path, args.notion, args.delta, args.beta, args.exact)
        status = "VALID" if type(message) == str else "INVALID"
        invalid += status == "INVALID"
        message_str = '\n\t  '.join(message)
        print(f"File: {f}\n    Notion: {args.notion}\n    Status: {status}\n    Reason: {message if status == 'VALID' else message_str}\n")

    sys.exit(1 if invalid else 0)
