"""
Optimality properties of the minimal completion against random frames.

Every random completion A + sum phi phi^T (A = diag(alpha), ||phi_n||^2 = mu_n)
has a spectrum that majorizes beta, so beta is at least as tight under
every Schur-convex measure.
"""

import numpy as np

from logic_blocks.optimizer import optimal_completion_fast
from logic_blocks.spectra import completion_feasible
from logic_blocks.synthesis import SymmetricMatrix, sym_eigen

SLACK = 1e-9
DRAWS = 20


def _random_completion(rng: np.random.Generator, alpha: np.ndarray, mu: np.ndarray) -> np.ndarray:
    size = alpha.size
    operator = np.diag(alpha)
    for length in mu:
        direction = rng.standard_normal(size)
        phi = np.sqrt(length) * direction / np.linalg.norm(direction)
        operator = operator + np.outer(phi, phi)
    values, _ = sym_eigen(SymmetricMatrix((operator + operator.T) / 2))
    return values


class TestRandomCompletions:
    def test_beta_is_minimal(self, random_problems):
        rng = np.random.default_rng(31337)
        for alpha, mu in random_problems(seed=100, count=100, max_m=6, max_n=8):
            beta = optimal_completion_fast(alpha, mu)
            assert completion_feasible(alpha, beta, mu).feasible

            beta_f = np.array([float(v) for v in beta])
            alpha_f = np.array([float(v) for v in alpha])
            mu_f = np.array([float(v) for v in mu])
            for _ in range(DRAWS):
                lam = _random_completion(rng, alpha_f, mu_f)

                slack = np.cumsum(lam) - np.cumsum(beta_f)
                assert np.min(slack) >= -SLACK
                assert abs(slack[-1]) <= SLACK

                assert beta_f[0] <= lam[0] + SLACK
                assert lam[-1] <= beta_f[-1] + SLACK
                assert np.sum(beta_f ** 2) <= np.sum(lam ** 2) + SLACK
                if beta_f[-1] > 0 and lam[-1] > 0:
                    inverse_beta = np.sum(1.0 / beta_f)
                    assert inverse_beta <= np.sum(1.0 / lam) + SLACK * max(1.0, inverse_beta)
