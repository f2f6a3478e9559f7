"""Empirical Pimsner-Popa constants.

For random positive ``b`` in the bottomless part of corner ``(n, n)`` this finds
the largest ``lam`` with ``E_n(b) - lam * b >= 0`` and compares the worst case
against ``delta**-n`` and ``delta**-2n``.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh

from gjs import GradedAlgebra, TemperleyLieb
from gjs.sampling import Sampler


@dataclass
class Config:
    delta: Fraction = Fraction(5, 2)
    levels: tuple[int, ...] = (1, 2)
    samples: int = 60
    seed: int = 42


def corner_matrices(alg, a, n):
    gns = alg.level_gns(n)
    reach = [i for i, (key, _) in enumerate(gns.basis) if key[1] == n]
    sub = np.ix_(reach, reach)
    gram = gns.gram[sub]
    return gram, gram @ gns.left_multiplication(a)[sub]


def best_constant(alg, b, n) -> float:
    """Largest ``lam`` with ``E_n(b) >= lam * b`` on the GNS vectors the corner reaches."""
    gram, form_e = corner_matrices(alg, alg.conditional_expectation(b, n), n)
    _, form_b = corner_matrices(alg, b, n)
    form_e, form_b = (form_e + form_e.T) / 2, (form_b + form_b.T) / 2
    # restrict to the range of b, where the generalized problem is definite
    values, vectors = eigh(form_b, gram)
    support = vectors[:, values > 1e-10 * values.max()]
    return float(eigh(support.T @ form_e @ support, support.T @ form_b @ support, eigvals_only=True).min())


def main(cfg: Config) -> None:
    alg = GradedAlgebra(TemperleyLieb(cfg.delta))
    sampler = Sampler(cfg.seed)
    delta = float(cfg.delta)
    for n in cfg.levels:
        worst = np.inf
        for _ in range(cfg.samples):
            core = sampler.element(bottoms=[0], lefts=range(n + 1), rights=[n])
            worst = min(worst, best_constant(alg, alg.wedge(alg.star(core), core), n))
        print(f"n={n}: smallest observed constant {worst:.6f}; delta^-n = {delta**-n:.6f}; delta^-2n = {delta**(-2 * n):.6f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--delta", type=Fraction, default=Fraction(5, 2))
    parser.add_argument("--samples", type=int, default=60)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()
    main(Config(delta=args.delta, samples=args.samples, seed=args.seed))
