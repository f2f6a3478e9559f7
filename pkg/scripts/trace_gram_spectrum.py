"""Smallest eigenvalue of the free-probability trace Gram matrix as the loop value varies.

Positivity degrades as delta approaches 2; this tabulates the margin on all
diagrams with at most ``max_points`` boundary points.
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from gjs import GradedAlgebra, TemperleyLieb
from gjs.verify import trace_gram_blocks


@dataclass
class Config:
    deltas: list[Fraction] = field(
        default_factory=lambda: [Fraction(201, 100), Fraction(21, 10), Fraction(9, 4), Fraction(5, 2), Fraction(3), Fraction(4)]
    )
    max_points: int = 6


def main(cfg: Config) -> None:
    print(f"{'delta':>8}  {'min eigenvalue':>15}  worst block (l, r)")
    for delta in cfg.deltas:
        alg = GradedAlgebra(TemperleyLieb(delta))
        grams = trace_gram_blocks(alg, cfg.max_points)
        margins = {shape: float(np.linalg.eigvalsh(g).min()) for shape, g in grams.items()}
        shape = min(margins, key=margins.get)
        print(f"{str(delta):>8}  {margins[shape]:15.6g}  {shape}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-points", type=int, default=6)
    main(Config(max_points=parser.parse_args().max_points))
