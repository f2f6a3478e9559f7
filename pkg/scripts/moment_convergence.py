"""How fast do moment estimates approach the C*-norm?

For the Jones idempotent and a few random corner elements, prints the estimate
sequence next to the GNS operator norm for several loop values.
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from gjs import GradedAlgebra, TemperleyLieb
from gjs.sampling import Sampler


@dataclass
class Config:
    deltas: list[Fraction] = field(default_factory=lambda: [Fraction(9, 4), Fraction(5, 2), Fraction(3), Fraction(5)])
    p_max: int = 64
    random_samples: int = 3
    seed: int = 0


def main(cfg: Config) -> None:
    for delta in cfg.deltas:
        cat = TemperleyLieb(delta)
        alg = GradedAlgebra(cat)
        e = alg.frobenius_reciprocity(cat.compose(cat.cup(1), cat.cap(1)) * (1 / cat.delta))
        sampler = Sampler(cfg.seed)
        elements = [("jones idempotent", e)] + [
            (f"random #{i}", sampler.element(bottoms=[0], lefts=[2], rights=[2])) for i in range(cfg.random_samples)
        ]
        print(f"delta = {delta}")
        for label, a in elements:
            estimate = alg.norm_estimate(a, cfg.p_max)
            norm = alg.gns_norm(a)
            ratios = "  ".join(f"p={p}:{v / norm:.4f}" for p, v in zip(estimate.exponents, estimate.values))
            print(f"  {label:17s} norm {norm:8.4f}  {ratios}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p-max", type=int, default=64)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    main(Config(p_max=args.p_max, seed=args.seed))
