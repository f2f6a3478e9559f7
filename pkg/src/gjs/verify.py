"""Seeded verification suites with a JSON-lines report.

Every check draws its samples from its own RNG, seeded by the run seed and the
check name, so reports are reproducible check by check. A check runs in one of
three modes. ``exact`` checks count failing samples and gate on zero.
``float`` checks report a numerical margin and gate on the configured
tolerance. ``reported`` checks are recorded and never gate.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import planar
from .bimodules import BimoduleCalculus, CornerElement, Subobject
from .category import TemperleyLieb, as_fraction, catalan, spectrum_from_gram
from .fock import FockModule, FockVector
from .graded import BudgetExceeded, GradedAlgebra, GradedElement
from .sampling import Sampler

__all__ = [
    "CheckRecord",
    "Report",
    "SUITES",
    "SuiteConfig",
    "dimension_table",
    "run_suites",
]

SUITES = (
    "category-identities",
    "gjs-products",
    "traces-positivity",
    "tower",
    "fock",
    "bimodules",
)


@dataclass
class SuiteConfig:
    delta: Fraction = Fraction(5, 2)
    max_level: int = 3
    max_bottom: int = 3
    seed: int = 42
    float_tol: float = 1e-9
    moment_p_max: int = 64
    suites: tuple[str, ...] = SUITES
    fock_depth: int = 6
    bottom_budget: int = 24

    def __post_init__(self) -> None:
        self.delta = as_fraction(self.delta)
        if self.delta <= 2:
            raise ValueError(f"loop value must exceed 2 (got {self.delta})")
        if self.float_tol <= 0:
            raise ValueError("float tolerance must be positive")
        if self.max_level < 0 or self.max_bottom < 0:
            raise ValueError("levels must be non-negative")
        if self.moment_p_max < 1 or self.moment_p_max & (self.moment_p_max - 1):
            raise ValueError("moment_p_max must be a power of two")
        self.suites = tuple(self.suites)
        unknown = [name for name in self.suites if name not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")


@dataclass
class CheckRecord:
    name: str
    suite: str
    anchor: str
    mode: str
    residual: float | int | str
    passed: bool
    gating: bool
    samples: int
    detail: str = ""
    elapsed: float = 0.0

    def to_json(self, include_timing: bool = True) -> str:
        data = asdict(self)
        if not include_timing:
            data.pop("elapsed")
        return json.dumps(data, sort_keys=True)


@dataclass
class Report:
    config: SuiteConfig
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records if r.gating)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.gating and not r.passed]

    def to_jsonl(self, include_timing: bool = True) -> str:
        return "".join(r.to_json(include_timing) + "\n" for r in self.records)


@dataclass
class Outcome:
    residual: float | int | str
    passed: bool
    samples: int
    detail: str = ""


class Tally:
    """Counts failing exact comparisons."""

    def __init__(self) -> None:
        self.samples = 0
        self.failures = 0
        self.first: str = ""

    def expect(self, condition: bool, label: str = "") -> None:
        self.samples += 1
        if not condition:
            self.failures += 1
            if not self.first:
                self.first = label

    def outcome(self) -> Outcome:
        detail = f"first failure: {self.first}" if self.failures else ""
        return Outcome(self.failures, self.failures == 0, self.samples, detail)


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    anchor: str
    mode: str
    run: Callable[["Context", Sampler], Outcome]


CHECKS: list[Check] = []


def check(suite: str, anchor: str, mode: str = "exact"):
    def register(fn):
        CHECKS.append(Check(fn.__name__, suite, anchor, mode, fn))
        return fn

    return register


class Context:
    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.cat = TemperleyLieb(cfg.delta)
        self.alg = GradedAlgebra(self.cat)
        self.fock = FockModule(self.alg, cfg.fock_depth)
        self.bim = BimoduleCalculus(self.alg)

    @property
    def delta(self) -> Fraction:
        return self.cat.delta


def run_suites(cfg: SuiteConfig, progress: Callable[[CheckRecord], None] | None = None) -> Report:
    ctx = Context(cfg)
    report = Report(cfg)
    for entry in CHECKS:
        if entry.suite not in cfg.suites:
            continue
        sampler = Sampler(f"{cfg.seed}/{entry.name}")
        start = time.perf_counter()
        try:
            outcome = entry.run(ctx, sampler)
        except BudgetExceeded as exc:
            outcome = Outcome("budget exceeded", False, 0, str(exc))
        record = CheckRecord(
            name=entry.name,
            suite=entry.suite,
            anchor=entry.anchor,
            mode=entry.mode,
            residual=outcome.residual,
            passed=outcome.passed,
            gating=entry.mode != "reported",
            samples=outcome.samples,
            detail=outcome.detail,
            elapsed=round(time.perf_counter() - start, 4),
        )
        report.records.append(record)
        if progress:
            progress(record)
    return report


def dimension_table(max_n: int) -> list[dict[str, int]]:
    """``dim V[b, l, r]`` for every triple with ``b + l + r <= 2 * max_n``."""
    if not 0 <= max_n <= 10:
        raise ValueError("max_n must lie between 0 and 10")
    rows = []
    for total in range(2 * max_n + 1):
        for b in range(total + 1):
            for l in range(total - b + 1):
                r = total - b - l
                dim = catalan(total // 2) if total % 2 == 0 else 0
                rows.append({"b": b, "l": l, "r": r, "dim": dim})
    return rows


def float_outcome(margin: float, tol: float, samples: int, detail: str = "") -> Outcome:
    return Outcome(float(margin), bool(margin >= -tol), samples, detail)


# ---------------------------------------------------------------- category


@check("category-identities", "zig-zag equations for nested (co)evaluations")
def zigzag(ctx: Context, s: Sampler) -> Outcome:
    cat, tally = ctx.cat, Tally()
    for n in range(max(5, ctx.cfg.max_level) + 1):
        ev, coev = cat.ev_coev(n)
        left = cat.compose(cat.tensor(ev, cat.identity(n)), cat.tensor(cat.identity(n), coev))
        right = cat.compose(cat.tensor(cat.identity(n), ev), cat.tensor(coev, cat.identity(n)))
        tally.expect(left == cat.identity(n) and right == cat.identity(n), f"n={n}")
        loops = cat.compose(ev, cat.dagger(ev))
        tally.expect(loops == cat.identity(0) * cat.delta**n, f"nested loops n={n}")
    return tally.outcome()


@check("category-identities", "left and right categorical traces agree")
def balancing(ctx: Context, s: Sampler) -> Outcome:
    cat, tally = ctx.cat, Tally()
    for _ in range(200):
        f = s.endomorphism(max(4, ctx.cfg.max_level))
        tally.expect(cat.categorical_trace(f, "left") == cat.categorical_trace(f, "right"), repr(f))
    for n in range(5):
        tally.expect(cat.categorical_trace(cat.identity(n)) == cat.delta**n, f"trace id_{n}")
    return tally.outcome()


@check("category-identities", "dagger is an involutive contravariant monoidal functor")
def dagger_structure(ctx: Context, s: Sampler) -> Outcome:
    cat, tally = ctx.cat, Tally()
    for _ in range(100):
        f, g = s.composable(ctx.cfg.max_level)
        h = s.endomorphism(ctx.cfg.max_level)
        tally.expect(cat.dagger(cat.compose(f, g)) == cat.compose(cat.dagger(g), cat.dagger(f)))
        tally.expect(cat.dagger(cat.tensor(f, h)) == cat.tensor(cat.dagger(f), cat.dagger(h)))
        tally.expect(cat.dagger(cat.dagger(f)) == f)
    return tally.outcome()


@check("category-identities", "dual of a morphism via (co)evaluations")
def duality(ctx: Context, s: Sampler) -> Outcome:
    cat, tally = ctx.cat, Tally()
    for _ in range(100):
        f, g = s.composable(ctx.cfg.max_level)
        tally.expect(cat.dual_morphism(cat.dual_morphism(f)) == f, "double dual")
        tally.expect(
            cat.dual_morphism(cat.compose(f, g)) == cat.compose(cat.dual_morphism(g), cat.dual_morphism(f)),
            "contravariance",
        )
        tally.expect(cat.dual_morphism(cat.dagger(f)) == cat.dagger(cat.dual_morphism(f)), "bi-involutive")
    for n in range(4):
        tally.expect(cat.dual_morphism(cat.identity(n)) == cat.identity(n), f"dual id_{n}")
    return tally.outcome()


@check("category-identities", "Frobenius reciprocity is an anti-isomorphism of *-algebras")
def frobenius_reciprocity(ctx: Context, s: Sampler) -> Outcome:
    cat, alg, tally = ctx.cat, ctx.alg, Tally()
    for _ in range(200):
        f, g = s.composable(ctx.cfg.max_level)
        fr = alg.frobenius_reciprocity
        tally.expect(fr(cat.compose(f, g)) == alg.wedge(fr(g), fr(f)), "FR(f∘g)")
        tally.expect(fr(cat.dagger(f)) == alg.star(fr(f)), "FR(f†)")
        tally.expect(alg.frobenius_inverse(fr(f)) == f, "round trip")
    tally.expect(fr(cat.identity(0)) == alg.empty(), "FR(id_0)")
    return tally.outcome()


@check("category-identities", "the weight on level-zero elements matches the categorical trace")
def weight_matches_trace(ctx: Context, s: Sampler) -> Outcome:
    cat, alg, tally = ctx.cat, ctx.alg, Tally()
    for _ in range(100):
        f = s.endomorphism(ctx.cfg.max_level)
        tally.expect(alg.phi(alg.frobenius_reciprocity(f)) == cat.categorical_trace(f))
    return tally.outcome()


@check("category-identities", "GNS Gram matrices of the categorical trace are positive definite", "float")
def gns_gram_positive(ctx: Context, s: Sampler) -> Outcome:
    margin = math.inf
    for n in range(max(4, ctx.cfg.max_level) + 1):
        gram = ctx.cat.gns(n).gram
        margin = min(margin, float(np.linalg.eigvalsh(gram).min()))
    # Gate: the smallest eigenvalue must exceed the tolerance.
    return Outcome(margin, margin > ctx.cfg.float_tol, max(4, ctx.cfg.max_level) + 1)


@check("category-identities", "operator norm is a submultiplicative C*-norm", "float")
def operator_norm_cstar(ctx: Context, s: Sampler) -> Outcome:
    cat = ctx.cat
    worst = 0.0
    samples = 0
    for _ in range(50):
        n = s.rng.randint(0, ctx.cfg.max_level)
        f, g = s.morphism(n, n), s.morphism(n, n)
        nf, ng = cat.operator_norm(f), cat.operator_norm(g)
        worst = max(worst, abs(cat.operator_norm(cat.compose(cat.dagger(f), f)) - nf**2) / max(1.0, nf**2))
        worst = max(worst, cat.operator_norm(cat.compose(f, g)) - nf * ng)
        samples += 1
    e = cat.compose(cat.cup(1), cat.cap(1))
    worst = max(worst, abs(cat.operator_norm(e * (1 / cat.delta)) - 1.0))
    worst = max(worst, abs(cat.operator_norm(e) - float(cat.delta)))
    for n in range(4):
        worst = max(worst, abs(cat.operator_norm(cat.identity(n)) - 1.0))
    return float_outcome(-worst, 1e-7, samples)


@check("category-identities", "hom-space dimensions are Catalan numbers")
def hom_dimensions(ctx: Context, s: Sampler) -> Outcome:
    tally = Tally()
    for row in dimension_table(5):
        points = row["b"] + row["l"] + row["r"]
        actual = len(planar.enumerate_nc_pairings(points, row["b"])) if points % 2 == 0 else 0
        tally.expect(actual == row["dim"], str(row))
    return tally.outcome()


# ---------------------------------------------------------------- products


def _graded(ctx: Context, s: Sampler) -> GradedElement:
    cfg = ctx.cfg
    return s.element(cfg.max_bottom, cfg.max_level, cfg.max_level)


@check("gjs-products", "wedge and Walker products are associative")
def associativity(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for _ in range(100):
        x, y, z = _graded(ctx, s), _graded(ctx, s), _graded(ctx, s)
        tally.expect(alg.wedge(alg.wedge(x, y), z) == alg.wedge(x, alg.wedge(y, z)), "wedge")
        tally.expect(alg.walker(alg.walker(x, y), z) == alg.walker(x, alg.walker(y, z)), "walker")
    return tally.outcome()


@check("gjs-products", "the involution reverses both products")
def star_antihomomorphism(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for _ in range(100):
        x, y = _graded(ctx, s), _graded(ctx, s)
        tally.expect(alg.star(alg.wedge(x, y)) == alg.wedge(alg.star(y), alg.star(x)), "wedge")
        tally.expect(alg.star(alg.walker(x, y)) == alg.walker(alg.star(y), alg.star(x)), "walker")
        tally.expect(alg.star(alg.star(x)) == x, "involutive")
    return tally.outcome()


@check("gjs-products", "left Walker multiplication is a representation")
def walker_representation(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for _ in range(100):
        x, y, v = _graded(ctx, s), _graded(ctx, s), _graded(ctx, s)
        acting = alg.walker(x, alg.walker(y, v))
        tally.expect(acting == alg.walker(alg.walker(x, y), v))
    return tally.outcome()


@check("gjs-products", "the Walker product deforms the wedge product")
def walker_deforms_wedge(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for _ in range(100):
        x, y = _graded(ctx, s), _graded(ctx, s)
        tally.expect(alg.walker_summand(x, y, 0) == alg.wedge(x, y), "k=0 summand")
        flat = x.restrict(lambda b, l, r: b == 0)
        tally.expect(alg.walker(flat, y) == alg.wedge(flat, y), "bottomless factor")
    strand = GradedElement.diagram(1, 1, 0, planar.identity(1))
    product = alg.walker(alg.star(strand), strand)
    arc = GradedElement.diagram(2, 0, 0, planar.cap(1))
    tally.expect(product == arc + alg.empty() * alg.delta, "single strand")
    tally.expect(alg.expectation(product) == alg.empty() * alg.delta, "expectation of single strand")
    return tally.outcome()


@check("gjs-products", "compression by Jones projections picks out corners")
def corner_projection(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for _ in range(100):
        x = _graded(ctx, s)
        n, m = s.rng.randint(0, ctx.cfg.max_level), s.rng.randint(0, ctx.cfg.max_level)
        projected = alg.corner_project(x, n, m)
        tally.expect(projected == x.restrict(lambda b, l, r: (l, r) == (n, m)), "compression")
        tally.expect(alg.corner_project(projected, n, m) == projected, "idempotent")
    for n in range(4):
        p = alg.jones_projection(n)
        tally.expect(alg.wedge(p, p) == p and alg.star(p) == p, f"p_{n} projection")
        tally.expect(alg.iota(alg.empty(), n) == p, f"iota_{n} unit")
    for _ in range(20):
        a = s.bottomless(2)
        unit = alg.level_unit(2)
        tally.expect(alg.wedge(unit, a) == a and alg.wedge(a, unit) == a, "level unit")
    return tally.outcome()


# ---------------------------------------------------------------- traces


@check("traces-positivity", "the free-probability trace is tracial for the wedge product")
def trace_tracial(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for _ in range(200):
        x, y = _graded(ctx, s), _graded(ctx, s)
        tally.expect(alg.trace(alg.wedge(x, y)) == alg.trace(alg.wedge(y, x)))
    return tally.outcome()


@check("traces-positivity", "the weight composed with the expectation is tracial for the Walker product")
def weight_tracial(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for _ in range(100):
        x, y = _graded(ctx, s), _graded(ctx, s)
        tally.expect(alg.phi(alg.expectation(alg.walker(x, y))) == alg.phi(alg.expectation(alg.walker(y, x))))
    return tally.outcome()


def trace_gram_blocks(alg: GradedAlgebra, max_points: int) -> dict[tuple[int, int], np.ndarray]:
    """Gram matrices ``Tr(d_i* ∧ d_j)`` over all diagrams with at most ``max_points`` points.

    Only pairs with equal ``(l, r)`` can pair nontrivially, so the matrix is
    block diagonal and returned block by block.
    """
    blocks: dict[tuple[int, int], list[GradedElement]] = {}
    for total in range(0, max_points + 1, 2):
        for b in range(total + 1):
            for l in range(total - b + 1):
                r = total - b - l
                blocks.setdefault((l, r), []).extend(alg.diagrams(b, l, r))
    grams = {}
    for shape, elements in blocks.items():
        starred = [alg.star(e) for e in elements]
        gram = np.array(
            [[float(alg.trace(alg.wedge(u, v))) for v in elements] for u in starred]
        )
        grams[shape] = gram
    return grams


@check("traces-positivity", "the free-probability trace is faithful and positive on diagrams", "float")
def trace_gram_positive(ctx: Context, s: Sampler) -> Outcome:
    grams = trace_gram_blocks(ctx.alg, 6)
    margin = min(float(np.linalg.eigvalsh(g).min()) for g in grams.values())
    count = sum(len(g) for g in grams.values())
    return Outcome(margin, margin > ctx.cfg.float_tol, count, f"{len(grams)} blocks")


@check("traces-positivity", "normalized corner traces are states")
def normalized_traces(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for n in range(5):
        p = alg.jones_projection(n)
        tally.expect(alg.normalized_trace(p, n) == 1, f"tr_{n}(p_{n})")
        tally.expect(alg.phi(p) == alg.delta**n, f"phi(p_{n})")
    arc = GradedElement.diagram(2, 0, 0, planar.cap(1))
    tally.expect(alg.trace(arc) == alg.delta, "arc")
    tally.expect(alg.phi(alg.empty()) == 1 and alg.trace(alg.empty()) == 1, "empty")
    for _ in range(100):
        x = _graded(ctx, s)
        tally.expect(alg.trace(alg.wedge(alg.star(x), x)) >= 0, "positivity")
    return tally.outcome()


# ---------------------------------------------------------------- tower


@check("tower", "iota_n is a trace-compatible *-homomorphism")
def iota_homomorphism(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for n in range(4):
        for _ in range(25):
            x, y = s.level_zero(ctx.cfg.max_bottom), s.level_zero(ctx.cfg.max_bottom)
            tally.expect(alg.iota(alg.wedge(x, y), n) == alg.wedge(alg.iota(x, n), alg.iota(y, n)), "mult")
            tally.expect(alg.iota(alg.star(x), n) == alg.star(alg.iota(x, n)), "star")
            tally.expect(alg.normalized_trace(x, 0) == alg.normalized_trace(alg.iota(x, n), n), "trace")
    return tally.outcome()


@check("tower", "E_n is a trace-preserving conditional expectation onto iota_n(B_0)")
def conditional_expectation(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for n in range(4):
        for _ in range(20):
            m = s.corner(n, n, ctx.cfg.max_bottom).payload
            m2 = s.corner(n, n, ctx.cfg.max_bottom).payload
            a, c = s.level_zero(2), s.level_zero(2)
            e = alg.conditional_expectation(m, n)
            tally.expect(alg.conditional_expectation(e, n) == e, "idempotent")
            tally.expect(alg.pull_back(e, n) is not None, "lands in image")
            sandwich = alg.wedge(alg.wedge(alg.iota(a, n), m), alg.iota(c, n))
            tally.expect(
                alg.conditional_expectation(sandwich, n)
                == alg.wedge(alg.wedge(alg.iota(a, n), e), alg.iota(c, n)),
                "bimodular",
            )
            tally.expect(
                alg.conditional_expectation(m + m2 * 3, n)
                == e + alg.conditional_expectation(m2, n) * 3,
                "linear",
            )
            tally.expect(alg.normalized_trace(e, n) == alg.normalized_trace(m, n), "trace preserving")
            tally.expect(alg.conditional_expectation(alg.iota(a, n), n) == alg.iota(a, n), "fixes image")
    tally.expect(alg.conditional_expectation(alg.jones_projection(1), 1) == alg.jones_projection(1), "E_1(p_1)")
    return tally.outcome()


def corner_spectrum(alg: GradedAlgebra, a: GradedElement, n: int) -> np.ndarray:
    """Spectrum of a corner-``(n, n)`` element on the GNS vectors it can reach."""
    gns = alg.level_gns(n)
    reach = [i for i, (key, _) in enumerate(gns.basis) if key[1] == n]
    matrix = gns.left_multiplication(a)[np.ix_(reach, reach)]
    return spectrum_from_gram(gns.gram[np.ix_(reach, reach)], matrix)


def pimsner_popa_margin(ctx: Context, s: Sampler, exponent_scale: int, samples: int = 30) -> float:
    """Smallest GNS eigenvalue of ``E_n(b) - delta**(-scale*n) * b`` over random positive ``b``."""
    alg = ctx.alg
    worst = math.inf
    for i in range(samples):
        n = 1 + i % 2
        c = s.element(bottoms=[0], lefts=range(n + 1), rights=[n])
        b = alg.wedge(alg.star(c), c)
        constant = Fraction(1) / alg.delta ** (exponent_scale * n)
        gap = alg.conditional_expectation(b, n) - b * constant
        worst = min(worst, float(corner_spectrum(alg, gap, n).min()))
    return worst


@check("tower", "Pimsner-Popa inequality with constant delta^(-2n)", "float")
def pimsner_popa(ctx: Context, s: Sampler) -> Outcome:
    return float_outcome(pimsner_popa_margin(ctx, s, 2), 1e-8, 30)


@check("tower", "Pimsner-Popa inequality with constant delta^(-n)", "reported")
def pimsner_popa_sharp(ctx: Context, s: Sampler) -> Outcome:
    return float_outcome(pimsner_popa_margin(ctx, s, 1), 1e-8, 30)


@check("tower", "bottomless level algebras commute with iota_n(B_0)")
def relative_commutant(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    level_one = [e for l in range(2) for r in range(2) for e in alg.diagrams(0, l, r)]
    for _ in range(30):
        x = alg.iota(s.level_zero(ctx.cfg.max_bottom), 1)
        for t in level_one:
            tally.expect(alg.wedge(t, x) == alg.wedge(x, t), "level one")
    for n in (2, 3):
        for _ in range(10):
            x = alg.iota(s.level_zero(ctx.cfg.max_bottom), n)
            t = s.element(bottoms=[0], lefts=[n], rights=[n])
            tally.expect(alg.wedge(t, x) == alg.wedge(x, t), f"corner ({n}, {n})")
    return tally.outcome()


@check("tower", "level embeddings are *-homomorphisms")
def level_embedding(ctx: Context, s: Sampler) -> Outcome:
    alg, tally = ctx.alg, Tally()
    for _ in range(50):
        a, b = s.bottomless(2), s.bottomless(2)
        up = lambda x: alg.embed_level(x, 1)  # noqa: E731
        tally.expect(up(alg.wedge(a, b)) == alg.wedge(up(a), up(b)), "multiplicative")
        tally.expect(up(alg.star(a)) == alg.star(up(a)), "star")
    tally.expect(alg.embed_level(alg.empty(), 2) == alg.jones_projection(2), "unit")
    return tally.outcome()


@check("tower", "level embeddings are isometric", "float")
def level_embedding_isometric(ctx: Context, s: Sampler) -> Outcome:
    alg = ctx.alg
    worst = 0.0
    for _ in range(20):
        a = s.bottomless(2)
        worst = max(worst, abs(alg.gns_norm(a, 2) - alg.gns_norm(alg.embed_level(a, 1), 3)))
    return float_outcome(-worst, 1e-7, 20)


@check("tower", "moment estimates increase to the norm", "float")
def moment_norms(ctx: Context, s: Sampler) -> Outcome:
    alg, cat = ctx.alg, ctx.cat
    budget = ctx.cfg.bottom_budget
    e = alg.frobenius_reciprocity(cat.compose(cat.cup(1), cat.cap(1)) * (1 / cat.delta))
    estimate = alg.norm_estimate(e, ctx.cfg.moment_p_max, budget)
    jones_gap = estimate.best - 0.97 * alg.gns_norm(e)
    worst = min(jones_gap, 1e-7 - abs(alg.gns_norm(e) - 1.0))
    for n in range(4):
        values = alg.norm_estimate(alg.jones_projection(n), ctx.cfg.moment_p_max, budget).values
        worst = min(worst, -max(abs(v - 1.0) for v in values))
    for i in range(50):
        if i % 2:
            a = s.bottomless(2)
            a = alg.corner_project(a, 2, 2) or a
            if a.is_zero() or a.corner() is None:
                a = alg.jones_projection(2)
            p_max = ctx.cfg.moment_p_max
        else:
            a = s.corner(1, 1, max_b=1).payload
            p_max = 4
        values = alg.norm_estimate(a, p_max, budget).values
        steps = [later - earlier for earlier, later in zip(values, values[1:])]
        worst = min(worst, min(steps, default=0.0) / max(1.0, values[-1]))
    return float_outcome(worst, 1e-9, 55, f"jones estimate at p={estimate.exponents[-1]}: {estimate.best:.6f}")


# ---------------------------------------------------------------- Fock


def _fock_vector(ctx: Context, s: Sampler, max_sector: int) -> FockVector:
    cfg = ctx.cfg
    return ctx.fock.vector(s.element(bottoms=range(max_sector + 1), lefts=range(cfg.max_level + 1),
                                     rights=range(cfg.max_level + 1)))


def _symbol(ctx: Context, s: Sampler) -> GradedElement:
    return s.element(bottoms=[1], lefts=range(ctx.cfg.max_level + 1), rights=range(ctx.cfg.max_level + 1))


@check("fock", "annihilation after creation multiplies by the algebra-valued inner product")
def pimsner_relation(ctx: Context, s: Sampler) -> Outcome:
    fock, tally = ctx.fock, Tally()
    for _ in range(50):
        xi, eta = _symbol(ctx, s), _symbol(ctx, s)
        v = _fock_vector(ctx, s, fock.depth - 2)
        lhs = fock.annihilate(xi, fock.create(eta, v))
        rhs = fock.left_action(fock.inner_product_a(xi, eta), v)
        tally.expect(lhs == rhs)
    return tally.outcome()


@check("fock", "annihilation is adjoint to creation")
def creation_adjoint(ctx: Context, s: Sampler) -> Outcome:
    fock, tally = ctx.fock, Tally()
    for _ in range(50):
        xi = _symbol(ctx, s)
        v = _fock_vector(ctx, s, fock.depth - 2)
        w = _fock_vector(ctx, s, fock.depth - 1)
        tally.expect(fock.inner(fock.create(xi, v), w) == fock.inner(v, fock.annihilate(xi, w)))
    return tally.outcome()


@check("fock", "field operators of real vectors realize left Walker multiplication")
def field_is_walker(ctx: Context, s: Sampler) -> Outcome:
    alg, fock, tally = ctx.alg, ctx.fock, Tally()
    for _ in range(50):
        xi = s.self_adjoint_symbol(alg.star, ctx.cfg.max_level, ctx.cfg.max_level)
        v = _fock_vector(ctx, s, fock.depth - 2)
        tally.expect(fock.field(xi, v).as_element() == alg.walker(xi, v.as_element()))
    return tally.outcome()


@check("fock", "vacuum, truncation and sector identification")
def fock_structure(ctx: Context, s: Sampler) -> Outcome:
    alg, fock, tally = ctx.alg, ctx.fock, Tally()
    vacuum = fock.vacuum()
    for _ in range(30):
        xi, eta, zeta = _symbol(ctx, s), _symbol(ctx, s), _symbol(ctx, s)
        tally.expect(fock.annihilate(xi, vacuum).is_zero(), "vacuum killed")
        created = fock.create(xi, vacuum)
        expected = xi.restrict(lambda b, l, r: r == 0)
        tally.expect(created.sector(1) == expected and not created.truncated, "create on vacuum")
        paired = alg.wedge(fock.inner_product_a(xi, eta), alg.empty())
        tally.expect(fock.annihilate(xi, fock.create(eta, vacuum)).sector(0) == paired, "length one")
        unit = alg.level_unit(ctx.cfg.max_level)
        tally.expect(fock.identify_sectors(unit, eta) == eta, "unit")
        tally.expect(fock.create(xi, fock.vector(eta)).sector(2) == fock.identify_sectors(xi, eta), "intertwiner")
        ident = fock.identify_sectors
        tally.expect(ident(ident(xi, eta), zeta) == ident(xi, ident(eta, zeta)), "associative")
        pair = ident(xi, eta)
        tally.expect(
            fock.inner_product_a(pair, pair)
            == fock.inner_product_a(eta, alg.wedge(fock.inner_product_a(xi, xi), eta)),
            "tensor inner product",
        )
        a = s.bottomless(ctx.cfg.max_level)
        tally.expect(fock.inner_product_a(xi, eta) == alg.star(fock.inner_product_a(eta, xi)), "adjoint")
        tally.expect(
            fock.inner_product_a(xi, alg.wedge(eta, a)) == alg.wedge(fock.inner_product_a(xi, eta), a),
            "right linear",
        )
    overflow = fock.create(GradedElement.diagram(1, 0, 1, planar.identity(1)),
                           fock.vector(s.element(bottoms=[fock.depth - 1], lefts=[1], rights=[0], terms=1)))
    tally.expect(overflow.truncated and overflow.is_zero(), "truncation flagged")
    return tally.outcome()


# ---------------------------------------------------------------- bimodules


def _shapes(max_total: int) -> list[tuple[int, int]]:
    return [(l, t - l) for t in range(max_total + 1) for l in range(t + 1)]


@check("bimodules", "trace compatibility of the left and right inner products")
def trace_compatibility(ctx: Context, s: Sampler) -> Outcome:
    alg, bim, tally = ctx.alg, ctx.bim, Tally()
    for shape in _shapes(3):
        for _ in range(200):
            xi, eta = s.corner(*shape, ctx.cfg.max_bottom), s.corner(*shape, ctx.cfg.max_bottom)
            right = bim.right_inner(xi, eta)
            left = bim.left_inner(eta, xi)
            tally.expect(alg.trace(right) == alg.trace(left), str(shape))
    return tally.outcome()


def nested_inner(bim: BimoduleCalculus, xs: list[CornerElement], ys: list[CornerElement]) -> GradedElement:
    value = bim.right_inner(xs[0], ys[0])
    for x, y in zip(xs[1:], ys[1:]):
        value = bim.right_inner(x, bim.act_left(value, y))
    return value


@check("bimodules", "fusion of corner bimodules is isometric and balanced")
def fusion_isometry(ctx: Context, s: Sampler) -> Outcome:
    bim, tally = ctx.bim, Tally()
    for count, factors in ((100, 2), (50, 3)):
        for _ in range(count):
            xs = [s.corner(0, s.rng.randint(1, 2), 3) for _ in range(factors)]
            ys = [s.corner(0, x.shape[1], 3) for x in xs]
            lhs = bim.right_inner(bim.fuse(xs), bim.fuse(ys))
            tally.expect(lhs == nested_inner(bim, xs, ys), f"{factors} factors")
    for _ in range(50):
        xi, eta = s.corner(0, 1, 3), s.corner(0, 2, 3)
        b = s.level_zero(2)
        tally.expect(bim.fuse([bim.act_right(xi, b), eta]) == bim.fuse([xi, bim.act_left(b, eta)]), "balanced")
        a = s.level_zero(2)
        tally.expect(
            bim.fuse([bim.act_left(a, xi), bim.act_right(eta, b)]) == bim.act(a, bim.fuse([xi, eta]), b),
            "bilinear",
        )
    tally.expect(bim.fuse([xi]) == xi, "single factor")
    return tally.outcome()


def _morphism_and_vector(ctx: Context, s: Sampler):
    n = s.rng.randint(0, ctx.cfg.max_level)
    m = s.rng.choice([k for k in range(ctx.cfg.max_level + 1) if (k + n) % 2 == 0])
    return s.morphism(n, m), s.corner(0, n, ctx.cfg.max_bottom)


@check("bimodules", "the functor into bimodules is faithful and preserves adjoints")
def functor_properties(ctx: Context, s: Sampler) -> Outcome:
    cat, bim, tally = ctx.cat, ctx.bim, Tally()
    F = bim.functor_on_morphism
    for _ in range(200):
        f, xi = _morphism_and_vector(ctx, s)
        g = s.morphism(f.target, s.rng.choice([k for k in range(ctx.cfg.max_level + 1) if (k + f.target) % 2 == 0]))
        eta = s.corner(0, f.target, ctx.cfg.max_bottom)
        tally.expect(F(cat.compose(g, f), xi) == F(g, F(f, xi)), "functorial")
        tally.expect(F(cat.identity(f.source), xi) == xi, "identity")
        tally.expect(bim.right_inner(F(f, xi), eta) == bim.right_inner(xi, F(cat.dagger(f), eta)), "adjoint")
        tally.expect(bim.l2_inner(F(f, xi), eta) == bim.l2_inner(xi, F(cat.dagger(f), eta)), "L2 adjoint")
        image = F(f, bim.through_strands(f.source))
        tally.expect(bim.recover_morphism(image, f.source) == f, "faithful")
        b, c = s.level_zero(2), s.level_zero(2)
        tally.expect(F(f, bim.act(b, xi, c)) == bim.act(b, F(f, xi), c), "bimodule map")
    return tally.outcome()


@check("bimodules", "tensorator naturality and conjugation structure")
def tensorator_and_conjugation(ctx: Context, s: Sampler) -> Outcome:
    cat, bim, tally = ctx.cat, ctx.bim, Tally()
    F = bim.functor_on_morphism
    for _ in range(100):
        f, xi = _morphism_and_vector(ctx, s)
        g, eta = _morphism_and_vector(ctx, s)
        tally.expect(
            bim.tensorator(F(f, xi), F(g, eta)) == F(cat.tensor(f, g), bim.tensorator(xi, eta)), "naturality"
        )
        conj = bim.conj_structure
        tally.expect(conj(conj(xi)) == xi, "involutive")
        f_bar = cat.dual_morphism(cat.dagger(f))
        tally.expect(conj(F(f_bar, xi)) == F(f, conj(xi)), "natural")
        tally.expect(conj(bim.tensorator(xi, eta)) == bim.tensorator(conj(eta), conj(xi)), "monoidal")
        xi2 = s.corner(0, xi.shape[1], ctx.cfg.max_bottom)
        tally.expect(bim.right_inner(conj(xi), conj(xi2)) == bim.left_inner(xi, xi2), "conjugate inner product")
    strand = CornerElement((0, 1), GradedElement.diagram(1, 0, 1, planar.identity(1)))
    tally.expect(bim.conjugate(strand).payload == GradedElement.diagram(1, 0, 1, planar.identity(1).mirror()), "strand")
    return tally.outcome()


@check("bimodules", "dot shift identifies the corners (0,1) and (1,0) unitarily")
def dot_shift_unitary(ctx: Context, s: Sampler) -> Outcome:
    alg, bim, tally = ctx.alg, ctx.bim, Tally()
    for _ in range(50):
        xi, eta = s.corner(0, 1, 3), s.corner(0, 1, 3)
        phi = lambda x, k=1: bim.dot_shift(x, k)  # noqa: E731
        tally.expect(bim.dot_shift(xi, 0) == xi and phi(phi(xi), -1) == xi, "inverse")
        starred = CornerElement((1, 0), alg.star(xi.payload))
        tally.expect(alg.star(phi(xi).payload) == phi(starred, -1).payload, "star")
        tally.expect(bim.left_inner(phi(xi), phi(eta)) == bim.left_inner(xi, eta), "left inner product")
        tally.expect(bim.right_inner(xi, eta) == bim.right_inner(phi(xi), phi(eta)), "right inner product")
        a, c = s.level_zero(2), s.level_zero(2)
        tally.expect(phi(bim.act(a, xi, c)) == bim.act(a, phi(xi), c), "bimodule map")
    return tally.outcome()


@check("bimodules", "dot shift on general corner shapes", "reported")
def dot_shift_general(ctx: Context, s: Sampler) -> Outcome:
    bim, tally = ctx.bim, Tally()
    for shape in _shapes(3):
        if shape[1] == 0:
            continue
        for _ in range(10):
            xi, eta = s.corner(*shape, 3), s.corner(*shape, 3)
            shifted = bim.dot_shift(xi, 1), bim.dot_shift(eta, 1)
            a, c = s.level_zero(2), s.level_zero(2)
            tally.expect(bim.right_inner(*shifted) == bim.right_inner(xi, eta), f"right {shape}")
            tally.expect(bim.left_inner(*shifted) == bim.left_inner(xi, eta), f"left {shape}")
            tally.expect(bim.dot_shift(bim.act(a, xi, c), 1) == bim.act(a, shifted[0], c), f"bimodule {shape}")
    return tally.outcome()


@check("bimodules", "bimodule actions and inner product algebra")
def bimodule_actions(ctx: Context, s: Sampler) -> Outcome:
    alg, bim, tally = ctx.alg, ctx.bim, Tally()
    empty = alg.empty()
    for shape in _shapes(3):
        for _ in range(15):
            xi, eta = s.corner(*shape, 3), s.corner(*shape, 3)
            a, a2, c = s.level_zero(2), s.level_zero(2), s.level_zero(2)
            tally.expect(bim.act(empty, xi, empty) == xi, "unit")
            tally.expect(bim.act(alg.wedge(a, a2), xi, empty) == bim.act(a, bim.act(a2, xi, empty), empty), "assoc")
            tally.expect(bim.act(a, bim.act(empty, xi, c), empty) == bim.act(empty, bim.act(a, xi, empty), c),
                         "commuting")
            tally.expect(bim.right_inner(xi, bim.act_right(eta, c)) == alg.wedge(bim.right_inner(xi, eta), c),
                         "right linear")
            tally.expect(bim.left_inner(bim.act_left(a, xi), eta) == alg.wedge(a, bim.left_inner(xi, eta)),
                         "left linear")
            tally.expect(alg.star(bim.right_inner(xi, eta)) == bim.right_inner(eta, xi), "right symmetric")
            tally.expect(alg.star(bim.left_inner(xi, eta)) == bim.left_inner(eta, xi), "left symmetric")
            tally.expect(alg.trace(bim.right_inner(xi, xi)) >= 0 and alg.trace(bim.left_inner(xi, xi)) >= 0,
                         "positive")
    strand = CornerElement((0, 1), GradedElement.diagram(1, 0, 1, planar.identity(1)))
    tally.expect(bim.l2_inner(strand, strand) == alg.delta, "strand norm")
    return tally.outcome()


@check("bimodules", "L2 inner product is positive definite on diagrams of shape (0,1)", "float")
def l2_gram_positive(ctx: Context, s: Sampler) -> Outcome:
    bim = ctx.bim
    elements = [CornerElement((0, 1), e) for b in (1, 3, 5) for e in ctx.alg.diagrams(b, 0, 1)]
    gram = np.array([[float(bim.l2_inner(u, v)) for v in elements] for u in elements])
    margin = float(np.linalg.eigvalsh(gram).min())
    return Outcome(margin, margin > ctx.cfg.float_tol, len(elements))


@check("bimodules", "index of the generating bimodule and basis validation")
def index_checks(ctx: Context, s: Sampler) -> Outcome:
    alg, bim, tally = ctx.alg, ctx.bim, Tally()
    tally.expect(bim.index_surrogate(1) == alg.jones_projection(1) * alg.delta, "delta E_1(p_1)")
    for n in range(4):
        tally.expect(bim.index_surrogate(n) == alg.jones_projection(n) * alg.delta**n, f"level {n}")
    unit = [CornerElement((0, 0), alg.empty())]
    samples = [s.corner(0, 0, 4) for _ in range(10)]
    tally.expect(bim.index_from_bases(unit, unit, samples).scalars() == (1, 1), "B_0 over itself")
    try:
        bim.index_from_bases(unit, [CornerElement((0, 0), alg.empty() * 2)], samples)
    except ValueError:
        tally.expect(True)
    else:
        tally.expect(False, "non-reproducing family accepted")
    return tally.outcome()


@check("bimodules", "endomorphisms of the generating bimodule have equal left and right traces")
def minimality(ctx: Context, s: Sampler) -> Outcome:
    cat, alg, tally = ctx.cat, ctx.alg, Tally()
    for n in range(4):
        for _ in range(20):
            t = s.element(bottoms=[0], lefts=[n], rights=[n])
            f = alg.frobenius_inverse(t)
            tally.expect(cat.categorical_trace(f, "left") == cat.categorical_trace(f, "right"))
    return tally.outcome()


@check("bimodules", "projections cut out subobjects of the functor image")
def subobjects(ctx: Context, s: Sampler) -> Outcome:
    cat, bim, tally = ctx.cat, ctx.bim, Tally()
    e = cat.compose(cat.cup(1), cat.cap(1)) * (1 / cat.delta)
    complement = cat.identity(2) - e
    pieces = [Subobject(bim, e), Subobject(bim, complement)]
    for _ in range(20):
        xi = s.corner(0, 2, 4)
        projected = [p.project(xi) for p in pieces]
        tally.expect(all(p.contains(x) for p, x in zip(pieces, projected)), "membership")
        tally.expect(projected[0] + projected[1] == xi, "decomposition")
        tally.expect(not pieces[0].contains(projected[1]) or projected[1].payload.is_zero(), "disjoint")
        f = s.morphism(2, 2)
        compressed = pieces[0].morphism_to(pieces[1], f)
        image = bim.functor_on_morphism(compressed, projected[0])
        tally.expect(pieces[1].contains(image), "morphism between subobjects")
        product = pieces[0].tensor(pieces[1])
        fused = bim.tensorator(projected[0], projected[1])
        tally.expect(product.contains(fused), "tensor of subobjects")
    return tally.outcome()


@check("bimodules", "norms from the two inner products are equivalent up to delta^(1/2)", "reported")
def norm_sandwich(ctx: Context, s: Sampler) -> Outcome:
    alg, bim = ctx.alg, ctx.bim
    root = float(alg.delta) ** 0.5
    worst = math.inf
    count = 0
    for _ in range(10):
        xi = s.corner(0, 1, 3, terms=2)
        if xi.payload.is_zero():
            continue
        p_max = 8 if xi.payload.max_bottom() <= 1 else 2
        right = alg.moments(bim.right_inner(xi, xi), p_max, ctx.cfg.bottom_budget).best ** 0.5
        left = alg.moments(bim.left_inner(xi, xi), p_max, ctx.cfg.bottom_budget).best ** 0.5
        worst = min(worst, right - left / root, root * left - right)
        count += 1
    return float_outcome(worst, 1e-9, count)


def check_names(suite: str | None = None) -> list[str]:
    return [c.name for c in CHECKS if suite is None or c.suite == suite]

