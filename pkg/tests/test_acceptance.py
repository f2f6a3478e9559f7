"""Acceptance criteria 1-8, each at its stated sample count, tolerance and time limit.

Run ``pytest tests/test_acceptance.py`` to see one PASS/FAIL line per criterion
in the terminal summary.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from gjs import planar
from gjs.bimodules import BimoduleCalculus, CornerElement
from gjs.category import Morphism, TemperleyLieb, spectrum_from_gram
from gjs.fock import FockModule
from gjs.graded import GradedAlgebra
from gjs.sampling import Sampler
from gjs.verify import SuiteConfig, run_suites

DELTA = Fraction(5, 2)
SEED = 42


@pytest.fixture(scope="module")
def env():
    cat = TemperleyLieb(DELTA)
    alg = GradedAlgebra(cat)
    return cat, alg, FockModule(alg, depth=6), BimoduleCalculus(alg)


class Counter:
    def __init__(self):
        self.samples = 0
        self.failures = []

    def expect(self, condition, label):
        self.samples += 1
        if not condition:
            self.failures.append(label)


def finish(acceptance_line, number, counter, elapsed, limit, extra=""):
    ok = not counter.failures and (limit is None or elapsed < limit)
    timing = f"{elapsed:.2f}s" + (f" (limit {limit}s)" if limit else "")
    acceptance_line(number, ok, f"{counter.samples} checks, {len(counter.failures)} failures, {timing}{extra}")
    assert not counter.failures, counter.failures[:5]
    if limit is not None:
        assert elapsed < limit


def test_criterion_1_zigzag_and_balancing(env, acceptance_line):
    cat, *_ = env
    start = time.perf_counter()
    c = Counter()
    for n in range(6):
        ev, coev = cat.ev_coev(n)
        ident = cat.identity(n)
        c.expect(cat.compose(cat.tensor(ev, ident), cat.tensor(ident, coev)) == ident, f"zigzag left {n}")
        c.expect(cat.compose(cat.tensor(ident, ev), cat.tensor(coev, ident)) == ident, f"zigzag right {n}")
        # traces are linear, so agreement on the whole diagram basis covers every endomorphism
        for p in cat.hom_basis(n, n):
            f = Morphism.diagram(p)
            c.expect(cat.categorical_trace(f, "left") == cat.categorical_trace(f, "right"), f"balance {p}")
    finish(acceptance_line, 1, c, time.perf_counter() - start, 5)


def test_criterion_2_frobenius_reciprocity(env, acceptance_line):
    cat, alg, *_ = env
    s = Sampler(f"{SEED}/criterion-2")
    start = time.perf_counter()
    c = Counter()
    fr = alg.frobenius_reciprocity
    for i in range(200):
        f, g = s.composable(3)
        c.expect(fr(cat.compose(f, g)) == alg.wedge(fr(g), fr(f)), f"product {i}")
        c.expect(fr(cat.dagger(f)) == alg.star(fr(f)), f"adjoint {i}")
    finish(acceptance_line, 2, c, time.perf_counter() - start, 10)


def test_criterion_3_products(env, acceptance_line):
    _, alg, *_ = env
    s = Sampler(f"{SEED}/criterion-3")
    start = time.perf_counter()
    c = Counter()
    for i in range(100):
        x, y, z = (s.element(3, 3, 3) for _ in range(3))
        c.expect(alg.wedge(alg.wedge(x, y), z) == alg.wedge(x, alg.wedge(y, z)), f"wedge assoc {i}")
        c.expect(alg.walker(alg.walker(x, y), z) == alg.walker(x, alg.walker(y, z)), f"walker assoc {i}")
        c.expect(alg.star(alg.wedge(x, y)) == alg.wedge(alg.star(y), alg.star(x)), f"wedge star {i}")
        c.expect(alg.star(alg.walker(x, y)) == alg.walker(alg.star(y), alg.star(x)), f"walker star {i}")
        # left Walker multiplication composes like the product it represents
        c.expect(alg.walker(x, alg.walker(y, z)) == alg.walker(alg.walker(x, y), z), f"representation {i}")
    finish(acceptance_line, 3, c, time.perf_counter() - start, 30)


def test_criterion_4_traces(env, acceptance_line):
    _, alg, *_ = env
    s = Sampler(f"{SEED}/criterion-4")
    start = time.perf_counter()
    c = Counter()
    for i in range(200):
        x, y = s.element(), s.element()
        c.expect(alg.trace(alg.wedge(x, y)) == alg.trace(alg.wedge(y, x)), f"tracial {i}")
    for n in range(5):
        c.expect(alg.normalized_trace(alg.jones_projection(n), n) == 1, f"tr_{n}(p_{n})")
    blocks = {}
    for total in range(0, 7, 2):
        for b in range(total + 1):
            for l in range(total - b + 1):
                blocks.setdefault((l, total - b - l), []).extend(alg.diagrams(b, l, total - b - l))
    margin = np.inf
    for elements in blocks.values():
        starred = [alg.star(e) for e in elements]
        gram = np.array([[float(alg.trace(alg.wedge(u, v))) for v in elements] for u in starred])
        margin = min(margin, np.linalg.eigvalsh(gram).min())
    c.expect(margin > 1e-9, f"gram margin {margin}")
    finish(acceptance_line, 4, c, time.perf_counter() - start, None, f", Gram min eigenvalue {margin:.4g}")


def _corner_spectrum(alg, a, n):
    gns = alg.level_gns(n)
    reach = [i for i, (key, _) in enumerate(gns.basis) if key[1] == n]
    matrix = gns.left_multiplication(a)[np.ix_(reach, reach)]
    return spectrum_from_gram(gns.gram[np.ix_(reach, reach)], matrix)


def test_criterion_5_tower(env, acceptance_line):
    _, alg, *_ = env
    s = Sampler(f"{SEED}/criterion-5")
    start = time.perf_counter()
    c = Counter()
    for n in range(4):
        for i in range(25):
            x, y = s.level_zero(), s.level_zero()
            c.expect(alg.iota(alg.wedge(x, y), n) == alg.wedge(alg.iota(x, n), alg.iota(y, n)), f"iota mult {n}")
            c.expect(alg.iota(alg.star(x), n) == alg.star(alg.iota(x, n)), f"iota star {n}")
            c.expect(alg.normalized_trace(x, 0) == alg.normalized_trace(alg.iota(x, n), n), f"iota trace {n}")
            m, m2 = s.corner(n, n).payload, s.corner(n, n).payload
            a, b = s.level_zero(2), s.level_zero(2)
            e = alg.conditional_expectation(m, n)
            c.expect(alg.conditional_expectation(e, n) == e, f"E idempotent {n}")
            sandwich = alg.wedge(alg.wedge(alg.iota(a, n), m), alg.iota(b, n))
            c.expect(alg.conditional_expectation(sandwich, n)
                     == alg.wedge(alg.wedge(alg.iota(a, n), e), alg.iota(b, n)), f"E bimodular {n}")
            c.expect(alg.conditional_expectation(m + m2 * 3, n)
                     == e + alg.conditional_expectation(m2, n) * 3, f"E linear {n}")
            c.expect(alg.normalized_trace(e, n) == alg.normalized_trace(m, n), f"E trace {n}")
    margin = np.inf
    for i in range(30):
        n = 1 + i % 2
        core = s.element(bottoms=[0], lefts=range(n + 1), rights=[n])
        positive = alg.wedge(alg.star(core), core)
        gap = alg.conditional_expectation(positive, n) - positive * (Fraction(1) / alg.delta ** (2 * n))
        margin = min(margin, _corner_spectrum(alg, gap, n).min())
    c.expect(margin >= -1e-8, f"Pimsner-Popa margin {margin}")
    finish(acceptance_line, 5, c, time.perf_counter() - start, 60, f", Pimsner-Popa margin {margin:.4g}")


def test_criterion_6_fock(env, acceptance_line):
    _, alg, fock, _ = env
    s = Sampler(f"{SEED}/criterion-6")
    start = time.perf_counter()
    c = Counter()
    for i in range(50):
        xi, eta = s.element(bottoms=[1]), s.element(bottoms=[1])
        v = fock.vector(s.element(bottoms=range(fock.depth - 1)))
        c.expect(fock.annihilate(xi, fock.create(eta, v))
                 == fock.left_action(fock.inner_product_a(xi, eta), v), f"Pimsner {i}")
        c.expect(fock.annihilate(xi, fock.vacuum()).is_zero(), f"vacuum {i}")
    for i in range(50):
        xi = s.self_adjoint_symbol(alg.star)
        v = fock.vector(s.element(bottoms=range(fock.depth - 1)))
        c.expect(fock.field(xi, v).as_element() == alg.walker(xi, v.as_element()), f"field {i}")
    finish(acceptance_line, 6, c, time.perf_counter() - start, None)


def test_criterion_7_bimodules(env, acceptance_line):
    cat, alg, _, bim = env
    s = Sampler(f"{SEED}/criterion-7")
    start = time.perf_counter()
    c = Counter()
    for shape in [(l, t - l) for t in range(4) for l in range(t + 1)]:
        for _ in range(200):
            xi, eta = s.corner(*shape), s.corner(*shape)
            c.expect(alg.trace(bim.right_inner(xi, eta)) == alg.trace(bim.left_inner(eta, xi)), f"trace {shape}")
    for count, factors in ((100, 2), (50, 3)):
        for _ in range(count):
            xs = [s.corner(0, s.rng.randint(1, 2)) for _ in range(factors)]
            ys = [s.corner(0, x.shape[1]) for x in xs]
            nested = bim.right_inner(xs[0], ys[0])
            for x, y in zip(xs[1:], ys[1:]):
                nested = bim.right_inner(x, bim.act_left(nested, y))
            c.expect(bim.right_inner(bim.fuse(xs), bim.fuse(ys)) == nested, f"fusion {factors}")
    F = bim.functor_on_morphism
    for i in range(200):
        n = s.rng.randint(0, 3)
        m = s.rng.choice([k for k in range(4) if (k + n) % 2 == 0])
        f = s.morphism(n, m)
        g = s.morphism(m, s.rng.choice([k for k in range(4) if (k + m) % 2 == 0]))
        xi, eta = s.corner(0, n), s.corner(0, m)
        c.expect(F(cat.compose(g, f), xi) == F(g, F(f, xi)), f"functorial {i}")
        c.expect(bim.right_inner(F(f, xi), eta) == bim.right_inner(xi, F(cat.dagger(f), eta)), f"adjoint {i}")
        c.expect(bim.recover_morphism(F(f, bim.through_strands(n)), n) == f, f"faithful {i}")
    finish(acceptance_line, 7, c, time.perf_counter() - start, None)


def test_criterion_8_quantitative(env, acceptance_line):
    cat, alg, _, bim = env
    start = time.perf_counter()
    c = Counter()
    e = alg.frobenius_reciprocity(cat.compose(cat.cup(1), cat.cap(1)) * (1 / cat.delta))
    estimate = alg.norm_estimate(e, 64).best
    gns = alg.gns_norm(e)
    c.expect(abs(gns - 1.0) <= 1e-7, f"GNS norm {gns}")
    c.expect(estimate >= 0.97 * gns, f"moment estimate {estimate}")
    c.expect(bim.index_surrogate(1) == alg.jones_projection(1) * alg.delta, "index surrogate")
    c.expect(bim.index_surrogate(1).component((0, 1, 1)).coeff(planar.cup(1)) == DELTA, "index value")
    unit = [CornerElement((0, 0), alg.empty())]
    c.expect(bim.index_from_bases(unit, unit, [unit[0]]).scalars() == (1, 1), "B_0 index")
    check_start = time.perf_counter()
    report = run_suites(SuiteConfig(delta=DELTA, seed=SEED))
    check_time = time.perf_counter() - check_start
    c.expect(report.passed, f"default check: {[r.name for r in report.failures()]}")
    c.expect(check_time < 300, f"default check took {check_time:.1f}s")
    finish(
        acceptance_line, 8, c, time.perf_counter() - start, None,
        f", moment estimate {estimate:.5f} at p=64, GNS norm {gns:.9f}, default check {check_time:.1f}s",
    )


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
