# core/suites.py
"""
Verification suites, one per verification id. Each suite takes one parameter set
and returns the list of checks it ran; a failed postcondition inside the
engine becomes a failed check, while bad parameters and guards propagate.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import galois
import numpy as np

from core import cyclic_codes as codes
from core import designs, invariant_classifier, moebius, poly_ring, weight_tools
from core.errors import ParameterError, VerificationFailure
from core.field_tower import build_tower, code_tower, in_norm_one_group, norm_one_group
from core.schemas import CheckResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParamSet:
    p: int
    m: int
    delta: Optional[int] = None
    h: int = 1

    @property
    def q(self) -> int:
        base = self.delta if self.delta is not None else self.p
        return base ** self.m

    def as_dict(self) -> Dict[str, int]:
        out = {"p": self.p, "m": self.m, "q": self.q, "h": self.h}
        if self.delta is not None:
            out["delta"] = self.delta
        return out


@dataclass(frozen=True)
class SuiteContext:
    threads: int = 1
    seed: int = 0
    samples: int = 100
    u0: Optional[int] = None
    w: Optional[int] = None
    max_messages: int = weight_tools.MAX_MESSAGES
    max_trace_params: int = weight_tools.MAX_TRACE_PARAMS
    max_supports: int = weight_tools.MAX_SUPPORTS
    max_cosets: int = 24
    progress: bool = False

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


class Checks:
    """Collects named pass/fail results"""

    def __init__(self):
        self.items: List[CheckResult] = []

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.items.append(CheckResult(name=name, passed=bool(passed), detail=detail))
        if not passed:
            logger.warning("check failed: %s %s", name, detail)
        return bool(passed)

    def run(self, name: str, fn: Callable[[], object]) -> bool:
        try:
            outcome = fn()
        except VerificationFailure as exc:
            return self.add(name, False, str(exc))
        if isinstance(outcome, tuple):
            return self.add(name, *outcome)
        return self.add(name, bool(outcome))


def _require_delta(params: ParamSet) -> int:
    if params.delta is None:
        raise ParameterError("this suite needs --delta")
    if params.m < 2:
        raise ParameterError(f"m={params.m}: codes with δ need q = δ^m with m ≥ 2")
    return params.delta


def _u0(q: int, ctx: SuiteContext) -> int:
    return ctx.u0 if ctx.u0 is not None else weight_tools.default_u0(q)


def random_codewords(C: codes.CyclicCode, rng: np.random.Generator, count: int):
    alphabet = C.scalar_field.elements()
    if C.dimension == 0:
        return C.tower.GF.Zeros((count, C.n))
    messages = alphabet[rng.integers(0, len(alphabet), size=(count, C.dimension))]
    return messages @ C.generator_matrix


def _bch_generator_product(C: codes.CyclicCode, delta: int) -> galois.Poly:
    """Π_{i=1}^{δ-1} (x² - (β^i + β^{-i})x + 1)"""
    GF = C.tower.GF
    out = galois.Poly.One(field=GF)
    for i in range(1, delta):
        b = C.gamma ** i
        out = out * galois.Poly([1, int(-(b + b ** -1)), 1], field=GF)
    return out


# ---------- params ----------

def suite_params(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    delta, q = _require_delta(params), params.q
    checks = Checks()
    C = codes.antiprimitive_bch(q, delta)
    checks.add(f"dim bch({q},{q + 1},{delta},1) = {q - 2 * delta + 3}", C.dimension == q - 2 * delta + 3,
               f"k={C.dimension}")
    checks.add("generator = Π(x² - (β^i+β^-i)x + 1)", C.generator == _bch_generator_product(C, delta))

    lower = [
        checks.add(f"no codeword of weight {w}",
                   weight_tools.exists_word_of_weight(C, w, ctx.max_supports, ctx.progress) is None)
        for w in range(1, delta + 1)
    ]
    upper = weight_tools.exists_word_of_weight(C, delta + 1, ctx.max_supports, ctx.progress)
    found = checks.add(f"codeword of weight {delta + 1} found by support search", upper is not None)
    explicit = checks.run(f"explicit word has weight {delta + 1}", lambda: codes.weight(
        weight_tools.explicit_min_word(q, delta, _u0(q, ctx))) == delta + 1)
    checks.add(f"d = {delta + 1}", all(lower) and found and explicit)
    checks.add("LCD", codes.is_lcd(C))
    checks.add("dim C + dim C^⊥ = n", C.dimension + codes.dual(C).dimension == C.n)
    return checks.items


# ---------- dual-params ----------

def suite_dual_params(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    delta, q = _require_delta(params), params.q
    checks = Checks()
    C = codes.antiprimitive_bch(q, delta)
    D = codes.dual(C)
    n = q + 1
    checks.add(f"dim C^⊥ = {2 * delta - 2}", D.dimension == 2 * delta - 2, f"k={D.dimension}")

    traced = weight_tools.weight_distribution_trace(q, delta, ctx.max_trace_params, ctx.threads, ctx.progress)
    d_dual = traced.min_distance
    if delta >= 3:
        checks.add(f"d(C^⊥) = {q - 2 * delta + 3}", d_dual == q - 2 * delta + 3, f"d={d_dual}")
        checks.add("almost MDS: n - k = d", n - D.dimension == d_dual)
    else:
        # δ = 2: primary and dual are both MDS
        checks.add("MDS: n - k + 1 = d", n - D.dimension + 1 == d_dual, f"d={d_dual}")
    checks.add(f"trace distribution sums to q^{2 * delta - 2}", traced.total == q ** (2 * delta - 2))

    if q ** D.dimension <= ctx.max_messages:
        exhaustive = weight_tools.weight_distribution_exhaustive(D, ctx.max_messages, ctx.threads, ctx.progress)
        checks.add("trace distribution = exhaustive distribution", exhaustive == traced)
    return checks.items


# ---------- min-words ----------

def suite_min_words(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    delta, q = _require_delta(params), params.q
    checks = Checks()
    C = codes.antiprimitive_bch(q, delta)
    GF = C.tower.GF
    minus_one = int(-GF(1))
    candidates = [int(u) for u in norm_one_group(C.tower, q) if int(u) not in (1, minus_one)]
    if ctx.u0 is not None:
        candidates = [ctx.u0]

    weights_ok, members_ok, rank_ok = True, True, True
    for u0 in candidates:
        word = weight_tools.explicit_min_word(q, delta, u0)
        support = tuple(int(j) for j in np.nonzero(word != 0)[0])
        weights_ok &= len(support) == delta + 1
        members_ok &= codes.contains(C, word)
        rank_ok &= weight_tools.solution_space(C, support).shape[0] == 1
    label = f"{len(candidates)} choices of u0"
    checks.add(f"weight δ+1 for {label}", weights_ok)
    checks.add(f"moment sums vanish for e = 1..{delta - 1} ({label})", members_ok)
    checks.add("one-dimensional solution space on each support", rank_ok)

    if ctx.w is not None:
        found = weight_tools.exists_word_of_weight(C, ctx.w, ctx.max_supports, ctx.progress)
        detail = f"support {found[0]}" if found else "none"
        if ctx.w <= delta:
            checks.add(f"no codeword of weight {ctx.w}", found is None, detail)
        elif ctx.w == delta + 1:
            checks.add(f"codeword of weight {ctx.w} exists", found is not None, detail)
        else:
            checks.add(f"support search at weight {ctx.w}", True, detail)
    return checks.items


# ---------- design ----------

def suite_design(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    delta, q = _require_delta(params), params.q
    checks = Checks()
    C = codes.antiprimitive_bch(q, delta)
    words = list(weight_tools.iter_words_of_weight(C, delta + 1, ctx.max_supports, ctx.progress))
    D = designs.incidence_structure(C.n, {s for s, _ in words}, [int(u) for u in C.points])
    cert = designs.verify_t_design(D, 3, ctx.threads)
    label = f"3-({q + 1},{delta + 1},1) Steiner"
    checks.add(label, cert is not None and cert.lambda_ == 1 and cert.steiner,
               cert.describe() if cert else "not a 3-design")
    expected_blocks = math.comb(q + 1, 3) // math.comb(delta + 1, 3)
    checks.add(f"{expected_blocks} blocks", len(D.blocks) == expected_blocks, f"b={len(D.blocks)}")
    checks.add(f"A_{delta + 1} = (q-1)·b", len(words) == (q - 1) * len(D.blocks), f"A={len(words)}")

    if q ** max(C.dimension, codes.dual(C).dimension) <= min(ctx.max_messages, 10 ** 6):
        for side, code in (("C", C), ("C^⊥", codes.dual(C))):
            classes = designs.support_designs_by_weight(code, ctx.max_messages)
            ok = all(designs.verify_t_design(S, 3, ctx.threads) is not None for S in classes.values())
            checks.add(f"every weight class of {side} holds a 3-design", ok, f"weights {sorted(classes)}")
    return checks.items


# ---------- design-iso ----------

def suite_design_iso(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    delta, q = _require_delta(params), params.q
    checks = Checks()
    C = codes.antiprimitive_bch(q, delta)
    support = designs.support_design(C, delta + 1, ctx.max_supports, ctx.progress)
    orbit = designs.orbit_design(q, delta)
    cert = designs.verify_t_design(orbit, 3, ctx.threads)
    checks.add(f"orbit design is 3-({q + 1},{delta + 1},1)", cert is not None and cert.lambda_ == 1)
    lam = designs.lambda_formula(3, q + 1, delta + 1, designs.pgl2_order(q), designs.pgl2_order(delta))
    checks.add("λ formula gives 1", lam == 1, str(lam))
    u0 = _u0(q, ctx)
    bijection = designs.bridge_bijection(q, u0)
    checks.add(f"support design ≅ orbit design via bridge(u0={u0})",
               designs.isomorphic_via(orbit, support, bijection))
    return checks.items


# ---------- p-rank ----------

def suite_p_rank(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    delta, q, p = _require_delta(params), params.q, params.p
    checks = Checks()
    D = designs.orbit_design(q, delta)
    r = designs.p_rank(D, p)
    checks.add(f"rank_{p} S(3,{delta + 1},{q + 1}) = {q + 1}", r == q + 1, f"rank={r}")

    for k in sorted({p, p + 1} & set(range(1, q + 1))):
        orbit = designs.pgl_orbit_design(q, range(k))
        expected = q if k % p == 0 else q + 1
        got = designs.p_rank(orbit, p)
        checks.add(f"PGL-invariant {k}-subsets: rank {expected}", got == expected, f"rank={got}")
    return checks.items


# ---------- classification ----------

def suite_classification(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    checks = Checks()
    report = invariant_classifier.classify(params.p, params.m, params.h, ctx.max_cosets, ctx.threads)
    names = ", ".join(name for name, _ in report.invariant_codes)
    checks.add(f"{len(report.invariant_codes)} invariant codes", report.holds,
               f"{report.candidates_tested} candidates; {names}")
    checks.add("names match defining sets", invariant_classifier.name_map_consistent(report))
    logger.debug("classification: %s", invariant_classifier.summary(report).model_dump_json())

    group = moebius.stabilizer_group(report.q)
    rng = ctx.rng()
    tower = codes.tower_for_length(params.p ** params.h, report.n)
    spot = all(
        invariant_classifier.invariant_under_random_elements(
            codes.cyclic_code(params.p ** params.h, report.n, E, tower), group, rng, ctx.samples)
        for _, E in report.invariant_codes
    )
    checks.add(f"invariant under {ctx.samples} random group elements", spot)
    return checks.items


# ---------- automorphism ----------

def suite_automorphism(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    delta, q = _require_delta(params), params.q
    checks = Checks()
    rng = ctx.rng()
    C = codes.antiprimitive_bch(q, delta)
    D = codes.dual(C)
    group = moebius.stabilizer_group(q)

    perms = group.permutations
    checks.add(f"closure order {group.full_order}", len(perms) == group.full_order, f"|G|={len(perms)}")
    checks.add(f"sharply 3-transitive on U_{q + 1}", moebius.is_sharply_3_transitive(perms, q + 1))

    elements = group.random_elements(rng, ctx.samples)
    primary = random_codewords(C, rng, ctx.samples)
    dual_words = random_codewords(D, rng, ctx.samples)
    kept, kept_dual, weights = True, True, True
    for g, w, x in zip(elements, primary, dual_words):
        image = moebius.monomial_action(delta, g, w, dual_side=False, group=group)
        image_dual = moebius.monomial_action(delta, g, x, dual_side=True, group=group)
        kept &= codes.contains(C, image)
        kept_dual &= codes.contains(D, image_dual)
        weights &= codes.weight(image) == codes.weight(w)
    checks.add(f"G_δ preserves C ({ctx.samples} samples)", kept)
    checks.add(f"G_δ^⊥ preserves C^⊥ ({ctx.samples} samples)", kept_dual)
    checks.add("monomial maps preserve weight", weights)

    U = norm_one_group(group.tower, q)
    stays = True
    for _ in range(min(ctx.samples, 50)):
        c, d = moebius.random_stab_pair(group.tower, q, rng)
        g = moebius.stab_element(group.tower, q, c, d)
        stays &= moebius.in_stabilizer(g, q) and in_norm_one_group(moebius.apply_on_points(g, U), q)
    checks.add("stab_element maps U_{q+1} into itself", stays)
    return checks.items


# ---------- lemmas ----------

def _random_outside_U(tower, q: int, rng: np.random.Generator):
    GF = tower.GF
    while True:
        c = GF(int(rng.integers(1, tower.order)))
        if not in_norm_one_group(c, q):
            return c


def suite_lemmas(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    checks = Checks()
    rng = ctx.rng()

    divisible = all(weight_tools.binomial_divisibility_holds(d) for d in (2, 3, 4, 5, 8, 9))
    checks.add("p | C(δ-1+e, s) for δ ≤ 9", divisible)

    for q in (4, 9):
        tower = code_tower(q)
        GF = tower.GF
        U = norm_one_group(tower, q)
        outside = [c for c in range(1, tower.order) if not in_norm_one_group(GF(c), q)]
        checks.add(f"fraction expansion on U_{q + 1} (exhaustive)",
                   all(moebius.frac_poly_identity_holds(q, c) for c in outside))

        values = GF(rng.integers(0, tower.order, size=q + 1))
        coeffs = poly_ring.interpolate_on_Un(values, U)
        checks.add(f"interpolation roundtrip on U_{q + 1}", np.all(poly_ring.evaluate_on_Un(coeffs, U) == values))

        head_ok = True
        for _ in range(min(ctx.samples, 10)):
            c = _random_outside_U(tower, q, rng)
            for e in range(1, q + 1):
                a0, a1 = moebius.interpolation_head(q, int(c), e)
                head_ok &= bool(a0 == 0 and a1 == c ** (q * (e - 1)))
        checks.add(f"a_0 = 0 and a_1 = c^(q(e-1)) at q={q}", head_ok)

    big = build_tower(3, 4)
    vandermonde_ok, symmetric_ok = True, True
    for n in range(1, 7):
        points = big.GF(rng.choice(np.arange(1, big.order), size=n, replace=False))
        for ell in range(n + 1):
            matrix = poly_ring.deleted_row_vandermonde_matrix(ell, points)
            vandermonde_ok &= bool(poly_ring.determinant(matrix) == poly_ring.deleted_row_vandermonde(ell, points))
            symmetric_ok &= bool(poly_ring.elementary_symmetric(ell, points)
                                 == poly_ring.elementary_symmetric_bruteforce(ell, points))
    checks.add("generalized Vandermonde = det (n ≤ 6)", vandermonde_ok)
    checks.add("σ_ℓ by product = σ_ℓ by subsets", symmetric_ok)

    moments = suite_min_words(ParamSet(p=3, m=2, delta=3), SuiteContext(seed=ctx.seed))
    checks.add("min-word moments vanish (q=9, every u0)", all(c.passed for c in moments))

    checks.items.extend(_representation_checks(ctx, rng))
    checks.items.extend(_lift_checks())
    return checks.items


def _representation_checks(ctx: SuiteContext, rng: np.random.Generator) -> List[CheckResult]:
    checks = Checks()
    q, delta = 9, 3
    group = moebius.stabilizer_group(q)
    tower = group.tower
    GF = tower.GF
    identity = GF([[1, 0], [0, 1]])

    def random_A():
        c, d = moebius.random_stab_pair(tower, q, rng)
        return np.linalg.inv(moebius.stab_matrix(tower, q, c, d))

    def random_f():
        return GF(rng.integers(0, tower.order, size=delta - 1))

    f = random_f()
    checks.run("E∘f = f", lambda: np.all(
        moebius.circ_action(delta, identity, f, group) == moebius.trace_values(q, delta, f, tower)))

    law, linear = True, True
    scalars = tower.subfield_of_order(q).elements()
    for _ in range(ctx.samples):
        A1, A2, f1, f2 = random_A(), random_A(), random_f(), random_f()
        inner = moebius.circ_action(delta, A2, f1, group)
        law &= bool(np.all(moebius.circ_action(delta, A1 @ A2, f1, group)
                           == moebius.circ_on_values(delta, A1, inner, group)))
        a, b = scalars[rng.integers(0, q, size=2)]
        combined = moebius.circ_action(delta, A1, a * f1 + b * f2, group)
        split = a * moebius.circ_action(delta, A1, f1, group) + b * moebius.circ_action(delta, A1, f2, group)
        linear &= bool(np.all(combined == split))
    checks.add(f"(A1A2)∘f = A1∘(A2∘f) ({ctx.samples} samples)", law)
    checks.add("∘ is GF(q)-linear", linear)
    return checks.items


def _lift_checks() -> List[CheckResult]:
    """Codewords of bch(4,5,2,1) lifted to GF(16) expand only on E"""
    checks = Checks()
    C = codes.bch(4, 5, 2, 1)
    lifted = codes.lift(C, 2)
    words = weight_tools.all_codewords(lifted)
    outside = sorted(set(range(C.n)) - set(C.defining_set))
    supported = True
    for word in words:
        coeffs = poly_ring.interpolate_on_Un(word, C.points)
        supported &= bool(np.all(coeffs[outside] == 0))
    checks.add(f"expansions of all {len(words)} lifted codewords lie on E", supported)
    checks.add("lift keeps the dimension", lifted.dimension == C.dimension)
    return checks.items


# ---------- published q = 25 example ----------

def suite_example(params: ParamSet, ctx: SuiteContext) -> List[CheckResult]:
    checks = Checks()
    primary, dual_dist = weight_tools.published_enumerators()
    checks.add("published primary sums to 25^18", primary.total == 25 ** 18)
    checks.add("published dual sums to 25^8", dual_dist.total == 25 ** 8)
    checks.run("MacWilliams(published dual) = published primary",
               lambda: weight_tools.macwilliams(dual_dist, 26, 8, 25) == primary)
    lam = weight_tools.PUBLISHED_DUAL_LAMBDA_25
    expected = 24 * lam * math.comb(26, 3) // math.comb(18, 3)
    checks.add(f"A_18(C^⊥) = 24·{lam}·C(26,3)/C(18,3)", dual_dist[18] == expected, str(expected))

    C = codes.antiprimitive_bch(25, 5)
    checks.add("bch(25,26,5,1) has dimension 18", C.dimension == 18)
    words = list(weight_tools.iter_words_of_weight(C, 6, ctx.max_supports, ctx.progress))
    blocks = {s for s, _ in words}
    checks.add("130 weight-6 supports", len(blocks) == 130, f"b={len(blocks)}")
    checks.add("A_6 = 24·130 = 3120", len(words) == primary[6], f"A_6={len(words)}")
    return checks.items


SUITES: Dict[str, Callable[[ParamSet, SuiteContext], List[CheckResult]]] = {
    "params": suite_params,
    "dual-params": suite_dual_params,
    "min-words": suite_min_words,
    "design": suite_design,
    "design-iso": suite_design_iso,
    "p-rank": suite_p_rank,
    "classification": suite_classification,
    "automorphism": suite_automorphism,
    "lemmas": suite_lemmas,
    "example": suite_example,
}
