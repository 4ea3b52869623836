"""The acceptance suite: exact property checks over fixtures and seeded random structures."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import LinearOperator, check_3leibniz
from .cohomology import V_TO_G, Cochain, coboundary_matrix, cochain_dim
from .deformation import check_order_n, extend, extend_to_order, extension_system, obstruction
from .exactla import DenseTensor, matmul, rank
from .fixtures import (
    fix_a1,
    fix_n,
    fix_n_setup,
    fix_r,
    fix_r_setup,
    fix_t,
    named_trbo_fixtures,
    random_representation,
    random_setup,
)
from .linfty import GradedElement, graded_bracket, mc_residual, pi_element, twisted_lk
from .ns import (
    PRINTED,
    check_ns,
    compatible_ns_from_invertible_trbo,
    ns_canonical_package,
    ns_from_nijenhuis,
    ns_from_reynolds,
    ns_from_trbo,
    ns_from_weighted_rbo,
    subadjacent,
)
from .rbo_cohomology import cocycle_basis_T, cohomology_dim_T, delta_T
from .twisted_rbo import TwistedSetup, check_graph_subalgebra, check_trbo, induced_bracket, reynolds_setup

BUDGET_SECONDS = 300.0


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.2f}s)"


def _rand_op(rng: random.Random, r: int, c: int, vals=(-1, 0, 0, 1, 2)) -> LinearOperator:
    return LinearOperator.from_rows([[Fraction(rng.choice(vals)) for _ in range(c)] for _ in range(r)])


def _rand_cochain(rng: random.Random, m: int, d: int, n: int) -> Cochain:
    shape = (m,) * (2 * n - 1) + (d,)
    vals = [Fraction(rng.randint(-2, 2), rng.choice([1, 1, 2])) for _ in range(cochain_dim(m, d, n))]
    return Cochain(n, V_TO_G, DenseTensor.from_flat(shape, vals))


# 1 -------------------------------------------------------------------------

def criterion_complex(seed: int = 1, count: int = 20) -> tuple[bool, str]:
    rng = random.Random(seed)
    dims = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)]
    bad = 0
    for k in range(count):
        d, m = dims[k % len(dims)]
        R = random_representation(rng, d, m)
        if not matmul(coboundary_matrix(R, 2), coboundary_matrix(R, 1)).is_zero():
            bad += 1
    return bad == 0, f"{count} representations, {bad} with nonzero delta^2"


# 2 -------------------------------------------------------------------------

def _fix_a1_setups() -> list[TwistedSetup]:
    S_t, _ = fix_t()
    return [S_t, reynolds_setup(fix_a1()), fix_n_setup()[0], S_t.with_phi(DenseTensor.zeros((2,) * 4))]


def criterion_graph(seed: int = 2, count: int = 120) -> tuple[bool, str]:
    rng = random.Random(seed)
    setups = _fix_a1_setups()
    disagree = positives = 0
    for k in range(count):
        S = setups[k % len(setups)]
        T = _rand_op(rng, S.dim, S.dimV)
        a = check_trbo(S, T).ok
        b = check_graph_subalgebra(S, T)
        positives += a
        disagree += a != b
    return disagree == 0, f"{count} maps, {positives} operators, {disagree} disagreements"


# 3 -------------------------------------------------------------------------

def criterion_mc(seed: int = 3, negatives: int = 50) -> tuple[bool, str]:
    rng = random.Random(seed)
    S_t, T_t = fix_t()
    fixtures = [(S_t, LinearOperator.zero(2, 2)), (S_t, T_t), fix_r_setup(), fix_n_setup()]
    bad = 0
    for S, T in fixtures:
        if not (check_trbo(S, T).ok and mc_residual(S, T).is_zero()):
            bad += 1
    setups = _fix_a1_setups() + [S for S, _ in named_trbo_fixtures().values()]
    found = 0
    while found < negatives:
        S = setups[rng.randrange(len(setups))]
        T = _rand_op(rng, S.dim, S.dimV)
        ok = check_trbo(S, T).ok
        if ok:
            continue
        found += 1
        if mc_residual(S, T).is_zero():
            bad += 1
    return bad == 0, f"{len(fixtures)} operators and {found} non-examples, {bad} mismatches"


# 4 -------------------------------------------------------------------------

def _rand_graded(rng: random.Random, deg: int, W: int) -> GradedElement:
    shape = (W,) * (2 * deg + 2)
    size = W ** (2 * deg + 2)
    vals = [Fraction(rng.choice([-1, 0, 0, 1, 2])) for _ in range(size)]
    return GradedElement(deg, DenseTensor.from_flat(shape, vals))


def criterion_pi(seed: int = 4, triples: int = 20) -> tuple[bool, str]:
    rng = random.Random(seed)
    setups = [S for S, _ in named_trbo_fixtures().values()]
    setups += [random_setup(rng, d, m) for d, m in [(2, 1), (2, 2), (3, 1)]]
    bad_pi = sum(not graded_bracket(pi_element(S), pi_element(S)).is_zero() for S in setups)
    bad_alg = 0
    for _ in range(triples):
        p, q, r = (rng.randint(0, 2) for _ in range(3))
        if p + q + r > 4:
            p, q, r = p % 2, q % 2, r
        P, Q, R = (_rand_graded(rng, k, 2) for k in (p, q, r))
        s_pq = -1 if (p * q) % 2 else 1
        if graded_bracket(P, Q) != graded_bracket(Q, P).scale(-s_pq):
            bad_alg += 1
        lhs = graded_bracket(P, graded_bracket(Q, R))
        rhs = graded_bracket(graded_bracket(P, Q), R) + graded_bracket(Q, graded_bracket(P, R)).scale(s_pq)
        if lhs != rhs:
            bad_alg += 1
    ok = bad_pi == 0 and bad_alg == 0
    return ok, f"{len(setups)} setups ({bad_pi} failing), {triples} triples ({bad_alg} failing)"


# 5 -------------------------------------------------------------------------

def criterion_l1(seed: int = 5, per_degree: int = 10) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = total = 0
    for S, T in (fix_t(), fix_n_setup()):
        for n in (1, 2):
            for _ in range(per_degree):
                f = _rand_cochain(rng, S.dimV, S.dim, n)
                lhs = twisted_lk(S, T, 1, f, check=False)
                rhs = delta_T(S, T, f).coeffs.scale((-1) ** (n - 1))
                total += 1
                bad += lhs.coeffs != rhs
    return bad == 0, f"{total} cochains, {bad} mismatches"


# 6 -------------------------------------------------------------------------

def _combo(rng: random.Random, basis, m: int, d: int) -> LinearOperator:
    c = DenseTensor.zeros((m, d))
    for b in basis:
        c = c + b.coeffs.scale(rng.randint(-2, 2))
    return LinearOperator(c.transpose(1, 0))


def criterion_obstruction(seed: int = 6, per_fixture: int = 2) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = []
    deformations = extended = blocked = rigid = 0
    for name, (S, T) in named_trbo_fixtures().items():
        basis = cocycle_basis_T(S, T, 1)
        h2 = cohomology_dim_T(S, T, 2)
        for _ in range(per_fixture):
            terms = [T, _combo(rng, basis, S.dimV, S.dim)]
            while len(terms) <= 3:
                deformations += 1
                if not check_order_n(S, terms).ok:
                    bad.append(f"{name}: invalid order-{len(terms) - 1} deformation")
                    break
                ob = obstruction(S, terms)
                if not delta_T(S, T, ob).is_zero():
                    bad.append(f"{name}: obstruction not closed")
                M, b = extension_system(S, terms)
                aug = DenseTensor.from_array([list(r) + [v] for r, v in zip(M.to_fractions().tolist(), b)])
                consistent = rank(aug) == rank(M)
                X = extend(S, terms)
                if (X is not None) != consistent:
                    bad.append(f"{name}: extend disagrees with the rank test")
                if X is None:
                    blocked += 1
                    break
                extended += 1
                if not check_order_n(S, terms + [X]).ok:
                    bad.append(f"{name}: extension fails the next order")
                terms = terms + [X]
            if h2 == 0:
                rigid += 1
                T1 = _combo(rng, basis, S.dimV, S.dim)
                if extend_to_order(S, [T, T1], 3) is None:
                    bad.append(f"{name}: unobstructed fixture failed to reach order 3")
    detail = (f"{deformations} deformations, {extended} extended, {blocked} obstructed, "
              f"{rigid} order-3 runs with vanishing second cohomology")
    if rigid == 0:
        bad.append("no fixture with vanishing second cohomology")
    if bad:
        detail += "; " + "; ".join(bad[:3])
    return not bad, detail


# 7 -------------------------------------------------------------------------

def criterion_ns(seed: int = 7) -> tuple[bool, str]:
    bad = []
    A1 = fix_a1()
    built = {}
    for name, (S, T) in named_trbo_fixtures().items():
        built[f"trbo:{name}"] = ns_from_trbo(S, T)
        if built[f"trbo:{name}"].star != induced_bracket(S, T).bracket:
            bad.append(f"{name}: subadjacent differs from the induced bracket")
    built["nijenhuis"] = ns_from_nijenhuis(A1, fix_n())
    built["reynolds"] = ns_from_reynolds(A1, fix_r())
    for lam in (1, 2):
        built[f"weighted:{lam}"] = ns_from_weighted_rbo(A1, LinearOperator.identity(2).scale(-lam), lam)
    for name, A in built.items():
        if not check_ns(A).ok:
            bad.append(f"{name}: fails the axioms")
            continue
        if not check_3leibniz(subadjacent(A)).ok:
            bad.append(f"{name}: subadjacent is not 3-Leibniz")
        if not ns_canonical_package(A).witness.ok:
            bad.append(f"{name}: identity witness fails")
    S, T = fix_t()
    if compatible_ns_from_invertible_trbo(S, T).star != S.algebra.bracket:
        bad.append("compatible structure does not reproduce the bracket")
    detail = f"{len(built)} constructions"
    if bad:
        detail += "; " + "; ".join(bad[:3])
    return not bad, detail


# 8 -------------------------------------------------------------------------

def criterion_printed_axiom() -> tuple[bool, str]:
    corrected_fail = []
    printed_fail = []
    for name, (S, T) in named_trbo_fixtures().items():
        A = ns_from_trbo(S, T)
        if not check_ns(A).ok:
            corrected_fail.append(name)
        if not check_ns(A, PRINTED).ok:
            printed_fail.append(name)
    ok = not corrected_fail and bool(printed_fail)
    return ok, (f"printed form fails on {len(printed_fail)} fixtures ({', '.join(printed_fail)}); "
                f"corrected form fails on {len(corrected_fail)}")


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "coboundary squares to zero", criterion_complex),
    (2, "graph criterion agrees with the operator identity", criterion_graph),
    (3, "Maurer-Cartan residual vanishes exactly for operators", criterion_mc),
    (4, "pi squares to zero; graded antisymmetry and Jacobi", criterion_pi),
    (5, "l1 twisted equals signed partial_T", criterion_l1),
    (6, "obstruction closed; extension decided by consistency", criterion_obstruction),
    (7, "NS constructions", criterion_ns),
    (8, "printed right_on_mid axiom fails, corrected holds", criterion_printed_axiom),
]


def run_criterion(number: int) -> CriterionResult:
    for k, title, fn in CRITERIA:
        if k == number:
            t0 = time.perf_counter()
            ok, detail = fn()
            return CriterionResult(k, title, ok, detail, time.perf_counter() - t0)
    raise ValueError(f"no criterion {number}")


def run_all(emit: Callable[[str], None] | None = None) -> list[CriterionResult]:
    t0 = time.perf_counter()
    out = []
    for k, _, _ in CRITERIA:
        r = run_criterion(k)
        out.append(r)
        if emit:
            emit(r.line())
    total = time.perf_counter() - t0
    r9 = CriterionResult(9, "whole suite within the runtime budget", total < BUDGET_SECONDS,
                         f"{total:.1f}s of {BUDGET_SECONDS:.0f}s", total)
    out.append(r9)
    if emit:
        emit(r9.line())
    return out
