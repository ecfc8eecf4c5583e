"""Attack combination functions, their axioms, and node equation residuals.

Every node equation in the package follows one template:

    v(x) = g({1 - v(y) : y attacks x})

where g is an aggregate on finite sequences over [0, 1].  With g = plain
minimum this is the max-complement equation (the value of x is one minus its
strongest attacker); with g = plain product the complements multiply, so many
weak attacks add up.  Both take the empty sequence to 1, which forces source
nodes to 1.  Callers always pass the already complemented attacker values.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .core import Framework
from .oracle import check_valuation, extension_properties

AXIOM_NAMES = ("T1", "T2", "T3", "T4", "T5", "T6-interior")


@dataclass(frozen=True)
class AfnKind:
    """A combination function: plain min, plain product, or a damped wrapper.

    The lambda variant averages its base aggregate against 1/2:
    (1 - weight) * min(1/2, g(xs)) + weight * max(1/2, g(xs)).
    """

    variant: str
    weight: float | None = None
    base: "AfnKind | None" = None

    def __post_init__(self):
        if self.variant not in ("min", "product", "lambda"):
            raise ValueError(f"unknown function variant {self.variant!r}")
        if self.variant == "lambda":
            if self.base is None:
                raise ValueError("lambda variant requires a base function")
            if self.weight is None or not 0.0 <= self.weight <= 1.0:
                raise ValueError("lambda weight must lie in [0, 1]")
        elif self.weight is not None or self.base is not None:
            raise ValueError(f"{self.variant} takes no weight or base")

    def describe(self) -> str:
        if self.variant == "lambda":
            return f"lambda({self.weight}, {self.base.describe()})"
        return self.variant


MIN = AfnKind("min")
PRODUCT = AfnKind("product")


def lambda_kind(weight: float, base: AfnKind = MIN) -> AfnKind:
    return AfnKind("lambda", weight=weight, base=base)


def eval_afn(kind: AfnKind, values: Sequence[float]) -> float:
    """Apply the combination function; the empty sequence yields 1."""
    for value in values:
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"input {value!r} is outside [0, 1]")
    if kind.variant == "min":
        return min(values) if values else 1.0
    if kind.variant == "product":
        return math.prod(values) if values else 1.0
    inner = eval_afn(kind.base, values)
    return (1.0 - kind.weight) * min(0.5, inner) + kind.weight * max(0.5, inner)


def node_aggregate(fw: Framework, kind: AfnKind, v: Mapping[str, float], x: str) -> float:
    """g over the complemented attacker values of x (1 for sources)."""
    return eval_afn(kind, [1.0 - v[y] for y in fw.attackers(x)])


def equation_residual(fw: Framework, kind: AfnKind, v: Mapping[str, float]) -> float:
    """Max-norm defect of v against the node equations; 0 iff v solves them."""
    check_valuation(fw, v)
    return max((abs(v[x] - node_aggregate(fw, kind, v, x)) for x in fw.arguments), default=0.0)


def extension_to_solution(fw: Framework, e: Iterable[str]) -> dict[str, float]:
    """Value pattern of a complete extension: members 1, attacked 0, rest 1/2.

    The result solves the min equations exactly; a ValueError is raised when e
    is not complete.
    """
    members = set(e)
    report = extension_properties(fw, members, cap=0)
    if not report.complete:
        raise ValueError(f"{sorted(members)} is not a complete extension")
    attacked = fw.attacked_set(members)
    v = {
        x: 1.0 if x in members else 0.0 if x in attacked else 0.5
        for x in fw.arguments
    }
    residual = equation_residual(fw, MIN, v)
    assert residual == 0.0, f"complete extension pattern left residual {residual}"
    return v


@dataclass(frozen=True)
class AxiomCheck:
    passed: bool
    witness: tuple[float, ...] | None = None


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the sampled axiom checks.

    Continuity is declared by the definition but is not decidable from point
    samples, so it is flagged rather than tested.
    """

    results: dict[str, AxiomCheck]
    continuity_tested: bool = False

    def passed(self, name: str) -> bool:
        return self.results[name].passed

    def all_passed(self) -> bool:
        return all(check.passed for check in self.results.values())

    def failures(self) -> dict[str, tuple[float, ...] | None]:
        return {name: c.witness for name, c in self.results.items() if not c.passed}


_BOUNDARY_SEQUENCES = ((0.0,), (1.0,), (1.0, 1.0), (0.0, 1.0), (0.5,))
_GRID_POINTS = (0.0, 0.25, 0.5, 0.75, 1.0)
_TOL = 1e-12


def grid_sequences(max_length: int = 4) -> list[tuple[float, ...]]:
    """Every sequence over {0, 1/4, 1/2, 3/4, 1} up to the given length."""
    out: list[tuple[float, ...]] = [()]
    for length in range(1, max_length + 1):
        out.extend(_product_tuples(_GRID_POINTS, length))
    return out


def _product_tuples(points: Sequence[float], length: int) -> list[tuple[float, ...]]:
    result = [()]
    for _ in range(length):
        result = [prev + (p,) for prev in result for p in points]
    return result


def check_afn_axioms(
    fn: AfnKind | Callable[[Sequence[float]], float],
    samples: int = 1000,
    seed: int = 0,
    max_random_length: int = 6,
) -> AxiomReport:
    """Test the aggregate axioms on boundary, grid and random sequences.

    T1 empty-sequence identity is checked exactly; T2 (dropping a 1), T3
    (permutation symmetry), T4 (zero iff a zero input), T5 (one iff all
    inputs one) and the interior-preservation condition are checked on the
    fixed boundary sequences, the 5-point grid up to length 4, and `samples`
    random sequences.  Interior preservation: if every input is above 0 and
    some input is below 1, the output must lie strictly inside (0, 1).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    g: Callable[[Sequence[float]], float]
    if isinstance(fn, AfnKind):
        kind = fn
        g = lambda xs: eval_afn(kind, xs)
    else:
        g = fn

    rng = random.Random(seed)
    pool: list[tuple[float, ...]] = list(_BOUNDARY_SEQUENCES)
    pool.extend(grid_sequences())
    for _ in range(samples):
        length = rng.randint(0, max_random_length)
        pool.append(tuple(rng.random() for _ in range(length)))

    results: dict[str, AxiomCheck] = {}

    t1 = abs(g(()) - 1.0) <= _TOL
    results["T1"] = AxiomCheck(t1, None if t1 else ())

    def record_failure(name: str, witness: tuple[float, ...]) -> None:
        if name not in results:
            results[name] = AxiomCheck(False, witness)

    for delta in pool:
        base = g(delta)
        if "T2" not in results:
            padded = (1.0,) + delta
            mid = delta[: len(delta) // 2] + (1.0,) + delta[len(delta) // 2 :]
            if abs(g(padded) - base) > _TOL or abs(g(mid) - base) > _TOL:
                record_failure("T2", delta)
        if "T3" not in results and len(delta) > 1:
            shuffled = list(delta)
            rng.shuffle(shuffled)
            if abs(g(tuple(shuffled)) - base) > _TOL or abs(g(tuple(reversed(delta))) - base) > _TOL:
                record_failure("T3", delta)
        if "T4" not in results and delta:
            if (base == 0.0) != (0.0 in delta):
                record_failure("T4", delta)
        if "T5" not in results and delta:
            if (base == 1.0) != all(x == 1.0 for x in delta):
                record_failure("T5", delta)
        if "T6-interior" not in results and delta:
            if all(x > 0.0 for x in delta) and any(x < 1.0 for x in delta):
                if not 0.0 < base < 1.0:
                    record_failure("T6-interior", delta)

    for name in AXIOM_NAMES:
        results.setdefault(name, AxiomCheck(True))
    ordered = {name: results[name] for name in AXIOM_NAMES}
    return AxiomReport(results=ordered)
