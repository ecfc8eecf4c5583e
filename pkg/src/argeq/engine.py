"""The value iteration schema, the stability and equilibrium machinery, and
acceptance-condition networks.

One step updates every node from the same snapshot:

    next(x) = (1 - v(x)) * min(1/2, a(x)) + v(x) * max(1/2, a(x))

where a(x) aggregates the complemented attacker values (1 for sources).  The
update leaves legal values fixed, pulls illegal crisp values into the open
interval, and drives the remaining values to a limit that corresponds to a
complete extension.  Crisp values can only be lost, never created, so the
crisp part stabilises within |S| steps; the limit is read off exactly from
the contraction/expansion pipeline, which `equilibrium_oracle` wraps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .core import Framework
from .functions import MIN, AfnKind, eval_afn
from .oracle import (
    check_valuation,
    is_legal_assignment,
    labelling_to_valuation,
    valuation_to_labelling,
)
from .sequences import cp_pipeline

STATUS_CONVERGED = "converged"
STATUS_CAP_HIT = "iteration_cap_hit"
STATUS_UNRESOLVED = "unresolved_value"

SNAP_TARGETS = (0.0, 0.5, 1.0)


@dataclass(frozen=True)
class GRConfig:
    """Run parameters for the iteration.

    `change_tolerance` is the max absolute per-node change that counts as
    converged; `snap_tolerance` is how close a converged value must be to one
    of 0, 1/2, 1 to be classified as that value.  Snap targets are a half
    apart, so the snap tolerance must stay below 1/4 and the change tolerance
    strictly below the snap tolerance.
    """

    change_tolerance: float = 1e-12
    snap_tolerance: float = 1e-6
    max_iterations: int = 100_000
    record_trajectory: bool = False

    def __post_init__(self):
        if not 0.0 < self.change_tolerance < self.snap_tolerance < 0.25:
            raise ValueError(
                "required: 0 < change_tolerance < snap_tolerance < 1/4, got "
                f"{self.change_tolerance} and {self.snap_tolerance}"
            )
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")


@dataclass
class GRReport:
    """Everything one run produces.

    `settled` is the assignment right after the crisp part stabilised
    (stability at k is confirmed by computing iteration k+1, which is the
    assignment reported).  `equilibrium` carries the snapped limit;
    `raw_equilibrium` the pre-snap floats.  When a converged value sits
    outside every snap window the status names the offending argument and
    that value is left raw.
    """

    stable_index_k: int
    settled: dict[str, float] | None
    equilibrium: dict[str, float]
    raw_equilibrium: dict[str, float]
    iterations_run: int
    status: str
    unresolved_argument: str | None = None
    trajectory: list[dict[str, float]] | None = None


def extension_of(v: Mapping[str, float]) -> frozenset[str]:
    """The arguments a valuation accepts outright (value exactly 1)."""
    return frozenset(x for x, value in v.items() if value == 1.0)


def gr_step(fw: Framework, v: Mapping[str, float], kind: AfnKind = MIN) -> dict[str, float]:
    """One synchronous update of every node from the snapshot v."""
    check_valuation(fw, v)
    return _step_unchecked(fw, v, kind)


def _step_unchecked(fw: Framework, v: Mapping[str, float], kind: AfnKind) -> dict[str, float]:
    out = {}
    for x in fw.arguments:
        a = eval_afn(kind, [1.0 - v[y] for y in fw.attackers(x)])
        value = v[x]
        out[x] = (1.0 - value) * min(0.5, a) + value * max(0.5, a)
    return out


def _crisp_preserved(arguments: Sequence[str], v: Mapping[str, float], nxt: Mapping[str, float]) -> bool:
    return all(nxt[x] == v[x] for x in arguments if v[x] == 0.0 or v[x] == 1.0)


def run_to_stable(
    fw: Framework, v0: Mapping[str, float], kind: AfnKind = MIN
) -> tuple[int, dict[str, float]]:
    """Iterate until the crisp part persists; return (k, assignment at k+1).

    k is the first index at which every node valued exactly 0 or 1 keeps its
    value one step later; k never exceeds |S| because each unstable step
    moves at least one crisp value into the open interval for good.
    """
    check_valuation(fw, v0)
    v = dict(v0)
    for k in range(len(fw) + 1):
        nxt = _step_unchecked(fw, v, kind)
        if _crisp_preserved(fw.arguments, v, nxt):
            return k, nxt
        v = nxt
    raise AssertionError("crisp part did not stabilise within |S| iterations")


def _snap(value: float, tol: float) -> float | None:
    for target in SNAP_TARGETS:
        if abs(value - target) <= tol:
            return target
    return None


def _iterate(
    arguments: Sequence[str],
    step: Callable[[Mapping[str, float]], dict[str, float]],
    v0: Mapping[str, float],
    cfg: GRConfig,
) -> GRReport:
    v = dict(v0)
    trajectory = [dict(v)] if cfg.record_trajectory else None
    stable_k: int | None = None
    settled: dict[str, float] | None = None
    iterations = 0
    converged = False
    while iterations < cfg.max_iterations:
        nxt = step(v)
        iterations += 1
        if stable_k is None and _crisp_preserved(arguments, v, nxt):
            stable_k = iterations - 1
            settled = dict(nxt)
        delta = max((abs(nxt[x] - v[x]) for x in arguments), default=0.0)
        v = nxt
        if trajectory is not None:
            trajectory.append(dict(v))
        # Convergence is only meaningful once the crisp part has stabilised;
        # stability is guaranteed within |S| steps so this never blocks.
        if stable_k is not None and delta < cfg.change_tolerance:
            converged = True
            break

    raw = dict(v)
    status = STATUS_CONVERGED if converged else STATUS_CAP_HIT
    unresolved = None
    equilibrium = {}
    for x in arguments:
        snapped = _snap(raw[x], cfg.snap_tolerance)
        if snapped is None:
            equilibrium[x] = raw[x]
            if converged and unresolved is None:
                status = STATUS_UNRESOLVED
                unresolved = x
        else:
            equilibrium[x] = snapped

    if stable_k is not None and len(arguments) > 0:
        assert stable_k <= len(arguments), "stable index exceeded |S|"
    return GRReport(
        stable_index_k=stable_k if stable_k is not None else -1,
        settled=settled,
        equilibrium=equilibrium,
        raw_equilibrium=raw,
        iterations_run=iterations,
        status=status,
        unresolved_argument=unresolved,
        trajectory=trajectory,
    )


def run_to_equilibrium(
    fw: Framework,
    v0: Mapping[str, float],
    kind: AfnKind = MIN,
    cfg: GRConfig | None = None,
) -> GRReport:
    """Iterate to the limit, then snap each value to the nearest of 0, 1/2, 1.

    For the min function a converged, fully snapped equilibrium is always a
    legal assignment (its accepted set is a complete extension); that is
    asserted before returning.
    """
    check_valuation(fw, v0)
    cfg = cfg or GRConfig()
    report = _iterate(fw.arguments, lambda v: _step_unchecked(fw, v, kind), v0, cfg)
    if report.status == STATUS_CONVERGED and kind == MIN:
        assert is_legal_assignment(fw, report.equilibrium), (
            "converged min equilibrium is not a legal assignment: "
            f"{report.equilibrium}"
        )
    return report


def equilibrium_oracle(fw: Framework, v0: Mapping[str, float]) -> dict[str, float]:
    """The exact limit of the min iteration, computed without iterating.

    Translate the seed to a labelling, contract to the largest admissible
    sub-labelling, expand to the smallest complete super-labelling, translate
    back.  Values are exactly 0, 1/2 or 1.
    """
    check_valuation(fw, v0)
    return labelling_to_valuation(cp_pipeline(fw, valuation_to_labelling(v0)))


# Acceptance-condition networks: each node carries a boolean expression over
# the other nodes instead of the uniform attacker aggregate.


class Condition:
    """Base class for acceptance-condition expression trees."""

    __slots__ = ()


@dataclass(frozen=True)
class TrueCond(Condition):
    pass


@dataclass(frozen=True)
class FalseCond(Condition):
    pass


@dataclass(frozen=True)
class Var(Condition):
    name: str


@dataclass(frozen=True)
class Not(Condition):
    operand: Condition


@dataclass(frozen=True)
class And(Condition):
    operands: tuple[Condition, ...]

    def __init__(self, *operands: Condition):
        object.__setattr__(self, "operands", tuple(operands))


@dataclass(frozen=True)
class Or(Condition):
    operands: tuple[Condition, ...]

    def __init__(self, *operands: Condition):
        object.__setattr__(self, "operands", tuple(operands))


TRUE = TrueCond()
FALSE = FalseCond()


def condition_variables(c: Condition) -> frozenset[str]:
    if isinstance(c, Var):
        return frozenset((c.name,))
    if isinstance(c, Not):
        return condition_variables(c.operand)
    if isinstance(c, (And, Or)):
        out: frozenset[str] = frozenset()
        for sub in c.operands:
            out |= condition_variables(sub)
        return out
    return frozenset()


def eval_condition(c: Condition, v: Mapping[str, float]) -> float:
    """Numeric reading of a condition: and = min, or = max, not x = 1 - x."""
    if isinstance(c, TrueCond):
        return 1.0
    if isinstance(c, FalseCond):
        return 0.0
    if isinstance(c, Var):
        if c.name not in v:
            raise ValueError(f"condition references undeclared variable {c.name!r}")
        return v[c.name]
    if isinstance(c, Not):
        return 1.0 - eval_condition(c.operand, v)
    if isinstance(c, And):
        return min((eval_condition(sub, v) for sub in c.operands), default=1.0)
    if isinstance(c, Or):
        return max((eval_condition(sub, v) for sub in c.operands), default=0.0)
    raise TypeError(f"not a condition: {c!r}")


def adf_run(
    conditions: Mapping[str, Condition],
    v0: Mapping[str, float],
    cfg: GRConfig | None = None,
) -> GRReport:
    """Run the averaging iteration with per-node acceptance conditions.

    Same stepping, convergence and snapping contract as `run_to_equilibrium`,
    with the node aggregate replaced by the condition value.
    """
    cfg = cfg or GRConfig()
    arguments = tuple(v0)
    for x in arguments:
        if x not in conditions:
            raise ValueError(f"no acceptance condition for argument {x!r}")
        for var in condition_variables(conditions[x]):
            if var not in v0:
                raise ValueError(
                    f"condition of {x!r} references undeclared variable {var!r}"
                )
    for x, value in v0.items():
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"value {value!r} for argument {x!r} is outside [0, 1]")

    def step(v: Mapping[str, float]) -> dict[str, float]:
        out = {}
        for x in arguments:
            a = eval_condition(conditions[x], v)
            value = v[x]
            out[x] = (1.0 - value) * min(0.5, a) + value * max(0.5, a)
        return out

    return _iterate(arguments, step, v0, cfg)
