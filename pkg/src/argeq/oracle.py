"""Labelling semantics, legality classification and exhaustive extension enumeration.

This module is the ground truth the rest of the package is checked against.
Labellings are plain dicts mapping argument names to one of the three label
constants; valuations are dicts mapping argument names to floats in [0, 1].
The numeric translation is 1 <-> in, 0 <-> out, anything strictly between
<-> und (und translates back to 1/2).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import Framework
from .errors import OracleCapExceededError

IN = "in"
OUT = "out"
UND = "und"
LABELS = (IN, OUT, UND)

DEFAULT_ORACLE_CAP = 20
ORACLE_CAP_ENV_VAR = "ARGEQ_MAX_ORACLE_ARGS"

SEMANTICS = ("complete", "preferred", "stable", "grounded")


def oracle_cap() -> int:
    """Enumeration size cap; overridable via the ARGEQ_MAX_ORACLE_ARGS variable."""
    raw = os.environ.get(ORACLE_CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ORACLE_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ORACLE_CAP_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{ORACLE_CAP_ENV_VAR} must be positive, got {value}")
    return value


def check_valuation(fw: Framework, v: Mapping[str, float]) -> None:
    """Raise ValueError unless v is total over fw with values in [0, 1]."""
    for x in fw.arguments:
        if x not in v:
            raise ValueError(f"valuation is missing argument {x!r}")
        value = v[x]
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"value {value!r} for argument {x!r} is outside [0, 1]")
    for x in v:
        if x not in fw:
            raise ValueError(f"valuation mentions unknown argument {x!r}")


def check_labelling(fw: Framework, lab: Mapping[str, str]) -> None:
    """Raise ValueError unless lab is total over fw with labels in {in, out, und}."""
    for x in fw.arguments:
        if x not in lab:
            raise ValueError(f"labelling is missing argument {x!r}")
        if lab[x] not in LABELS:
            raise ValueError(f"unknown label {lab[x]!r} for argument {x!r}")
    for x in lab:
        if x not in fw:
            raise ValueError(f"labelling mentions unknown argument {x!r}")


def valuation_to_labelling(v: Mapping[str, float]) -> dict[str, str]:
    """Translate values to labels: 1 -> in, 0 -> out, interior -> und."""
    lab = {}
    for x, value in v.items():
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"value {value!r} for argument {x!r} is outside [0, 1]")
        lab[x] = IN if value == 1.0 else OUT if value == 0.0 else UND
    return lab


def labelling_to_valuation(lab: Mapping[str, str]) -> dict[str, float]:
    """Translate labels to values: in -> 1, out -> 0, und -> 1/2."""
    table = {IN: 1.0, OUT: 0.0, UND: 0.5}
    out = {}
    for x, label in lab.items():
        if label not in table:
            raise ValueError(f"unknown label {label!r} for argument {x!r}")
        out[x] = table[label]
    return out


def in_out_sets(v: Mapping[str, float]) -> tuple[frozenset[str], frozenset[str]]:
    """The arguments valued exactly 1 and exactly 0."""
    ins = frozenset(x for x, value in v.items() if value == 1.0)
    outs = frozenset(x for x, value in v.items() if value == 0.0)
    return ins, outs


def illegal_label_kind(fw: Framework, lab: Mapping[str, str], x: str) -> str | None:
    """Return the label x illegally carries under lab, or None when x is legal.

    An argument is illegally in when some attacker is not out; illegally out
    when no attacker is in; illegally und when all attackers are out or some
    attacker is in.
    """
    label = lab[x]
    att = fw.attackers(x)
    if label == IN:
        if any(lab[y] != OUT for y in att):
            return IN
    elif label == OUT:
        if not any(lab[y] == IN for y in att):
            return OUT
    else:
        if all(lab[y] == OUT for y in att) or any(lab[y] == IN for y in att):
            return UND
    return None


def classify_illegal(
    fw: Framework, lab: Mapping[str, str]
) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    """Partition the illegally labelled arguments by the label they carry.

    The labelling is legal (hence corresponds to a complete extension) iff all
    three returned sets are empty.
    """
    check_labelling(fw, lab)
    bad = {IN: [], OUT: [], UND: []}
    for x in fw.arguments:
        kind = illegal_label_kind(fw, lab, x)
        if kind is not None:
            bad[kind].append(x)
    return frozenset(bad[IN]), frozenset(bad[OUT]), frozenset(bad[UND])


def is_legal_labelling(fw: Framework, lab: Mapping[str, str]) -> bool:
    check_labelling(fw, lab)
    return all(illegal_label_kind(fw, lab, x) is None for x in fw.arguments)


def is_legal_assignment(fw: Framework, v: Mapping[str, float]) -> bool:
    """Numeric legality: crisp values follow the attack rules, interior values
    need an attacker strictly above 0 and none at exactly 1."""
    check_valuation(fw, v)
    for x in fw.arguments:
        value = v[x]
        att = fw.attackers(x)
        if value == 1.0:
            if any(v[y] != 0.0 for y in att):
                return False
        elif value == 0.0:
            if not any(v[y] == 1.0 for y in att):
                return False
        else:
            if any(v[y] == 1.0 for y in att):
                return False
            if not any(v[y] > 0.0 for y in att):
                return False
    return True


@dataclass(frozen=True)
class ExtensionReport:
    """Semantic status flags of one argument set.

    `preferred` is None when the framework exceeds the enumeration cap, since
    maximality can only be decided by enumerating all complete extensions.
    """

    conflict_free: bool
    admissible: bool
    complete: bool
    stable: bool
    preferred: bool | None


def extension_properties(fw: Framework, e: Iterable[str], cap: int | None = None) -> ExtensionReport:
    """Evaluate the acceptability flags of e directly from the definitions."""
    members = set()
    for x in e:
        if x not in fw:
            raise ValueError(f"unknown argument: {x!r}")
        members.add(x)

    conflict_free = not any(fw.has_attack(x, y) for x in members for y in members)
    attacked = fw.attacked_set(members)

    def acceptable(x: str) -> bool:
        return all(y in attacked for y in fw.attackers(x))

    admissible = conflict_free and all(acceptable(x) for x in members)
    complete = admissible and all(x in members for x in fw.arguments if acceptable(x))
    stable = conflict_free and all(x in attacked for x in fw.arguments if x not in members)

    preferred: bool | None
    if not complete:
        preferred = False
    else:
        limit = oracle_cap() if cap is None else cap
        if len(fw) > limit:
            preferred = None
        else:
            completes = enumerate_extensions(fw, "complete", cap=limit)
            preferred = not any(members < set(c) for c in completes)
    return ExtensionReport(conflict_free, admissible, complete, stable, preferred)


def _legal_labellings(fw: Framework) -> list[dict[str, str]]:
    """All legal labellings, via component-wise search.

    Components are processed in condensation order, so when a component is
    assigned every attacker of its nodes already carries a label and illegal
    partial assignments are pruned immediately.  Worst case (one big
    component) is 3^|S|.
    """
    partials: list[dict[str, str]] = [{}]
    for comp in fw.sccs():
        extended: list[dict[str, str]] = []
        for partial in partials:
            for labels in itertools.product(LABELS, repeat=len(comp)):
                cand = dict(partial)
                cand.update(zip(comp, labels))
                if all(illegal_label_kind(fw, cand, x) is None for x in comp):
                    extended.append(cand)
        partials = extended
    return partials


def grounded_extension(fw: Framework) -> frozenset[str]:
    """Least fixed point of the defense operator; the grounded extension."""
    current: set[str] = set()
    while True:
        attacked = fw.attacked_set(current)
        new = {x for x in fw.arguments if all(y in attacked for y in fw.attackers(x))}
        if new == current:
            return frozenset(current)
        current = new


def enumerate_extensions(
    fw: Framework, semantics: str, cap: int | None = None
) -> list[frozenset[str]]:
    """Exhaustively enumerate the extensions under the named semantics.

    Results are duplicate-free and sorted lexicographically by membership.
    Grounded output is additionally cross-checked against the defense-operator
    fixed point, keeping the two computations independent.
    """
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}; expected one of {SEMANTICS}")
    limit = oracle_cap() if cap is None else cap
    if len(fw) > limit:
        raise OracleCapExceededError(
            f"framework has {len(fw)} arguments, enumeration cap is {limit}"
        )

    labellings = _legal_labellings(fw)
    completes = sorted(
        {frozenset(x for x in fw.arguments if lab[x] == IN) for lab in labellings},
        key=lambda ext: tuple(sorted(ext)),
    )
    if semantics == "complete":
        return completes
    if semantics == "preferred":
        return [e for e in completes if not any(e < other for other in completes)]
    if semantics == "stable":
        all_args = set(fw.arguments)
        return [e for e in completes if set(e) | fw.attacked_set(e) == all_args]
    minimal = min(completes, key=len)
    lfp = grounded_extension(fw)
    if lfp != minimal or not all(lfp <= e for e in completes):
        raise AssertionError(
            "grounded oracles disagree: "
            f"defense fixed point {sorted(lfp)} vs enumeration minimum {sorted(minimal)}"
        )
    return [lfp]
