"""Contraction and expansion sequences over labellings.

Contraction repairs illegal crisp labels by relabelling one argument at a
time to und until the crisp part is admissible; the result is the unique
largest admissible labelling below the input (no new in or out labels).
Expansion then grows an admissible labelling to the smallest complete
labelling above it by deciding arguments that are illegally und.  Chaining
the two yields the labelling-theoretic counterpart of the value iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .core import Framework
from .oracle import IN, OUT, UND, check_labelling, illegal_label_kind


@dataclass
class SequenceTrace:
    """One relabelling run: the single-argument steps taken and the endpoint."""

    steps: list[tuple[str, str, str]] = field(default_factory=list)
    final: dict[str, str] = field(default_factory=dict)


def _pick(candidates: list[str], order: str) -> str:
    if order == "lex":
        return min(candidates)
    if order == "reverse":
        return max(candidates)
    raise ValueError(f"unknown tie-break order {order!r}")


def down_admissible(fw: Framework, lab: Mapping[str, str], order: str = "lex") -> SequenceTrace:
    """Contract illegal in/out labels to und, one argument per step.

    The endpoint is independent of the tie-break order; `order` exists so the
    tests can demonstrate that.  Terminates in at most |S| steps.
    """
    check_labelling(fw, lab)
    current = dict(lab)
    trace = SequenceTrace()
    for _ in range(len(fw) + 1):
        candidates = [
            x
            for x in fw.arguments
            if current[x] != UND and illegal_label_kind(fw, current, x) is not None
        ]
        if not candidates:
            trace.final = current
            return trace
        x = _pick(candidates, order)
        trace.steps.append((x, current[x], UND))
        current[x] = UND
    raise AssertionError("contraction did not terminate within |S| steps")


def up_complete(fw: Framework, lab: Mapping[str, str], order: str = "lex") -> SequenceTrace:
    """Expand illegal und labels to in or out until the labelling is complete.

    The input must be admissible (no illegal in or out labels), otherwise a
    ValueError is raised.  An argument whose attackers are all out becomes in;
    one with an in attacker becomes out.  The two conditions are mutually
    exclusive, which is asserted rather than branched around.
    """
    check_labelling(fw, lab)
    for x in fw.arguments:
        kind = illegal_label_kind(fw, lab, x)
        if kind in (IN, OUT):
            raise ValueError(
                f"input labelling is not admissible: {x!r} is illegally labelled {kind}"
            )
    current = dict(lab)
    trace = SequenceTrace()
    for _ in range(len(fw) + 1):
        candidates = [
            x
            for x in fw.arguments
            if current[x] == UND and illegal_label_kind(fw, current, x) == UND
        ]
        if not candidates:
            trace.final = current
            return trace
        x = _pick(candidates, order)
        att = fw.attackers(x)
        all_out = all(current[y] == OUT for y in att)
        some_in = any(current[y] == IN for y in att)
        assert all_out != some_in, f"expansion of {x!r} qualifies for both labels"
        new = IN if all_out else OUT
        trace.steps.append((x, UND, new))
        current[x] = new
    raise AssertionError("expansion did not terminate within |S| steps")


def cp_pipeline(fw: Framework, lab: Mapping[str, str]) -> dict[str, str]:
    """Contract then expand; always lands on a complete labelling."""
    contracted = down_admissible(fw, lab).final
    return up_complete(fw, contracted).final
