"""Immutable argumentation frameworks and the pure graph queries used everywhere else.

A framework is a finite directed graph: nodes are named arguments and an edge
(a, b) means "a attacks b".  Self-attacks are legal.  Argument order is the
order of first appearance in the input; every deterministic tie-break in the
package relies on it or on lexicographic name order.
"""

from __future__ import annotations

from typing import Iterable

_FORBIDDEN_CHARS = set("(),")


def check_argument_name(name: str) -> str:
    """Validate an argument identifier.

    Names must be non-empty tokens without whitespace, parentheses or commas
    so that they survive both file formats unescaped.
    """
    if not isinstance(name, str) or not name:
        raise ValueError("argument name must be a non-empty string")
    if any(ch.isspace() or ch in _FORBIDDEN_CHARS for ch in name):
        raise ValueError(
            f"invalid argument name {name!r}: whitespace, parentheses and commas are not allowed"
        )
    return name


class Framework:
    """A finite set of arguments plus a directed attack relation.

    Instances are immutable after construction and safe to share; all queries
    are pure.  Duplicate attacks collapse to one edge, attack endpoints must
    be declared arguments.
    """

    __slots__ = ("arguments", "attacks", "_index", "_attackers", "_targets", "_attack_set")

    def __init__(self, arguments: Iterable[str], attacks: Iterable[tuple[str, str]] = ()):
        names: list[str] = []
        index: dict[str, int] = {}
        for name in arguments:
            check_argument_name(name)
            if name in index:
                raise ValueError(f"duplicate argument declaration: {name!r}")
            index[name] = len(names)
            names.append(name)

        attackers: dict[str, list[str]] = {name: [] for name in names}
        targets: dict[str, list[str]] = {name: [] for name in names}
        edge_list: list[tuple[str, str]] = []
        edge_set: set[tuple[str, str]] = set()
        for source, target in attacks:
            if source not in index:
                raise ValueError(f"attack references undeclared argument: {source!r}")
            if target not in index:
                raise ValueError(f"attack references undeclared argument: {target!r}")
            edge = (source, target)
            if edge in edge_set:
                continue
            edge_set.add(edge)
            edge_list.append(edge)
            attackers[target].append(source)
            targets[source].append(target)

        self.arguments: tuple[str, ...] = tuple(names)
        self.attacks: tuple[tuple[str, str], ...] = tuple(edge_list)
        self._index = index
        self._attackers = {name: tuple(vals) for name, vals in attackers.items()}
        self._targets = {name: tuple(vals) for name, vals in targets.items()}
        self._attack_set = frozenset(edge_set)

    def __len__(self) -> int:
        return len(self.arguments)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Framework):
            return NotImplemented
        return self.arguments == other.arguments and self._attack_set == other._attack_set

    def __hash__(self) -> int:
        return hash((self.arguments, self._attack_set))

    def __repr__(self) -> str:
        return f"Framework(arguments={list(self.arguments)!r}, attacks={list(self.attacks)!r})"

    def _require(self, name: str) -> None:
        if name not in self._index:
            raise ValueError(f"unknown argument: {name!r}")

    def has_attack(self, source: str, target: str) -> bool:
        return (source, target) in self._attack_set

    def attackers(self, x: str) -> tuple[str, ...]:
        """Arguments attacking x, in declaration order (empty for sources)."""
        self._require(x)
        return self._attackers[x]

    def attacked_set(self, e: Iterable[str]) -> set[str]:
        """All arguments attacked by some member of e."""
        out: set[str] = set()
        for x in e:
            self._require(x)
            out.update(self._targets[x])
        return out

    def restrict(self, subset: Iterable[str]) -> "Framework":
        """Induced subframework on `subset`, preserving declaration order."""
        keep = set()
        for x in subset:
            self._require(x)
            keep.add(x)
        args = [a for a in self.arguments if a in keep]
        atts = [(s, t) for (s, t) in self.attacks if s in keep and t in keep]
        return Framework(args, atts)

    def sccs(self) -> list[tuple[str, ...]]:
        """Strongly connected components in condensation order, attackers first.

        If any member of component C attacks a member of a different component
        D, C appears before D.  Members of each component are listed in
        declaration order.  Deterministic for a fixed framework.
        """
        index: dict[str, int] = {}
        low: dict[str, int] = {}
        on_stack: set[str] = set()
        stack: list[str] = []
        components: list[tuple[str, ...]] = []
        counter = 0

        for root in self.arguments:
            if root in index:
                continue
            work: list[list] = [[root, 0]]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                node, ei = work[-1]
                succs = self._targets[node]
                if ei < len(succs):
                    work[-1][1] = ei + 1
                    succ = succs[ei]
                    if succ not in index:
                        index[succ] = low[succ] = counter
                        counter += 1
                        stack.append(succ)
                        on_stack.add(succ)
                        work.append([succ, 0])
                    elif succ in on_stack:
                        if index[succ] < low[node]:
                            low[node] = index[succ]
                    continue
                work.pop()
                if work and low[node] < low[work[-1][0]]:
                    low[work[-1][0]] = low[node]
                if low[node] == index[node]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == node:
                            break
                    comp.sort(key=self._index.__getitem__)
                    components.append(tuple(comp))
        components.reverse()
        return components

    def attack_depth(self, x: str) -> int:
        """Length of the longest attack chain ending at x.

        0 for sources, otherwise 1 + the maximum depth over attackers.
        Raises ValueError if a cycle is reachable backwards from x, in which
        case the depth is undefined.
        """
        self._require(x)
        memo: dict[str, int] = {}
        visiting: set[str] = set()
        work: list[list] = [[x, 0]]
        visiting.add(x)
        while work:
            node, ei = work[-1]
            att = self._attackers[node]
            advanced = False
            while ei < len(att):
                y = att[ei]
                ei += 1
                if y in memo:
                    continue
                if y in visiting:
                    raise ValueError(
                        f"attack depth of {x!r} is undefined: cycle through {y!r}"
                    )
                work[-1][1] = ei
                work.append([y, 0])
                visiting.add(y)
                advanced = True
                break
            if advanced:
                continue
            work.pop()
            visiting.discard(node)
            memo[node] = 1 + max((memo[y] for y in att), default=-1)
        return memo[x]

    def is_acyclic(self) -> bool:
        """True when no directed attack cycle exists."""
        return all(len(comp) == 1 for comp in self.sccs()) and not any(
            self.has_attack(a, a) for a in self.arguments
        )
