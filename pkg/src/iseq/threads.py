"""Regular threads: finite rooted deterministic behaviour graphs.

A thread state either terminates (Stop), is inactive (Dead), or performs an
action and branches on the Boolean reply (Branch).  The internal action tau
always replies true; branches labelled tau are normalized at construction so
that both successors coincide.

Equality of threads is bisimilarity, decided by partition refinement; by the
approximation induction principle this coincides with equality of all finite
projections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .syntax import AbstractAction, BasicInstruction, RegisterAction


class _Tau:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "tau"


TAU = _Tau()

Action = Union[BasicInstruction, _Tau]


@dataclass(frozen=True)
class Stop:
    pass


@dataclass(frozen=True)
class Dead:
    pass


@dataclass(frozen=True)
class Branch:
    action: Action
    on_true: int
    on_false: int


Node = Union[Stop, Dead, Branch]


@dataclass(frozen=True)
class RegularThread:
    nodes: tuple[Node, ...]
    root: int = 0

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("a thread needs at least one state")
        if not 0 <= self.root < len(self.nodes):
            raise ValueError("root state out of range")
        normalized = []
        changed = False
        for node in self.nodes:
            if isinstance(node, Branch):
                if not 0 <= node.on_true < len(self.nodes) or not 0 <= node.on_false < len(self.nodes):
                    raise ValueError("successor state out of range")
                if node.action is TAU and node.on_false != node.on_true:
                    node = Branch(TAU, node.on_true, node.on_true)
                    changed = True
            normalized.append(node)
        if changed:
            object.__setattr__(self, "nodes", tuple(normalized))

    def node(self, index: int) -> Node:
        return self.nodes[index]


STOP = RegularThread((Stop(),))
DEAD = RegularThread((Dead(),))


def prefix_action(action: Action, tail: RegularThread) -> RegularThread:
    """Thread performing ``action`` then continuing as ``tail`` on any reply."""
    return branch(action, tail, tail)


def branch(action: Action, on_true: RegularThread, on_false: RegularThread) -> RegularThread:
    """Postconditional composition of two threads."""
    offset = 1
    nodes: list[Node] = [Branch(action, on_true.root + 1, on_false.root + 1 + len(on_true.nodes))]
    for node in on_true.nodes:
        nodes.append(_shift(node, offset))
    offset += len(on_true.nodes)
    for node in on_false.nodes:
        nodes.append(_shift(node, offset))
    return RegularThread(tuple(nodes), 0)


def _shift(node: Node, offset: int) -> Node:
    if isinstance(node, Branch):
        return Branch(node.action, node.on_true + offset, node.on_false + offset)
    return node


# ---------------------------------------------------------------------------
# bisimilarity by partition refinement


def _signature(node: Node):
    if isinstance(node, Stop):
        return ("stop",)
    if isinstance(node, Dead):
        return ("dead",)
    action = node.action
    key = "tau" if action is TAU else action
    return ("branch", key)


def bisimulation_classes(nodes: Sequence[Node]) -> list[int]:
    """Class index per state; equal class means bisimilar.

    Determinism of threads makes bisimilarity a plain partition refinement:
    start from (kind, action) blocks and split on successor blocks until
    stable.
    """
    classes = []
    table: dict = {}
    for node in nodes:
        key = _signature(node)
        classes.append(table.setdefault(key, len(table)))
    while True:
        table = {}
        refined = []
        for node, cls in zip(nodes, classes):
            if isinstance(node, Branch):
                key = (cls, classes[node.on_true], classes[node.on_false])
            else:
                key = (cls,)
            refined.append(table.setdefault(key, len(table)))
        if refined == classes:
            return classes
        classes = refined


def minimize(t: RegularThread) -> RegularThread:
    """Least-state bisimilar thread with canonical breadth-first numbering."""
    classes = bisimulation_classes(t.nodes)
    representative: dict[int, Node] = {}
    for node, cls in zip(t.nodes, classes):
        representative.setdefault(cls, node)
    order: dict[int, int] = {classes[t.root]: 0}
    queue = [classes[t.root]]
    while queue:
        cls = queue.pop(0)
        node = representative[cls]
        if isinstance(node, Branch):
            for succ in (node.on_true, node.on_false):
                succ_cls = classes[succ]
                if succ_cls not in order:
                    order[succ_cls] = len(order)
                    queue.append(succ_cls)
    nodes: list[Node] = [Stop()] * len(order)
    for cls, idx in order.items():
        node = representative[cls]
        if isinstance(node, Branch):
            node = Branch(node.action, order[classes[node.on_true]], order[classes[node.on_false]])
        nodes[idx] = node
    return RegularThread(tuple(nodes), 0)


def threads_equal(t1: RegularThread, t2: RegularThread) -> bool:
    """Bisimilarity, decided over the disjoint union of the state sets."""
    nodes = list(t1.nodes) + [_shift(n, len(t1.nodes)) for n in t2.nodes]
    classes = bisimulation_classes(nodes)
    return classes[t1.root] == classes[len(t1.nodes) + t2.root]


# ---------------------------------------------------------------------------
# projection


def project(t: RegularThread, depth: int) -> RegularThread:
    """Approximation up to ``depth`` actions; the depth-0 projection is Dead."""
    memo: dict[tuple[int, int], int] = {}
    nodes: list[Node] = []

    def build(state: int, remaining: int) -> int:
        key = (state, remaining)
        if key in memo:
            return memo[key]
        index = len(nodes)
        memo[key] = index
        nodes.append(Dead())  # placeholder; patched below
        node = t.node(state)
        if remaining == 0 or isinstance(node, Dead):
            nodes[index] = Dead()
        elif isinstance(node, Stop):
            nodes[index] = Stop()
        else:
            on_true = build(node.on_true, remaining - 1)
            on_false = build(node.on_false, remaining - 1)
            nodes[index] = Branch(node.action, on_true, on_false)
        return index

    root = build(t.root, depth)
    return RegularThread(tuple(nodes), root)


# ---------------------------------------------------------------------------
# rendering as recursion equations


def action_text(action: Action) -> str:
    if action is TAU:
        return "tau"
    if isinstance(action, (AbstractAction, RegisterAction)):
        return str(action)
    raise TypeError(f"not a thread action: {action!r}")


def render_thread(t: RegularThread) -> str:
    """One recursion equation per reachable branch state.

    Stop and Dead successors are written inline as ``S`` and ``D``; a thread
    that is itself Stop or Dead renders as a single equation.
    """
    root_node = t.node(t.root)
    if isinstance(root_node, Stop):
        return "X0 = S"
    if isinstance(root_node, Dead):
        return "X0 = D"
    numbering: dict[int, int] = {t.root: 0}
    queue = [t.root]
    lines = []
    while queue:
        state = queue.pop(0)
        node = t.node(state)
        assert isinstance(node, Branch)
        refs = []
        for succ in (node.on_true, node.on_false):
            succ_node = t.node(succ)
            if isinstance(succ_node, Stop):
                refs.append("S")
            elif isinstance(succ_node, Dead):
                refs.append("D")
            else:
                if succ not in numbering:
                    numbering[succ] = len(numbering)
                    queue.append(succ)
                refs.append(f"X{numbering[succ]}")
        lines.append((numbering[state], f"X{numbering[state]} = ({refs[0]}) <{action_text(node.action)}> ({refs[1]})"))
    lines.sort()
    return "\n".join(text for _, text in lines)
