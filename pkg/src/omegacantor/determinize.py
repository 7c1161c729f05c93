"""Determinization of Büchi automata into min-even parity automata.

The general route is the compact-tree construction: states are trees of
subsets with named nodes, children carrying the runs that revisited the
accepting set.  A step spawns a youngest child under every node that meets
the accepting set, applies the powerset transition, keeps each automaton
state only in the oldest sibling claiming it, prunes empty nodes (a bad
event for the least pruned name), collapses nodes whose label is exactly
covered by their children (a good event for the least such name), and
finally renames surviving nodes monotonically to 1..k.  The step's priority
is min(2e - 1, 2f) over bad e and good f, or the neutral 2n + 1.

A run is accepted when some node is eventually never pruned yet collapses
infinitely often, which the min-even parity condition reads off directly.

Already-deterministic input takes a fast path: accepting states get
priority 0, the rest 1, plus an odd rejecting sink only if some transition
is missing.
"""

from __future__ import annotations

from .dpa import DPA
from .errors import CapacityExceeded, PreconditionError
from .nba import NBA

DEFAULT_MAX_STATES = 1 << 20

# serialized tree node: (name, sorted label tuple, children tuple)
Tree = tuple


def _is_deterministic(a: NBA) -> bool:
    if len(a.initial) > 1:
        return False
    for letter in a.alphabet.letters():
        adj = a.letter_adjacency(letter)
        if any(len(s) > 1 for s in adj):
            return False
    return True


def _determinize_deterministic(a: NBA) -> DPA:
    letters = list(a.alphabet.letters())
    n_letters = len(letters)
    order: list[int] = sorted(a.initial)
    index = {q: i for i, q in enumerate(order)}
    rows: list[list[int]] = []
    sink: int | None = None
    i = 0
    while i < len(order):
        q = order[i]
        row = []
        for letter in letters:
            adj = a.letter_adjacency(letter)[q]
            if adj:
                r = adj[0]
                if r not in index:
                    index[r] = len(order)
                    order.append(r)
                row.append(index[r])
            else:
                if sink is None:
                    sink = -1  # placeholder, fixed after the loop
                row.append(-1)
        rows.append(row)
        i += 1
    priority = [0 if q in a.accepting else 1 for q in order]
    if not order or sink is not None or not a.initial:
        sink_id = len(order)
        priority.append(1)
        rows = [[sink_id if t == -1 else t for t in row] for row in rows]
        rows.append([sink_id] * n_letters)
        initial = index[next(iter(a.initial))] if a.initial else sink_id
        return DPA(a.alphabet, len(order) + 1, tuple(tuple(r) for r in rows), tuple(priority), initial)
    return DPA(
        a.alphabet,
        len(order),
        tuple(tuple(r) for r in rows),
        tuple(priority),
        index[next(iter(a.initial))],
    )


def _serialize(nodes: dict[int, dict], name: int) -> Tree:
    node = nodes[name]
    return (
        name,
        tuple(sorted(node["label"])),
        tuple(_serialize(nodes, c) for c in node["children"]),
    )


def _deserialize(tree: Tree, nodes: dict[int, dict], parent: int | None) -> None:
    name, label, children = tree
    nodes[name] = {"label": set(label), "children": [c[0] for c in children], "parent": parent}
    for c in children:
        _deserialize(c, nodes, name)


def _preorder(nodes: dict[int, dict], root: int) -> list[int]:
    out = []
    stack = [root]
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(reversed(nodes[v]["children"]))
    return out


def _tree_step(
    a: NBA, tree: Tree | None, letter: int, neutral: int
) -> tuple[Tree | None, int]:
    """One transition of the tree construction.  Returns the new tree (None
    for the dead sink) and the priority of the step."""
    if tree is None:
        return None, 1
    nodes: dict[int, dict] = {}
    _deserialize(tree, nodes, None)
    root = tree[0]
    adj = a.letter_adjacency(letter)

    # spawn a youngest child wherever the label meets the accepting set
    next_name = max(nodes) + 1
    for v in _preorder(nodes, root):
        hit = nodes[v]["label"] & a.accepting
        if hit:
            nodes[next_name] = {"label": set(hit), "children": [], "parent": v}
            nodes[v]["children"].append(next_name)
            next_name += 1

    # powerset transition on every label
    for v in nodes:
        label = nodes[v]["label"]
        new = set()
        for q in label:
            new.update(adj[q])
        nodes[v]["label"] = new

    # each state stays only in the oldest sibling that claims it
    def strip(v: int, banned: set) -> None:
        nodes[v]["label"] -= banned
        claimed: set = set()
        for c in list(nodes[v]["children"]):
            strip(c, banned | claimed)
            claimed |= nodes[c]["label"]

    strip(root, set())

    # prune empty nodes; the least pruned name is the bad event
    removed = [v for v in nodes if not nodes[v]["label"]]
    bad = min(removed) if removed else None
    if root in nodes and not nodes[root]["label"]:
        return None, 1
    for v in removed:
        parent = nodes[v]["parent"]
        if parent in nodes:
            nodes[parent]["children"] = [c for c in nodes[parent]["children"] if c != v]
        del nodes[v]

    # collapse nodes exactly covered by their children; least name is good
    good = None
    stack = [root]
    while stack:
        v = stack.pop()
        node = nodes[v]
        if node["children"]:
            union = set()
            for c in node["children"]:
                union |= nodes[c]["label"]
            if union == node["label"]:
                for d in _preorder(nodes, v)[1:]:
                    del nodes[d]
                node["children"] = []
                if good is None or v < good:
                    good = v
                continue
        stack.extend(node["children"])

    if bad is not None and good is not None:
        pri = min(2 * bad - 1, 2 * good)
    elif bad is not None:
        pri = 2 * bad - 1
    elif good is not None:
        pri = 2 * good
    else:
        pri = neutral

    # monotone rename to 1..k
    survivors = sorted(nodes)
    rename = {old: i + 1 for i, old in enumerate(survivors)}
    renamed: dict[int, dict] = {}
    for old, node in nodes.items():
        renamed[rename[old]] = {
            "label": node["label"],
            "children": [rename[c] for c in node["children"]],
            "parent": None if node["parent"] is None else rename[node["parent"]],
        }
    return _serialize(renamed, rename[root]), pri


def determinize(a: NBA, max_states: int = DEFAULT_MAX_STATES) -> DPA:
    """Equivalent min-even parity automaton.

    Raises CapacityExceeded when more than max_states parity states are
    produced.
    """
    if _is_deterministic(a):
        d = _determinize_deterministic(a)
        if d.n_states > max_states:
            raise CapacityExceeded(f"determinization exceeded {max_states} states")
        return d

    neutral = 2 * a.n_states + 1
    letters = list(a.alphabet.letters())

    init_tree: Tree | None
    if a.initial:
        init_tree = (1, tuple(sorted(a.initial)), ())
    else:
        init_tree = None

    # DPA state: (tree, priority of the step that entered it)
    start = (init_tree, 1 if init_tree is None else neutral)
    index: dict[tuple, int] = {start: 0}
    order: list[tuple] = [start]
    rows: list[list[int]] = []
    i = 0
    step_cache: dict[tuple[Tree | None, int], tuple[Tree | None, int]] = {}
    while i < len(order):
        tree, _ = order[i]
        row = []
        for letter in letters:
            key = (tree, letter)
            hit = step_cache.get(key)
            if hit is None:
                hit = _tree_step(a, tree, letter, neutral)
                step_cache[key] = hit
            nxt = hit
            if nxt not in index:
                if len(order) >= max_states:
                    raise CapacityExceeded(
                        f"determinization exceeded {max_states} states"
                    )
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(row)
        i += 1
    priority = tuple(pri for _, pri in order)
    return DPA(a.alphabet, len(order), tuple(tuple(r) for r in rows), priority, 0)
