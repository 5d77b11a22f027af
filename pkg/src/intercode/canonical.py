"""Pointer-jumping (canonical form) protocols and edge-set algebra.

A protocol of depth ``n`` over an alphabet of size ``b`` is a complete
``b``-ary tree in which every internal node has one preferred child edge.
Nodes are identified by the string of child labels leading to them from the
root (the root is ``""``).  Nodes at even string length (levels 1, 3, ...)
belong to Alice, the others to Bob.

Edge sets are ``frozenset`` objects of ``(node, label)`` pairs.  They travel
over the channel in the move encoding produced by :func:`encode_edge_set`:

* a label character (``0-9a-z``) descends along that child edge and puts the
  edge into the set,
* ``+`` followed by a label character descends along a child edge *without*
  putting it into the set (needed because a party's own edges hang off
  nodes reached through the counterpart's edges),
* ``^`` climbs back to the parent.

The walk is a preorder depth-first traversal visiting children in label
order and always ends back at the root, so ``{("", 1)}`` encodes as ``"1^"``.
A rooted edge set uses exactly ``2 * len(edges)`` characters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Union

LABELS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_BRANCHING = len(LABELS)
MAX_INTERNAL_NODES = 1 << 20
ROOT = ""
UP = "^"
PASS = "+"

_LABEL_INDEX = {c: i for i, c in enumerate(LABELS)}

Edge = tuple[str, int]
EdgeSet = frozenset
EMPTY: frozenset = frozenset()


def child(node: str, label: int) -> str:
    return node + LABELS[label]


def owner(node: str) -> str:
    """Party owning the preferred edge at ``node`` ("A" or "B")."""
    return "A" if len(node) % 2 == 0 else "B"


def _check_shape(depth: int, branching: int) -> None:
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if not 2 <= branching <= MAX_BRANCHING:
        raise ValueError(f"branching must be in [2, {MAX_BRANCHING}], got {branching}")


def internal_nodes(depth: int, branching: int) -> Iterator[str]:
    """All non-leaf nodes in breadth-first, label order."""
    frontier = [ROOT]
    for _ in range(depth):
        nxt = []
        for node in frontier:
            yield node
            nxt.extend(child(node, c) for c in range(branching))
        frontier = nxt


def leaves(depth: int, branching: int) -> Iterator[str]:
    """All leaves in lexicographic order."""
    def rec(prefix: str, remaining: int) -> Iterator[str]:
        if remaining == 0:
            yield prefix
            return
        for c in range(branching):
            yield from rec(prefix + LABELS[c], remaining - 1)
    return rec(ROOT, depth)


@dataclass(frozen=True)
class PreferredEdges:
    """One party's private input: its preferred edge at every node it owns."""

    party: str
    depth: int
    branching: int
    edges: Mapping[str, int] = field(hash=False)

    def owns(self, node: str) -> bool:
        return len(node) < self.depth and owner(node) == self.party

    def as_edge_set(self) -> frozenset:
        return frozenset(self.edges.items())


@dataclass(frozen=True)
class ProtocolTree:
    depth: int
    branching: int
    preferred: Mapping[str, int] = field(hash=False)

    def __post_init__(self) -> None:
        _check_shape(self.depth, self.branching)
        expected = (self.branching ** self.depth - 1) // (self.branching - 1)
        if len(self.preferred) != expected:
            raise ValueError(f"expected {expected} preferred edges, got {len(self.preferred)}")
        for node, label in self.preferred.items():
            if len(node) >= self.depth or any(ch not in _LABEL_INDEX or _LABEL_INDEX[ch] >= self.branching for ch in node):
                raise ValueError(f"node {node!r} is not an internal node of the tree")
            if not 0 <= label < self.branching:
                raise ValueError(f"label {label} out of range at node {node!r}")

    def side(self, party: str) -> PreferredEdges:
        if party not in ("A", "B"):
            raise ValueError(f"party must be 'A' or 'B', got {party!r}")
        edges = {node: lab for node, lab in self.preferred.items() if owner(node) == party}
        return PreferredEdges(party, self.depth, self.branching, edges)

    @property
    def alice_side(self) -> PreferredEdges:
        return self.side("A")

    @property
    def bob_side(self) -> PreferredEdges:
        return self.side("B")

    @classmethod
    def from_sides(cls, alice: PreferredEdges, bob: PreferredEdges) -> "ProtocolTree":
        return cls(alice.depth, alice.branching, {**alice.edges, **bob.edges})

    def common_path(self) -> tuple[Edge, ...]:
        node, path = ROOT, []
        while len(node) < self.depth:
            label = self.preferred[node]
            path.append((node, label))
            node = child(node, label)
        return tuple(path)

    @property
    def common_leaf(self) -> str:
        node = ROOT
        while len(node) < self.depth:
            node = child(node, self.preferred[node])
        return node

    def to_text(self) -> str:
        lines = [f"# depth {self.depth} branching {self.branching}"]
        lines += [f"{node}:{LABELS[label]}" for node, label in self.preferred.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ProtocolTree":
        """Parse the ``nodepath:label`` fixture format written by :meth:`to_text`."""
        depth = branching = None
        preferred: dict[str, int] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 4 and parts[0] == "depth" and parts[2] == "branching":
                    depth, branching = int(parts[1]), int(parts[3])
                continue
            node, sep, label = line.partition(":")
            if not sep or len(label) != 1 or label not in _LABEL_INDEX:
                raise ValueError(f"malformed fixture line {raw!r}")
            preferred[node] = _LABEL_INDEX[label]
        if depth is None:
            raise ValueError("fixture lacks the '# depth D branching B' header")
        return cls(depth, branching, preferred)


def build_random_protocol(n: int, b: int, seed: int) -> ProtocolTree:
    _check_shape(n, b)
    if (b ** n - 1) // (b - 1) > MAX_INTERNAL_NODES:
        raise ValueError(f"tree with depth {n} and branching {b} is too large")
    rng = random.Random(seed)
    preferred = {node: rng.randrange(b) for node in internal_nodes(n, b)}
    return ProtocolTree(n, b, preferred)


# -- path results -----------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    leaf: str


@dataclass(frozen=True)
class Frontier:
    node: str


class _Invalid:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INVALID"

    def __reduce__(self):
        return (_Invalid, ())


INVALID = _Invalid()
PathResult = Union[Leaf, Frontier, _Invalid]


@dataclass(frozen=True)
class ParseFailure:
    reason: str


# -- edge-set validity --------------------------------------------------------

def is_well_formed(edges: Iterable[Edge], depth: int, branching: int) -> bool:
    """Edges lie inside the tree and no node has two outgoing edges."""
    seen: set[str] = set()
    for node, label in edges:
        if len(node) >= depth or not 0 <= label < branching:
            return False
        if node in seen:
            return False
        seen.add(node)
    return True


def is_rooted(edges: Iterable[Edge]) -> bool:
    edges = list(edges)
    children = {child(node, label) for node, label in edges}
    return all(node == ROOT or node in children for node, _ in edges)


def merge_and_follow(mine: frozenset, received, depth: int, branching: int,
                     max_len: Optional[int] = None) -> PathResult:
    """Union ``mine`` with a received edge set and walk from the root.

    ``received`` may be an edge set, an encoded string, ``None`` (nothing
    heard yet, treated as empty) or anything else (garbage, which is
    ``INVALID``).  The union must be well formed: a node with two outgoing
    edges makes the common path ambiguous, so that is ``INVALID`` too.
    Dangling edges that the walk never reaches are allowed.
    """
    if received is None:
        other = EMPTY
    elif isinstance(received, str):
        other = decode_edge_set(received, depth, branching, max_len)
        if isinstance(other, ParseFailure):
            return INVALID
    elif isinstance(received, frozenset):
        other = received
    else:
        return INVALID
    union = mine | other if other else mine
    nxt: dict[str, int] = {}
    for node, label in union:
        if len(node) >= depth or not 0 <= label < branching or nxt.setdefault(node, label) != label:
            return INVALID
    node = ROOT
    while node in nxt:
        node = child(node, nxt[node])
    return Leaf(node) if len(node) == depth else Frontier(node)


def next_preferred_extension(side: PreferredEdges, frontier: str) -> Optional[Edge]:
    if not side.owns(frontier):
        return None
    return (frontier, side.edges[frontier])


# -- wire format --------------------------------------------------------------

def encode_edge_set(edges: Iterable[Edge]) -> str:
    edges = frozenset(edges)
    if not edges:
        return ""
    members = set(edges)
    kids: dict[str, set[int]] = {}
    for node, label in edges:
        path = child(node, label)
        for i in range(len(path)):
            kids.setdefault(path[:i], set()).add(_LABEL_INDEX[path[i]])
    out: list[str] = []

    def walk(node: str) -> None:
        for label in sorted(kids.get(node, ())):
            if (node, label) in members:
                out.append(LABELS[label])
            else:
                out.append(PASS + LABELS[label])
            walk(child(node, label))
            out.append(UP)

    walk(ROOT)
    return "".join(out)


@lru_cache(maxsize=1 << 16)
def decode_edge_set(text: str, depth: Optional[int] = None, branching: Optional[int] = None,
                    max_len: Optional[int] = None):
    """Inverse of :func:`encode_edge_set`; returns :class:`ParseFailure` on bad input."""
    if not isinstance(text, str):
        return ParseFailure("not a string")
    if max_len is not None and len(text) > max_len:
        return ParseFailure("message exceeds size limit")
    limit = branching if branching is not None else MAX_BRANCHING
    edges: set[Edge] = set()
    visited: set[str] = set()
    node = ROOT
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == UP:
            if node == ROOT:
                return ParseFailure(f"climb above root at offset {i}")
            node = node[:-1]
            i += 1
            continue
        include = True
        if ch == PASS:
            include = False
            i += 1
            if i == len(text):
                return ParseFailure("dangling pass-through move")
            ch = text[i]
        label = _LABEL_INDEX.get(ch)
        if label is None or label >= limit:
            return ParseFailure(f"bad move {ch!r} at offset {i}")
        nxt = child(node, label)
        if nxt in visited:
            return ParseFailure(f"revisited node {nxt!r}")
        if depth is not None and len(nxt) > depth:
            return ParseFailure("walk leaves the tree")
        visited.add(nxt)
        if include:
            edges.add((node, label))
        node = nxt
        i += 1
    if node != ROOT:
        return ParseFailure("walk does not return to the root")
    return frozenset(edges)


def edge_set_from_path(path: str) -> frozenset:
    """Edges along the root-to-``path`` walk."""
    return frozenset((path[:i], _LABEL_INDEX[path[i]]) for i in range(len(path)))


def label_of(ch: str) -> int:
    return _LABEL_INDEX[ch]


__all__ = [
    "EMPTY", "INVALID", "LABELS", "ROOT", "Edge", "EdgeSet", "Frontier", "Leaf",
    "ParseFailure", "PathResult", "PreferredEdges", "ProtocolTree",
    "build_random_protocol", "child", "decode_edge_set", "edge_set_from_path",
    "encode_edge_set", "internal_nodes", "is_rooted", "is_well_formed", "label_of", "leaves",
    "merge_and_follow", "next_preferred_extension", "owner",
]
