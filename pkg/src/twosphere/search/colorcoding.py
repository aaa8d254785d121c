"""Colour-coding dynamic programme over a tree decomposition of the pattern.

One call handles one trial colouring.  The host skeleton's vertices carry a
random label; we look for a dimension-preserving subgraph embedding of the
pattern whose images have pairwise distinct labels on the *rainbow*
dimensions.  States at a bag are ``(images of the bag vertices, set of labels
used in the subtree)``; one witness is kept per state.

For skeletons of simplicial complexes it suffices to make the dimension-0
vertices rainbow: a simplex vertex is adjacent to exactly its own corners, so
an embedding that is injective on corners is injective everywhere.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence

from .subdivision import ColoredSkeleton
from .treedecomp import TreeDecomposition

ALL_DIMS = (0, 1, 2)


def _rooted_children(td: TreeDecomposition, root: int = 0):
    adj = td.neighbours()
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    children = {x: [] for x in order}
    for x in order[1:]:
        children[parent[x]].append(x)
    return order, children


def _unwind(w) -> Dict[int, int]:
    out = {}
    stack = [w]
    while stack:
        node = stack.pop()
        if node is None:
            continue
        if node[0] == "i":
            _, v, h, prev = node
            out[v] = h
            stack.append(prev)
        else:
            stack.append(node[1])
            stack.append(node[2])
    return out


class _DP:
    def __init__(self, host: ColoredSkeleton, pattern: ColoredSkeleton,
                 coloring: Sequence[int], rainbow_dims: Iterable[int]):
        self.host = host
        self.pattern = pattern
        self.coloring = coloring
        rd = set(rainbow_dims)
        self.rainbow = [c in rd for c in pattern.colors]
        self.host_by_color = [host.by_color(c) for c in range(3)]
        self.pdeg = [len(a) for a in pattern.adjacency]
        self.hdeg = [len(a) for a in host.adjacency]

    def bag_mask(self, bag, imgs):
        m = 0
        for v, h in zip(bag, imgs):
            if self.rainbow[v]:
                m |= 1 << self.coloring[h]
        return m

    def introduce(self, table, bag, v):
        pat, host = self.pattern, self.host
        pos = [i for i, u in enumerate(bag) if u in pat.adjacency[v]]
        new_bag = tuple(sorted(bag + (v,)))
        at = new_bag.index(v)
        color = pat.colors[v]
        need = self.pdeg[v]
        rb = self.rainbow[v]
        lab = self.coloring
        out = {}
        for (imgs, mask), w in table.items():
            if pos:
                first = host.adjacency[imgs[pos[0]]]
                cands = [h for h in first
                         if all(h in host.adjacency[imgs[p]] for p in pos[1:])]
            else:
                cands = self.host_by_color[color]
            for h in cands:
                if host.colors[h] != color or self.hdeg[h] < need or h in imgs:
                    continue
                m = mask
                if rb:
                    bit = 1 << lab[h]
                    if m & bit:
                        continue
                    m |= bit
                key = (imgs[:at] + (h,) + imgs[at:], m)
                if key not in out:
                    out[key] = ("i", v, h, w)
        return new_bag, out

    @staticmethod
    def forget(table, bag, v):
        at = bag.index(v)
        out = {}
        for (imgs, mask), w in table.items():
            key = (imgs[:at] + imgs[at + 1:], mask)
            if key not in out:
                out[key] = w
        return bag[:at] + bag[at + 1:], out

    def join(self, t1, t2, bag):
        idx: Dict[tuple, list] = {}
        for (imgs, m), w in t2.items():
            idx.setdefault(imgs, []).append((m, w))
        out = {}
        for (imgs, m1), w1 in t1.items():
            partners = idx.get(imgs)
            if not partners:
                continue
            bm = self.bag_mask(bag, imgs)
            for m2, w2 in partners:
                if m1 & m2 == bm:
                    key = (imgs, m1 | m2)
                    if key not in out:
                        out[key] = ("j", w1, w2)
        return out

    def run(self, td: TreeDecomposition):
        order, children = _rooted_children(td)
        tables = {}
        for x in reversed(order):
            target = tuple(sorted(td.bags[x]))
            results = []
            kids = children[x] or [None]
            for c in kids:
                if c is None:
                    bag, table = (), {((), 0): None}
                else:
                    bag, table = tables.pop(c)
                for v in [u for u in bag if u not in td.bags[x]]:
                    bag, table = self.forget(table, bag, v)
                for v in target:
                    if v not in bag:
                        bag, table = self.introduce(table, bag, v)
                if not table:
                    return None
                results.append(table)
            table = results[0]
            for other in results[1:]:
                table = self.join(table, other, target)
                if not table:
                    return None
            tables[x] = (target, table)
        _, root_table = tables[order[0]]
        if not root_table:
            return None
        return _unwind(next(iter(root_table.values())))


def is_embedding(host: ColoredSkeleton, pattern: ColoredSkeleton, phi: Dict[int, int],
                 coloring: Optional[Sequence[int]] = None,
                 rainbow_dims: Iterable[int] = ALL_DIMS) -> bool:
    """Check injective, colour-preserving, edge-preserving (and rainbow)."""
    if len(phi) != len(pattern) or len(set(phi.values())) != len(phi):
        return False
    for v, h in phi.items():
        if pattern.colors[v] != host.colors[h]:
            return False
    for a, b in pattern.edges:
        if phi[b] not in host.adjacency[phi[a]]:
            return False
    if coloring is not None:
        rd = set(rainbow_dims)
        labels = [coloring[h] for v, h in phi.items() if pattern.colors[v] in rd]
        if len(set(labels)) != len(labels):
            return False
    return True


def colorful_match_once(host: ColoredSkeleton, pattern: ColoredSkeleton,
                        trial_coloring: Sequence[int], td: TreeDecomposition,
                        rainbow_dims: Iterable[int] = ALL_DIMS) -> Optional[Dict[int, int]]:
    """Find a rainbow, dimension-preserving embedding of ``pattern`` in ``host``.

    ``trial_coloring[h]`` is the label of host vertex ``h``; only labels of
    host vertices whose dimension is in ``rainbow_dims`` are consulted.
    ``td`` must be a tree decomposition of ``pattern``.  Returns a map
    pattern vertex -> host vertex, or None when no rainbow embedding exists
    under this colouring.
    """
    rainbow_dims = tuple(rainbow_dims)
    if len(pattern) == 0:
        return {}
    phi = _DP(host, pattern, trial_coloring, rainbow_dims).run(td)
    if phi is None:
        return None
    if not is_embedding(host, pattern, phi, trial_coloring, rainbow_dims):
        raise AssertionError("colour-coding DP produced an invalid embedding")
    return phi


def rainbow_label_count(pattern: ColoredSkeleton, rainbow_dims: Iterable[int] = ALL_DIMS) -> int:
    rd = set(rainbow_dims)
    return sum(1 for c in pattern.colors if c in rd)


def random_coloring(host: ColoredSkeleton, labels: int, rng) -> List[int]:
    return [int(x) for x in rng.integers(0, labels, size=len(host))]
