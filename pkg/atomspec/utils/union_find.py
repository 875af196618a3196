"""Disjoint-set forest over dense integer ids."""

from typing import Dict, List


class UnionFind:
    """
    Disjoint sets with union by rank and path compression.

    Examples
    --------
    >>> uf = UnionFind(4)
    >>> uf.union(0, 2)
    >>> uf.find(2)
    0
    >>> uf.groups()
    [[0, 2], [1], [3]]
    """

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        """Find the root of x with path compression."""
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        """Merge the classes of x and y."""
        px, py = self.find(x), self.find(y)
        if px == py:
            return
        if self.rank[px] < self.rank[py]:
            px, py = py, px
        self.parent[py] = px
        if self.rank[px] == self.rank[py]:
            self.rank[px] += 1

    def groups(self) -> List[List[int]]:
        """Classes as sorted id lists, ordered by smallest member."""
        classes: Dict[int, List[int]] = {}
        for x in range(len(self.parent)):
            classes.setdefault(self.find(x), []).append(x)
        return sorted(classes.values(), key=lambda members: members[0])
