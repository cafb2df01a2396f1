"""Small disjoint-set forest used by the mesh validator and the sweep."""


class UnionFind:
    """Union by size with path halving over arbitrary hashable items."""

    def __init__(self, items=()):
        self._parent = {}
        self._size = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self._parent:
            self._parent[x] = x
            self._size[x] = 1

    def find(self, x):
        parent = self._parent
        if x not in parent:
            self.add(x)
            return x
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return ra

    def groups(self):
        """Return the classes as sorted lists, ordered by their smallest member.

        Items of different types (vertex ids and edge tuples) sort by type name first.
        """
        out = {}
        for x in self._parent:
            out.setdefault(self.find(x), []).append(x)
        key = _mixed_key
        return sorted((sorted(g, key=key) for g in out.values()), key=lambda g: key(g[0]))


def _mixed_key(x):
    return (type(x).__name__, x)
