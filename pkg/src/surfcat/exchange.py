"""
Exchange graphs of cluster-tilting sets.

A node is a maximal compatible multiset of tagged curves over a fixed
reference triangulation; mutation replaces one member by the unique other
curve compatible with the rest.  Replacements are found on the category
side (vanishing of the symmetrized extension pairing); the independent
census re-derives all nodes from geometric intersection numbers and
serves as the audit of both the mutation rule and connectedness.
"""

import hashlib

from .qp import QPError
from .strings import make_context


class BoundExceeded(RuntimeError):
    pass


class Unsupported(ValueError):
    pass


DEFAULT_MAXLEN = 8


class ClusterNode:
    """A cluster-tilting set: rank-many pairwise compatible tagged curves."""

    def __init__(self, ctx, curves):
        self.ctx = ctx
        self.curves = tuple(sorted(curves, key=lambda c: c.key()))

    def key(self):
        return tuple(c.key() for c in self.curves)

    def validate(self):
        """Pairwise compatibility, recomputed geometrically."""
        from .homalg import intersection_number
        n = len(self.ctx.tagged_arcs())
        if len(self.curves) != n:
            raise QPError("node has %d members, rank is %d"
                          % (len(self.curves), n))
        for a in self.curves:
            for b in self.curves:
                t = intersection_number(self.ctx, a, b).total
                if t != 0:
                    raise QPError("members %s and %s intersect (%d)"
                                  % (a, b, t))

    def __eq__(self, other):
        return isinstance(other, ClusterNode) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ClusterNode(%s)" % "; ".join(str(c) for c in self.curves)


class _Pool:
    """Candidate curves over a context with cached pairwise extension dims."""

    def __init__(self, ctx, maxlen=DEFAULT_MAXLEN):
        from .homalg import ext1_dim
        self.ctx = ctx
        self.curves = [c for c in ctx.curves(maxlen)
                       if ext1_dim(ctx, c, c) == 0]
        self._ext = {}

    def compatible(self, a, b):
        from .homalg import ext1_dim
        k = (a.key(), b.key())
        if k not in self._ext:
            v = ext1_dim(self.ctx, a, b)
            self._ext[k] = v
            self._ext[(b.key(), a.key())] = v
        return self._ext[k] == 0


def seed_node(ctx):
    return ClusterNode(ctx, ctx.tagged_arcs())


def mutate_node(node, k, pool=None):
    """
    Replace the k-th member by the unique other curve compatible with the
    rest, found by vanishing of the extension pairing over the pool.
    """
    ctx = node.ctx
    if pool is None:
        pool = _Pool(ctx)
    x = node.curves[k]
    rest = [c for j, c in enumerate(node.curves) if j != k]
    hits = [y for y in pool.curves
            if y != x and all(pool.compatible(y, r) for r in rest)]
    # members of the node other than x are compatible with everything in
    # `rest` but equal to one of them; drop them
    hits = [y for y in hits if y not in rest]
    if len(hits) != 1:
        raise QPError(
            "expected a unique replacement for %s, found %d (enlarge the "
            "candidate pool?)" % (x, len(hits)))
    return ClusterNode(ctx, rest + hits)


class ExchangeGraph:
    def __init__(self, nodes, edges, complete, seed_key):
        self.nodes = nodes          # key -> ClusterNode, insertion ordered
        self.edges = edges          # set of frozenset({key1, key2})
        self.complete = complete
        self.seed_key = seed_key

    def neighbor_counts(self):
        out = {k: 0 for k in self.nodes}
        for e in self.edges:
            for k in e:
                out[k] += 1
        return out

    def _labels(self, labels):
        out = {}
        for i, (k, node) in enumerate(sorted(self.nodes.items())):
            if labels == "full":
                out[k] = "; ".join(str(c) for c in node.curves)
            else:
                h = hashlib.sha256(repr(k).encode()).hexdigest()[:8]
                out[k] = h
        return out

    def to_dot(self, labels="hash"):
        lab = self._labels(labels)
        lines = ["graph exchange {"]
        for k in sorted(lab):
            lines.append('  "%s";' % lab[k])
        for e in sorted(self.edges, key=lambda e: tuple(sorted(e))):
            k1, k2 = sorted(e)
            lines.append('  "%s" -- "%s";' % (lab[k1], lab[k2]))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self, labels="hash"):
        lab = self._labels(labels)
        lines = ["nodes=%d edges=%d complete=%s"
                 % (len(self.nodes), len(self.edges),
                    "yes" if self.complete else "no")]
        adj = {k: [] for k in self.nodes}
        for e in self.edges:
            k1, k2 = tuple(e)
            adj[k1].append(k2)
            adj[k2].append(k1)
        for k in sorted(lab):
            neigh = " ".join(lab[x] for x in sorted(adj[k], key=lab.get))
            lines.append("%s: %s" % (lab[k], neigh))
        return "\n".join(lines) + "\n"


def explore(seed, bound=None, maxlen=DEFAULT_MAXLEN, strict=False):
    """
    BFS closure of mutate_node from the tagged version of the seed
    triangulation.  Stops at `bound` nodes; the returned graph records
    whether the closure completed.
    """
    ctx = seed if hasattr(seed, "sy") else make_context(seed)
    pool = _Pool(ctx, maxlen)
    start = seed_node(ctx)
    n = len(start.curves)
    nodes = {start.key(): start}
    edges = set()
    queue = [start]
    complete = True
    while queue:
        node = queue.pop(0)
        for k in range(n):
            other = mutate_node(node, k, pool)
            edges.add(frozenset({node.key(), other.key()}))
            if other.key() in nodes:
                continue
            if bound is not None and len(nodes) >= bound:
                complete = False
                if strict:
                    raise BoundExceeded(
                        "exchange graph truncated at %d nodes" % bound)
                continue
            nodes[other.key()] = other
            queue.append(other)
    return ExchangeGraph(nodes, edges, complete, start.key())


def independent_census(seed, maxlen=DEFAULT_MAXLEN):
    """
    All cluster-tilting sets found directly: maximal cliques of the
    geometric compatibility graph (pairwise intersection number zero)
    over the curves up to the word-length bound.
    """
    import networkx as nx
    from .homalg import intersection_number

    ctx = seed if hasattr(seed, "sy") else make_context(seed)
    if ctx.tri.surface.genus != 0:
        raise Unsupported("census only runs on genus-0 surfaces")
    n = len(ctx.tagged_arcs())
    pool = [c for c in ctx.curves(maxlen)
            if intersection_number(ctx, c, c).total == 0]
    g = nx.Graph()
    g.add_nodes_from(range(len(pool)))
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            if intersection_number(ctx, pool[i], pool[j]).total == 0:
                g.add_edge(i, j)
    out = set()
    for clique in nx.find_cliques(g):
        if len(clique) == n:
            out.add(ClusterNode(ctx, [pool[i] for i in clique]))
    return out
