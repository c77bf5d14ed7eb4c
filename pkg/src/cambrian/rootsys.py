"""Finite-type Cartan data, root systems, and the almost-positive-root dynamics.

Roots are integer coefficient vectors in the simple-root basis, stored as
tuples.  The reflection convention is s_i(alpha_j) = alpha_j - C_ij * alpha_i,
i.e. row i of the Cartan matrix drives the reflection s_i.  All simple-root /
mutation-direction indices in the public API are 1-based, matching the usual
mathematical labelling of Dynkin diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import networkx as nx

from .errors import InputError, InternalError

Root = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class CartanSpec:
    """Dynkin type, Cartan matrix and its minimal symmetrizer."""

    dynkin_type: str
    rank: int
    cartan: Matrix
    symmetrizer: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.rank
        c = self.cartan
        if len(c) != n or any(len(row) != n for row in c):
            raise InputError("Cartan matrix shape does not match rank")
        for i in range(n):
            if c[i][i] != 2:
                raise InputError("Cartan diagonal entries must be 2")
            for j in range(n):
                if i != j:
                    if c[i][j] > 0:
                        raise InputError("off-diagonal Cartan entries must be <= 0")
                    if (c[i][j] == 0) != (c[j][i] == 0):
                        raise InputError("Cartan zero pattern must be symmetric")
        d = self.symmetrizer
        if len(d) != n or any(x <= 0 for x in d):
            raise InputError("symmetrizer must consist of n positive integers")
        for i in range(n):
            for j in range(n):
                if d[i] * c[i][j] != d[j] * c[j][i]:
                    raise InputError("symmetrizer does not symmetrize the Cartan matrix")


@dataclass(frozen=True)
class CoxeterElement:
    """A Coxeter element, given as the order (c_1, ..., c_n) of simple reflections."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.order)
        if sorted(self.order) != list(range(1, n + 1)):
            raise InputError("Coxeter order must be a permutation of 1..n")

    @property
    def rank(self) -> int:
        return len(self.order)

    def inverse(self) -> "CoxeterElement":
        return CoxeterElement(tuple(reversed(self.order)))


def _chain_cartan(n: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        c[i][i + 1] = -1
        c[i + 1][i] = -1
    return c


def _minimal_symmetrizer(c: Matrix) -> tuple[int, ...]:
    # Propagate d_j = d_i * C_ij / C_ji along diagram edges, then clear
    # denominators and common factors per connected component.
    n = len(c)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        component = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and c[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * c[i][j] / c[j][i]
                    component.append(j)
                    stack.append(j)
        denom_lcm = 1
        for j in component:
            q = d[j].denominator
            denom_lcm = denom_lcm * q // gcd(denom_lcm, q)
        nums = []
        for j in component:
            d[j] = d[j] * denom_lcm
            nums.append(int(d[j]))
        g = 0
        for x in nums:
            g = gcd(g, x)
        for j in component:
            d[j] = Fraction(int(d[j]) // g)
    return tuple(int(x) for x in d)


def cartan_matrix(dynkin_type: str, rank: int) -> CartanSpec:
    """Standard Cartan matrix of the given finite type, with minimal symmetrizer."""
    t = dynkin_type.upper()
    if t not in _VALID_RANKS or not _VALID_RANKS[t](rank):
        raise InputError(f"invalid finite type ({dynkin_type}, {rank})")
    n = rank
    if t in ("A", "B", "C", "G", "F"):
        c = _chain_cartan(n)
        if t == "B":
            c[n - 1][n - 2] = -2  # alpha_n short
        elif t == "C":
            c[n - 2][n - 1] = -2  # alpha_n long
        elif t == "G":
            c[1][0] = -3
        elif t == "F":
            c[2][1] = -2  # alpha_3, alpha_4 short
    elif t == "D":
        c = _chain_cartan(n)
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    else:  # E
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
        for a, b in edges:
            c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    cm = tuple(tuple(row) for row in c)
    return CartanSpec(t, n, cm, _minimal_symmetrizer(cm))


def reflection_matrix(spec: CartanSpec, i: int) -> Matrix:
    """Matrix of s_i acting on root coefficient vectors (columns), 1-based i."""
    n = spec.rank
    if not 1 <= i <= n:
        raise InputError(f"reflection index {i} out of range")
    i0 = i - 1
    rows = []
    for r in range(n):
        if r == i0:
            rows.append(tuple((1 if r == j else 0) - spec.cartan[i0][j] for j in range(n)))
        else:
            rows.append(tuple(1 if r == j else 0 for j in range(n)))
    return tuple(rows)


def reflect(spec: CartanSpec, i: int, root: Root) -> Root:
    """Apply the simple reflection s_i to a coefficient vector."""
    i0 = i - 1
    shift = sum(spec.cartan[i0][j] * root[j] for j in range(spec.rank))
    out = list(root)
    out[i0] -= shift
    return tuple(out)


_ROOT_CAP = 10_000


@lru_cache(maxsize=None)
def positive_roots(spec: CartanSpec) -> tuple[Root, ...]:
    """All positive roots, by saturating the simples under simple reflections."""
    n = spec.rank
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen: set[Root] = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(1, n + 1):
                image = reflect(spec, i, root)
                if all(x >= 0 for x in image) and image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
        if len(seen) > _ROOT_CAP:
            raise InternalError("positive root saturation exceeded safety cap")
    return tuple(sorted(seen))


def negative_simple(spec: CartanSpec, i: int) -> Root:
    return tuple(-1 if j == i - 1 else 0 for j in range(spec.rank))


@lru_cache(maxsize=None)
def almost_positive_roots(spec: CartanSpec) -> tuple[Root, ...]:
    negs = [negative_simple(spec, i) for i in range(1, spec.rank + 1)]
    return tuple(sorted(positive_roots(spec) + tuple(negs)))


def is_almost_positive(spec: CartanSpec, root: Root) -> bool:
    return root in set(almost_positive_roots(spec))


def _check_apr(spec: CartanSpec, root: Root) -> None:
    if not is_almost_positive(spec, root):
        raise InputError(f"{root} is not an almost positive root")


def sigma(spec: CartanSpec, i: int, root: Root) -> Root:
    """The involution sigma_i: fixes -alpha_j for j != i, reflects everything else."""
    _check_apr(spec, root)
    if min(root) < 0 and root != negative_simple(spec, i):
        return root
    return reflect(spec, i, root)


def tau(spec: CartanSpec, c: CoxeterElement, root: Root, direction: str = "forward") -> Root:
    """The bijection tau_c = sigma_{c_1} o ... o sigma_{c_n} (or its inverse)."""
    if direction == "forward":
        seq = reversed(c.order)
    elif direction == "inverse":
        seq = iter(c.order)
    else:
        raise InputError(f"unknown direction {direction!r}")
    for i in seq:
        root = sigma(spec, i, root)
    return root


def r_degree(spec: CartanSpec, c: CoxeterElement, root: Root) -> int:
    """Number of inverse tau_c steps needed to reach a negative simple root."""
    _check_apr(spec, root)
    cap = 4 * len(almost_positive_roots(spec))
    for k in range(cap + 1):
        if min(root) < 0:
            return k
        root = tau(spec, c, root, "inverse")
    raise InternalError("tau_c orbit did not reach a negative simple root")


def compatibility_degree(
    spec: CartanSpec, c: CoxeterElement, alpha: Root, beta: Root
) -> int:
    """The c-compatibility degree (alpha ||_c beta)."""
    _check_apr(spec, alpha)
    _check_apr(spec, beta)
    for _ in range(r_degree(spec, c, alpha)):
        alpha = tau(spec, c, alpha, "inverse")
        beta = tau(spec, c, beta, "inverse")
    i0 = alpha.index(-1)
    return max(0, beta[i0])


def is_c_compatible(spec: CartanSpec, c: CoxeterElement, alpha: Root, beta: Root) -> bool:
    return (
        compatibility_degree(spec, c, alpha, beta) == 0
        and compatibility_degree(spec, c, beta, alpha) == 0
    )


@lru_cache(maxsize=None)
def compatibility_graph(spec: CartanSpec, c: CoxeterElement) -> "nx.Graph":
    g = nx.Graph()
    roots = almost_positive_roots(spec)
    g.add_nodes_from(roots)
    for a in range(len(roots)):
        for b in range(a + 1, len(roots)):
            if is_c_compatible(spec, c, roots[a], roots[b]):
                g.add_edge(roots[a], roots[b])
    return g


@lru_cache(maxsize=None)
def enumerate_c_clusters(
    spec: CartanSpec, c: CoxeterElement
) -> tuple[tuple[Root, ...], ...]:
    """All c-clusters, as lexicographically sorted root tuples, in canonical order."""
    n = spec.rank
    clusters = []
    for clique in nx.find_cliques(compatibility_graph(spec, c)):
        if len(clique) != n:
            raise InternalError(
                f"maximal compatible set of size {len(clique)} != rank {n}"
            )
        clusters.append(tuple(sorted(clique)))
    return tuple(sorted(clusters))
