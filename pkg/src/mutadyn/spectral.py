"""Spectral structure of nonnegative matrices with constant column sums.

For such a matrix the common column sum ``rho`` is the spectral radius, so
everything attached to ``rho`` can be computed exactly:

* the support digraph (edge ``v -> u`` iff ``M[u, v] > 0``) is condensed
  into strongly connected blocks; listing blocks in topological order puts
  ``M`` in lower block-triangular form;
* the blocks without outgoing edges (maximal classes) are exactly the
  blocks carrying eigenvalue ``rho``;
* each maximal class has one nonnegative right eigenvector supported on
  it, and one nonnegative left eigenvector equal to 1 on it and 0 on the
  other maximal classes, found by back-substitution through the
  non-maximal blocks.

Only the convergence-condition check touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np

from . import exact
from .matrix import SubMatrix

# relative tolerances for the floating-point spectrum
CLUSTER_RTOL = 1e-8
COARSE_CLUSTER_RTOL = 1e-4
RANK_RTOL = 1e-8
BOUNDARY_FACTOR = 10

HOLDS = "holds"
FAILS = "fails"
INDETERMINATE = "numerically-indeterminate"


def _as_fraction_array(matrix) -> np.ndarray:
    if isinstance(matrix, SubMatrix):
        return matrix.entries
    a = np.asarray(matrix, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = Fraction(x)
    return out


@dataclass(frozen=True)
class BlockStructure:
    blocks: tuple[tuple[int, ...], ...]   # topological order
    edges: frozenset                      # (from block, to block) pairs
    maximal: tuple[bool, ...]
    rho: Fraction

    @property
    def maximal_blocks(self) -> list[tuple[int, ...]]:
        return [b for b, flag in zip(self.blocks, self.maximal) if flag]

    @property
    def s(self) -> int:
        return sum(self.maximal)

    def block_of(self) -> dict[int, int]:
        return {i: bi for bi, b in enumerate(self.blocks) for i in b}


def condense(matrix) -> BlockStructure:
    m = _as_fraction_array(matrix)
    n = m.shape[0]
    if any(x < 0 for x in m.flat):
        raise ValueError("matrix has a negative entry")
    sums = {sum(m[:, j], Fraction(0)) for j in range(n)}
    if len(sums) != 1:
        raise ValueError(f"column sums are not constant: {sorted(sums)}")
    rho = sums.pop()

    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from((v, u) for u in range(n) for v in range(n) if u != v and m[u, v] != 0)
    c = nx.condensation(g)
    members = {node: tuple(sorted(data["members"])) for node, data in c.nodes(data=True)}
    order = list(nx.lexicographical_topological_sort(c, key=lambda node: members[node][0]))
    position = {node: i for i, node in enumerate(order)}
    blocks = tuple(members[node] for node in order)
    edges = frozenset((position[a], position[b]) for a, b in c.edges)
    maximal = tuple(c.out_degree(node) == 0 for node in order)
    return BlockStructure(blocks, edges, maximal, rho)


def _sub(m, rows, cols):
    return [[m[r, c] for c in cols] for r in rows]


def right_perron_vectors(matrix, blocks: BlockStructure | None = None) -> list[list[Fraction]]:
    """One probability vector per maximal class, supported on that class."""
    m = _as_fraction_array(matrix)
    if blocks is None:
        blocks = condense(m)
    n = m.shape[0]
    out = []
    for b in blocks.maximal_blocks:
        shifted = _sub(m, b, b)
        for i in range(len(b)):
            shifted[i][i] -= blocks.rho
        basis = exact.nullspace(shifted)
        if len(basis) != 1:
            raise ArithmeticError(
                f"eigenspace of a maximal block {b} has dimension {len(basis)}, expected 1")
        vec = basis[0]
        total = sum(vec)
        r = [Fraction(0)] * n
        for i, x in zip(b, vec):
            r[i] = x / total
        out.append(r)
    return out


def left_absorption_vectors(matrix, blocks: BlockStructure | None = None) -> list[list[Fraction]]:
    """Left eigenvectors for ``rho``: 1 on their own maximal class, 0 on the others.

    Non-maximal blocks are filled from the bottom of the block-triangular
    form upwards: for block ``B_i`` solve ``x (B_i - rho I) = -c`` where
    ``c`` collects what the already-known coordinates contribute.
    """
    m = _as_fraction_array(matrix)
    if blocks is None:
        blocks = condense(m)
    n = m.shape[0]
    rho = blocks.rho
    out = []
    for target in blocks.maximal_blocks:
        ell = [Fraction(0)] * n
        for i in target:
            ell[i] = Fraction(1)
        known = set(target)
        for bi in range(len(blocks.blocks) - 1, -1, -1):
            if blocks.maximal[bi]:
                known.update(blocks.blocks[bi])
                continue
            b = blocks.blocks[bi]
            rhs = [-sum((ell[u] * m[u, v] for u in known if ell[u] and m[u, v]), Fraction(0))
                   for v in b]
            known.update(b)
            if not any(rhs):
                continue
            # transpose: (B_i - rho I)^T x^T = rhs^T
            system = [[m[b[c], b[r]] - (rho if r == c else 0) for c in range(len(b))]
                      for r in range(len(b))]
            try:
                sol = exact.solve(system, rhs)
            except exact.SingularMatrixError:
                raise ArithmeticError(
                    f"block {b} has eigenvalue rho but is not maximal") from None
            for i, x in zip(b, sol):
                ell[i] = x
        out.append(ell)
    return out


def _dot(a, b) -> Fraction:
    return sum((x * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def projections(left_vectors, ct) -> list[Fraction]:
    return [_dot(ell, ct) for ell in left_vectors]


def limiting_expected_frequency(matrix, ct: Sequence, m: int | None = None,
                                blocks: BlockStructure | None = None) -> list[Fraction]:
    """``(1/m) * sum_j <l_j, ct> r_j``: the n -> infinity limit of ``E[fr^(k)]``."""
    mat = _as_fraction_array(matrix)
    ct = [Fraction(c) for c in ct]
    if m is None:
        m = sum(ct)
    if isinstance(matrix, SubMatrix) and m < matrix.k:
        raise ValueError(f"word length {m} is shorter than k={matrix.k}")
    if m <= 0:
        raise ValueError("count vector must have positive mass")
    if blocks is None:
        blocks = condense(mat)
    rights = right_perron_vectors(mat, blocks)
    lefts = left_absorption_vectors(mat, blocks)
    n = mat.shape[0]
    limit = [Fraction(0)] * n
    for alpha, r in zip(projections(lefts, ct), rights):
        for i in range(n):
            limit[i] += alpha * r[i]
    return [x / m for x in limit]


@dataclass(frozen=True)
class EigenCluster:
    value: complex
    algebraic: int
    geometric: int

    @property
    def defective(self) -> bool:
        return self.geometric < self.algebraic


@dataclass(frozen=True)
class ConditionReport:
    s: int
    rho: Fraction
    k: int
    eigenvalues: tuple[complex, ...]
    clusters: tuple[EigenCluster, ...]
    verdict: str
    reasons: tuple[str, ...] = field(default=())

    @property
    def unique_real_max(self) -> bool:
        return self.s == 1

    @property
    def all_simple(self) -> bool:
        return all(c.algebraic == 1 for c in self.clusters)


def _cluster(values: np.ndarray, tol: float) -> list[list[int]]:
    # single linkage on the sorted values; spectra here are small
    order = sorted(range(len(values)), key=lambda i: (values[i].real, values[i].imag))
    groups: list[list[int]] = []
    for i in order:
        for grp in groups:
            if any(abs(values[i] - values[j]) <= tol for j in grp):
                grp.append(i)
                break
        else:
            groups.append([i])
    merged = True
    while merged:
        merged = False
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                if any(abs(values[i] - values[j]) <= tol for i in groups[a] for j in groups[b]):
                    groups[a].extend(groups.pop(b))
                    merged = True
                    break
            if merged:
                break
    return groups


def _nullity(a: np.ndarray) -> int:
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[0] == 0:
        return len(sv)
    return int(np.sum(sv <= RANK_RTOL * sv[0]))


def check_convergence_conditions(matrix, k: int, tau=None,
                                 blocks: BlockStructure | None = None) -> ConditionReport:
    """Check the hypotheses of convergence in probability of ``fr^(k)``.

    (a) ``rho`` must be the unique real eigenvalue of maximum modulus, read
    off exactly as ``s == 1``; (b) every defective eigenvalue must have real
    part below k.  Defectiveness is judged numerically: eigenvalues are
    grouped with a coarse tolerance (a Jordan block of size p is split by
    roughly eps**(1/p) in floating point) and the nullity of ``M - lambda I``
    is compared with the group size.
    """
    mat = _as_fraction_array(matrix)
    if blocks is None:
        blocks = condense(mat)
    rho = blocks.rho
    if tau is not None and Fraction(tau) + k - 1 != rho:
        raise ValueError(f"column sum {rho} differs from tau + k - 1 = {Fraction(tau) + k - 1}")
    a = mat.astype(float)
    n = a.shape[0]
    eig = np.linalg.eigvals(a)
    scale = max(float(rho), float(np.max(np.abs(eig))) if n else 0.0, 1e-300)
    fine_tol = CLUSTER_RTOL * scale
    coarse_tol = COARSE_CLUSTER_RTOL * scale
    boundary = BOUNDARY_FACTOR * fine_tol

    reasons = []
    verdict = HOLDS
    if blocks.s != 1:
        verdict = FAILS
        reasons.append(f"{blocks.s} maximal classes: rho={rho} is not a unique real maximum")

    clusters = []
    for grp in _cluster(eig, coarse_tol):
        value = complex(np.mean(eig[grp]))
        mu_a = len(grp)
        mu_g = _nullity(a - value * np.eye(n)) if mu_a > 1 else 1
        clusters.append(EigenCluster(value, mu_a, mu_g))
        if mu_a == 1:
            continue
        if mu_g >= mu_a:
            continue
        # nullity 0 at the group mean: close but distinct eigenvalues, not a Jordan block
        ambiguous = mu_g == 0
        if value.real < k - boundary:
            continue
        if ambiguous or abs(value.real - k) <= boundary:
            if verdict == HOLDS:
                verdict = INDETERMINATE
            reasons.append(f"cannot decide whether eigenvalue {value:.6g} "
                           f"(mu_a={mu_a}, mu_g={mu_g}) is defective at the Re = k boundary")
        else:
            verdict = FAILS
            reasons.append(f"defective eigenvalue {value:.6g} (mu_a={mu_a}, mu_g={mu_g}) "
                           f"has real part >= k={k}")
    clusters.sort(key=lambda c: (-c.value.real, -c.value.imag))
    eig_sorted = tuple(sorted((complex(x) for x in eig), key=lambda z: (-z.real, -z.imag)))
    return ConditionReport(blocks.s, rho, k, eig_sorted, tuple(clusters), verdict, tuple(reasons))


@dataclass(frozen=True)
class SpectralReport:
    rho: Fraction
    blocks: BlockStructure
    right_vectors: tuple[tuple[Fraction, ...], ...]
    left_vectors: tuple[tuple[Fraction, ...], ...]
    alphas: tuple[Fraction, ...] | None
    limit: tuple[Fraction, ...] | None
    conditions: ConditionReport | None

    @property
    def s(self) -> int:
        return self.blocks.s


def spectral_report(matrix, ct: Sequence | None = None, m: int | None = None,
                    k: int | None = None) -> SpectralReport:
    mat = _as_fraction_array(matrix)
    if k is None and isinstance(matrix, SubMatrix):
        k = matrix.k
    blocks = condense(mat)
    rights = right_perron_vectors(mat, blocks)
    lefts = left_absorption_vectors(mat, blocks)
    alphas = limit = None
    if ct is not None:
        ct = [Fraction(c) for c in ct]
        if m is None:
            m = sum(ct)
        if k is not None and m < k:
            raise ValueError(f"word length {m} is shorter than k={k}")
        alphas = tuple(projections(lefts, ct))
        limit = [Fraction(0)] * mat.shape[0]
        for alpha, r in zip(alphas, rights):
            for i, x in enumerate(r):
                limit[i] += alpha * x
        limit = tuple(x / m for x in limit)
    conditions = check_convergence_conditions(mat, k, blocks=blocks) if k is not None else None
    return SpectralReport(blocks.rho, blocks, tuple(map(tuple, rights)),
                          tuple(map(tuple, lefts)), alphas, limit, conditions)
