"""Finite-dimensional irreducible gl_n-modules V(lambda, c) as exact E_ij tables.

V(lambda) for lambda = sum a_k w_k is the cyclic subspace generated by the
highest-weight vector of  (x) Sym^{a_k}(Lambda^k C^n).  That ambient space
contains the same cyclic subspace as the tensor product of a_k copies of
each fundamental module (the symmetric power is the piece containing the
top vector), but it is small enough to build at weyl_dim ~ 200.

Polynomials in the Plucker-like variables x_S (S a k-subset) carry gl_n by
derivations: E_ij x_S = sign * x_{S - j + i}.  A monomial is a tuple, one
exponent tuple per k, indexed by the sorted k-subsets.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations

from .linalg import Echelon, SparseMatrix, axpy
from .scalars import ONE, ZERO, as_scalar, scalar_from_json, scalar_to_json

__all__ = [
    "Irrep",
    "IrrepTooLarge",
    "build_irrep",
    "fundamental_irrep",
    "matrix_of_rank_one",
    "weights_up_to",
    "weyl_dim",
    "irrep_from_json",
    "irrep_to_json",
]

DEFAULT_CAP = 5000
SCHEMA_VERSION = 1


class IrrepTooLarge(ValueError):
    pass


def _check_marks(lam, n):
    lam = tuple(lam)
    if n < 2:
        raise ValueError("rank n must be at least 2")
    if len(lam) != n - 1:
        raise ValueError(f"expected {n - 1} marks for sl_{n}, got {len(lam)}")
    for a in lam:
        if not isinstance(a, int) or isinstance(a, bool) or a < 0:
            raise ValueError(f"marks must be non-negative integers, got {lam}")
    return lam


def weyl_dim(lam, n: int) -> int:
    """prod over i < j of (sum_{k=i}^{j-1} (a_k + 1)) / (j - i)."""
    lam = _check_marks(lam, n)
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= sum(lam[k] + 1 for k in range(i, j))
            den *= j - i
    return num // den


def weights_up_to(n: int, bound: int) -> list[tuple]:
    """All dominant lambda with weyl_dim(lambda) <= bound (dimension grows in every mark)."""
    out = []

    def rec(prefix):
        if len(prefix) == n - 1:
            out.append(tuple(prefix))
            return
        a = 0
        while True:
            trial = prefix + [a] + [0] * (n - 2 - len(prefix))
            if weyl_dim(trial, n) > bound:
                break
            rec(prefix + [a])
            a += 1

    rec([])
    return out


class Irrep:
    """Exact gl_n-module: ``E[(i, j)]`` is a SparseMatrix (0-based i, j)."""

    def __init__(self, n, lam, c, E, weights, hw_index=0):
        self.n = n
        self.lam = tuple(lam)
        self.c = as_scalar(c)
        self.E = E
        self.weights = weights
        self.hw_index = hw_index

    @property
    def dim(self) -> int:
        return len(self.weights)

    def __repr__(self):
        return f"Irrep(n={self.n}, lambda={self.lam}, c={self.c}, dim={self.dim})"

    def identity_action(self) -> SparseMatrix:
        out = SparseMatrix.zero(self.dim, self.dim)
        for i in range(self.n):
            out.axpy(ONE, self.E[(i, i)])
        return out

    def apply(self, i, j, vec: dict) -> dict:
        return self.E[(i, j)].apply(vec)

    def commutator_violations(self) -> list[tuple]:
        """All (i, j, k, l) where [E_ij, E_kl] != d_jk E_il - d_li E_kj."""
        n = self.n
        bad = []
        prods = {}
        for a in self.E:
            for b in self.E:
                prods[(a, b)] = self.E[a] @ self.E[b]
        for (i, j) in self.E:
            for (k, l) in self.E:
                lhs = prods[((i, j), (k, l))] - prods[((k, l), (i, j))]
                rhs = SparseMatrix.zero(self.dim, self.dim)
                if j == k:
                    rhs.axpy(ONE, self.E[(i, l)])
                if l == i:
                    rhs.axpy(-ONE, self.E[(k, j)])
                if lhs != rhs:
                    bad.append((i, j, k, l))
        return bad


def fundamental_irrep(n: int, k: int, c=None) -> Irrep:
    """Lambda^k C^n; basis = k-subsets in lexicographic order, E_ij by index substitution."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"fundamental index k must satisfy 1 <= k <= {n - 1}, got {k}")
    subsets = list(combinations(range(n), k))
    pos = {S: a for a, S in enumerate(subsets)}
    if c is None:
        c = k
    c = as_scalar(c)
    shift = (c - k) / n
    E = {}
    for i in range(n):
        for j in range(n):
            cols = []
            for S in subsets:
                col = {}
                img = _ext_action(i, j, S)
                if img is not None:
                    sign, T = img
                    col[pos[T]] = ONE * sign
                if i == j and shift != 0:
                    axpy(col, ONE, {pos[S]: shift})
                cols.append(col)
            E[(i, j)] = SparseMatrix(len(subsets), len(subsets), cols)
    weights = [tuple(int(a in S) for a in range(n)) for S in subsets]
    return Irrep(n, tuple(int(a == k - 1) for a in range(n - 1)), c, E, weights, 0)


@lru_cache(maxsize=None)
def _ext_action(i, j, S):
    """E_ij e_S for the wedge basis e_S: None, or (sign, T)."""
    if j not in S:
        return None
    if i == j:
        return 1, S
    if i in S:
        return None
    rest = [a for a in S if a != j]
    T = tuple(sorted(rest + [i]))
    # e_S with e_j replaced in place by e_i, then sorted: sign of that permutation
    seq = [i if a == j else a for a in S]
    inv = sum(1 for x in range(len(seq)) for y in range(x + 1, len(seq)) if seq[x] > seq[y])
    return (-1 if inv % 2 else 1), T


class _Ambient:
    """(x)_k Sym^{a_k}(Lambda^k C^n) with gl_n acting by derivations."""

    def __init__(self, n, lam):
        self.n = n
        self.lam = lam
        self.subsets = [list(combinations(range(n), k + 1)) for k in range(n - 1)]
        self.index = [{S: a for a, S in enumerate(subs)} for subs in self.subsets]
        self._cache: dict = {}

    def top(self):
        # x_{0..k}^{a_k} in every factor
        return tuple(
            tuple(self.lam[k] if a == 0 else 0 for a in range(len(self.subsets[k]))) for k in range(self.n - 1)
        )

    def weight(self, mono):
        w = [0] * self.n
        for k, exps in enumerate(mono):
            for a, e in enumerate(exps):
                if e:
                    for idx in self.subsets[k][a]:
                        w[idx] += e
        return tuple(w)

    def act_mono(self, i, j, mono) -> dict:
        key = (i, j, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        for k, exps in enumerate(mono):
            for a, e in enumerate(exps):
                if not e:
                    continue
                img = _ext_action(i, j, self.subsets[k][a])
                if img is None:
                    continue
                sign, T = img
                b = self.index[k][T]
                new = list(exps)
                new[a] -= 1
                new[b] += 1
                m2 = mono[:k] + (tuple(new),) + mono[k + 1 :]
                out[m2] = out.get(m2, 0) + sign * e
        out = {m: ONE * v for m, v in out.items() if v}
        self._cache[key] = out
        return out

    def act(self, i, j, vec: dict) -> dict:
        out: dict = {}
        for mono, c in vec.items():
            axpy(out, c, self.act_mono(i, j, mono))
        return out


def build_irrep(lam, n: int, c=ZERO, cap: int = DEFAULT_CAP) -> Irrep:
    """V(lambda, c): cyclic span of the top vector under E_{j+1,j}, rank-filtered per weight."""
    lam = _check_marks(lam, n)
    c = as_scalar(c)
    dim = weyl_dim(lam, n)
    if dim > cap:
        raise IrrepTooLarge(f"weyl_dim {dim} exceeds the cap {cap}")
    amb = _Ambient(n, lam)
    top = amb.top()
    basis: list[dict] = [{top: ONE}]
    weights = [amb.weight(top)]
    spaces: dict[tuple, Echelon] = {weights[0]: Echelon(track=True)}
    spaces[weights[0]].add(basis[0])
    members: dict[tuple, list[int]] = {weights[0]: [0]}
    queue = deque([0])
    while queue:
        b = queue.popleft()
        for j in range(n - 1):
            v = amb.act(j + 1, j, basis[b])
            if not v:
                continue
            w = list(weights[b])
            w[j] -= 1
            w[j + 1] += 1
            w = tuple(w)
            ech = spaces.setdefault(w, Echelon(track=True))
            slots = members.setdefault(w, [])
            # slots follows Echelon insertion order, rejected attempts included
            if ech.add(v) is None:
                basis.append(v)
                weights.append(w)
                slots.append(len(basis) - 1)
                queue.append(len(basis) - 1)
            else:
                slots.append(None)
    if len(basis) != dim:
        raise AssertionError(f"cyclic span has dimension {len(basis)}, expected {dim}")
    total = sum((k + 1) * a for k, a in enumerate(lam))
    shift = (c - total) / n
    E = {}
    N = len(basis)
    for i in range(n):
        for j in range(n):
            cols = []
            for b in range(N):
                if i == j:
                    d = weights[b][i] + shift
                    cols.append({b: ONE * d} if d != 0 else {})
                    continue
                v = amb.act(i, j, basis[b])
                if not v:
                    cols.append({})
                    continue
                w = list(weights[b])
                w[i] += 1
                w[j] -= 1
                w = tuple(w)
                combo = spaces[w].express(v)
                idx = members[w]
                cols.append({idx[t]: x for t, x in combo.items() if x != 0})
            E[(i, j)] = SparseMatrix(N, N, cols)
    return Irrep(n, lam, c, E, weights, 0)


def matrix_of_rank_one(r, u, irrep: Irrep) -> SparseMatrix:
    """sum_{i,j} r_i u_j E_ij, the action of the matrix r u^T."""
    out = SparseMatrix.zero(irrep.dim, irrep.dim)
    for i, ri in enumerate(r):
        if not ri:
            continue
        for j, uj in enumerate(u):
            if uj:
                out.axpy(ri * uj, irrep.E[(i, j)])
    return out


def irrep_to_json(irrep: Irrep) -> dict:
    mats = []
    for (i, j), M in sorted(irrep.E.items()):
        mats.append(
            {"i": i + 1, "j": j + 1, "matrix": [[scalar_to_json(ONE * x) for x in row] for row in M.to_dense()]}
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "n": irrep.n,
        "lambda": list(irrep.lam),
        "c": scalar_to_json(irrep.c),
        "dim": irrep.dim,
        "weights": [list(w) for w in irrep.weights],
        "E": mats,
    }


def irrep_from_json(data: dict) -> Irrep:
    from .io import DescriptorError, check_fields, check_version, expect_int, expect_int_list

    check_version(data, SCHEMA_VERSION, "irrep")
    check_fields(data, {"schema_version", "n", "lambda", "c", "dim", "weights", "E"}, "irrep")
    n = expect_int(data["n"], "n", 2)
    lam = expect_int_list(data["lambda"], "lambda", n - 1)
    dim = expect_int(data["dim"], "dim", 1)
    weights = [expect_int_list(w, f"weights[{a}]", n) for a, w in enumerate(data["weights"])]
    if len(weights) != dim:
        raise DescriptorError("field 'weights': length does not match 'dim'")
    E = {}
    for a, entry in enumerate(data["E"]):
        check_fields(entry, {"i", "j", "matrix"}, f"E[{a}]")
        i = expect_int(entry["i"], f"E[{a}].i", 1) - 1
        j = expect_int(entry["j"], f"E[{a}].j", 1) - 1
        rows = entry["matrix"]
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise DescriptorError(f"field 'E[{a}].matrix': expected a {dim}x{dim} matrix")
        E[(i, j)] = SparseMatrix.from_dense([[scalar_from_json(x) for x in r] for r in rows])
    if set(E) != {(i, j) for i in range(n) for j in range(n)}:
        raise DescriptorError("field 'E': expected one matrix for every pair (i, j)")
    return Irrep(n, lam, scalar_from_json(data["c"]), E, weights, 0)
