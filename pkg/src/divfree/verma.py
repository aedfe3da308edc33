"""Truncated generalized Verma modules M(X, beta, M) over G and their quotients.

Z^n = M + Z beta splits G by the beta-level of degrees.  The Verma module is
U(G^-) (x) X as a vector space; a basis vector is a PBW monomial
g_1 g_2 ... g_k x with negative-level generators in non-decreasing order.

Generators are graded basis elements of G, identified by (degree, kind)
where kind indexes ``graded_basis(n, degree)`` (D-part first, t last).  The
order key of a negative generator is (depth, M-coordinates, kind).

Straightening is exact in the full module: a generator acting on a monomial
commutes inward through ``y g rest = g (y rest) + [y, g] rest`` and stops
when it is the smallest factor, reaches X, or dies on X.  Truncation only
decides which monomials are enumerated as the basis of a weight space; terms
landing on weights of the table but on monomials outside it are recorded in
the leakage ledger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from . import lattice
from .jet import GHWResult, JetModule, JetParams, ModuleView, WindowTooSmall, detect_ghw_vectors
from .lie import AlgebraElement, D, bracket, graded_basis, graded_coordinates, inner
from .linalg import Echelon, axpy, nullspace
from .scalars import ONE, ZERO, as_scalar, scalar_from_json, scalar_to_json

__all__ = [
    "CharacterX",
    "Classification",
    "JetRestrictionX",
    "NotUnimodular",
    "QuadraticIrrational",
    "QuotientModule",
    "TriangularData",
    "TruncatedModule",
    "alpha_halfplane",
    "build_verma",
    "classify_truncated",
    "find_between",
    "find_singular_vectors",
    "irreducible_quotient",
    "make_triangular",
    "rank2_bar",
    "rank2_d",
    "triangular_from_orthogonal",
]

SCHEMA_VERSION = 1


class NotUnimodular(ValueError):
    pass


class TriangularData:
    """Z^n = M + Z beta with [m_1 ... m_{n-1} | beta] unimodular."""

    def __init__(self, m_basis, beta):
        beta = lattice.lattice_vector(beta)
        n = len(beta)
        if n < 2:
            raise ValueError("rank must be at least 2")
        m_basis = [lattice.lattice_vector(v) for v in m_basis]
        if len(m_basis) != n - 1 or any(len(v) != n for v in m_basis):
            raise ValueError(f"expected {n - 1} vectors of length {n} spanning M")
        cols = m_basis + [beta]
        P = [[cols[j][i] for j in range(n)] for i in range(n)]
        det = lattice.det(P)
        if det not in (1, -1):
            raise NotUnimodular(f"[M | beta] has determinant {det}, expected +-1")
        self.n = n
        self.m_basis = tuple(m_basis)
        self.beta = beta
        self.det = det
        self._inv = lattice.unimodular_inverse(P)

    def __eq__(self, other):
        return isinstance(other, TriangularData) and (self.m_basis, self.beta) == (other.m_basis, other.beta)

    def __hash__(self):
        return hash((self.m_basis, self.beta))

    def __repr__(self):
        return f"TriangularData(m_basis={list(self.m_basis)}, beta={self.beta})"

    def coords(self, m) -> tuple:
        return lattice.mat_vec(self._inv, m)

    def level(self, m) -> int:
        return self.coords(m)[-1]

    def m_coords(self, m) -> tuple:
        return self.coords(m)[:-1]

    def m_part(self, m) -> tuple:
        lv = self.level(m)
        return tuple(x - lv * b for x, b in zip(m, self.beta))

    def degree(self, mc, level: int) -> tuple:
        out = [level * b for b in self.beta]
        for c, v in zip(mc, self.m_basis):
            if c:
                out = [o + c * x for o, x in zip(out, v)]
        return tuple(out)

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "m_basis": [list(v) for v in self.m_basis], "beta": list(self.beta)}

    @classmethod
    def from_json(cls, data):
        from .io import DescriptorError, check_fields, check_version, expect_int_list

        check_version(data, SCHEMA_VERSION, "triangular")
        check_fields(data, {"schema_version", "m_basis", "beta"}, "triangular")
        beta = expect_int_list(data["beta"], "beta")
        if not isinstance(data["m_basis"], list):
            raise DescriptorError("field 'm_basis': expected a list of integer lists")
        mb = [expect_int_list(v, f"m_basis[{i}]", len(beta)) for i, v in enumerate(data["m_basis"])]
        try:
            return cls(mb, beta)
        except ValueError as exc:
            raise DescriptorError(f"triangular: {exc}") from exc


def make_triangular(m_basis, beta) -> TriangularData:
    return TriangularData(m_basis, beta)


def triangular_from_orthogonal(k) -> TriangularData:
    """M = k-perp, beta with (k|beta) = 1."""
    basis, beta = lattice.orthogonal_complement_basis(k)
    return TriangularData(basis, beta)


# ---- inducing modules -------------------------------------------------------


class CharacterX:
    """One-dimensional G_M-module: d_i acts by weight_i, t^0 by c0, everything else by 0."""

    kind = "Character"

    def __init__(self, weight, c0=ZERO):
        self.weight = tuple(as_scalar(w) for w in weight)
        self.c0 = as_scalar(c0)
        self.n = len(self.weight)

    def basis(self):
        return [0]

    def offset(self, key):
        return (0,) * self.n

    @property
    def base_weight(self):
        return self.weight

    def support_offsets(self):
        return {(0,) * self.n}

    def act(self, deg, x: AlgebraElement, key) -> dict:
        if any(deg):
            return {}
        u = x.d_terms.get(deg)
        val = ZERO
        if u is not None:
            val = inner(u, self.weight)
        a = x.t_terms.get(deg)
        if a:
            val = val + a * self.c0
        return {key: val} if val != 0 else {}

    def to_json(self) -> dict:
        return {"kind": "Character", "weight": [scalar_to_json(w) for w in self.weight], "c0": scalar_to_json(self.c0)}


class JetRestrictionX:
    """X = sum_{m in M} V_{mu+m} inside the jet module V(lambda, alpha, e), mu = alpha + s0.

    Basis keys are (b, M-coordinates); the enumerated basis keeps
    |M-coordinates| <= window, but the action is exact for every key.
    """

    kind = "JetRestriction"

    def __init__(self, params: JetParams, tri: TriangularData, s0=None, window: int = 2):
        self.params = params
        self.tri = tri
        self.n = params.n
        self.s0 = tuple(s0) if s0 is not None else (0,) * self.n
        self.window = window
        self.jet = JetModule(params)

    def basis(self):
        return [(b, mc) for mc in lattice.box(self.n - 1, self.window) for b in range(self.jet.dim)]

    def offset(self, key):
        return self.tri.degree(key[1], 0)

    @property
    def base_weight(self):
        return tuple(a + s for a, s in zip(self.params.alpha, self.s0))

    def support_offsets(self):
        return {self.tri.degree(mc, 0) for mc in lattice.box(self.n - 1, self.window)}

    def act(self, deg, x: AlgebraElement, key) -> dict:
        b, mc = key
        s = lattice.add(self.s0, self.offset(key))
        img = self.jet.block(x, deg, s).apply({b: ONE})
        mc2 = lattice.add(mc, self.tri.m_coords(deg))
        return {(b2, mc2): c for b2, c in img.items()}

    def to_json(self) -> dict:
        from .jet import jet_params_to_json

        mod = jet_params_to_json(self.params)
        mod.pop("schema_version")
        return {"kind": "JetRestriction", "module": mod, "s0": list(self.s0), "window": self.window}


def inducing_from_json(data, tri: TriangularData):
    from .io import DescriptorError, check_fields, expect_int, expect_int_list
    from .jet import jet_params_from_json

    if not isinstance(data, dict) or "kind" not in data:
        raise DescriptorError("inducing: field 'kind' missing")
    if data["kind"] == "Character":
        check_fields(data, {"kind", "weight", "c0"}, "inducing")
        w = data["weight"]
        if not isinstance(w, list) or len(w) != tri.n:
            raise DescriptorError(f"field 'inducing.weight': expected {tri.n} scalars")
        return CharacterX([scalar_from_json(v) for v in w], scalar_from_json(data["c0"]))
    if data["kind"] == "JetRestriction":
        check_fields(data, {"kind", "module", "s0", "window"}, "inducing")
        mod = dict(data["module"])
        mod["schema_version"] = SCHEMA_VERSION
        params = jet_params_from_json(mod)
        if params.n != tri.n:
            raise DescriptorError("field 'inducing.module.n': rank differs from the triangular data")
        s0 = expect_int_list(data["s0"], "inducing.s0", tri.n)
        return JetRestrictionX(params, tri, s0, expect_int(data["window"], "inducing.window", 0))
    raise DescriptorError(f"field 'inducing.kind': unknown kind {data['kind']!r}")


# ---- the truncated Verma module --------------------------------------------


@lru_cache(maxsize=None)
def _basis_elem(n, deg, kind) -> AlgebraElement:
    return graded_basis(n, deg)[kind]


@lru_cache(maxsize=None)
def _bracket_coords(n, d1, k1, d2, k2):
    z = bracket(_basis_elem(n, d1, k1), _basis_elem(n, d2, k2))
    if not z:
        return None, ()
    deg = lattice.add(d1, d2)
    return deg, tuple((k, c) for k, c in enumerate(graded_coordinates(z, deg)) if c != 0)


def element_kinds(x: AlgebraElement):
    """Split x into (degree, kind, coeff) over the graded basis."""
    out = []
    for m in x.degrees():
        for k, c in enumerate(graded_coordinates(x.homogeneous_part(m), m)):
            if c != 0:
                out.append((m, k, c))
    return out


@dataclass
class LeakRecord:
    generator: tuple
    source: tuple
    label: tuple
    term: tuple

    def to_json(self):
        return {
            "generator": [list(self.generator[0]), self.generator[1]],
            "source_label": list(self.source),
            "label": list(self.label),
            "term": repr(self.term),
        }


class TruncatedModule(ModuleView):
    """PBW monomials of total depth <= D with factor M-coordinates bounded by W."""

    kind = "verma"

    def __init__(self, X, tri: TriangularData, depth: int, window: int):
        if depth < 0 or window < 0:
            raise ValueError("depth and window must be non-negative")
        if X.n != tri.n:
            raise ValueError("inducing module and triangular data have different ranks")
        self.X = X
        self.tri = tri
        self.n = tri.n
        self.depth = depth
        self.window = window
        self.leakage: list[LeakRecord] = []
        self.leak_count = 0
        self._leak_seen: set = set()
        self._memo: dict = {}
        self.negative = []
        for r in range(1, depth + 1):
            for mc in lattice.box(self.n - 1, window):
                deg = tri.degree(mc, -r)
                for kind in range(len(graded_basis(self.n, deg))):
                    self.negative.append((r, mc, kind))
        self.negative.sort()
        self.table: dict[tuple, list] = {}
        for word in self._words():
            wdeg = (0,) * self.n
            for g in word:
                wdeg = lattice.add(wdeg, self.okey_degree(g))
            for xk in X.basis():
                lab = lattice.add(wdeg, X.offset(xk))
                self.table.setdefault(lab, []).append((word, xk))
        for lab in self.table:
            self.table[lab].sort()
        self.labels = sorted(self.table, key=lambda m: (-self.tri.level(m), self.tri.m_coords(m)))
        self._keys = {lab: set(keys) for lab, keys in self.table.items()}

    def _words(self):
        out = []
        gens = self.negative

        def rec(start, budget, prefix):
            out.append(tuple(prefix))
            for i in range(start, len(gens)):
                r = gens[i][0]
                if r <= budget:
                    prefix.append(gens[i])
                    rec(i, budget - r, prefix)
                    prefix.pop()

        rec(0, self.depth, [])
        return out

    # -- bookkeeping --

    def okey_degree(self, g):
        r, mc, _ = g
        return self.tri.degree(mc, -r)

    def okey(self, deg, kind):
        return (-self.tri.level(deg), self.tri.m_coords(deg), kind)

    def basis(self, label):
        return self.table.get(tuple(label), [])

    def label_of(self, key):
        word, xk = key
        lab = self.X.offset(xk)
        for g in word:
            lab = lattice.add(lab, self.okey_degree(g))
        return lab

    def level_of(self, label) -> int:
        return self.tri.level(label)

    def multiplicities(self) -> dict:
        return {lab: len(keys) for lab, keys in self.table.items()}

    def generators(self):
        # positive levels reach depth + n so the GHW cone (which starts at level n) is visible
        out = []
        for lv in range(-self.depth, self.depth + self.n + 1):
            for mc in lattice.box(self.n - 1, self.window):
                deg = self.tri.degree(mc, lv)
                for x in graded_basis(self.n, deg):
                    out.append((deg, x))
        return out

    def cone_coords(self, m):
        # basis alpha_i = m_i + beta (i < n), alpha_n = beta: every cone point has positive level
        c = self.tri.coords(m)
        mc, lv = c[:-1], c[-1]
        return tuple(mc) + (lv - sum(mc),)

    # -- straightening --

    def apply_gen(self, deg, kind, word, xk) -> dict:
        key = (deg, kind, word, xk)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        lvl = self.tri.level(deg)
        if not word:
            if lvl > 0:
                out = {}
            elif lvl == 0:
                out = {((), k2): c for k2, c in self.X.act(deg, _basis_elem(self.n, deg, kind), xk).items()}
            else:
                out = {((self.okey(deg, kind),), xk): ONE}
            self._memo[key] = out
            return out
        g1, rest = word[0], word[1:]
        if lvl < 0:
            ok = self.okey(deg, kind)
            if ok <= g1:
                out = {((ok,) + word, xk): ONE}
                self._memo[key] = out
                return out
        out: dict = {}
        gdeg, gkind = self.okey_degree(g1), g1[2]
        for (w2, x2), c in self.apply_gen(deg, kind, rest, xk).items():
            axpy(out, c, self.apply_gen(gdeg, gkind, w2, x2))
        zdeg, coords = _bracket_coords(self.n, deg, kind, gdeg, gkind)
        for k, c in coords:
            axpy(out, c, self.apply_gen(zdeg, k, rest, xk))
        self._memo[key] = out
        return out

    def apply_element(self, x: AlgebraElement, vec: dict) -> dict:
        out: dict = {}
        for deg, kind, c in element_kinds(x):
            for (word, xk), v in vec.items():
                axpy(out, c * v, self.apply_gen(deg, kind, word, xk))
        return out

    def apply(self, x, m, label, vec):
        img = self.apply_element(x, vec)
        self._note_leakage(x, m, label, img)
        return img

    def _note_leakage(self, x, m, label, img):
        tgt = lattice.add(label, m)
        keys = self._keys.get(tgt)
        if keys is None:
            return
        for term in img:
            if term not in keys:
                self.leak_count += 1
                if (tgt, term) not in self._leak_seen:
                    self._leak_seen.add((tgt, term))
                    self.leakage.append(LeakRecord((m, repr(x)), tuple(label), tgt, term))

    def weight_table(self) -> dict:
        return {lab: len(keys) for lab, keys in self.table.items()}

    def base_weight(self):
        return self.X.base_weight

    def action_table(self, generators=None) -> dict:
        """{(generator index, basis key): image} for the window generators."""
        gens = self.generators() if generators is None else generators
        out = {}
        for gi, (m, x) in enumerate(gens):
            for lab, keys in self.table.items():
                for key in keys:
                    out[(gi, key)] = self.apply(x, m, lab, {key: ONE})
        return out


def build_verma(X, tri: TriangularData, depth: int, window: int) -> TruncatedModule:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return TruncatedModule(X, tri, depth, window)


def check_action_law(mod: TruncatedModule, gens=None, keys=None) -> list:
    """x(y v) - y(x v) = [x, y] v for window generator pairs and basis monomials."""
    gens = mod.generators() if gens is None else gens
    if keys is None:
        keys = [k for lab in mod.labels for k in mod.table[lab]]
    bad = []
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            (m, x), (k, y) = gens[a], gens[b]
            z = bracket(x, y)
            for key in keys:
                v = {key: ONE}
                lhs = mod.apply_element(x, mod.apply_element(y, v))
                axpy(lhs, -ONE, mod.apply_element(y, mod.apply_element(x, v)))
                rhs = mod.apply_element(z, v) if z else {}
                if lhs != rhs:
                    bad.append((a, b, key))
    return bad


# ---- singular vectors and the maximal submodule ---------------------------


@dataclass
class SingularReport:
    level: int
    spaces: dict  # label -> list of vectors
    window_limited: bool = True
    window_unreliable: bool = False

    def dims(self) -> dict:
        return {lab: len(v) for lab, v in self.spaces.items()}


def raise_radius(mod: TruncatedModule, level: int) -> int:
    """M-coordinate bound for raising elements applied at the given level.

    A weight at level -l carries monomials whose M-coordinates are bounded by
    l*W plus the inducing window, so raising elements beyond that bound can
    only land on weights further out.  Window-limited by construction.
    """
    return level * mod.window + getattr(mod.X, "window", 0)


def _raising(mod: TruncatedModule, label, max_level: int):
    """Positive-level graded basis elements of level 1..max_level within the raising radius."""
    lv = mod.level_of(label)
    R = raise_radius(mod, max_level)
    out = []
    for step in range(1, max_level + 1):
        for mc in lattice.box(mod.n - 1, R):
            deg = mod.tri.degree(mc, step)
            tgt = lattice.add(label, deg)
            for x in graded_basis(mod.n, deg):
                out.append((deg, x, tgt, lv + step))
    return out


def find_singular_vectors(mod: TruncatedModule, level: int) -> SingularReport:
    """Per weight of the given level, the exact kernel of all raising elements of level 1..level.

    Images are computed exactly in the full module (straightening never
    truncates), so the kernel is exact for the raising set used; the set
    itself is window-limited.
    """
    if not 1 <= level <= mod.depth:
        raise ValueError(f"level must be in 1..{mod.depth}, got {level}")
    before = mod.leak_count
    spaces = {}
    for lab in mod.labels:
        if mod.level_of(lab) != -level:
            continue
        keys = mod.table[lab]
        cols = []
        raising = _raising(mod, lab, level)
        for key in keys:
            col = {}
            for gi, (deg, x, _, _) in enumerate(raising):
                for term, c in mod.apply(x, deg, lab, {key: ONE}).items():
                    col[(gi, term)] = c
            cols.append(col)
        spaces[lab] = [{keys[j]: c for j, c in combo.items()} for combo in nullspace(cols)]
    return SingularReport(level, spaces, True, mod.leak_count > before)


class QuotientModule(ModuleView):
    """M / N where N is the largest in-window submodule meeting X trivially.

    N at level -l consists of vectors v with y.v in N for every raising y of
    level 1..l whose target lies in the table (N is zero on X).  Quotient
    coordinates are the non-pivot monomials after reduction modulo N.
    """

    kind = "verma-quotient"

    def __init__(self, mod: TruncatedModule, N: dict, singular: list, unreliable: bool):
        self.mod = mod
        self.N = N
        self.n = mod.n
        self.tri = mod.tri
        self.labels = list(mod.labels)
        self.singular = singular
        self.window_unreliable = unreliable
        self.unreliable_labels: list = []
        self.closure_violations: list = []
        self._qbasis = {}
        for lab in self.labels:
            piv = set(N[lab].pivots) if lab in N else set()
            self._qbasis[lab] = [k for k in mod.table[lab] if k not in piv]

    @property
    def leakage(self):
        return self.mod.leakage

    def basis(self, label):
        return self._qbasis.get(tuple(label), [])

    def weight_table(self) -> dict:
        return {lab: len(self._qbasis[lab]) for lab in self.labels}

    def generators(self):
        return self.mod.generators()

    def cone_coords(self, m):
        return self.mod.cone_coords(m)

    def reduce(self, label, vec):
        ech = self.N.get(tuple(label))
        return ech.reduce(vec) if ech is not None else dict(vec)

    def apply(self, x, m, label, vec):
        img = self.mod.apply(x, m, label, vec)
        return self.reduce(lattice.add(label, m), img)

    def support_violations(self) -> list:
        """Weights outside P(X) + (mu - N beta + M)."""
        xs = self.mod.X.support_offsets()
        bad = []
        for lab, k in self.weight_table().items():
            if not k:
                continue
            lv = self.tri.level(lab)
            if lv > 0 or (lv == 0 and lab not in xs):
                bad.append(lab)
        return bad


def irreducible_quotient(mod: TruncatedModule) -> QuotientModule:
    before = mod.leak_count
    N: dict = {}
    singular = []
    unreliable: set = set()
    for lv in range(1, mod.depth + 1):
        singular.append(find_singular_vectors(mod, lv))
        for lab in mod.labels:
            if mod.level_of(lab) != -lv:
                continue
            keys = mod.table[lab]
            cols = []
            raising = _raising(mod, lab, lv)
            for key in keys:
                col = {}
                for gi, (deg, x, tgt, tlv) in enumerate(raising):
                    if tlv < 0 and tgt not in N:
                        continue  # target weight outside the table: N unknown there
                    img = mod.apply(x, deg, lab, {key: ONE})
                    if tlv < 0:
                        if any(term not in mod._keys[tgt] for term in img):
                            unreliable.add(lab)
                        img = N[tgt].reduce(img)
                    for term, c in img.items():
                        col[(gi, term)] = c
                cols.append(col)
            ech = Echelon()
            for combo in nullspace(cols):
                ech.add({keys[j]: c for j, c in combo.items()})
            N[lab] = ech
    q = QuotientModule(mod, N, singular, mod.leak_count > before)
    q.unreliable_labels = sorted(unreliable)
    q.closure_violations = _singular_closure_check(mod, N, singular, unreliable)
    return q


def _singular_closure_check(mod, N, singular, skip=frozenset()) -> list:
    """The U(G^-)-span of the singular vectors (inside the table) must lie in N.

    Weights whose N computation met leakage are skipped: there N is only an
    approximation and the containment is not decidable from the window.
    """
    bad = []
    neg = [(mod.okey_degree(g), _basis_elem(mod.n, mod.okey_degree(g), g[2])) for g in mod.negative]
    queue = []
    for rep in singular:
        for lab, vecs in rep.spaces.items():
            queue.extend((lab, v) for v in vecs)
    seen = {}
    while queue:
        lab, v = queue.pop()
        ech = seen.setdefault(lab, Echelon())
        r = ech.reduce(v)
        if not r:
            continue
        ech.add(r)
        if lab in skip:
            continue
        if lab not in N or N[lab].reduce(v):
            bad.append(lab)
            continue
        for deg, x in neg:
            tgt = lattice.add(lab, deg)
            if tgt in mod.table:
                img = mod.apply_element(x, v)
                if all(k in mod._keys[tgt] for k in img):
                    queue.append((tgt, img))
    return bad


# ---- classification ---------------------------------------------------------


class Classification(str, Enum):
    CUSPIDAL = "CuspidalConsistent"
    GHW = "GHW"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class ClassifyResult:
    verdict: Classification
    ghw: GHWResult | None = None
    max_multiplicity: int = 0
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "ghw_k": self.ghw.k if self.ghw else None,
            "ghw_vectors": len(self.ghw.vectors) if self.ghw else 0,
            "max_multiplicity": self.max_multiplicity,
            "window_limited": True,
            "notes": list(self.notes),
        }


def classify_truncated(view: ModuleView, bound: int, kmax: int | None = None) -> ClassifyResult:
    """GHW if some cone scan finds annihilated vectors; CuspidalConsistent if
    multiplicities stay within ``bound`` and none are found; else Inconclusive."""
    labels = list(view.labels)
    if not labels:
        return ClassifyResult(Classification.INCONCLUSIVE, notes=["empty window"])
    mult = {lab: len(view.basis(lab)) for lab in labels}
    top = max(mult.values())
    k = 1
    notes = []
    last = None
    while kmax is None or k <= kmax:
        try:
            res = detect_ghw_vectors(view, k)
        except WindowTooSmall:
            break
        last = res
        if res.vectors:
            if getattr(view, "leakage", None):
                notes.append("leakage ledger is not empty")
            return ClassifyResult(Classification.GHW, res, top, notes)
        k += 1
    if last is None:
        notes.append("window admits no cone scan")
    if top <= bound:
        return ClassifyResult(Classification.CUSPIDAL, last, top, notes)
    return ClassifyResult(Classification.INCONCLUSIVE, last, top, notes)


# ---- rank two helpers -------------------------------------------------------


def rank2_bar(r) -> tuple:
    r = lattice.lattice_vector(r)
    if len(r) != 2:
        raise ValueError("the bar map is defined for n = 2 only")
    return (r[1], -r[0])


def rank2_d(b) -> AlgebraElement:
    """d(b) = D(b-bar, b)."""
    return D(rank2_bar(b), b)


class QuadraticIrrational:
    """alpha = (a + b sqrt(d)) / q with d > 0 not a square, b != 0, q > 0, alpha > 0."""

    def __init__(self, a: int, b: int, d: int, q: int = 1):
        for v in (a, b, d, q):
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError("quadratic irrational parameters must be integers")
        if q <= 0:
            raise ValueError("denominator q must be positive")
        if d <= 0 or math.isqrt(d) ** 2 == d or b == 0:
            raise ValueError("alpha must be irrational: need b != 0 and d > 0 not a perfect square")
        self.a, self.b, self.d, self.q = a, b, d, q
        if _sign_surd(a, b, d) <= 0:
            raise ValueError("alpha must be positive")

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))/{self.q}"

    def sign(self, p: int, s: int) -> int:
        """Exact sign of p*alpha + s."""
        return _sign_surd(p * self.a + s * self.q, p * self.b, self.d)

    def floor_mul(self, r: int) -> int:
        """floor(r * alpha)."""
        x = r * self.b
        if x == 0:
            return (r * self.a) // self.q
        root = math.isqrt(x * x * self.d)
        fl = root if x > 0 else -root - 1  # x*sqrt(d) is irrational
        return (r * self.a + fl) // self.q


def _sign_surd(X: int, Y: int, d: int) -> int:
    """Sign of X + Y sqrt(d), exactly."""
    if Y == 0:
        return (X > 0) - (X < 0)
    if X == 0:
        return (Y > 0) - (Y < 0)
    if (X > 0) == (Y > 0):
        return 1 if X > 0 else -1
    # opposite signs: compare X^2 with Y^2 d
    lhs, rhs = X * X, Y * Y * d
    if lhs == rhs:
        return 0
    bigger_x = lhs > rhs
    return (1 if X > 0 else -1) if bigger_x else (1 if Y > 0 else -1)


def alpha_halfplane(alpha: QuadraticIrrational, radius: int):
    """Split [-radius, radius]^2 minus the origin by the sign of p*alpha + q."""
    plus, minus = [], []
    for p, q in lattice.box(2, radius):
        if (p, q) == (0, 0):
            continue
        sg = alpha.sign(p, q)
        if sg > 0:
            plus.append((p, q))
        elif sg < 0:
            minus.append((p, q))
        else:
            raise AssertionError("p*alpha + q vanished for irrational alpha")
    return plus, minus


def find_between(alpha: QuadraticIrrational, p: int, q: int, max_radius: int = 10_000):
    """(r, s) with (0,0) <_alpha (r, s) <_alpha (p, q), searched by |r| <= max_radius.

    Uses s = -floor(r alpha), so r alpha + s is the fractional part of r alpha.
    """
    if alpha.sign(p, q) <= 0:
        raise ValueError(f"({p}, {q}) is not in the positive half-plane")
    for r in range(1, max_radius + 1):
        for rr in (r, -r):
            s = -alpha.floor_mul(rr)
            if alpha.sign(rr, s) > 0 and alpha.sign(p - rr, q - s) > 0:
                return rr, s
    raise ValueError(f"no point found with |r| <= {max_radius}")
