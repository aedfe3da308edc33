"""Tensor (jet) modules V(lambda) (x) C[t^{+-1}] t^alpha over W_n x| A_n and G.

The action on v (x) t^s is

    D(u, r)(v (x) t^s) = (u|s + alpha) v (x) t^{r+s} + ((r u^T).v) (x) t^{r+s},
    t^r (v (x) t^s)    = e v (x) t^{r+s},

with r u^T acting through the gl_n table of V(lambda, c).  A vector of the
module is a dict {(b, s): coeff} where b indexes the irrep basis.

Window checks certify identities only on the declared window; every report
says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from . import lattice
from .irreps import Irrep, build_irrep
from .lie import AlgebraElement, RankMismatch, bracket, d, graded_basis, inner, t
from .linalg import Echelon, SparseMatrix, axpy, nullspace
from .parallel import fan_out
from .scalars import ONE, ZERO, as_scalar, imag_part, real_part, scalar_from_json, scalar_to_json

__all__ = [
    "CheckReport",
    "GHWResult",
    "Irreducibility",
    "JetModule",
    "JetParams",
    "JetWindow",
    "WeightSupport",
    "WindowTooSmall",
    "act",
    "act_dij_display",
    "check_associativity",
    "check_module_axiom",
    "cyclic_span_window",
    "detect_ghw_vectors",
    "is_irreducible",
    "jet_params_from_json",
    "jet_params_to_json",
    "weight_support",
]

SCHEMA_VERSION = 1


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class JetParams:
    lam: tuple
    c: object
    alpha: tuple
    e: object

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "alpha", tuple(as_scalar(a) for a in self.alpha))
        object.__setattr__(self, "c", as_scalar(self.c))
        object.__setattr__(self, "e", as_scalar(self.e))
        if len(self.alpha) < 2:
            raise ValueError("alpha must have length n >= 2")
        if len(self.lam) != len(self.alpha) - 1:
            raise ValueError(f"lambda needs {len(self.alpha) - 1} marks for n = {len(self.alpha)}")

    @property
    def n(self) -> int:
        return len(self.alpha)


@dataclass
class CheckReport:
    check: str
    checked: int = 0
    violations: list = field(default_factory=list)
    window_limited: bool = True
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "status": "pass" if self.ok else "fail",
            "checked": self.checked,
            "witness": self.violations,
            "window_limited": self.window_limited,
            "notes": list(self.notes),
        }


class JetModule:
    """V(lambda, c) (x) C[t^{+-1}] t^alpha with A_n acting by e."""

    def __init__(self, params: JetParams, irrep: Irrep | None = None):
        self.params = params
        if irrep is None:
            irrep = build_irrep(params.lam, params.n, params.c)
        if irrep.n != params.n or irrep.lam != params.lam or irrep.c != params.c:
            raise ValueError("irrep does not match the module parameters")
        self.irrep = irrep
        self._mcache: dict = {}

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def dim(self) -> int:
        return self.irrep.dim

    def matrix_part(self, r, u) -> SparseMatrix:
        key = (tuple(r), tuple(u))
        M = self._mcache.get(key)
        if M is None:
            from .irreps import matrix_of_rank_one

            M = matrix_of_rank_one(r, u, self.irrep)
            self._mcache[key] = M
        return M

    def scalar_part(self, u, a, s):
        alpha = self.params.alpha
        val = ZERO
        if u is not None:
            val = inner(u, [si + ai for si, ai in zip(s, alpha)])
        if a:
            val = val + self.params.e * a
        return val

    def block(self, x: AlgebraElement, m, s) -> SparseMatrix:
        """Matrix of the degree-m part of x from the slice t^s to the slice t^{s+m}."""
        u = x.d_terms.get(m)
        a = x.t_terms.get(m)
        sc = self.scalar_part(u, a, s)
        out = SparseMatrix.identity(self.dim, sc)
        if u is not None:
            out.axpy(ONE, self.matrix_part(m, u))
        return out

    def act(self, x: AlgebraElement, w: dict) -> dict:
        if x.n != self.n:
            raise RankMismatch(f"element of rank {x.n} acting on a rank-{self.n} module")
        out: dict = {}
        slices: dict = {}
        for (b, s), c in w.items():
            slices.setdefault(s, {})[b] = c
        for m in x.degrees():
            for s, vec in slices.items():
                img = self.block(x, m, s).apply(vec)
                tgt = lattice.add(m, s)
                for b, c in img.items():
                    axpy(out, c, {(b, tgt): ONE})
        return out


def act(x: AlgebraElement, w: dict, params: JetParams, irrep: Irrep | None = None, mode: str = "G") -> dict:
    """Action of x on a jet vector {(b, s): coeff}.

    mode "G" requires x in D_n x| A_n; mode "W" accepts any element of W_n x| A_n.
    """
    if x.n != params.n:
        raise RankMismatch(f"element of rank {x.n} vs parameters of rank {params.n}")
    if mode == "G" and not x.in_extended():
        raise ValueError("element is not divergence-zero; use mode='W' for the Witt action")
    return JetModule(params, irrep).act(x, w)


def act_dij_display(module: JetModule, i: int, j: int, r, w: dict) -> dict:
    """D_ij(r) via the specialized divergence-zero formula (indices 1-based).

    scalar (r_j(s_i + alpha_i) - r_i(s_j + alpha_j)), matrix
    r_j sum_k r_k E_ki - r_i sum_k r_k E_kj.
    """
    r = lattice.lattice_vector(r)
    i0, j0 = i - 1, j - 1
    alpha = module.params.alpha
    E = module.irrep.E
    M = SparseMatrix.zero(module.dim, module.dim)
    for k in range(module.n):
        if r[k]:
            M.axpy(r[j0] * r[k], E[(k, i0)])
            M.axpy(-r[i0] * r[k], E[(k, j0)])
    out: dict = {}
    for (b, s), c in w.items():
        sc = r[j0] * (s[i0] + alpha[i0]) - r[i0] * (s[j0] + alpha[j0])
        img = M.apply({b: c})
        if sc != 0:
            axpy(img, sc * c, {b: ONE})
        tgt = lattice.add(r, s)
        for b2, v in img.items():
            axpy(out, v, {(b2, tgt): ONE})
    return out


def _window_basis(n, radius, algebra):
    out = []
    for m in lattice.box(n, radius):
        if algebra == "Extended":
            out.extend((m, x) for x in graded_basis(n, m))
        elif algebra == "WittA":
            out.extend((m, x) for x in graded_basis(n, m, "Witt"))
            out.append((m, t(m)))
        else:
            raise ValueError(f"unknown algebra {algebra!r}")
    return out


class _AxiomWorker:
    # picklable closure for the process pool
    def __init__(self, module, basis, slices):
        self.module = module
        self.basis = basis
        self.slices = slices

    def __call__(self, pairs):
        mod = self.module
        bad = []
        for a, b in pairs:
            m, x = self.basis[a]
            k, y = self.basis[b]
            z = bracket(x, y)
            g = lattice.add(m, k)
            for s in self.slices:
                lhs = mod.block(z, g, s) if z else SparseMatrix.zero(mod.dim, mod.dim)
                rhs = mod.block(x, m, lattice.add(s, k)) @ mod.block(y, k, s)
                rhs = rhs - mod.block(y, k, lattice.add(s, m)) @ mod.block(x, m, s)
                if lhs != rhs:
                    bad.append({"x": a, "y": b, "s": list(s)})
        return bad


def check_module_axiom(params: JetParams, irrep: Irrep | None = None, window: int = 1,
                       algebra: str = "Extended", jobs: int | None = 1) -> CheckReport:
    """act([x,y], w) = x(y w) - y(x w) for all window basis pairs and slices.

    Each slice t^s is checked on all of V(lambda) at once: the action of a
    homogeneous element maps the slice t^s to t^{s+m} by a dim x dim block,
    so the identity is a block identity.  Pairs are unordered; x = y is
    trivially 0 = 0.
    """
    module = JetModule(params, irrep)
    basis = _window_basis(params.n, window, algebra)
    slices = lattice.box(params.n, window)
    pairs = [(a, b) for a in range(len(basis)) for b in range(a + 1, len(basis))]
    worker = _AxiomWorker(module, basis, slices)
    bad = fan_out(worker, pairs, jobs)
    bad.sort(key=lambda v: (v["x"], v["y"], v["s"]))
    rep = CheckReport("module_axiom", checked=len(pairs) * len(slices) * module.dim)
    for v in bad:
        x = basis[v["x"]][1]
        y = basis[v["y"]][1]
        rep.violations.append({"x": repr(x), "y": repr(y), "s": v["s"]})
    return rep


def check_associativity(params: JetParams, irrep: Irrep | None = None, window: int = 1) -> CheckReport:
    """t^r (t^s w) = e t^{r+s} w on all window r, s and basis vectors."""
    module = JetModule(params, irrep)
    n = params.n
    pts = lattice.box(n, window)
    rep = CheckReport("associativity")
    e = params.e
    for r in pts:
        tr = t(r)
        for s in pts:
            ts = t(s)
            trs = t(lattice.add(r, s))
            for q in pts:
                for b in range(module.dim):
                    w = {(b, q): ONE}
                    lhs = module.act(tr, module.act(ts, w))
                    rhs = {k: e * v for k, v in module.act(trs, w).items()}
                    rep.checked += 1
                    if lhs != rhs:
                        rep.violations.append({"r": list(r), "s": list(s), "b": b, "q": list(q)})
    return rep


class Irreducibility(str, Enum):
    IRREDUCIBLE = "Irreducible"
    REDUCIBLE = "Reducible"
    UNKNOWN = "Unknown"


def is_irreducible(params: JetParams, mode: str = "G") -> tuple[Irreducibility, list[str]]:
    """Irreducibility verdict and notes.

    mode "G": e != 0 gives Irreducible; e = 0 is Unknown (no converse known).
    mode "F": the module over W_n without the A_n action.  Reducible exactly
    when alpha is integral and (lambda, c) is (0, 0), (0, n) or (w_k, k) for
    1 <= k <= n-1; the pair (0, n) plays the role of k = n and is flagged.
    """
    n = params.n
    notes: list[str] = []
    if mode == "G":
        if params.e != 0:
            return Irreducibility.IRREDUCIBLE, notes
        notes.append("e = 0: no irreducibility criterion is available for this case")
        return Irreducibility.UNKNOWN, notes
    if mode != "F":
        raise ValueError(f"mode must be 'G' or 'F', got {mode!r}")
    integral = all(imag_part(a) == 0 and real_part(a).denominator == 1 for a in params.alpha)
    lam = params.lam
    c = params.c
    exceptional = False
    if not any(lam) and c == 0:
        exceptional = True
    elif not any(lam) and c == n:
        exceptional = True
        notes.append("(lambda, c) = (0, n) is the k = n case of the exterior-power family; its reading is ambiguous")
    else:
        for k in range(1, n):
            if sum(lam) == 1 and lam[k - 1] == 1 and c == k:
                exceptional = True
    if integral and exceptional:
        return Irreducibility.REDUCIBLE, notes
    return Irreducibility.IRREDUCIBLE, notes


@dataclass
class WeightSupport:
    base: tuple
    present: list
    multiplicity: dict
    window_limited: bool = True


def weight_support(params: JetParams, irrep: Irrep | None = None, window: int = 1) -> WeightSupport:
    """Weights of the window slices, read off from the d_i action."""
    module = JetModule(params, irrep)
    n = params.n
    ds = [d(n, i) for i in range(1, n + 1)]
    present = []
    mult = {}
    for s in lattice.box(n, window):
        count = 0
        for b in range(module.dim):
            w = {(b, s): ONE}
            for i, di in enumerate(ds):
                img = module.act(di, w)
                expect = s[i] + params.alpha[i]
                if img != ({(b, s): expect} if expect != 0 else {}):
                    raise AssertionError(f"d_{i + 1} does not act diagonally on {(b, s)}")
            count += 1
        mult[s] = count
        if count:
            present.append(s)
    return WeightSupport(tuple(params.alpha), present, mult)


class ModuleView:
    """Finite window of a weight module, as used by the GHW scan and span closure.

    Subclasses provide ``labels`` (lattice offsets of weights in the window),
    ``basis(label)``, ``generators()`` (pairs (degree, AlgebraElement)),
    ``apply(x, m, label, vec)`` returning the image vector, and
    ``cone_coords(m)``.
    """

    n: int
    leakage: list

    def multiplicities(self) -> dict:
        return {lab: len(self.basis(lab)) for lab in self.labels}

    def in_window(self, label) -> bool:
        return label in self._label_set

    @cached_property
    def _label_set(self):
        return set(self.labels)

    def cone_coords(self, m):
        return tuple(m)


class JetWindow(ModuleView):
    """Slices t^s, s in [-radius, radius]^n, generators of degree in [-gen_radius, gen_radius]^n."""

    kind = "jet"

    def __init__(self, params: JetParams, radius: int = 2, gen_radius: int | None = None,
                 irrep: Irrep | None = None):
        self.module = JetModule(params, irrep)
        self.params = params
        self.n = params.n
        self.radius = radius
        self.gen_radius = radius if gen_radius is None else gen_radius
        self.labels = lattice.box(self.n, radius)
        self.leakage = []

    def basis(self, label):
        return [(b, label) for b in range(self.module.dim)]

    def generators(self):
        return _window_basis(self.n, self.gen_radius, "Extended")

    def apply(self, x, m, label, vec):
        return self.module.act(x, vec)


@dataclass
class GHWResult:
    k: int
    vectors: list
    cone: list
    window_limited: bool = True
    leakage: bool = False


def detect_ghw_vectors(view: ModuleView, k: int) -> GHWResult:
    """Weight vectors killed by every window generator of degree m with cone coordinates >= k."""
    if k < 1:
        raise ValueError("k must be positive")
    gens = [(m, x) for m, x in view.generators() if all(c >= k for c in view.cone_coords(m))]
    if not gens:
        raise WindowTooSmall(f"no generator degree in the window lies in the cone of level {k}")
    found = []
    leak = False
    for label in view.labels:
        keys = view.basis(label)
        if not keys:
            continue
        cols = []
        for key in keys:
            col = {}
            for gi, (m, x) in enumerate(gens):
                img = view.apply(x, m, label, {key: ONE})
                for tk, v in img.items():
                    col[(gi, tk)] = v
            cols.append(col)
        for combo in nullspace(cols):
            found.append((label, {keys[j]: c for j, c in combo.items()}))
    if getattr(view, "leakage", None):
        leak = True
    return GHWResult(k, found, sorted({m for m, _ in gens}), True, leak)


def cyclic_span_window(view: ModuleView, label, vec: dict, window: list | None = None) -> dict:
    """Dimension per weight of the closure of vec under the window generators.

    The closure is restricted to weights in ``window`` (default: the view's
    labels); images leaving the window are dropped.
    """
    allowed = set(view.labels if window is None else window)
    spaces: dict = {}
    if not vec:
        return {lab: 0 for lab in sorted(allowed)}
    gens = view.generators()
    queue = [(tuple(label), dict(vec))]
    spaces.setdefault(tuple(label), Echelon()).add(vec)
    while queue:
        lab, v = queue.pop()
        for m, x in gens:
            tgt = lattice.add(lab, m)
            if tgt not in allowed:
                continue
            img = view.apply(x, m, lab, v)
            if not img:
                continue
            ech = spaces.setdefault(tgt, Echelon())
            r = ech.reduce(img)
            if r:
                ech.add(r)
                queue.append((tgt, r))
    return {lab: (spaces[lab].rank if lab in spaces else 0) for lab in sorted(allowed)}


def jet_params_to_json(params: JetParams) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "jet",
        "n": params.n,
        "lambda": list(params.lam),
        "c": scalar_to_json(params.c),
        "alpha": [scalar_to_json(a) for a in params.alpha],
        "e": scalar_to_json(params.e),
    }


def jet_params_from_json(data: dict, extra: set = frozenset()) -> JetParams:
    from .io import DescriptorError, check_fields, check_version, expect_int, expect_int_list

    check_version(data, SCHEMA_VERSION, "jet module")
    allowed = {"schema_version", "kind", "n", "lambda", "c", "alpha", "e"} | set(extra)
    check_fields(data, allowed, "jet module", required=allowed - set(extra))
    if data["kind"] != "jet":
        raise DescriptorError(f"field 'kind': expected 'jet', got {data['kind']!r}")
    n = expect_int(data["n"], "n", 2)
    lam = expect_int_list(data["lambda"], "lambda", n - 1)
    if any(a < 0 for a in lam):
        raise DescriptorError("field 'lambda': marks must be non-negative")
    alpha = data["alpha"]
    if not isinstance(alpha, list) or len(alpha) != n:
        raise DescriptorError(f"field 'alpha': expected {n} scalars")
    try:
        return JetParams(
            lam,
            scalar_from_json(data["c"]),
            tuple(scalar_from_json(a) for a in alpha),
            scalar_from_json(data["e"]),
        )
    except (TypeError, ValueError) as exc:
        raise DescriptorError(f"jet module: {exc}") from exc
