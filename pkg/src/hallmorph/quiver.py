"""Valued quivers, exchange matrices, Euler forms and framed seeds.

Conventions fixed here once and used everywhere downstream:

* arrows are stored as (src, tgt, mult) with 0-based vertices; an arrow a -> b
  contributes to dim Ext^1(S_a, S_b);
* for valuations d_i, an arrow i -> j of multiplicity m carries a bimodule of
  k-dimension m * lcm(d_i, d_j), so R'_{ij} = m*lcm/d_i and R_{ji} = m*lcm/d_j,
  which makes D R' = R^T D hold by construction;
* the Euler form matrix is D (I - R'), acting as <a, b> = a^T D(I-R') b;
* the principal framing adds vertices n+1..2n with one arrow n+i -> i and
  valuation d_{n+i} = d_i, and the default skew form is
  Lambda = [[0, -D], [D, -D B]].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm

from . import matrices as im
from .matrices import Mat, Vec


class QuiverError(ValueError):
    """Malformed quiver data (cyclic, bad valuations, bad config...)."""


class SeedError(ValueError):
    """A supplied skew form fails skewness or compatibility."""


@dataclass(frozen=True)
class ValuedQuiver:
    n: int
    valuations: tuple
    arrows: tuple  # ((src, tgt, mult), ...), 0-based, sorted

    def __post_init__(self):
        if self.n < 1:
            raise QuiverError("need at least one vertex")
        if len(self.valuations) != self.n or any(d < 1 for d in self.valuations):
            raise QuiverError("valuations must be positive, one per vertex")
        seen = set()
        for (i, j, m) in self.arrows:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise QuiverError(f"arrow ({i},{j}) out of range")
            if i == j:
                raise QuiverError("loops are not allowed")
            if m < 1:
                raise QuiverError("arrow multiplicity must be >= 1")
            if (i, j) in seen:
                raise QuiverError(f"duplicate arrow entry ({i},{j})")
            seen.add((i, j))
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))

    @classmethod
    def make(cls, n, arrows, valuations=None):
        """Arrows as (src, tgt) or (src, tgt, mult), 0-based."""
        vals = tuple(valuations) if valuations else (1,) * n
        norm = tuple((a[0], a[1], a[2] if len(a) > 2 else 1) for a in arrows)
        return cls(n, vals, norm)

    @classmethod
    def linear(cls, n: int):
        """The A_n quiver with linear orientation 1 -> 2 -> ... -> n."""
        return cls.make(n, [(i, i + 1) for i in range(n - 1)])

    def topological_order(self) -> tuple:
        """Vertices ordered sources-first; raises QuiverError when cyclic."""
        indeg = [0] * self.n
        succ = [[] for _ in range(self.n)]
        for (i, j, _) in self.arrows:
            indeg[j] += 1
            succ[i].append(j)
        ready = sorted(v for v in range(self.n) if indeg[v] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
            ready.sort()
        if len(order) != self.n:
            raise QuiverError("quiver has an oriented cycle")
        return tuple(order)

    @property
    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
            return True
        except QuiverError:
            return False

    @property
    def simply_laced(self) -> bool:
        return all(d == 1 for d in self.valuations)

    def arrow_list(self) -> tuple:
        """Arrows expanded with multiplicity, as (src, tgt) pairs."""
        out = []
        for (i, j, m) in self.arrows:
            out.extend([(i, j)] * m)
        return tuple(out)

    def mult(self, i: int, j: int) -> int:
        for (a, b, m) in self.arrows:
            if (a, b) == (i, j):
                return m
        return 0

    # -- config file format (1-based vertices on disk) ----------------------

    def to_config(self, q=None, lam=None) -> dict:
        cfg = {
            "vertices": self.n,
            "valuations": list(self.valuations),
            "arrows": [[i + 1, j + 1, m] for (i, j, m) in self.arrows],
        }
        if q is not None:
            cfg["q"] = q
        if lam is not None:
            cfg["lambda"] = [list(r) for r in lam]
        return cfg

    @classmethod
    def from_config(cls, cfg: dict) -> "ValuedQuiver":
        try:
            n = int(cfg["vertices"])
            vals = tuple(int(d) for d in cfg.get("valuations", [1] * n))
            arrows = tuple(
                (int(a[0]) - 1, int(a[1]) - 1, int(a[2]) if len(a) > 2 else 1)
                for a in cfg.get("arrows", [])
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise QuiverError(f"malformed quiver config: {exc}") from exc
        return cls(n, vals, arrows)


def load_config(path):
    """Read a quiver config file; returns (quiver, q, lambda_override)."""
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    quiver = ValuedQuiver.from_config(cfg)
    q = cfg.get("q")
    lam = cfg.get("lambda")
    if lam is not None:
        lam = im.freeze(lam)
    return quiver, (int(q) if q is not None else None), lam


@dataclass(frozen=True)
class ExchangeData:
    """The matrices R, R', B = R'-R, E = I-R', E' = I-R and D for a quiver."""

    quiver: ValuedQuiver
    r: Mat
    r_prime: Mat
    b: Mat
    e: Mat
    e_prime: Mat
    d: Mat
    euler_matrix: Mat = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "euler_matrix", im.mat_mul(self.d, self.e))

    def euler(self, a: Vec, b: Vec) -> int:
        if len(a) != self.quiver.n or len(b) != self.quiver.n:
            raise QuiverError("euler form arguments must have length n")
        return im.bilinear(self.euler_matrix, a, b)

    def sym(self, a: Vec, b: Vec) -> int:
        return self.euler(a, b) + self.euler(b, a)

    def tits(self, d: Vec) -> int:
        return self.euler(d, d)

    def is_rep_finite(self) -> bool:
        """Positive-definiteness of the symmetrized Euler form."""
        sym = im.mat_add(self.euler_matrix, im.transpose(self.euler_matrix))
        return im.leading_minors_positive(sym)


def exchange_data(quiver: ValuedQuiver) -> ExchangeData:
    """Build R, R', B, E, E', D; verifies D R' = R^T D and acyclicity."""
    quiver.topological_order()  # raises on cycles
    n = quiver.n
    d = quiver.valuations
    r_prime = [[0] * n for _ in range(n)]
    r = [[0] * n for _ in range(n)]
    for (i, j, m) in quiver.arrows:
        dim_k = m * lcm(d[i], d[j])  # k-dimension of the arrow bimodule
        r_prime[i][j] = dim_k // d[i]
        r[j][i] = dim_k // d[j]
    r = im.freeze(r)
    r_prime = im.freeze(r_prime)
    dmat = im.diagonal(d)
    if im.mat_mul(dmat, r_prime) != im.mat_mul(im.transpose(r), dmat):
        raise QuiverError("valuation data violates D R' = R^T D")
    b = im.mat_sub(r_prime, r)
    e = im.mat_sub(im.identity(n), r_prime)
    e_prime = im.mat_sub(im.identity(n), r)
    return ExchangeData(quiver, r, r_prime, b, e, e_prime, dmat)


def euler_form(quiver: ValuedQuiver, a: Vec, b: Vec) -> int:
    return exchange_data(quiver).euler(a, b)


def sym_form(quiver: ValuedQuiver, a: Vec, b: Vec) -> int:
    return exchange_data(quiver).sym(a, b)


@dataclass(frozen=True)
class FramedSeed:
    """A framed quiver with its compatible pair (Lambda, B~) and form matrices.

    btilde/etilde/etilde_prime are the 2n x n left blocks; b_full/e_full/
    e_prime_full are the full 2n x 2n matrices of the framed quiver, used by
    the derived-Hall route.  Construct through frame_principal(), which
    validates all invariants; hand-built instances should call validate().
    """

    base: ValuedQuiver
    framed: ValuedQuiver
    q: int | None
    lam: Mat
    btilde: Mat
    etilde: Mat
    etilde_prime: Mat
    b_full: Mat
    e_full: Mat
    e_prime_full: Mat

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.framed.n

    def lam_form(self, a: Vec, b: Vec) -> int:
        return im.bilinear(self.lam, a, b)

    def tilde(self, a: Vec) -> Vec:
        """Embed alpha in Z^n as (0; alpha) in Z^2n."""
        return (0,) * self.n + tuple(a)

    def bar(self, a: Vec) -> Vec:
        """Embed alpha in Z^n as (alpha; 0) in Z^2n."""
        return tuple(a) + (0,) * self.n

    def compatibility_target(self) -> Mat:
        dn = im.diagonal(self.base.valuations)
        return im.vstack(dn, im.zeros(self.n, self.n))

    def is_compatible(self) -> bool:
        return im.mat_mul(self.lam, im.mat_neg(self.btilde)) == self.compatibility_target()

    def appendix_compatible(self) -> bool:
        """-Lambda B(Q~) = diag(d_1..d_2n), the stronger derived-route condition."""
        dd = im.diagonal(self.framed.valuations)
        return im.mat_neg(im.mat_mul(self.lam, self.b_full)) == dd

    def validate(self):
        if not im.is_skew(self.lam):
            raise SeedError("Lambda is not skew-symmetric")
        if not self.is_compatible():
            raise SeedError("Lambda(-B~) != (D; 0): incompatible pair")
        if im.mat_sub(self.etilde_prime, self.etilde) != self.btilde:
            raise SeedError("E'~ - E~ != B~")
        return self

    def with_lambda(self, lam: Mat) -> "FramedSeed":
        return FramedSeed(
            self.base, self.framed, self.q, im.freeze(lam),
            self.btilde, self.etilde, self.etilde_prime,
            self.b_full, self.e_full, self.e_prime_full,
        ).validate()


def frame_principal(quiver: ValuedQuiver, q: int | None = None, lam: Mat | None = None) -> FramedSeed:
    """Principal framing: vertex n+i and arrow n+i -> i for each i, d_{n+i}=d_i.

    The default Lambda = [[0, -D], [D, -D B]] satisfies both the compatibility
    equation Lambda(-B~) = (D; 0) and the derived-route diagonal condition; a
    caller-supplied Lambda is validated instead.
    """
    quiver.topological_order()
    n = quiver.n
    framed = ValuedQuiver(
        2 * n,
        tuple(quiver.valuations) * 2,
        tuple(quiver.arrows) + tuple((n + i, i, 1) for i in range(n)),
    )
    full = exchange_data(framed)
    take_left = lambda mat: tuple(row[:n] for row in mat)  # noqa: E731
    btilde = take_left(full.b)
    etilde = tuple(row[:n] for row in im.mat_sub(_itilde(2 * n, n), full.r_prime))
    etilde_prime = tuple(row[:n] for row in im.mat_sub(_itilde(2 * n, n), full.r))
    if lam is None:
        base = exchange_data(quiver)
        dn = im.diagonal(quiver.valuations)
        lam = im.vstack(
            im.hstack(im.zeros(n, n), im.mat_neg(dn)),
            im.hstack(dn, im.mat_neg(im.mat_mul(dn, base.b))),
        )
    seed = FramedSeed(
        base=quiver,
        framed=framed,
        q=q,
        lam=im.freeze(lam),
        btilde=btilde,
        etilde=etilde,
        etilde_prime=etilde_prime,
        b_full=full.b,
        e_full=full.e,
        e_prime_full=full.e_prime,
    )
    return seed.validate()


def _itilde(m: int, n: int) -> Mat:
    """The left m x n block of the m x m identity."""
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(m))


@dataclass(frozen=True)
class FormLemmaReport:
    """Evaluations of the compatible-pair identities on one vector pair."""

    checks: tuple  # ((name, lhs, rhs), ...)

    @property
    def ok(self) -> bool:
        return all(lhs == rhs for (_, lhs, rhs) in self.checks)

    def failures(self):
        return [c for c in self.checks if c[1] != c[2]]


def check_form_lemmas(seed: FramedSeed, alpha: Vec, beta: Vec) -> FormLemmaReport:
    """Evaluate both sides of the six bilinear-form identities on (alpha, beta).

    The four-vector identity is instantiated with (a1,b1,a2,b2) =
    (alpha, beta, beta, alpha).
    """
    base = exchange_data(seed.base)
    lam = seed.lam_form
    ev = lambda mat, v: im.mat_vec(mat, v)  # noqa: E731
    et, ep, bt = seed.etilde, seed.etilde_prime, seed.btilde
    a, b = tuple(alpha), tuple(beta)
    checks = [
        ("lambda(E~a, B~b) = -<b,a>", lam(ev(et, a), ev(bt, b)), -base.euler(b, a)),
        ("lambda(B~a, B~b) = <b,a>-<a,b>",
         lam(ev(bt, a), ev(bt, b)), base.euler(b, a) - base.euler(a, b)),
        ("lambda(E'~a, E'~b) = lambda(E~a, E~b)",
         lam(ev(ep, a), ev(ep, b)), lam(ev(et, a), ev(et, b))),
        ("four-vector expansion",
         lam(im.vec_add(ev(et, a), ev(ep, b)), im.vec_add(ev(et, b), ev(ep, a))),
         lam(ev(et, im.vec_add(a, b)), ev(et, im.vec_add(b, a)))
         - base.euler(a, a) + base.euler(b, b)),
        ("lambda(E'~a, b^) = lambda(E~a, b^)",
         lam(ev(ep, a), seed.tilde(b)), lam(ev(et, a), seed.tilde(b))),
        ("lambda(a^, E'~b) = lambda(a^, E~b)",
         lam(seed.tilde(a), ev(ep, b)), lam(seed.tilde(a), ev(et, b))),
    ]
    return FormLemmaReport(tuple(checks))
