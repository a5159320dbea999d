"""The localized Hall algebra of the morphism category, over one framed seed.

Elements are combinations of normal-form symbols K_alpha * X_{M + P[1]},
keyed by (alpha, iso class of M, projective multiplicities of P).  Products
are computed by normal-form rewriting:

* the shift part of the left factor moves past the module part of the right
  factor through hom-fiber counts,
* module parts multiply through Hall/extension counts,
* shifts and K's merge additively.

The twisted product multiplies basis products by v^{Lambda(deg x, deg y)}
with deg(K_a * X_{M+P[1]}) = E'~(m - p) - a~.  The quantum cluster character
is realized twice: as the pipeline mu o (int (x) int) o Delta and in closed
form as a Grassmannian-weighted Laurent element; the two must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import matrices as im
from .linear import LinComb, accumulate
from .quiver import FramedSeed
from .repcat import ZERO_CLASS, IsoClass, ModuleCategory
from .scalar import Scalar
from .torus import LAMBDA, PLAIN, TorusContext, TorusElt, TorusTensorElt


class HallError(ValueError):
    pass


class MHElement(LinComb):
    """Combination of (alpha, module class, projective multiplicities) keys."""


class MHTensorElement(LinComb):
    """Combination of pairs of MH keys."""


@dataclass(frozen=True)
class C2Object:
    """K_P + Z_Q + C_M, by Krull-Schmidt data of the morphism category."""

    kmult: tuple
    zmult: tuple
    mcls: IsoClass


def shift_product(cat: ModuleCategory, m1: IsoClass, p1, m2: IsoClass, p2):
    """Normal form of X_{M1+P1[1]} * X_{M2+P2[1]} as {(L, Q+P2): Scalar}.

    First X_{P1[1]} * X_{M2} = q^{-<p1,m2>} sum |_Q Hom(P1,M2)_B| X_{B+Q[1]},
    then X_{M1} * X_B = q^{<m1,b>} sum (|Ext(M1,B)_L| / |Hom(M1,B)|) X_L.
    """
    q = cat.q
    p1, p2 = tuple(p1), tuple(p2)
    p1dim = cat.proj_dim(p1)
    m2dim = cat.dim_of(m2)
    m1dim = cat.dim_of(m1)
    out: dict = {}
    base = -2 * cat.euler(p1dim, m2dim)
    for (qmult, bcls), fib in cat.hom_fiber_table(p1, m2).items():
        bdim = cat.dim_of(bcls)
        hom_mb = cat.hom_dim(m1, bcls)
        pref = 2 * cat.euler(m1dim, bdim) - 2 * hom_mb + base
        for lcls, extc in cat.ext_classes(m1, bcls):
            coef = Scalar.v_power(pref, q) * (fib * extc)
            key = (lcls, im.vec_add(qmult, p2))
            accumulate(out, key, coef)
    return out


class HallContext:
    """Products, comultiplication, integration and characters for one seed."""

    def __init__(self, seed: FramedSeed, q: int, **cat_options):
        if seed.q is not None and seed.q != q:
            raise HallError("seed was configured for a different q")
        self.seed = seed
        self.q = q
        self.n = seed.n
        self.cat = ModuleCategory(seed.base, q, **cat_options)
        self.torus = TorusContext(seed, q)

    # -- scalars ---------------------------------------------------------------

    def v(self, k: int) -> Scalar:
        return Scalar.v_power(k, self.q)

    def one_scalar(self) -> Scalar:
        return Scalar.one(self.q)

    # -- element constructors -----------------------------------------------------

    def term(self, alpha=None, mcls: IsoClass = ZERO_CLASS, pmult=None):
        alpha = tuple(alpha) if alpha is not None else (0,) * self.n
        pmult = tuple(pmult) if pmult is not None else (0,) * self.n
        if len(alpha) != self.n or len(pmult) != self.n:
            raise HallError("alpha and pmult must have length n")
        if any(c < 0 for c in pmult):
            raise HallError("projective multiplicities must be nonnegative")
        return (alpha, mcls, pmult)

    def element(self, alpha=None, mcls: IsoClass = ZERO_CLASS, pmult=None) -> MHElement:
        return MHElement.single(self.term(alpha, mcls, pmult), self.one_scalar())

    def K(self, alpha) -> MHElement:
        return self.element(alpha=alpha)

    def X(self, mcls: IsoClass = ZERO_CLASS, pmult=None) -> MHElement:
        return self.element(mcls=mcls, pmult=pmult)

    def one(self) -> MHElement:
        return self.element()

    def tensor(self, t1, t2, coef=None) -> MHTensorElement:
        return MHTensorElement.single((t1, t2), coef if coef is not None else self.one_scalar())

    # -- grading -----------------------------------------------------------------

    def deg_mh(self, term) -> tuple:
        """E'~(m - p) - alpha~ in Z^{2n}."""
        alpha, mcls, pmult = term
        rel = im.vec_sub(self.cat.dim_of(mcls), self.cat.proj_dim(pmult))
        return im.vec_sub(
            im.mat_vec(self.seed.etilde_prime, rel), self.seed.tilde(alpha)
        )

    # -- products ------------------------------------------------------------------

    def _term_product(self, t1, t2) -> dict:
        a1, m1, p1 = t1
        a2, m2, p2 = t2
        alpha = im.vec_add(a1, a2)
        return {
            (alpha, lcls, pm): coef
            for (lcls, pm), coef in shift_product(self.cat, m1, p1, m2, p2).items()
        }

    def _mult(self, x: MHElement, y: MHElement, twisted: bool) -> MHElement:
        out: dict = {}
        for t1, c1 in x.terms.items():
            for t2, c2 in y.terms.items():
                c = c1 * c2
                if twisted:
                    c = c * self.v(self.seed.lam_form(self.deg_mh(t1), self.deg_mh(t2)))
                for key, coef in self._term_product(t1, t2).items():
                    accumulate(out, key, coef * c)
        return MHElement(out)

    def mult_untwisted(self, x: MHElement, y: MHElement) -> MHElement:
        return self._mult(x, y, twisted=False)

    def mult_twisted(self, x: MHElement, y: MHElement) -> MHElement:
        return self._mult(x, y, twisted=True)

    # -- comultiplication ---------------------------------------------------------

    def comult(self, x: MHElement) -> MHTensorElement:
        """Delta(K_a * X_{L+P[1]}) = sum q^{<m, n-p>} F^L_{MN} X_M (x) K_a*X_{N+P[1]}."""
        out: dict = {}
        for (alpha, lcls, pmult), c in x.terms.items():
            ldim = self.cat.dim_of(lcls)
            pdim = self.cat.proj_dim(pmult)
            for e in itertools.product(*(range(d + 1) for d in ldim)):
                for (sub, quot), f in self.cat.sub_quot_table(lcls, e).items():
                    vexp = 2 * self.cat.euler(
                        self.cat.dim_of(quot), im.vec_sub(e, pdim)
                    )
                    left = self.term(None, quot, None)
                    right = self.term(alpha, sub, pmult)
                    accumulate(out, (left, right), c * self.v(vexp) * f)
        return MHTensorElement(out)

    def tensor_deg(self, pair) -> tuple:
        t1, t2 = pair
        return im.vec_add(self.deg_mh(t1), self.deg_mh(t2))

    def _tensor_mult(self, x: MHTensorElement, y: MHTensorElement, twisted: bool) -> MHTensorElement:
        out: dict = {}
        for (t1, t2), c12 in x.terms.items():
            a1, m1, p1 = t1
            a2, m2, p2 = t2
            rel1 = im.vec_sub(self.cat.dim_of(m1), self.cat.proj_dim(p1))
            rel2 = im.vec_sub(self.cat.dim_of(m2), self.cat.proj_dim(p2))
            for (t3, t4), c34 in y.terms.items():
                _, m3, p3 = t3
                _, m4, p4 = t4
                rel3 = im.vec_sub(self.cat.dim_of(m3), self.cat.proj_dim(p3))
                rel4 = im.vec_sub(self.cat.dim_of(m4), self.cat.proj_dim(p4))
                vexp = 2 * self.cat.sym(rel2, rel3) + 2 * self.cat.euler(rel1, rel4)
                if twisted:
                    vexp += self.seed.lam_form(
                        self.tensor_deg((t1, t2)), self.tensor_deg((t3, t4))
                    )
                c = c12 * c34 * self.v(vexp)
                left = self._term_product(t1, t3)
                right = self._term_product(t2, t4)
                for kl, cl in left.items():
                    for kr, cr in right.items():
                        accumulate(out, (kl, kr), c * cl * cr)
        return MHTensorElement(out)

    def tensor_mult_untwisted(self, x, y) -> MHTensorElement:
        return self._tensor_mult(x, y, twisted=False)

    def tensor_mult_twisted(self, x, y) -> MHTensorElement:
        return self._tensor_mult(x, y, twisted=True)

    # -- integration ----------------------------------------------------------------

    def _int_exp(self, term) -> tuple:
        alpha, mcls, pmult = term
        rel = im.vec_sub(self.cat.dim_of(mcls), self.cat.proj_dim(pmult))
        return tuple(rel) + tuple(alpha)

    def integrate(self, x: MHElement, mode=PLAIN) -> TorusElt:
        """K_a * X_{M+P[1]} -> X^{(m - p; a)}."""
        out: dict = {}
        for term, c in x.terms.items():
            accumulate(out, self._int_exp(term), c)
        return TorusElt(out, mode)

    def integrate_tensor(self, x: MHTensorElement) -> TorusTensorElt:
        out: dict = {}
        for (t1, t2), c in x.terms.items():
            accumulate(out, (self._int_exp(t1), self._int_exp(t2)), c)
        return TorusTensorElt(out)

    # -- the quantum cluster character -------------------------------------------------

    def psi_pipeline(self, x: MHElement) -> TorusElt:
        """Psi = mu o (int (x) int) o Delta, termwise on normal-form elements."""
        return self.torus.mu(self.integrate_tensor(self.comult(x)))

    def psi_closed(self, mcls: IsoClass, pmult=None, alpha=None) -> TorusElt:
        """sum_e v^{<p-e, m-e>} |Gr_e M| X^{E'~(p-e) - E~(m-e) + alpha~}."""
        pmult = tuple(pmult) if pmult is not None else (0,) * self.n
        alpha = tuple(alpha) if alpha is not None else (0,) * self.n
        m = self.cat.dim_of(mcls)
        p = self.cat.proj_dim(pmult)
        shift = self.seed.tilde(alpha)
        out: dict = {}
        for e in itertools.product(*(range(d + 1) for d in m)):
            gr = self.cat.gr_count(mcls, e)
            if not gr:
                continue
            pe = im.vec_sub(p, e)
            me = im.vec_sub(m, e)
            exp = im.vec_add(
                im.vec_sub(
                    im.mat_vec(self.seed.etilde_prime, pe),
                    im.mat_vec(self.seed.etilde, me),
                ),
                shift,
            )
            accumulate(out, exp, self.v(self.cat.euler(pe, me)) * gr)
        return TorusElt(out, LAMBDA)

    def cc_character(self, mcls: IsoClass, pmult=None) -> TorusElt:
        """sum_e v^{<p-e, m-e>} |Gr_e M| X^{-B~ e - E~ m + t_P}, t_P = Dim(P/rad P)."""
        pmult = tuple(pmult) if pmult is not None else (0,) * self.n
        m = self.cat.dim_of(mcls)
        p = self.cat.proj_dim(pmult)
        t_p = self.seed.bar(self.cat.top_dims(self.cat.proj_rep(pmult)))
        base = im.vec_add(
            im.vec_neg(im.mat_vec(self.seed.etilde, m)), t_p
        )
        out: dict = {}
        for e in itertools.product(*(range(d + 1) for d in m)):
            gr = self.cat.gr_count(mcls, e)
            if not gr:
                continue
            exp = im.vec_add(base, im.vec_neg(im.mat_vec(self.seed.btilde, e)))
            coef = self.v(self.cat.euler(im.vec_sub(p, e), im.vec_sub(m, e))) * gr
            accumulate(out, exp, coef)
        return TorusElt(out, LAMBDA)

    # -- morphism-category objects ---------------------------------------------------

    def c2_object(self, kmult=None, zmult=None, mcls: IsoClass = ZERO_CLASS) -> C2Object:
        z = (0,) * self.n
        return C2Object(
            tuple(kmult) if kmult is not None else z,
            tuple(zmult) if zmult is not None else z,
            mcls,
        )

    def dim_vec_c2(self, obj: C2Object) -> tuple:
        """(Dim M0 - Dim M-1; Dim M0) in Z^{2n}, additive over direct sums."""
        pdim = self.cat.proj_dim(obj.kmult)
        qdim = self.cat.proj_dim(obj.zmult)
        m = self.cat.dim_of(obj.mcls)
        cover, _, _, _ = (
            self.cat.min_proj_resolution(obj.mcls)
            if not obj.mcls.is_zero
            else ((0,) * self.n, (0,) * self.n, None, None)
        )
        pm = self.cat.proj_dim(cover)
        top = im.vec_sub(m, qdim)
        bottom = im.vec_add(pdim, pm)
        return tuple(top) + tuple(bottom)

    def ind_vec(self, obj: C2Object) -> tuple:
        """Coordinates of the class in the basis C^_{P_i}, K^_{P_i}: (a-b; b)."""
        if obj.mcls.is_zero:
            cover = syz = (0,) * self.n
        else:
            cover, syz, _, _ = self.cat.min_proj_resolution(obj.mcls)
        a = im.vec_add(obj.kmult, cover)
        b = im.vec_add(im.vec_add(obj.kmult, obj.zmult), syz)
        return tuple(im.vec_sub(a, b)) + tuple(b)

    def ind0(self, obj: C2Object) -> tuple:
        return self.ind_vec(obj)[: self.n]

    # -- display -------------------------------------------------------------------

    def term_str(self, term) -> str:
        alpha, mcls, pmult = term
        parts = []
        if any(alpha):
            parts.append("K[" + ",".join(str(a) for a in alpha) + "]")
        inner = []
        if not mcls.is_zero:
            inner.append("M=" + mcls.label())
        if any(pmult):
            inner.append(
                "P="
                + "+".join(
                    f"P{i+1}^{c}" if c > 1 else f"P{i+1}"
                    for i, c in enumerate(pmult)
                    if c
                )
            )
        if inner:
            parts.append("X(" + "; ".join(inner) + ")")
        return "*".join(parts) if parts else "1"
