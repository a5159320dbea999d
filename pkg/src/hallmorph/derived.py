"""The shift-truncated derived Hall algebra and its cluster character.

Basis symbols u_{M + P[1]} with M a module and P projective; the ambient
category is the framed quiver's module category, so dimension vectors live in
Z^{2n}.  Products mirror the morphism-category relations without K's, the
comultiplication and integration mirror their MH counterparts, and the
character psi = mu o (int (x) int) o Delta is computed both as a pipeline and
in closed Grassmannian form with the full 2n x 2n matrices.
"""

from __future__ import annotations

import itertools

from . import matrices as im
from .hall import HallContext, MHElement, shift_product
from .linear import LinComb, accumulate
from .quiver import FramedSeed
from .repcat import ZERO_CLASS, IsoClass, ModuleCategory, Representation
from .scalar import Scalar
from .torus import LAMBDA, PLAIN, TorusContext, TorusElt, TorusTensorElt


class DerivedError(ValueError):
    pass


class DHElement(LinComb):
    """Combination of (module class, projective multiplicities) keys."""


class DHTensorElement(LinComb):
    """Combination of pairs of DH keys."""


def dh_product(cat: ModuleCategory, x: DHElement, y: DHElement, vpow_extra=None) -> DHElement:
    """Normal-form product of DH elements over any module category.

    vpow_extra(t1, t2) -> int, when given, adds a v-power twist per term pair.
    """
    q = cat.q
    out: dict = {}
    for (m1, p1), c1 in x.terms.items():
        for (m2, p2), c2 in y.terms.items():
            c = c1 * c2
            if vpow_extra is not None:
                c = c * Scalar.v_power(vpow_extra((m1, p1), (m2, p2)), q)
            for key, coef in shift_product(cat, m1, p1, m2, p2).items():
                accumulate(out, key, coef * c)
    return DHElement(out)


class DerivedContext:
    """DH^c over the framed module category, with its twisted form and psi."""

    def __init__(self, seed: FramedSeed, q: int, **cat_options):
        if not seed.appendix_compatible():
            raise DerivedError(
                "-Lambda B(Q~) is not diagonal; the derived route needs the "
                "stronger compatibility (holds for the default principal Lambda)"
            )
        self.seed = seed
        self.q = q
        self.n = seed.n
        self.m = seed.m
        self.cat = ModuleCategory(seed.framed, q, **cat_options)
        self.torus = TorusContext(seed, q)

    def v(self, k: int) -> Scalar:
        return Scalar.v_power(k, self.q)

    def one_scalar(self) -> Scalar:
        return Scalar.one(self.q)

    # -- elements --------------------------------------------------------------

    def term(self, mcls: IsoClass = ZERO_CLASS, pmult=None):
        pmult = tuple(pmult) if pmult is not None else (0,) * self.m
        if len(pmult) != self.m:
            raise DerivedError(f"projective multiplicities must have length {self.m}")
        return (mcls, pmult)

    def u(self, mcls: IsoClass = ZERO_CLASS, pmult=None) -> DHElement:
        return DHElement.single(self.term(mcls, pmult), self.one_scalar())

    def one(self) -> DHElement:
        return self.u()

    # -- products ----------------------------------------------------------------

    def _rel(self, term) -> tuple:
        mcls, pmult = term
        return im.vec_sub(self.cat.dim_of(mcls), self.cat.proj_dim(pmult))

    def twist_exponent(self, t1, t2) -> int:
        ef = self.seed.e_prime_full
        return self.seed.lam_form(
            im.mat_vec(ef, self._rel(t1)), im.mat_vec(ef, self._rel(t2))
        )

    def dh_mult(self, x: DHElement, y: DHElement) -> DHElement:
        return dh_product(self.cat, x, y)

    def dh_mult_twisted(self, x: DHElement, y: DHElement) -> DHElement:
        return dh_product(self.cat, x, y, vpow_extra=self.twist_exponent)

    # -- comultiplication -----------------------------------------------------------

    def dh_comult(self, x: DHElement) -> DHTensorElement:
        out: dict = {}
        for (lcls, pmult), c in x.terms.items():
            ldim = self.cat.dim_of(lcls)
            pdim = self.cat.proj_dim(pmult)
            zero_p = (0,) * self.m
            for e in itertools.product(*(range(d + 1) for d in ldim)):
                for (sub, quot), f in self.cat.sub_quot_table(lcls, e).items():
                    vexp = 2 * self.cat.euler(
                        self.cat.dim_of(quot), im.vec_sub(e, pdim)
                    )
                    accumulate(
                        out,
                        ((quot, zero_p), (sub, pmult)),
                        c * self.v(vexp) * f,
                    )
        return DHTensorElement(out)

    def tensor_mult(self, x: DHTensorElement, y: DHTensorElement, twisted=False) -> DHTensorElement:
        ef = self.seed.e_prime_full
        out: dict = {}
        for (t1, t2), c12 in x.terms.items():
            r1, r2 = self._rel(t1), self._rel(t2)
            for (t3, t4), c34 in y.terms.items():
                r3, r4 = self._rel(t3), self._rel(t4)
                vexp = 2 * self.cat.sym(r2, r3) + 2 * self.cat.euler(r1, r4)
                if twisted:
                    vexp += self.seed.lam_form(
                        im.mat_vec(ef, im.vec_add(r1, r2)),
                        im.mat_vec(ef, im.vec_add(r3, r4)),
                    )
                c = c12 * c34 * self.v(vexp)
                left = shift_product(self.cat, t1[0], t1[1], t3[0], t3[1])
                right = shift_product(self.cat, t2[0], t2[1], t4[0], t4[1])
                for kl, cl in left.items():
                    for kr, cr in right.items():
                        accumulate(out, (kl, kr), c * cl * cr)
        return DHTensorElement(out)

    # -- integration ------------------------------------------------------------------

    def dh_integrate(self, x: DHElement, mode=PLAIN) -> TorusElt:
        """u_{M+P[1]} -> X^{m - p}, the alternating-sum class in Z^{2n}."""
        out: dict = {}
        for term, c in x.terms.items():
            accumulate(out, tuple(self._rel(term)), c)
        return TorusElt(out, mode)

    def dh_integrate_tensor(self, x: DHTensorElement) -> TorusTensorElt:
        out: dict = {}
        for (t1, t2), c in x.terms.items():
            accumulate(out, (tuple(self._rel(t1)), tuple(self._rel(t2))), c)
        return TorusTensorElt(out)

    # -- psi ---------------------------------------------------------------------------

    def psi_pipeline(self, x: DHElement) -> TorusElt:
        return self.torus.mu_full(self.dh_integrate_tensor(self.dh_comult(x)))

    def psi_closed(self, mcls: IsoClass, pmult=None) -> TorusElt:
        """sum_e v^{<p-e,m-e>} |Gr_e M| X^{E'(Q~)(p-e) - E(Q~)(m-e)}."""
        pmult = tuple(pmult) if pmult is not None else (0,) * self.m
        mdim = self.cat.dim_of(mcls)
        p = self.cat.proj_dim(pmult)
        out: dict = {}
        for e in itertools.product(*(range(d + 1) for d in mdim)):
            gr = self.cat.gr_count(mcls, e)
            if not gr:
                continue
            pe = im.vec_sub(p, e)
            me = im.vec_sub(mdim, e)
            exp = im.vec_sub(
                im.mat_vec(self.seed.e_prime_full, pe),
                im.mat_vec(self.seed.e_full, me),
            )
            accumulate(out, exp, self.v(self.cat.euler(pe, me)) * gr)
        return TorusElt(out, LAMBDA)

    def cc_closed(self, mcls: IsoClass, pmult=None) -> TorusElt:
        """The -B(Q~)e - E(Q~)m + t_P spelling; t_P = Dim(P/rad P) over Q~."""
        pmult = tuple(pmult) if pmult is not None else (0,) * self.m
        mdim = self.cat.dim_of(mcls)
        t_p = self.cat.top_dims(self.cat.proj_rep(pmult))
        pdim = self.cat.proj_dim(pmult)
        base = im.vec_add(im.vec_neg(im.mat_vec(self.seed.e_full, mdim)), t_p)
        out: dict = {}
        for e in itertools.product(*(range(d + 1) for d in mdim)):
            gr = self.cat.gr_count(mcls, e)
            if not gr:
                continue
            exp = im.vec_add(base, im.vec_neg(im.mat_vec(self.seed.b_full, e)))
            coef = self.v(self.cat.euler(im.vec_sub(pdim, e), im.vec_sub(mdim, e))) * gr
            accumulate(out, exp, coef)
        return TorusElt(out, LAMBDA)

    # -- the embedding of base-quiver modules ------------------------------------------

    def embed_rep(self, rep: Representation) -> Representation:
        """View a base-quiver representation inside the framed category."""
        if rep.quiver != self.seed.base:
            raise DerivedError("embed_rep expects a base-quiver representation")
        dims = tuple(rep.dims) + (0,) * self.n
        mats = list(rep.mats)
        for (src, tgt) in self.seed.framed.arrow_list()[len(mats):]:
            mats.append(tuple(() for _ in range(dims[tgt])))
        return Representation(self.seed.framed, self.q, dims, mats)

    def embed_class(self, hall: HallContext, mcls: IsoClass) -> IsoClass:
        return self.cat.decompose(self.embed_rep(hall.cat.rep_of_class(mcls)))

    def embed_pmult(self, pmult) -> tuple:
        """Base projectives keep their indices under the principal framing."""
        return tuple(pmult) + (0,) * self.n

    # -- derived Hom vanishing ------------------------------------------------------------

    def derived_hom_dim(self, t1, t2, i: int) -> int:
        """dim Hom(M+P[1], (N+Q[1])[i]) from module Hom/Ext of components."""
        (m, p), (nn, qq) = t1, t2
        pcls = self.cat.proj_class(p)
        qcls = self.cat.proj_class(qq)

        def ext_j(a, b, j):
            if j == 0:
                return self.cat.hom_dim(a, b)
            if j == 1:
                return self.cat.ext_dim(a, b)
            return 0

        return (
            ext_j(m, nn, i)
            + ext_j(m, qcls, i + 1)
            + ext_j(pcls, nn, i - 1)
            + ext_j(pcls, qcls, i)
        )


def phi_embed(hall: HallContext, x: DHElement) -> MHElement:
    """u_{M + P[1]} -> X_M * X_{P[1]} = X_{M+P[1]}, termwise into MH."""
    out: dict = {}
    for (mcls, pmult), c in x.terms.items():
        accumulate(out, hall.term(None, mcls, pmult), c)
    return MHElement(out)


def dh_element_over(hall: HallContext, mcls: IsoClass = ZERO_CLASS, pmult=None) -> DHElement:
    """A DH basis element over the base quiver's category (for phi tests)."""
    pmult = tuple(pmult) if pmult is not None else (0,) * hall.n
    return DHElement.single((mcls, pmult), Scalar.one(hall.q))
