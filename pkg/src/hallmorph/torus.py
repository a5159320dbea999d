"""The commutative torus, the quantum torus T_Lambda and the map mu.

Exponent vectors live in Z^{2n} and are stored split-free; the (top; bottom)
block convention is: top = first n entries, bottom = last n.  Elements carry a
mode flag: 'plain' multiplies by exponent addition, 'lambda' twists by
v^{Lambda(a, b)}.  Half-integer powers of q arising from q^{Lambda/2} are odd
v-powers and stay exact.
"""

from __future__ import annotations

from . import matrices as im
from .linear import LinComb, accumulate
from .quiver import FramedSeed, exchange_data
from .scalar import Scalar

PLAIN = "plain"
LAMBDA = "lambda"


class TorusError(ValueError):
    """Mode or seed mismatch, or an inhomogeneous degree request."""


class TorusElt(LinComb):
    """Linear combination of monomials X^a, a in Z^{2n}, in one mode."""

    __slots__ = ("mode",)

    def __init__(self, terms=None, mode=LAMBDA):
        super().__init__(terms)
        self.mode = mode

    @classmethod
    def single(cls, key, coef, mode=LAMBDA):
        return cls({key: coef}, mode)

    def __add__(self, other):
        if isinstance(other, TorusElt) and other.mode != self.mode:
            raise TorusError("cannot add torus elements of different modes")
        out = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(out, k, c)
        return TorusElt(out, self.mode)

    def __neg__(self):
        return TorusElt({k: -c for k, c in self.terms.items()}, self.mode)

    def scale(self, coef):
        return TorusElt({k: c * coef for k, c in self.terms.items()} if coef else {}, self.mode)

    def __eq__(self, other):
        return (
            isinstance(other, TorusElt)
            and self.mode == other.mode
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.mode, frozenset(self.terms.items())))


class TorusTensorElt(LinComb):
    """Combination of X^a (x) X^b monomial pairs."""


class TorusContext:
    """All torus operations tied to one framed seed and one q."""

    def __init__(self, seed: FramedSeed, q: int):
        self.seed = seed
        self.q = q
        self.n = seed.n
        self.m = seed.m
        self._base = exchange_data(seed.base)
        self._framed = exchange_data(seed.framed)

    # -- scalars and forms ---------------------------------------------------

    def v(self, k: int) -> Scalar:
        return Scalar.v_power(k, self.q)

    def one_scalar(self) -> Scalar:
        return Scalar.one(self.q)

    def lam(self, a, b) -> int:
        return self.seed.lam_form(a, b)

    def euler(self, a, b) -> int:
        return self._base.euler(a, b)

    def sym(self, a, b) -> int:
        return self._base.sym(a, b)

    def euler_full(self, a, b) -> int:
        return self._framed.euler(a, b)

    def sym_full(self, a, b) -> int:
        return self._framed.sym(a, b)

    def split(self, a):
        return tuple(a[: self.n]), tuple(a[self.n:])

    # -- elements --------------------------------------------------------------

    def monomial(self, exp, coef=None, mode=LAMBDA) -> TorusElt:
        exp = tuple(exp)
        if len(exp) != self.m:
            raise TorusError(f"exponent must have length {self.m}")
        return TorusElt.single(exp, coef if coef is not None else self.one_scalar(), mode)

    def one(self, mode=LAMBDA) -> TorusElt:
        return self.monomial((0,) * self.m, mode=mode)

    def zero(self, mode=LAMBDA) -> TorusElt:
        return TorusElt({}, mode)

    def as_mode(self, x: TorusElt, mode) -> TorusElt:
        return TorusElt(dict(x.terms), mode)

    # -- products ----------------------------------------------------------------

    def t_mult(self, x: TorusElt, y: TorusElt) -> TorusElt:
        """Commutative product X^a . X^b = X^{a+b} (plain mode)."""
        if x.mode != PLAIN or y.mode != PLAIN:
            raise TorusError("t_mult requires plain-mode operands")
        out: dict = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                accumulate(out, im.vec_add(a, b), ca * cb)
        return TorusElt(out, PLAIN)

    def tlambda_mult(self, x: TorusElt, y: TorusElt) -> TorusElt:
        """Twisted product X^a * X^b = v^{Lambda(a,b)} X^{a+b} (lambda mode)."""
        if x.mode != LAMBDA or y.mode != LAMBDA:
            raise TorusError("tlambda_mult requires lambda-mode operands")
        out: dict = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                accumulate(out, im.vec_add(a, b), ca * cb * self.v(self.lam(a, b)))
        return TorusElt(out, LAMBDA)

    def mult(self, x: TorusElt, y: TorusElt) -> TorusElt:
        if x.mode != y.mode:
            raise TorusError("mode mismatch")
        return self.t_mult(x, y) if x.mode == PLAIN else self.tlambda_mult(x, y)

    def power(self, x: TorusElt, k: int) -> TorusElt:
        if k < 0:
            raise TorusError("negative powers only for single monomials")
        out = self.one(x.mode)
        for _ in range(k):
            out = self.mult(out, x)
        return out

    # -- tensor products -----------------------------------------------------------

    def tensor_monomial(self, a, b, coef=None) -> TorusTensorElt:
        c = coef if coef is not None else self.one_scalar()
        return TorusTensorElt({(tuple(a), tuple(b)): c})

    def tensor_star(self, x: TorusTensorElt, y: TorusTensorElt) -> TorusTensorElt:
        """Twisted product on T (x) T with the block-split prefactor."""
        out: dict = {}
        for (a, b), cab in x.terms.items():
            a1, a2 = self.split(a)
            b1, b2 = self.split(b)
            left = im.vec_sub(
                im.mat_vec(self.seed.etilde_prime, im.vec_add(a1, b1)),
                im.vec_add(self.seed.tilde(a2), self.seed.tilde(b2)),
            )
            for (c, d), ccd in y.terms.items():
                c1, c2 = self.split(c)
                d1, d2 = self.split(d)
                right = im.vec_sub(
                    im.mat_vec(self.seed.etilde_prime, im.vec_add(c1, d1)),
                    im.vec_add(self.seed.tilde(c2), self.seed.tilde(d2)),
                )
                vexp = self.lam(left, right) + 2 * self.sym(b1, c1) + 2 * self.euler(a1, d1)
                key = (im.vec_add(a, c), im.vec_add(b, d))
                accumulate(out, key, cab * ccd * self.v(vexp))
        return TorusTensorElt(out)

    def tensor_star_full(self, x: TorusTensorElt, y: TorusTensorElt) -> TorusTensorElt:
        """The derived-route twist on T (x) T: full 2n x 2n matrices and forms."""
        ef = self.seed.e_prime_full
        out: dict = {}
        for (a, b), cab in x.terms.items():
            left = im.mat_vec(ef, im.vec_add(a, b))
            for (c, d), ccd in y.terms.items():
                right = im.mat_vec(ef, im.vec_add(c, d))
                vexp = (
                    self.lam(left, right)
                    + 2 * self.sym_full(b, c)
                    + 2 * self.euler_full(a, d)
                )
                key = (im.vec_add(a, c), im.vec_add(b, d))
                accumulate(out, key, cab * ccd * self.v(vexp))
        return TorusTensorElt(out)

    # -- the multiplication maps into T_Lambda ----------------------------------------

    def mu(self, x: TorusTensorElt) -> TorusElt:
        """mu(X^(a1;a2) (x) X^(b1;b2)) with the v^{-(a1,b1)-<a1,b1>} prefactor."""
        out: dict = {}
        for (a, b), c in x.terms.items():
            a1, a2 = self.split(a)
            b1, b2 = self.split(b)
            vexp = -self.sym(a1, b1) - self.euler(a1, b1)
            exp = im.vec_add(
                im.vec_add(
                    im.vec_neg(im.mat_vec(self.seed.etilde, a1)),
                    im.vec_neg(im.mat_vec(self.seed.etilde_prime, b1)),
                ),
                im.vec_add(self.seed.tilde(a2), self.seed.tilde(b2)),
            )
            accumulate(out, exp, c * self.v(vexp))
        return TorusElt(out, LAMBDA)

    def mu_full(self, x: TorusTensorElt) -> TorusElt:
        """Derived-route mu: X^a (x) X^b -> v^{-(a,b)-<a,b>} X^{-E a - E' b}."""
        out: dict = {}
        for (a, b), c in x.terms.items():
            vexp = -self.sym_full(a, b) - self.euler_full(a, b)
            exp = im.vec_add(
                im.vec_neg(im.mat_vec(self.seed.e_full, a)),
                im.vec_neg(im.mat_vec(self.seed.e_prime_full, b)),
            )
            accumulate(out, exp, c * self.v(vexp))
        return TorusElt(out, LAMBDA)

    # -- grading / g-vectors -------------------------------------------------------

    def deg(self, x: TorusElt):
        """Common Z^n-degree of a homogeneous element; errors when mixed.

        deg X^a = sum_{i<=n} a_i e_i - sum_j a_{n+j} (column j of B).
        """
        if not x.terms:
            raise TorusError("degree of zero is undefined")
        b = self._base.b
        deg = None
        for a in x.terms:
            top, bottom = self.split(a)
            d = list(top)
            for j, coef in enumerate(bottom):
                if coef:
                    for i in range(self.n):
                        d[i] -= coef * b[i][j]
            d = tuple(d)
            if deg is None:
                deg = d
            elif deg != d:
                raise TorusError("element is not homogeneous")
        return deg

    def is_homogeneous(self, x: TorusElt) -> bool:
        try:
            self.deg(x)
            return True
        except TorusError:
            return False

    # -- exact division (used by the mutation oracle) ---------------------------------

    def divide_right(self, z: TorusElt, y: TorusElt) -> TorusElt:
        """The unique w with w * y = z in T_Lambda; raises if nonexistent."""
        if y.mode != LAMBDA or z.mode != LAMBDA:
            raise TorusError("division implemented for lambda mode")
        if not y.terms:
            raise TorusError("division by zero")
        ymax = max(y.terms)
        ycoef = y.terms[ymax]
        rem = dict(z.terms)
        quot: dict = {}
        steps = 0
        while rem:
            steps += 1
            if steps > 10000 + 4 * len(z.terms) * len(y.terms):
                raise TorusError("division does not terminate; quotient not in the torus")
            zmax = max(rem)
            w = im.vec_sub(zmax, ymax)
            coef = rem[zmax] / (ycoef * self.v(self.lam(w, ymax)))
            accumulate(quot, w, coef)
            for b, cb in y.terms.items():
                accumulate(rem, im.vec_add(w, b), -(coef * cb * self.v(self.lam(w, b))))
        return TorusElt(quot, LAMBDA)
