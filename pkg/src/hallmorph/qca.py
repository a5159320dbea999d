"""Quantum cluster seeds and their mutation, as an independent oracle.

Seeds carry the compatible pair (Lambda, B~) together with the 2n cluster
variables written in the initial quantum torus, so mutation walks stay inside
one coefficient frame and Psi images can be matched by exact equality.  The
exchange relation is evaluated through frame monomials of the current seed and
one exact right-division in the torus; quantum Laurentness is structural.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matrices as im
from .hall import HallContext
from .repcat import ZERO_CLASS
from .scalar import Scalar
from .torus import LAMBDA, TorusContext, TorusElt


class MutationError(ArithmeticError):
    """Compatibility was lost along a mutation, or an exchange did not divide."""


def fz_mutate(btilde, k: int):
    """Fomin-Zelevinsky matrix mutation of the 2n x n exchange matrix at k < n."""
    rows = len(btilde)
    cols = len(btilde[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            if i == k or j == k:
                row.append(-btilde[i][j])
            else:
                row.append(
                    btilde[i][j]
                    + max(btilde[i][k], 0) * max(btilde[k][j], 0)
                    - max(-btilde[i][k], 0) * max(-btilde[k][j], 0)
                )
        out.append(tuple(row))
    return tuple(out)


def _lambda_mutate(lam, btilde, k: int, eps: int):
    """Lambda' = E^T Lambda E for the elementary matrix of the mutation."""
    m = len(lam)
    e = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for i in range(m):
        e[i][k] = -1 if i == k else max(0, -eps * btilde[i][k])
    e = im.freeze(e)
    return im.mat_mul(im.mat_mul(im.transpose(e), lam), e)


@dataclass(frozen=True)
class QuantumSeed:
    """One vertex of the exchange graph, tracked in the initial torus."""

    torus: TorusContext
    lam: tuple   # current 2n x 2n compatibility matrix
    btilde: tuple  # current 2n x n exchange matrix
    cluster: tuple  # 2n TorusElts (lambda mode) in the initial torus

    @property
    def n(self) -> int:
        return self.torus.n

    def check_compatibility(self):
        n = self.n
        dn = im.diagonal(self.torus.seed.base.valuations)
        target = im.vstack(dn, im.zeros(n, n))
        if im.mat_mul(self.lam, im.mat_neg(self.btilde)) != target:
            raise MutationError("compatibility Lambda(-B~) = (D;0) lost")
        return self

    def frame_monomial(self, w) -> TorusElt:
        """M(w) for w >= 0: the Lambda'-symmetrized product of cluster powers."""
        t = self.torus
        sigma = 0
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                if w[i] and w[j]:
                    sigma += w[i] * w[j] * self.lam[i][j]
        out = t.one(LAMBDA)
        for i, wi in enumerate(w):
            for _ in range(wi):
                out = t.tlambda_mult(out, self.cluster[i])
        return out.scale(Scalar.v_power(-sigma, t.q))

    def mutate(self, k: int) -> "QuantumSeed":
        """Replace X_k by the quantum binomial exchange; mutate (Lambda, B~)."""
        n = self.n
        if not 0 <= k < n:
            raise MutationError(f"direction {k} is frozen or out of range")
        t = self.torus
        m = t.m
        wplus = tuple(max(self.btilde[i][k], 0) if i != k else 0 for i in range(m))
        wminus = tuple(max(-self.btilde[i][k], 0) if i != k else 0 for i in range(m))
        ek = tuple(1 if i == k else 0 for i in range(m))
        z = self.frame_monomial(wplus).scale(
            Scalar.v_power(im.bilinear(self.lam, wplus, ek), t.q)
        ) + self.frame_monomial(wminus).scale(
            Scalar.v_power(im.bilinear(self.lam, wminus, ek), t.q)
        )
        new_var = t.divide_right(z, self.cluster[k])
        new_b = fz_mutate(self.btilde, k)
        new_lam = _lambda_mutate(self.lam, self.btilde, k, +1)
        cluster = tuple(
            new_var if i == k else x for i, x in enumerate(self.cluster)
        )
        return QuantumSeed(t, new_lam, new_b, cluster).check_compatibility()

    def key(self) -> tuple:
        return (self.btilde, self.lam, tuple(variable_key(x) for x in self.cluster))


def variable_key(x: TorusElt) -> tuple:
    return tuple(sorted((e, (c.rat, c.srt)) for e, c in x.terms.items()))


def initial_seed(torus_ctx: TorusContext) -> QuantumSeed:
    m = torus_ctx.m
    cluster = tuple(
        torus_ctx.monomial(tuple(1 if j == i else 0 for j in range(m)))
        for i in range(m)
    )
    seed = QuantumSeed(
        torus_ctx, torus_ctx.seed.lam, torus_ctx.seed.btilde, cluster
    )
    return seed.check_compatibility()


def enumerate_variables(seed: QuantumSeed, depth: int):
    """Breadth-first mutation; returns {variable_key: (element, first path)}.

    Only mutable positions contribute variables; seeds are deduplicated on
    their full canonical key.
    """
    n = seed.n
    found = {}
    for i in range(n):
        found.setdefault(variable_key(seed.cluster[i]), (seed.cluster[i], ()))
    frontier = [(seed, ())]
    visited = {seed.key()}
    for _ in range(depth):
        nxt = []
        for s, path in frontier:
            for k in range(n):
                s2 = s.mutate(k)
                key = s2.key()
                if key in visited:
                    continue
                visited.add(key)
                p2 = path + (k + 1,)
                nxt.append((s2, p2))
                var = s2.cluster[k]
                found.setdefault(variable_key(var), (var, p2))
        frontier = nxt
        if not frontier:
            break
    return found


def compare_with_psi(hall: HallContext, depth: int, max_total: int = 4):
    """Match Psi images of rigid indecomposables (and shifts) against BZ variables.

    Returns a list of {"module_label", "matched", "mutation_path"} records plus
    a coverage record for the enumerated non-initial variables.
    """
    seed0 = initial_seed(hall.torus)
    found = enumerate_variables(seed0, depth)
    rows = []
    matched_keys = set()
    for entry in hall.cat.catalog(max_total):
        if not entry.rigid:
            continue
        cls = hall.cat.class_of_label(entry.label)
        psi = hall.psi_closed(cls)
        key = variable_key(psi)
        hit = key in found
        if hit:
            matched_keys.add(key)
        rows.append(
            {
                "module_label": entry.label,
                "matched": hit,
                "mutation_path": list(found[key][1]) if hit else None,
            }
        )
    for i in range(hall.n):
        pm = tuple(1 if j == i else 0 for j in range(hall.n))
        psi = hall.psi_closed(ZERO_CLASS, pm)
        key = variable_key(psi)
        hit = key in found
        if hit:
            matched_keys.add(key)
        rows.append(
            {
                "module_label": f"P{i+1}[1]",
                "matched": hit,
                "mutation_path": list(found[key][1]) if hit else None,
            }
        )
    unmatched_vars = sorted(
        str(path) for key, (_, path) in found.items() if key not in matched_keys
    )
    rows.append(
        {
            "module_label": "__coverage__",
            "matched": not unmatched_vars,
            "mutation_path": unmatched_vars or None,
        }
    )
    return rows
