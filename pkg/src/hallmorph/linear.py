"""Sparse linear combinations with Scalar coefficients, keyed by hashables."""

from __future__ import annotations

from .scalar import Scalar


class LinComb:
    """Finite formal sum {key: Scalar}; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                clean[k] = c
        self.terms = clean

    @classmethod
    def single(cls, key, coef: Scalar):
        return cls({key: coef})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coef: Scalar):
        if not coef:
            return type(self)({})
        return type(self)({k: c * coef for k, c in self.terms.items()})

    def coefficient(self, key) -> Scalar | None:
        return self.terms.get(key)

    def __repr__(self):
        return f"{type(self).__name__}({self.terms!r})"


def accumulate(store: dict, key, coef: Scalar):
    """In-place add with zero-dropping, for building combinations in loops."""
    if not coef:
        return
    s = store.get(key)
    s = coef if s is None else s + coef
    if s:
        store[key] = s
    else:
        store.pop(key, None)
