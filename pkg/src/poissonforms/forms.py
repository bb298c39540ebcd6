"""Differential forms with exact rational coefficients.

A form is a map from strictly increasing index tuples to coefficients;
the empty tuple holds the function part.  Mixed-degree sums are allowed,
graded operations split them into homogeneous parts.
"""

from __future__ import annotations

from .ratexpr import Chart, RatExpr
from .scalars import GaussianRational


def merge_indices(a: tuple, b: tuple):
    """Concatenate two strictly increasing tuples; returns (sign, merged)
    where sign counts the transpositions, or (0, None) on a repeat."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    out = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def sort_indices(idxs: tuple):
    """Sort a tuple of distinct indices; returns (sign, sorted) with the
    permutation sign, or (0, None) on a repeat."""
    sign = 1
    lst = list(idxs)
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(lst)):
        if lst[i - 1] == lst[i]:
            return 0, None
    return sign, tuple(lst)


class DiffForm:
    __slots__ = ("chart", "parts")

    def __init__(self, chart: Chart, parts: dict | None = None):
        pruned = {}
        if parts:
            for idxs, c in parts.items():
                if c:
                    pruned[idxs] = c
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "parts", pruned)

    def __setattr__(self, name, value):
        raise AttributeError("DiffForm is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(chart: Chart) -> "DiffForm":
        return DiffForm(chart)

    @staticmethod
    def from_scalar(f: RatExpr) -> "DiffForm":
        return DiffForm(f.chart, {(): f})

    @staticmethod
    def const(chart: Chart, c) -> "DiffForm":
        return DiffForm(chart, {(): RatExpr.const(chart, c)})

    @staticmethod
    def coord(chart: Chart, which) -> "DiffForm":
        return DiffForm.from_scalar(RatExpr.variable(chart, which))

    @staticmethod
    def d_coord(chart: Chart, which) -> "DiffForm":
        idx = chart.index(which) if isinstance(which, str) else which
        return DiffForm(chart, {(idx,): RatExpr.one(chart)})

    @staticmethod
    def monomial(coeff: RatExpr, idxs: tuple) -> "DiffForm":
        sign, sorted_idxs = sort_indices(tuple(idxs))
        if sign == 0:
            return DiffForm(coeff.chart)
        c = coeff if sign == 1 else -coeff
        return DiffForm(coeff.chart, {sorted_idxs: c})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self) -> bool:
        return bool(self.parts)

    def degrees(self) -> set:
        return {len(k) for k in self.parts}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        ds = self.degrees()
        if not ds:
            return 0
        if len(ds) > 1:
            raise ValueError("form has mixed degree")
        return ds.pop()

    def homogeneous_part(self, k: int) -> "DiffForm":
        return DiffForm(self.chart, {i: c for i, c in self.parts.items() if len(i) == k})

    def scalar_part(self) -> RatExpr:
        return self.parts.get((), RatExpr.zero(self.chart))

    def coeff(self, idxs: tuple) -> RatExpr:
        """Signed coefficient for an arbitrary tuple of distinct indices."""
        sign, sorted_idxs = sort_indices(tuple(idxs))
        if sign == 0:
            return RatExpr.zero(self.chart)
        c = self.parts.get(sorted_idxs)
        if c is None:
            return RatExpr.zero(self.chart)
        return c if sign == 1 else -c

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, DiffForm):
            if other.chart != self.chart:
                raise ValueError("forms live on different charts")
            return other
        if isinstance(other, RatExpr):
            return DiffForm.from_scalar(other)
        if isinstance(other, (int, GaussianRational)):
            return DiffForm.const(self.chart, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        parts = dict(self.parts)
        for idxs, c in o.parts.items():
            s = parts.get(idxs)
            parts[idxs] = c if s is None else s + c
        return DiffForm(self.chart, parts)

    __radd__ = __add__

    def __neg__(self):
        return DiffForm(self.chart, {i: -c for i, c in self.parts.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        """Wedge product; 0-forms act as scalar multipliers."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        parts: dict = {}
        for ia, ca in self.parts.items():
            for ib, cb in o.parts.items():
                sign, idxs = merge_indices(ia, ib)
                if sign == 0:
                    continue
                c = ca * cb
                if sign < 0:
                    c = -c
                s = parts.get(idxs)
                parts[idxs] = c if s is None else s + c
        return DiffForm(self.chart, parts)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def scale(self, c) -> "DiffForm":
        o = self._coerce(c)
        return o * self

    # -- calculus -----------------------------------------------------

    def partial_d(self, indices) -> "DiffForm":
        indices = tuple(indices)
        out = DiffForm.zero(self.chart)
        for idxs, c in self.parts.items():
            for g in indices:
                dc = c.diff(g)
                if dc:
                    out = out + DiffForm.monomial(dc, (g,) + idxs)
        return out

    def ext_d(self) -> "DiffForm":
        return self.partial_d(range(self.chart.n))

    def d_holo(self) -> "DiffForm":
        if not self.chart.is_complex():
            raise ValueError("holomorphic derivative needs a complex chart")
        return self.partial_d(sorted(self.chart.holo))

    def d_antiholo(self) -> "DiffForm":
        if not self.chart.is_complex():
            raise ValueError("antiholomorphic derivative needs a complex chart")
        holo = self.chart.holo
        return self.partial_d(j for j in range(self.chart.n) if j not in holo)

    def star(self) -> "DiffForm":
        """Graded conjugate: conjugate coefficients, swap paired indices,
        reverse factor order."""
        if not self.chart.is_complex():
            raise ValueError("star needs a complex chart")
        perm = self.chart.conj_perm()
        out: dict = {}
        for idxs, c in self.parts.items():
            k = len(idxs)
            sign, mapped = sort_indices(tuple(perm[j] for j in idxs))
            if (k * (k - 1) // 2) % 2:
                sign = -sign
            cc = c.conj()
            if sign < 0:
                cc = -cc
            s = out.get(mapped)
            out[mapped] = cc if s is None else s + cc
        return DiffForm(self.chart, out)

    # -- bidegree (complex charts) -------------------------------------

    def bidegree(self):
        """(p, q) for a form homogeneous in holomorphic and antiholomorphic
        factor counts; raises when mixed."""
        holo = self.chart.holo
        seen = set()
        for idxs in self.parts:
            p = sum(1 for j in idxs if j in holo)
            seen.add((p, len(idxs) - p))
        if not seen:
            return (0, 0)
        if len(seen) > 1:
            raise ValueError("form has mixed bidegree")
        return seen.pop()

    def bidegree_part(self, p: int, q: int) -> "DiffForm":
        holo = self.chart.holo
        parts = {}
        for idxs, c in self.parts.items():
            hp = sum(1 for j in idxs if j in holo)
            if hp == p and len(idxs) - hp == q:
                parts[idxs] = c
        return DiffForm(self.chart, parts)

    # -- comparison ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, GaussianRational, RatExpr)):
            other = self._coerce(other)
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self.chart == other.chart and self.parts == other.parts

    def __hash__(self):
        return hash((self.chart, frozenset(self.parts.items())))

    def __str__(self):
        from .printing import form_str

        return form_str(self)

    def __repr__(self):
        return f"DiffForm({self})"
