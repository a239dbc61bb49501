"""Homology and linking form of the double branched cover.

The symmetrized Seifert matrix A presents the first homology of the
double branched cover as Z^m / A Z^m, always a finite group of odd
order. This module extracts the cyclic decomposition from the Smith
normal form, keeps explicit generator vectors, and evaluates the
Q/Z-valued linking form lk(u, v) = u^T A^{-1} v mod 1 exactly.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import IntMatrix, ResidueQZ, det, rational_inverse, scaled_inverse, snf
from .seifert import SeifertMatrix, symmetrize

__all__ = [
    "GroupElement",
    "TorsionGroup",
    "LinkingForm",
    "double_cover_homology",
    "linking_form",
    "evaluate_linking",
    "self_linking",
]


@dataclass(frozen=True, order=True)
class GroupElement:
    """Coordinates of a torsion-group element, one per cyclic factor,
    each reduced into [0, d_i)."""

    coords: tuple

    def __post_init__(self):
        for i, x in enumerate(self.coords):
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"coordinate {i} is not an integer: {x!r}")

    @property
    def is_trivial(self):
        return all(x == 0 for x in self.coords)

    def __repr__(self):
        return f"GroupElement({list(self.coords)!r})"


def _prime_factors(n):
    """Distinct prime factors by trial division; group orders here are small."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class TorsionGroup:
    """The torsion group Z^m / A Z^m with a chosen generating set.

    invariant_factors is the increasing divisor chain (d_1 | d_2 | ...)
    of cyclic orders, all odd and > 1; generators[i] is an integer
    vector in Z^m whose class has order exactly d_i. Construction
    reverifies everything: the factor chain, the order of every
    generator, that the generators generate, and that the product of
    the factors equals |det A|.
    """

    __slots__ = ("_factors", "_gens", "_ambient", "_scaled", "_coord_data")

    def __init__(self, invariant_factors, generators, ambient):
        if not isinstance(ambient, IntMatrix):
            raise TypeError("ambient must be an IntMatrix")
        if ambient.rows != ambient.cols:
            raise ValueError("ambient presentation matrix must be square")
        factors = tuple(invariant_factors)
        gens = tuple(tuple(g) for g in generators)
        if len(factors) != len(gens):
            raise ValueError(f"{len(factors)} factors but {len(gens)} generators")
        for d in factors:
            if not isinstance(d, int) or isinstance(d, bool) or d <= 1:
                raise ValueError(f"invariant factor {d!r} must be an integer > 1")
            if d % 2 == 0:
                raise ValueError(f"invariant factor {d} is even; the group must have odd order")
        for prev, nxt in zip(factors, factors[1:]):
            if nxt % prev != 0:
                raise ValueError(f"invariant factor {prev} does not divide {nxt}")

        order = math.prod(factors)
        adet = det(ambient)
        if adet == 0:
            raise ValueError("presentation matrix is singular")
        if order != abs(adet):
            raise ValueError(
                f"invariant factors multiply to {order}, but |det A| = {abs(adet)}"
            )

        self._factors = factors
        self._gens = gens
        self._ambient = ambient
        self._scaled = scaled_inverse(ambient)
        self._coord_data = None

        m = ambient.rows
        for i, g in enumerate(gens):
            if len(g) != m:
                raise ValueError(f"generator {i} has length {len(g)}, expected {m}")
            self._check_order(i)
        self._check_generation()

    def _in_image(self, vec):
        """Whether vec lies in A Z^m, via the scaled inverse."""
        n, d = self._scaled
        dd = abs(d)
        return all(x % dd == 0 for x in n.apply(vec))

    def _check_order(self, i):
        d = self._factors[i]
        g = self._gens[i]
        if not self._in_image([d * x for x in g]):
            raise ValueError(f"generator {i} is not annihilated by its factor {d}")
        for p in _prime_factors(d):
            if self._in_image([(d // p) * x for x in g]):
                raise ValueError(f"generator {i} has order dividing {d}//{p}, not exactly {d}")

    def _augmented(self):
        """Smith data of [generators | A], cached; used both to confirm the
        generators generate and to solve for coordinates."""
        if self._coord_data is None:
            m = self._ambient.rows
            cols = list(self._gens) + [self._ambient.column(j) for j in range(m)]
            b = IntMatrix.from_columns(cols, m)
            res = snf(b)
            self._coord_data = res
        return self._coord_data

    def _check_generation(self):
        res = self._augmented()
        diag = res.diagonal()
        if len(diag) != self._ambient.rows or any(x != 1 for x in diag):
            raise ValueError("generators do not generate the quotient group")

    @property
    def invariant_factors(self):
        return self._factors

    @property
    def generators(self):
        return self._gens

    @property
    def ambient(self):
        return self._ambient

    @property
    def rank(self):
        return len(self._factors)

    @property
    def order(self):
        return math.prod(self._factors)

    def element(self, coords):
        """Reduce arbitrary integer coordinates into canonical range."""
        c = tuple(coords)
        if len(c) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(c)}")
        return GroupElement(tuple(x % d for x, d in zip(c, self._factors)))

    def elements(self):
        """All elements, in lexicographic coordinate order."""
        for c in itertools.product(*(range(d) for d in self._factors)):
            yield GroupElement(c)

    def coords_of(self, vec):
        """Coordinates of the class of an ambient integer vector.

        Solves [generators | A] t = vec through the cached Smith data,
        then double-checks the answer against the ambient image.
        """
        v = tuple(vec)
        m = self._ambient.rows
        if len(v) != m:
            raise ValueError(f"vector has length {len(v)}, expected {m}")
        res = self._augmented()
        u = res.P.apply(v)
        s = tuple(u) + (0,) * self.rank
        t = res.Q.apply(s)
        coords = tuple(t[j] % d for j, d in zip(range(self.rank), self._factors))
        diff = [sum(c * g[i] for c, g in zip(coords, self._gens)) - v[i] for i in range(m)]
        if not self._in_image(diff):
            raise ArithmeticError("coordinate solve failed its self-check")
        return GroupElement(coords)

    def pairing(self, u, v):
        """lk of two ambient integer vectors, as a residue mod 1."""
        n, d = self._scaled
        nv = n.apply(v)
        total = sum(a * b for a, b in zip(u, nv))
        return ResidueQZ.of(Fraction(total, d))

    def element_pairing(self, x, y):
        """lk of two elements given by coordinates."""
        ux = [sum(c * g[i] for c, g in zip(x.coords, self._gens))
              for i in range(self._ambient.rows)]
        uy = [sum(c * g[i] for c, g in zip(y.coords, self._gens))
              for i in range(self._ambient.rows)]
        return self.pairing(ux, uy)

    def __eq__(self, other):
        return (
            isinstance(other, TorsionGroup)
            and self._factors == other._factors
            and self._gens == other._gens
            and self._ambient == other._ambient
        )

    def __hash__(self):
        return hash((self._factors, self._gens, self._ambient))

    def __repr__(self):
        return f"TorsionGroup(factors={list(self._factors)!r})"


@dataclass(frozen=True)
class LinkingForm:
    """The linking form on a TorsionGroup, tabulated on its generators.

    matrix[i][j] is lk(l_i, l_j) as a residue mod 1. Construction
    recomputes every entry from the group's presentation and checks
    symmetry, annihilation (d_i * entry integral), and odd denominators.
    """

    group: TorsionGroup
    matrix: tuple

    def __post_init__(self):
        r = self.group.rank
        if len(self.matrix) != r or any(len(row) != r for row in self.matrix):
            raise ValueError(f"linking matrix must be {r}x{r}")
        gens = self.group.generators
        for i in range(r):
            for j in range(r):
                entry = self.matrix[i][j]
                if not isinstance(entry, ResidueQZ):
                    raise TypeError(f"entry ({i},{j}) is not a residue")
                if entry != self.group.pairing(gens[i], gens[j]):
                    raise ValueError(f"entry ({i},{j}) does not match the presentation")
                if entry != self.matrix[j][i]:
                    raise ValueError(f"linking matrix is not symmetric at ({i},{j})")
                d = self.group.invariant_factors[i]
                if (d * entry.value).denominator != 1:
                    raise ValueError(f"entry ({i},{j}) is not annihilated by {d}")
                if entry.denominator % 2 == 0:
                    raise ValueError(f"entry ({i},{j}) has even denominator")

    @property
    def rank(self):
        return self.group.rank

    def __repr__(self):
        rows = [[str(x) for x in row] for row in self.matrix]
        return f"LinkingForm({rows!r})"


def double_cover_homology(v):
    """First homology of the double branched cover of a knot.

    Runs the Smith normal form of A = V + V^T and reads off the cyclic
    decomposition; the generator for the factor at diagonal position i
    is column i of P^{-1}, which the TorsionGroup constructor then
    verifies has exactly the right order.
    """
    if not isinstance(v, SeifertMatrix):
        raise TypeError("double_cover_homology expects a SeifertMatrix")
    a = symmetrize(v)
    res = snf(a)
    diag = res.diagonal()
    if any(x == 0 for x in diag):
        raise ArithmeticError("V + V^T is singular; input is corrupt")
    pinv = rational_inverse(res.P).to_int()
    positions = [i for i, x in enumerate(diag) if x > 1]
    gens = [pinv.column(i) for i in positions]
    return TorsionGroup(res.invariant_factors, gens, a)


def linking_form(group):
    """Tabulate the linking form of a TorsionGroup on its generators."""
    if not isinstance(group, TorsionGroup):
        raise TypeError("linking_form expects a TorsionGroup")
    gens = group.generators
    matrix = tuple(
        tuple(group.pairing(gi, gj) for gj in gens) for gi in gens
    )
    return LinkingForm(group, matrix)


def evaluate_linking(a, u, v):
    """lk of two ambient integer vectors through a presentation matrix:
    u^T A^{-1} v reduced mod 1."""
    if not isinstance(a, IntMatrix):
        raise TypeError("evaluate_linking expects an IntMatrix")
    if a.rows != a.cols:
        raise ValueError("presentation matrix must be square")
    uu, vv = tuple(u), tuple(v)
    if len(uu) != a.rows or len(vv) != a.rows:
        raise ValueError("vector length does not match the matrix")
    n, d = scaled_inverse(a)
    total = sum(x * y for x, y in zip(uu, n.apply(vv)))
    return ResidueQZ.of(Fraction(total, d))


def self_linking(form, c):
    """lk(c, c) for an element given by coordinates on the form's group."""
    if not isinstance(form, LinkingForm):
        raise TypeError("self_linking expects a LinkingForm")
    if not isinstance(c, GroupElement):
        raise TypeError("self_linking expects a GroupElement")
    factors = form.group.invariant_factors
    if len(c.coords) != len(factors):
        raise ValueError(f"expected {len(factors)} coordinates, got {len(c.coords)}")
    for i, (x, d) in enumerate(zip(c.coords, factors)):
        if not 0 <= x < d:
            raise ValueError(f"coordinate {i} = {x} is outside [0, {d})")
    total = Fraction(0)
    for i, xi in enumerate(c.coords):
        if xi == 0:
            continue
        for j, xj in enumerate(c.coords):
            if xj:
                total += xi * xj * form.matrix[i][j].value
    return ResidueQZ.of(total)
