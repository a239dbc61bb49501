"""Dihedral quotients and the extension obstruction.

A surjection of the knot group onto the dihedral group D_n (n odd)
corresponds to a nonzero character on the double-cover homology with
values in the order-n subgroup of Q/Z. The character extends over a
spanning surface pushed into the 4-ball if and only if its
self-linking vanishes; equivalently, a characteristic knot on the
surface is zero-framable after stabilization. Both routes are
implemented here, independently, and the character built from a
characteristic class cross-checks one against the other.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cover import GroupElement, LinkingForm, TorsionGroup, double_cover_homology, linking_form, self_linking
from .errors import CriterionInapplicableError, EnumerationCapError, require_odd
from .exact import ResidueQZ, snf
from .seifert import SeifertMatrix, SurfaceClass, symmetrize

__all__ = [
    "SCOPE_ORIENTABLE_B4",
    "SCOPE_ALSO_NONORIENTABLE",
    "SCOPE_ALSO_ANY_AMBIENT",
    "SCOPE_ALL_DIHEDRAL_IF_3_DIVIDES_N",
    "DEFAULT_ENUM_CAP",
    "Character",
    "QuotientClass",
    "ExtensionVerdict",
    "CharKnotClass",
    "enumerate_isotropic",
    "surjective_characters",
    "quotient_classes",
    "verdict",
    "is_characteristic_class",
    "characteristic_knot_classes",
    "char_knot_to_character",
    "seifert_criterion",
    "zero_framed_exists",
    "cyclic_criterion",
]

SCOPE_ORIENTABLE_B4 = "orientable-B4"
SCOPE_ALSO_NONORIENTABLE = "also-nonorientable"
SCOPE_ALSO_ANY_AMBIENT = "also-any-ambient-4-manifold"
SCOPE_ALL_DIHEDRAL_IF_3_DIVIDES_N = "obstructs-all-if-3-divides-n"

DEFAULT_ENUM_CAP = 1_000_000


def _check_n(n):
    require_odd(n)
    if n <= 1:
        raise ValueError(f"dihedral order must be > 1, got {n}")
    return n


def _check_cap(order, enum_cap):
    if enum_cap is not None and order > enum_cap:
        raise EnumerationCapError(
            f"torsion group has {order} elements, above the enumeration cap {enum_cap}"
        )


def _character_values(form, coords):
    """Pairing of the element with each generator, as Fractions mod 1."""
    out = []
    for j in range(form.rank):
        total = Fraction(0)
        for i, x in enumerate(coords):
            if x:
                total += x * form.matrix[i][j].value
        out.append(ResidueQZ.of(total))
    return tuple(out)


def _image_order(form, coords):
    """Order of the subgroup of Q/Z generated by the character's values."""
    order = 1
    for r in _character_values(form, coords):
        order = math.lcm(order, r.denominator)
    return order


@dataclass(frozen=True)
class Character:
    """A character of the double-cover homology with image exactly the
    order-n subgroup of Q/Z, named by the element c representing it
    through the linking form."""

    form: LinkingForm
    c: GroupElement
    n: int

    def __post_init__(self):
        _check_n(self.n)
        factors = self.form.group.invariant_factors
        if len(self.c.coords) != len(factors):
            raise ValueError(f"expected {len(factors)} coordinates, got {len(self.c.coords)}")
        for i, (x, d) in enumerate(zip(self.c.coords, factors)):
            if not 0 <= x < d:
                raise ValueError(f"coordinate {i} = {x} is outside [0, {d})")
        got = _image_order(self.form, self.c.coords)
        if got != self.n:
            raise ValueError(f"character image has order {got}, expected {self.n}")

    def values(self):
        """The character on each group generator."""
        return _character_values(self.form, self.c.coords)

    def evaluate(self, x):
        """The character on an arbitrary element given by coordinates."""
        if not isinstance(x, GroupElement):
            raise TypeError("evaluate expects a GroupElement")
        total = Fraction(0)
        for xi, row in zip(self.c.coords, self.form.matrix):
            if xi:
                for yj, entry in zip(x.coords, row):
                    if yj:
                        total += xi * yj * entry.value
        return ResidueQZ.of(total)

    def self_linking(self):
        return self_linking(self.form, self.c)


def _units(n):
    return tuple(u for u in range(1, n) if math.gcd(u, n) == 1)


def _unit_act(u, coords, factors):
    return tuple((u * x) % d for x, d in zip(coords, factors))


@dataclass(frozen=True)
class QuotientClass:
    """An orbit of surjective characters under the unit action, which is
    exactly one dihedral quotient up to equivalence. All members share
    the extension verdict; construction rechecks that and closure."""

    members: tuple
    n: int

    def __post_init__(self):
        if not self.members:
            raise ValueError("a quotient class cannot be empty")
        form = self.members[0].form
        for ch in self.members:
            if not isinstance(ch, Character):
                raise TypeError("members must be Characters")
            if ch.n != self.n:
                raise ValueError(f"member has order {ch.n}, class has order {self.n}")
            if ch.form != form:
                raise ValueError("members live on different linking forms")
        coords = [ch.c.coords for ch in self.members]
        if coords != sorted(coords):
            raise ValueError("members must be sorted by coordinates")
        factors = form.group.invariant_factors
        orbit = {_unit_act(u, coords[0], factors) for u in _units(self.n)}
        if orbit != set(coords):
            raise ValueError("members are not one orbit of the unit action")
        verdicts = {ch.self_linking().is_zero for ch in self.members}
        if len(verdicts) != 1:
            raise ValueError("members disagree on the extension verdict")

    @property
    def representative(self):
        return self.members[0]

    @property
    def extends(self):
        return self.representative.self_linking().is_zero

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class ExtensionVerdict:
    """Whether a character extends over a pushed-in spanning surface,
    with the scope tags the verdict carries. A failed verdict also
    rules out non-orientable surfaces and arbitrary oriented ambient
    4-manifolds; when 3 | n it obstructs every dihedral order at once."""

    extends: bool
    self_linking: ResidueQZ
    scope_note: tuple
    surjective: bool = True

    def __post_init__(self):
        if self.extends != self.self_linking.is_zero:
            raise ValueError("verdict contradicts the self-linking value")


def enumerate_isotropic(form, n, *, enum_cap=DEFAULT_ENUM_CAP):
    """All elements with vanishing self-linking, the trivial one included,
    in lexicographic coordinate order."""
    _check_n(n)
    group = form.group
    _check_cap(group.order, enum_cap)
    return tuple(c for c in group.elements() if self_linking(form, c).is_zero)


def surjective_characters(group, form, n, *, enum_cap=DEFAULT_ENUM_CAP):
    """All characters with image exactly the order-n subgroup of Q/Z,
    in lexicographic coordinate order."""
    _check_n(n)
    if not isinstance(group, TorsionGroup):
        raise TypeError("surjective_characters expects a TorsionGroup")
    if form.group != group:
        raise ValueError("linking form does not belong to the given group")
    _check_cap(group.order, enum_cap)
    if group.order % n != 0:
        return ()
    out = []
    for c in group.elements():
        if _image_order(form, c.coords) == n:
            out.append(Character(form, c, n))
    return tuple(out)


def quotient_classes(chars, n):
    """Group surjective characters into unit-action orbits.

    Each orbit is one dihedral quotient up to equivalence. Classes are
    sorted by their representative, members within a class by
    coordinates. The input must be closed under the unit action.
    """
    _check_n(n)
    chars = tuple(chars)
    if not chars:
        return ()
    form = chars[0].form
    factors = form.group.invariant_factors
    by_coords = {}
    for ch in chars:
        if not isinstance(ch, Character):
            raise TypeError("quotient_classes expects Characters")
        if ch.n != n:
            raise ValueError(f"character has order {ch.n}, expected {n}")
        if ch.form != form:
            raise ValueError("characters live on different linking forms")
        by_coords[ch.c.coords] = ch
    units = _units(n)
    seen = set()
    classes = []
    for coords in sorted(by_coords):
        if coords in seen:
            continue
        orbit = set()
        for u in units:
            moved = _unit_act(u, coords, factors)
            if moved not in by_coords:
                raise ValueError("character set is not closed under the unit action")
            orbit.add(moved)
        seen |= orbit
        members = tuple(by_coords[c] for c in sorted(orbit))
        classes.append(QuotientClass(members, n))
    return tuple(classes)


def _scope_tags(extends, n):
    if extends:
        return (SCOPE_ORIENTABLE_B4,)
    tags = [SCOPE_ORIENTABLE_B4, SCOPE_ALSO_NONORIENTABLE, SCOPE_ALSO_ANY_AMBIENT]
    if n % 3 == 0:
        tags.append(SCOPE_ALL_DIHEDRAL_IF_3_DIVIDES_N)
    return tuple(tags)


def verdict(form, c, n=None):
    """Extension verdict for a character, or for a bare element.

    A Character carries its own n. A bare GroupElement needs n passed
    explicitly; the degenerate (non-surjective) cases, the trivial
    element included, are allowed and flagged through the surjective
    field.
    """
    if isinstance(c, Character):
        if n is not None and n != c.n:
            raise ValueError(f"character has order {c.n}, but n = {n} was passed")
        n = c.n
        if form != c.form:
            raise ValueError("character does not live on the given form")
        elem = c.c
        surjective = True
    elif isinstance(c, GroupElement):
        if n is None:
            raise ValueError("a bare element needs an explicit n")
        _check_n(n)
        elem = c
        surjective = _image_order(form, elem.coords) == n
    else:
        raise TypeError("verdict expects a Character or a GroupElement")
    sl = self_linking(form, elem)
    extends = sl.is_zero
    return ExtensionVerdict(
        extends=extends,
        self_linking=sl,
        scope_note=_scope_tags(extends, n),
        surjective=surjective,
    )


def is_characteristic_class(v, coords, n):
    """Whether the surface class is characteristic mod n and primitive
    there: (V + V^T) beta = 0 mod n and gcd(entries, n) = 1."""
    _check_n(n)
    if isinstance(coords, SurfaceClass):
        coords = coords.coords
    c = tuple(coords)
    if len(c) != v.size:
        raise ValueError(f"class has {len(c)} coordinates, matrix is {v.size}x{v.size}")
    a = symmetrize(v)
    if any(x % n != 0 for x in a.apply(c)):
        return False
    return math.gcd(*c, n) == 1


class CharKnotClass:
    """A characteristic surface class mod n: (V + V^T) beta = 0 mod n,
    primitive mod n. Stored with coordinates reduced into [0, n)."""

    __slots__ = ("_v", "_beta", "_n")

    def __init__(self, v, beta, n):
        _check_n(n)
        if not isinstance(v, SeifertMatrix):
            raise TypeError("CharKnotClass expects a SeifertMatrix")
        if isinstance(beta, SurfaceClass):
            beta = beta.coords
        b = tuple(x % n for x in beta)
        if not is_characteristic_class(v, b, n):
            raise ValueError(f"class {list(beta)} is not characteristic and primitive mod {n}")
        self._v = v
        self._beta = b
        self._n = n

    @property
    def V(self):
        return self._v

    @property
    def beta(self):
        return self._beta

    @property
    def n(self):
        return self._n

    def lift(self):
        """The canonical integer lift, entries in [0, n)."""
        return self._beta

    def as_surface_class(self):
        return SurfaceClass(self._beta)

    def form_value(self):
        """beta^T (V + V^T) beta on the canonical lift."""
        a = symmetrize(self._v)
        return sum(x * y for x, y in zip(self._beta, a.apply(self._beta)))

    def __eq__(self, other):
        return (
            isinstance(other, CharKnotClass)
            and self._v == other._v
            and self._beta == other._beta
            and self._n == other._n
        )

    def __hash__(self):
        return hash((self._v, self._beta, self._n))

    def __repr__(self):
        return f"CharKnotClass(beta={list(self._beta)!r}, n={self._n})"


def characteristic_knot_classes(v, n, *, enum_cap=None):
    """All characteristic classes mod n, sorted by coordinates.

    The kernel of A mod n is parametrized through the Smith form:
    with P A Q = D and beta = Q y, the condition D y = 0 mod n pins
    each y_i to multiples of n / gcd(D_ii, n). Non-primitive solutions
    are then filtered out.
    """
    _check_n(n)
    if not isinstance(v, SeifertMatrix):
        raise TypeError("characteristic_knot_classes expects a SeifertMatrix")
    a = symmetrize(v)
    res = snf(a)
    diag = res.diagonal()
    moduli = [math.gcd(d, n) for d in diag]
    total = math.prod(moduli)
    if enum_cap is not None and total > enum_cap:
        raise EnumerationCapError(
            f"kernel mod {n} has {total} elements, above the enumeration cap {enum_cap}"
        )
    out = []
    for steps in itertools.product(*(range(g) for g in moduli)):
        y = [t * (n // g) for t, g in zip(steps, moduli)]
        beta = tuple(x % n for x in res.Q.apply(y))
        if math.gcd(*beta, n) == 1:
            out.append(CharKnotClass(v, beta, n))
    out.sort(key=lambda ck: ck.beta)
    return tuple(out)


def char_knot_to_character(v, beta, form=None):
    """The character corresponding to a characteristic class.

    The class of w = (1/n) A beta-lift in the cover homology pairs
    through the linking form to give the character. Passing a
    precomputed linking form avoids rebuilding the group. The result
    is rechecked: its self-linking must equal the form value of the
    lift divided by n^2, mod 1.
    """
    if not isinstance(beta, CharKnotClass):
        raise TypeError("char_knot_to_character expects a CharKnotClass")
    if beta.V != v:
        raise ValueError("class was built on a different Seifert matrix")
    if form is None:
        form = linking_form(double_cover_homology(v))
    group = form.group
    a = symmetrize(v)
    if group.ambient != a:
        raise ValueError("linking form was built on a different matrix")
    n = beta.n
    lift = beta.lift()
    av = a.apply(lift)
    if any(x % n != 0 for x in av):
        raise ArithmeticError("characteristic class failed A beta = 0 mod n; input is corrupt")
    w = tuple(x // n for x in av)
    c = group.coords_of(w)
    if __debug__:
        shifted = tuple(x + n for x in lift)
        w2 = tuple(x // n for x in a.apply(shifted))
        if group.coords_of(w2) != c:
            raise ArithmeticError("character depends on the chosen lift; solver is corrupt")
    ch = Character(form, c, n) if _image_order(form, c.coords) == n else None
    expected = ResidueQZ.of(Fraction(beta.form_value(), n * n))
    got = self_linking(form, c)
    if got != expected:
        raise ArithmeticError(
            f"self-linking {got} disagrees with form value {expected}; routes are inconsistent"
        )
    if ch is None:
        raise ArithmeticError(
            "characteristic class produced a non-surjective character; input is corrupt"
        )
    return ch


def seifert_criterion(v, beta):
    """Surface-side extension test: the form value of the class must be
    divisible by n^2. Equivalent to the vanishing of the corresponding
    character's self-linking."""
    if not isinstance(beta, CharKnotClass):
        raise TypeError("seifert_criterion expects a CharKnotClass")
    if beta.V != v:
        raise ValueError("class was built on a different Seifert matrix")
    n = beta.n
    return beta.form_value() % (n * n) == 0


def zero_framed_exists(v, beta):
    """Whether some stabilization makes the class zero-framed. Decided by
    the same divisibility as seifert_criterion."""
    return seifert_criterion(v, beta)


def cyclic_criterion(group, n):
    """Order shortcut for cyclic covers: extendable exactly when n^2
    divides the group order. Inapplicable to non-cyclic groups."""
    _check_n(n)
    if not isinstance(group, TorsionGroup):
        raise TypeError("cyclic_criterion expects a TorsionGroup")
    if group.rank > 1:
        raise CriterionInapplicableError(
            f"criterion inapplicable: group with factors {list(group.invariant_factors)} is not cyclic"
        )
    if group.order % n != 0:
        raise ValueError(f"n = {n} does not divide the group order {group.order}")
    return group.order % (n * n) == 0
