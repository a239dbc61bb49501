"""Seifert matrices and the constructions performed on them.

A Seifert matrix here is a square integer matrix V of even size with
det(V - V^T) = 1, the linking data of a genus-g spanning surface. The
empty matrix is the unknot. Homology classes on the surface are plain
integer coordinate vectors in the basis implicit in V.
"""

from dataclasses import dataclass, field

from .errors import SeifertMatrixError, StabilizationError, require_odd
from .exact import IntMatrix, det, four_squares

__all__ = [
    "SeifertMatrix",
    "SurfaceClass",
    "ZeroFramedStabilization",
    "symmetrize",
    "knot_determinant",
    "twist_knot",
    "connected_sum",
    "stabilize_zero_framed",
]


class SeifertMatrix:
    """A validated Seifert matrix.

    Accepts an IntMatrix or any iterable of integer rows; the empty
    matrix stands for the unknot. Validation checks squareness, even
    size, and det(V - V^T) = 1 exactly.
    """

    __slots__ = ("_m",)

    def __init__(self, rows):
        m = rows if isinstance(rows, IntMatrix) else IntMatrix(rows)
        if m.rows != m.cols:
            raise SeifertMatrixError(f"Seifert matrix must be square, got {m.rows}x{m.cols}")
        if m.rows % 2 != 0:
            raise SeifertMatrixError(f"Seifert matrix must have even size, got {m.rows}")
        d = det(m - m.transpose())
        if d != 1:
            raise SeifertMatrixError(f"det(V - V^T) must be 1, got {d}")
        self._m = m

    @property
    def matrix(self):
        return self._m

    @property
    def size(self):
        return self._m.rows

    @property
    def genus(self):
        return self._m.rows // 2

    def __getitem__(self, key):
        return self._m[key]

    def __eq__(self, other):
        return isinstance(other, SeifertMatrix) and self._m == other._m

    def __hash__(self):
        return hash(self._m)

    def __repr__(self):
        return f"SeifertMatrix({self._m.to_lists()!r})"


class SurfaceClass:
    """An integer homology class on the spanning surface, as coordinates
    in the basis of the Seifert matrix."""

    __slots__ = ("_coords",)

    def __init__(self, coords):
        c = tuple(coords)
        for i, x in enumerate(c):
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"coordinate {i} is not an integer: {x!r}")
        self._coords = c

    @property
    def coords(self):
        return self._coords

    def __len__(self):
        return len(self._coords)

    def __iter__(self):
        return iter(self._coords)

    def __eq__(self, other):
        return isinstance(other, SurfaceClass) and self._coords == other._coords

    def __hash__(self):
        return hash(self._coords)

    def __repr__(self):
        return f"SurfaceClass({list(self._coords)!r})"


def symmetrize(v):
    """V + V^T, the intersection-form presentation matrix."""
    if not isinstance(v, SeifertMatrix):
        raise TypeError("symmetrize expects a SeifertMatrix")
    m = v.matrix
    return m + m.transpose()


def knot_determinant(v):
    """|det(V + V^T)|. Always odd for a valid Seifert matrix."""
    d = abs(det(symmetrize(v)))
    if d % 2 == 0:
        raise ArithmeticError(f"knot determinant came out even ({d}); input is corrupt")
    return d


def twist_knot(m):
    """The genus-1 twist family member with m full twists in one band.

    m = -1 is the trefoil, m = 2 is the knot 6_1.
    """
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"twist parameter must be an integer, got {m!r}")
    return SeifertMatrix([[-1, 1], [0, m]])


def connected_sum(v1, v2):
    """Block sum of two Seifert matrices."""
    if not isinstance(v1, SeifertMatrix) or not isinstance(v2, SeifertMatrix):
        raise TypeError("connected_sum expects SeifertMatrix arguments")
    return SeifertMatrix(IntMatrix.block_diag(v1.matrix, v2.matrix))


# One stabilizing band pair contributes this block (sign +1) or its
# negative-twist mirror (sign -1); both have zero-framed second band.
def _stab_block(sign):
    return IntMatrix([[0, -1], [0, 0]]) if sign > 0 else IntMatrix([[0, 1], [0, 0]])


@dataclass(frozen=True)
class ZeroFramedStabilization:
    """Result of stabilize_zero_framed.

    Iterates as the pair (matrix, cls) so it unpacks like a 2-tuple;
    the remaining fields record how the stabilization was laid out.
    """

    matrix: SeifertMatrix
    cls: SurfaceClass
    blocks_added: int = 0
    flipped_sign: bool = False
    squares: tuple = field(default=())

    def __iter__(self):
        return iter((self.matrix, self.cls))


def stabilize_zero_framed(v, beta, n):
    """Stabilize the surface so the class beta becomes zero-framed.

    Requires beta to be characteristic mod n with form value divisible
    by n^2. Four band pairs are added, carrying n times the four-square
    parts of the needed correction (largest square first); when the
    form value is negative the blocks are mirrored, which is recorded
    in flipped_sign. A zero form value returns the input unchanged.
    """
    require_odd(n)
    if n <= 1:
        raise ValueError(f"stabilization needs n > 1, got {n}")
    if not isinstance(v, SeifertMatrix):
        raise TypeError("stabilize_zero_framed expects a SeifertMatrix")
    if not isinstance(beta, SurfaceClass):
        beta = SurfaceClass(beta)
    if len(beta) != v.size:
        raise ValueError(f"class has {len(beta)} coordinates, matrix is {v.size}x{v.size}")

    from .obstruction import is_characteristic_class  # cycle: obstruction builds on seifert

    if not is_characteristic_class(v, beta.coords, n):
        raise StabilizationError(f"class {list(beta.coords)} is not characteristic mod {n}")

    a = symmetrize(v)
    value = sum(x * y for x, y in zip(beta.coords, a.apply(beta.coords)))
    if value % (n * n) != 0:
        raise StabilizationError(
            f"form value {value} is not divisible by {n}^2; the class cannot be zero-framed"
        )
    if value == 0:
        return ZeroFramedStabilization(v, beta)

    scaled = abs(value) // (n * n)
    if scaled % 2 != 0:
        raise ArithmeticError(f"form value {value} over {n}^2 should be even; input is corrupt")
    squares = tuple(sorted(four_squares(scaled // 2), reverse=True))
    sign = 1 if value > 0 else -1

    blocks = [v.matrix] + [_stab_block(sign)] * 4
    v2 = SeifertMatrix(IntMatrix.block_diag(*blocks))
    # each block pair holds (n*s, n*s): its form contribution is -sign * 2 (n*s)^2
    extra = []
    for s in squares:
        extra.extend((n * s, n * s))
    beta2 = SurfaceClass(beta.coords + tuple(extra))

    a2 = symmetrize(v2)
    check = sum(x * y for x, y in zip(beta2.coords, a2.apply(beta2.coords)))
    if check != 0:
        raise ArithmeticError(f"stabilized form value should be 0, got {check}")
    return ZeroFramedStabilization(v2, beta2, blocks_added=4, flipped_sign=sign < 0,
                                   squares=squares)
