"""First homology of the double branched cover, linking forms, characters.

H1 of the 2-fold cover branched over a knot with Seifert matrix V is
presented by the symmetric matrix V + V^T; its order |det(V + V^T)| is
odd.  The linking form on that group is

    lambda(x, y) = -x^T (V + V^T)^{-1} y   (mod 1),

computed exactly with rationals.  (The sign makes the trefoil satisfy
lambda(g, g) = 2/3 on a generator g, the standard convention for the
form presented by -(V+V^T)^{-1}.)

Characters into Q/Z are stored by their values on the fixed
invariant-factor generators; the embedding of a cyclic group Z_n into
Q/Z is always 1 -> 1/n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd

from .errors import HypothesisViolation
from .knots import SeifertMatrix
from .snf import smith_normal_form


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{d1} x ... x Z_{dr} with d1 | d2 | ... | dr, all > 1."""

    factors: tuple

    def __post_init__(self):
        fs = tuple(int(d) for d in self.factors)
        object.__setattr__(self, "factors", fs)
        assert all(d > 1 for d in fs)
        assert all(fs[i + 1] % fs[i] == 0 for i in range(len(fs) - 1))

    @property
    def order(self):
        n = 1
        for d in self.factors:
            n *= d
        return n

    @property
    def rank(self):
        return len(self.factors)

    @property
    def exponent(self):
        return self.factors[-1] if self.factors else 1

    @property
    def is_trivial(self):
        return not self.factors

    def zero(self):
        return (0,) * len(self.factors)

    def reduce(self, coords):
        if isinstance(coords, int):
            coords = (coords,)
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.factors):
            raise HypothesisViolation(
                f"element needs {len(self.factors)} coordinates, got {len(coords)}"
            )
        return tuple(c % d for c, d in zip(coords, self.factors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.factors))

    def elements(self):
        return product(*(range(d) for d in self.factors))

    def generates(self, coords):
        """Does the cyclic subgroup of coords fill the whole group?"""
        coords = self.reduce(coords)
        if not self.factors:
            return True
        # the element's order must equal the group exponent, and the
        # group must itself be cyclic for a single generator to work
        if len(self.factors) > 1:
            return False
        return gcd(coords[0], self.factors[0]) == 1

    def describe(self):
        if not self.factors:
            return "trivial"
        return " x ".join(f"Z_{d}" for d in self.factors)


@dataclass(frozen=True)
class Character:
    """Homomorphism G -> Q/Z by values on invariant-factor generators."""

    values: tuple  # Fractions in [0, 1)

    def __post_init__(self):
        vals = tuple(Fraction(v) % 1 for v in self.values)
        object.__setattr__(self, "values", vals)

    def evaluate(self, coords):
        assert len(coords) == len(self.values)
        return sum((c * v for c, v in zip(coords, self.values)), Fraction(0)) % 1

    @property
    def order(self):
        n = 1
        for v in self.values:
            d = v.denominator
            n = n * d // gcd(n, d)
        return n

    @property
    def is_zero(self):
        return all(v == 0 for v in self.values)

    def __neg__(self):
        return Character(tuple((-v) % 1 for v in self.values))

    def sort_key(self):
        return tuple((v.numerator, v.denominator) for v in self.values)


def _fraction_inverse_image(sym, columns):
    """Solve A X = C exactly over Q; A = sym (nonsingular), C = columns."""
    n = len(sym)
    a = [[Fraction(sym[r][c]) for c in range(n)] for r in range(n)]
    # augmented elimination: carry the right-hand sides along
    rhs = [[Fraction(columns[k][r]) for k in range(len(columns))] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        rhs[col] = [v * inv for v in rhs[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                rhs[r] = [v - f * w for v, w in zip(rhs[r], rhs[col])]
    # rhs rows now hold A^{-1} C
    return [tuple(rhs[r][k] for r in range(n)) for k in range(len(columns))]


@dataclass(frozen=True)
class CoverPresentation:
    """Homology of the double branched cover with explicit coordinates."""

    group: FiniteAbelianGroup
    sym: tuple                 # V + V^T
    u_rows: tuple              # change of basis: coords(z) = (U z) mod diag
    positions: tuple           # indices of nontrivial diagonal entries
    diag: tuple
    generator_lifts: tuple     # integer vectors mapping onto the generators

    @cached_property
    def linking_matrix(self):
        """r x r Fractions mod 1 on the generators (exact, computed lazily --
        the Gauss-Jordan solve is cubic and only linking consumers need it)."""
        r = len(self.positions)
        if r == 0:
            return ()
        inv_cols = _fraction_inverse_image(self.sym, self.generator_lifts)
        return tuple(
            tuple(
                (-sum(Fraction(a) * b
                      for a, b in zip(self.generator_lifts[i], inv_cols[j]))) % 1
                for j in range(r)
            )
            for i in range(r)
        )

    def coords(self, z):
        z = tuple(int(v) for v in z)
        assert len(z) == len(self.sym)
        uz = [sum(r * v for r, v in zip(row, z)) for row in self.u_rows]
        return tuple(uz[i] % self.diag[i] for i in self.positions)

    def linking(self, x, y):
        if self.group.is_trivial:
            raise HypothesisViolation("linking form needs a nontrivial group")
        x = self.group.reduce(x)
        y = self.group.reduce(y)
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * yj * self.linking_matrix[i][j]
        return total % 1

    def character_from_element(self, z):
        """Duality G -> G^: the character lambda(z, -)."""
        z = self.group.reduce(z)
        return Character(tuple(self.linking(z, g) for g in _unit_coords(self.group)))


def _unit_coords(group):
    r = len(group.factors)
    return [tuple(1 if i == k else 0 for i in range(r)) for k in range(r)]


_presentation_cache = {}


def cover_presentation(v):
    """Full double-branched-cover package for a Seifert matrix (cached)."""
    key = v.rows
    if key in _presentation_cache:
        return _presentation_cache[key]
    sym = v.symmetrized()
    n = len(sym)
    if n == 0:
        pres = CoverPresentation(FiniteAbelianGroup(()), (), (), (), (), ())
        _presentation_cache[key] = pres
        return pres
    diag, u_rows, uinv_rows = smith_normal_form(sym)
    diag = tuple(diag)
    u_rows = tuple(tuple(r) for r in u_rows)
    assert all(d > 0 for d in diag), "V + V^T is nonsingular for genuine knots"
    det = 1
    for d in diag:
        det *= d
    assert det % 2 == 1, "double branched cover homology has odd order"
    positions = tuple(i for i, d in enumerate(diag) if d > 1)
    group = FiniteAbelianGroup(tuple(diag[i] for i in positions))
    lifts = tuple(
        tuple(uinv_rows[r][i] for r in range(n)) for i in positions
    )
    pres = CoverPresentation(group, sym, u_rows, positions, diag, lifts)
    _presentation_cache[key] = pres
    return pres


def homology_from_seifert(v):
    """Invariant factors of H1 of the double branched cover."""
    assert isinstance(v, SeifertMatrix)
    return cover_presentation(v).group


def linking_form(v, x, y):
    """lambda(x, y) = -x^T (V+V^T)^{-1} y mod 1 on cover homology classes."""
    return cover_presentation(v).linking(x, y)


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def characters_of_order(group, p, max_power=None):
    """All characters of the p-primary part with order dividing p^max_power.

    Returned sorted, zero character included; the list is closed under
    negation (chi and -chi always appear together).
    """
    if not _is_prime(p):
        raise HypothesisViolation(f"{p} is not prime")
    if group.order % p != 0:
        raise HypothesisViolation(
            f"{p} does not divide the group order {group.order}"
        )
    grids = []
    for d in group.factors:
        k = 0
        dd = d
        while dd % p == 0:
            k += 1
            dd //= p
        if max_power is not None:
            k = min(k, max_power)
        q = p ** k
        grids.append([Fraction(c, q) for c in range(q)])
    chars = [Character(tuple(vals)) for vals in product(*grids)]
    chars.sort(key=Character.sort_key)
    return chars


@dataclass(frozen=True)
class PatternCover:
    """Cover data of a satellite pattern: H1(M2(P(U))) and the axis curves."""

    group: FiniteAbelianGroup
    v1_class: tuple
    v2_class: tuple
    winding_number: int
    linking_matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "v1_class", self.group.reduce(self.v1_class))
        object.__setattr__(self, "v2_class", self.group.reduce(self.v2_class))
        if self.winding_number % 2 != 0:
            raise HypothesisViolation(
                "pattern covers here require an even winding number"
            )


def whitehead_cover(a, b):
    """Cover data for the twisted-Whitehead-style pattern P(a, b).

    The double cover of the pattern's ambient solid torus is surgery on
    a Hopf link with coefficients 2a and 2b, so H1 is the cokernel of
    [[2a, 1], [1, 2b]]: cyclic of order |4ab - 1|, generated by the
    meridian m1, and both axis curves are parallel to m1.  The pattern
    has winding number 0.
    """
    if a * b == 0:
        raise HypothesisViolation(
            "P(a,0) and P(0,b) are excluded: the pattern is trivial or its "
            "cover homology is trivial, so the machinery has nothing to act on"
        )
    rel = ((2 * a, 1), (1, 2 * b))
    diag, u_rows, uinv_rows = smith_normal_form(rel)
    n = abs(4 * a * b - 1)
    assert tuple(diag) == (1, n)
    group = FiniteAbelianGroup((n,))
    # class of m1 = e1 in the cokernel coordinates
    m1 = (u_rows[1][0] % n,)
    assert gcd(m1[0], n) == 1, "m1 generates the cover homology"
    # linking form: -(rel)^{-1} mod 1 restricted to the generator
    lift = (uinv_rows[0][1], uinv_rows[1][1])
    (inv_col,) = _fraction_inverse_image(rel, [lift])
    lam = (-sum(Fraction(x) * y for x, y in zip(lift, inv_col))) % 1
    return PatternCover(group, m1, m1, 0, ((lam,),))
