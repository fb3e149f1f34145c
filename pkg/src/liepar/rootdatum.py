"""Root data: construction, validation, reflection closure, duality,
and center torsion.

A root datum is (X, Delta, Xv, Deltav): character/cocharacter lattices
in perfect pairing with simple roots and coroots.  X is identified with
Z^n in a fixed standard basis, so roots are integer vectors in X
coordinates, coroots integer vectors in the dual coordinates, and the
pairing is the standard dot product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .intlinalg import (Fraction as _F, IntMatrix, RatVecModZ, frac_vec,
                        torsion_solutions, vec_dot)


class RootDatumError(ValueError):
    pass


class NotACartanMatrix(RootDatumError):
    pass


class PairingNotTwo(RootDatumError):
    pass


class InfiniteClosure(RootDatumError):
    pass


class UnknownType(RootDatumError):
    pass


ROOT_CLOSURE_CAP = 10 ** 6


@dataclass(frozen=True)
class CenterTorsion:
    """Finite-order part of the center Z(G) = {exp(2 pi i lambda) :
    <alpha, lambda> integral for all roots}."""

    rank: int
    invariant_factors: tuple
    generators: tuple  # of RatVecModZ

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def elements(self):
        """All finite-order central elements, as reduced coordinate
        vectors, in lexicographic order."""
        zero = RatVecModZ.reduce([0] * self.rank).entries
        elems = {zero}
        for g, d in zip(self.generators, self.invariant_factors):
            new = set()
            for base in elems:
                acc = base
                for _ in range(d - 1):
                    acc = (RatVecModZ(acc) + g).entries
                    new.add(acc)
            elems |= new
        return sorted(elems)


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_roots: tuple
    simple_coroots: tuple
    roots: tuple          # all roots, canonical (height, lex) order
    coroots: tuple        # matched to roots by the alpha <-> alphav bijection
    cartan_matrix: IntMatrix

    # derived, filled in by new_root_datum
    heights: tuple = field(default=(), compare=False)
    root_index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n_simple(self) -> int:
        return len(self.simple_roots)

    @property
    def n_pos(self) -> int:
        return len(self.roots) // 2

    def is_positive(self, idx: int) -> bool:
        return self.heights[idx] > 0

    def index_of(self, root_vec) -> int:
        return self.root_index[tuple(root_vec)]

    def simple_indices(self) -> tuple:
        return tuple(self.root_index[r] for r in self.simple_roots)

    def coroot_of(self, root_idx: int) -> tuple:
        return self.coroots[root_idx]

    def negative_of(self, root_idx: int) -> int:
        return self.root_index[tuple(-x for x in self.roots[root_idx])]

    def reflection_X(self, i: int) -> IntMatrix:
        """Matrix on X of the reflection in the i-th simple root."""
        a, av = self.simple_roots[i], self.simple_coroots[i]
        n = self.rank
        return IntMatrix.from_rows(
            [[(1 if r == c else 0) - a[r] * av[c] for c in range(n)]
             for r in range(n)])

    def reflection_Xv(self, i: int) -> IntMatrix:
        """Matrix on Xv of the same reflection (transpose relation)."""
        return self.reflection_X(i).transpose()

    def reflection_for_root(self, root_idx: int) -> IntMatrix:
        a = self.roots[root_idx]
        av = self.coroots[root_idx]
        n = self.rank
        return IntMatrix.from_rows(
            [[(1 if r == c else 0) - a[r] * av[c] for c in range(n)]
             for r in range(n)])

    def rho(self) -> tuple:
        """Half sum of positive roots, a vector in X tensor Q."""
        n = self.rank
        acc = [Fraction(0)] * n
        for idx, r in enumerate(self.roots):
            if self.is_positive(idx):
                for k in range(n):
                    acc[k] += Fraction(r[k], 2)
        return tuple(acc)

    def rho_in_X(self) -> bool:
        return all(x.denominator == 1 for x in self.rho())

    def dual(self) -> "RootDatum":
        """Swap roots and coroots; an involution up to field equality."""
        return new_root_datum(self.simple_coroots, self.simple_roots)

    def center_torsion(self) -> CenterTorsion:
        m = IntMatrix.from_rows(self.simple_roots) if self.simple_roots \
            else IntMatrix.zero(0, self.rank)
        factors, gens, _ = torsion_solutions(m)
        return CenterTorsion(self.rank, tuple(factors),
                             tuple(RatVecModZ.reduce(g) for g in gens))


def _validate_cartan(cartan, n_simple):
    for i in range(n_simple):
        if cartan[i][i] != 2:
            raise PairingNotTwo(
                f"<alpha_{i}, alphav_{i}> = {cartan[i][i]}, expected 2")
    for i in range(n_simple):
        for j in range(n_simple):
            if i == j:
                continue
            cij, cji = cartan[i][j], cartan[j][i]
            if cij > 0 or cji > 0:
                raise NotACartanMatrix(
                    f"positive off-diagonal entry at ({i},{j})")
            if (cij == 0) != (cji == 0):
                raise NotACartanMatrix(
                    f"asymmetric zero at ({i},{j})")
            if cij * cji > 3:
                raise InfiniteClosure(
                    f"Cartan product {cij * cji} > 3 at ({i},{j}): "
                    "not of finite type")


def _check_finite_type(cartan, n_simple):
    """Symmetrize and require positive definiteness; otherwise the
    reflection closure is infinite (affine or indefinite type)."""
    d = [None] * n_simple
    for start in range(n_simple):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n_simple):
                if i == j or cartan[i][j] == 0:
                    continue
                want = d[i] * cartan[i][j] / cartan[j][i]
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    raise InfiniteClosure("Cartan matrix is not symmetrizable")
    sym = [[d[i] * cartan[i][j] for j in range(n_simple)]
           for i in range(n_simple)]
    # positive definiteness via leading principal minors (exact)
    m = [row[:] for row in sym]
    for k in range(n_simple):
        if m[k][k] <= 0:
            raise InfiniteClosure("Cartan matrix is not of finite type")
        for i in range(k + 1, n_simple):
            f = m[i][k] / m[k][k]
            m[i] = [x - f * y for x, y in zip(m[i], m[k])]


def new_root_datum(simple_roots, simple_coroots) -> RootDatum:
    """Validate and build a root datum from simple roots/coroots,
    generating the full root system by reflection closure."""
    simple_roots = tuple(tuple(int(x) for x in r) for r in simple_roots)
    simple_coroots = tuple(tuple(int(x) for x in r) for r in simple_coroots)
    if len(simple_roots) != len(simple_coroots):
        raise RootDatumError("need equally many roots and coroots")
    k = len(simple_roots)
    if k == 0:
        rank = 0
    else:
        rank = len(simple_roots[0])
    for r in simple_roots + simple_coroots:
        if len(r) != rank:
            raise RootDatumError("inconsistent vector lengths")

    cartan = [[vec_dot(simple_roots[i], simple_coroots[j]) for j in range(k)]
              for i in range(k)]
    _validate_cartan(cartan, k)
    if k:
        if IntMatrix.from_rows(simple_roots).rank() != k:
            raise NotACartanMatrix("simple roots are linearly dependent")
        if IntMatrix.from_rows(simple_coroots).rank() != k:
            raise NotACartanMatrix("simple coroots are linearly dependent")
        _check_finite_type(cartan, k)

    # reflection closure on (root, coroot) pairs
    pairs = {}
    queue = list(zip(simple_roots, simple_coroots))
    for p in queue:
        pairs[p[0]] = p[1]
        neg = tuple(-x for x in p[0])
        pairs[neg] = tuple(-x for x in p[1])
    queue = list(pairs.items())
    qi = 0
    while qi < len(queue):
        root, coroot = queue[qi]
        qi += 1
        for i in range(k):
            c = vec_dot(root, simple_coroots[i])
            cv = vec_dot(simple_roots[i], coroot)
            nr = tuple(x - c * a for x, a in zip(root, simple_roots[i]))
            nc = tuple(y - cv * b for y, b in zip(coroot, simple_coroots[i]))
            if nr not in pairs:
                pairs[nr] = nc
                queue.append((nr, nc))
                if len(pairs) > ROOT_CLOSURE_CAP:
                    raise InfiniteClosure("root closure exceeded cap")
            elif pairs[nr] != nc:
                raise NotACartanMatrix("root/coroot bijection broke under "
                                       "reflection closure")

    # canonical order: height (coefficients in the simple basis), then lex
    heights = {}
    for root in pairs:
        coeffs = _simple_coordinates(root, simple_roots)
        heights[root] = sum(coeffs)
    order = sorted(pairs, key=lambda r: (heights[r], r))
    roots = tuple(order)
    coroots = tuple(pairs[r] for r in order)
    rd = RootDatum(rank=rank,
                   simple_roots=simple_roots,
                   simple_coroots=simple_coroots,
                   roots=roots,
                   coroots=coroots,
                   cartan_matrix=IntMatrix.from_rows(cartan) if k
                   else IntMatrix.zero(0, 0),
                   heights=tuple(heights[r] for r in order))
    rd.root_index.update({r: i for i, r in enumerate(order)})
    return rd


def _simple_coordinates(root, simple_roots):
    """Coefficients of root in the simple-root basis (exact)."""
    k = len(simple_roots)
    n = len(root)
    # solve sum c_i * alpha_i = root by Gaussian elimination
    aug = [[Fraction(simple_roots[i][r]) for i in range(k)] + [Fraction(root[r])]
           for r in range(n)]
    coeffs = [Fraction(0)] * k
    row = 0
    pivots = []
    for col in range(k):
        piv = next((i for i in range(row, n) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
    for r, col in enumerate(pivots):
        coeffs[col] = aug[r][k]
    total = sum(coeffs)
    if total.denominator != 1:
        raise NotACartanMatrix("root has non-integral height")
    return [int(c) if c.denominator == 1 else c for c in coeffs]


# ---------------------------------------------------------------------------
# named types


def _cartan_A(n):
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def _cartan_B(n):
    c = _cartan_A(n)
    if n >= 2:
        c[n - 2][n - 1] = -2
        c[n - 1][n - 2] = -1
    return c


def _cartan_C(n):
    c = _cartan_A(n)
    if n >= 2:
        c[n - 2][n - 1] = -1
        c[n - 1][n - 2] = -2
    return c


def _cartan_D(n):
    if n < 3:
        raise UnknownType(f"D{n} requires n >= 3")
    c = _cartan_A(n)
    c[n - 2][n - 1] = c[n - 1][n - 2] = 0
    c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    return c


def _cartan_E(n):
    if n not in (6, 7, 8):
        raise UnknownType(f"E{n} is not a type")
    # Bourbaki: node 2 attaches to node 4 of the A-chain 1-3-4-5-6[-7-8]
    chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    def link(a, b):
        c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    for a, b in zip(chain, chain[1:]):
        link(a, b)
    link(2, 4)
    return c


def _cartan_F(n):
    if n != 4:
        raise UnknownType(f"F{n} is not a type")
    return [[2, -1, 0, 0],
            [-1, 2, -2, 0],
            [0, -1, 2, -1],
            [0, 0, -1, 2]]


def _cartan_G(n):
    if n != 2:
        raise UnknownType(f"G{n} is not a type")
    return [[2, -1], [-3, 2]]


_CARTAN_BUILDERS = {"A": _cartan_A, "B": _cartan_B, "C": _cartan_C,
                    "D": _cartan_D, "E": _cartan_E, "F": _cartan_F,
                    "G": _cartan_G}


def parse_type(type_string: str):
    """Parse e.g. "A1", "C2.A1.T2" into (cartan blocks, torus rank)."""
    blocks = []
    torus = 0
    for part in type_string.split("."):
        part = part.strip()
        if not part or not part[0].isalpha() or not part[1:].isdigit():
            raise UnknownType(f"cannot parse type factor {part!r}")
        letter, num = part[0].upper(), int(part[1:])
        if letter == "T":
            torus += num
            continue
        if letter not in _CARTAN_BUILDERS:
            raise UnknownType(f"unknown type letter {letter!r}")
        if num < 1:
            raise UnknownType(f"rank must be positive in {part!r}")
        if letter == "B" and num == 1:
            letter = "A"  # B1 = A1
        if letter == "C" and num == 1:
            letter = "A"  # C1 = A1
        if letter == "D" and num < 3:
            raise UnknownType(f"D{num} is not supported; use A1 factors")
        blocks.append(_CARTAN_BUILDERS[letter](num))
    return blocks, torus


def from_type(type_string: str, isogeny: str) -> RootDatum:
    """Build a named datum: for sc the simple coroots are the standard
    basis (X = weight-lattice coordinates); for ad the simple roots are
    the standard basis (X = root lattice)."""
    if isogeny not in ("sc", "ad"):
        raise UnknownType(f"isogeny must be sc or ad, got {isogeny!r}")
    blocks, torus = parse_type(type_string)
    ss_rank = sum(len(b) for b in blocks)
    rank = ss_rank + torus
    roots, coroots = [], []
    offset = 0
    for block in blocks:
        m = len(block)
        for i in range(m):
            if isogeny == "sc":
                root = [0] * rank
                for j in range(m):
                    root[offset + j] = block[i][j]
                coroot = [0] * rank
                coroot[offset + i] = 1
            else:
                root = [0] * rank
                root[offset + i] = 1
                coroot = [0] * rank
                for j in range(m):
                    coroot[offset + j] = block[j][i]
            roots.append(tuple(root))
            coroots.append(tuple(coroot))
        offset += m
    return new_root_datum(roots, coroots)
