"""Group-like structure extracted from gauge-fixed simplices.

The rooted-tree exponential and the closed formula for the gauge flow
on edges, the generalized Campbell-Hausdorff series read off solved
simplices, composition through thin 2-fillers and its associativity,
the gauge action on Maurer-Cartan elements, nerves of finite groupoids,
and an exact nilpotent-matrix oracle certifying the monodromy identity
exp(x1) = exp(rho2(x1, x2, x12)) exp(x2).

Orientation convention, fixed once and validated by the matrix oracle
rather than assumed: the edge carrying the group element exp(x) is the
1-simplex with chain integral I_01 = -x (the driving datum enters the
solver witness as -x), and the k-index slot of the boundary data is
scaled by 1/k!.  With this convention the monodromy identity holds on
the nose and composition reads compose(x, y) = log(exp(x) exp(y)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from linfty import dupont
from linfty.algebra import (
    GVector,
    LInftyAlgebra,
    TensorElement,
    bracket,
    constant_tensor,
    is_mc,
    twisted_bracket,
    zero_tensor,
)
from linfty.forms import Form
from linfty.mc_gamma import (
    GaugeParameter,
    Horn,
    SimplexElement,
    fill_horn_gamma,
    solve_gauge_fixed,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- rooted trees -------------------------------------------------------

# a rooted tree is a tuple of child subtrees, children kept in canonical
# order; the leaf is the empty tuple


def tree_size(tree) -> int:
    return 1 + sum(tree_size(c) for c in tree)


def tree_key(tree):
    """Canonical order: vertex count first, then children lexicographically."""
    return (tree_size(tree), tuple(tree_key(c) for c in tree))


def canonical_tree(children) -> tuple:
    return tuple(sorted(children, key=tree_key))


@lru_cache(maxsize=None)
def _trees_of_size(k: int) -> tuple:
    """All rooted trees with k vertices, canonically ordered."""
    if k < 1:
        raise ValueError("trees need at least one vertex")
    if k == 1:
        return ((),)
    out = set()
    for child_multiset in _child_multisets(k - 1, None):
        out.add(canonical_tree(child_multiset))
    return tuple(sorted(out, key=tree_key))


def _child_multisets(total: int, bound):
    """Multisets of trees with the given total size, nonincreasing in
    the canonical order to avoid duplicates."""
    if total == 0:
        yield ()
        return
    for size in range(total, 0, -1):
        for tree in _trees_of_size(size):
            key = tree_key(tree)
            if bound is not None and key > bound:
                continue
            for rest in _child_multisets(total - size, key):
                yield (tree,) + rest


def _subtree_size_product(tree) -> int:
    prod = tree_size(tree)
    for c in tree:
        prod *= _subtree_size_product(c)
    return prod


def _automorphisms(tree) -> int:
    count = 1
    for shape, group in itertools.groupby(sorted(tree, key=tree_key)):
        mult = len(list(group))
        count *= factorial(mult) * _automorphisms(shape) ** mult
    return count


@dataclass(frozen=True)
class TreeTerm:
    """A rooted tree with its monotone-order coefficient: the number of
    vertex orders compatible with the tree, counted up to automorphism
    (so repeated branches are not double counted)."""

    tree: tuple
    coefficient: int


def enumerate_trees(k: int) -> list[TreeTerm]:
    """All rooted-tree terms with k vertices in canonical order."""
    if k < 1:
        raise ValueError("trees need at least one vertex")
    terms = []
    for tree in _trees_of_size(k):
        coeff = factorial(k) // (
            _subtree_size_product(tree) * _automorphisms(tree)
        )
        terms.append(TreeTerm(tree=tree, coefficient=coeff))
    return terms


# -- the rooted-tree exponential ---------------------------------------


def tree_exponential(algebra: LInftyAlgebra, mu: GVector, x: GVector,
                     k: int) -> GVector:
    """The k-th coefficient of the gauge flow generated by x at mu.

    Each tree contributes the nested twisted bracket obtained by reading
    a vertex with children a_1..a_i as [x, a_1, ..., a_i] twisted by mu,
    weighted by its monotone-order coefficient.  Vanishes once k reaches
    the nilpotency index.
    """
    algebra.require_nilpotent()
    if not is_mc(algebra, mu):
        raise ValueError("base point does not satisfy Maurer-Cartan")
    if k >= algebra.nilpotency_index():
        return algebra.zero_vector()
    cache: dict = {}

    def evaluate(tree) -> GVector:
        cached = cache.get(tree)
        if cached is None:
            args = [x] + [evaluate(c) for c in tree]
            cached = twisted_bracket(algebra, mu, args)
            cache[tree] = cached
        return cached

    total = algebra.zero_vector()
    for term in enumerate_trees(k):
        value = evaluate(term.tree)
        if not value.is_zero():
            total = total + value.scale(term.coefficient)
    return total


def gauge_flow_terms(algebra: LInftyAlgebra, mu: GVector, x: GVector):
    """Nonzero tree exponentials [epsilon^1, epsilon^2, ...] up to the
    nilpotency cutoff."""
    return [
        tree_exponential(algebra, mu, x, k)
        for k in range(1, algebra.nilpotency_index())
    ]


def alpha1(algebra: LInftyAlgebra, mu: GVector, x: GVector) -> SimplexElement:
    """The gauge-fixed edge generated by x in degree 0 starting at mu.

    Closed formula: mu - sum_k (t_1^k / k!) epsilon^k - x dt_1, where
    epsilon^k is the k-th tree exponential; equal to the solver output
    for the witness -x t_1 (checked in the test suite).  Its vertices
    are mu at e_0 and rho1(mu, x) at e_1, and I_01 integrates to -x.
    """
    if not x.is_zero() and not x.is_homogeneous(0):
        raise ValueError("edge datum must have degree 0")
    value = constant_tensor(1, mu)
    for k, eps in enumerate(gauge_flow_terms(algebra, mu, x), start=1):
        if eps.is_zero():
            continue
        form = Form(1, {((k,), ()): Fraction(-1, factorial(k))})
        value = value + TensorElement(
            algebra, 1, {s: form.scale(c) for s, c in eps.coeffs.items()}
        )
    value = value + TensorElement(
        algebra, 1, {s: Form.dt(1, 1).scale(-c) for s, c in x.coeffs.items()}
    )
    return SimplexElement(algebra, 1, value, validate=True)


def rho1(algebra: LInftyAlgebra, mu: GVector, x: GVector) -> GVector:
    """The endpoint of the gauge flow: mu - sum_k epsilon^k / k!.

    Coincides with the vertex-1 value of alpha1 and, for dg Lie
    algebras, with the gauge action of exp(x) on mu."""
    total = mu
    for k, eps in enumerate(gauge_flow_terms(algebra, mu, x), start=1):
        if not eps.is_zero():
            total = total - eps.scale(Fraction(1, factorial(k)))
    return total


# -- the generalized Campbell-Hausdorff series --------------------------


@dataclass
class CHResult:
    """A generalized Campbell-Hausdorff value with the solved simplex
    it was read from."""

    value: GVector
    simplex: SimplexElement


def generalized_ch(algebra: LInftyAlgebra, n: int, mu: GVector,
                   inputs: dict) -> CHResult:
    """The n-th generalized Campbell-Hausdorff series.

    inputs maps nonempty increasing tuples in 1..n to elements of degree
    1 - len(tuple).  Assembles the boundary data (orientation
    convention: the k-index slot enters the witness as -x/k!), solves in
    the gauge with base vertex 0, and integrates over the chain
    (1, ..., n).
    """
    witness = zero_tensor(algebra, n)
    for seq, vec in inputs.items():
        seq = tuple(seq)
        if not seq or list(seq) != sorted(set(seq)) or not (
            1 <= seq[0] and seq[-1] <= n
        ):
            raise ValueError(f"bad input index {seq}")
        k = len(seq)
        if not vec.is_zero() and not vec.is_homogeneous(1 - k):
            raise ValueError(
                f"input at {seq} must have degree {1 - k}"
            )
        omega = dupont.elementary_form(seq, n).scale(Fraction(-1, factorial(k)))
        witness = witness + TensorElement(
            algebra, n, {s: omega.scale(c) for s, c in vec.coeffs.items()}
        )
    simplex = solve_gauge_fixed(
        algebra, n, 0, GaugeParameter(n=n, mu=mu, witness=witness)
    )
    value = simplex.integrate(tuple(range(1, n + 1)))
    return CHResult(value=value, simplex=simplex)


def edge_value(edge: SimplexElement) -> GVector:
    """Read the group datum off a gauge-fixed edge: minus its chain
    integral (the inverse of alpha1 at the edge's initial vertex)."""
    return -edge.integrate((0, 1))


def compose(algebra: LInftyAlgebra, mu: GVector, x: GVector,
            y: GVector) -> GVector:
    """Composition of degree-0 data through the thin 2-filler.

    The edges generated by y (from mu) and x (from the endpoint of y)
    form a horn at position 1; the missing face of its thin filler is
    the composed edge.  Under the frozen orientation this is
    log(exp(x) exp(y)) in the matrix model.
    """
    if algebra.basis_of_degree(-1):
        # interior slot must vanish; guaranteed when the algebra is
        # concentrated in degrees >= 0
        raise ValueError(
            "composition needs an algebra concentrated in degrees >= 0"
        )
    edge_y = alpha1(algebra, mu, y)
    mu_y = edge_y.vertex(1)
    edge_x = alpha1(algebra, mu_y, x)
    horn = Horn(2, 1, {0: edge_x, 2: edge_y})
    filler = fill_horn_gamma(horn)
    return edge_value(filler.face(1))


def rho3_associativity_check(algebra: LInftyAlgebra, mu: GVector,
                             x1: GVector, x2: GVector, x3: GVector):
    """The degree -1 associator: the top series value with all interior
    slots zero.  Exactly zero for dg Lie algebras; may be nonzero when a
    ternary bracket is present."""
    result = generalized_ch(
        algebra, 3, mu, {(1,): x1, (2,): x2, (3,): x3}
    )
    return result.value.is_zero(), result


# -- the gauge action on Maurer-Cartan elements -------------------------


def deligne_action(algebra: LInftyAlgebra, x: GVector,
                   alpha: GVector) -> GVector:
    """Action of exp(x) on a Maurer-Cartan element of a dg Lie algebra:
    alpha - sum_n ad(x)^n (delta(x) + [alpha, x]) / (n+1)!."""
    if algebra.max_arity > 2:
        raise ValueError("the exponential action is for dg Lie algebras")
    algebra.require_nilpotent()
    if not is_mc(algebra, alpha):
        raise ValueError("action input does not satisfy Maurer-Cartan")
    if not x.is_zero() and not x.is_homogeneous(0):
        raise ValueError("action parameter must have degree 0")
    current = bracket(algebra, [x]) + bracket(algebra, [alpha, x])
    total = alpha
    k = 1
    while not current.is_zero():
        total = total - current.scale(Fraction(1, factorial(k)))
        current = bracket(algebra, [x, current])
        k += 1
        if k > algebra.nilpotency_index() + 1:
            raise RuntimeError("gauge action failed to terminate")
    return total


# -- exact nilpotent matrices and the monodromy oracle ------------------


class NilMatrix:
    """A strictly upper-triangular matrix with exact rational entries."""

    __slots__ = ("size", "rows")

    def __init__(self, rows):
        rows = [[Fraction(v) for v in row] for row in rows]
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise ValueError("matrix is not square")
        for i in range(m):
            for j in range(i + 1):
                if rows[i][j]:
                    raise ValueError("matrix is not strictly upper triangular")
        self.size = m
        self.rows = rows

    @staticmethod
    def zero(m: int) -> "NilMatrix":
        return NilMatrix([[_ZERO] * m for _ in range(m)])

    def __add__(self, other: "NilMatrix") -> "NilMatrix":
        return NilMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "NilMatrix") -> "NilMatrix":
        return NilMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def scale(self, c) -> "NilMatrix":
        c = Fraction(c)
        return NilMatrix([[c * v for v in row] for row in self.rows])

    def commutator(self, other: "NilMatrix") -> "NilMatrix":
        return NilMatrix(
            _mat_sub(_mat_mul(self.rows, other.rows),
                     _mat_mul(other.rows, self.rows))
        )

    def __eq__(self, other):
        return isinstance(other, NilMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"NilMatrix({self.rows!r})"


def _mat_mul(a, b):
    m = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)]
        for i in range(m)
    ]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _identity(m):
    return [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]


def matrix_exp(n: NilMatrix):
    """Exact exponential of a nilpotent matrix: the series terminates at
    the matrix size.  Returns a unipotent matrix as rational rows."""
    m = n.size
    result = _identity(m)
    power = _identity(m)
    fact = 1
    for k in range(1, m):
        power = _mat_mul(power, n.rows)
        fact *= k
        result = [
            [r + p / fact for r, p in zip(rrow, prow)]
            for rrow, prow in zip(result, power)
        ]
    return result


def matrix_log(unipotent) -> NilMatrix:
    """Exact logarithm of a unipotent matrix; inverse of matrix_exp."""
    m = len(unipotent)
    rows = [[Fraction(v) for v in row] for row in unipotent]
    for i in range(m):
        for j in range(i + 1):
            expected = _ONE if i == j else _ZERO
            if rows[i][j] != expected:
                raise ValueError("matrix is not unipotent upper triangular")
    n = [[rows[i][j] - (1 if i == j else 0) for j in range(m)] for i in range(m)]
    result = [[_ZERO] * m for _ in range(m)]
    power = _identity(m)
    for k in range(1, m):
        power = _mat_mul(power, n)
        sign = Fraction((-1) ** (k + 1), k)
        result = [
            [r + sign * p for r, p in zip(rrow, prow)]
            for rrow, prow in zip(result, power)
        ]
    return NilMatrix(result)


def oracle_bch(x: NilMatrix, y: NilMatrix) -> NilMatrix:
    """log(exp(x) exp(y)), computed entirely in exact matrix arithmetic:
    the independent oracle for every group-law statement."""
    return matrix_log(_mat_mul(matrix_exp(x), matrix_exp(y)))


class MatrixRepresentation:
    """A faithful assignment of nilpotent matrices to degree-0 basis
    symbols, turning group-law claims into exact matrix identities."""

    def __init__(self, algebra: LInftyAlgebra, size: int, images: dict):
        self.algebra = algebra
        self.size = size
        self.images = {sym: NilMatrix(m) for sym, m in images.items()}
        for sym in images:
            if algebra.degrees[sym] != 0:
                raise ValueError("representation assigns only degree-0 symbols")

    def apply(self, v: GVector) -> NilMatrix:
        total = NilMatrix.zero(self.size)
        for sym, c in v.coeffs.items():
            total = total + self.images[sym].scale(c)
        return total

    def check_faithful_bracket(self) -> bool:
        """Commutators of images match images of brackets on the basis."""
        syms = [s for s in self.algebra.symbols if self.algebra.degrees[s] == 0]
        for a, b in itertools.product(syms, repeat=2):
            lhs = self.images[a].commutator(self.images[b])
            rhs = self.apply(self.algebra.bracket_on_basis((a, b)))
            if lhs != rhs:
                return False
        return True


def check_monodromy(rep: MatrixRepresentation, x1: GVector,
                    x2: GVector) -> bool:
    """exp(x1) = exp(rho2(x1, x2)) exp(x2), exactly, in the matrix model."""
    algebra = rep.algebra
    rho = generalized_ch(
        algebra, 2, algebra.zero_vector(), {(1,): x1, (2,): x2}
    ).value
    lhs = matrix_exp(rep.apply(x1))
    rhs = _mat_mul(matrix_exp(rep.apply(rho)), matrix_exp(rep.apply(x2)))
    return lhs == rhs


# -- nerves of finite groupoids -----------------------------------------


class FiniteGroupoid:
    """A finite groupoid presentation: objects, morphisms, source and
    target maps, identities, and a composition table.

    compose[(g, h)] with source(g) = target(h) is the composite "h then
    g"; validation checks identities, associativity, and inverses.
    """

    def __init__(self, objects, morphisms, source, target, identity, compose):
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.source = dict(source)
        self.target = dict(target)
        self.identity = dict(identity)
        self.compose = dict(compose)
        self._validate()

    def _validate(self):
        for g in self.morphisms:
            if self.source[g] not in self.objects or self.target[g] not in self.objects:
                raise ValueError(f"morphism {g!r} has bad endpoints")
        for obj in self.objects:
            e = self.identity[obj]
            if self.source[e] != obj or self.target[e] != obj:
                raise ValueError(f"identity of {obj!r} has wrong endpoints")
        for g in self.morphisms:
            for h in self.morphisms:
                defined = (g, h) in self.compose
                composable = self.source[g] == self.target[h]
                if defined != composable:
                    raise ValueError(
                        f"composition table mismatch at ({g!r}, {h!r})"
                    )
                if defined:
                    gh = self.compose[(g, h)]
                    if (
                        self.source[gh] != self.source[h]
                        or self.target[gh] != self.target[g]
                    ):
                        raise ValueError(f"composite ({g!r}, {h!r}) has wrong endpoints")
        for g in self.morphisms:
            e_t = self.identity[self.target[g]]
            e_s = self.identity[self.source[g]]
            if self.compose[(e_t, g)] != g or self.compose[(g, e_s)] != g:
                raise ValueError(f"identity laws fail at {g!r}")
        for g in self.morphisms:
            for h in self.morphisms:
                for k in self.morphisms:
                    if (
                        self.source[g] == self.target[h]
                        and self.source[h] == self.target[k]
                    ):
                        if self.compose[(self.compose[(g, h)], k)] != self.compose[
                            (g, self.compose[(h, k)])
                        ]:
                            raise ValueError("composition is not associative")
        for g in self.morphisms:
            has_inverse = any(
                self.source[h] == self.target[g]
                and self.target[h] == self.source[g]
                and self.compose[(h, g)] == self.identity[self.source[g]]
                and self.compose[(g, h)] == self.identity[self.target[g]]
                for h in self.morphisms
            )
            if not has_inverse:
                raise ValueError(f"morphism {g!r} has no inverse")


class NerveTruncation:
    """The nerve of a finite groupoid up to a dimension bound.

    n-simplices are composable chains [g_1, ..., g_n]; face maps drop or
    compose, degeneracies insert identities.  Provides exhaustive
    unique-filler lookup and the coskeletal reconstruction check.
    """

    def __init__(self, groupoid: FiniteGroupoid, bound: int):
        self.groupoid = groupoid
        self.bound = bound
        self.simplices = {0: [(obj,) for obj in groupoid.objects]}
        for n in range(1, bound + 1):
            chains = []
            if n == 1:
                chains = [(g,) for g in groupoid.morphisms]
            else:
                for chain in self.simplices[n - 1]:
                    for g in groupoid.morphisms:
                        if groupoid.source[chain[-1]] == groupoid.target[g]:
                            chains.append(chain + (g,))
            self.simplices[n] = chains

    def face(self, n: int, k: int, simplex):
        g = self.groupoid
        if n == 1:
            return (g.source[simplex[0]],) if k == 0 else (g.target[simplex[0]],)
        if k == 0:
            return simplex[1:]
        if k == n:
            return simplex[:-1]
        return (
            simplex[: k - 1]
            + (g.compose[(simplex[k - 1], simplex[k])],)
            + simplex[k + 1 :]
        )

    def degeneracy(self, n: int, k: int, simplex):
        """Insert an identity: from an n-simplex to an (n+1)-simplex."""
        g = self.groupoid
        if n == 0:
            return (g.identity[simplex[0]],)
        if k == 0:
            return (g.identity[g.target[simplex[0]]],) + simplex
        return simplex[:k] + (g.identity[g.source[simplex[k - 1]]],) + simplex[k:]

    def horn_of(self, n: int, i: int, simplex):
        return tuple(
            self.face(n, k, simplex) if k != i else None for k in range(n + 1)
        )

    def fillers(self, n: int, i: int, horn):
        return [
            s
            for s in self.simplices[n]
            if self.horn_of(n, i, s) == tuple(horn)
        ]

    def unique_filler(self, n: int, i: int, horn):
        found = self.fillers(n, i, horn)
        if len(found) != 1:
            raise ValueError(
                f"horn has {len(found)} fillers; expected exactly one"
            )
        return found[0]

    def check_filler_bijectivity(self, n: int) -> bool:
        """Every horn of every n-simplex has exactly one filler, and the
        horn map is injective: the nerve property in dimension n."""
        for i in range(n + 1):
            seen = {}
            for s in self.simplices[n]:
                horn = self.horn_of(n, i, s)
                if horn in seen:
                    return False
                seen[horn] = s
            # surjectivity onto compatible horns: every tuple of faces
            # agreeing on overlaps is hit
            for horn, s in seen.items():
                if self.unique_filler(n, i, horn) != s:
                    return False
        return True

    def compatible_boundaries(self, n: int):
        """All (n+1)-tuples of (n-1)-simplices satisfying the simplicial
        compatibility conditions: the coskeleton's n-cells."""
        out = []
        lower = self.simplices[n - 1]
        for combo in itertools.product(lower, repeat=n + 1):
            ok = True
            for j in range(n + 1):
                for k in range(j + 1, n + 1):
                    if self.face(n - 1, j, combo[k]) != self.face(
                        n - 1, k - 1, combo[j]
                    ):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(combo)
        return out

    def check_coskeletal(self, n: int = 3) -> bool:
        """The boundary map from n-simplices to compatible boundary
        tuples is a bijection: the nerve is determined by its 2-skeleton."""
        boundaries = [
            tuple(self.face(n, k, s) for k in range(n + 1))
            for s in self.simplices[n]
        ]
        if len(set(boundaries)) != len(boundaries):
            return False
        return sorted(boundaries) == sorted(
            map(tuple, self.compatible_boundaries(n))
        )


def nerve_of_groupoid(groupoid: FiniteGroupoid, bound: int) -> NerveTruncation:
    return NerveTruncation(groupoid, bound)


def group_as_groupoid(elements, multiply, identity) -> FiniteGroupoid:
    """One-object groupoid from a finite group given by a multiplication
    function."""
    compose = {
        (g, h): multiply(g, h) for g in elements for h in elements
    }
    return FiniteGroupoid(
        objects=["*"],
        morphisms=list(elements),
        source={g: "*" for g in elements},
        target={g: "*" for g in elements},
        identity={"*": identity},
        compose=compose,
    )
