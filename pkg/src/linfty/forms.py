"""Exact polynomial differential forms on simplices.

The algebra of forms on the n-simplex is generated by barycentric
coordinates t_0..t_n (degree 0) and their differentials dt_0..dt_n
(degree 1), subject to t_0+...+t_n = 1 and dt_0+...+dt_n = 0.  We store
the unique reduced representative obtained by eliminating t_0 and dt_0:
a Form is a sparse map from (exponent vector over t_1..t_n, strictly
increasing dt-word) to rational coefficients.  All arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from linfty import kernel

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Form:
    """A differential form on the n-simplex in reduced normal form.

    Immutable; term keys are pairs (exps, word) with exps a tuple of
    exponents of t_1..t_n and word a strictly increasing tuple of
    dt-indices in 1..n.  May be inhomogeneous in both polynomial and
    exterior degree.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: dict | None = None, _validated: bool = False):
        if n < 0:
            raise ValueError(f"simplex dimension must be >= 0, got {n}")
        self.n = n
        if terms is None:
            terms = {}
        if not _validated:
            for (exps, word), coeff in terms.items():
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} has length != {n}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if list(word) != sorted(set(word)) or any(
                    not 1 <= i <= n for i in word
                ):
                    raise ValueError(f"bad dt-word {word} for n={n}")
                if not isinstance(coeff, Fraction):
                    raise TypeError(f"coefficient {coeff!r} is not a Fraction")
            terms = {k: c for k, c in terms.items() if c}
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(n: int) -> "Form":
        return Form(n, {}, _validated=True)

    @staticmethod
    def constant(n: int, value) -> "Form":
        value = Fraction(value)
        if not value:
            return Form.zero(n)
        return Form(n, {((0,) * n, ()): value}, _validated=True)

    @staticmethod
    def one(n: int) -> "Form":
        return Form.constant(n, 1)

    @staticmethod
    def t(i: int, n: int) -> "Form":
        """The barycentric coordinate t_i as a reduced form."""
        _check_vertex(i, n)
        if i == 0:
            # t_0 = 1 - t_1 - ... - t_n
            terms = {((0,) * n, ()): _ONE}
            for j in range(1, n + 1):
                terms[(_unit_exps(n, j), ())] = -_ONE
            return Form(n, terms, _validated=True)
        return Form(n, {(_unit_exps(n, i), ()): _ONE}, _validated=True)

    @staticmethod
    def dt(i: int, n: int) -> "Form":
        """The differential dt_i as a reduced form."""
        _check_vertex(i, n)
        if i == 0:
            # dt_0 = -dt_1 - ... - dt_n
            terms = {((0,) * n, (j,)): -_ONE for j in range(1, n + 1)}
            return Form(n, terms, _validated=True)
        return Form(n, {((0,) * n, (i,)): _ONE}, _validated=True)

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def exterior_degrees(self):
        """Sorted list of exterior degrees present."""
        return sorted({len(word) for _, word in self.terms})

    def polynomial_degree(self) -> int:
        """Maximal total polynomial degree, -1 for the zero form."""
        if not self.terms:
            return -1
        return max(sum(exps) for exps, _ in self.terms)

    def component(self, k: int) -> "Form":
        """The exterior-degree-k part."""
        return Form(
            self.n,
            {key: c for key, c in self.terms.items() if len(key[1]) == k},
            _validated=True,
        )

    def constant_coefficient(self) -> Rational:
        return self.terms.get(((0,) * self.n, ()), _ZERO)

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "Form") -> "Form":
        self._check_same(other)
        out = dict(self.terms)
        kernel.add_into(out, other.terms, _ONE)
        return Form(self.n, out, _validated=True)

    def __sub__(self, other: "Form") -> "Form":
        self._check_same(other)
        out = dict(self.terms)
        kernel.add_into(out, other.terms, -_ONE)
        return Form(self.n, out, _validated=True)

    def __neg__(self) -> "Form":
        return Form(
            self.n, {k: -c for k, c in self.terms.items()}, _validated=True
        )

    def scale(self, c) -> "Form":
        c = Fraction(c)
        return Form(self.n, kernel.scale_terms(self.terms, c), _validated=True)

    def __mul__(self, other):
        if isinstance(other, Form):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (
            isinstance(other, Form)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def _check_same(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} != {other.n}")

    # -- rendering ---------------------------------------------------

    def render(self) -> str:
        """Canonical text rendering, e.g. '1/2*t1^2*dt1^dt2'."""
        if not self.terms:
            return "0"
        pieces = []
        for (exps, word) in sorted(self.terms, key=lambda k: (k[1], k[0])):
            coeff = self.terms[(exps, word)]
            factors = []
            for i, e in enumerate(exps, start=1):
                if e == 1:
                    factors.append(f"t{i}")
                elif e > 1:
                    factors.append(f"t{i}^{e}")
            if word:
                factors.append("^".join(f"dt{i}" for i in word))
            mag = -coeff if coeff < 0 else coeff
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Form({self.n}, {self.render()!r})"


def _unit_exps(n: int, i: int):
    return tuple(1 if j == i else 0 for j in range(1, n + 1))


def _check_vertex(i: int, n: int):
    if not 0 <= i <= n:
        raise ValueError(f"vertex index {i} out of range 0..{n}")


# -- reduction of raw barycentric expressions ------------------------


def reduce_barycentric(raw_terms: Iterable, n: int) -> Form:
    """Reduce a formal polynomial in t_0..t_n, dt_0..dt_n to normal form.

    raw_terms is an iterable of (coeff, exps, word) with exps of length
    n+1 (exponents of t_0..t_n) and word a tuple over 0..n (a formal
    dt-product, in the given order).  Substitutes t_0 = 1 - sum t_i and
    dt_0 = -sum dt_i and sorts each dt-word with alternating signs.
    Idempotent on already-reduced input.
    """
    total = Form.zero(n)
    for coeff, exps, word in raw_terms:
        coeff = Fraction(coeff)
        if not coeff:
            continue
        if len(exps) != n + 1:
            raise ValueError(f"raw exponent vector {exps} has length != {n + 1}")
        for i in word:
            _check_vertex(i, n)
        piece = Form.constant(n, coeff)
        for i, e in enumerate(exps):
            if e < 0:
                raise ValueError(f"negative exponent in {exps}")
            if e:
                piece = piece * _t_power(i, e, n)
        for i in word:
            piece = piece * Form.dt(i, n)
            if piece.is_zero():
                break
        total = total + piece
    return total


_T_POWER_CACHE: dict = {}


def _t_power(i: int, e: int, n: int) -> Form:
    key = (n, i, e)
    cached = _T_POWER_CACHE.get(key)
    if cached is None:
        cached = Form.one(n)
        base = Form.t(i, n)
        for _ in range(e):
            cached = cached * base
        _T_POWER_CACHE[key] = cached
    return cached


# -- the graded product ----------------------------------------------


def wedge(a: Form, b: Form) -> Form:
    """Graded-commutative product of two forms over the same n."""
    a._check_same(b)
    if not a.terms or not b.terms:
        return Form.zero(a.n)
    return Form(a.n, kernel.mul_terms(a.terms, b.terms), _validated=True)


# -- the exterior differential ---------------------------------------


def exterior_d(f: Form) -> Form:
    """Exterior differential: degree +1 graded derivation with d(t_i) = dt_i."""
    out: dict = {}
    for (exps, word), coeff in f.terms.items():
        for pos, e in enumerate(exps):
            if not e:
                continue
            j = pos + 1
            new_word, sign = kernel.merge_words((j,), word)
            if sign == 0:
                continue
            new_exps = list(exps)
            new_exps[pos] -= 1
            kernel.add_into(
                out, {(tuple(new_exps), new_word): _ONE}, coeff * e * sign
            )
    return Form(f.n, out, _validated=True)


# -- vertex evaluation and Euler contraction -------------------------


def evaluate_vertex(i: int, f: Form) -> Rational:
    """Evaluation at the vertex e_i; kills positive exterior degree."""
    _check_vertex(i, f.n)
    total = _ZERO
    for (exps, word), coeff in f.terms.items():
        if word:
            continue
        if all(e == 0 for pos, e in enumerate(exps) if pos + 1 != i):
            total += coeff
    return total


def contract_euler(i: int, f: Form) -> Form:
    """Interior product with the dilation field toward vertex e_i.

    Degree -1 graded derivation with iota(t_j) = 0 and
    iota(dt_j) = t_j - delta_ij; squares to zero.
    """
    _check_vertex(i, f.n)
    n = f.n
    out: dict = {}
    for (exps, word), coeff in f.terms.items():
        sign = 1
        for pos, j in enumerate(word):
            rest = word[:pos] + word[pos + 1 :]
            # iota(dt_j) = t_j - delta_ij
            bumped = list(exps)
            bumped[j - 1] += 1
            kernel.add_into(out, {(tuple(bumped), rest): _ONE}, coeff * sign)
            if j == i:
                kernel.add_into(out, {(exps, rest): _ONE}, -coeff * sign)
            sign = -sign
    return Form(n, out, _validated=True)


# -- simplicial maps and pullback ------------------------------------


class SimplicialMap:
    """A monotone map [m] -> [n], the shape of a simplicial operator."""

    __slots__ = ("source", "target", "values")

    def __init__(self, source: int, target: int, values: Sequence[int]):
        values = tuple(values)
        if len(values) != source + 1:
            raise ValueError(
                f"map on [{source}] needs {source + 1} values, got {len(values)}"
            )
        if any(not 0 <= v <= target for v in values):
            raise ValueError(f"values {values} out of range 0..{target}")
        if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
            raise ValueError(f"values {values} are not monotone")
        self.source = source
        self.target = target
        self.values = values

    @staticmethod
    def face(k: int, n: int) -> "SimplicialMap":
        """The injection [n-1] -> [n] skipping k."""
        if not 0 <= k <= n:
            raise ValueError(f"face index {k} out of range 0..{n}")
        return SimplicialMap(
            n - 1, n, tuple(i if i < k else i + 1 for i in range(n))
        )

    @staticmethod
    def degeneracy(k: int, n: int) -> "SimplicialMap":
        """The surjection [n] -> [n-1] repeating k."""
        if not 0 <= k <= n - 1:
            raise ValueError(f"degeneracy index {k} out of range 0..{n - 1}")
        return SimplicialMap(
            n, n - 1, tuple(i if i <= k else i - 1 for i in range(n + 1))
        )

    @staticmethod
    def identity(n: int) -> "SimplicialMap":
        return SimplicialMap(n, n, tuple(range(n + 1)))

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other: [k] -> [m] -> [n]."""
        if other.target != self.source:
            raise ValueError(
                f"cannot compose [{other.source}]->[{other.target}] with "
                f"[{self.source}]->[{self.target}]"
            )
        return SimplicialMap(
            other.source, self.target, tuple(self.values[v] for v in other.values)
        )

    def factorize(self) -> "list[SimplicialMap]":
        """Write the map as degeneracies followed by faces (composition
        right to left); composing the factors recovers the map."""
        factors = []
        current = SimplicialMap.identity(self.target)
        missing = sorted(set(range(self.target + 1)) - set(self.values))
        for value in reversed(missing):
            face = SimplicialMap.face(value, current.source)
            factors.append(face)
            current = current.compose(face)
        repeats = [
            i for i in range(len(self.values) - 1)
            if self.values[i] == self.values[i + 1]
        ]
        for i in repeats:
            degeneracy = SimplicialMap.degeneracy(i, current.source + 1)
            factors.append(degeneracy)
            current = current.compose(degeneracy)
        return factors

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.source == other.source
            and self.target == other.target
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.source, self.target, self.values))

    def __repr__(self):
        return f"SimplicialMap([{self.source}]->[{self.target}], {self.values})"


_PULLBACK_GEN_CACHE: dict = {}


def _pullback_generators(f: SimplicialMap):
    """Reduced images of the target generators t_i, dt_i under f^*."""
    key = (f.source, f.target, f.values)
    cached = _PULLBACK_GEN_CACHE.get(key)
    if cached is not None:
        return cached
    m = f.source
    t_images = []
    dt_images = []
    for i in range(f.target + 1):
        preimage = [j for j, v in enumerate(f.values) if v == i]
        t_img = Form.zero(m)
        dt_img = Form.zero(m)
        for j in preimage:
            t_img = t_img + Form.t(j, m)
            dt_img = dt_img + Form.dt(j, m)
        t_images.append(t_img)
        dt_images.append(dt_img)
    cached = (tuple(t_images), tuple(dt_images))
    _PULLBACK_GEN_CACHE[key] = cached
    return cached


def pullback(f: SimplicialMap, form: Form) -> Form:
    """Pull a form on the target simplex back along f; an algebra map
    commuting with the differential."""
    if form.n != f.target:
        raise ValueError(
            f"form lives on the {form.n}-simplex, map targets [{f.target}]"
        )
    t_images, dt_images = _pullback_generators(f)
    m = f.source
    out = Form.zero(m)
    for (exps, word), coeff in form.terms.items():
        piece = Form.constant(m, coeff)
        for pos, e in enumerate(exps):
            if not e:
                continue
            img = t_images[pos + 1]
            for _ in range(e):
                piece = piece * img
                if piece.is_zero():
                    break
            if piece.is_zero():
                break
        if piece.is_zero():
            continue
        for j in word:
            piece = piece * dt_images[j]
            if piece.is_zero():
                break
        out = out + piece
    return out


# -- parsing of the canonical rendering ------------------------------


def parse_form(text: str, n: int) -> Form:
    """Parse the canonical rendering back into a Form.

    Inverse of Form.render on its image; accepts any +/- separated list
    of monomials in t_i, dt_i (i >= 1).
    """
    text = text.strip()
    if text in ("0", ""):
        return Form.zero(n)
    # normalize to '+'-separated signed monomials
    text = text.replace(" - ", " + -").replace("- ", "-")
    chunks = [c.strip() for c in text.split("+")]
    terms: dict = {}
    for chunk in chunks:
        if not chunk:
            continue
        sign = _ONE
        while chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:].strip()
        coeff = sign
        exps = [0] * n
        word: list[int] = []
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {chunk!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
            elif factor.startswith("dt"):
                for letter in factor.split("^"):
                    if not letter.startswith("dt"):
                        raise ValueError(f"bad dt-word {factor!r}")
                    word.append(int(letter[2:]))
            elif factor.startswith("t"):
                if "^" in factor:
                    var, power = factor.split("^")
                    e = int(power)
                else:
                    var, e = factor, 1
                idx = int(var[1:])
                if not 1 <= idx <= n:
                    raise ValueError(f"index {idx} out of range for n={n}")
                exps[idx - 1] += e
            else:
                raise ValueError(f"cannot parse factor {factor!r}")
        sorted_word, wsign = kernel.sort_word(tuple(word))
        if wsign == 0:
            continue
        kernel.add_into(
            terms, {(tuple(exps), sorted_word): _ONE}, coeff * wsign
        )
    return Form(n, terms)
