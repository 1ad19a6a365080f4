"""Trees, the gauge flow, composition series, the matrix oracle, and
finite groupoid nerves."""

import itertools
import random
from collections import Counter
from fractions import Fraction

import pytest

from linfty.algebra import (
    LInftyAlgebra,
    TensorElement,
    bracket,
    is_mc,
    twisted_bracket,
)
from linfty.bch_groupoid import (
    FiniteGroupoid,
    NilMatrix,
    alpha1,
    canonical_tree,
    check_monodromy,
    compose,
    deligne_action,
    edge_value,
    enumerate_trees,
    generalized_ch,
    group_as_groupoid,
    matrix_exp,
    matrix_log,
    nerve_of_groupoid,
    oracle_bch,
    rho1,
    rho3_associativity_check,
    tree_exponential,
    tree_size,
)
from linfty.fixtures import (
    Sampler,
    cyclic_group_groupoid,
    free_nilpotent_class3,
    get_fixture,
    get_representation,
    pair_groupoid,
)
from linfty.forms import Form
from linfty.mc_gamma import GaugeParameter, solve_gauge_fixed


def brute_force_tree_coefficients(k):
    """Count growth sequences by shape: every function sending each
    label below k-1 to a larger parent label gives a rooted tree on
    {0..k-1} with root k-1, and the number of such labeled trees per
    unlabeled shape is exactly the flow coefficient."""
    counts = Counter()
    choices = [range(v + 1, k) for v in range(k - 1)]
    for parents in itertools.product(*choices):
        children = {v: [] for v in range(k)}
        for v, p in enumerate(parents):
            children[p].append(v)

        def shape(v):
            return canonical_tree([shape(c) for c in children[v]])

        counts[shape(k - 1)] += 1
    return counts


class TestTrees:
    def test_counts(self):
        assert [len(enumerate_trees(k)) for k in range(1, 6)] == [1, 1, 2, 4, 9]

    def test_small_coefficients(self):
        assert [t.coefficient for t in enumerate_trees(1)] == [1]
        assert [t.coefficient for t in enumerate_trees(2)] == [1]
        assert sorted(t.coefficient for t in enumerate_trees(3)) == [1, 1]

    def test_coefficients_match_brute_force(self):
        for k in range(1, 7):
            expected = brute_force_tree_coefficients(k)
            computed = {t.tree: t.coefficient for t in enumerate_trees(k)}
            assert computed == dict(expected)

    def test_total_weight_is_factorial(self):
        from math import factorial
        for k in range(1, 7):
            assert sum(t.coefficient for t in enumerate_trees(k)) == factorial(
                k - 1
            )

    def test_canonical_order_is_stable(self):
        first = [t.tree for t in enumerate_trees(5)]
        second = [t.tree for t in enumerate_trees(5)]
        assert first == second
        assert all(tree_size(t) == 5 for t in first)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            enumerate_trees(0)


class TestGaugeFlow:
    def test_first_terms_displayed(self):
        algebra, _ = free_nilpotent_class3()
        zero = algebra.zero_vector()
        x = algebra.basis_vector("x1")

        def tb(*args):
            return twisted_bracket(algebra, zero, list(args))

        assert tree_exponential(algebra, zero, x, 1) == tb(x)
        assert tree_exponential(algebra, zero, x, 2) == tb(x, tb(x))
        assert tree_exponential(algebra, zero, x, 3) == tb(x, tb(x, tb(x))) + tb(
            x, tb(x), tb(x)
        )

    def test_vanishes_past_nilpotency(self):
        heis = get_fixture("heisenberg")
        x = heis.vector({"e1": 1, "e2": Fraction(1, 2)})
        for k in range(3, 6):
            assert tree_exponential(heis, heis.zero_vector(), x, k).is_zero()

    def test_degree_zero_lie_flow_is_trivial(self):
        heis = get_fixture("heisenberg")
        x = heis.basis_vector("e1")
        for k in range(1, 4):
            assert tree_exponential(heis, heis.zero_vector(), x, k).is_zero()


class TestEdgeFormula:
    def test_degree_zero_edge(self):
        heis = get_fixture("heisenberg")
        x = heis.vector({"e1": 1, "e3": Fraction(-1, 2)})
        edge = alpha1(heis, heis.zero_vector(), x)
        expected = TensorElement(
            heis, 1, {s: Form.dt(1, 1).scale(-c) for s, c in x.coeffs.items()}
        )
        assert edge.value == expected
        assert edge_value(edge) == x

    def test_abelian_edge(self):
        ab = get_fixture("abelian_delta")
        x = ab.basis_vector("a")
        edge = alpha1(ab, ab.zero_vector(), x)
        expected = TensorElement(
            ab, 1, {"b": Form.t(1, 1).scale(-1), "a": Form.dt(1, 1).scale(-1)}
        )
        assert edge.value == expected
        assert edge.vertex(0) == ab.zero_vector()
        assert edge.vertex(1) == rho1(ab, ab.zero_vector(), x)

    def test_matches_solver(self):
        sampler = Sampler(30)
        for name in ("dg_lie_01", "heis_exterior", "three_bracket"):
            algebra = get_fixture(name)
            for _ in range(5):
                mu = sampler.mc_element(algebra)
                x = sampler.vector(algebra, 0)
                witness = TensorElement(
                    algebra, 1,
                    {s: Form.t(1, 1).scale(-c) for s, c in x.coeffs.items()},
                )
                solved = solve_gauge_fixed(
                    algebra, 1, 0, GaugeParameter(n=1, mu=mu, witness=witness)
                )
                assert alpha1(algebra, mu, x) == solved

    def test_rho1_values(self):
        ab = get_fixture("abelian_delta")
        x = ab.basis_vector("a")
        assert rho1(ab, ab.zero_vector(), x) == -ab.basis_vector("b")
        heis = get_fixture("heisenberg")
        assert rho1(
            heis, heis.zero_vector(), heis.basis_vector("e1")
        ).is_zero()


class TestGeneralizedSeries:
    def test_abelian_quadratic_value(self):
        # exact closed form in an abelian algebra with a differential on
        # the interior slot, under the frozen orientation
        ab = LInftyAlgebra(
            "ab_mix",
            [("x1", 0), ("x2", 0), ("x12", -1), ("y12", 0)],
            {("x12",): {"y12": 1}},
        )
        result = generalized_ch(
            ab, 2, ab.zero_vector(),
            {
                (1,): ab.basis_vector("x1"),
                (2,): ab.basis_vector("x2"),
                (1, 2): ab.basis_vector("x12"),
            },
        )
        expected = (
            ab.basis_vector("x1")
            - ab.basis_vector("x2")
            - ab.basis_vector("y12").scale(Fraction(1, 2))
        )
        assert result.value == expected
        # the opposite orientation reproduces the reference sign +1/2
        flipped = -generalized_ch(
            ab, 2, ab.zero_vector(),
            {
                (1,): -ab.basis_vector("x1"),
                (2,): -ab.basis_vector("x2"),
                (1, 2): ab.basis_vector("x12"),
            },
        ).value
        assert flipped == (
            ab.basis_vector("x1")
            - ab.basis_vector("x2")
            + ab.basis_vector("y12").scale(Fraction(1, 2))
        )

    def test_one_dimensional_case_reduces_to_the_edge_series(self):
        sampler = Sampler(31)
        for name in ("heisenberg", "dg_lie_01"):
            algebra = get_fixture(name)
            mu = sampler.mc_element(algebra)
            x = sampler.vector(algebra, 0)
            result = generalized_ch(algebra, 1, mu, {(1,): x})
            assert result.value == rho1(algebra, mu, x)

    def test_heisenberg_quadratic_is_the_matrix_logarithm(self):
        heis = get_fixture("heisenberg")
        rep = get_representation("heisenberg")
        sampler = Sampler(32)
        for _ in range(5):
            x1 = sampler.vector(heis, 0)
            x2 = sampler.vector(heis, 0)
            rho = generalized_ch(
                heis, 2, heis.zero_vector(), {(1,): x1, (2,): x2}
            ).value
            expected = matrix_log(
                _mat_mul(
                    matrix_exp(rep.apply(x1)),
                    matrix_exp(rep.apply(x2).scale(-1)),
                )
            )
            assert rep.apply(rho) == expected

    def test_input_validation(self):
        heis = get_fixture("heisenberg")
        with pytest.raises(ValueError):
            generalized_ch(
                heis, 2, heis.zero_vector(), {(2, 1): heis.basis_vector("e1")}
            )
        with pytest.raises(ValueError):
            generalized_ch(
                heis, 2, heis.zero_vector(), {(1, 2): heis.basis_vector("e1")}
            )


def _mat_mul(a, b):
    m = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)]
        for i in range(m)
    ]


class TestCompose:
    def test_identity_laws(self):
        heis = get_fixture("heisenberg")
        sampler = Sampler(33)
        zero = heis.zero_vector()
        x = sampler.vector(heis, 0)
        assert compose(heis, zero, x, zero) == x
        assert compose(heis, zero, zero, x) == x

    def test_abelian_composition_adds(self):
        ab = LInftyAlgebra("plain", [("g1", 0), ("g2", 0)])
        sampler = Sampler(34)
        x, y = sampler.vector(ab, 0), sampler.vector(ab, 0)
        assert compose(ab, ab.zero_vector(), x, y) == x + y

    def test_matches_matrix_group_law(self):
        for name in ("heisenberg", "ut4"):
            rep = get_representation(name)
            algebra = rep.algebra
            sampler = Sampler(35)
            zero = algebra.zero_vector()
            for _ in range(6):
                x, y = sampler.vector(algebra, 0), sampler.vector(algebra, 0)
                z = compose(algebra, zero, x, y)
                assert rep.apply(z) == oracle_bch(rep.apply(x), rep.apply(y))

    def test_self_cancellation(self):
        heis = get_fixture("heisenberg")
        sampler = Sampler(36)
        x = sampler.vector(heis, 0)
        rho = generalized_ch(
            heis, 2, heis.zero_vector(), {(1,): x, (2,): x}
        ).value
        assert rho.is_zero()

    def test_rejects_negative_degrees(self):
        tb = get_fixture("three_bracket")
        with pytest.raises(ValueError):
            compose(
                tb, tb.zero_vector(), tb.basis_vector("a"), tb.basis_vector("b")
            )

    def test_nonzero_base_point(self):
        # identities and associativity hold along a moving base point
        algebra = get_fixture("dg_lie_01")
        sampler = Sampler(50)
        zero = algebra.zero_vector()
        for _ in range(4):
            mu = sampler.mc_element(algebra)
            x, y, z = (sampler.vector(algebra, 0) for _ in range(3))
            assert compose(algebra, mu, x, zero) == x
            assert compose(algebra, mu, zero, y) == y
            left = compose(algebra, mu, compose(algebra, mu, x, y), z)
            right = compose(algebra, mu, x, compose(algebra, mu, y, z))
            assert left == right


class TestAssociativity:
    def test_dg_lie_associator_vanishes(self):
        sampler = Sampler(37)
        for name in ("heisenberg", "ut4", "dg_lie_01"):
            algebra = get_fixture(name)
            mu = sampler.mc_element(algebra)
            xs = [sampler.vector(algebra, 0) for _ in range(3)]
            ok, _ = rho3_associativity_check(algebra, mu, *xs)
            assert ok

    def test_three_bracket_associator_reported(self):
        tb = get_fixture("three_bracket")
        ok, result = rho3_associativity_check(
            tb, tb.zero_vector(),
            tb.basis_vector("a"), tb.basis_vector("b"), tb.basis_vector("c"),
        )
        # the genuine ternary bracket shows up in the associator
        assert not ok
        assert set(result.value.coeffs) == {"w"}


class TestGaugeAction:
    def test_examples(self):
        dg = get_fixture("dg_lie_01")
        sampler = Sampler(38)
        mu = sampler.mc_element(dg)
        assert deligne_action(dg, dg.zero_vector(), mu) == mu
        ab = get_fixture("abelian_delta")
        x = ab.basis_vector("a")
        mu0 = ab.zero_vector()
        assert deligne_action(ab, x, mu0) == -bracket(ab, [x])

    def test_matches_rho1_and_preserves_flatness(self):
        sampler = Sampler(39)
        for name in ("dg_lie_01", "heis_exterior"):
            algebra = get_fixture(name)
            for _ in range(10):
                mu = sampler.mc_element(algebra)
                x = sampler.vector(algebra, 0)
                acted = deligne_action(algebra, x, mu)
                assert is_mc(algebra, acted)
                assert acted == rho1(algebra, mu, x)

    def test_action_property_through_the_oracle(self):
        # acting twice equals acting by the matrix-certified product
        algebra = get_fixture("heis_exterior")
        rep3 = get_representation("heisenberg")
        sampler = Sampler(40)
        for _ in range(8):
            mu = sampler.mc_element(algebra)
            x = sampler.vector(algebra, 0)
            y = sampler.vector(algebra, 0)
            twice = deligne_action(algebra, x, deligne_action(algebra, y, mu))
            xm = rep3.apply(rep3.algebra.vector(
                {s: c for s, c in x.coeffs.items()}
            ))
            ym = rep3.apply(rep3.algebra.vector(
                {s: c for s, c in y.coeffs.items()}
            ))
            zm = oracle_bch(xm, ym)
            z = algebra.vector(
                {
                    "e1": zm.rows[0][1],
                    "e2": zm.rows[1][2],
                    "e3": zm.rows[0][2],
                }
            )
            assert deligne_action(algebra, z, mu) == twice

    def test_rejects_higher_brackets(self):
        tb = get_fixture("three_bracket")
        with pytest.raises(ValueError):
            deligne_action(
                tb, tb.basis_vector("a"), tb.zero_vector()
            )


class TestNilMatrices:
    def test_exp_example(self):
        m = NilMatrix([[0, 1, 3], [0, 0, 2], [0, 0, 0]])
        assert matrix_exp(m) == [
            [1, 1, 4],
            [0, 1, 2],
            [0, 0, 1],
        ]

    def test_log_inverts_exp(self):
        rng = random.Random(41)
        for _ in range(10):
            rows = [[Fraction(0)] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(i + 1, 4):
                    rows[i][j] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            m = NilMatrix(rows)
            assert matrix_log(matrix_exp(m)) == m

    def test_heisenberg_oracle_truncation(self):
        x = NilMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
        y = NilMatrix([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
        z = oracle_bch(x, y)
        half = x + y
        assert z == half + x.commutator(y).scale(Fraction(1, 2))

    def test_validation(self):
        with pytest.raises(ValueError):
            NilMatrix([[1, 0], [0, 0]])
        with pytest.raises(ValueError):
            matrix_log([[2, 0], [0, 1]])


class TestGroupoidNerve:
    def test_cyclic_two_element_nerve(self):
        nerve = nerve_of_groupoid(cyclic_group_groupoid(2), 3)
        assert len(nerve.simplices[2]) == 4
        filler = nerve.unique_filler(2, 1, ((1,), None, (1,)))
        assert nerve.face(2, 1, filler) == (0,)

    def test_composite_edge_of_inner_horn(self):
        z4 = nerve_of_groupoid(cyclic_group_groupoid(4), 3)
        for g in range(4):
            for h in range(4):
                filler = z4.unique_filler(2, 1, ((g,), None, (h,)))
                assert z4.face(2, 1, filler) == ((h + g) % 4,)

    def test_discrete_groupoid_nerve_constant(self):
        discrete = FiniteGroupoid(
            objects=["p", "q"],
            morphisms=[("p", "p"), ("q", "q")],
            source={("p", "p"): "p", ("q", "q"): "q"},
            target={("p", "p"): "p", ("q", "q"): "q"},
            identity={"p": ("p", "p"), "q": ("q", "q")},
            compose={
                (("p", "p"), ("p", "p")): ("p", "p"),
                (("q", "q"), ("q", "q")): ("q", "q"),
            },
        )
        nerve = nerve_of_groupoid(discrete, 3)
        assert all(len(nerve.simplices[n]) == 2 for n in range(4))

    def test_bijectivity_and_coskeletal(self):
        for groupoid in (cyclic_group_groupoid(2), pair_groupoid()):
            nerve = nerve_of_groupoid(groupoid, 3)
            assert nerve.check_filler_bijectivity(2)
            assert nerve.check_filler_bijectivity(3)
            assert nerve.check_coskeletal(3)

    def test_invalid_tables_rejected(self):
        with pytest.raises(ValueError):
            group_as_groupoid([0, 1], lambda a, b: 0, 0)  # not a group

    def test_monodromy_checks(self):
        for name in ("heisenberg", "ut4"):
            rep = get_representation(name)
            sampler = Sampler(42)
            for _ in range(5):
                x1 = sampler.vector(rep.algebra, 0)
                x2 = sampler.vector(rep.algebra, 0)
                assert check_monodromy(rep, x1, x2)
