"""Solvers, horns, thinness, and the abelian cochain comparison."""


import pytest

from linfty.algebra import (
    LInftyAlgebra,
    Morphism,
    TensorElement,
    constant_tensor,
    tensor_curvature,
)
from linfty.fixtures import (
    Sampler,
    get_fixture,
    heisenberg_abelianization,
    three_bracket_projection,
)
from linfty.forms import Form
from linfty.mc_gamma import (
    GaugeParameter,
    Horn,
    SimplexElement,
    constant_simplex,
    dold_kan_compare,
    fill_horn_gamma,
    fill_horn_mc,
    fill_horn_relative,
    gamma_data,
    is_thin,
    mc_data,
    solve_gauge_fixed,
    solve_mc,
)


def make_edge_witness(algebra, vector):
    return TensorElement(
        algebra, 1,
        {s: Form.t(1, 1).scale(c) for s, c in vector.coeffs.items()},
    )


class TestSolvers:
    def test_abelian_single_step(self):
        ab = get_fixture("abelian_delta")
        sampler = Sampler(1)
        witness = sampler.witness(ab, 2)
        g = GaugeParameter(n=2, mu=ab.zero_vector(), witness=witness)
        alpha = solve_mc(ab, 2, 0, g)
        base = witness.evaluate_vertex(0)
        normalized = witness - constant_tensor(2, base)
        assert alpha.value == normalized.d_plus_delta()

    def test_degree_zero_on_the_interval(self):
        # any one-form with degree-0 coefficients is already flat
        heis = get_fixture("heisenberg")
        sampler = Sampler(2)
        witness = sampler.witness(heis, 1)
        g = GaugeParameter(n=1, mu=heis.zero_vector(), witness=witness)
        alpha = solve_mc(heis, 1, 0, g)
        normalized = witness - constant_tensor(
            1, witness.evaluate_vertex(0)
        )
        assert alpha.value == normalized.d_plus_delta()

    def test_heisenberg_two_simplex(self):
        heis = get_fixture("heisenberg")
        witness = TensorElement(
            heis, 2, {"e1": Form.t(1, 2), "e2": Form.t(2, 2)}
        )
        g = GaugeParameter(n=2, mu=heis.zero_vector(), witness=witness)
        alpha = solve_mc(heis, 2, 0, g)
        assert tensor_curvature(alpha.value).is_zero()
        fixed = solve_gauge_fixed(heis, 2, 0, g)
        assert fixed.value.s().is_zero()
        assert tensor_curvature(fixed.value).is_zero()

    def test_round_trips_all_bases(self):
        algebra = get_fixture("heis_exterior")
        sampler = Sampler(3)
        for n in (1, 2, 3):
            g = GaugeParameter(
                n=n, mu=sampler.mc_element(algebra),
                witness=sampler.witness(algebra, n),
            )
            plain = solve_mc(algebra, n, 0, g)
            fixed = solve_gauge_fixed(algebra, n, 0, g)
            for base in range(n + 1):
                assert solve_mc(algebra, n, base, mc_data(plain, base)) == plain
                assert (
                    solve_gauge_fixed(algebra, n, base, gamma_data(fixed, base))
                    == fixed
                )

    def test_determinism(self):
        dg = get_fixture("dg_lie_01")
        sampler = Sampler(4)
        g = GaugeParameter(
            n=2, mu=sampler.mc_element(dg), witness=sampler.witness(dg, 2)
        )
        assert solve_gauge_fixed(dg, 2, 0, g) == solve_gauge_fixed(dg, 2, 0, g)

    def test_rejects_non_mc_vertex(self):
        shifted = LInftyAlgebra(
            "shifted", [("p", 1), ("q", 2)], {("p",): {"q": 1}}
        )
        g = GaugeParameter(
            n=1, mu=shifted.basis_vector("p"),
            witness=TensorElement(shifted, 1, {}),
        )
        with pytest.raises(ValueError):
            solve_mc(shifted, 1, 0, g)

    def test_witness_degree_validated(self):
        heis = get_fixture("heisenberg")
        with pytest.raises(ValueError):
            GaugeParameter(
                n=1, mu=heis.zero_vector(),
                witness=TensorElement(heis, 1, {"e1": Form.dt(1, 1)}),
            )


class TestFacesAndThinness:
    def test_face_degeneracy_identity(self):
        algebra = get_fixture("dg_lie_01")
        sampler = Sampler(5)
        g = GaugeParameter(
            n=2, mu=sampler.mc_element(algebra),
            witness=sampler.witness(algebra, 2),
        )
        x = solve_gauge_fixed(algebra, 2, 0, g)
        for k in (0, 1, 2):
            assert x.degenerate(k).face(k) == x

    def test_faces_preserve_equations(self):
        algebra = get_fixture("heis_exterior")
        sampler = Sampler(6)
        g = GaugeParameter(
            n=3, mu=sampler.mc_element(algebra),
            witness=sampler.witness(algebra, 3),
        )
        x = solve_gauge_fixed(algebra, 3, 0, g)
        for k in range(4):
            face = x.face(k)
            assert tensor_curvature(face.value).is_zero()
            assert face.value.s().is_zero()

    def test_vertices_of_edges(self):
        algebra = get_fixture("dg_lie_01")
        sampler = Sampler(7)
        mu = sampler.mc_element(algebra)
        g = GaugeParameter(n=1, mu=mu, witness=sampler.witness(algebra, 1))
        edge = solve_mc(algebra, 1, 0, g)
        assert edge.vertex(0) == mu
        assert edge.face(1).value == constant_tensor(0, mu)
        assert edge.face(0).value == constant_tensor(0, edge.vertex(1))

    def test_degenerate_simplices_are_thin(self):
        algebra = get_fixture("heis_exterior")
        sampler = Sampler(8)
        g = GaugeParameter(
            n=1, mu=sampler.mc_element(algebra),
            witness=sampler.witness(algebra, 1),
        )
        edge = solve_gauge_fixed(algebra, 1, 0, g)
        for k in (0, 1):
            assert is_thin(edge.degenerate(k))

    def test_everything_thin_when_degree_absent(self):
        # no degree -1 part: every 2-simplex is thin
        heis = get_fixture("heisenberg")
        sampler = Sampler(9)
        g = GaugeParameter(
            n=2, mu=heis.zero_vector(), witness=sampler.witness(heis, 2)
        )
        assert is_thin(solve_gauge_fixed(heis, 2, 0, g))

    def test_constant_simplex(self):
        algebra = get_fixture("heis_exterior")
        sampler = Sampler(10)
        mu = sampler.mc_element(algebra)
        simplex = constant_simplex(algebra, 2, mu)
        assert simplex.is_gauge_fixed()
        for i in range(3):
            assert simplex.vertex(i) == mu


class TestHorns:
    def fixture_horn(self, name, n, missing, seed=11):
        algebra = get_fixture(name)
        sampler = Sampler(seed)
        g = GaugeParameter(
            n=n, mu=sampler.mc_element(algebra),
            witness=sampler.witness(algebra, n),
        )
        simplex = solve_gauge_fixed(algebra, n, 0, g)
        faces = {j: simplex.face(j) for j in range(n + 1) if j != missing}
        return simplex, Horn(n, missing, faces)

    def test_incompatible_horn_rejected(self):
        simplex, horn = self.fixture_horn("dg_lie_01", 2, 1)
        other, _ = self.fixture_horn("dg_lie_01", 2, 1, seed=12)
        faces = {0: simplex.face(0), 2: other.face(2)}
        if simplex.face(0).face(1) != other.face(2).face(1):
            with pytest.raises(ValueError):
                Horn(2, 1, faces)

    def test_gamma_fill_all_positions(self):
        for name in ("heisenberg", "dg_lie_01", "heis_exterior", "three_bracket"):
            for n in (2, 3):
                for missing in range(n + 1):
                    simplex, horn = self.fixture_horn(name, n, missing)
                    filler = fill_horn_gamma(horn)
                    assert is_thin(filler)
                    assert filler.is_gauge_fixed()

    def test_gamma_fill_one_dimensional(self):
        algebra = get_fixture("heis_exterior")
        sampler = Sampler(13)
        mu = sampler.mc_element(algebra)
        vertex = SimplexElement(
            algebra, 0, constant_tensor(0, mu), validate=False
        )
        for missing in (0, 1):
            horn = Horn(1, missing, {1 - missing: vertex})
            filler = fill_horn_gamma(horn)
            assert filler.face(1 - missing) == vertex

    def test_plain_fill_one_dimensional(self):
        algebra = get_fixture("dg_lie_01")
        sampler = Sampler(50)
        mu = sampler.mc_element(algebra)
        vertex = SimplexElement(
            algebra, 0, constant_tensor(0, mu), validate=False
        )
        for missing in (0, 1):
            horn = Horn(1, missing, {1 - missing: vertex})
            filler = fill_horn_mc(horn)
            assert filler.face(1 - missing) == vertex

    def test_wrong_face_count_rejected(self):
        algebra = get_fixture("dg_lie_01")
        sampler = Sampler(51)
        g = GaugeParameter(
            n=2, mu=sampler.mc_element(algebra),
            witness=sampler.witness(algebra, 2),
        )
        simplex = solve_gauge_fixed(algebra, 2, 0, g)
        with pytest.raises(ValueError):
            Horn(2, 1, {0: simplex.face(0)})
        with pytest.raises(ValueError):
            Horn(2, 1, {0: simplex.face(0), 1: simplex.face(1),
                        2: simplex.face(2)})

    def test_gauge_parameter_dimension_mismatch(self):
        algebra = get_fixture("dg_lie_01")
        sampler = Sampler(52)
        g = GaugeParameter(
            n=2, mu=sampler.mc_element(algebra),
            witness=sampler.witness(algebra, 2),
        )
        with pytest.raises(ValueError):
            solve_mc(algebra, 3, 0, g)
        with pytest.raises(ValueError):
            solve_gauge_fixed(algebra, 2, 5, g)

    def test_non_nilpotent_rejected_by_solver(self):
        split = LInftyAlgebra(
            "split",
            [("h", 0), ("e", 0), ("f", 0)],
            {
                ("h", "e"): {"e": 2},
                ("h", "f"): {"f": -2},
                ("e", "f"): {"h": 1},
            },
        )
        g = GaugeParameter(
            n=1, mu=split.zero_vector(),
            witness=TensorElement(split, 1, {"e": Form.t(1, 1)}),
        )
        with pytest.raises(ValueError):
            solve_mc(split, 1, 0, g)

    def test_mc_fill_degenerate_faces(self):
        algebra = get_fixture("dg_lie_01")
        sampler = Sampler(14)
        g = GaugeParameter(
            n=1, mu=sampler.mc_element(algebra),
            witness=sampler.witness(algebra, 1),
        )
        edge = solve_mc(algebra, 1, 0, g)
        simplex = edge.degenerate(0)
        horn = Horn(2, 1, {0: simplex.face(0), 2: simplex.face(2)})
        filler = fill_horn_mc(horn)
        assert tensor_curvature(filler.value).is_zero()

    def test_thin_filler_of_thin_simplex_returns_it(self):
        algebra = get_fixture("heis_exterior")
        for missing in (0, 1, 2):
            simplex, horn = self.fixture_horn("heis_exterior", 2, missing)
            filler = fill_horn_gamma(horn)
            if is_thin(simplex):
                assert filler == simplex

    def test_abelian_composition_is_additive(self):
        ab = get_fixture("abelian_delta")
        sampler = Sampler(15)
        def edge(vec):
            wit = make_edge_witness(ab, vec)
            return solve_gauge_fixed(
                ab, 1, 0, GaugeParameter(n=1, mu=ab.zero_vector(), witness=wit)
            )
        x = sampler.vector(ab, 0)
        y = sampler.vector(ab, 0)
        ex, ey = edge(x), edge(y)
        # endpoints of abelian edges agree, so the horn is constant
        horn = Horn(2, 1, {0: edge(x).degenerate(0).face(0), 2: ey})
        # composing with the degenerate-x edge keeps faces compatible
        filler = fill_horn_gamma(horn)
        assert filler.face(1).integrate((0, 1)) == ey.integrate((0, 1)) + \
            horn.faces[0].integrate((0, 1))


class TestRelativeFill:
    def test_heisenberg_abelianization(self):
        projection = heisenberg_abelianization()
        heis = projection.source
        sampler = Sampler(16)
        for missing in (0, 1, 2):
            g = GaugeParameter(
                n=2, mu=heis.zero_vector(), witness=sampler.witness(heis, 2)
            )
            simplex = solve_gauge_fixed(heis, 2, 0, g)
            horn = Horn(
                2, missing,
                {j: simplex.face(j) for j in range(3) if j != missing},
            )
            target = SimplexElement(
                projection.target, 2, projection.apply(simplex.value)
            )
            lifted = fill_horn_relative(projection, horn, target)
            assert projection.apply(lifted.value) == target.value

    def test_lift_exercises_the_top_integral(self):
        projection = three_bracket_projection()
        source = projection.source
        sampler = Sampler(17)
        exercised = 0
        for missing in (0, 1, 2):
            g = GaugeParameter(
                n=2, mu=source.zero_vector(),
                witness=sampler.witness(source, 2),
            )
            simplex = solve_gauge_fixed(source, 2, 0, g)
            horn = Horn(
                2, missing,
                {j: simplex.face(j) for j in range(3) if j != missing},
            )
            target = SimplexElement(
                projection.target, 2, projection.apply(simplex.value)
            )
            lifted = fill_horn_relative(projection, horn, target)
            assert projection.apply(lifted.value) == target.value
            exercised += not target.integrate((0, 1, 2)).is_zero()
        assert exercised > 0

    def test_three_dimensional_lift(self):
        source = LInftyAlgebra(
            "deep", [("u", -2), ("z", -1), ("p", 0)], {("u",): {"z": 1}}
        )
        target = LInftyAlgebra(
            "deep_q", [("ub", -2), ("zb", -1)], {("ub",): {"zb": 1}}
        )
        f = Morphism(
            source, target,
            {
                "u": target.basis_vector("ub"),
                "z": target.basis_vector("zb"),
                "p": target.zero_vector(),
            },
        )
        sampler = Sampler(18)
        for missing in range(4):
            g = GaugeParameter(
                n=3, mu=source.zero_vector(),
                witness=sampler.witness(source, 3, 2),
            )
            simplex = solve_gauge_fixed(source, 3, 0, g)
            horn = Horn(
                3, missing,
                {j: simplex.face(j) for j in range(4) if j != missing},
            )
            image = SimplexElement(target, 3, f.apply(simplex.value))
            lifted = fill_horn_relative(f, horn, image)
            assert f.apply(lifted.value) == image.value

    def test_identity_returns_target(self):
        heis = get_fixture("heisenberg")
        ident = Morphism(
            heis, heis, {s: heis.basis_vector(s) for s in heis.symbols}
        )
        sampler = Sampler(19)
        g = GaugeParameter(
            n=2, mu=heis.zero_vector(), witness=sampler.witness(heis, 2)
        )
        simplex = solve_gauge_fixed(heis, 2, 0, g)
        horn = Horn(2, 1, {0: simplex.face(0), 2: simplex.face(2)})
        assert fill_horn_relative(ident, horn, simplex) == simplex

    def test_two_lifts_differ_by_a_kernel_section(self):
        # moving the chosen preimage of the top integral by a kernel
        # element gives a different filler over the same target
        import linfty.mc_gamma as M
        from linfty import dupont

        projection = three_bracket_projection()
        source = projection.source
        sampler = Sampler(20)
        simplex = None
        while True:
            g = GaugeParameter(
                n=2, mu=source.zero_vector(), witness=sampler.witness(source, 2)
            )
            simplex = solve_gauge_fixed(source, 2, 0, g)
            if not projection.apply(
                simplex.value
            ).integrate_chain((0, 1, 2)).is_zero():
                break
        horn = Horn(2, 1, {0: simplex.face(0), 2: simplex.face(2)})
        target = SimplexElement(
            projection.target, 2, projection.apply(simplex.value)
        )
        lifted = fill_horn_relative(projection, horn, target)
        # shift the section by the kernel generator w
        x = projection.section(target.integrate((0, 1, 2)))
        shifted = x + source.basis_vector("w")
        witness = M._whitney_horn_witness(horn, 1)
        omega_top = dupont.elementary_form((0, 2), 2)
        sign = M._TOP_WITNESS_SIGN(1, 2)
        witness = witness + TensorElement(
            source, 2,
            {s: omega_top.scale(sign * c) for s, c in shifted.coeffs.items()},
        )
        other = solve_gauge_fixed(
            source, 2, 1,
            GaugeParameter(n=2, mu=horn.vertex_value(1), witness=witness),
        )
        assert all(other.face(j) == horn.faces[j] for j in horn.faces)
        assert projection.apply(other.value) == target.value
        assert other != lifted
        assert projection.apply(other.value - lifted.value).is_zero()

    def test_thin_target_lift_is_the_plain_fill(self):
        projection = heisenberg_abelianization()
        heis = projection.source
        sampler = Sampler(23)
        g = GaugeParameter(
            n=2, mu=heis.zero_vector(), witness=sampler.witness(heis, 2)
        )
        simplex = solve_gauge_fixed(heis, 2, 0, g)
        horn = Horn(2, 1, {0: simplex.face(0), 2: simplex.face(2)})
        target = SimplexElement(
            projection.target, 2, projection.apply(simplex.value)
        )
        # no degree -1 downstairs: the target is automatically thin and
        # the relative fill collapses onto the absolute thin filler
        lifted = fill_horn_relative(projection, horn, target)
        assert lifted == fill_horn_gamma(horn)

    def test_non_surjective_rejected(self):
        heis = get_fixture("heisenberg")
        target = LInftyAlgebra("bigger", [("a1", 0), ("a2", 0), ("extra", 7)])
        f = Morphism(
            heis, target,
            {
                "e1": target.basis_vector("a1"),
                "e2": target.basis_vector("a2"),
                "e3": target.zero_vector(),
            },
        )
        sampler = Sampler(21)
        g = GaugeParameter(
            n=2, mu=heis.zero_vector(), witness=sampler.witness(heis, 2)
        )
        simplex = solve_gauge_fixed(heis, 2, 0, g)
        horn = Horn(2, 1, {0: simplex.face(0), 2: simplex.face(2)})
        image = SimplexElement(target, 2, f.apply(simplex.value))
        with pytest.raises(ValueError):
            fill_horn_relative(f, horn, image)


class TestOneForms:
    def test_every_polynomial_one_form_is_flat_in_degree_zero(self):
        heis = get_fixture("heisenberg")
        sampler = Sampler(22)
        for _ in range(20):
            comps = {}
            for sym in heis.symbols:
                form = sampler.form(1, 1, 4)
                if not form.is_zero():
                    comps[sym] = form
            alpha = TensorElement(heis, 1, comps)
            assert tensor_curvature(alpha).is_zero()


class TestDoldKan:
    def test_reports_pass(self):
        for name in ("zero", "abelian_delta", "abelian_chain"):
            algebra = get_fixture(name)
            for n in (1, 2, 3):
                report = dold_kan_compare(algebra, n)
                assert report.passed, report.summary()

    def test_dimension_tables(self):
        # a single degree-0 generator: edges are exactly the group
        point = LInftyAlgebra("line", [("x", 0)])
        report = dold_kan_compare(point, 1)
        assert report.cocycle_dim == 1
        # a single degree-1 generator with zero differential: the
        # cocycle condition ties the vertex labels into the constants
        top = LInftyAlgebra("top", [("y", 1)])
        report = dold_kan_compare(top, 1)
        assert report.cocycle_dim == 1
        # on the 2-simplex the same algebra has the constants only
        assert dold_kan_compare(top, 2).cocycle_dim == 1

    def test_zero_algebra_is_singleton(self):
        zero = get_fixture("zero")
        for n in (1, 2, 3):
            report = dold_kan_compare(zero, n)
            assert report.cocycle_dim == 0

    def test_rejects_nonabelian(self):
        with pytest.raises(ValueError):
            dold_kan_compare(get_fixture("heisenberg"), 2)
