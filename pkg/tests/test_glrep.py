import random

import pytest

from hitcalc.glrep import (
    GLMatrix,
    act_homology,
    act_poly,
    coinvariant_class_nonzero,
    coinvariant_classes,
    generators,
    group_closure,
    invariant_basis,
    parse_glmatrix,
)
from hitcalc.homology import DElement, pair, primitive_basis, zeta_element
from hitcalc.steenrod import Polynomial, enumerate_monomials, parse_polynomial, sq


class TestGLMatrix:
    def test_parse_format(self):
        g = parse_glmatrix("10;11")
        assert g.entries == ((1, 0), (1, 1))
        assert str(g) == "10;11"

    def test_rejects_singular(self):
        with pytest.raises(ValueError):
            parse_glmatrix("10;10")

    def test_inverse(self):
        g = parse_glmatrix("11;01")
        assert g @ g.inverse() == GLMatrix.identity(2)


class TestGenerators:
    def test_rank_one_trivial(self):
        assert generators(1) == []

    def test_rank_two_order(self):
        assert len(group_closure(generators(2))) == 6

    def test_rank_three_order(self):
        assert len(group_closure(generators(3))) == 168  # (8-1)(8-2)(8-4)


class TestActions:
    def test_transvection_on_square(self):
        t = generators(2)[-1]
        assert act_poly(t, parse_polynomial("2.0", 2)) == parse_polynomial("2.0+0.2", 2)

    def test_identity(self):
        p = parse_polynomial("1.2+3.0", 2)
        assert act_poly(GLMatrix.identity(2), p) == p

    def test_swap(self):
        s = generators(2)[0]
        assert act_poly(s, parse_polynomial("1.2", 2)) == parse_polynomial("2.1", 2)

    def test_commutes_with_squares(self):
        rng = random.Random(31)
        gens = generators(3)
        for _ in range(30):
            g = rng.choice(gens)
            d = rng.randrange(1, 8)
            k = rng.randrange(0, d + 1)
            monos = enumerate_monomials(3, d)
            p = Polynomial(rng.sample(monos, min(3, len(monos))), 3)
            assert act_poly(g, sq(k, p)) == sq(k, act_poly(g, p))

    def test_homology_action_is_adjoint(self):
        rng = random.Random(41)
        gens = generators(2)
        for _ in range(40):
            g = rng.choice(gens)
            d = rng.randrange(1, 8)
            monos = enumerate_monomials(2, d)
            xi = DElement.from_tuples(
                (m.exponents for m in rng.sample(monos, min(3, len(monos)))), 2
            )
            f = Polynomial(rng.sample(monos, min(3, len(monos))), 2)
            assert pair(act_homology(g, xi), f) == pair(xi, act_poly(g.inverse(), f))


class TestInvariants:
    def test_rank_two_degree_two(self):
        classes = invariant_basis(2, 2)
        assert [str(c) for c in classes] == ["1.1"]

    def test_rank_one_trivial_group(self):
        assert len(invariant_basis(1, 3)) == 1

    def test_rank_two_degree_three(self):
        # the full orbit sum of the cohit representatives is fixed
        classes = invariant_basis(2, 3)
        assert [str(c) for c in classes] == ["0.3+2.1+3.0"]


class TestCoinvariants:
    def test_rank_two_degree_two(self):
        report = coinvariant_classes(2, 2)
        assert report.dimension == 1
        assert [str(e) for e in report.class_representatives] == ["(1).(1)"]

    def test_rank_four_degree_eleven(self):
        assert coinvariant_classes(4, 11).dimension == 0

    def test_dimension_bookkeeping(self):
        report = coinvariant_classes(3, 8)
        assert (
            report.dimension
            == primitive_basis(3, 8).dimension - report.relations_rank
        )

    def test_zeta_class_detection(self):
        assert coinvariant_class_nonzero(4, 23, zeta_element("B", 1, 2, 1))


class TestDuality:
    def test_invariants_match_coinvariants(self):
        for n in (1, 2, 3):
            for d in range(0, 16):
                assert (
                    len(invariant_basis(n, d))
                    == coinvariant_classes(n, d).dimension
                ), (n, d)


class TestGeneratorSufficiency:
    def test_generators_span_full_group_relations(self):
        from hitcalc.gf2 import EchelonBasis
        from hitcalc.glrep import _apply_columns, _homology_action_columns
        from hitcalc.steenrod import degree_index

        def relation_rank(n, d, elements):
            prim = primitive_basis(n, d)
            if prim.dimension == 0:
                return 0
            rows = prim.echelon.row_ints()
            pivots = prim.echelon.pivots
            dim = len(degree_index(n, d))
            rel = EchelonBasis(prim.dimension)
            for g in elements:
                cols = _homology_action_columns(g, n, d)
                for v in rows:
                    w = _apply_columns(cols, v, dim) ^ v
                    rel.insert_indices(
                        [j for j, piv in enumerate(pivots) if (w >> piv) & 1]
                    )
            return rel.rank

        for n in (2, 3):
            whole = list(group_closure(generators(n)))
            for d in range(0, 9):
                assert relation_rank(n, d, generators(n)) == relation_rank(
                    n, d, whole
                ), (n, d)
