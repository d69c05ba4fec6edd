import itertools
import random

import pytest

import bruteforce as bf
from conftest import random_chordal_instance, random_instance
from wo_ideal import BudgetExceeded, CapacityError, build_graph, classify
from wo_ideal.monomial_algebra import MonomialIdeal, edge_ideal, ideal_from_sparse
from wo_ideal.oracle import (
    SimplicialComplex,
    boundary_matrices,
    contract,
    depolarize,
    is_cm_reisner,
    link,
    minimal_transversals,
    oracle_verify,
    polarize,
    rank_f2,
    rank_q,
    reduced_homology_ranks,
    stanley_reisner,
)


def cx(n, facets):
    return SimplicialComplex(
        tuple(f"v{i}" for i in range(n)),
        tuple(sum(1 << i for i in f) for f in facets),
    )


HOLLOW_TRIANGLE = cx(3, [(0, 1), (1, 2), (0, 2)])


class TestPolarize:
    def test_square(self):
        P = polarize(ideal_from_sparse(("x2", "x3"), [{"x2": 1, "x3": 2}]))
        assert P.ideal.universe == ("x2", "x3#1", "x3#2")
        assert P.ideal.generators == ((1, 1, 1),)
        assert P.added_count == 1

    def test_squarefree_fixed_point(self):
        I = ideal_from_sparse(("a", "b", "c"), [{"a": 1, "b": 1}, {"b": 1, "c": 1}])
        P = polarize(I)
        assert P.ideal == I and P.added_count == 0

    def test_fourth_power(self):
        P = polarize(ideal_from_sparse(("x4",), [{"x4": 4}]))
        assert P.ideal.generators == ((1, 1, 1, 1),) and P.added_count == 3

    def test_depolarize_roundtrip(self):
        rng = random.Random(1)
        for _ in range(100):
            D = random_instance(rng, max_n=6, weights=(1, 2, 3, 4))
            I = edge_ideal(D)
            P = polarize(I)
            assert P.ideal.is_squarefree
            assert depolarize(P, I.universe) == I


class TestStanleyReisner:
    def test_single_generator(self):
        sr = stanley_reisner(ideal_from_sparse(("x1", "x2"), [{"x1": 1, "x2": 1}]))
        assert sr.facet_names() == [["x1"], ["x2"]]

    def test_path(self):
        sr = stanley_reisner(ideal_from_sparse(("x1", "x2", "x3"), [{"x1": 1, "x2": 1}, {"x2": 1, "x3": 1}]))
        assert sorted(sr.facet_names()) == [["x1", "x3"], ["x2"]]

    def test_zero_ideal(self):
        sr = stanley_reisner(MonomialIdeal.make(("a", "b"), []))
        assert sr.facet_names() == [["a", "b"]]

    def test_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            stanley_reisner(ideal_from_sparse(("a",), [{"a": 2}]))

    def test_faces_avoid_generators(self):
        rng = random.Random(4)
        for _ in range(60):
            n = rng.randint(1, 6)
            gens = {frozenset(rng.sample(range(n), rng.randint(1, min(3, n)))) for _ in range(rng.randint(0, 5))}
            I = MonomialIdeal.make(
                tuple(f"v{i}" for i in range(n)),
                [tuple(1 if i in g else 0 for i in range(n)) for g in gens],
            )
            sr = stanley_reisner(I)
            faces = {s for s in bf.all_faces([set(f) for f in sr.facet_names()])}
            supports = [{f"v{i}" for i in g} for g in gens]
            for S in bf.subsets(f"v{i}" for i in range(n)):
                assert (S in faces) == (not any(sup <= S for sup in supports))

    def test_minimal_transversals_brute(self):
        rng = random.Random(9)
        for _ in range(100):
            edges = [sum(1 << v for v in rng.sample(range(6), rng.randint(1, 3))) for _ in range(rng.randint(1, 5))]
            hits = [t for t in range(64) if all(t & e for e in edges)]
            brute = {t for t in hits if not any(o != t and o & t == o for o in hits)}
            assert set(minimal_transversals(edges)) == brute


class TestHomology:
    @pytest.mark.parametrize("field", ["F2", "Q"])
    def test_circle(self, field):
        h = reduced_homology_ranks(HOLLOW_TRIANGLE, field)
        assert h.reduced(0) == 0 and h.reduced(1) == 1

    @pytest.mark.parametrize("field", ["F2", "Q"])
    def test_two_points(self, field):
        assert reduced_homology_ranks(cx(2, [(0,), (1,)]), field).reduced(0) == 1

    @pytest.mark.parametrize("field", ["F2", "Q"])
    def test_simplex_is_acyclic(self, field):
        assert set(reduced_homology_ranks(cx(4, [(0, 1, 2, 3)]), field).betti) == {0}

    def test_projective_plane_distinguishes_fields(self):
        # 6-vertex RP^2: H1 = Z/2, so over F2 b1 = b2 = 1 and over Q both vanish
        rp2 = cx(6, [(0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4),
                     (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5)])
        f2 = reduced_homology_ranks(rp2, "F2")
        q = reduced_homology_ranks(rp2, "Q")
        assert (f2.reduced(1), f2.reduced(2)) == (1, 1)
        assert (q.reduced(1), q.reduced(2)) == (0, 0)
        assert is_cm_reisner(rp2, "Q") and not is_cm_reisner(rp2, "F2")

    def test_cap(self):
        with pytest.raises(CapacityError):
            reduced_homology_ranks(cx(20, [(0,)]), "F2")

    def test_against_numpy_and_euler(self):
        rng = random.Random(13)
        for _ in range(80):
            n = rng.randint(1, 7)
            facets = [tuple(rng.sample(range(n), rng.randint(1, min(4, n)))) for _ in range(rng.randint(1, 5))]
            c = cx(n, facets)
            c = SimplicialComplex(c.universe, tuple(set(c.facets)))
            ref = bf.reduced_betti_float(bf.all_faces([set(f) for f in facets]))
            for field in ("F2", "Q"):
                h = reduced_homology_ranks(c, field)
                assert h.euler_from_faces == h.euler_from_betti
                if field == "Q":
                    assert all(h.reduced(d) == ref.get(d, 0) for d in range(-1, 5))

    def test_boundary_squares_to_zero(self):
        rng = random.Random(19)
        for _ in range(60):
            n = rng.randint(2, 7)
            facets = [sum(1 << v for v in rng.sample(range(n), rng.randint(1, n))) for _ in range(3)]
            _, maps = boundary_matrices(facets)
            for k in range(2, len(maps)):
                upper, lower = maps[k], maps[k - 1]
                for row in upper:
                    total = {}
                    for c, a in row.items():
                        for c2, b in lower[c].items():
                            total[c2] = total.get(c2, 0) + a * b
                    assert not any(total.values())

    def test_rank_over_each_field(self):
        rows = [{0: 1, 1: -1}, {1: 1, 2: -1}, {0: 1, 2: -1}]
        assert rank_q(rows) == rank_f2(rows) == 2
        assert rank_q([{0: 2}]) == 1 and rank_f2([{0: 2}]) == 0

    def test_contract_preserves_homology(self):
        rng = random.Random(29)
        for _ in range(60):
            n = rng.randint(2, 7)
            facets = {sum(1 << v for v in rng.sample(range(n), rng.randint(1, min(4, n)))) for _ in range(4)}
            before = reduced_homology_ranks(SimplicialComplex(tuple(map(str, range(n))), tuple(facets)), "Q")
            small = contract(tuple(facets))
            after = reduced_homology_ranks(SimplicialComplex(tuple(map(str, range(n))), small), "Q")
            assert before.reduced(-1) == after.reduced(-1)
            assert all(before.reduced(d) == after.reduced(d) for d in range(0, 5))


class TestReisner:
    def test_c4_complex(self):
        assert not is_cm_reisner(cx(4, [(0, 2), (1, 3)]), "F2")

    def test_hollow_triangle(self):
        assert is_cm_reisner(HOLLOW_TRIANGLE, "Q")

    def test_point(self):
        assert is_cm_reisner(cx(1, [(0,)]), "F2")

    def test_non_pure(self):
        assert not is_cm_reisner(cx(3, [(0, 1), (2,)]), "Q")

    def test_link(self):
        assert link((0b011, 0b110), 0b010) == (0b001, 0b100)

    def test_against_all_links(self):
        rng = random.Random(37)
        for _ in range(120):
            n = rng.randint(1, 6)
            raw = {frozenset(rng.sample(range(n), rng.randint(1, min(3, n)))) for _ in range(rng.randint(1, 5))}
            facets = [f for f in raw if not any(f < g for g in raw)]
            c = cx(n, [tuple(f) for f in facets])
            assert is_cm_reisner(c, "Q") == bf.cm_all_links(facets)


class TestOracleVerify:
    def test_hypersurface(self):
        D = build_graph(["x1", "x2"], {"x2": 3}, [("x1", "x2")])
        r = oracle_verify(D, classification=classify(D))
        assert r.cohen_macaulay == {"F2": True, "Q": True} and not r.mismatches

    def test_path(self, path123):
        r = oracle_verify(path123, classification=classify(path123))
        assert r.polarized_variables == 5
        assert r.cohen_macaulay == {"F2": False, "Q": False}
        assert not r.pure and r.derived_dimension == 2 and not r.mismatches

    def test_c4_is_unmixed_but_not_cm(self):
        D = build_graph(["x1", "x2", "x3", "x4"], {}, [("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x1")])
        r = oracle_verify(D, classification=classify(D))
        assert r.pure and r.cohen_macaulay == {"F2": False, "Q": False}

    def test_simplicial_non_chordal_route(self):
        arcs = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]
        verts = ["a", "b", "c", "d"]
        for v in "abcd":
            verts += [v + "1", v + "2"]
            arcs += [(v, v + "1"), (v, v + "2"), (v + "1", v + "2")]
        D = build_graph(verts, {"a1": 2}, arcs)
        rep = classify(D)
        r = oracle_verify(D, classification=rep)
        assert rep.route == "simplicial"
        assert r.cohen_macaulay["F2"] == rep.cohen_macaulay and not r.mismatches

    def test_cap_and_budget(self, example10):
        with pytest.raises(CapacityError, match="20 variables"):
            oracle_verify(example10)
        with pytest.raises(BudgetExceeded) as info:
            oracle_verify(example10, force=True, budget=0.5)
        assert info.value.partial["polarized_variables"] == 20

    @pytest.mark.parametrize("gen", [random_chordal_instance, random_instance])
    def test_agrees_with_classification(self, gen):
        rng = random.Random(43)
        memos = {}
        for _ in range(150):
            D = gen(rng, max_n=6, weights=(1, 2))
            rep = classify(D)
            if len(polarize(edge_ideal(D)).ideal.universe) > 12:
                continue
            r = oracle_verify(D, classification=rep, memos=memos)
            assert not r.mismatches, (D, r)
            if r.cohen_macaulay["Q"]:
                assert rep.unmixed


def test_every_small_complex_on_four_vertices():
    # exhaustive: all antichains of subsets of a 4-set that are facet lists
    subsets = [s for s in range(1, 16)]
    seen = 0
    for r in range(1, 4):
        for combo in itertools.combinations(subsets, r):
            if any(a != b and a & b == a for a in combo for b in combo):
                continue
            facets = [tuple(i for i in range(4) if s >> i & 1) for s in combo]
            c = cx(4, facets)
            assert is_cm_reisner(c, "F2") == bf.cm_all_links([frozenset(f) for f in facets])
            seen += 1
    assert seen > 100
