"""Finite Boolean algebras: spectra, duality, morphisms, and the stage ops."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_term
from stonework.boolalg import (
    DEFAULT_CAP,
    Morphism,
    Presentation,
    analyze_morphism,
    binfty,
    binfty_normal_form,
    check_duality,
    enumeration_cap,
    epi_mono_factor,
    evaluate,
    free,
    hom,
    identity,
    is_trivial,
    llpo_product_presentation,
    llpo_split,
    minimal_join_witness,
    minterm,
    point_map,
    realize,
    separate_closed,
    spectrum,
    wlpo_counterexample,
)
from stonework.errors import (
    CapExceeded,
    DuplicateGenerator,
    NotDisjoint,
    RelationNotKilled,
    UnknownGenerator,
)
from stonework.terms import And, Gen, Not, ONE, Or, ZERO, eval_term, join

G0, G1, G2 = Gen("g0"), Gen("g1"), Gen("g2")


class TestPresentation:
    def test_duplicate_generator_rejected(self):
        with pytest.raises(DuplicateGenerator):
            Presentation.make(["g0", "g0"])

    def test_relation_over_unknown_generator_rejected(self):
        with pytest.raises(UnknownGenerator):
            Presentation.make(["g0"], [G1])


class TestSpectrum:
    def test_empty_presentation_has_one_point(self):
        a = spectrum(Presentation.make([]))
        assert a.points == ((),)

    def test_free_two_generators_lex_order(self):
        a = spectrum(free(2))
        assert a.points == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_relation_one_kills_everything(self):
        a = spectrum(Presentation.make(["g0"], [ONE]))
        assert a.points == ()
        assert is_trivial(a)

    def test_binfty_points_are_zero_and_one_hots(self):
        a = spectrum(binfty(3))
        assert a.points == ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0))
        assert a.n_points == 4

    def test_complementary_relations_trivialize(self):
        a = spectrum(Presentation.make(["g0"], [G0, Not(G0)]))
        assert is_trivial(a)

    def test_cap_enforced(self):
        with pytest.raises(CapExceeded):
            spectrum(free(5), cap=4)

    def test_cap_env_override(self, monkeypatch):
        monkeypatch.setenv("STONEWORK_CAP", "2")
        assert enumeration_cap() == 2
        with pytest.raises(CapExceeded):
            spectrum(free(3))
        monkeypatch.delenv("STONEWORK_CAP")
        assert enumeration_cap() == DEFAULT_CAP

    def test_cap_checked_even_after_caching(self):
        spectrum(free(4))  # populate the cache
        with pytest.raises(CapExceeded):
            spectrum(free(4), cap=3)


class TestEvaluateRealize:
    def test_generator_column_over_free_two(self):
        a = spectrum(free(2))
        assert evaluate(G0, a) == (0, 0, 1, 1)
        assert evaluate(G1, a) == (0, 1, 0, 1)
        assert evaluate(ZERO, a) == (0, 0, 0, 0)
        assert evaluate(ONE, a) == (1, 1, 1, 1)

    def test_minterm_selects_exactly_one_point(self):
        a = spectrum(free(3))
        for i in range(a.n_points):
            v = evaluate(minterm(a, i), a)
            assert v == tuple(1 if j == i else 0 for j in range(a.n_points))

    def test_realize_round_trip_exhaustive_free_three(self):
        a = spectrum(free(3))
        for v in itertools.product((0, 1), repeat=a.n_points):
            assert evaluate(realize(v, a), a) == v

    def test_realize_over_empty_spectrum(self):
        a = spectrum(Presentation.make(["g0"], [ONE]))
        assert realize((), a) == ZERO

    def test_realize_length_mismatch(self):
        a = spectrum(free(1))
        with pytest.raises(ValueError):
            realize((0, 1, 0), a)

    @given(st.integers(0, 2**5 - 1))
    def test_realize_round_trip_binfty4(self, bits: int):
        a = spectrum(binfty(4))
        v = tuple((bits >> i) & 1 for i in range(a.n_points))
        assert evaluate(realize(v, a), a) == v


class TestDuality:
    def test_free_two(self):
        rep = check_duality(free(2))
        assert (rep.n_gens, rep.n_points, rep.n_elements) == (2, 4, 16)
        assert rep.bijective
        assert rep.failures == ()

    def test_binfty_two(self):
        rep = check_duality(binfty(2))
        assert (rep.n_points, rep.n_elements) == (3, 8)
        assert rep.bijective

    def test_trivial_algebra(self):
        rep = check_duality(Presentation.make(["g0"], [ONE]))
        assert (rep.n_points, rep.n_elements) == (0, 1)
        assert rep.bijective


class TestMorphisms:
    def test_hom_requires_all_images(self):
        with pytest.raises(UnknownGenerator):
            hom(free(2), {"g0": G0}, free(1))

    def test_hom_rejects_unkilled_relation(self):
        with pytest.raises(RelationNotKilled) as exc:
            hom(binfty(2), {"g0": G0, "g1": G0}, free(1))
        assert exc.value.index == 0

    def test_identity_analysis(self):
        rep = analyze_morphism(identity(free(2)))
        assert rep.injective
        assert rep.kernel_size == 1
        assert rep.point_map == (0, 1, 2, 3)
        assert rep.point_map_surjective
        assert rep.axiom2_consistent

    def test_quotient_map_kernel(self):
        # free(g0) -> free(g0)/(g0 = 0): kernel is {0, g0}
        src = free(1)
        dst = Presentation.make(["g0"], [G0])
        m = hom(src, {"g0": G0}, dst)
        rep = analyze_morphism(m)
        assert not rep.injective
        assert rep.kernel_size == 2
        assert rep.kernel_top == (0, 1)  # the element g0, i.e. true at point (1,)
        assert not rep.point_map_surjective
        assert rep.axiom2_consistent

    def test_inclusion_into_larger_free_algebra(self):
        m = hom(free(1), {"g0": G0}, free(2))
        rep = analyze_morphism(m)
        assert rep.injective
        assert rep.point_map_surjective
        assert rep.axiom2_consistent

    def test_point_map_is_precomposition(self):
        m = hom(free(1), {"g0": And(G0, G1)}, free(2))
        src_alg, dst_alg = spectrum(free(1)), spectrum(free(2))
        pm = point_map(m)
        for i, pt in enumerate(dst_alg.points):
            expected = (eval_term(And(G0, G1), dst_alg.assignment(i)),)
            assert src_alg.points[pm[i]] == expected

    def test_epi_mono_factor_diagonal(self):
        # g1 |-> g0 collapses free(2) onto the diagonal subalgebra
        m = hom(free(2), {"g0": G0, "g1": G0}, free(1))
        epi, middle, mono = epi_mono_factor(m)
        assert set(middle.points) == {(0, 0), (1, 1)}
        # epi is surjective on algebras: its point map is injective
        pm_epi = point_map(epi)
        assert len(set(pm_epi)) == len(pm_epi)
        # mono is injective on algebras: its point map is surjective
        assert analyze_morphism(mono).injective
        assert analyze_morphism(mono).point_map_surjective
        # composite equals the original on generators, as elements of dst
        dst_alg = spectrum(m.dst)
        for g in m.src.gens:
            composite = mono.apply(epi.images[g])
            assert evaluate(composite, dst_alg) == evaluate(m.images[g], dst_alg)

    def test_epi_mono_factor_to_trivial(self):
        m = hom(free(1), {"g0": ZERO}, Presentation.make([]))
        _, middle, _ = epi_mono_factor(m)
        assert middle.n_points == 1

    def test_axiom2_on_random_morphisms(self):
        rng = random.Random(7)
        checked = 0
        while checked < 60:
            k_src, k_dst = rng.randint(1, 3), rng.randint(1, 3)
            src_gens = [f"g{i}" for i in range(k_src)]
            dst_gens = [f"g{i}" for i in range(k_dst)]
            src = Presentation.make(
                src_gens,
                [random_term(rng, src_gens, 2) for _ in range(rng.randint(0, 2))],
            )
            dst = Presentation.make(
                dst_gens,
                [random_term(rng, dst_gens, 2) for _ in range(rng.randint(0, 2))],
            )
            images = {g: random_term(rng, dst_gens, 2) for g in src_gens}
            try:
                m = hom(src, images, dst)
            except RelationNotKilled:
                continue
            assert analyze_morphism(m).axiom2_consistent
            checked += 1


class TestBinftyNormalForm:
    def test_zero_and_one(self):
        a = spectrum(binfty(3))
        nf = binfty_normal_form(a.zero(), 3)
        assert (nf.kind, nf.indices) == ("join", frozenset())
        nf = binfty_normal_form(a.one(), 3)
        assert (nf.kind, nf.indices) == ("meetneg", frozenset())

    def test_generator_is_singleton_join(self):
        a = spectrum(binfty(3))
        nf = binfty_normal_form(evaluate(G0, a), 3)
        assert (nf.kind, nf.indices) == ("join", frozenset({0}))

    def test_negated_generator_is_singleton_meetneg(self):
        a = spectrum(binfty(3))
        nf = binfty_normal_form(evaluate(Not(G1), a), 3)
        assert (nf.kind, nf.indices) == ("meetneg", frozenset({1}))

    def test_join_of_two_generators(self):
        a = spectrum(binfty(3))
        nf = binfty_normal_form(evaluate(Or(G0, G1), a), 3)
        assert (nf.kind, nf.indices) == ("join", frozenset({0, 1}))

    def test_round_trip_exhaustive_small_stages(self):
        for n in range(0, 6):
            a = spectrum(binfty(n))
            for v in itertools.product((0, 1), repeat=a.n_points):
                nf = binfty_normal_form(v, n)
                assert evaluate(nf.to_term(), a) == v

    def test_normal_forms_are_distinct(self):
        n = 4
        a = spectrum(binfty(n))
        seen = set()
        for v in itertools.product((0, 1), repeat=a.n_points):
            nf = binfty_normal_form(v, n)
            key = (nf.kind, nf.indices)
            assert key not in seen
            seen.add(key)

    def test_str(self):
        a = spectrum(binfty(2))
        assert str(binfty_normal_form(evaluate(Or(G0, G1), a), 2)) == "Join{0,1}"
        assert str(binfty_normal_form(a.one(), 2)) == "MeetNeg{}"

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            binfty_normal_form((0, 0), 3)


class TestLlpo:
    def test_product_presentation_spectrum(self):
        a = spectrum(llpo_product_presentation(1))
        # e with a0 <= e, b0 <= ~e: points (e, a0, b0)
        assert set(a.points) == {(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 0, 1)}

    def test_stage_one_split(self):
        rep = llpo_split(1)
        assert rep.injective
        assert rep.spectrum_map_surjective
        assert rep.decode_consistent
        # 4 product points onto the 3 points of binfty(2)
        assert len(rep.spectrum_map) == 4
        assert set(rep.spectrum_map) == {0, 1, 2}

    def test_decode_sides(self):
        rep = llpo_split(2)
        src = spectrum(binfty(4))
        for (side, beta), pt in zip(rep.decode, src.points):
            support = [j for j, b in enumerate(pt) if b]
            if not support:
                assert side == "left" and beta == (0, 0)
            elif support[0] % 2 == 0:
                assert side == "left" and beta[support[0] // 2] == 1
            else:
                assert side == "right" and beta[support[0] // 2] == 1

    def test_stage_zero_rejected(self):
        with pytest.raises(ValueError):
            llpo_split(0)


class TestWlpo:
    def test_single_generator(self):
        rep = wlpo_counterexample(G0)
        assert rep.k == 0
        assert rep.beta == (0, 0)
        assert rep.gamma == (0, 1)
        assert rep.value_beta == rep.value_gamma == 0
        assert rep.verdict == "fails_on_gamma"

    def test_constant_one(self):
        rep = wlpo_counterexample(ONE)
        assert rep.k == -1
        assert rep.beta == (0,)
        assert rep.gamma == (1,)
        assert rep.value_beta == 1
        assert rep.verdict == "fails_on_beta"

    def test_join_of_two(self):
        rep = wlpo_counterexample(Or(G0, G1))
        assert rep.k == 1
        assert rep.value_beta == rep.value_gamma == 0
        assert rep.verdict == "fails_on_gamma"

    def test_refutation_core_on_random_terms(self):
        # the candidate cannot see index k+1, so beta and gamma agree
        rng = random.Random(11)
        gens = [f"g{i}" for i in range(6)]
        for _ in range(50):
            t = random_term(rng, gens, 4)
            rep = wlpo_counterexample(t)
            assert rep.value_beta == rep.value_gamma
            assert rep.gamma[-1] == 1 and all(b == 0 for b in rep.beta)

    def test_non_indexed_generator_rejected(self):
        with pytest.raises(UnknownGenerator):
            wlpo_counterexample(Gen("x"))


class TestMinimalJoinWitness:
    def test_immediate_trivialization(self):
        assert minimal_join_witness(free(1), [ONE], 10) == 0

    def test_complement_pair(self):
        assert minimal_join_witness(free(1), [G0, Not(G0)], 10) == 1

    def test_never_trivial(self):
        assert minimal_join_witness(free(1), [ZERO] * 5, 10) is None

    def test_bound_respected(self):
        assert minimal_join_witness(free(1), [ZERO, ZERO, ONE], 1) is None
        assert minimal_join_witness(free(1), [ZERO, ZERO, ONE], 2) == 2


class TestSeparateClosed:
    def test_complement_pair(self):
        # F = {x : x(g0) = 0}, G = {x : x(g0) = 1}; D must contain F, avoid G
        d = separate_closed(free(1), [G0], [Not(G0)])
        assert d == (1, 0)

    def test_whole_space_against_empty(self):
        d = separate_closed(free(1), [ZERO], [ONE])
        assert d == (1, 1)

    def test_intersecting_sets_rejected(self):
        with pytest.raises(NotDisjoint):
            separate_closed(free(1), [G0], [G0])

    def test_separator_properties_on_random_pairs(self):
        rng = random.Random(23)
        done = 0
        while done < 40:
            k = rng.randint(1, 3)
            gens = [f"g{i}" for i in range(k)]
            p = Presentation.make(
                gens, [random_term(rng, gens, 2) for _ in range(rng.randint(0, 1))]
            )
            a = spectrum(p)
            fs = [random_term(rng, gens, 2) for _ in range(rng.randint(1, 3))]
            gs = [random_term(rng, gens, 2) for _ in range(rng.randint(1, 3))]
            f_vecs = [evaluate(f, a) for f in fs]
            g_vecs = [evaluate(g, a) for g in gs]
            in_f = [all(v[i] == 0 for v in f_vecs) for i in range(a.n_points)]
            in_g = [all(v[i] == 0 for v in g_vecs) for i in range(a.n_points)]
            if any(f and g for f, g in zip(in_f, in_g)):
                continue
            d = separate_closed(p, fs, gs)
            for i in range(a.n_points):
                if in_f[i]:
                    assert d[i] == 1
                if in_g[i]:
                    assert d[i] == 0
            done += 1
