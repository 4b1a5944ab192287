"""Finite sets, functions and the diagram toolkit."""

import itertools

import pytest
from hypothesis import given

from conftest import arbitrary_spans, functions
from diexact.errors import CompositionError, PreconditionError
from diexact.fsets import (
    CommutativeSquare,
    Cospan,
    FiniteSet,
    SetFunction,
    Span,
    all_functions,
    canonical_comparison,
    canonical_pushout,
    compose,
    coproduct,
    copair,
    fset,
    identity,
    image_factorization,
    inverse,
    is_epi,
    is_iso,
    is_mono,
    kernel_pair,
    pullback,
    quotient_by_partition,
)
from diexact.certificates import pullback_by_universal_property


def table(domain, codomain, mapping):
    return SetFunction.from_mapping(fset(*domain), fset(*codomain), mapping)


class TestFiniteSet:
    def test_canonical_order(self):
        assert FiniteSet(("b", "a", "c")).elements == ("a", "b", "c")
        assert fset("b", "a") == fset("a", "b")

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            FiniteSet(("a", "a"))

    def test_membership_and_index(self):
        s = fset("a", "b")
        assert "a" in s and "z" not in s
        assert s.index("b") == 1
        with pytest.raises(KeyError):
            s.index("z")


class TestCompose:
    def test_identity_neutral(self):
        f = table("ab", "c", {"a": "c", "b": "c"})
        assert compose(f, identity(f.domain)) == f
        assert compose(identity(f.codomain), f) == f

    def test_singleton_chase(self):
        f = table("a", "b", {"a": "b"})
        g = table("b", "c", {"b": "c"})
        assert compose(g, f)("a") == "c"

    @given(functions(max_size=4), functions(max_size=4))
    def test_matches_pointwise_chase(self, f, g):
        if f.codomain != g.domain:
            with pytest.raises(CompositionError):
                compose(g, f)
            return
        composite = compose(g, f)
        for x in f.domain:
            assert composite(x) == g(f(x))

    def test_associative_and_unital_exhaustive_small(self):
        # all composable triples over canonical sets of size <= 3
        sets = [FiniteSet(tuple(f"s{i}" for i in range(n))) for n in range(4)]
        for w, x, y, z in itertools.product(sets, repeat=4):
            for f in all_functions(w, x):
                assert compose(f, identity(w)) == f
                assert compose(identity(x), f) == f
                for g in all_functions(x, y):
                    gf = compose(g, f)
                    for h in all_functions(y, z):
                        assert compose(h, gf) == compose(compose(h, g), f)


class TestPredicates:
    def test_identity_is_iso(self):
        i = identity(fset("a", "b"))
        assert is_mono(i) and is_epi(i) and is_iso(i)

    def test_constant_epi_not_mono(self):
        f = table("ab", "c", {"a": "c", "b": "c"})
        assert is_epi(f) and not is_mono(f)

    def test_inclusion_mono_not_epi(self):
        f = table("a", "ab", {"a": "a"})
        assert is_mono(f) and not is_epi(f)

    def test_inverse_round_trip(self):
        f = table("ab", "xy", {"a": "y", "b": "x"})
        assert compose(inverse(f), f) == identity(f.domain)
        with pytest.raises(PreconditionError):
            inverse(table("ab", "c", {"a": "c", "b": "c"}))


class TestPullback:
    def test_two_constants(self):
        c = Cospan(table("a", "x", {"a": "x"}), table("b", "x", {"b": "x"}))
        s, sq = pullback(c)
        assert s.apex == fset("(a,b)")
        assert sq.span is s

    def test_disjoint_subsets(self):
        union = fset("a", "b")
        c = Cospan(table("a", "ab", {"a": "a"}), table("b", "ab", {"b": "b"}))
        s, _ = pullback(c)
        assert len(s.apex) == 0

    def test_enumeration_oracle(self):
        # apex must be exactly the equal-image pairs
        h = table("abc", "xy", {"a": "x", "b": "x", "c": "y"})
        k = table("de", "xy", {"d": "x", "e": "y"})
        s, _ = pullback(Cospan(h, k))
        expected = {
            (a, b) for a in h.domain for b in k.domain if h(a) == k(b)
        }
        got = {(s.left(p), s.right(p)) for p in s.apex}
        assert got == expected and len(s.apex) == len(expected)

    @given(functions(max_size=3), functions(max_size=3))
    def test_universal_property(self, h, k):
        if h.codomain != k.codomain:
            return
        _, sq = pullback(Cospan(h, k))
        assert pullback_by_universal_property(sq, max_apex_size=2)

    def test_universal_property_exhaustive_small_cospans(self):
        # test apexes up to size 3, over every cospan with sets of size <= 2
        sides = [FiniteSet(tuple(f"a{i}" for i in range(n))) for n in range(3)]
        others = [FiniteSet(tuple(f"b{i}" for i in range(n))) for n in range(3)]
        corners = [FiniteSet(tuple(f"d{i}" for i in range(1, n + 1))) for n in range(3)]
        for a in sides:
            for b in others:
                for d in corners:
                    if (len(a) or len(b)) and not len(d):
                        continue
                    for h in all_functions(a, d):
                        for k in all_functions(b, d):
                            _, sq = pullback(Cospan(h, k))
                            assert pullback_by_universal_property(sq, max_apex_size=3)

    def test_universal_property_fails_on_doctored_apex(self):
        h = table("ab", "x", {"a": "x", "b": "x"})
        _, sq = pullback(Cospan(h, h))
        # forget one pair: the survivors no longer form a pullback
        smaller = FiniteSet(sq.span.apex.elements[:-1])
        doctored = CommutativeSquare(
            Span(
                smaller,
                SetFunction(smaller, h.domain, sq.span.left.values[:-1]),
                SetFunction(smaller, h.domain, sq.span.right.values[:-1]),
            ),
            sq.cospan,
        )
        assert not pullback_by_universal_property(doctored, max_apex_size=2)


class TestKernelPair:
    def test_mono_gives_diagonal(self):
        f = table("ab", "xyz", {"a": "x", "b": "y"})
        kp = kernel_pair(f)
        assert all(kp.left(p) == kp.right(p) for p in kp.apex)
        assert len(kp.apex) == len(f.domain)

    def test_constant_gives_full_square(self):
        f = table("ab", "c", {"a": "c", "b": "c"})
        assert len(kernel_pair(f).apex) == 4

    def test_surjection_frozen_example(self):
        f = table("123", "xy", {"1": "x", "2": "x", "3": "y"})
        kp = kernel_pair(f)
        got = {(kp.left(p), kp.right(p)) for p in kp.apex}
        assert got == {("1", "1"), ("1", "2"), ("2", "1"), ("2", "2"), ("3", "3")}


class TestCoproduct:
    def test_empty_left(self):
        total, inl, inr = coproduct(fset(), fset("b1", "b2"))
        assert total == fset("r:b1", "r:b2")
        assert is_iso(inr) and len(inl.domain) == 0

    def test_tag_disambiguation(self):
        total, inl, inr = coproduct(fset("a"), fset("a"))
        assert total == fset("l:a", "r:a")
        assert inl("a") != inr("a")

    def test_cardinality_and_joint_image(self):
        a, b = fset("a1", "a2"), fset("b1", "b2", "b3")
        total, inl, inr = coproduct(a, b)
        assert len(total) == 5
        assert set(inl.values) | set(inr.values) == set(total.elements)
        assert set(inl.values).isdisjoint(inr.values)

    def test_injections_disjoint_pullback(self):
        a, b = fset("a1", "a2"), fset("a1", "b")
        total, inl, inr = coproduct(a, b)
        s, _ = pullback(Cospan(inl, inr))
        assert len(s.apex) == 0

    def test_copair_restricts(self):
        h = table("a", "d", {"a": "d"})
        k = table("b", "d", {"b": "d"})
        q = copair(h, k)
        assert q("l:a") == "d" and q("r:b") == "d"


class TestQuotient:
    def test_diagonal_blocks_iso(self):
        a = fset("a", "b")
        q = quotient_by_partition(a, [("a",), ("b",)])
        assert is_iso(q)

    def test_single_block(self):
        q = quotient_by_partition(fset("1", "2", "3"), [("1", "2", "3")])
        assert q.codomain == fset("1")

    def test_two_blocks_frozen(self):
        q = quotient_by_partition(fset("1", "2", "3"), [("1", "2"), ("3",)])
        assert q.codomain == fset("1", "3")
        assert q("1") == "1" and q("2") == "1" and q("3") == "3"

    def test_rejects_non_partition(self):
        with pytest.raises(ValueError, match="partition"):
            quotient_by_partition(fset("1", "2"), [("1",)])

    def test_initial_among_coequalizing_maps(self):
        # any map constant on the blocks factors uniquely through the quotient
        a = fset("1", "2", "3")
        q = quotient_by_partition(a, [("1", "2"), ("3",)])
        x = fset("u", "v", "w")
        for candidate in all_functions(a, x):
            coequalizes = candidate("1") == candidate("2")
            factorizations = [
                m for m in all_functions(q.codomain, x) if compose(m, q) == candidate
            ]
            assert len(factorizations) == (1 if coequalizes else 0)


class TestImageFactorization:
    def test_mono_gives_iso_epi_part(self):
        f = table("ab", "xyz", {"a": "x", "b": "z"})
        e, m = image_factorization(f)
        assert is_iso(e) and is_mono(m) and compose(m, e) == f

    def test_epi_gives_iso_mono_part(self):
        f = table("abc", "xy", {"a": "x", "b": "y", "c": "x"})
        e, m = image_factorization(f)
        assert is_epi(e) and is_iso(m) and compose(m, e) == f

    def test_frozen_example(self):
        f = table("123", "xyz", {"1": "x", "2": "x", "3": "y"})
        e, m = image_factorization(f)
        assert e.codomain == fset("x", "y")
        assert m.values == ("x", "y")

    @given(functions(max_size=3))
    def test_unique_up_to_renaming_iso(self, f):
        e, m = image_factorization(f)
        assert is_epi(e) and is_mono(m) and compose(m, e) == f
        # against every epi-mono factorization through a canonical middle set
        mid = FiniteSet(tuple(f"w{i}" for i in range(len(e.codomain))))
        for e2 in all_functions(f.domain, mid):
            if not is_epi(e2):
                continue
            for m2 in all_functions(mid, f.codomain):
                if not is_mono(m2) or compose(m2, e2) != f:
                    continue
                matches = [
                    r
                    for r in all_functions(e.codomain, mid)
                    if is_iso(r) and compose(r, e) == e2 and compose(m2, r) == m
                ]
                assert len(matches) == 1


class TestCanonicalComparison:
    def test_identity_on_itself(self):
        a, b = fset("a1", "a2"), fset("b1")
        apex = fset("c")
        s = Span(
            apex,
            SetFunction(apex, a, ("a1",)),
            SetFunction(apex, b, ("b1",)),
        )
        canon = canonical_pushout(s)
        comparison = canonical_comparison(canon, canon.cospan)
        assert comparison == identity(canon.corner)

    def test_constant_to_point(self):
        a, b = fset("a1"), fset("b1")
        apex = fset()
        s = Span(apex, SetFunction(apex, a, ()), SetFunction(apex, b, ()))
        canon = canonical_pushout(s)
        point = fset("p")
        candidate = Cospan(
            SetFunction(a, point, ("p",)), SetFunction(b, point, ("p",))
        )
        comparison = canonical_comparison(canon, candidate)
        assert set(comparison.values) == {"p"}

    def test_renaming_bijection(self):
        a, b = fset("a1"), fset("b1")
        apex = fset()
        s = Span(apex, SetFunction(apex, a, ()), SetFunction(apex, b, ()))
        canon = canonical_pushout(s)
        renamed = fset("u", "v")
        rename = SetFunction(canon.corner, renamed, ("u", "v"))
        candidate = Cospan(
            compose(rename, canon.cospan.left), compose(rename, canon.cospan.right)
        )
        comparison = canonical_comparison(canon, candidate)
        assert is_iso(comparison) and comparison == rename

    def test_rejects_non_commuting_candidate(self):
        a, b = fset("a1", "a2"), fset("b1")
        apex = fset("c1", "c2")
        s = Span(
            apex,
            SetFunction(apex, a, ("a1", "a2")),
            SetFunction(apex, b, ("b1", "b1")),
        )
        canon = canonical_pushout(s)
        bad = Cospan(
            SetFunction(a, fset("p", "q"), ("p", "q")),
            SetFunction(b, fset("p", "q"), ("p",)),
        )
        with pytest.raises(PreconditionError, match="does not commute"):
            canonical_comparison(canon, bad)


class TestSquares:
    def test_square_checks_commutativity(self):
        a = fset("a1", "a2")
        apex = fset("c")
        s = Span(
            apex, SetFunction(apex, a, ("a1",)), SetFunction(apex, a, ("a2",))
        )
        with pytest.raises(ValueError, match="does not commute"):
            CommutativeSquare(s, Cospan(identity(a), identity(a)))

    @given(arbitrary_spans(max_size=3))
    def test_canonical_pushout_commutes_and_covers(self, s):
        sq = canonical_pushout(s)
        assert compose(sq.cospan.left, s.left) == compose(sq.cospan.right, s.right)
        covered = set(sq.cospan.left.values) | set(sq.cospan.right.values)
        assert covered == set(sq.corner.elements)

    def test_totality_on_empty_sets(self):
        empty = fset()
        s = Span(empty, SetFunction(empty, empty, ()), SetFunction(empty, empty, ()))
        sq = canonical_pushout(s)
        assert len(sq.corner) == 0
        total, inl, inr = coproduct(empty, empty)
        assert len(total) == 0
        e, m = image_factorization(SetFunction(empty, fset("x"), ()))
        assert len(e.codomain) == 0 and is_mono(m)
