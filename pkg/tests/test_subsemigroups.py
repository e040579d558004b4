import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from mirigs.errors import CapacityError, NotASubsemigroupError
from mirigs.monoid import (
    LEAF,
    all_trees,
    enumerate_trees,
    gen_tree,
    mask_of,
    tree_product,
)
from mirigs.subsemigroups import (
    BranchSet,
    RepleteSubsemigroup,
    alphabet_family,
    branch_sets,
    close_under_product,
    closed_path_sets,
    count_replete,
    count_replete_bounded_height,
    count_uniform,
    enumerate_replete,
    is_replete,
    is_replete_definitional,
    is_subsemigroup,
    path_class,
    path_class_size,
    reconstruct_uniform,
    replete_closure,
    replete_closure_trees,
    xy_factor,
)
from conftest import t


def all_subsemigroups_t2():
    trees = all_trees(2)
    out = []
    for bits in range(1 << len(trees)):
        subset = frozenset(tr for i, tr in enumerate(trees) if bits >> i & 1)
        if is_subsemigroup(subset):
            out.append(subset)
    return out


EXAMPLE_6 = close_under_product({t("ab"), t("ac")})


class TestClosure:
    def test_example_six_trees(self):
        assert EXAMPLE_6 == {
            t("ab"), t("ac"), t("abac"), t("acab"), t("acabac"), t("abacab"),
        }

    def test_idempotent_inputs(self):
        assert close_under_product({t("aba")}) == {t("aba")}
        assert close_under_product(()) == frozenset()

    @given(st.lists(st.sampled_from(all_trees(2)), max_size=3))
    def test_least_closed_superset(self, seed):
        closed = close_under_product(seed)
        assert is_subsemigroup(closed)
        assert set(seed) <= closed
        for member in [s for s in all_subsemigroups_t2() if set(seed) <= s]:
            assert closed <= member


class TestXyFactor:
    def test_example(self):
        factor = xy_factor(EXAMPLE_6, gen_tree(0), LEAF, 3)
        assert gen_tree(1) in factor and gen_tree(2) in factor
        assert t("bc") not in factor

    def test_unit_context(self):
        assert xy_factor(EXAMPLE_6, LEAF, LEAF, 3) == EXAMPLE_6

    def test_empty(self):
        assert xy_factor(frozenset(), gen_tree(0), LEAF, 2) == frozenset()

    @settings(max_examples=30)
    @given(st.data())
    def test_distribution_laws(self, data):
        trees = all_trees(2)
        pick = lambda: frozenset(data.draw(st.lists(st.sampled_from(trees), max_size=4)))
        u1, u2 = pick(), pick()
        x = data.draw(st.sampled_from(trees))
        y = data.draw(st.sampled_from(trees))
        assert xy_factor(u1 | u2, x, y, 2) == xy_factor(u1, x, y, 2) | xy_factor(u2, x, y, 2)
        assert xy_factor(u1 & u2, x, y, 2) == xy_factor(u1, x, y, 2) & xy_factor(u2, x, y, 2)

    def test_contravariant_composition(self):
        trees = all_trees(2)
        rng = random.Random(0)
        for _ in range(20):
            u = frozenset(rng.sample(trees, 3))
            x, y, x2, y2 = (rng.choice(trees) for _ in range(4))
            inner = xy_factor(u, x, y, 2)
            lhs = xy_factor(inner, x2, y2, 2)
            rhs = xy_factor(u, tree_product(x, x2), tree_product(y2, y), 2)
            assert lhs == rhs


class TestRepleteness:
    def test_t2_census(self):
        subs = all_subsemigroups_t2()
        assert len(subs) == 42
        assert all(is_replete(s) for s in subs)
        assert all(is_replete_definitional(s, 2) for s in subs)

    def test_example_not_replete(self):
        assert not is_replete(EXAMPLE_6)
        assert not is_replete_definitional(EXAMPLE_6, 3)

    def test_closure_of_example_replete_definitionally(self):
        closed = replete_closure_trees({t("ab"), t("ac")})
        assert is_replete_definitional(closed, 3)

    def test_h3_singleton_not_replete(self):
        assert not is_replete({t("abc")})

    def test_requires_subsemigroup(self):
        with pytest.raises(NotASubsemigroupError):
            is_replete({t("ab"), t("ac")})

    def test_fiberwise_matches_definitional_on_samples(self):
        # full definitional check is quartic in |T_n|; sample the contexts at n=3
        rng = random.Random(5)
        trees3 = all_trees(3)
        for _ in range(8):
            closed = close_under_product(rng.sample(trees3, 2))
            fiberwise = is_replete(closed)
            for _ in range(40):
                x, y = rng.choice(trees3), rng.choice(trees3)
                if not is_subsemigroup(xy_factor(closed, x, y, 3)):
                    assert not fiberwise
                    break
            else:
                continue


class TestRepleteClosure:
    def test_example(self):
        closure = replete_closure_trees({t("ab"), t("ac")})
        assert t("abc") in closure
        assert alphabet_family(closure) == alphabet_family(EXAMPLE_6)

    def test_closure_properties(self):
        rng = random.Random(9)
        trees = all_trees(3)
        for _ in range(10):
            u = frozenset(rng.sample(trees, 2))
            v = u | {rng.choice(trees)}
            cu, cv = replete_closure_trees(u), replete_closure_trees(v)
            assert u <= cu and is_replete(cu)  # extensive, replete
            assert cu <= cv  # monotone
            assert replete_closure_trees(cu) == cu  # idempotent
            assert alphabet_family(cu) == alphabet_family(close_under_product(u))

    def test_minimum_size_h3(self):
        assert len(replete_closure_trees({t("abc")})) == 4

    def test_compact_representation(self):
        r = replete_closure({t("ab"), t("ac")}, 3)
        assert isinstance(r, RepleteSubsemigroup)
        assert r.trees() == replete_closure_trees({t("ab"), t("ac")})
        assert r.size() == len(r.trees())


class TestBranchSets:
    def test_example(self):
        s = {t("ab"), t("aba")}
        lb, rb = branch_sets(s, mask_of([0, 1]))
        assert lb.branches == {(gen_tree(0), 1)}
        assert rb.branches == {(0, gen_tree(1)), (1, gen_tree(0))}

    def test_full_fiber(self):
        s = set(enumerate_trees(mask_of([0, 1])))
        lb, rb = branch_sets(s, mask_of([0, 1]))
        assert len(lb.branches) == 2 and len(rb.branches) == 2

    def test_trivial_convention(self):
        lb, rb = branch_sets({LEAF}, 0)
        assert lb == BranchSet("left", 0, frozenset({()}))
        assert rb == BranchSet("right", 0, frozenset({()}))
        assert reconstruct_uniform(lb, rb) == {LEAF}

    def test_empty_fiber(self):
        with pytest.raises(ValueError):
            branch_sets({t("ab")}, mask_of([0]))

    def test_reconstruction_theorem(self):
        # every uniform layer of every enumerated replete subsemigroup is
        # the full product of its branch sets
        rng = random.Random(1)
        pool = list(enumerate_replete(2)) + rng.sample(list(enumerate_replete(3)), 60)
        for r in pool:
            trees = r.trees()
            for mask in alphabet_family(trees):
                layer = frozenset(x for x in trees if x.alpha == mask)
                lb, rb = branch_sets(trees, mask)
                assert reconstruct_uniform(lb, rb) == layer

    def test_uniform_census_small(self):
        # product-closed subsets of the two-generator fiber = branch products
        fiber = enumerate_trees(mask_of([0, 1]))
        closed = [
            sub
            for bits in range(1, 1 << 4)
            for sub in [frozenset(x for i, x in enumerate(fiber) if bits >> i & 1)]
            if is_subsemigroup(sub)
        ]
        assert len(closed) == 9


class TestBranchBounds:
    @staticmethod
    def _lb_count(trees, mask):
        return len({(x.left, x.a0) for x in trees if x.alpha == mask})

    @staticmethod
    def _rb_count(trees, mask):
        return len({(x.a1, x.right) for x in trees if x.alpha == mask})

    def _check(self, trees):
        fam = sorted(alphabet_family(trees) - {0})
        for a in fam:
            for b in fam:
                size = lambda mask: sum(1 for x in trees if x.alpha == mask)
                for count in (self._lb_count, self._rb_count):
                    if a | b == b and a != b:  # a strictly below b
                        assert count(trees, a) <= count(trees, b)
                    if a & b not in (a, b):  # incomparable
                        assert count(trees, a | b) >= count(trees, a) + count(trees, b)
                    if a & b == 0 and a != b:  # disjoint
                        assert count(trees, a | b) >= (
                            size(a) * count(trees, b) + count(trees, a) * size(b)
                        )

    def test_all_t2_subsemigroups(self):
        for s in all_subsemigroups_t2():
            self._check(s)

    def test_sampled_t3_replete(self):
        rng = random.Random(2)
        for r in rng.sample(list(enumerate_replete(3)), 40):
            self._check(r.trees())


class TestPathClasses:
    def test_sizes(self):
        assert [path_class_size(k) for k in (1, 2, 3, 4)] == [1, 1, 2, 24]

    def test_class_members_match_closed_form(self):
        for sigma, expected in (((0,), 1), ((0, 1), 1), ((0, 1, 2), 2)):
            branches, count = path_class(sigma)
            assert len(branches) == count == expected

    def test_total_height3_branches(self):
        # six paths, two branches each: all 12 = 3 * c_2 right branches
        total = set()
        for sigma in itertools.permutations((0, 1, 2)):
            branches, _ = path_class(sigma)
            total |= branches
        assert len(total) == 12

    def test_left_class(self):
        branches, count = path_class((0, 1, 2), side="left")
        assert len(branches) == count == 2
        assert all(generator == 2 for _, generator in branches)

    def test_22_closed_sets_recomputed(self):
        assert len(closed_path_sets(0b111)) == 22
        assert len(closed_path_sets(0b11)) == 3
        assert len(closed_path_sets(0b1)) == 1

    def test_closed_pair_structure(self):
        # the closed two-element sets share first or last generator
        pairs = [s for s in closed_path_sets(0b111) if len(s) == 2]
        assert len(pairs) == 6
        for pair in pairs:
            p1, p2 = sorted(pair)
            assert p1[0] == p2[0] or p1[-1] == p2[-1]


class TestEnumeration:
    def test_counts(self):
        assert [count_replete(n) for n in range(3)] == [2, 4, 42]

    def test_count_n3(self):
        assert count_replete(3) == 18030

    def test_no_duplicates(self):
        seen = list(enumerate_replete(2))
        assert len(seen) == len(set(seen)) == 42

    def test_expansions_are_replete_subsemigroups(self):
        for r in enumerate_replete(2):
            trees = r.trees()
            assert is_subsemigroup(trees)
            assert is_replete(trees)

    def test_t2_matches_exhaustive_census(self):
        from_paths = {r.trees() for r in enumerate_replete(2)}
        assert from_paths == set(all_subsemigroups_t2())

    def test_sampled_t3_replete_definitionally(self):
        # spot-check the defining property with sampled contexts
        rng = random.Random(3)
        trees3 = all_trees(3)
        for r in rng.sample(list(enumerate_replete(3)), 12):
            trees = r.trees()
            for _ in range(60):
                x, y = rng.choice(trees3), rng.choice(trees3)
                assert is_subsemigroup(xy_factor(trees, x, y, 3))

    def test_capacity(self):
        with pytest.raises(CapacityError):
            list(enumerate_replete(4))

    def test_deterministic_order(self):
        first = [r.to_json() for r in itertools.islice(enumerate_replete(2), 10)]
        second = [r.to_json() for r in itertools.islice(enumerate_replete(2), 10)]
        assert first == second


class TestCountingFormulas:
    def test_uniform(self):
        assert [count_uniform(n) for n in range(4)] == [1, 2, 12, 16769056]

    def test_uniform_small_direct(self):
        # n = 2: one subsemigroup on each singleton fiber, nine on the full
        # fiber, one trivial
        assert count_uniform(2) == 1 + 2 + 9

    def test_bounded_height(self):
        assert count_replete_bounded_height(2, 2) == 42
        assert count_replete_bounded_height(3, 2) == 116
        assert count_replete_bounded_height(3, 3) == 18030

    def test_bounded_height_matches_filtered_enumeration(self):
        from mirigs.monoid import mask_size

        for n in (2, 3):
            filtered = sum(
                1
                for r in enumerate_replete(n)
                if all(mask_size(m) <= 2 for m in r.alphabet_masks())
            )
            assert filtered == count_replete_bounded_height(n, 2)

    def test_unsupported_height(self):
        with pytest.raises(ValueError):
            count_replete_bounded_height(3, 4)


class TestJson:
    def test_roundtrip(self):
        for r in enumerate_replete(2):
            data = json.loads(json.dumps(r.to_json()))
            assert RepleteSubsemigroup.from_json(data) == r

    def test_roundtrip_n3_sample(self):
        rng = random.Random(4)
        for r in rng.sample(list(enumerate_replete(3)), 25):
            assert RepleteSubsemigroup.from_json(r.to_json()) == r

    def test_version_guard(self):
        with pytest.raises(ValueError):
            RepleteSubsemigroup.from_json({"v": 2, "n": 1, "alphabets": []})
