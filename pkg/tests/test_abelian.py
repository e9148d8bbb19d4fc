import random

import pytest

from lspectra.abelian import (
    EnumerationBoundError,
    FgAbGroup,
    IntMatrix,
    cokernel,
    cokernel_with_gens,
    ext_group,
    extension_candidates,
    hom_group,
    kernel_basis,
    lattice_eq,
    smith_normal_form,
    solve,
)

from helpers import (
    ext_by_resolution,
    hom_by_enumeration,
    minors_gcd_invariant_factors,
    random_group,
    random_matrix,
)


Z = FgAbGroup.free(1)


class TestSmithNormalForm:
    def test_reduction_example(self):
        # oracle: gcds of minors give the invariant factors
        a = IntMatrix([[2, 4], [6, 8]])
        r = smith_normal_form(a)
        assert r.diagonal() == [2, 4]
        assert minors_gcd_invariant_factors(a) == [2, 4]
        assert r.U @ a @ r.V == r.D

    def test_identity(self):
        a = IntMatrix.identity(3)
        assert smith_normal_form(a).D == a

    def test_zero(self):
        a = IntMatrix.zero(2, 3)
        assert smith_normal_form(a).D == a

    def test_random_identity_and_divisibility(self):
        rng = random.Random(7)
        for _ in range(60):
            a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            r = smith_normal_form(a)
            assert r.U @ a @ r.V == r.D
            assert abs(r.U.det()) == 1
            assert abs(r.V.det()) == 1
            diag = [d for d in r.diagonal() if d]
            for x, y in zip(diag, diag[1:]):
                assert y % x == 0
            assert diag == minors_gcd_invariant_factors(a)

    def test_kernel_and_solve(self):
        a = IntMatrix([[2, 4, 1], [0, 0, 3]])
        k = kernel_basis(a)
        for j in range(k.cols):
            col = [k[i, j] for i in range(k.rows)]
            assert all(sum(a[i, l] * col[l] for l in range(3)) == 0 for i in range(2))
        x = solve(a, [3, 3])
        assert x is not None
        assert [sum(a[i, l] * x[l] for l in range(3)) for i in range(2)] == [3, 3]
        assert solve(IntMatrix([[2]]), [1]) is None


class TestFgAbGroup:
    def test_canonical_form(self):
        g = FgAbGroup.from_divisors([6, 4])
        assert g.torsion == (2, 12)
        assert FgAbGroup.from_divisors([2, 3]) == FgAbGroup.cyclic(6)
        assert FgAbGroup.from_divisors([2, 4]) != FgAbGroup.cyclic(8)

    def test_render_parse_roundtrip(self):
        for g in (FgAbGroup(), Z, FgAbGroup(2, (2, 4)), FgAbGroup(0, (3,))):
            assert FgAbGroup.parse(g.render()) == g
        assert FgAbGroup.parse("Z^2 + Z/2 + Z/4").render() == "Z^2 + Z/2 + Z/4"
        assert FgAbGroup().render() == "0"

    def test_invalid_chain_rejected(self):
        with pytest.raises(ValueError):
            FgAbGroup(0, (4, 2))


class TestCokernel:
    def test_examples(self):
        assert cokernel(IntMatrix([[2]])) == FgAbGroup.cyclic(2)
        assert cokernel(IntMatrix([[2, 0], [0, 0]])) == FgAbGroup(1, (2,))
        assert cokernel(IntMatrix([[1, 1], [1, -1]])) == FgAbGroup.cyclic(2)

    def test_generators_have_stated_orders(self):
        a = IntMatrix([[2, 0], [0, 3], [0, 0]])
        group, gens, orders = cokernel_with_gens(a)
        assert group == FgAbGroup(1, (6,))
        assert orders[0] == 0 and orders[1] == 6
        assert len(gens) == 2

    def test_generators_generate_with_exact_orders(self):
        # the generators together with im(A) must span the ambient lattice,
        # each order must annihilate its class, and no proper divisor may
        rng = random.Random(19)
        for _ in range(40):
            a = random_matrix(rng, rng.randint(1, 4), rng.randint(0, 4), -9, 9)
            group, gens, orders = cokernel_with_gens(a)
            cols = [list(c) for c in zip(*a.tolist())] if a.cols else []
            span = IntMatrix(
                [[v[i] for v in (gens + cols)] for i in range(a.rows)],
                shape=(a.rows, len(gens) + len(cols)),
            )
            assert lattice_eq(span, IntMatrix.identity(a.rows))
            for g, o in zip(gens, orders):
                if o == 0:
                    continue
                assert solve(a, [o * x for x in g]) is not None
                for p in {2, 3, 5, 7}:
                    if o % p == 0:
                        assert solve(a, [(o // p) * x for x in g]) is None


class TestHomExt:
    def test_known_values(self):
        assert hom_group(FgAbGroup.free(2), Z) == FgAbGroup.free(2)
        assert hom_group(FgAbGroup.cyclic(4), FgAbGroup.cyclic(6)) == FgAbGroup.cyclic(2)
        assert hom_group(FgAbGroup.cyclic(2), Z).is_trivial()
        assert ext_group(FgAbGroup.cyclic(2), Z) == FgAbGroup.cyclic(2)
        assert ext_group(Z, random_group(random.Random(0))).is_trivial()
        assert ext_group(FgAbGroup.cyclic(4), FgAbGroup.cyclic(6)) == FgAbGroup.cyclic(2)

    def test_hom_against_enumeration(self):
        small = [
            FgAbGroup.cyclic(2),
            FgAbGroup.cyclic(4),
            FgAbGroup.cyclic(8),
            FgAbGroup.from_divisors([2, 2]),
            FgAbGroup.from_divisors([2, 4]),
            FgAbGroup.cyclic(6),
            FgAbGroup.cyclic(12),
            FgAbGroup.from_divisors([3, 3]),
            FgAbGroup.cyclic(64),
            FgAbGroup.from_divisors([2, 2, 4]),
        ]
        for a in small:
            for b in small:
                assert hom_group(a, b) == hom_by_enumeration(a, b), (a, b)

    def test_ext_against_resolution(self):
        small = [
            FgAbGroup.cyclic(2),
            FgAbGroup.cyclic(4),
            FgAbGroup.cyclic(6),
            FgAbGroup.from_divisors([2, 4]),
            FgAbGroup(1, (2,)),
            Z,
        ]
        for a in small:
            for b in small:
                assert ext_group(a, b) == ext_by_resolution(a, b), (a, b)

    def test_ext_into_z_is_torsion_subgroup(self):
        rng = random.Random(11)
        for _ in range(30):
            g = random_group(rng)
            assert ext_group(g, Z) == g.torsion_subgroup()


class TestExtensionCandidates:
    def test_known_values(self):
        assert extension_candidates(Z, FgAbGroup.cyclic(2)) == frozenset(
            {Z, FgAbGroup(1, (2,))}
        )
        assert extension_candidates(FgAbGroup.cyclic(2), Z) == frozenset({FgAbGroup(1, (2,))})
        assert extension_candidates(FgAbGroup.cyclic(2), FgAbGroup.cyclic(2)) == frozenset(
            {FgAbGroup.from_divisors([2, 2]), FgAbGroup.cyclic(4)}
        )

    def test_torsionfree_quotient_splits(self):
        rng = random.Random(5)
        for _ in range(20):
            a = random_group(rng, max_order=16)
            b = FgAbGroup.free(rng.randint(0, 2))
            assert extension_candidates(a, b) == frozenset({a.direct_sum(b)})

    def test_every_candidate_has_right_order_and_contains_sub(self):
        a = FgAbGroup.from_divisors([2, 4])
        b = FgAbGroup.from_divisors([2])
        for e in extension_candidates(a, b):
            assert e.order() == a.order() * b.order()

    def test_bound(self):
        with pytest.raises(EnumerationBoundError):
            extension_candidates(FgAbGroup.free(13), FgAbGroup.cyclic(2), bound=4096)


class TestLattices:
    def test_lattice_eq(self):
        a = IntMatrix([[2, 0], [0, 3]])
        b = IntMatrix([[2, 2], [3, 0]])
        assert lattice_eq(a, b)
        c = IntMatrix([[2, 0], [0, 6]])
        assert not lattice_eq(a, c)


def test_doctests():
    import doctest

    import lspectra.abelian as mod

    failures, _ = doctest.testmod(mod)
    assert failures == 0
