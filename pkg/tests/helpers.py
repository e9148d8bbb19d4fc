"""Independent oracles used by the test suite.

Each oracle recomputes an expected value along a different route from the
implementation it checks: invariant factors from gcds of minors, Hom/Ext
by exhaustive enumeration, Ext by an explicit free resolution, Kunneth
groups from closed formulas, and Gauss sums in floating point.
"""

from __future__ import annotations

import cmath
import itertools
from math import gcd

from lspectra.abelian import FgAbGroup, IntMatrix, cokernel


# -- invariant factors via determinantal divisors ---------------------------------


def minors_gcd_invariant_factors(A: IntMatrix):
    """d_k = gcd(k x k minors); invariant factor k is d_k / d_(k-1)."""
    n = min(A.rows, A.cols)
    gcds = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in itertools.combinations(range(A.rows), k):
            for cols in itertools.combinations(range(A.cols), k):
                sub = IntMatrix([[A[i, j] for j in cols] for i in rows])
                g = gcd(g, sub.det())
                if g == 1:
                    break
            if g == 1:
                break
        gcds.append(g)
        if g == 0:
            break
    factors = []
    for k in range(1, len(gcds)):
        if gcds[k] == 0:
            break
        factors.append(gcds[k] // gcds[k - 1])
    return factors


# -- finite abelian groups by exhaustive enumeration --------------------------------


def elements_of(group: FgAbGroup):
    return list(itertools.product(*(range(d) for d in group.torsion)))


def add_in(group: FgAbGroup, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, group.torsion))


def scale_in(group: FgAbGroup, r, x):
    return tuple((r * a) % d for a, d in zip(x, group.torsion))


def group_from_annihilator_counts(elements, add, scale, order):
    """Reconstruct the isomorphism class of a finite abelian group.

    ``elements`` is the full element list; f(m) = #{x : m x = 0} determines
    the group, prime by prime.
    """

    def is_zero(t):
        if isinstance(t, tuple):
            return all(is_zero(i) for i in t)
        return t == 0

    def count_killed(m):
        return sum(1 for x in elements if is_zero(scale(m, x)))

    n = order
    divisors = []
    p = 2
    rest = n
    primes = []
    while p * p <= rest:
        if rest % p == 0:
            primes.append(p)
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        primes.append(rest)
    for p in primes:
        prev = 1
        j = 1
        counts = []
        while True:
            c = count_killed(p**j)
            counts.append((j, c))
            if c == prev:
                break
            prev = c
            j += 1
        # a_j = number of cyclic p-factors of order >= p^j
        a = []
        last = 1
        for j, c in counts:
            ratio = c // last
            exp = 0
            while ratio > 1:
                ratio //= p
                exp += 1
            a.append(exp)
            last = c
        for j in range(len(a)):
            exactly = a[j] - (a[j + 1] if j + 1 < len(a) else 0)
            divisors.extend([p ** (j + 1)] * exactly)
    return FgAbGroup.from_divisors(divisors)


def hom_by_enumeration(A: FgAbGroup, B: FgAbGroup, cap=1 << 15):
    """Hom(A, B) for finite groups, as the group of all homomorphisms."""
    assert A.is_torsion() and B.is_torsion()
    b_elems = elements_of(B)
    choices = []
    for d in A.torsion:
        valid = [b for b in b_elems if not any(scale_in(B, d, b))]
        choices.append(valid)
    total = 1
    for c in choices:
        total *= len(c)
    if total > cap:
        raise ValueError("enumeration too large")
    homs = list(itertools.product(*choices))

    def add(h1, h2):
        return tuple(add_in(B, x, y) for x, y in zip(h1, h2))

    def scale(r, h):
        return tuple(scale_in(B, r, x) for x in h)

    return group_from_annihilator_counts(homs, add, scale, len(homs))


def ext_by_resolution(A: FgAbGroup, B: FgAbGroup):
    """Ext(A, B) as the direct sum of B/dB over the torsion of A."""
    out = FgAbGroup()
    for d in A.torsion:
        g = B.gens()
        m = IntMatrix.diagonal([d] * g, rows=g, cols=g)
        rel = B.relation_matrix()
        out = out.direct_sum(cokernel(m.hstack(rel) if rel.cols else m))
    return out


# -- Kunneth -----------------------------------------------------------------------


def tensor_closed_form(A: FgAbGroup, B: FgAbGroup):
    divisors = [0] * (A.free_rank * B.free_rank)
    divisors += [d for d in A.torsion for _ in range(B.free_rank)]
    divisors += [e for e in B.torsion for _ in range(A.free_rank)]
    divisors += [gcd(d, e) for d in A.torsion for e in B.torsion]
    return FgAbGroup.from_divisors(divisors)


def tor_closed_form(A: FgAbGroup, B: FgAbGroup):
    return FgAbGroup.from_divisors([gcd(d, e) for d in A.torsion for e in B.torsion])


def kunneth_parts(C, D, n):
    """(tensor part, Tor part) of H_n(C (x) D) from the factors' homology."""
    lo_c, hi_c = C.window()
    lo_d, hi_d = D.window()
    tens = FgAbGroup()
    tor = FgAbGroup()
    for p in range(lo_c, hi_c + 1):
        hp = C.homology(p)
        tens = tens.direct_sum(tensor_closed_form(hp, D.homology(n - p)))
        tor = tor.direct_sum(tor_closed_form(hp, D.homology(n - 1 - p)))
    return tens, tor


# -- floating point Gauss sum --------------------------------------------------------


def gauss_sum_float(L):
    return sum(cmath.exp(2j * cmath.pi * float(L.q(x))) for x in L.elements())


def random_linking_form(rng, max_order=256):
    """Random nondegenerate form as an orthogonal sum of standard pieces."""
    from lspectra.forms import LinkingForm

    pieces = []
    order = 1
    while True:
        kind = rng.choice(["cyclic", "hyperbolic", "skew"])
        k = rng.randint(1, 3)
        size = (1 << k) if kind == "cyclic" else (1 << (2 * k))
        if order * size > max_order:
            break
        if kind == "cyclic":
            pieces.append(LinkingForm.cyclic(k, rng.choice([1, 3, 5, 7])))
        elif kind == "hyperbolic":
            pieces.append(LinkingForm.hyperbolic(k))
        else:
            pieces.append(LinkingForm.skew_unit(k))
        order *= size
        if rng.random() < 0.3:
            break
    if not pieces:
        pieces = [LinkingForm.cyclic(1, 1)]
    form = pieces[0]
    for p in pieces[1:]:
        form = form.direct_sum(p)
    return form


def random_matrix(rng, rows, cols, lo=-50, hi=50):
    return IntMatrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def random_group(rng, max_order=64):
    divisors = []
    if rng.random() < 0.4:
        divisors += [0] * rng.randint(1, 2)
    order = 1
    while rng.random() < 0.6:
        d = rng.choice([2, 2, 3, 4, 5, 8, 9, 12])
        if order * d > max_order:
            break
        divisors.append(d)
        order *= d
    return FgAbGroup.from_divisors(divisors)
