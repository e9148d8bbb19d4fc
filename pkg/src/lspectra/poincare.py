"""Chain complexes with quadratic or symmetric structure data.

A structure of dimension n on a complex C is a family of integer pairing
matrices indexed by (level, source degree): quadratic level i pairs
C_k against C_{n+i-k}, symmetric level i pairs C_k against C_{n-i-k}.
The structure relations below are the coboundary/symmetrisation equations
making the family a cycle for the standard C2-resolution; the flip acts by

    (T f)(x, y) = t(n) * (-1)^(|x||y|) f(y, x),   t(n) = -1 iff n = 1 mod 4.

The extra twist t(n) is the skew-suspension sign; it is the single free
sign choice of the theory and is pinned end to end by the linking-form
oracles (the (a^2+b^2+ab)/2 table and beta = 4, plus the odd/2^(k+1)
values of the cyclic examples).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .abelian import FgAbGroup, IntMatrix, kernel_basis, solve
from .chain import IntComplex, cone, dual, tensor, tensor_segments
from .forms import DegenerateFormError, LinkingForm, brown_kervaire, check_quadratic, nondegenerate

__all__ = [
    "PoincareStructure",
    "StructuredComplex",
    "InvalidStructureError",
    "poincare_check",
    "tensor_structured",
    "linking_form",
    "certify_ef",
    "representative",
]


class InvalidStructureError(ValueError):
    """Structure data violating the relations or the expected shapes."""


def flip_sign(n: int) -> int:
    """The extra sign in the C2-action at structure dimension n."""
    return -1 if n % 4 == 1 else 1


class PoincareStructure:
    """kind 'quadratic' or 'symmetric', duality dimension, pairing matrices."""

    __slots__ = ("kind", "dimension", "psi")

    def __init__(self, kind, dimension, psi):
        if kind not in ("quadratic", "symmetric"):
            raise InvalidStructureError(f"unknown kind {kind!r}")
        table = {}
        for (level, k), m in psi.items():
            level, k = int(level), int(k)
            if level < 0:
                raise InvalidStructureError("levels are indexed from 0")
            m = m if isinstance(m, IntMatrix) else IntMatrix(m)
            if not m.is_zero():
                table[(level, k)] = m
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "dimension", int(dimension))
        object.__setattr__(self, "psi", table)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("PoincareStructure is immutable")

    def partner_degree(self, level: int, k: int) -> int:
        if self.kind == "quadratic":
            return self.dimension + level - k
        return self.dimension - level - k

    def max_level(self) -> int:
        return max((lv for lv, _ in self.psi), default=0)

    def matrix(self, level, k, ranks) -> IntMatrix:
        m = self.psi.get((level, k))
        if m is None:
            return IntMatrix.zero(ranks(k), ranks(self.partner_degree(level, k)))
        return m


class StructuredComplex:
    """A bounded free complex together with a validated structure."""

    __slots__ = ("complex", "structure")

    def __init__(self, complex: IntComplex, structure: PoincareStructure, check=True):
        for (level, k), m in structure.psi.items():
            expected = (complex.rank(k), complex.rank(structure.partner_degree(level, k)))
            if (m.rows, m.cols) != expected:
                raise InvalidStructureError(
                    f"matrix at level {level}, degree {k} has shape {(m.rows, m.cols)},"
                    f" expected {expected}"
                )
        object.__setattr__(self, "complex", complex)
        object.__setattr__(self, "structure", structure)
        if check:
            bad = structure_relation_failures(self)
            if bad:
                raise InvalidStructureError(f"structure relations fail at {bad[:3]}")

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("StructuredComplex is immutable")

    @property
    def dimension(self):
        return self.structure.dimension

    @property
    def kind(self):
        return self.structure.kind

    def psi_matrix(self, level, k) -> IntMatrix:
        return self.structure.matrix(level, k, self.complex.rank)

    def to_json(self) -> dict:
        doc = self.complex.to_json()
        doc["kind"] = self.kind
        doc["dimension"] = self.dimension
        doc["psi"] = {
            f"{lv},{k}": m.tolist() for (lv, k), m in sorted(self.structure.psi.items())
        }
        return doc

    @classmethod
    def from_json(cls, doc) -> "StructuredComplex":
        if isinstance(doc, str):
            doc = json.loads(doc)
        cx = IntComplex.from_json(doc)
        psi = {}
        for key, m in doc.get("psi", {}).items():
            lv, k = key.split(",")
            psi[(int(lv), int(k))] = IntMatrix(m)
        return cls(cx, PoincareStructure(doc["kind"], doc["dimension"], psi))


# ---------------------------------------------------------------------------
# Structure relations
# ---------------------------------------------------------------------------


def structure_relation_failures(S: StructuredComplex):
    """Slots where the coboundary relations fail; empty means valid.

    Quadratic, level j >= 0, on x in C_k, y in C_{n+j+1-k}:
        -(-1)^j [ d^T psi_{j,k-1} + (-1)^k psi_{j,k} d ]
            = (-1)^(j+1) psi_{j+1,k} + eps(k, n+j+1-k) psi_{j+1,*}^T
    Symmetric, level i >= 0, on x in C_k, y in C_{n-i+1-k}:
        -(-1)^i [ d^T phi_{i,k-1} + (-1)^k phi_{i,k} d ]
            = phi_{i-1,k} + (-1)^i eps(k, n-i+1-k) phi_{i-1,*}^T
    with eps(p, q) = t(n) (-1)^(pq).
    """
    C = S.complex
    n = S.dimension
    t = flip_sign(n)
    lo, hi = C.window()
    failures = []
    max_level = S.structure.max_level() + 1
    for level in range(0, max_level + 1):
        for k in range(lo, hi + 2):
            if S.kind == "quadratic":
                kp = n + level + 1 - k  # degree of y
                if C.rank(k) == 0 or C.rank(kp) == 0:
                    continue
                lhs = _lhs(S, level, k, kp)
                sgn = -1 if (level + 1) % 2 else 1
                eps = t * (-1 if (k * kp) % 2 else 1)
                rhs = S.psi_matrix(level + 1, k).scale(sgn) + S.psi_matrix(level + 1, kp).transpose().scale(eps)
            else:
                kp = n - level + 1 - k
                if C.rank(k) == 0 or C.rank(kp) == 0:
                    continue
                lhs = _lhs(S, level, k, kp)
                eps = t * (-1 if (k * kp) % 2 else 1)
                sgn = -1 if level % 2 else 1
                if level == 0:
                    rhs = IntMatrix.zero(C.rank(k), C.rank(kp))
                else:
                    rhs = S.psi_matrix(level - 1, k) + S.psi_matrix(level - 1, kp).transpose().scale(sgn * eps)
            if lhs != rhs:
                failures.append((level, k))
    return failures


def _lhs(S: StructuredComplex, level, k, kp) -> IntMatrix:
    C = S.complex
    d_k = C.diff(k)
    d_y = C.diff(kp)
    first = d_k.transpose() @ S.psi_matrix(level, k - 1)
    second = S.psi_matrix(level, k) @ d_y
    combined = first + second.scale(-1 if k % 2 else 1)
    outer = -1 if level % 2 == 0 else 1  # -(-1)^level
    return combined.scale(outer)


# ---------------------------------------------------------------------------
# Poincare duality check
# ---------------------------------------------------------------------------


def duality_matrices(S: StructuredComplex) -> dict[int, IntMatrix]:
    """The symmetrised level-0 pairing: for quadratic, (1+T) psi_0."""
    C = S.complex
    n = S.dimension
    t = flip_sign(n)
    lo, hi = C.window()
    out = {}
    for k in range(lo, hi + 1):
        if C.rank(k) == 0 or C.rank(n - k) == 0:
            continue
        m = S.psi_matrix(0, k)
        if S.kind == "quadratic":
            eps = t * (-1 if (k * (n - k)) % 2 else 1)
            m = m + S.psi_matrix(0, n - k).transpose().scale(eps)
        out[k] = m
    return out


def poincare_check(S: StructuredComplex) -> bool:
    """Does the symmetrised structure induce isomorphisms on homology?

    The adjoint of the pairing is a chain map C -> dual(C, n); the check
    verifies the chain-map identity and then that the mapping cone is
    acyclic.
    """
    C = S.complex
    n = S.dimension
    D = dual(C, n)
    lam = duality_matrices(S)
    comps = {k: m.transpose() for k, m in lam.items()}
    lo, hi = C.window()
    for k in range(lo, hi + 1):
        src = comps.get(k, IntMatrix.zero(D.rank(k), C.rank(k)))
        prev = comps.get(k - 1, IntMatrix.zero(D.rank(k - 1), C.rank(k - 1)))
        if D.diff(k) @ src != prev @ C.diff(k):
            return False
    mc = cone(comps, C, D)
    wlo, whi = mc.window()
    return all(mc.homology(k).is_trivial() for k in range(wlo, whi + 1))


# ---------------------------------------------------------------------------
# Tensor of structures
# ---------------------------------------------------------------------------


def tensor_structured(S: StructuredComplex, T: StructuredComplex) -> StructuredComplex:
    """Product of a symmetric structure with a quadratic one.

    The underlying complex is the graded tensor product; structure level p
    collects phi_q against psi_{p+q} across the coproduct of the
    C2-resolution, with the interchange Koszul sign
    (-1)^(|u||y| + (p+q)(|x|+|y|)) for x (x) u paired against y (x) v, and
    a T-twist of phi for odd p.  Dimensions add.

    The output relations are re-validated, so an invalid combination fails
    loudly.  Quadratic factors concentrated in level 0 (every representative
    this library ships) are always valid; the one exception is the unit,
    which is exact at every level.
    """
    if S.kind != "symmetric" or T.kind != "quadratic":
        raise InvalidStructureError("tensor takes (symmetric, quadratic)")
    C, D = S.complex, T.complex
    nC, mD = S.dimension, T.dimension
    N = nC + mD
    G = tensor(C, D)
    tC = flip_sign(nC)
    max_p = T.structure.max_level()
    psi = {}
    for p in range(0, max_p + 1):
        slots = {}
        for q in range(0, S.structure.max_level() + 1):
            if all((p + q, k) not in T.structure.psi for k in range(*_deg_span(D))):
                continue
            for a in range(*_deg_span(C)):
                ya = nC - q - a  # degree of y
                if C.rank(a) == 0 or C.rank(ya) == 0:
                    continue
                phi = S.psi_matrix(q, a)
                if p % 2:
                    eps = tC * (-1 if (a * ya) % 2 else 1)
                    phi = S.psi_matrix(q, ya).transpose().scale(eps)
                if phi.is_zero():
                    continue
                for b in range(*_deg_span(D)):
                    vb = mD + p + q - b  # degree of v
                    if D.rank(b) == 0 or D.rank(vb) == 0:
                        continue
                    quad = T.psi_matrix(p + q, b)
                    if quad.is_zero():
                        continue
                    g = a + b
                    sign_exp = b * ya + (p + q) * (a + ya)
                    sign = -1 if sign_exp % 2 else 1
                    block = _kron(phi, quad, sign)
                    _accumulate(slots, G, g, a, ya, vb, C, D, block)
        for (g, _), m in list(slots.items()):
            key = (p, g)
            psi[key] = m if key not in psi else psi[key] + m
    structure = PoincareStructure("quadratic", N, {k: m for k, m in psi.items()})
    return StructuredComplex(G, structure)


def _deg_span(C: IntComplex):
    lo, hi = C.window()
    return (lo, hi + 1)


def _kron(phi: IntMatrix, quad: IntMatrix, sign: int) -> IntMatrix:
    rows = phi.rows * quad.rows
    cols = phi.cols * quad.cols
    m = [[0] * cols for _ in range(rows)]
    for i in range(phi.rows):
        for j in range(phi.cols):
            v = phi[i, j]
            if not v:
                continue
            for r in range(quad.rows):
                for s in range(quad.cols):
                    m[i * quad.rows + r][j * quad.cols + s] = sign * v * quad[r, s]
    return IntMatrix(m, shape=(rows, cols))


def _accumulate(slots, G, g, a, ya, vb, C, D, block):
    """Place a (C_a (x) D_b) x (C_ya (x) D_vb) block into the G-basis slot."""
    gp = ya + vb
    src_segs = tensor_segments(C, D, g)
    tgt_segs = tensor_segments(C, D, gp)
    row_off = 0
    for p0, rc, rd in src_segs:
        if p0 == a:
            break
        row_off += rc * rd
    else:
        return
    col_off = 0
    for p0, rc, rd in tgt_segs:
        if p0 == ya:
            break
        col_off += rc * rd
    else:
        return
    rows = G.rank(g)
    cols = G.rank(gp)
    key = (g, gp)
    current = slots.get(key)
    if current is None:
        current = IntMatrix.zero(rows, cols)
    m = current.tolist()
    for i in range(block.rows):
        for j in range(block.cols):
            if block[i, j]:
                m[row_off + i][col_off + j] += block[i, j]
    slots[key] = IntMatrix(m, shape=(rows, cols))


# ---------------------------------------------------------------------------
# Linking forms from 2-torsion quadratic complexes
# ---------------------------------------------------------------------------


def linking_form(S: StructuredComplex, carrier: int = 0, lift_rng=None, bound=1 << 12) -> LinkingForm:
    """Extract the quadratic linking form on H_carrier(C).

    For a quadratic structure of dimension 2*carrier + 1 whose carrier
    homology is a finite 2-group, the value on a class [y] is

        (psi_1(z, z) + psi_0(dz, z)) / 2^(K+1),   d z = 2^K y,

    evaluated with one uniform exponent K for the whole group and with
    lifts extended linearly from a fixed solution per generator.  Passing
    ``lift_rng`` perturbs the generator lifts by random cycles, which must
    not change the Brown-Kervaire class of the output.
    """
    if S.kind != "quadratic":
        raise InvalidStructureError("linking forms need a quadratic structure")
    n = S.dimension
    if n != 2 * carrier + 1:
        raise InvalidStructureError(
            f"dimension {n} does not match carrier degree {carrier} (need {2 * carrier + 1})"
        )
    C = S.complex
    H, gens, orders = C.homology_with_gens(carrier)
    if H.free_rank or not H.is_two_primary():
        raise DegenerateFormError("carrier homology is not a finite 2-group")
    if H.order() > bound:
        raise DegenerateFormError("carrier homology exceeds the desk-scale bound")
    if H.is_trivial():
        return LinkingForm(FgAbGroup(), {(): Fraction(0)})
    d = C.diff(carrier + 1)
    # one uniform 2-power exponent K for every class
    K = 0
    for g in gens:
        k = 0
        while solve(d, [(1 << k) * v for v in g]) is None:
            k += 1
            if 1 << k > 2 * H.order():
                raise DegenerateFormError("no 2-power lift found; invalid input")
        K = max(K, k)
    lifts = []
    for g in gens:
        z = solve(d, [(1 << K) * v for v in g])
        lifts.append(z)
    if lift_rng is not None:
        ker = kernel_basis(d)
        for z in lifts:
            for j in range(ker.cols):
                c = lift_rng.randint(-3, 3)
                for i in range(len(z)):
                    z[i] += c * ker[i, j]
    m1 = S.psi_matrix(1, carrier + 1)
    m0 = S.psi_matrix(0, carrier)
    denom = 1 << (K + 1)
    qvals = {}
    for coords in H.elements():
        z = [sum(c * zi[i] for c, zi in zip(coords, lifts)) for i in range(C.rank(carrier + 1))]
        dz = [sum(d[i, j] * z[j] for j in range(d.cols)) for i in range(d.rows)]
        val = _pair(m1, z, z) + _pair(m0, dz, z)
        qvals[coords] = Fraction(val, denom) % 1
    form = LinkingForm(H, qvals)
    scalars = range(2 * H.exponent())
    if not check_quadratic(form, scalars):
        raise InvalidStructureError("extracted values are not a quadratic function")
    if not nondegenerate(form):
        raise DegenerateFormError("extracted linking form is degenerate")
    return form


def _pair(m: IntMatrix, x, y) -> int:
    total = 0
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = m.entries[i]
        for j, yj in enumerate(y):
            if yj:
                total += xi * row[j] * yj
    return total


def certify_ef(S_e: StructuredComplex, S_f: StructuredComplex) -> int:
    """beta of the linking form of the tensor product; 4 for the built-ins.

    A tensor of even duality dimension carries no linking form; its class
    is declared zero exactly when the homology of the product contains no
    2-torsion (as for the tensor unit), and is an error otherwise.
    """
    T = tensor_structured(S_e, S_f)
    if T.dimension % 2 == 0:
        lo, hi = T.complex.window()
        for k in range(lo, hi + 1):
            h = T.complex.homology(k)
            if any(d % 2 == 0 for d in h.torsion):
                raise DegenerateFormError(
                    "even-dimensional product with 2-torsion homology has no linking form"
                )
        return 0
    return brown_kervaire(linking_form(T))


# ---------------------------------------------------------------------------
# Built-in representatives
# ---------------------------------------------------------------------------


def representative(name: str) -> StructuredComplex:
    """Named chain-level representatives used by the verification pipeline.

    E: Z --2--> Z in degrees 0 -> -1 with its (-1)-dimensional symmetric
       structure (the nontrivial symmetric form on Z/2 placed in degree -1).
    F: Z^2 in degree 1 with the Arf-1 quadratic refinement of the standard
       skew hyperbolic form, as a 2-dimensional quadratic complex.  The
       underlying symmetrised form here is [[0,1],[-1,0]]; the description
       of it as ((a,b),(c,d)) -> ac - bd in the literature is recorded in
       the README as a known normalisation discrepancy.
    hyperbolic: same complex with the Arf-0 refinement q(a,b) = ab.
    unit: Z in degree 0 with the identity symmetric form.
    """
    if name == "E":
        cx = IntComplex({0: 1, -1: 1}, {0: [[2]]})
        st = PoincareStructure(
            "symmetric",
            -1,
            {(0, 0): [[1]], (0, -1): [[-1]], (1, -1): [[1]]},
        )
        return StructuredComplex(cx, st)
    if name == "F":
        cx = IntComplex({1: 2})
        st = PoincareStructure("quadratic", 2, {(0, 1): [[1, 1], [0, 1]]})
        return StructuredComplex(cx, st)
    if name == "hyperbolic":
        cx = IntComplex({1: 2})
        st = PoincareStructure("quadratic", 2, {(0, 1): [[0, 1], [0, 0]]})
        return StructuredComplex(cx, st)
    if name == "unit":
        cx = IntComplex({0: 1})
        st = PoincareStructure("symmetric", 0, {(0, 0): [[1]]})
        return StructuredComplex(cx, st)
    raise KeyError(f"unknown representative {name!r}")
