"""Hochschild cohomology of the Beilinson algebra: dimensions and bases.

With the Hom complex 0 -> P0^ -> P1^ -> P2^ -> 0 of `resolution` and its
matrices D1, D2,

    HH^0 = ker D1,   HH^1 = ker D2 / im D1,   HH^2 = coker D2,

and HH^r = 0 for r >= 3.  HH^0 is always the scalars.  The module provides

  * the dimensions straight from the matrix ranks,
  * the closed-form dimensions per (weights, Case I/II, Case 1/2/3) stratum,
  * distinguished cocycle bases of HH^1 and HH^2 per stratum, built from
    explicit tau-functional combinations and verified against the matrices,
  * parameter samples reaching each stratum at fixed weights, found by exact
    rational root search on lambda_{m+1}(1, beta) when needed.

The closed forms all concern coprime weights n <= m; for general weights
(kn, km) every dimension is k times the value at (n, m) with the parameters
transported by the weight swap rule when the input has n > m.
"""

from fractions import Fraction as Q
from math import gcd

from .core import Cond1, Cond2, Instance, canonical_instance, classify
from .linalg import QMatrix, QPoly
from .resolution import HomComplex


# -- dimensions -------------------------------------------------------------

def hh_dims_computed(C: HomComplex):
    """(h0, h1, h2) from the ranks of D1 and D2."""
    d0, d1, d2 = C.dims
    r1 = C.D1.rank()
    r2 = C.D2.rank()
    return (d0 - r1, (d1 - r2) - r1, d2 - r2)


def hh_dims_closed_form(inst: Instance):
    """(h0, h1, h2) for coprime weights, by stratum."""
    n, m = inst.n, inst.m
    c1, c2 = classify(inst)
    I, II = Cond1.CASE_I, Cond1.CASE_II
    C1, C2, C3 = Cond2.CASE_1, Cond2.CASE_2, Cond2.CASE_3
    key = (c1, c2)
    if n == 1 and m == 1:
        table = {(I, C1): (6, 9), (II, C2): (3, 6), (II, C3): (1, 4)}
    elif n == 1:
        h1 = {(I, C1): 4, (II, C1): 3, (II, C2): 2, (II, C3): 1}
        if m == 2:
            h2 = {(II, C1): 8, (II, C2): 7, (II, C3): 6}
        else:
            h2 = {(I, C1): m + 5, (II, C1): m + 4, (II, C2): m + 3, (II, C3): m + 2}
        table = {k: (h1[k], h2[k]) for k in h1 if k in h2}
    else:
        h2_I = m + 5 if n == 2 else n + m + 1
        h2_II = m + 4 if n == 2 else n + m
        table = {(I, C1): (2, h2_I),
                 (II, C1): (1, h2_II), (II, C2): (1, h2_II), (II, C3): (1, h2_II)}
    if key not in table:
        raise ValueError(f"stratum {key} cannot occur at weights ({n}, {m})")
    h1, h2 = table[key]
    return (1, h1, h2)


def hh_dims_general(n0: int, m0: int, alpha, beta):
    """(h0, h1, h2) for arbitrary weights: gcd times the reduced value."""
    inst, k, _ = canonical_instance(n0, m0, alpha, beta,
                                    allow_reduce=True, allow_swap=True)
    h0, h1, h2 = hh_dims_closed_form(inst)
    return (k * h0, k * h1, k * h2)


def euler_characteristic_closed_form(inst: Instance) -> int:
    """1 - h1 + h2, which only depends on the weights."""
    n, m = inst.n, inst.m
    if n == 1:
        return {1: 4, 2: 6}.get(m, m + 2)
    return m + 4 if n == 2 else n + m


# -- cocycle bases ----------------------------------------------------------

def _unit_vec(size, entries):
    v = [Q(0)] * size
    for i, c in entries:
        v[i] += c
    return v


def hh0_basis(C: HomComplex):
    """HH^0 is spanned by the identity: the sum of all vertex functionals."""
    return [("unit", [Q(1)] * len(C.basis0))]


def hh1_basis(C: HomComplex):
    """The distinguished HH^1 basis for the stratum of C.inst.

    Returns [(label, vector in the P1^ basis)].  The labels h1..h5 and the
    primed ones for n = m = 1 follow the fixed formulas below; which of them
    form the basis depends on the stratum.
    """
    inst = C.inst
    n, m = inst.n, inst.m
    a, b, lam = inst.alpha, inst.beta, inst.lam
    c1, c2 = classify(inst)
    d1 = len(C.basis1)

    def vec(entries):
        return _unit_vec(d1, [(C.idx1[t], c) for t, c in entries])

    cand = {}
    cand["h1"] = vec([((("x", r), "x"), Q(1)) for r in range(1, n + 2 * m + 1)])
    if c1 == Cond1.CASE_I:
        cand["h2"] = vec([((("x", n + r), "x"), Q(-1) ** (r - 1))
                          for r in range(1, m + 1)])
    if n == 1 and c2 == Cond2.CASE_1:
        cand["h3"] = vec([((("y", r), "x" * m), lam(r - 1))
                          for r in range(2, m + 3)])
        cand["h4"] = vec([((("y", r), "x" * m), b * lam(r - 2))
                          for r in range(1, m + 3)])
    if n == 1 and c2 == Cond2.CASE_2:
        cand["h5"] = vec([((("y", r), "x" * m), (a / 2) ** (r - 1))
                          for r in range(1, m + 3)])
    if n == 1 and m == 1:
        if c2 == Cond2.CASE_1:
            cand["h3p"] = vec([((("x", 2), "y"), Q(1))])
            cand["h4p"] = vec([((("x", 1), "y"), b), ((("x", 3), "y"), Q(1))])
        if c2 == Cond2.CASE_2:
            cand["h5p"] = vec([((("x", 1), "y"), (a / 2) ** 2),
                               ((("x", 2), "y"), a / 2),
                               ((("x", 3), "y"), Q(1))])

    if n == 1 and m == 1:
        rows = {(Cond1.CASE_I, Cond2.CASE_1): ["h1", "h2", "h3", "h4", "h3p", "h4p"],
                (Cond1.CASE_II, Cond2.CASE_2): ["h1", "h5", "h5p"],
                (Cond1.CASE_II, Cond2.CASE_3): ["h1"]}
    elif n == 1:
        rows = {(Cond1.CASE_I, Cond2.CASE_1): ["h1", "h2", "h3", "h4"],
                (Cond1.CASE_II, Cond2.CASE_1): ["h1", "h3", "h4"],
                (Cond1.CASE_II, Cond2.CASE_2): ["h1", "h5"],
                (Cond1.CASE_II, Cond2.CASE_3): ["h1"]}
    else:
        rows = {(Cond1.CASE_I, Cond2.CASE_1): ["h1", "h2"],
                (Cond1.CASE_II, Cond2.CASE_1): ["h1"],
                (Cond1.CASE_II, Cond2.CASE_2): ["h1"],
                (Cond1.CASE_II, Cond2.CASE_3): ["h1"]}
    labels = rows[(c1, c2)]
    return [(lbl, cand[lbl]) for lbl in labels]


def hh2_substitution_needed(inst: Instance) -> bool:
    """Whether the straight one-functional-per-class list for HH^2 needs its
    g_n^yxy entry replaced by g_n^yyx.

    When n and m are both odd and alpha != 0, the coboundary of the
    alternating functional sum_p (-1)^p tau[x_p]^x is supported exactly on
    the f^xyx and g^yxy coordinates with coefficients +-2 alpha, so those
    unit functionals are dependent modulo the image and one of them has to
    give way; see hh2_table_row versus hh2_basis.
    """
    return inst.n % 2 == 1 and inst.m % 2 == 1 and classify(inst)[0] == Cond1.CASE_II


def hh2_table_row(C: HomComplex):
    """The uncorrected one-functional-per-class list for the stratum.

    On the strata flagged by hh2_substitution_needed this list has the right
    length but is *not* a basis (one dependency); everywhere else it equals
    hh2_basis.
    """
    return _hh2_specs(C, substitute=False)


def hh2_basis(C: HomComplex):
    """The distinguished HH^2 basis for the stratum of C.inst.

    Returns [(label, vector in the P2^ basis)]; each class is a single
    tau-functional, labelled like g1^yxy.
    """
    return _hh2_specs(C, substitute=hh2_substitution_needed(C.inst))


def _hh2_specs(C: HomComplex, substitute: bool):
    inst = C.inst
    n, m = inst.n, inst.m
    c1, c2 = classify(inst)
    I, II = Cond1.CASE_I, Cond1.CASE_II
    C1, C2, C3 = Cond2.CASE_1, Cond2.CASE_2, Cond2.CASE_3

    def taus(*specs):
        return [(kind, i, w) for kind, i, w in specs]

    if n == 1 and m == 1:
        rows = {
            (I, C1): taus(("g", 1, "yyx"), ("g", 1, "yxy"), ("f", 1, "xyx"),
                          ("g", 1, "yxx"), ("g", 1, "xyx"), ("f", 1, "yyx"),
                          ("f", 1, "yxy"), ("g", 1, "xxx"), ("f", 1, "yyy")),
            (II, C2): taus(("g", 1, "yxy"), ("f", 1, "xyx"), ("g", 1, "xyx"),
                           ("f", 1, "yxy"), ("g", 1, "xxx"), ("f", 1, "yyy")),
            (II, C3): taus(("g", 1, "yxy"), ("f", 1, "xyx"),
                           ("g", 1, "xxx"), ("f", 1, "yyy")),
        }
        specs = rows[(c1, c2)]
    elif n == 1 and m == 2:
        base = taus(("f", 1, "xyx"), ("f", 2, "xyx"), ("g", 1, "yxy"))
        drop = {C1: [], C2: ["yxxx"], C3: ["yxxx", "xyxx"]}[c2]
        mids = [w for w in ("yxxx", "xyxx") if w not in drop]
        specs = (base + [("g", 1, w) for w in mids]
                 + taus(("g", 1, "xxxxx"), ("f", 1, "yy"), ("f", 2, "yy")))
    elif n == 1:
        specs = [("f", i, "xyx") for i in range(1, m + 1)] + [("g", 1, "yxy")]
        if (c1, c2) == (I, C1):
            specs.append(("g", 1, "yyx"))
        if c2 == C1:
            specs.append(("g", 1, "y" + "x" * (m + 1)))
        if c2 in (C1, C2):
            specs.append(("g", 1, "xy" + "x" * m))
        specs.append(("g", 1, "x" * (2 * m + 1)))
    else:
        specs = ([("f", i, "xyx") for i in range(1, m + 1)]
                 + [("g", j, "yxy") for j in range(1, n + 1)])
        if c1 == I:
            specs.append(("g", n, "yyx"))
        if n == 2:
            specs += [("g", 1, "x" * (m + 1)), ("g", 2, "x" * (m + 1))]

    if substitute:
        specs = [("g", n, "yyx") if s == ("g", n, "yxy") else s for s in specs]
    d2 = len(C.basis2)
    out = []
    for kind, i, w in specs:
        vec = _unit_vec(d2, [(C.idx2[((kind, i), w)], Q(1))])
        out.append((f"{kind}{i}^{w}", vec))
    return out


# -- verification helpers ---------------------------------------------------

def is_cocycle(C: HomComplex, vec) -> bool:
    return all(c == 0 for c in C.D2.matvec(vec))


def independent_mod_image(M: QMatrix, vecs) -> bool:
    """True iff the vectors stay independent modulo the column space of M."""
    if not vecs:
        return True
    A = QMatrix.from_columns(M.columns() + list(vecs))
    return A.rank() == M.rank() + len(vecs)


def coords_mod_image(M: QMatrix, basis_vecs, v):
    """Coordinates of [v] in the given basis of coker(M); None if [v] is not
    in its span."""
    A = QMatrix.from_columns(M.columns() + list(basis_vecs))
    x = A.solve(list(v))
    if x is None:
        return None
    return x[M.ncols:]


def verify_bases(C: HomComplex):
    """Check both distinguished bases against the matrices; returns dims."""
    h0, h1, h2 = hh_dims_computed(C)
    b1 = hh1_basis(C)
    assert all(is_cocycle(C, v) for _, v in b1)
    assert independent_mod_image(C.D1, [v for _, v in b1])
    assert len(b1) == h1
    b2 = hh2_basis(C)
    assert independent_mod_image(C.D2, [v for _, v in b2])
    assert len(b2) == h2
    return (h0, h1, h2)


# -- stratum sampling -------------------------------------------------------

def lambda_poly_in_beta(r: int) -> QPoly:
    """lambda_r(1, beta) as a polynomial in beta."""
    lo = QPoly([])        # lambda_0 = 0
    hi = QPoly([Q(1)])    # lambda_1 = 1
    for _ in range(r - 1):
        lo, hi = hi, hi + QPoly([Q(0), Q(1)]) * lo
    return hi if r >= 1 else lo


def rational_roots(p: QPoly):
    """All rational roots of p, ascending (p must be nonzero)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    denom_lcm = 1
    for c in p.coeffs:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in p.coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor out t; drops only the root 0
    if not ints:
        return []

    def divisors(x):
        x = abs(x)
        out = [d for d in range(1, x + 1) if x % d == 0]
        return out

    cands = {Q(s * pnum, qden) for pnum in divisors(ints[0])
             for qden in divisors(ints[-1]) for s in (1, -1)}
    return sorted(c for c in cands if p(c) == 0)


def stratum_samples(n: int, m: int):
    """For fixed coprime weights, one parameter pair per stratum.

    Returns a dict mapping (Cond1, Cond2) to a record with keys
    status ("reached" | "vacuous" | "no-rational-point"), and for reached
    strata the instance; the search for Case 1 with odd n uses the exact
    rational roots of lambda_{m+1}(1, beta).
    """
    out = {}
    I, II = Cond1.CASE_I, Cond1.CASE_II
    C1, C2, C3 = Cond2.CASE_1, Cond2.CASE_2, Cond2.CASE_3

    if n % 2 == 1 and m % 2 == 1:
        inst = Instance(n, m, Q(0), Q(1))
        assert classify(inst) == (I, C1)
        out[(I, C1)] = {"status": "reached", "instance": inst}
    else:
        out[(I, C1)] = {"status": "vacuous",
                        "reason": "Case I needs both weights odd"}
    for c2 in (C2, C3):
        out[(I, c2)] = {"status": "vacuous", "reason": "Case I forces Case 1"}

    if n % 2 == 0:
        inst = Instance(n, m, Q(0), Q(1))
        assert classify(inst) == (II, C1)
        out[(II, C1)] = {"status": "reached", "instance": inst}
    else:
        # alpha = 0 would land in Case I (m odd) or miss Case 1 (m even), so
        # alpha != 0, and by weighted homogeneity alpha can be scaled to 1:
        # the stratum has a rational point iff lambda_{m+1}(1, beta) has a
        # nonzero rational root.
        p = lambda_poly_in_beta(m + 1)
        roots = [b for b in rational_roots(p) if b != 0]
        if roots:
            inst = Instance(n, m, Q(1), roots[0])
            assert classify(inst) == (II, C1)
            out[(II, C1)] = {"status": "reached", "instance": inst,
                             "all_beta": roots}
        elif p.degree == 0:
            out[(II, C1)] = {"status": "vacuous",
                             "reason": "lambda_{m+1} is a nonzero multiple of "
                                       "alpha^m, so Case 1 forces alpha = 0, "
                                       "which leaves this stratum"}
        else:
            out[(II, C1)] = {"status": "no-rational-point",
                             "reason": "lambda_{m+1}(1, beta) has no rational "
                                       "root, and every point of the stratum "
                                       "is a scale of one with alpha = 1"}

    inst = Instance(n, m, Q(2), Q(-1))
    assert classify(inst) == (II, C2)
    out[(II, C2)] = {"status": "reached", "instance": inst}

    inst = Instance(n, m, Q(1), Q(1))
    assert classify(inst) == (II, C3)
    out[(II, C3)] = {"status": "reached", "instance": inst}
    return out


def sample_instances(n: int, m: int):
    """The reached instances from stratum_samples, in a fixed order."""
    return [rec["instance"] for key, rec in sorted(
        stratum_samples(n, m).items(),
        key=lambda kv: (kv[0][0].value, kv[0][1].value))
        if rec["status"] == "reached"]
