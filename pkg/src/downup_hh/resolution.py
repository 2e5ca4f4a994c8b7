"""Bimodule resolution of the Beilinson algebra and its Hom complex.

Write B for the bound quiver algebra and e_v for its trivial paths.  B has a
length-two projective bimodule resolution

    0 -> P2 -> P1 -> P0 -> B -> 0,

whose terms are indexed by the vertices (P0), the arrows (P1) and the
relations (P2):

    P0 = (+)_v B e_v (x) e_v B,
    P1 = (+)_a B e_{s(a)} (x) e_{t(a)} B,
    P2 = (+)_h B e_{s(h)} (x) e_{t(h)} B,   h in {f_1..f_m, g_1..g_n}.

The differentials on generators are

    d1(a)   = (e_{s(a)} (x) e_{s(a)}) a  -  a (e_{t(a)} (x) e_{t(a)}),
    d2(h)   = sum over the terms c * w of the relation h and over the letter
              positions p of w of  c * w[:p] (x) w[p+1:],  the letter w[p]
              becoming the P1 generator at its position's vertex,

and the augmentation P0 -> B sends e_v (x) e_v to e_v.  Elements of P^r are
stored as dicts mapping (generator, left source, left word, right word) to
Fraction coefficients, the left path running into s(generator) and the right
word starting at t(generator).

Applying Hom_{B-bimod}(-, B) and using Hom(B e_u (x) e_v B, B) = e_u B e_v
turns the resolution into the cochain complex

    0 -> P0^ -> P1^ -> P2^ -> 0

whose spaces have bases of *functionals* tau[h]^w, one for each generator h
and each normal word w from s(h) to t(h); tau[h]^w sends the generator h to
the path w and every other generator to 0.  The matrices D1, D2 of the two
maps (columns indexed by the domain basis, rows by the codomain basis) are
assembled here in fixed, explicitly listed basis orders, and the distinguished
submatrices L1 (rows of the four arrow-letter relation functionals against the
arrow columns) and, for n = 1, the x-power block L2 are extracted from D2.
"""

from fractions import Fraction as Q

from .algebra import Beilinson, acc
from .core import Instance
from .linalg import QMatrix


class Resolution:
    """The three-term bimodule resolution of one Beilinson algebra."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.B = Beilinson(inst)

    # -- generators -------------------------------------------------------

    def gens0(self):
        return [("e", v) for v in range(1, self.B.ell + 1)]

    def gens1(self):
        return ([("x", i) for i in range(1, self.B.nx + 1)]
                + [("y", j) for j in range(1, self.B.ny + 1)])

    def gens2(self):
        return ([("f", i) for i in range(1, self.B.m + 1)]
                + [("g", j) for j in range(1, self.B.n + 1)])

    def gen_source(self, gen):
        return gen[1]

    def gen_degree(self, gen):
        n, m = self.B.n, self.B.m
        return {"e": 0, "x": n, "y": m, "f": 2 * n + m, "g": n + 2 * m}[gen[0]]

    def gen_target(self, gen):
        return gen[1] + self.gen_degree(gen)

    def relation(self, gen):
        """The relation element as [(word, coefficient)], leading word first."""
        a, b = self.B.alpha, self.B.beta
        if gen[0] == "f":
            return [("xxy", Q(1)), ("xyx", -a), ("yxx", -b)]
        if gen[0] == "g":
            return [("xyy", Q(1)), ("yxy", -a), ("yyx", -b)]
        raise ValueError(f"not a relation generator: {gen}")

    # -- elements of the P^r ----------------------------------------------

    def gen_elem(self, gen):
        return {(gen, self.gen_source(gen), "", ""): Q(1)}

    def p_add(self, a, b):
        out = dict(a)
        for k, c in b.items():
            acc(out, k, c)
        return out

    def p_scale(self, a, c):
        c = Q(c)
        if not c:
            return {}
        return {k: c * v for k, v in a.items()}

    def lmul(self, alg_el, p_el):
        """Left action of an algebra element on a P^r element."""
        B = self.B
        out = {}
        for (s1, w1), c1 in alg_el.items():
            t1 = s1 + B.word_degree(w1)
            for (gen, ls, lw, rw), c2 in p_el.items():
                if ls != t1:
                    continue
                c12 = c1 * c2
                for w, c3 in B.normal_form(w1 + lw).items():
                    acc(out, (gen, s1, w, rw), c12 * c3)
        return out

    def rmul(self, p_el, alg_el):
        """Right action of an algebra element on a P^r element."""
        B = self.B
        out = {}
        for (gen, ls, lw, rw), c1 in p_el.items():
            t1 = self.gen_target(gen) + B.word_degree(rw)
            for (s2, w2), c2 in alg_el.items():
                if s2 != t1:
                    continue
                c12 = c1 * c2
                for w, c3 in B.normal_form(rw + w2).items():
                    acc(out, (gen, ls, lw, w), c12 * c3)
        return out

    # -- differentials and augmentation -----------------------------------

    def aug(self, p0_el):
        """The augmentation P0 -> B."""
        B = self.B
        out = {}
        for (gen, ls, lw, rw), c in p0_el.items():
            if gen[0] != "e":
                raise ValueError(f"not a P0 element: generator {gen}")
            for w, c2 in B.normal_form(lw + rw).items():
                acc(out, (ls, w), c * c2)
        return out

    def d1(self, a):
        """d1 on a P1 generator (an arrow)."""
        B = self.B
        av = B.path(a[1], a[0])
        lhs = self.rmul(self.gen_elem(("e", self.gen_source(a))), av)
        rhs = self.lmul(av, self.gen_elem(("e", self.gen_target(a))))
        return self.p_add(lhs, self.p_scale(rhs, -1))

    def d2(self, h):
        """d2 on a P2 generator (a relation)."""
        B = self.B
        src = self.gen_source(h)
        out = {}
        for word, c in self.relation(h):
            for p in range(len(word)):
                letter = word[p]
                v = src + B.word_degree(word[:p])
                term = self.gen_elem((letter, v))
                term = self.lmul(B.path(src, word[:p]), term)
                term = self.rmul(term, B.path(v + B.word_degree(letter), word[p + 1:]))
                for k, cv in term.items():
                    acc(out, k, c * cv)
        return out

    def apply_map(self, fun, p_el):
        """Extend a generator assignment gen -> element (of another P^r)
        over the bimodule structure:  L gen R  |->  L fun(gen) R."""
        out = {}
        for (gen, ls, lw, rw), c in p_el.items():
            val = fun(gen)
            if not val:
                continue
            term = self.lmul({(ls, lw): Q(1)}, val)
            term = self.rmul(term, {(self.gen_target(gen), rw): Q(1)})
            for k, cv in term.items():
                acc(out, k, c * cv)
        return out

    def apply_tau(self, tau, p_el):
        """Value of the functional tau = (gen, word) on a P^r element."""
        gen, w = tau
        B = self.B
        out = {}
        for (g2, ls, lw, rw), c in p_el.items():
            if g2 != gen:
                continue
            for w2, c2 in B.normal_form(lw + w + rw).items():
                acc(out, (ls, w2), c * c2)
        return out


def tau_label(tau):
    """ASCII name of a functional basis element, e.g. tau[f2]^yxx."""
    (kind, i), w = tau
    if kind == "e":
        return f"tau[e{i}]"
    return f"tau[{kind}{i}]^{w}"


class HomComplex:
    """The complex 0 -> P0^ -> P1^ -> P2^ -> 0 in the tau-functional bases."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.res = Resolution(inst)
        self.B = self.res.B
        self.basis0 = [(g, "") for g in self.res.gens0()]
        self.basis1 = self._tau1_basis()
        self.basis2 = self._tau2_basis()
        self.idx1 = {t: k for k, t in enumerate(self.basis1)}
        self.idx2 = {t: k for k, t in enumerate(self.basis2)}
        self.D1 = self._build_matrix(self.basis0, self.res.gens1(),
                                     self.basis1, self.idx1, self.res.d1)
        self.D2 = self._build_matrix(self.basis1, self.res.gens2(),
                                     self.basis2, self.idx2, self.res.d2)
        if not (self.D2 @ self.D1).is_zero():
            raise AssertionError("D2 * D1 != 0")

    # -- bases ------------------------------------------------------------

    def _enumerate_tau(self, gens):
        res = self.res
        out = []
        for g in gens:
            for w in self.B.hom_words(res.gen_source(g), res.gen_target(g)):
                out.append((g, w))
        return out

    def _tau1_basis(self):
        n, m = self.B.n, self.B.m
        xs = [(("x", i), "x") for i in range(1, self.B.nx + 1)]
        ys = [(("y", j), "y") for j in range(1, self.B.ny + 1)]
        if n >= 2:
            order = xs + ys
        elif m > 1:
            order = xs + ys + [(("y", j), "x" * m) for j in range(m + 2, 0, -1)]
        else:
            order = (xs + ys
                     + [(("y", j), "x") for j in (3, 2, 1)]
                     + [(("x", i), "y") for i in (1, 2, 3)])
        brute = self._enumerate_tau(self.res.gens1())
        if set(order) != set(brute) or len(order) != len(brute):
            raise AssertionError("tau basis of P1^ does not match enumeration")
        return order

    def _tau2_basis(self):
        n, m = self.B.n, self.B.m
        f = lambda i, w: (("f", i), w)
        g = lambda j, w: (("g", j), w)
        head = ([f(i, "yxx") for i in range(1, m + 1)]
                + [g(j, "yyx") for j in range(1, n + 1)]
                + [g(j, "yxy") for j in range(1, n + 1)]
                + [f(i, "xyx") for i in range(1, m + 1)])
        if n >= 3:
            tail = []
        elif n == 2:
            tail = [g(1, "x" * (m + 1)), g(2, "x" * (m + 1))]
        elif m >= 3:  # n = 1
            tail = ([f(i, "x" * (m + 2)) for i in range(m, 0, -1)]
                    + [g(1, "y" + "x" * (m + 1)), g(1, "xy" + "x" * m),
                       g(1, "x" * (2 * m + 1))])
        elif m == 2:  # n = 1
            tail = [f(2, "xxxx"), f(1, "xxxx"), g(1, "yxxx"), g(1, "xyxx"),
                    g(1, "xxxxx"), f(1, "yy"), f(2, "yy")]
        else:  # n = m = 1
            tail = [f(1, "xxx"), g(1, "yxx"), g(1, "xyx"), g(1, "xxx"),
                    g(1, "yyy"), f(1, "yyx"), f(1, "yxy"), f(1, "yyy")]
        order = head + tail
        brute = self._enumerate_tau(self.res.gens2())
        if set(order) != set(brute) or len(order) != len(brute):
            raise AssertionError("tau basis of P2^ does not match enumeration")
        return order

    # -- matrices ----------------------------------------------------------

    def _build_matrix(self, basis_lo, gens_hi, basis_hi, idx_hi, d_fun):
        res = self.res
        D = QMatrix.zeros(len(basis_hi), len(basis_lo))
        values = [(gen, d_fun(gen)) for gen in gens_hi]
        for col, tau in enumerate(basis_lo):
            for gen, val in values:
                out = res.apply_tau(tau, val)
                for (s, w), c in out.items():
                    D.rows[idx_hi[(gen, w)]][col] += c
        return D

    @property
    def dims(self):
        return (len(self.basis0), len(self.basis1), len(self.basis2))

    def L1(self):
        """Rows of the arrow-letter relation functionals against the arrow
        columns of D2: a 2(n+m) x 3(n+m) matrix."""
        n, m = self.B.n, self.B.m
        return self.D2.submatrix(list(range(2 * (n + m))), list(range(3 * (n + m))))

    def L2(self):
        """For n = 1: the x-power block of D2, an (m+2) x (m+2) matrix with
        rows tau[f_m..f_1]^{x^(m+2)}, tau[g_1]^{y x^(m+1)}, tau[g_1]^{x y x^m}
        and columns tau[y_(m+2)..y_1]^{x^m}."""
        n, m = self.B.n, self.B.m
        if n != 1:
            raise ValueError("the x-power block exists only for n = 1")
        rows = list(range(2 * (n + m), 2 * (n + m) + m + 2))
        cols = list(range(3 * (n + m), 3 * (n + m) + m + 2))
        return self.D2.submatrix(rows, cols)

    def L2_star(self):
        """For n = m = 1 only: the mirror block of D2 with rows
        tau[g1]^yyy, tau[f1]^yyx, tau[f1]^yxy and columns tau[x_1..x_3]^y."""
        if not (self.B.n == 1 and self.B.m == 1):
            raise ValueError("the mirror block exists only for n = m = 1")
        return self.D2.submatrix([8, 9, 10], [9, 10, 11])


# -- closed forms against which the matrices are tested ---------------------

def L2_display(inst: Instance) -> QMatrix:
    """The (m+2) x (m+2) x-power block in closed form (n = 1).

    Rows 1..m carry the band (1, -alpha, -beta); the two bottom rows carry
    lambda values.  For m = 1 the band and the lambda rows overlap and add.
    """
    m, a, b, lam = inst.m, inst.alpha, inst.beta, inst.lam
    M = QMatrix.zeros(m + 2, m + 2)
    for r in range(m):
        M.rows[r][r] += 1
        M.rows[r][r + 1] += -a
        M.rows[r][r + 2] += -b
    M.rows[m][0] += -lam(2)
    M.rows[m][1] += -b * lam(1)
    M.rows[m][m] += b * lam(m)
    M.rows[m][m + 1] += -b * lam(m + 1)
    M.rows[m + 1][0] += lam(1)
    M.rows[m + 1][1] += b * lam(0)
    M.rows[m + 1][m] += lam(m + 1)
    M.rows[m + 1][m + 1] += -lam(m + 2)
    return M


def rank_L1_closed_form(inst: Instance) -> int:
    from .core import Cond1, classify

    n, m = inst.n, inst.m
    return n + m - 1 if classify(inst)[0] == Cond1.CASE_I else n + m


def rank_L2_closed_form(inst: Instance) -> int:
    from .core import Cond2, classify

    c2 = classify(inst)[1]
    drop = {Cond2.CASE_1: 2, Cond2.CASE_2: 1, Cond2.CASE_3: 0}[c2]
    return inst.m + 2 - drop


def circulant(r: int, coeffs) -> QMatrix:
    """The r x r circulant whose row i holds t^i * f(t) modulo t^r - 1."""
    M = QMatrix.zeros(r, r)
    for i in range(r):
        for j, c in enumerate(coeffs):
            M.rows[i][(i + j) % r] += Q(c)
    return M


def circulant_rank(r: int, coeffs) -> int:
    """rank of circulant(r, f) = r - deg gcd(t^r - 1, f)."""
    from .linalg import QPoly, poly_gcd

    f = QPoly([Q(c) for c in coeffs])
    if f.is_zero():
        return 0
    return r - poly_gcd(QPoly.x_pow_minus_one(r), f).degree
