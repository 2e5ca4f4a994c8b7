"""Bound quiver model of the Beilinson algebra of a graded down-up algebra.

For weights deg x = n, deg y = m (gcd(n, m) = 1, m >= n >= 1) the Beilinson
algebra B of A(alpha, beta) is the quotient of the path algebra of the quiver
with vertices 1..ell, ell = 2(n + m), arrows

    x_i : i -> i + n   (1 <= i <= n + 2m),
    y_j : j -> j + m   (1 <= j <= 2n + m),

by the relations (paths written left to right, f_i starting at i <= m and
g_j starting at j <= n)

    f_i : x x y - alpha x y x - beta y x x,
    g_j : x y y - alpha y x y - beta y y x.

Because every arrow raises the vertex index by its degree, a path starting at
vertex v whose letters have total degree d ends at v + d and exists iff
v + d <= ell; a product of two existing composable paths always exists, so no
truncation happens during multiplication.  Rewriting the factors xxy and xyy
left to right strictly decreases the number of (x, y) inversions, hence
terminates, and the single overlap xxyy resolves to the same normal form both
ways (identically in alpha, beta), so the system is confluent and the words
y^a (xy)^b x^c form a basis of e_u B e_v, one for each solution of
a m + b(n + m) + c n = v - u.  Elements are stored as dicts mapping
(source vertex, normal word) to Fraction coefficients.
"""

from fractions import Fraction as Q

from .core import Instance

XXY = "xxy"
XYY = "xyy"


def acc(out, key, c):
    """out[key] += c, dropping zeros."""
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    elif key in out:
        del out[key]


class Beilinson:
    """The bound quiver algebra, with rewriting to the y^a (xy)^b x^c basis."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.n = inst.n
        self.m = inst.m
        self.alpha = inst.alpha
        self.beta = inst.beta
        self.ell = inst.ell
        self.nx = inst.n + 2 * inst.m  # arrows x_1 .. x_nx
        self.ny = 2 * inst.n + inst.m  # arrows y_1 .. y_ny
        self._nf = {}

    # -- words ------------------------------------------------------------

    def word_degree(self, w):
        return self.n * w.count("x") + self.m * w.count("y")

    def is_valid(self, src, w):
        return 1 <= src <= self.ell and src + self.word_degree(w) <= self.ell

    def redex_positions(self, w):
        return [i for i in range(len(w) - 2) if w[i:i + 3] in (XXY, XYY)]

    def rewrite_at(self, w, i):
        """One rewriting step at position i; returns {word: coeff}."""
        red = w[i:i + 3]
        if red == XXY:
            terms = (("xyx", self.alpha), ("yxx", self.beta))
        elif red == XYY:
            terms = (("yxy", self.alpha), ("yyx", self.beta))
        else:
            raise ValueError(f"no relation factor at position {i} of {w!r}")
        return {w[:i] + rep + w[i + 3:]: c for rep, c in terms}

    def normal_form(self, w):
        """Rewrite w (leftmost redex first) into normal words, memoized.

        The result {normal word: coeff} does not depend on the source vertex:
        the relations look the same from every vertex where they exist, and a
        factor xxy or xyy inside an existing path always starts at a vertex
        v <= m resp. v <= n, so its relation does exist.
        """
        cached = self._nf.get(w)
        if cached is not None:
            return cached
        px = w.find(XXY)
        py = w.find(XYY)
        i = min(p for p in (px, py) if p >= 0) if (px >= 0 or py >= 0) else -1
        if i < 0:
            out = {w: Q(1)}
        else:
            out = {}
            for w1, c1 in self.rewrite_at(w, i).items():
                for w2, c2 in self.normal_form(w1).items():
                    acc(out, w2, c1 * c2)
        self._nf[w] = out
        return out

    # -- elements ---------------------------------------------------------

    def zero(self):
        return {}

    def e(self, v):
        """Trivial path at vertex v."""
        if not 1 <= v <= self.ell:
            raise ValueError(f"vertex {v} out of range 1..{self.ell}")
        return {(v, ""): Q(1)}

    def path(self, src, word):
        """The class of the path with letters `word` starting at src (0 if it
        does not exist)."""
        if not self.is_valid(src, word):
            return {}
        out = {}
        for w, c in self.normal_form(word).items():
            acc(out, (src, w), c)
        return out

    def arrow(self, letter, i):
        """The arrow x_i or y_i as an element."""
        count = self.nx if letter == "x" else self.ny
        if not 1 <= i <= count:
            raise ValueError(f"{letter}_{i} is not an arrow")
        return self.path(i, letter)

    def add(self, a, b):
        out = dict(a)
        for k, c in b.items():
            acc(out, k, c)
        return out

    def scale(self, a, c):
        c = Q(c)
        if not c:
            return {}
        return {k: c * v for k, v in a.items()}

    def mul(self, a, b):
        """Product in the path algebra quotient; non-composable pairs give 0."""
        out = {}
        for (s1, w1), c1 in a.items():
            t1 = s1 + self.word_degree(w1)
            for (s2, w2), c2 in b.items():
                if s2 != t1:
                    continue
                c12 = c1 * c2
                for w3, c3 in self.normal_form(w1 + w2).items():
                    acc(out, (s1, w3), c12 * c3)
        return out

    # -- graded structure -------------------------------------------------

    def normal_triples(self, d):
        """Exponent triples (a, b, c) with a*m + b*(n+m) + c*n = d, most
        y-heavy first."""
        if d < 0:
            return []
        n, m = self.n, self.m
        out = []
        for a in range(d // m, -1, -1):
            r1 = d - a * m
            for b in range(r1 // (n + m), -1, -1):
                r2 = r1 - b * (n + m)
                if r2 % n == 0:
                    out.append((a, b, r2 // n))
        return out

    def triple_word(self, a, b, c):
        return "y" * a + "xy" * b + "x" * c

    def graded_dim(self, d):
        """dim of the degree-d component of e_u B e_{u+d} (independent of u)."""
        return len(self.normal_triples(d))

    def hom_words(self, u, v):
        """Normal words spanning e_u B e_v, in a fixed order."""
        if not (1 <= u <= self.ell and 1 <= v <= self.ell and u <= v):
            return []
        return [self.triple_word(a, b, c) for a, b, c in self.normal_triples(v - u)]

    def dimension(self):
        return sum(self.graded_dim(v - u)
                   for u in range(1, self.ell + 1) for v in range(u, self.ell + 1))

    def cartan_matrix(self):
        """C[u][v] = dim e_{u+1} B e_{v+1} (0-indexed); upper unitriangular."""
        from .linalg import QMatrix

        C = QMatrix.zeros(self.ell, self.ell)
        for u in range(self.ell):
            for v in range(self.ell):
                if v >= u:
                    C.rows[u][v] = Q(self.graded_dim(v - u))
        return C
