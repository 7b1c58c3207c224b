"""Exact integer and polynomial linear algebra kernels.

Everything in this module is exact: arbitrary-precision integers,
rationals, integer polynomials and Laurent polynomials.  No floating
point enters any computation; numpy is used only for word-size modular
arithmetic inside the CRT characteristic-polynomial kernel, where every
intermediate provably fits in int64.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "gen_binom",
    "IntMatrix",
    "IntPoly",
    "NotIntegral",
    "LaurentPoly",
    "det_exact",
    "det_fraction",
    "det_ring",
    "rank_exact",
    "smith_normal_form",
    "char_poly",
    "char_poly_interpolate",
    "integer_spectrum",
    "poly_eval",
]


def gen_binom(a: int, b: int) -> int:
    """Binomial coefficient extended to all integer arguments.

    For b >= 0 this is prod_{i<b}(a - i) / b!, which is an integer for
    every integer a (negative upper arguments included).  For b < 0 the
    value is 1 if a == b and 0 otherwise; this boundary convention keeps
    Pascal's rule valid wherever the recursion below needs it, e.g.
    gen_binom(-1, 0) == gen_binom(-1, -1) == 1.
    """
    if b < 0:
        return 1 if a == b else 0
    num = 1
    for i in range(b):
        num *= a - i
    return num // math.factorial(b)


# ---------------------------------------------------------------------------
# matrices


class IntMatrix:
    """Immutable dense integer matrix with optional row/column labels.

    Entries are plain Python ints, so nothing ever overflows.  Zero-row
    and zero-column shapes are allowed (pass ncols for an empty row
    list).  Labels, when present, name the cells indexing each side.
    """

    __slots__ = ("rows", "nrows", "ncols", "row_labels", "col_labels")

    def __init__(self, rows, row_labels=None, col_labels=None, ncols: int | None = None):
        rs = tuple(tuple(int(x) for x in row) for row in rows)
        self.rows = rs
        self.nrows = len(rs)
        if rs:
            widths = {len(r) for r in rs}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            w = widths.pop()
            if ncols is not None and ncols != w:
                raise ValueError("ncols disagrees with row width")
            self.ncols = w
        else:
            self.ncols = 0 if ncols is None else int(ncols)
        for labels, n, side in ((row_labels, self.nrows, "row"), (col_labels, self.ncols, "col")):
            if labels is not None and len(labels) != n:
                raise ValueError(f"{side} label count mismatch")
        self.row_labels = tuple(row_labels) if row_labels is not None else None
        self.col_labels = tuple(col_labels) if col_labels is not None else None

    # -- constructors

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    # -- basic queries

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def column(self, j: int):
        return tuple(r[j] for r in self.rows)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def is_symmetric(self) -> bool:
        if self.nrows != self.ncols:
            return False
        r = self.rows
        return all(r[i][j] == r[j][i] for i in range(self.nrows) for j in range(i))

    def is_zero(self) -> bool:
        return all(not any(r) for r in self.rows)

    def max_abs(self) -> int:
        m = 0
        for r in self.rows:
            for v in r:
                av = -v if v < 0 else v
                if av > m:
                    m = av
        return m

    # -- algebra

    def transpose(self) -> "IntMatrix":
        t = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return IntMatrix(t, row_labels=self.col_labels, col_labels=self.row_labels, ncols=self.nrows)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        n, k, m = self.nrows, self.ncols, other.ncols
        if n == 0 or m == 0 or k == 0:
            return IntMatrix.zeros(n, m)
        # int64 fast path; the bound guarantees no overflow is possible
        ma, mb = self.max_abs(), other.max_abs()
        if ma and mb and k * ma * mb < 2**62:
            a = np.array(self.rows, dtype=np.int64)
            b = np.array(other.rows, dtype=np.int64)
            c = a @ b
            return IntMatrix(c.tolist(), row_labels=self.row_labels, col_labels=other.col_labels)
        bt = other.transpose().rows
        out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in self.rows]
        return IntMatrix(out, row_labels=self.row_labels, col_labels=other.col_labels, ncols=m)

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * v for v in r] for r in self.rows],
                         self.row_labels, self.col_labels, ncols=self.ncols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                         ncols=self.ncols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                         ncols=self.ncols)

    def submatrix(self, row_idx, col_idx) -> "IntMatrix":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        rows = [[self.rows[i][j] for j in col_idx] for i in row_idx]
        rl = [self.row_labels[i] for i in row_idx] if self.row_labels else None
        cl = [self.col_labels[j] for j in col_idx] if self.col_labels else None
        return IntMatrix(rows, rl, cl, ncols=len(col_idx))

    def columns_subset(self, col_idx) -> "IntMatrix":
        return self.submatrix(range(self.nrows), col_idx)

    def delete_rows_cols(self, idx) -> "IntMatrix":
        """Principal submatrix with the given rows and columns removed."""
        drop = set(idx)
        keep = [i for i in range(self.nrows) if i not in drop]
        return self.submatrix(keep, keep)

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols})"


def det_exact(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination.  Exact."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (pkk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = pkk
    return sign * a[n - 1][n - 1]


def rank_exact(m: IntMatrix) -> int:
    """Rank over Q via integer row echelon with gcd normalization."""
    rows = [list(r) for r in m.rows if any(r)]
    ncols = m.ncols
    rank = 0
    top = 0
    for c in range(ncols):
        piv = None
        for i in range(top, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        pv = rows[top][c]
        for i in range(top + 1, len(rows)):
            f = rows[i][c]
            if f:
                g = math.gcd(pv, f)
                m1, m2 = pv // g, f // g
                ri, rt = rows[i], rows[top]
                for j in range(c, ncols):
                    ri[j] = m1 * ri[j] - m2 * rt[j]
                gg = 0
                for v in ri:
                    gg = math.gcd(gg, v)
                if gg > 1:
                    for j in range(c, ncols):
                        ri[j] //= gg
        top += 1
        rank += 1
        if top == len(rows):
            break
    return rank


def smith_normal_form(m: IntMatrix) -> tuple[int, ...]:
    """Positive invariant factors d_1 | d_2 | ... of an integer matrix.

    Gcd-pivot reduction: repeatedly move a smallest nonzero entry of the
    trailing submatrix to the pivot, clear its row and column by exact
    quotient steps, and restore the divisibility chain by folding any
    offending entry back into the pivot row.
    """
    a = [list(r) for r in m.rows]
    nr, nc = len(a), m.ncols
    factors = []
    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry of the trailing block
        best = None
        pos = None
        for i in range(t, nr):
            ri = a[i]
            for j in range(t, nc):
                v = ri[j]
                if v:
                    av = -v if v < 0 else v
                    if best is None or av < best:
                        best, pos = av, (i, j)
                        if av == 1:
                            break
            if best == 1:
                break
        if pos is None:
            break
        i0, j0 = pos
        a[t], a[i0] = a[i0], a[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
        while True:
            if a[t][t] < 0:
                a[t] = [-v for v in a[t]]
            p = a[t][t]
            moved = False
            for i in range(t + 1, nr):
                v = a[i][t]
                if v:
                    q = v // p
                    if q:
                        ai, at = a[i], a[t]
                        for j in range(t, nc):
                            ai[j] -= q * at[j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        moved = True
            if moved:
                continue
            for j in range(t + 1, nc):
                v = a[t][j]
                if v:
                    q = v // a[t][t]
                    if q:
                        for i in range(t, nr):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        moved = True
            if moved:
                continue
            if any(a[i][t] for i in range(t + 1, nr)):
                continue
            # divisibility repair: every entry below-right must be a
            # multiple of the pivot before we freeze it
            p = a[t][t]
            bad = None
            for i in range(t + 1, nr):
                ai = a[i]
                for j in range(t + 1, nc):
                    if ai[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            at, ab = a[t], a[bad]
            for j in range(t, nc):
                at[j] += ab[j]
        factors.append(a[t][t])
        t += 1
    return tuple(factors)


# ---------------------------------------------------------------------------
# univariate integer polynomials


class IntPoly:
    """Dense univariate polynomial over Z, coefficients ascending in y."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, pairs) -> "IntPoly":
        """Monic polynomial with the given (root, multiplicity) pairs."""
        out = [1]
        for root, mult in pairs:
            for _ in range(mult):
                nxt = [0] * (len(out) + 1)
                for i, c in enumerate(out):
                    nxt[i + 1] += c
                    nxt[i] -= c * root
                out = nxt
        return cls(out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (0 for the zero poly)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def strip_valuation(self) -> "IntPoly":
        v = self.valuation()
        return IntPoly(self.coeffs[v:]) if v else self

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def shift(self, k: int) -> "IntPoly":
        return IntPoly((0,) * k + self.coeffs)

    def compose_shift(self, c: int) -> "IntPoly":
        """Taylor shift: the polynomial p(y + c)."""
        if not self.coeffs:
            return self
        res = [self.coeffs[-1]]
        for k in range(len(self.coeffs) - 2, -1, -1):
            nxt = [0] * (len(res) + 1)
            for j, v in enumerate(res):
                nxt[j + 1] += v
                nxt[j] += c * v
            nxt[0] += self.coeffs[k]
            res = nxt
        return IntPoly(res)

    def divide_linear(self, r: int):
        """Synthetic division by (y - r); returns (quotient, remainder)."""
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * r + c
            out.append(acc)
        rem = out.pop() if out else 0
        out.reverse()
        return IntPoly(out), rem

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            term = "y" if i == 1 else (f"y^{i}" if i else "")
            if i and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c)
                if i:
                    coef += "*"
            parts.append(coef + term if term else str(c))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


class NotIntegral:
    """Marker result: a Laplacian whose spectrum is not a set of integers.

    Carries the exact characteristic polynomial as the certificate.
    """

    __slots__ = ("charpoly",)

    def __init__(self, charpoly: IntPoly):
        self.charpoly = charpoly

    def __repr__(self):
        return f"NotIntegral({self.charpoly})"

    def __eq__(self, other):
        return isinstance(other, NotIntegral) and self.charpoly == other.charpoly


# ---------------------------------------------------------------------------
# characteristic polynomial (exact, CRT over word-size primes)

_PRIMES: list[int] = []


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):  # deterministic below 3.2e9
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime(i: int) -> int:
    """i-th member of a fixed descending list of 27-bit primes."""
    cand = _PRIMES[-1] - 2 if _PRIMES else 134217689
    while len(_PRIMES) <= i:
        while not _is_prime(cand):
            cand -= 2
        _PRIMES.append(cand)
        cand -= 2
    return _PRIMES[i]


def _charpoly_mod(rows, n: int, p: int, pre=None) -> list[int]:
    """char poly of an n x n integer matrix mod p (Hessenberg method)."""
    if pre is not None:
        h = pre % p
    else:
        h = np.array([[e % p for e in r] for r in rows], dtype=np.int64)
    # similarity reduction to upper Hessenberg form
    for k in range(n - 2):
        col = h[k + 1:, k]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        r = k + 1 + int(nz[0])
        if r != k + 1:
            h[[k + 1, r]] = h[[r, k + 1]]
            h[:, [k + 1, r]] = h[:, [r, k + 1]]
        inv = pow(int(h[k + 1, k]), p - 2, p)
        f = (h[k + 2:, k] * inv) % p
        if f.any():
            h[k + 2:, k:] = (h[k + 2:, k:] - f[:, None] * h[k + 1, k:]) % p
            h[:, k + 1] = (h[:, k + 1] + h[:, k + 2:] @ f) % p
    # p_m(y) = (y - h[m-1,m-1]) p_{m-1} - sum_i h[i-1,m-1] (prod subdiag) p_{i-1}
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    for m in range(1, n + 1):
        pm = np.zeros(n + 1, dtype=np.int64)
        pm[1:m + 1] = P[m - 1, 0:m]
        pm[0:m] = (pm[0:m] - int(h[m - 1, m - 1]) * P[m - 1, 0:m]) % p
        if m >= 2:
            beta = np.ones(m - 1, dtype=np.int64)
            acc = 1
            for i in range(m - 1, 0, -1):
                acc = (acc * int(h[i, i - 1])) % p
                beta[i - 1] = acc
            coef = (h[0:m - 1, m - 1] * beta) % p
            if coef.any():
                corr = (coef @ P[0:m - 1, 0:m + 1]) % p
                pm[0:m + 1] = (pm[0:m + 1] - corr) % p
        P[m] = pm
    return [int(v) for v in P[n]]


def char_poly(m: IntMatrix) -> IntPoly:
    """det(yI - m), computed exactly.

    Runs the Hessenberg algorithm modulo enough fixed word-size primes
    and recombines by CRT; the prime budget is driven by the rigorous
    bound |c_{n-k}| <= C(n,k) R^k with R the largest absolute row sum
    (every eigenvalue lies in a Gershgorin disc of radius <= R).
    """
    if m.nrows != m.ncols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    if n == 0:
        return IntPoly([1])
    rows = m.rows
    R = max((sum(abs(v) for v in r) for r in rows), default=0)
    if R == 0:
        return IntPoly([0] * n + [1])
    bound = 1
    for k in range(n + 1):
        b = gen_binom(n, k) * R**k
        if b > bound:
            bound = b
    target = 2 * bound + 1
    pre = None
    if m.max_abs() < 2**31:
        pre = np.array(rows, dtype=np.int64)
    residues = []
    primes = []
    acc = 1
    i = 0
    while acc <= target:
        p = _prime(i)
        i += 1
        residues.append(_charpoly_mod(rows, n, p, pre=pre))
        primes.append(p)
        acc *= p
    # CRT with symmetric lift
    coeffs = []
    for k in range(n + 1):
        x, mod = 0, 1
        for res, p in zip(residues, primes):
            r = res[k]
            t = (r - x) * pow(mod, -1, p) % p
            x += mod * t
            mod *= p
        if x > mod // 2:
            x -= mod
        coeffs.append(x)
    return IntPoly(coeffs)


def char_poly_interpolate(m: IntMatrix) -> IntPoly:
    """det(yI - m) by exact determinants at side+1 points plus Lagrange.

    Slower than char_poly on large sides; kept as the independent
    cross-check route (the two must agree bit for bit).
    """
    if m.nrows != m.ncols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    if n == 0:
        return IntPoly([1])
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        shifted = IntMatrix([[x * (1 if i == j else 0) - m.rows[i][j] for j in range(n)]
                             for i in range(n)])
        ys.append(det_exact(shifted))
    # Newton's divided differences over Q, then expand
    coefs = [Fraction(y) for y in ys]
    for j in range(1, n + 1):
        for i in range(n, j - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * (n + 1)
    basis = [Fraction(1)]  # prod (y - x_i), expanded
    for i in range(n + 1):
        for d, b in enumerate(basis):
            poly[d] += coefs[i] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for d, b in enumerate(basis):
            nxt[d + 1] += b
            nxt[d] -= b * xs[i]
        basis = nxt
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolation produced a non-integer coefficient")
        out.append(c.numerator)
    return IntPoly(out)


def integer_spectrum(m: IntMatrix):
    """Eigenvalue multiset of a symmetric PSD integer matrix.

    Returns {eigenvalue: multiplicity} when every eigenvalue is a
    nonnegative integer, or NotIntegral carrying the exact
    characteristic polynomial otherwise.  Candidate roots are scanned
    over [0, trace] (every PSD eigenvalue is bounded by the trace);
    the scan also stops at the Gershgorin radius, whichever is smaller.
    """
    if m.nrows != m.ncols:
        raise ValueError("spectrum of a non-square matrix")
    if not m.is_symmetric():
        raise ValueError("matrix is not symmetric")
    n = m.nrows
    if n == 0:
        return {}
    if m.is_zero():
        return {0: n}
    chi = char_poly(m)
    eigs: dict[int, int] = {}
    v = chi.valuation()
    if v:
        eigs[0] = v
    rem = IntPoly(chi.coeffs[v:])
    trace = m.trace()
    gersh = max((sum(abs(x) for x in r) for r in m.rows), default=0)
    bound = min(trace, gersh)
    lam = 1
    while rem.degree > 0 and lam <= bound:
        while True:
            q, r = rem.divide_linear(lam)
            if r == 0:
                eigs[lam] = eigs.get(lam, 0) + 1
                rem = q
                if rem.degree == 0:
                    break
            else:
                break
        lam += 1
    if rem.degree > 0:
        return NotIntegral(chi)
    return eigs


# ---------------------------------------------------------------------------
# ring-generic determinant (for polynomial matrices)


def det_ring(rows):
    """Determinant of a small matrix over a commutative ring.

    Division-free column expansion with subset memoization; entries may
    be ints, Fractions or LaurentPoly.  Meant for the polynomial
    Laplacian minors, which stay small.
    """
    n = len(rows)
    if n == 0:
        return 1
    if n > 20:
        raise ValueError("det_ring is for small matrices only")
    if any(len(r) != n for r in rows):
        raise ValueError("non-square matrix")
    # f[mask] = det of (rows in mask) x (first popcount(mask) columns)
    f = {0: 1}
    for mask in sorted(range(1, 1 << n), key=lambda x: x.bit_count()):
        j = mask.bit_count() - 1  # expand along column j
        acc = None
        idx = 0
        rest = mask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            sub = f.get(mask ^ low)
            if sub is not None:
                term = rows[i][j] * sub if (idx + j) % 2 == 0 else -(rows[i][j] * sub)
                acc = term if acc is None else acc + term
            rest ^= low
            idx += 1
        f[mask] = acc
    return f[(1 << n) - 1]


def det_fraction(rows) -> Fraction:
    """Determinant over Q by ordinary Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(v) for v in r] for r in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                ai, ak = a[i], a[k]
                for j in range(k + 1, n):
                    ai[j] -= f * ak[j]
    return det


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with integer coefficients.

    Terms map exponent tuples (one slot per variable, negative allowed)
    to nonzero integer coefficients.  All operands of an arithmetic
    operation must share the same variable tuple.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        cleaned = {}
        if terms:
            width = len(self.vars)
            for exp, coef in terms.items():
                c = int(coef)
                if not c:
                    continue
                e = tuple(int(x) for x in exp)
                if len(e) != width:
                    raise ValueError("exponent arity mismatch")
                cleaned[e] = c
        self.terms = cleaned

    # -- constructors

    @classmethod
    def constant(cls, vars, c: int) -> "LaurentPoly":
        z = (0,) * len(tuple(vars))
        return cls(vars, {z: c} if c else {})

    @classmethod
    def variable(cls, vars, name: str, power: int = 1) -> "LaurentPoly":
        vs = tuple(vars)
        e = [0] * len(vs)
        e[vs.index(name)] = power
        return cls(vs, {tuple(e): 1})

    @classmethod
    def monomial(cls, vars, powers: dict, coef: int = 1) -> "LaurentPoly":
        vs = tuple(vars)
        e = [0] * len(vs)
        for name, p in powers.items():
            e[vs.index(name)] += p
        return cls(vs, {tuple(e): coef})

    # -- structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.constant(self.vars, other)
        return (isinstance(other, LaurentPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items())

    # -- arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise ValueError("mixed variable tables")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.vars = self.vars
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.vars = self.vars
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly(self.vars)
            r = LaurentPoly.__new__(LaurentPoly)
            r.vars = self.vars
            r.terms = {e: c * other for e, c in self.terms.items()}
            return r
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out: dict = {}
        if len(self.terms) < len(o.terms):
            a, b = self.terms, o.terms
        else:
            a, b = o.terms, self.terms
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.vars = self.vars
        r.terms = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of a general Laurent polynomial")
        result = LaurentPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- evaluation / display

    def subs(self, assignment: dict):
        """Evaluate at rational values; exact Fractions throughout."""
        total = Fraction(0)
        vals = [assignment[v] for v in self.vars]
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, p in zip(vals, e):
                if p:
                    fv = Fraction(v)
                    if fv == 0 and p < 0:
                        raise ZeroDivisionError("zero assigned to a variable with negative exponent")
                    term *= fv**p
            total += term
        return total

    def subs_ones(self) -> int:
        return sum(self.terms.values())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, p in zip(self.vars, e):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "LaurentPoly":
        return cls(tuple(d["vars"]),
                   {tuple(t["exp"]): int(t["coef"]) for t in d["terms"]})


def poly_eval(p: LaurentPoly, assignment: dict):
    """Evaluate a Laurent polynomial at rational values, exactly."""
    return p.subs(assignment)
