"""Cubical complexes: order ideals in the face poset of a cube.

Faces are strings over {0,1,*} indexed by a sorted universe of
directions; position j of a face string refers to direction
universe[j].  A star marks a free coordinate, so the dimension of a
face is its star count.  Cell order everywhere is lexicographic with
0 < 1 < * (the rank of each character, not its ASCII code).
"""

from __future__ import annotations

import itertools
from bisect import insort

from .chain import ChainComplex
from .exact import IntMatrix, IntPoly, LaurentPoly, gen_binom

_RANK = {"0": 0, "1": 1, "*": 2}


def face_key(f: str):
    return tuple(_RANK[c] for c in f)


def face_dim(f: str) -> int:
    return f.count("*")


def closure_of(faces) -> frozenset:
    """Downward closure: every * may be pinned to 0 or to 1."""
    seen = set()
    stack = list(faces)
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        for j, c in enumerate(f):
            if c == "*":
                stack.append(f[:j] + "0" + f[j + 1:])
                stack.append(f[:j] + "1" + f[j + 1:])
    return frozenset(seen)


def sign(f: str, g: str) -> int:
    """Relative orientation of a codimension-1 face pair.

    Zero when f is not a face of g.  Otherwise f pins exactly one star
    of g; if that star is the j-th star of g (1-based, left to right),
    the sign is (-1)^j for a 0 and (-1)^(j+1) for a 1.
    """
    if len(f) != len(g) or face_dim(g) != face_dim(f) + 1:
        raise ValueError("sign needs faces one dimension apart")
    j = 0
    pinned = None
    for cf, cg in zip(f, g):
        if cg == "*":
            j += 1
            if cf != "*":
                if pinned is not None:
                    return 0
                pinned = (j, cf)
        elif cf != cg:
            return 0
    if pinned is None:
        return 0
    j, c = pinned
    s = -1 if j % 2 else 1
    return s if c == "0" else -s


class CubicalComplex:
    """Immutable set of cube faces closed under pinning stars."""

    def __init__(self, universe, faces, closed: bool = False):
        u = tuple(sorted(set(int(d) for d in universe)))
        if any(d <= 0 for d in u):
            raise ValueError("directions are positive integers")
        self.universe = u
        fs = set()
        for f in faces:
            f = str(f)
            if len(f) != len(u) or any(c not in _RANK for c in f):
                raise ValueError(f"malformed face {f!r} for universe {u}")
            fs.add(f)
        self.faces = frozenset(fs) if closed else closure_of(fs)
        self._by_dim: dict = {}
        self._chain = None

    def __eq__(self, other):
        return (isinstance(other, CubicalComplex)
                and self.universe == other.universe and self.faces == other.faces)

    def __hash__(self):
        return hash((self.universe, self.faces))

    def __contains__(self, f):
        return f in self.faces

    def __len__(self):
        return len(self.faces)

    @property
    def dim(self) -> int:
        return max((face_dim(f) for f in self.faces), default=-1)

    def faces_of_dim(self, i: int) -> tuple:
        if i not in self._by_dim:
            self._by_dim[i] = tuple(sorted((f for f in self.faces if face_dim(f) == i),
                                           key=face_key))
        return self._by_dim[i]

    def n_faces(self, i: int) -> int:
        return len(self.faces_of_dim(i))

    def dirset(self, f: str) -> tuple:
        return tuple(self.universe[j] for j, c in enumerate(f) if c == "*")

    def dirsets(self) -> set:
        return {self.dirset(f) for f in self.faces}

    def is_pure(self) -> bool:
        if not self.faces:
            return True
        top = self.faces_of_dim(self.dim)
        return closure_of(top) == self.faces

    def facets(self) -> tuple:
        """Maximal faces, sorted by dimension then cell order."""
        non_max = set()
        for g in self.faces:
            for j, c in enumerate(g):
                if c == "*":
                    non_max.add(g[:j] + "0" + g[j + 1:])
                    non_max.add(g[:j] + "1" + g[j + 1:])
        out = [f for f in self.faces if f not in non_max]
        return tuple(sorted(out, key=lambda f: (face_dim(f), face_key(f))))

    # -- chain complex

    def to_chain(self) -> ChainComplex:
        if self._chain is None:
            cells = {}
            for i in range(self.dim + 1):
                fs = self.faces_of_dim(i)
                if fs:
                    cells[i] = fs
            bnd = {}
            for i in range(1, self.dim + 1):
                rows_idx = {f: r for r, f in enumerate(self.faces_of_dim(i - 1))}
                cols = self.faces_of_dim(i)
                rows = [[0] * len(cols) for _ in rows_idx]
                for ci, g in enumerate(cols):
                    j = 0
                    for pos, c in enumerate(g):
                        if c == "*":
                            j += 1
                            s = -1 if j % 2 else 1
                            rows[rows_idx[g[:pos] + "0" + g[pos + 1:]]][ci] = s
                            rows[rows_idx[g[:pos] + "1" + g[pos + 1:]]][ci] = -s
                bnd[i] = IntMatrix(rows, ncols=len(cols))
            self._chain = ChainComplex(cells, bnd, check=False)
        return self._chain

    # -- constructions in one direction

    def _pos(self, i: int) -> int:
        try:
            return self.universe.index(i)
        except ValueError:
            raise ValueError(f"direction {i} not in universe {self.universe}") from None

    def deletion(self, i: int) -> "CubicalComplex":
        p = self._pos(i)
        u = self.universe[:p] + self.universe[p + 1:]
        fs = {f[:p] + f[p + 1:] for f in self.faces if f[p] != "*"}
        return CubicalComplex(u, fs, closed=True)

    def link(self, i: int) -> "CubicalComplex":
        p = self._pos(i)
        u = self.universe[:p] + self.universe[p + 1:]
        fs = {f[:p] + f[p + 1:] for f in self.faces if f[p] == "*"}
        return CubicalComplex(u, fs, closed=True)

    def prism(self, i: int) -> "CubicalComplex":
        if i in self.universe:
            raise ValueError(f"direction {i} already in universe {self.universe}")
        u = list(self.universe)
        insort(u, i)
        p = u.index(i)
        fs = {f[:p] + c + f[p:] for f in self.faces for c in "01*"}
        return CubicalComplex(u, fs, closed=True)

    def is_prism_in_direction(self, i: int) -> bool:
        # a near-prism degenerates to a prism exactly when nothing is
        # lost passing from the deletion to the link
        return self.deletion(i).faces == self.link(i).faces

    def near_prism(self, i: int) -> "NearPrism":
        dele = self.deletion(i)
        link = self.link(i)
        p = self._pos(i)
        cond1 = True
        for f in dele.faces:
            for j, c in enumerate(f):
                if c == "*":
                    if (f[:j] + "0" + f[j + 1:]) not in link.faces \
                            or (f[:j] + "1" + f[j + 1:]) not in link.faces:
                        cond1 = False
                        break
            if not cond1:
                break
        cond2 = all(f[:p] + "0" + f[p:] in self.faces and f[:p] + "1" + f[p:] in self.faces
                    for f in dele.faces)
        b = tuple(sorted(dele.faces - link.faces, key=lambda f: (face_dim(f), face_key(f))))
        return NearPrism(i, cond1 and cond2, dele, link, b)

    # -- global predicates

    def is_shifted(self) -> bool:
        n = len(self.universe)
        # (1) every vertex and every edge of the ambient cube
        for v in itertools.product("01", repeat=n):
            if "".join(v) not in self.faces:
                return False
        for p in range(n):
            for rest in itertools.product("01", repeat=n - 1):
                e = "".join(rest[:p]) + "*" + "".join(rest[p:])
                if e not in self.faces:
                    return False
        # (2) membership depends only on the direction set
        ds = self.dirsets()
        for s in ds:
            stars = set(s)
            free = [d for d in self.universe if d not in stars]
            if any(self._face_from(s, dict(zip(free, bits))) not in self.faces
                   for bits in itertools.product("01", repeat=len(free))):
                return False
        # (3) direction sets form an ideal in componentwise order
        for s in ds:
            k = len(s)
            if k == 0:
                continue
            for t in itertools.combinations(self.universe, k):
                if all(a <= b for a, b in zip(t, s)) and t not in ds:
                    return False
        return True

    def _face_from(self, stars, pinned: dict) -> str:
        stars = set(stars)
        return "".join("*" if d in stars else pinned[d] for d in self.universe)

    def pure_skeleton(self, j: int) -> "CubicalComplex":
        return CubicalComplex(self.universe, closure_of(self.faces_of_dim(j)), closed=True)

    def boundary_complex(self) -> "CubicalComplex":
        """All non-maximal faces."""
        non_max = set()
        for g in self.faces:
            for j, c in enumerate(g):
                if c == "*":
                    non_max.add(g[:j] + "0" + g[j + 1:])
                    non_max.add(g[:j] + "1" + g[j + 1:])
        return CubicalComplex(self.universe, non_max & self.faces, closed=True)

    # -- serialization

    def to_json_dict(self) -> dict:
        fs = sorted(self.faces, key=lambda f: (face_dim(f), face_key(f)))
        return {"universe": list(self.universe), "faces": fs}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CubicalComplex":
        return cls(tuple(data["universe"]), data.get("faces", ()))

    def __repr__(self):
        counts = ",".join(str(self.n_faces(i)) for i in range(self.dim + 1))
        return f"CubicalComplex(universe={self.universe}, counts=({counts}))"


class NearPrism:
    """Decomposition certificate for the near-prism test in one direction."""

    __slots__ = ("direction", "holds", "deletion", "link", "b_faces")

    def __init__(self, direction, holds, deletion, link, b_faces):
        self.direction = direction
        self.holds = holds
        self.deletion = deletion
        self.link = link
        self.b_faces = b_faces

    def __bool__(self):
        return self.holds

    def __repr__(self):
        return f"NearPrism(dir={self.direction}, holds={self.holds}, |B|={len(self.b_faces)})"


def cube(n: int, cap: int = 6) -> CubicalComplex:
    if n < 0:
        raise ValueError("cube dimension must be nonnegative")
    if n > cap:
        raise ValueError(f"cube({n}) exceeds cap {cap}")
    u = tuple(range(1, n + 1))
    return CubicalComplex(u, closure_of({"*" * n}), closed=True)


def is_near_prism(x: CubicalComplex, i: int) -> NearPrism:
    """Truthy exactly when x decomposes as two copies of its deletion
    glued to the prism over its link in direction i."""
    return x.near_prism(i)


def prism_tot_identity_holds(x: CubicalComplex) -> bool:
    """Characteristic-polynomial form of the prism spectrum rule: in
    each dimension i the total Laplacian of the prism has the spectrum
    of dimension i, plus two shifted copies from dimensions i and i-1.
    Exact at full polynomial level, no integrality needed."""
    d = max(x.universe, default=0) + 1
    px = x.prism(d)
    cx, cp = x.to_chain(), px.to_chain()
    one = IntPoly((1,))
    for i in range(px.dim + 1):
        lhs = cp.char_polynomial(i, "tot")
        a = cx.char_polynomial(i, "tot") if i <= cx.dim else one
        b = a.compose_shift(-2) if i <= cx.dim else one
        c = (cx.char_polynomial(i - 1, "tot").compose_shift(-2)
             if 0 <= i - 1 <= cx.dim else one)
        if lhs != a * b * c:
            return False
    return True


def prism_ud_identity_holds(x: CubicalComplex) -> bool:
    """The up-down spectrum of the prism is the up-down spectrum of x
    together with the total spectrum of x shifted up by 2, compared
    after stripping zero eigenvalues."""
    d = max(x.universe, default=0) + 1
    px = x.prism(d)
    cx, cp = x.to_chain(), px.to_chain()
    one = IntPoly((1,))
    for i in range(px.dim + 1):
        lhs = cp.char_polynomial(i, "ud").strip_valuation()
        a = (cx.char_polynomial(i, "ud").strip_valuation()
             if i <= cx.dim else one)
        b = (cx.char_polynomial(i, "tot").compose_shift(-2)
             if i <= cx.dim else one)
        if lhs != (a * b).strip_valuation():
            return False
    return True


# ---------------------------------------------------------------------------
# mirroring


def simplicial_closure(facets) -> set:
    """All subsets of the given vertex sets, as frozensets."""
    out = set()
    for s in facets:
        s = tuple(sorted(set(s)))
        for k in range(len(s) + 1):
            out.update(frozenset(c) for c in itertools.combinations(s, k))
    return out


def mirror(n: int, facets) -> CubicalComplex:
    """Cubical complex whose faces are the cube faces with direction
    set in the given simplicial complex on [n]."""
    delta = simplicial_closure(facets)
    for s in delta:
        if any(not (1 <= v <= n) for v in s):
            raise ValueError(f"facet vertex outside [1, {n}]")
    u = tuple(range(1, n + 1))
    fs = set()
    for s in delta:
        free = [d for d in u if d not in s]
        for bits in itertools.product("01", repeat=len(free)):
            pin = dict(zip(free, bits))
            fs.add("".join("*" if d in s else pin[d] for d in u))
    return CubicalComplex(u, fs, closed=True)


# ---------------------------------------------------------------------------
# shifted spectra


def _add_two_to_first(m: int, seq) -> tuple:
    out = [(seq[j] if j < len(seq) else 0) + 2 for j in range(m)]
    out += list(seq[m:])
    return tuple(sorted(out, reverse=True))


def _merge(a, b) -> tuple:
    return tuple(sorted(tuple(a) + tuple(b), reverse=True))


def _spectrum_direct(x: CubicalComplex) -> tuple:
    if x.dim < 1:
        return ()
    s = x.to_chain().spectrum(x.dim - 1, "ud")
    if not s.is_integral():
        raise ValueError("spectrum is not integral; no integer sequence exists")
    return tuple(sorted(s.nonzero_multiset(), reverse=True))


def _s_recursive(x: CubicalComplex) -> tuple:
    if x.dim < 1:
        return ()
    if x.is_pure() and x.universe:
        np = x.near_prism(x.universe[0])
        if np.holds:
            ell = np.link.n_faces(x.dim - 1)
            if np.deletion.faces == np.link.faces:
                return _add_two_to_first(ell, _s_recursive(np.link))
            sd = _s_recursive(np.deletion)
            sl = _s_recursive(np.link)
            return _merge(sd, _add_two_to_first(ell, _merge(sd, sl)))
    # subcomplexes met in the recursion need not stay in the family
    return _spectrum_direct(x)


def shifted_spectrum(x: CubicalComplex) -> tuple:
    """Nonzero eigenvalues of the top up-down Laplacian, weakly
    decreasing, by the deletion/link recursion.  Requires a pure
    complex that is a near-prism in its smallest direction."""
    if x.dim < 1:
        return ()
    if not x.is_pure():
        raise ValueError("recursion needs a pure complex")
    if not x.near_prism(x.universe[0]).holds:
        raise ValueError(f"not a near-prism in direction {x.universe[0]}")
    return _s_recursive(x)


def near_prism_betti_check(x: CubicalComplex, i: int) -> dict:
    """Betti-level shadow of the wedge-of-spheres prediction: each
    reduced Betti number of x should exceed the deletion's by the
    number of cells of that dimension dropped between deletion and
    link.  Informational; callers report rather than assert."""
    np = x.near_prism(i)
    if not np.holds:
        raise ValueError(f"not a near-prism in direction {i}")
    if not x.faces:
        return {"direction": i, "holds": True, "rows": []}
    cx = x.to_chain()
    cd = np.deletion.to_chain() if np.deletion.faces else None
    c_count: dict = {}
    for f in np.b_faces:
        c_count[face_dim(f)] = c_count.get(face_dim(f), 0) + 1
    rows = []
    ok = True
    for j in range(x.dim + 1):
        actual = cx.betti(j)
        base = cd.betti(j) if cd is not None and j <= cd.dim else 0
        predicted = base + c_count.get(j, 0)
        rows.append({"dim": j, "betti": actual, "predicted": predicted})
        ok = ok and actual == predicted
    return {"direction": i, "holds": ok, "rows": rows}


# ---------------------------------------------------------------------------
# weights

# Per direction i the table carries q_i (star), x_i (0) and y_i (1).


def weight_vars(universe) -> tuple:
    out = []
    for d in universe:
        out += [f"q{d}", f"x{d}", f"y{d}"]
    return tuple(out)


def xi_weight(universe, f: str, vars=None) -> LaurentPoly:
    vs = weight_vars(universe) if vars is None else vars
    powers = {}
    for d, c in zip(universe, f):
        powers["xyq"[_RANK[c]] + str(d)] = 1
    return LaurentPoly.monomial(vs, powers)


def algebraic_boundary(x: CubicalComplex, i: int, vars=None):
    """Boundary matrix whose (f, g) entry is sign(f, g) times the
    weight ratio of g over f; each entry is a single Laurent monomial
    of the form +-q/x or +-q/y in one direction."""
    vs = weight_vars(x.universe) if vars is None else vars
    rows_idx = {f: r for r, f in enumerate(x.faces_of_dim(i - 1))}
    cols = x.faces_of_dim(i)
    zero = LaurentPoly(vs)
    rows = [[zero] * len(cols) for _ in rows_idx]
    for ci, g in enumerate(cols):
        j = 0
        for pos, c in enumerate(g):
            if c == "*":
                j += 1
                s = -1 if j % 2 else 1
                d = x.universe[pos]
                f0 = g[:pos] + "0" + g[pos + 1:]
                f1 = g[:pos] + "1" + g[pos + 1:]
                rows[rows_idx[f0]][ci] = LaurentPoly.monomial(vs, {f"q{d}": 1, f"x{d}": -1}, s)
                rows[rows_idx[f1]][ci] = LaurentPoly.monomial(vs, {f"q{d}": 1, f"y{d}": -1}, -s)
    return rows


def laurent_transpose(rows):
    if not rows:
        return []
    return [[rows[r][c] for r in range(len(rows))] for c in range(len(rows[0]))]


def laurent_matmul(a, b):
    if not a or not b:
        return []
    nr, inner, nc = len(a), len(b), len(b[0])
    out = []
    for r in range(nr):
        row = []
        ar = a[r]
        for c in range(nc):
            acc = None
            for k in range(inner):
                if ar[k].is_zero() or b[k][c].is_zero():
                    continue
                t = ar[k] * b[k][c]
                acc = t if acc is None else acc + t
            row.append(acc if acc is not None else ar[0] * 0)
        out.append(row)
    return out


def laurent_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def laurent_is_zero(rows) -> bool:
    return all(e.is_zero() for r in rows for e in r)


def weighted_total_laplacian(x: CubicalComplex, i: int, vars=None):
    """Total Laplacian of the algebraically weighted boundary maps, a
    square Laurent-polynomial matrix on the i-faces."""
    vs = weight_vars(x.universe) if vars is None else vars
    n = x.n_faces(i)
    tot = [[LaurentPoly(vs)] * n for _ in range(n)]
    if i + 1 <= x.dim and x.n_faces(i + 1):
        up = algebraic_boundary(x, i + 1, vars=vs)
        tot = laurent_add(tot, laurent_matmul(up, laurent_transpose(up)))
    if i >= 1 and x.n_faces(i - 1):
        down = algebraic_boundary(x, i, vars=vs)
        tot = laurent_add(tot, laurent_matmul(laurent_transpose(down), down))
    return tot


def weighted_diag_laplacian(x: CubicalComplex, k: int, vars=None):
    """The matrix on (k-1)-faces obtained by weighting each k-face
    column of the integer boundary by its monomial weight: entry (r, s)
    is the sum over k-faces g of bnd[r,g] bnd[s,g] xi_g.  This is the
    engine matrix for weighted tree enumeration; the weighted boundary
    itself composes to zero only in the algebraic mode above."""
    vs = weight_vars(x.universe) if vars is None else vars
    b = x.to_chain().boundary(k)
    weights = [xi_weight(x.universe, g, vars=vs) for g in x.faces_of_dim(k)]
    n = b.nrows
    out = []
    for r in range(n):
        row = []
        for s in range(n):
            acc = LaurentPoly(vs)
            for c, w in enumerate(weights):
                e = b.entry(r, c) * b.entry(s, c)
                if e:
                    acc = acc + w * e
            row.append(acc)
        out.append(row)
    return out


def u_form(universe, subset, vars=None) -> LaurentPoly:
    """Sum over directions in the subset of q^2/x^2 + q^2/y^2."""
    vs = weight_vars(universe) if vars is None else vars
    acc = LaurentPoly(vs)
    for d in subset:
        acc = acc + LaurentPoly.monomial(vs, {f"q{d}": 2, f"x{d}": -2})
        acc = acc + LaurentPoly.monomial(vs, {f"q{d}": 2, f"y{d}": -2})
    return acc


def cube_weighted_tot_eigenvalues(n: int, i: int, vars=None):
    """Predicted spectrum of the weighted total Laplacian of the full
    cube in dimension i: one form per direction subset A, with
    multiplicity C(|A|, i)."""
    u = tuple(range(1, n + 1))
    vs = weight_vars(u) if vars is None else vars
    out = []
    for r in range(n + 1):
        for subset in itertools.combinations(u, r):
            m = gen_binom(r, i)
            if m > 0:
                out.append((u_form(u, subset, vars=vs), m))
    return out
