"""Matrix realizations of basic classical Lie superalgebras.

Supported families: gl(m|n) and sl(m|n) with m != n, psl(n|n), and
spo(2n|m) acting on C^(2n|m) (the same algebra as osp(m|2n); osp:1|2 is the
alias of spo:2|1).  Brackets and the supertrace form are always computed
from an explicit matrix basis rather than copied from tables.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError, UnsupportedFamilyError
from .scalar import Scalar, scalar

ZERO = Scalar.zero()
ONE = Scalar.one()


# ---------------------------------------------------------------------------
# small exact linear algebra
# ---------------------------------------------------------------------------


def _rational_kernel(rows, ncols):
    """Basis of the right kernel of a rational matrix (rows of length ncols)."""
    rows = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    pivot_set = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


class LinearSolver:
    """Incremental exact row reduction over Scalar coefficients.

    Tracks a list of tagged vectors; solve() expresses a new vector in terms
    of the tags (or reports failure).  Pivoting is plain first-nonzero, fine
    at the dimensions in play here.
    """

    def __init__(self, ambient_dim):
        self.dim = ambient_dim
        self.rows = []  # (pivot index, normalized vector, combo dict tag -> Scalar)

    def _reduce(self, vec):
        residual = [scalar(x) for x in vec]
        expr = {}
        for pivot, rowvec, rcombo in self.rows:
            c = residual[pivot]
            if c:
                for k, rv in rowvec:
                    residual[k] = residual[k] - c * rv
                for tag, s in rcombo.items():
                    acc = expr.get(tag, ZERO) + c * s
                    if acc:
                        expr[tag] = acc
                    elif tag in expr:
                        del expr[tag]
        return residual, expr

    def add(self, tag, vec):
        """Insert a tagged vector; returns False when dependent on earlier ones."""
        residual, expr = self._reduce(vec)
        pivot = None
        for k, x in enumerate(residual):
            if x:
                pivot = k
                break
        if pivot is None:
            return False
        pv = residual[pivot].inv()
        rowvec = tuple((k, x * pv) for k, x in enumerate(residual) if x)
        combo = {tag: pv}
        for t, s in expr.items():
            combo[t] = -s * pv
        self.rows.append((pivot, rowvec, combo))
        return True

    def solve(self, vec):
        """Coordinates of vec over the inserted tags, or None if outside the span."""
        residual, expr = self._reduce(vec)
        if any(residual):
            return None
        return expr

    @property
    def rank(self):
        return len(self.rows)


# ---------------------------------------------------------------------------
# rational matrices (tuples of tuples of Fraction)
# ---------------------------------------------------------------------------


def _zeros(n):
    return [[Fraction(0)] * n for _ in range(n)]


def _elem(n, a, b):
    m = _zeros(n)
    m[a][b] = Fraction(1)
    return m


def _mat_mul(x, y):
    n = len(x)
    out = _zeros(n)
    for i in range(n):
        xi = x[i]
        oi = out[i]
        for k in range(n):
            c = xi[k]
            if c:
                yk = y[k]
                for j in range(n):
                    if yk[j]:
                        oi[j] += c * yk[j]
    return out


def _mat_comb(ms, coeffs):
    n = len(ms[0])
    out = _zeros(n)
    for m, c in zip(ms, coeffs):
        if c:
            for i in range(n):
                for j in range(n):
                    if m[i][j]:
                        out[i][j] += c * m[i][j]
    return out


def _supertrace(m, even_dim):
    t = Fraction(0)
    for i in range(len(m)):
        t += m[i][i] if i < even_dim else -m[i][i]
    return t


def _flatten(m):
    return tuple(x for row in m for x in row)


# ---------------------------------------------------------------------------
# the algebra object
# ---------------------------------------------------------------------------


class LieSuperalgebra:
    """Finite-dimensional Lie superalgebra given by structure constants.

    Elements are sparse coordinate dicts {basis index: Scalar}.  The object
    is immutable after construction.
    """

    def __init__(self, family, params, labels, parity, bracket, form, cartan,
                 display=None):
        self.family = family
        self.params = tuple(params)
        self.labels = tuple(labels)
        self.parity = tuple(parity)
        self.dim = len(labels)
        self._bracket = bracket  # dict (i, j) -> dict k -> Scalar
        self.form = form  # tuple of tuples of Scalar
        self.cartan = tuple(cartan)
        self.display = display or "%s:%s" % (family, "|".join(map(str, params)))

    # -- basics ---------------------------------------------------------

    @property
    def dim_even(self):
        return self.parity.count(0)

    @property
    def dim_odd(self):
        return self.parity.count(1)

    def bracket_basis(self, i, j):
        return self._bracket.get((i, j), {})

    def bracket(self, x, y):
        """[x, y] for sparse coordinate dicts; bilinear, signs live in the table."""
        out = {}
        for i, xi in x.items():
            for j, yj in y.items():
                c = xi * yj
                if not c:
                    continue
                for k, s in self._bracket.get((i, j), {}).items():
                    acc = out.get(k, ZERO) + c * s
                    if acc:
                        out[k] = acc
                    elif k in out:
                        del out[k]
        return out

    def pair(self, x, y):
        """Invariant form (x, y)."""
        tot = ZERO
        for i, xi in x.items():
            row = self.form[i]
            for j, yj in y.items():
                if row[j]:
                    tot = tot + xi * yj * row[j]
        return tot

    def element_parity(self, x):
        """0 or 1 for homogeneous x, else None."""
        seen = {self.parity[i] for i in x}
        if len(seen) == 1:
            return seen.pop()
        return None if seen else 0

    def basis_element(self, i):
        return {i: ONE}

    def with_form_scaled(self, c):
        c = scalar(c)
        form = tuple(tuple(v * c for v in row) for row in self.form)
        g = LieSuperalgebra(self.family, self.params, self.labels, self.parity,
                            self._bracket, form, self.cartan, self.display)
        return g

    def rebase(self, new_basis, new_cartan, labels=None):
        """Rewrite the algebra on a new ordered basis (list of coordinate dicts).

        Every new vector must be parity homogeneous; brackets and the form
        are recomputed exactly.
        """
        n = len(new_basis)
        if n != self.dim:
            raise PreconditionError("rebase needs a full basis")
        solver = LinearSolver(self.dim)
        parity = []
        for t, vec in enumerate(new_basis):
            p = self.element_parity(vec)
            if p is None:
                raise PreconditionError("rebase vector %d is parity mixed" % t)
            parity.append(p)
            dense = [vec.get(i, ZERO) for i in range(self.dim)]
            if not solver.add(t, dense):
                raise PreconditionError("rebase vectors are dependent at %d" % t)
        bracket = {}
        for i in range(n):
            for j in range(n):
                z = self.bracket(new_basis[i], new_basis[j])
                if not z:
                    continue
                dense = [z.get(k, ZERO) for k in range(self.dim)]
                coords = solver.solve(dense)
                if coords is None:
                    raise PreconditionError("rebase span is not closed under bracket")
                if coords:
                    bracket[(i, j)] = coords
        form = tuple(
            tuple(self.pair(new_basis[i], new_basis[j]) for j in range(n))
            for i in range(n)
        )
        labels = labels or ["b%d" % i for i in range(n)]
        return LieSuperalgebra(self.family, self.params, labels, parity,
                               bracket, form, new_cartan, self.display)

    def to_json_dict(self):
        bracket_rows = []
        for (i, j) in sorted(self._bracket):
            for k in sorted(self._bracket[(i, j)]):
                bracket_rows.append([i, j, k, self._bracket[(i, j)][k].render()])
        form_rows = []
        for i in range(self.dim):
            for j in range(self.dim):
                if self.form[i][j]:
                    form_rows.append([i, j, self.form[i][j].render()])
        return {
            "family": self.family,
            "params": list(self.params),
            "basis": [
                {"index": i, "parity": self.parity[i], "label": self.labels[i]}
                for i in range(self.dim)
            ],
            "cartan": list(self.cartan),
            "bracket": bracket_rows,
            "form": form_rows,
        }

    def __repr__(self):
        return "<LieSuperalgebra %s dim %d|%d>" % (
            self.display, self.dim_even, self.dim_odd)


# ---------------------------------------------------------------------------
# family builders
# ---------------------------------------------------------------------------


def parse_descriptor(text):
    """Parse "family:p|q" into (family, (p, q)); osp swaps into spo form."""
    if isinstance(text, (tuple, list)):
        fam, params = text[0], tuple(text[1])
    else:
        if ":" not in text:
            raise UnsupportedFamilyError("bad algebra descriptor %r" % text)
        fam, _, rest = text.partition(":")
        try:
            params = tuple(int(p) for p in rest.split("|"))
        except ValueError:
            raise UnsupportedFamilyError("bad parameters in %r" % text)
    fam = fam.strip().lower()
    if fam in ("g3", "f4", "d21a", "d(2,1;a)", "q"):
        raise UnsupportedFamilyError("family %r is not supported" % fam)
    if fam == "osp":
        # osp(m|2n) preserves the same form as spo(2n|m)
        if len(params) != 2 or params[1] % 2:
            raise UnsupportedFamilyError("osp needs parameters m|2n")
        m, twon = params
        return "spo", (twon, m)
    if fam not in ("gl", "sl", "psl", "spo"):
        raise UnsupportedFamilyError("family %r is not supported" % fam)
    if len(params) != 2 or min(params) < 0 or max(params) < 1:
        raise UnsupportedFamilyError("%s needs exactly two parameters" % fam)
    if fam in ("gl", "sl") and params[0] == params[1]:
        raise UnsupportedFamilyError(
            "%s(n|n) has a one dimensional center; use psl:%d|%d"
            % (fam, params[0], params[1]))
    if fam == "psl" and params[0] != params[1]:
        raise UnsupportedFamilyError("psl needs equal parameters")
    if fam == "spo" and params[0] % 2:
        raise UnsupportedFamilyError("spo needs an even first parameter")
    return fam, params


def build_algebra(descriptor):
    fam, params = parse_descriptor(descriptor)
    if fam == "gl":
        return _build_gl_family("gl", *params)
    if fam == "sl":
        return _build_gl_family("sl", *params)
    if fam == "psl":
        return _build_gl_family("psl", *params)
    return _build_spo(*params)


def _build_gl_family(kind, m, n):
    if m < 1 or n < 1:
        raise UnsupportedFamilyError("%s(%d|%d): need both blocks nonempty" % (kind, m, n))
    if kind in ("gl", "sl") and m == n:
        raise UnsupportedFamilyError(
            "%s(%d|%d) is excluded; use psl:%d|%d instead" % (kind, m, n, n, n))
    if kind == "psl" and m != n:
        raise UnsupportedFamilyError("psl needs equal block sizes")
    d = m + n
    par = lambda a: 0 if a < m else 1

    mats, parity, labels = [], [], []
    if kind == "gl":
        for a in range(d):
            mats.append(_elem(d, a, a))
            parity.append(0)
            labels.append("H%d" % (a + 1))
        cartan = list(range(d))
    else:
        # coroot-style supertraceless diagonal basis
        for a in range(d - 1):
            h = _zeros(d)
            h[a][a] = Fraction(1)
            h[a + 1][a + 1] = Fraction(1) if a == m - 1 else Fraction(-1)
            mats.append(h)
            parity.append(0)
            labels.append("H%d" % (a + 1))
        cartan = list(range(d - 1))
    for a in range(d):
        for b in range(d):
            if a != b:
                mats.append(_elem(d, a, b))
                parity.append((par(a) + par(b)) % 2)
                labels.append("E%d,%d" % (a + 1, b + 1))

    eliminators = []
    if kind == "psl":
        # quotient by the identity matrix: add it to the solver as a zero tag
        ident = _zeros(d)
        for a in range(d):
            ident[a][a] = Fraction(1)
        # drop one Cartan vector so the remaining mats project to a basis
        coords = _matrix_coords(mats, [ident])[0]
        drop = max(i for i in cartan if coords.get(i))
        del mats[drop], parity[drop], labels[drop]
        cartan = list(range(d - 2))
        eliminators = [ident]

    fam_params = (m, n)
    return _finish(kind, fam_params, mats, parity, labels, cartan, m, eliminators)


def _matrix_coords(basis_mats, targets, eliminators=()):
    """Coordinates of each target over basis_mats, modulo the eliminator span."""
    dim = len(basis_mats)
    solver = LinearSolver(len(basis_mats[0]) ** 2)
    for t, em in enumerate(eliminators):
        solver.add(("elim", t), _flatten(em))
    for i, bm in enumerate(basis_mats):
        if not solver.add(i, _flatten(bm)):
            raise PreconditionError("matrix basis is dependent at %d" % i)
    out = []
    for tm in targets:
        sol = solver.solve(_flatten(tm))
        if sol is None:
            raise PreconditionError("target outside the matrix span")
        out.append({k: v for k, v in sol.items() if isinstance(k, int)})
    return out


def _spo_form(twon, m):
    n = twon // 2
    d = twon + m
    phi = _zeros(d)
    for i in range(twon):
        phi[i][twon - 1 - i] = Fraction(1) if i < n else Fraction(-1)
    for j in range(m):
        phi[twon + j][d - 1 - j] = Fraction(1)
    return phi


def _build_spo(twon, m):
    if twon < 2 or twon % 2 or m < 1:
        raise UnsupportedFamilyError("spo(%d|%d): need even 2n >= 2 and m >= 1" % (twon, m))
    n = twon // 2
    d = twon + m
    par = lambda a: 0 if a < twon else 1
    phi = _spo_form(twon, m)

    # solve B(Xu, v) + (-1)^{|X||u|} B(u, Xv) = 0 entrywise for each parity
    kernel_mats = {0: [], 1: []}
    for px in (0, 1):
        positions = [(c, a) for c in range(d) for a in range(d)
                     if (par(c) + par(a)) % 2 == px]
        pos_index = {p: t for t, p in enumerate(positions)}
        rows = []
        for a in range(d):
            for b in range(d):
                row = [Fraction(0)] * len(positions)
                for c in range(d):
                    if phi[c][b] and (c, a) in pos_index:
                        row[pos_index[(c, a)]] += phi[c][b]
                    if phi[a][c] and (c, b) in pos_index:
                        sign = -1 if (px and par(a)) else 1
                        row[pos_index[(c, b)]] += sign * phi[a][c]
                if any(row):
                    rows.append(row)
        for vec in _rational_kernel(rows, len(positions)):
            x = _zeros(d)
            for t, (c, a) in enumerate(positions):
                if vec[t]:
                    x[c][a] = vec[t]
            kernel_mats[px].append(x)

    # Cartan: diagonal members, written in the standard eps/delta order
    cartan_mats = []
    for i in range(n):
        h = _zeros(d)
        h[i][i] = Fraction(1)
        h[twon - 1 - i][twon - 1 - i] = Fraction(-1)
        cartan_mats.append(h)
    for j in range(m // 2):
        h = _zeros(d)
        h[twon + j][twon + j] = Fraction(1)
        h[d - 1 - j][d - 1 - j] = Fraction(-1)
        cartan_mats.append(h)
    k_c = len(cartan_mats)

    def weight_of(a, b):
        return tuple(hm[a][a] - hm[b][b] for hm in cartan_mats)

    # split kernel vectors into Cartan weight components
    weight_vecs = {}
    for px in (0, 1):
        for x in kernel_mats[px]:
            comps = {}
            for a in range(d):
                for b in range(d):
                    if x[a][b]:
                        comps.setdefault(weight_of(a, b), _zeros(d))[a][b] = x[a][b]
            for wt, mat in comps.items():
                if any(c != 0 for c in wt):
                    weight_vecs.setdefault((wt, px), []).append(mat)

    mats = list(cartan_mats)
    parity = [0] * k_c
    labels = ["H%d" % (i + 1) for i in range(k_c)]
    solver = LinearSolver(d * d)
    for i, hm in enumerate(cartan_mats):
        solver.add(i, _flatten(hm))
    for (wt, px) in sorted(weight_vecs, key=lambda key: (key[0], key[1])):
        for mat in weight_vecs[(wt, px)]:
            if solver.add(len(mats), _flatten(mat)):
                mats.append(mat)
                parity.append(px)
                labels.append("X(%s)" % ",".join(str(c) for c in wt))

    return _finish("spo", (twon, m), mats, parity, labels, list(range(k_c)), twon, [])


def _finish(family, params, mats, parity, labels, cartan, even_dim, eliminators):
    """Compute structure constants and form from the matrix basis."""
    dim = len(mats)
    bracket = {}
    products = {}
    for i in range(dim):
        for j in range(dim):
            products[(i, j)] = _mat_mul(mats[i], mats[j])
    targets = []
    keys = []
    for i in range(dim):
        for j in range(dim):
            sign = -1 if (parity[i] and parity[j]) else 1
            z = [[products[(i, j)][a][b] - sign * products[(j, i)][a][b]
                  for b in range(len(mats[0]))] for a in range(len(mats[0]))]
            if any(any(row) for row in z):
                targets.append(z)
                keys.append((i, j))
    coords = _matrix_coords(mats, targets, eliminators)
    for key, co in zip(keys, coords):
        if co:
            bracket[key] = {k: v for k, v in sorted(co.items())}
    form = tuple(
        tuple(scalar(_supertrace(products[(i, j)], even_dim)) for j in range(dim))
        for i in range(dim)
    )
    return LieSuperalgebra(family, params, labels, parity, bracket, form, cartan)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate(g):
    """Check all structural identities; returns a list of violation strings."""
    report = []
    dim = g.dim
    basis = [g.basis_element(i) for i in range(dim)]

    for i in range(dim):
        for j in range(dim):
            pij = (g.parity[i] + g.parity[j]) % 2
            br = g.bracket_basis(i, j)
            for k in br:
                if g.parity[k] != pij:
                    report.append("parity: [%d,%d] hits index %d" % (i, j, k))
            sign = -1 if (g.parity[i] and g.parity[j]) else 1
            rev = g.bracket_basis(j, i)
            for k in set(br) | set(rev):
                if br.get(k, ZERO) != -sign * rev.get(k, ZERO):
                    report.append("skew: [%d,%d] vs [%d,%d] at %d" % (i, j, j, i, k))

    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = g.bracket(basis[i], g.bracket(basis[j], basis[k]))
                rhs = g.bracket(g.bracket(basis[i], basis[j]), basis[k])
                sgn = -1 if (g.parity[i] and g.parity[j]) else 1
                for t, v in g.bracket(basis[j], g.bracket(basis[i], basis[k])).items():
                    acc = rhs.get(t, ZERO) + sgn * v
                    if acc:
                        rhs[t] = acc
                    elif t in rhs:
                        del rhs[t]
                if lhs != rhs:
                    report.append("jacobi: (%d,%d,%d)" % (i, j, k))

    for i in range(dim):
        for j in range(dim):
            v = g.form[i][j]
            if g.parity[i] != g.parity[j] and v:
                report.append("form not even at (%d,%d)" % (i, j))
            sign = -1 if (g.parity[i] and g.parity[j]) else 1
            if v != sign * g.form[j][i]:
                report.append("form not supersymmetric at (%d,%d)" % (i, j))

    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = g.pair(g.bracket(basis[i], basis[j]), basis[k])
                rhs = g.pair(basis[i], g.bracket(basis[j], basis[k]))
                if lhs != rhs:
                    report.append("form not invariant at (%d,%d,%d)" % (i, j, k))
                    break

    solver = LinearSolver(dim)
    for i in range(dim):
        solver.add(i, [g.form[i][j] for j in range(dim)])
    if solver.rank != dim:
        report.append("form degenerate: rank %d of %d" % (solver.rank, dim))

    for a in g.cartan:
        for b in g.cartan:
            if g.bracket_basis(a, b):
                report.append("cartan not abelian at (%d,%d)" % (a, b))
    return report


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------


class RootDatum:
    """Ad-h eigenspace data plus a positive system adapted to the minimal root.

    roots: list of weight tuples (Fractions over the Cartan basis), nonzero.
    spaces: root -> list of basis indices.  parity: root -> 0/1.
    theta: the canonical minimal root; positive/simple per the convention
    that puts theta (or theta/2 in the odd case) last among the simples.
    """

    def __init__(self, g, roots, spaces, parity, theta, positive, simple):
        self.algebra = g
        self.roots = roots
        self.spaces = spaces
        self.parity = parity
        self.theta = theta
        self.positive = positive
        self.simple = simple

    def is_positive(self, root):
        return root in self.positive

    def multiplicity(self, root):
        return len(self.spaces[root])


class DecompositionError(RuntimeError):
    pass


def _weights_of_basis(g):
    """Weight vector of every basis index under ad of the Cartan basis."""
    weights = []
    for i in range(g.dim):
        if i in g.cartan:
            weights.append(tuple(Fraction(0) for _ in g.cartan))
            continue
        wt = []
        for t in g.cartan:
            br = g.bracket_basis(t, i)
            extra = [k for k in br if k != i]
            if extra:
                raise DecompositionError(
                    "ad h%d is not diagonal on basis %d" % (t, i))
            ev = br.get(i, ZERO)
            if not ev.is_rational():
                raise DecompositionError("irrational eigenvalue at %d" % i)
            wt.append(ev.as_fraction())
        weights.append(tuple(wt))
    return weights


def cartan_gram(g):
    """Gram matrix of the form restricted to the Cartan basis (Fractions)."""
    idx = g.cartan
    return [[g.form[a][b].as_fraction() for b in idx] for a in idx]


def _solve_rational(matrix, rhs):
    """Solve matrix * x = rhs exactly; matrix square nonsingular."""
    n = len(matrix)
    aug = [list(map(Fraction, matrix[i])) + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        pr = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def weight_form(g):
    """The induced pairing on weight vectors, (a, b) = a^T Gc^{-1} b."""
    gc = cartan_gram(g)

    def pair(a, b):
        x = _solve_rational(gc, list(b))
        return sum(ai * xi for ai, xi in zip(a, x))

    return pair


def minimal_root_candidates(g, weights=None):
    """Even roots theta with integral short ad-h_theta spectrum and dim g(2) = 1."""
    weights = weights or _weights_of_basis(g)
    pair = weight_form(g)
    zero = tuple(Fraction(0) for _ in g.cartan)
    seen = {}
    for i in range(g.dim):
        if weights[i] != zero:
            seen.setdefault(weights[i], []).append(i)
    cands = []
    for theta, idxs in seen.items():
        if any(g.parity[i] for i in idxs):
            continue
        tt = pair(theta, theta)
        if not tt:
            continue
        ok = True
        top = 0
        for alpha, jdxs in seen.items():
            ev = 2 * pair(alpha, theta) / tt
            if ev.denominator != 1 or abs(ev) > 2:
                ok = False
                break
            if ev == 2:
                top += len(jdxs)
        if ok and top == 1:
            cands.append(theta)
    cands.sort()
    return cands


def root_decomposition(g, theta=None):
    """Roots, parities and the positive/simple system adapted to theta."""
    weights = _weights_of_basis(g)
    zero = tuple(Fraction(0) for _ in g.cartan)
    spaces = {}
    for i in range(g.dim):
        if weights[i] != zero:
            spaces.setdefault(weights[i], []).append(i)
        elif i not in g.cartan:
            raise DecompositionError("weight-zero vector %d outside Cartan" % i)
    parity = {}
    for root, idxs in spaces.items():
        ps = {g.parity[i] for i in idxs}
        if len(ps) != 1:
            raise DecompositionError("mixed parity root space at %s" % (root,))
        parity[root] = ps.pop()
    roots = sorted(spaces)
    for root in roots:
        neg = tuple(-c for c in root)
        if neg not in spaces or parity[neg] != parity[root]:
            raise DecompositionError("root negation symmetry fails at %s" % (root,))

    cands = minimal_root_candidates(g, weights)
    if not cands:
        raise DecompositionError("no minimal root available")
    if theta is None:
        # canonical pick: coordinate-lex maximum (first sp / first block root)
        theta = cands[-1]
    elif theta not in cands:
        raise PreconditionError(
            "root %s is not minimal; candidates: %s" % (theta, cands))

    pair = weight_form(g)
    tt = pair(theta, theta)
    half = tuple(c / 2 for c in theta)
    eta = _generic_functional(g, roots, theta)
    positive = set()
    for root in roots:
        key = eta[root]
        if key > 0 or (key == 0 and 2 * pair(root, theta) / tt > 0):
            positive.add(root)

    pos_list = sorted(positive)
    pos_set = set(pos_list)
    simple = []
    for root in pos_list:
        decomposable = False
        for b in pos_list:
            rem = tuple(r - bb for r, bb in zip(root, b))
            if rem != zero and rem in pos_set:
                decomposable = True
                break
        if not decomposable:
            simple.append(root)
    last = half if half in spaces else theta
    if last not in simple:
        raise DecompositionError("adapted root is not simple")
    rest = sorted((r for r in simple if r != last), key=lambda r: (eta[r], r))
    simple = rest + [last]
    return RootDatum(g, roots, spaces, parity, theta, positive, simple)


def _proportional(a, b):
    for i in range(len(a)):
        for j in range(len(a)):
            if a[i] * b[j] != a[j] * b[i]:
                return False
    return True


def _diagonal_coordinates(g, root):
    """Express a root over the diagonal entry functionals, block order."""
    if g.family in ("gl", "spo"):
        return list(root)
    m, n = g.params
    c = [Fraction(0)]
    for a, val in enumerate(root):
        if a + 1 == m:
            c.append(val - c[-1])
        else:
            c.append(c[-1] - val)
    if m != n:
        shift = -sum(c) / (m - n)
        c = [cp + shift if p < m else cp - shift for p, cp in enumerate(c)]
    return c


def _generic_functional(g, roots, theta):
    """Values of a functional vanishing on theta and nowhere else.

    Starts from strictly decreasing weights along the matrix diagonal
    (so the usual ordering of the standard basis functionals), then
    projects out the theta component.  Degenerate seeds get bumped.
    """
    pair = weight_form(g)
    tt = pair(theta, theta)
    th = _diagonal_coordinates(g, theta)
    d = len(th)
    power = 1
    while True:
        w = [Fraction((d - i) ** power) for i in range(d)]
        base = sum(wi * ci for wi, ci in zip(w, th))

        def value(root):
            c = _diagonal_coordinates(g, root)
            e0 = sum(wi * ci for wi, ci in zip(w, c))
            return e0 - base * pair(root, theta) / tt

        eta = {root: value(root) for root in roots}
        if all(eta[r] for r in roots if not _proportional(r, theta)):
            return eta
        power += 1


# ---------------------------------------------------------------------------
# classification of the minimal case
# ---------------------------------------------------------------------------


class ClassificationError(ValueError):
    pass


def classify_minimal_case(g, theta):
    """Parity type, centralizer label and complete-reducibility flag."""
    if theta not in minimal_root_candidates(g):
        raise ClassificationError("theta %s is not a minimal root" % (theta,))
    weights = _weights_of_basis(g)
    pair = weight_form(g)
    tt = pair(theta, theta)
    r = s = 0
    theta_idx = None
    for i in range(g.dim):
        if i in g.cartan:
            continue
        ev = 2 * pair(weights[i], theta) / tt
        if ev == -1:
            if g.parity[i]:
                r += 1
            else:
                s += 1
        if ev == 2:
            theta_idx = i
    parity_type = "odd" if r % 2 else "even"

    fam, (p1, p2) = g.family, g.params
    if fam == "spo":
        twon, m = p1, p2
        n = twon // 2
        sp_side = theta_idx is not None and _spo_block(twon, theta_idx, g) == "sp"
        if sp_side:
            if n == 1:
                label = "trivial" if m == 1 else "so(%d)" % m
                reducible = m != 2
            else:
                label = "spo(%d|%d)" % (twon - 2, m)
                reducible = m == 1
        else:
            if m == 4:
                label = "sl(2)+sp(%d)" % twon
                reducible = True
            else:
                label = "osp(%d|%d)+sl(2)" % (m - 4, twon)
                reducible = m == 5
    elif fam == "psl":
        nn = p1
        label = "sl(2)" if nn == 2 else "sl(%d|%d)" % (nn - 2, nn)
        reducible = nn == 2
    else:
        # gl / sl: find which diagonal block theta lives in
        block_m = _gl_block_is_first(g, theta_idx)
        a, b = (p1, p2) if block_m else (p2, p1)
        core = "gl(%d)" % b if a == 2 else "gl(%d|%d)" % (a - 2, b)
        label = core + "+gl(1)" if fam == "gl" else core
        reducible = False
    return {
        "parity_type": parity_type,
        "ge0_label": label,
        "completely_reducible": reducible,
        "r": r,
        "s": s,
    }


def _spo_block(twon, idx, g):
    """Which even block the root vector's matrix support lies in."""
    label = g.labels[idx]
    # root vectors carry their weight in the label; sp weights move the
    # first n coordinates
    if label.startswith("X("):
        comps = [Fraction(c) for c in label[2:-1].split(",")]
        n = twon // 2
        return "sp" if any(comps[:n]) else "so"
    raise ClassificationError("unexpected basis label %r" % label)


def _gl_block_is_first(g, idx):
    label = g.labels[idx]
    if label.startswith("E"):
        a, b = (int(x) for x in label[1:].split(","))
        m = g.params[0]
        return a <= m and b <= m
    raise ClassificationError("unexpected basis label %r" % label)
