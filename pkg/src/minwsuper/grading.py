"""Short Z-gradings from a minimal root, with all the distinguished bases.

Everything downstream (normal forms, generator formulas, module
constructions) consumes the object built here: the algebra is rescaled
so that (theta, theta) = 2 and rebased onto letters adapted to the
grading, with the degree -1 symplectic/orthogonal bases, the degree 0
dual root-vector bases, and the weight functionals precomputed.
"""

from fractions import Fraction

from .errors import ConsistencyError, PreconditionError
from .scalar import HALF, ONE, ZERO, FieldTower, Scalar, scalar
from .superalgebra import (
    LinearSolver,
    _rational_kernel,
    _solve_rational,
    minimal_root_candidates,
    root_decomposition,
    weight_form,
)


class GradingError(RuntimeError):
    pass


def select_minimal_root(g, hint=None):
    """The canonical minimal root, or validate the caller's choice.

    ``hint`` may be a root tuple or an index into the sorted root list.
    """
    cands = minimal_root_candidates(g)
    if not cands:
        raise GradingError("no minimal root exists for %s" % g.display)
    if hint is None:
        return cands[-1]
    if isinstance(hint, int):
        roots = sorted(root_decomposition(g).spaces)
        try:
            hint = roots[hint]
        except IndexError:
            raise PreconditionError("root index %d out of range" % hint)
    hint = tuple(Fraction(c) for c in hint)
    if hint not in cands:
        raise PreconditionError(
            "root %s is not minimal; valid candidates: %s"
            % (hint, sorted(cands)))
    return hint


def _neg(root):
    return tuple(-c for c in root)


class MinimalGrading:
    """Everything attached to the short grading of a minimal root.

    Public data (indices refer to ``self.algebra``, the rescaled algebra
    rebased so that each distinguished vector is a basis letter, ordered
    by descending ad-h degree with f last):

      e, f, hth        -- the sl(2) triple letters, [e, f] = h
      E, F             -- coordinate dicts, only when parity_type == "odd"
      hes              -- the k-1 Cartan letters spanning h^e
      xs/xstars        -- degree 0 even root letters, (x*_i, x_j) = delta
      ys/ystars        -- odd counterparts
      us, vs           -- degree -1 bases with the standard chi-pairings
      fs/fstars        -- [e, u_i] and [e, u*_i], i up to s/2
      gs/gstars, gmid  -- odd analogues; gmid = [v_mid, e] when r is odd
      degrees          -- ad-h degree per basis letter
      spaces           -- degree -> tuple of letters
    """

    def __init__(self, g, theta=None):
        theta = select_minimal_root(g, theta)
        self.base = g
        self.rd = root_decomposition(g, theta)
        self.theta = theta
        self.tower = FieldTower()
        self._build()

    # -- construction ------------------------------------------------------

    def _build(self):
        g, rd = self.base, self.rd
        pair = weight_form(g)
        tt = pair(rd.theta, rd.theta)
        self.scale = Fraction(2) / tt
        work = g.with_form_scaled(self.scale)

        self._ddeg = {}
        for root in rd.roots:
            d = 2 * pair(root, rd.theta) / tt
            if d.denominator != 1:
                raise GradingError("non-integral eigenvalue at %s" % (root,))
            self._ddeg[root] = int(d)

        cartan = list(g.cartan)
        k = len(cartan)
        self.k = k

        # sl(2) part: e spans the theta space, f scaled so that [e, f] = h
        e_vec = {rd.spaces[rd.theta][0]: ONE}
        gram = [[work.form[a][b].as_fraction() for b in cartan] for a in cartan]
        tcoef = _solve_rational(gram, [Fraction(c) for c in rd.theta])
        h_vec = {cartan[i]: scalar(c) for i, c in enumerate(tcoef) if c}
        f0 = {rd.spaces[_neg(rd.theta)][0]: ONE}
        comm = work.bracket(e_vec, f0)
        ratio = None
        for i, c in comm.items():
            if c:
                ratio = h_vec.get(i, ZERO) / c
                break
        if ratio is None or not ratio:
            raise ConsistencyError("[e, f] misses the coroot direction")
        f_vec = {i: c * ratio for i, c in f0.items()}
        if work.bracket(e_vec, f_vec) != h_vec:
            raise ConsistencyError("triple normalization failed")

        self.s = sum(rd.multiplicity(r) for r in rd.roots
                     if self._ddeg[r] == -1 and not rd.parity[r])
        self.r = sum(rd.multiplicity(r) for r in rd.roots
                     if self._ddeg[r] == -1 and rd.parity[r])
        self.parity_type = "odd" if self.r % 2 else "even"

        chi0 = lambda x: work.pair(e_vec, x)

        def dual_block(neg_root, members):
            """Duals in the (-theta - neg_root) space: <D_i, X_j> = delta."""
            star = _neg(tuple(a + b for a, b in zip(rd.theta, neg_root)))
            pos = [{i: ONE} for i in rd.spaces[star]]
            m = len(members)
            if len(pos) != m:
                raise ConsistencyError("unbalanced pairing at %s" % (neg_root,))
            gr = [[chi0(work.bracket(p, q)).as_fraction() for q in members]
                  for p in pos]
            duals = []
            for i in range(m):
                rhs = [Fraction(int(j == i)) for j in range(m)]
                sol = _solve_rational([list(col) for col in zip(*gr)], rhs)
                vec = {}
                for c, p in zip(sol, pos):
                    if c:
                        for idx, val in p.items():
                            vec[idx] = vec.get(idx, ZERO) + val * scalar(c)
                duals.append({i: v for i, v in vec.items() if v})
            return duals

        neg_even = sorted(r for r in rd.roots
                          if self._ddeg[r] == -1 and not rd.parity[r]
                          and not rd.is_positive(r))
        neg_odd = sorted(r for r in rd.roots
                         if self._ddeg[r] == -1 and rd.parity[r]
                         and not rd.is_positive(r))
        half = tuple(-c / 2 for c in rd.theta)

        us = [None] * self.s
        i = 0
        for root in neg_even:
            members = [{j: ONE} for j in rd.spaces[root]]
            for vec, dual in zip(members, dual_block(root, members)):
                us[i] = vec
                us[self.s - 1 - i] = dual
                i += 1
        if 2 * i != self.s:
            raise ConsistencyError("even degree -1 pairing incomplete")

        vs = [None] * self.r
        i = 0
        for root in neg_odd:
            if root == half:
                continue
            members = [{j: ONE} for j in rd.spaces[root]]
            for vec, dual in zip(members, dual_block(root, members)):
                vs[i] = vec
                vs[self.r - 1 - i] = dual
                i += 1
        if self.r % 2:
            idxs = rd.spaces[half]
            if len(idxs) != 1:
                raise ConsistencyError("middle root space is not a line")
            x = {idxs[0]: ONE}
            c = chi0(work.bracket(x, x)).as_fraction()
            self.tower = self.tower.adjoin_sqrt(c)
            rt = self.tower.sqrt(c)
            vs[(self.r - 1) // 2] = {j: v / rt for j, v in x.items()}

        # degree 0 dual root-vector bases, against the invariant form
        pos_zero = sorted(r for r in rd.roots
                          if self._ddeg[r] == 0 and rd.is_positive(r))

        def form_duals(root):
            neg_m = [{j: ONE} for j in rd.spaces[_neg(root)]]
            pos_m = [{j: ONE} for j in rd.spaces[root]]
            gr = [[work.pair(p, q).as_fraction() for q in neg_m]
                  for p in pos_m]
            stars = []
            for i in range(len(neg_m)):
                rhs = [Fraction(int(j == i)) for j in range(len(neg_m))]
                sol = _solve_rational([list(col) for col in zip(*gr)], rhs)
                vec = {}
                for c, p in zip(sol, pos_m):
                    if c:
                        for idx, val in p.items():
                            vec[idx] = vec.get(idx, ZERO) + val * scalar(c)
                stars.append({i: v for i, v in vec.items() if v})
            return neg_m, stars

        xs, xstars, ys, ystars = [], [], [], []
        self._beta_even, self._beta_odd = [], []
        for root in pos_zero:
            lows, highs = form_duals(root)
            if rd.parity[root]:
                ys.extend(lows)
                ystars.extend(highs)
                self._beta_odd.extend([root] * len(lows))
            else:
                xs.extend(lows)
                xstars.extend(highs)
                self._beta_even.extend([root] * len(lows))
        self.w = len(xs)
        self.l = len(ys)

        # h^e is the kernel of theta inside the Cartan
        hes = []
        for coeffs in _rational_kernel([[Fraction(c) for c in rd.theta]], k):
            hes.append({cartan[i]: scalar(c) for i, c in enumerate(coeffs) if c})

        fs = [work.bracket(e_vec, u) for u in us[: self.s // 2]]
        fstars = [work.bracket(e_vec, us[self.s - 1 - i])
                  for i in range(self.s // 2)]
        gs = [work.bracket(e_vec, v) for v in vs[: self.r // 2]]
        gstars = [work.bracket(e_vec, vs[self.r - 1 - i])
                  for i in range(self.r // 2)]
        gmid = None
        if self.r % 2:
            gmid = work.bracket(vs[(self.r - 1) // 2], e_vec)

        order = [("e", e_vec)]
        order += [("fstar%d" % (i + 1), v) for i, v in enumerate(fstars)]
        order += [("gstar%d" % (i + 1), v) for i, v in enumerate(gstars)]
        if gmid is not None:
            order.append(("gmid", gmid))
        order += [("f%d" % (i + 1), v) for i, v in enumerate(fs)]
        order += [("g%d" % (i + 1), v) for i, v in enumerate(gs)]
        order += [("h%d" % (i + 1), v) for i, v in enumerate(hes)]
        order.append(("hth", h_vec))
        order += [("xstar%d" % (i + 1), v) for i, v in enumerate(xstars)]
        order += [("ystar%d" % (i + 1), v) for i, v in enumerate(ystars)]
        order += [("x%d" % (i + 1), v) for i, v in enumerate(xs)]
        order += [("y%d" % (i + 1), v) for i, v in enumerate(ys)]
        order += [("u%d" % (i + 1), v) for i, v in enumerate(us)]
        order += [("v%d" % (i + 1), v) for i, v in enumerate(vs)]
        order.append(("f", f_vec))
        if len(order) != g.dim:
            raise ConsistencyError(
                "adapted basis has %d of %d vectors" % (len(order), g.dim))
        labels = [lab for lab, _ in order]
        new_cartan = tuple(labels.index("h%d" % (i + 1)) for i in range(k - 1))
        new_cartan += (labels.index("hth"),)
        self.algebra = work.rebase([v for _, v in order], new_cartan,
                                   labels=labels)
        self._letter_vectors = tuple(dict(v) for _, v in order)

        at = labels.index
        self.e = at("e")
        self.f = at("f")
        self.hth = at("hth")
        self.hes = tuple(at("h%d" % (i + 1)) for i in range(k - 1))
        self.fs = tuple(at("f%d" % (i + 1)) for i in range(len(fs)))
        self.fstars = tuple(at("fstar%d" % (i + 1)) for i in range(len(fstars)))
        self.gs = tuple(at("g%d" % (i + 1)) for i in range(len(gs)))
        self.gstars = tuple(at("gstar%d" % (i + 1)) for i in range(len(gstars)))
        self.gmid = at("gmid") if gmid is not None else None
        self.xs = tuple(at("x%d" % (i + 1)) for i in range(self.w))
        self.xstars = tuple(at("xstar%d" % (i + 1)) for i in range(self.w))
        self.ys = tuple(at("y%d" % (i + 1)) for i in range(self.l))
        self.ystars = tuple(at("ystar%d" % (i + 1)) for i in range(self.l))
        self.us = tuple(at("u%d" % (i + 1)) for i in range(self.s))
        self.vs = tuple(at("v%d" % (i + 1)) for i in range(self.r))
        self.vmid = self.vs[(self.r - 1) // 2] if self.r % 2 else None

        self._roots_new = tuple(self._root_of(v) for _, v in order)
        self.degrees = tuple(
            self._ddeg[rt] if rt is not None else 0 for rt in self._roots_new)
        spaces = {}
        for i, d in enumerate(self.degrees):
            spaces.setdefault(d, []).append(i)
        self.spaces = {d: tuple(v) for d, v in spaces.items()}

        if self.r % 2:
            self.tower = self.tower.adjoin_sqrt(-2)
            rt2 = self.tower.sqrt(-2)
            self.F = {self.vmid: rt2}
            self.E = self.algebra.bracket(self.F, {self.e: ONE})
        else:
            self.F = self.E = None

    def _root_of(self, vec):
        """Common root (over the base Cartan) of a weight vector, or None."""
        found = None
        for i in vec:
            for root, idxs in self.rd.spaces.items():
                if i in idxs:
                    if found is not None and found != root:
                        raise ConsistencyError("mixed-root vector")
                    found = root
                    break
        return found

    # -- queries -----------------------------------------------------------

    def chi(self, x):
        """chi(x) = (e, x) in the rescaled form."""
        return self.algebra.pair({self.e: ONE}, x)

    def degree_of(self, x):
        ds = {self.degrees[i] for i in x}
        if len(ds) > 1:
            raise PreconditionError("inhomogeneous element %s" % (x,))
        return ds.pop() if ds else None

    def root_of_letter(self, i):
        """Root of letter i over the base Cartan; None on the Cartan."""
        return self._roots_new[i]

    def dims_per_degree(self):
        g = self.algebra
        out = {}
        for d in range(-2, 3):
            idxs = self.spaces.get(d, ())
            ev = sum(1 for i in idxs if g.parity[i] == 0)
            out[d] = (ev, len(idxs) - ev)
        return out

    def triple(self):
        """(e, h, f) as coordinate dicts, extended by (E, F) when r is odd."""
        out = ({self.e: ONE}, {self.hth: ONE}, {self.f: ONE})
        if self.parity_type == "odd":
            out = out + (self.E, self.F)
        return out

    def centralizer_letters(self):
        """Letters spanning g^e = g(0)# + g(1) + g(2)."""
        return tuple([self.e] + list(self.spaces.get(1, ()))
                     + list(self.hes) + list(self.xstars) + list(self.ystars)
                     + list(self.xs) + list(self.ys))

    def sharp(self, x):
        """Project onto the orthocomplement of h in g(0): x - (h, x) h / 2."""
        c = self.algebra.pair({self.hth: ONE}, x)
        out = dict(x)
        if c:
            cur = out.get(self.hth, ZERO) - c * HALF
            if cur:
                out[self.hth] = cur
            else:
                out.pop(self.hth, None)
        return out

    def restrict_weight(self, root):
        """Values of a base-Cartan weight tuple on the h^e letters."""
        cartan = list(self.base.cartan)
        out = []
        for j in self.hes:
            vec = self._letter_vectors[j]
            val = Fraction(0)
            for b, coeff in vec.items():
                val += Fraction(root[cartan.index(b)]) * coeff.as_fraction()
            out.append(val)
        return tuple(out)

    def to_json_dict(self):
        dims = self.dims_per_degree()
        sub = admissible_subalgebras(self)
        return {
            "algebra": self.base.display,
            "theta": [str(c) for c in self.theta],
            "dims_per_degree": {str(d): list(dims[d]) for d in sorted(dims)},
            "s": self.s,
            "r": self.r,
            "parity_type": self.parity_type,
            "subalgebra_dims": {k: len(v) for k, v in sub.items()},
        }


def grade(g, theta=None):
    """Construct the MinimalGrading; the main entry point."""
    return MinimalGrading(g, theta)


def build_sl2_triple(g, theta=None):
    """The normalized triple plus the grading it came from."""
    mg = grade(g, theta)
    return mg.triple(), mg


def neg_one_bases(grading):
    """The degree -1 letters and their duals: <z*_a, z_b> = delta_ab."""
    s, r = grading.s, grading.r
    us = [{i: ONE} for i in grading.us]
    vs = [{i: ONE} for i in grading.vs]
    zstars = []
    for a in range(s):
        sign = ONE if a < s // 2 else -ONE
        zstars.append({grading.us[s - 1 - a]: sign})
    for a in range(r):
        zstars.append({grading.vs[r - 1 - a]: ONE})
    return {"u": us, "v": vs, "z": us + vs, "zstar": zstars}


def admissible_subalgebras(grading):
    """Index spans of m, m', n, n', n0 and l in the adapted algebra."""
    s, r = grading.s, grading.r
    us, vs = grading.us, grading.vs
    second_u = list(us[s // 2:])
    if r % 2:
        mid = (r - 1) // 2
        second_v = list(vs[(r + 1) // 2:])
        lset = list(us) + [v for i, v in enumerate(vs) if i != mid]
        extra = [vs[mid]]
    else:
        second_v = list(vs[r // 2:])
        lset = list(us) + list(vs)
        extra = []
    m = [grading.f] + second_u + second_v
    return {
        "m": tuple(m),
        "mprime": tuple(m + extra),
        "n": (grading.f,),
        "nprime": tuple([grading.f] + list(us) + list(vs)),
        "nzero": tuple([grading.f] + lset),
        "l": tuple(lset),
    }


def simple_coefficients(grading, root):
    """Expansion of a root over the simple system."""
    simples = grading.rd.simple
    k = len(simples)
    matrix = [[Fraction(simples[i][j]) for i in range(k)] for j in range(k)]
    if len(root) != k:
        raise ConsistencyError("root length mismatch")
    return _solve_rational(matrix, [Fraction(c) for c in root])


def theta_height(grading, root):
    """Sum of simple coefficients, the theta/2 slot excluded."""
    n = simple_coefficients(grading, root)
    ht = sum(n[:-1])
    if ht.denominator != 1:
        raise ConsistencyError("non-integral height at %s" % (root,))
    return int(ht)


def compute_h0(grading):
    """The unique h0 in h^e with [h0, e_alpha] = ht_theta(alpha) e_alpha.

    Only defined for parity type odd, where theta/2 is the last simple
    root; its coefficient is dropped from the height.
    """
    if grading.parity_type != "odd":
        raise PreconditionError("h0 is only defined for parity type odd")
    g, rd = grading.base, grading.rd
    cartan = list(g.cartan)
    k = len(cartan)
    rows = [[Fraction(a) for a in alpha] for alpha in rd.simple]
    rhs = [Fraction(1)] * (k - 1) + [Fraction(0)]
    sol = _solve_rational(rows, rhs)
    base_vec = {cartan[i]: scalar(c) for i, c in enumerate(sol) if c}
    if theta_height(grading, rd.theta) != 0:
        raise ConsistencyError("theta is not twice the last simple root")

    solver = LinearSolver(g.dim)
    for j in list(grading.hes) + [grading.hth]:
        vec = grading._letter_vectors[j]
        solver.add(j, [vec.get(i, ZERO) for i in range(g.dim)])
    combo = solver.solve([base_vec.get(i, ZERO) for i in range(g.dim)])
    if combo is None:
        raise ConsistencyError("h0 escaped the Cartan")
    h0 = {i: c for i, c in combo.items() if c}
    if h0.get(grading.hth):
        raise ConsistencyError("h0 has a component along h_theta")

    alg = grading.algebra
    for i in range(alg.dim):
        root = grading.root_of_letter(i)
        if root is None:
            continue
        want = theta_height(grading, root)
        got = alg.bracket(h0, {i: ONE})
        if got != ({i: scalar(want)} if want else {}):
            raise ConsistencyError("h0 eigenvalue check failed at %d" % i)
    return h0


class WeightData:
    """delta, rho and rho_{e,0} restricted to h^e, plus the induced pairing.

    Functionals are value tuples over the h^e letters; ``pair`` applies
    the inverse Gram matrix of that basis.
    """

    def __init__(self, letters, delta_bar, rho_bar, rho_e0_bar, gram):
        self.letters = letters
        self.delta_bar = delta_bar
        self.rho_bar = rho_bar
        self.rho_e0_bar = rho_e0_bar
        self.gram = gram

    def pair(self, phi, psi):
        if not self.letters:
            return Fraction(0)
        x = _solve_rational([list(r) for r in self.gram], list(psi))
        return sum(Fraction(a) * b for a, b in zip(phi, x))

    def zero(self):
        return tuple(Fraction(0) for _ in self.letters)

    def add(self, phi, psi):
        return tuple(a + b for a, b in zip(phi, psi))


def weights_delta_rho(grading):
    """The shift weights on h^e and the Gram matrix of the h^e letters."""
    g = grading.algebra
    s, r = grading.s, grading.r
    rest = grading.restrict_weight
    zero = tuple(Fraction(0) for _ in grading.hes)

    def acc(total, root, sign):
        vals = rest(root)
        return tuple(t + sign * v for t, v in zip(total, vals))

    delta = zero
    for i in range(s // 2):
        delta = acc(delta, grading.root_of_letter(grading.us[i]),
                    Fraction(-1, 2))
    for i in range(r // 2):
        delta = acc(delta, grading.root_of_letter(grading.vs[i]),
                    Fraction(1, 2))

    rho = zero
    for root in grading.rd.positive:
        sign = Fraction(-1 if grading.rd.parity[root] else 1, 2)
        rho = acc(rho, root, sign * grading.rd.multiplicity(root))

    rho_e0 = zero
    for root in grading._beta_even:
        rho_e0 = acc(rho_e0, root, Fraction(1, 2))
    for root in grading._beta_odd:
        rho_e0 = acc(rho_e0, root, Fraction(-1, 2))

    gram = tuple(
        tuple(g.form[a][b].as_fraction() for b in grading.hes)
        for a in grading.hes)
    return WeightData(grading.hes, delta, rho, rho_e0, gram)
