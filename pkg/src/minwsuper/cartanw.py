"""The small subquotient attached to the centralizer of the level torus.

The letters commuting with every diagonal element h_1..h_{k-1} span a
subalgebra g_0 (the torus plus one small rank-one piece); quotienting
its enveloping algebra by the character ideal at the lowest root vector
and passing to invariants leaves an algebra on very few generators:
the torus letters, one Casimir-like element and, when the odd lowering
block has a midline, an odd pair.  ``build_cartan_w`` re-derives that
presentation from scratch inside the quotient and refuses to hand out
an algebra whose cross-checks disagree with the tabulated relations.

The second half of the module is the weight-zero projection: invariant
cosets decompose along restricted weights, every ordered monomial that
touches a letter with nonzero weight is dropped, and the survivors are
rewritten in the abstract presentation.  A final generator shift (on
the Casimir in type odd, on the torus in type even) turns the raw
projection into an algebra homomorphism.
"""

import weakref
from fractions import Fraction

from .envelope import render_element
from .errors import ConsistencyError, PreconditionError
from .scalar import HALF, ONE, ZERO, scalar
from .wgen import WElement, workspace

EIGHTH = scalar(Fraction(1, 8))


class NotHomogeneousError(PreconditionError):
    """Raised for elements mixing several restricted weights.

    ``components`` maps each weight tuple to the part living there.
    """

    def __init__(self, message, components):
        super().__init__(message)
        self.components = components


def _acc_coords(out, expo, c):
    cur = out.get(expo, ZERO) + c
    if cur:
        out[expo] = cur
    else:
        out.pop(expo, None)


class CartanWElement:
    """Linear combination of ordered generator monomials."""

    __slots__ = ("cw", "coords")

    def __init__(self, cw, coords):
        self.cw = cw
        self.coords = {e: c for e, c in coords.items() if c}

    def is_zero(self):
        return not self.coords

    def __add__(self, other):
        other = self.cw.coerce(other)
        out = dict(self.coords)
        for e, c in other.coords.items():
            _acc_coords(out, e, c)
        return CartanWElement(self.cw, out)

    def __sub__(self, other):
        return self + self.cw.coerce(other).scale(-ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c):
        c = scalar(c)
        return CartanWElement(self.cw, {e: c * v
                                        for e, v in self.coords.items()})

    def __mul__(self, other):
        if not isinstance(other, CartanWElement):
            return self.scale(other)
        if other.cw is not self.cw:
            raise PreconditionError("elements live over different "
                                    "presentations")
        out = {}
        for ea, ca in self.coords.items():
            for eb, cb in other.coords.items():
                for e, c in self.cw.mul_monomials(ea, eb):
                    _acc_coords(out, e, ca * cb * c)
        return CartanWElement(self.cw, out)

    def __rmul__(self, other):
        return self.scale(other)

    def bracket(self, other):
        """Supercommutator, extended bilinearly over monomials."""
        out = self.cw.zero()
        for ea, ca in self.coords.items():
            pa = self.cw.monomial_parity(ea)
            for eb, cb in other.coords.items():
                pb = self.cw.monomial_parity(eb)
                left = CartanWElement(self.cw, {ea: ca})
                right = CartanWElement(self.cw, {eb: cb})
                term = left * right
                back = right * left
                if pa and pb:
                    term = term + back
                else:
                    term = term - back
                out = out + term
        return out

    def coefficient(self, expo):
        return self.coords.get(tuple(expo), ZERO)

    def __eq__(self, other):
        return (isinstance(other, CartanWElement) and self.cw is other.cw
                and self.coords == other.coords)

    def __hash__(self):
        return hash((id(self.cw), tuple(sorted(self.coords))))

    def render(self):
        parts = []
        for expo, c in sorted(self.coords.items(),
                              key=lambda kv: (sum(kv[0]), kv[0])):
            mono = []
            for name, n in zip(self.cw.names, expo):
                if n == 1:
                    mono.append(name + "'")
                elif n > 1:
                    mono.append("%s'^%d" % (name, n))
            word = "*".join(mono) if mono else "1"
            parts.append("(%s)*%s" % (c.render(), word))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "CartanWElement(%s)" % self.render()


class CartanWAlgebra:
    """Finite presentation of the subquotient, one per grading.

    Generators are ordered as the monomial slots: the odd lowering
    generator first, then the torus, the Casimir, and the odd raising
    generator last.  Type even keeps only torus and Casimir and is
    commutative.
    """

    def __init__(self, grading, names, parities, relations, images,
                 rendered_images):
        self.grading = grading
        self.parity_type = grading.parity_type
        self.names = names
        self.parities = parities
        self.relations = relations
        self.images = images
        self.rendered_images = rendered_images
        self._idx = {n: k for k, n in enumerate(names)}
        self._shift = None
        if self.parity_type == "odd":
            self._slot_c = len(names) - 2
            self._slot_e = len(names) - 1
        else:
            self._slot_c = len(names) - 1
            self._slot_e = None

    # -- element constructors -------------------------------------------

    def zero(self):
        return CartanWElement(self, {})

    def unit(self):
        return CartanWElement(self, {(0,) * len(self.names): ONE})

    def gen(self, name):
        if name not in self._idx:
            raise PreconditionError("no generator named %r" % name)
        expo = [0] * len(self.names)
        expo[self._idx[name]] = 1
        return CartanWElement(self, {tuple(expo): ONE})

    def generators(self):
        return [self.gen(n) for n in self.names]

    def element(self, coords):
        return CartanWElement(self, {tuple(e): scalar(c)
                                     for e, c in coords.items()})

    def coerce(self, x):
        if isinstance(x, CartanWElement):
            return x
        return self.unit().scale(scalar(x))

    def monomial_parity(self, expo):
        return sum(n for n, p in zip(expo, self.parities) if p) % 2

    # -- arithmetic -------------------------------------------------------

    def mul_monomials(self, ea, eb):
        """Straightened product of two ordered monomials.

        Torus and Casimir slots are central; the two odd slots square
        to scalars (lowering) or to an affine Casimir term (raising).
        """
        if self.parity_type == "even":
            return [(tuple(a + b for a, b in zip(ea, eb)), ONE)]
        iE = self._slot_e
        iC = self._slot_c
        sign = -ONE if (ea[iE] and eb[0]) else ONE
        merged = [a + b for a, b in zip(ea, eb)]
        coeff = sign
        if merged[0] == 2:
            coeff = -coeff
            merged[0] = 0
        if merged[iE] < 2:
            return [(tuple(merged), coeff)]
        merged[iE] = 0
        low = list(merged)
        merged[iC] += 1
        return [(tuple(merged), coeff * HALF),
                (tuple(low), coeff * EIGHTH * HALF)]

    # -- the homomorphism shift -------------------------------------------

    def shift_map(self):
        """Substitution closing the raw projection into a homomorphism."""
        if self._shift is None:
            if self.parity_type == "odd":
                self._shift = ("C", workspace(self.grading).epsilon())
            else:
                wd = workspace(self.grading).weight_data
                self._shift = ("h", tuple(-d for d in wd.delta_bar))
        return self._shift

    def shift(self, x):
        kind, data = self.shift_map()
        out = self.zero()
        for expo, c in x.coords.items():
            term = self.unit().scale(c)
            for k, n in enumerate(expo):
                base = self.gen(self.names[k])
                if kind == "C" and k == self._slot_c:
                    base = base + self.unit().scale(data)
                elif kind == "h" and 0 <= k < len(data):
                    base = base + self.unit().scale(scalar(data[k]))
                for _ in range(n):
                    term = term * base
            out = out + term
        return out

    # -- reporting ---------------------------------------------------------

    def relation_label(self, a, b):
        return "[%s',%s']" % (a, b)

    def as_json_dict(self):
        rel = {}
        for (a, b), rhs in sorted(self.relations.items()):
            rel[self.relation_label(a, b)] = \
                CartanWElement(self, rhs).render()
        return {
            "parity_type": self.parity_type,
            "generators": [
                {"name": n + "'", "parity": p}
                for n, p in zip(self.names, self.parities)],
            "relations": rel,
            "images": dict(self.rendered_images),
        }


def _relation_table(names, parities, slot_c, parity_type):
    """Tabulated supercommutators; everything not listed is zero."""
    table = {}
    zero_expo = (0,) * len(names)
    for a in range(len(names)):
        for b in range(a, len(names)):
            table[(names[a], names[b])] = {}
    if parity_type == "odd":
        c_expo = list(zero_expo)
        c_expo[slot_c] = 1
        table[("F", "F")] = {zero_expo: scalar(-2)}
        table[(names[-1], names[-1])] = {tuple(c_expo): ONE,
                                         zero_expo: EIGHTH}
    return table


_CARTAN = weakref.WeakKeyDictionary()


def build_cartan_w(grading):
    """Derive the presentation inside the quotient and certify it."""
    cached = _CARTAN.get(grading)
    if cached is not None:
        return cached
    wal = workspace(grading)
    g, gr, pbw = wal.algebra, grading, wal.pbw

    def inj(vec):
        return pbw.inject(vec)

    hnames = [g.labels[i] for i in gr.hes]
    images = {}
    for name, i in zip(hnames, gr.hes):
        images[name] = inj({i: ONE})
    h_word = inj({gr.hth: ONE})
    c_val = pbw.scale(scalar(2), inj({gr.e: ONE}))
    c_val = pbw.add(c_val, pbw.scale(HALF, pbw.mul(h_word, h_word)))
    if gr.parity_type == "odd":
        names = ("F",) + tuple(hnames) + ("C", "E")
        parities = (1,) + (0,) * len(hnames) + (0, 1)
        images["F"] = inj(gr.F)
        e_val = pbw.add(inj(gr.E),
                        pbw.scale(HALF, pbw.mul(inj(gr.F), h_word)))
        e_val = pbw.sub(e_val, pbw.scale(scalar(Fraction(3, 4)),
                                         inj(gr.F)))
        images["E"] = wal.project(e_val)
        c_val = pbw.sub(c_val, pbw.scale(scalar(Fraction(3, 2)), h_word))
        c_val = pbw.add(c_val, pbw.mul(inj(gr.F), inj(gr.E)))
    else:
        names = tuple(hnames) + ("C",)
        parities = (0,) * len(hnames) + (0,)
        c_val = pbw.sub(c_val, h_word)
    images["C"] = wal.project(c_val)

    for name in names:
        bad = wal.project(pbw.commutator(inj({gr.f: ONE}), images[name]))
        if bad:
            raise ConsistencyError(
                "derived %s' is not invariant under the lowest root "
                "vector: %s" % (name, render_element(pbw, bad)))

    slot_c = len(names) - (2 if gr.parity_type == "odd" else 1)
    table = _relation_table(names, parities, slot_c, gr.parity_type)
    unit_expo = (0,) * len(names)
    for a in range(len(names)):
        for b in range(a, len(names)):
            got = wal.comm_raw(images[names[a]], images[names[b]])
            want = {}
            for expo, c in table[(names[a], names[b])].items():
                if expo == unit_expo:
                    want = pbw.add(want, {(): c})
                else:
                    want = pbw.add(want, pbw.scale(c, images["C"]))
            diff = pbw.sub(got, want)
            if diff:
                raise ConsistencyError(
                    "derived bracket [%s',%s'] disagrees with the "
                    "tabulated relation by %s"
                    % (names[a], names[b], render_element(pbw, diff)))

    rendered = {n + "'": render_element(pbw, images[n]) for n in names}
    cw = CartanWAlgebra(grading, names, parities, table, images, rendered)
    _CARTAN[grading] = cw
    return cw


def center_basis(cw):
    """Torus generators plus the Casimir; certified by commuting."""
    if cw.parity_type == "odd":
        central = [cw.gen(n) for n in cw.names[1:-1]]
    else:
        central = [cw.gen(n) for n in cw.names]
    gens = cw.generators()
    for elem in central:
        for gen in gens:
            diff = elem * gen - gen * elem
            if not diff.is_zero():
                raise ConsistencyError(
                    "claimed central element fails to commute: %s"
                    % diff.render())
    return central


class VLambdaModule:
    """Smallest weight module of the presentation.

    Type odd carries an odd square root of -1 and is two-dimensional
    with a fixed Casimir level; type even is a line with a free level.
    """

    __slots__ = ("cw", "weight", "level", "dims", "actions", "type_flag")

    def __init__(self, cw, weight, level, dims, actions, type_flag):
        self.cw = cw
        self.weight = weight
        self.level = level
        self.dims = dims
        self.actions = actions
        self.type_flag = type_flag

    def action(self, name):
        return self.actions[name]

    def __repr__(self):
        lam = ", ".join(v.render() for v in self.weight)
        return "VLambdaModule(weight=(%s), level=%s, type %s)" % (
            lam, self.level.render(), self.type_flag)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)),
                           ZERO) for j in range(n)) for i in range(n))


def simple_module(cw, lam, c=None):
    """The module with highest weight ``lam`` (and level ``c`` if even)."""
    hnames = [n for n in cw.names if n not in ("F", "C", "E")]
    lam = tuple(scalar(v) for v in lam)
    if len(lam) != len(hnames):
        raise PreconditionError(
            "weight needs one value per torus generator (%d given, "
            "%d needed)" % (len(lam), len(hnames)))
    if cw.parity_type == "odd":
        if c is not None:
            raise PreconditionError("the Casimir level is forced to -1/8 "
                                    "here; a free level only exists in "
                                    "type even")
        level = -EIGHTH
        actions = {}
        for name, v in zip(hnames, lam):
            actions[name] = ((v, ZERO), (ZERO, v))
        actions["C"] = ((level, ZERO), (ZERO, level))
        actions["E"] = ((ZERO, ZERO), (ZERO, ZERO))
        actions["F"] = ((ZERO, -ONE), (ONE, ZERO))
        mod = VLambdaModule(cw, lam, level, (1, 1), actions, "Q")
        ff = _mat_mul(actions["F"], actions["F"])
        if ff != ((-ONE, ZERO), (ZERO, -ONE)):
            raise ConsistencyError("odd involution squares to %r" % (ff,))
        return mod
    if c is None:
        raise PreconditionError("type even needs an explicit Casimir level")
    level = scalar(c)
    actions = {name: ((v,),) for name, v in zip(hnames, lam)}
    actions["C"] = ((level,),)
    return VLambdaModule(cw, lam, level, (1, 0), actions, "M")


def restricted_weight(x):
    """Common weight of all words of ``x``; the zero element has weight 0.

    Raises :class:`NotHomogeneousError` with the weight decomposition
    when several weights occur.
    """
    wal = x.wal
    gr = wal.grading
    zero = tuple(Fraction(0) for _ in gr.hes)
    comps = {}
    for word, c in x.value.items():
        wt = zero
        for i in word:
            root = gr.root_of_letter(i)
            if root is not None:
                wt = tuple(a + b for a, b in zip(wt,
                                                 gr.restrict_weight(root)))
        comps.setdefault(wt, {})[word] = c
    if not comps:
        return zero
    if len(comps) == 1:
        return next(iter(comps))
    split = {wt: WElement(wal, part, wal.pbw.kazhdan_degree(part), x.flavor)
             for wt, part in sorted(comps.items())}
    raise NotHomogeneousError(
        "not homogeneous: %d distinct restricted weights %s"
        % (len(split), sorted(split)), split)


def _positive_functional(vectors):
    """Rational functional with value >= 1 on every vector, or None.

    Plain Fourier-Motzkin elimination; the systems here are tiny (a
    handful of restricted roots in rank at most a few).
    """
    if not vectors:
        return ()
    d = len(vectors[0])
    rows = [(tuple(Fraction(a) for a in alpha), Fraction(1))
            for alpha in vectors]
    stack = []
    for var in range(d - 1, 0, -1):
        lows, highs, keep = [], [], []
        for coeffs, const in rows:
            c = coeffs[var]
            head = coeffs[:var]
            if c > 0:
                lows.append((tuple(-a / c for a in head), const / c))
            elif c < 0:
                highs.append((tuple(-a / c for a in head), const / c))
            else:
                keep.append((head, const))
        stack.append((var, lows, highs))
        rows = keep + [
            (tuple(h - l for h, l in zip(hc, lc)), lk - hk)
            for lc, lk in lows for hc, hk in highs]
    lo = hi = None
    for coeffs, const in rows:
        c = coeffs[0]
        if c > 0 and (lo is None or const / c > lo):
            lo = const / c
        elif c < 0 and (hi is None or const / c < hi):
            hi = const / c
        elif c == 0 and const > 0:
            return None
    if lo is None:
        lo = hi if hi is not None else Fraction(0)
    if hi is not None and lo > hi:
        return None
    out = [Fraction(0)] * d
    out[0] = lo
    for var, lows, highs in reversed(stack):
        lo_v = hi_v = None
        for bc, bk in lows:
            val = bk + sum(c * out[j] for j, c in enumerate(bc))
            if lo_v is None or val > lo_v:
                lo_v = val
        for bc, bk in highs:
            val = bk + sum(c * out[j] for j, c in enumerate(bc))
            if hi_v is None or val < hi_v:
                hi_v = val
        if lo_v is None:
            lo_v = hi_v if hi_v is not None else Fraction(0)
        out[var] = lo_v
    return tuple(out)


class RestrictedRootData:
    """Nonzero weights of the level torus with the dominance order.

    ``positive`` holds the weights of the raising letters; dominance
    asks for a nonnegative integer combination of those.  A strictly
    positive functional on the positive set bounds the search, so the
    comparator always terminates.
    """

    def __init__(self, grading, positive, roots):
        self.grading = grading
        self.positive = positive
        self.roots = roots
        self._ell = _positive_functional(positive)
        self._memo = {}
        if self._ell is None:
            raise ConsistencyError(
                "positive restricted roots are not contained in an open "
                "half-space; the dominance order would not be a partial "
                "order: %s" % (positive,))

    def _height(self, phi):
        return sum(a * b for a, b in zip(self._ell, phi))

    def dominates(self, lam, mu):
        """True when lam - mu is a nonnegative integer root combination."""
        diff = tuple(Fraction(a) - Fraction(b) for a, b in zip(lam, mu))
        return self._expressible(0, diff)

    def _expressible(self, idx, diff):
        if not any(diff):
            return True
        key = (idx, diff)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        ok = False
        if idx < len(self.positive) and self._height(diff) > 0:
            alpha = self.positive[idx]
            step = self._height(alpha)
            top = int(self._height(diff) / step)
            for n in range(top, -1, -1):
                rest = tuple(d - n * a for d, a in zip(diff, alpha))
                if self._height(rest) >= 0 and self._expressible(idx + 1,
                                                                 rest):
                    ok = True
                    break
        self._memo[key] = ok
        return ok


_ROOTS = weakref.WeakKeyDictionary()


def restricted_roots(grading):
    """Weight data of the torus action on the whole algebra."""
    cached = _ROOTS.get(grading)
    if cached is not None:
        return cached
    wal = workspace(grading)
    gr = grading
    raising = (tuple(gr.fstars) + tuple(gr.gstars) + tuple(gr.xstars)
               + tuple(gr.ystars))
    positive = set()
    for i in raising:
        wt = gr.restrict_weight(gr.root_of_letter(i))
        if any(wt):
            positive.add(wt)
    roots = set()
    for i in range(wal.algebra.dim):
        root = gr.root_of_letter(i)
        if root is None:
            continue
        wt = gr.restrict_weight(root)
        if any(wt):
            roots.add(wt)
    negatives = {tuple(-v for v in wt) for wt in positive}
    if roots != positive | negatives:
        raise ConsistencyError(
            "restricted roots do not split into raising weights and "
            "their negatives: %s" % sorted(roots - positive - negatives))
    data = RestrictedRootData(grading, tuple(sorted(positive)),
                              frozenset(roots))
    _ROOTS[grading] = data
    return data


def _survivor_slots(wal, cw):
    """Map from monomial slots onto presentation images, in slot order."""
    gr = wal.grading
    out = []
    if gr.parity_type == "odd":
        out.append((wal.generator_index("F"),
                    cw.gen("F").scale(gr.F[gr.vmid].inv())))
    for i in gr.hes:
        name = wal.algebra.labels[i]
        out.append((wal.generator_index(name), _image_of_torus(wal, cw, i)))
    out.append((wal.generator_index("C"), _image_of_casimir(wal, cw)))
    if gr.parity_type == "odd":
        name = wal.algebra.labels[gr.gmid]
        coeff = gr.E[gr.gmid].inv()
        out.append((wal.generator_index(name), cw.gen("E").scale(coeff)))
    return out


def _image_of_torus(wal, cw, letter):
    wd = wal.weight_data
    pos = list(wal.grading.hes).index(letter)
    name = wal.algebra.labels[letter]
    return cw.gen(name) + cw.unit().scale(scalar(wd.delta_bar[pos]))


def _image_of_casimir(wal, cw):
    """Casimir image: the abstract Casimir plus torus corrections."""
    gr = wal.grading
    acc = cw.gen("C")
    hnames = [wal.algebra.labels[i] for i in gr.hes]
    ginv = wal._gram_inverse()
    for i in range(len(hnames)):
        for j in range(len(hnames)):
            if ginv[i][j]:
                acc = acc + (cw.gen(hnames[i])
                             * cw.gen(hnames[j])).scale(scalar(ginv[i][j]))
    wd = wal.weight_data
    functional = tuple(2 * r + 4 * d
                       for r, d in zip(wd.rho_e0_bar, wd.delta_bar))
    for letter, coeff in wal.dual_cartan(functional).items():
        acc = acc + cw.gen(wal.algebra.labels[letter]).scale(coeff)
    return acc


def project_pi(x, shifted=True):
    """Image of a weight-zero invariant in the abstract presentation.

    Monomials touching any slot outside the surviving set vanish; the
    rest are rewritten through the generator images.  With ``shifted``
    the result is composed with the closing shift, giving the algebra
    homomorphism rather than the bare linear projection.
    """
    wal = x.wal
    cw = build_cartan_w(wal.grading)
    wt = restricted_weight(x)
    if any(wt):
        raise PreconditionError(
            "projection only applies at restricted weight zero; this "
            "element has weight %s" % (wt,))
    survivors = _survivor_slots(wal, cw)
    keep = {slot for slot, _ in survivors}
    out = cw.zero()
    for expo, c in wal.pbw_coordinates(x.value).items():
        if any(n and k not in keep for k, n in enumerate(expo)):
            continue
        term = cw.unit().scale(c)
        for slot, image in survivors:
            for _ in range(expo[slot]):
                term = term * image
        out = out + term
    if shifted:
        out = cw.shift(out)
    return out
