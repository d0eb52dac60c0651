"""Minimal-root gradings: triples, pairings, subalgebras, weights."""

import random
from fractions import Fraction

import pytest

from minwsuper.errors import PreconditionError
from minwsuper.grading import (
    MinimalGrading,
    WeightData,
    admissible_subalgebras,
    compute_h0,
    grade,
    neg_one_bases,
    select_minimal_root,
    theta_height,
    weights_delta_rho,
)
from minwsuper.scalar import ONE, ZERO, scalar
from minwsuper.superalgebra import LinearSolver, build_algebra, validate

NAMES = ["osp:1|2", "spo:2|3", "sl:2|1", "psl:2|2", "spo:2|4",
         "spo:4|1", "sl:2|3", "spo:4|2", "gl:2|1"]

ODD_NAMES = ["osp:1|2", "spo:2|3", "spo:4|1"]


@pytest.fixture(scope="module")
def gradings():
    return {name: grade(build_algebra(name)) for name in NAMES}


def _eq(x, y):
    keys = set(x) | set(y)
    return all(not (x.get(k, ZERO) - y.get(k, ZERO)) for k in keys)


def _smul(c, x):
    out = {}
    for i, v in x.items():
        t = scalar(c) * v
        if t:
            out[i] = t
    return out


def test_rebased_algebra_still_validates(gradings):
    for name in ["osp:1|2", "spo:2|3", "psl:2|2", "spo:4|2"]:
        assert validate(gradings[name].algebra) == []


def test_triple_normalization(gradings):
    for name, mg in gradings.items():
        alg = mg.algebra
        e, h, f = {mg.e: ONE}, {mg.hth: ONE}, {mg.f: ONE}
        assert _eq(alg.bracket(e, f), h), name
        assert alg.pair(e, f) == ONE, name
        assert alg.pair(h, h).as_fraction() == 2, name
        assert _eq(alg.bracket(h, e), _smul(2, e)), name
        assert _eq(alg.bracket(h, f), _smul(-2, f)), name


def test_degree_dims_osp12(gradings):
    mg = gradings["osp:1|2"]
    assert mg.dims_per_degree() == {
        -2: (1, 0), -1: (0, 1), 0: (1, 0), 1: (0, 1), 2: (1, 0)}
    assert (mg.s, mg.r, mg.parity_type) == (0, 1, "odd")


def test_degree_data_consistency(gradings):
    for name, mg in gradings.items():
        dims = mg.dims_per_degree()
        assert sum(a + b for a, b in dims.values()) == mg.base.dim
        assert dims[-1] == (mg.s, mg.r)
        assert dims[2] == (1, 0) and dims[-2] == (1, 0)
        assert dims[1] == dims[-1]
        assert mg.degrees[mg.e] == 2
        assert mg.f == mg.base.dim - 1 and mg.degrees[mg.f] == -2
        assert mg.degree_of({mg.hth: ONE}) == 0


def test_five_part_table_for_odd_type(gradings):
    for name in ODD_NAMES:
        mg = gradings[name]
        alg = mg.algebra
        e, h, f, E, F = mg.triple()
        br = alg.bracket
        assert _eq(br(h, E), E), name
        assert _eq(br(h, F), _smul(-1, F)), name
        assert _eq(br(e, E), {}), name
        assert _eq(br(e, F), _smul(-1, E)), name
        assert _eq(br(f, E), _smul(-1, F)), name
        assert _eq(br(f, F), {}), name
        assert _eq(br(E, E), _smul(2, e)), name
        assert _eq(br(E, F), h), name
        assert _eq(br(F, F), _smul(-2, f)), name


def test_even_type_has_no_extra_pair(gradings):
    mg = gradings["sl:2|1"]
    assert mg.E is None and mg.F is None and mg.vmid is None
    assert len(mg.triple()) == 3


def test_midline_vector(gradings):
    # v_mid squares to f and spans the -theta/2 root space
    for name in ODD_NAMES:
        mg = gradings[name]
        vmid = {mg.vmid: ONE}
        assert _eq(mg.algebra.bracket(vmid, vmid), {mg.f: ONE}), name
        half = tuple(-c / 2 for c in mg.theta)
        assert mg.root_of_letter(mg.vmid) == half, name
    mg = gradings["spo:2|3"]
    assert mg.vmid == mg.vs[1]


def test_neg_one_duality(gradings):
    for name, mg in gradings.items():
        alg = mg.algebra
        nb = neg_one_bases(mg)
        z, zs = nb["z"], nb["zstar"]
        assert len(z) == mg.s + mg.r
        for a in range(len(z)):
            for b in range(len(z)):
                val = mg.chi(alg.bracket(zs[a], z[b]))
                if a == b:
                    assert val == ONE, (name, a)
                else:
                    assert not val, (name, a, b)


def test_neg_one_pairing_matrices(gradings):
    # <u_i, u_j> = -delta for i <= s/2, +delta above; <v_i, v_j> symmetric
    for name in ["spo:4|1", "spo:4|2", "spo:2|3", "psl:2|2"]:
        mg = gradings[name]
        alg = mg.algebra
        s, r = mg.s, mg.r
        for i in range(s):
            for j in range(s):
                val = mg.chi(alg.bracket({mg.us[i]: ONE}, {mg.us[j]: ONE}))
                if i + j == s - 1:
                    want = -1 if i < s // 2 else 1
                    assert val.as_fraction() == want, (name, i, j)
                else:
                    assert not val, (name, i, j)
        for i in range(r):
            for j in range(r):
                val = mg.chi(alg.bracket({mg.vs[i]: ONE}, {mg.vs[j]: ONE}))
                if i + j == r - 1:
                    assert val == ONE, (name, i, j)
                else:
                    assert not val, (name, i, j)


def test_admissible_spans(gradings):
    for name, mg in gradings.items():
        sub = admissible_subalgebras(mg)
        low = sum(1 for d in mg.degrees if d <= -2)
        want = low + (mg.s + mg.r - (mg.r % 2)) // 2
        assert len(sub["m"]) == want, name
        assert sub["n"] == (mg.f,)
        assert len(sub["nprime"]) == 1 + mg.s + mg.r
        assert len(sub["l"]) == mg.s + mg.r - (mg.r % 2)
        # m is a subalgebra and chi kills its brackets
        alg = mg.algebra
        solver = LinearSolver(alg.dim)
        for i in sub["m"]:
            solver.add(i, [ONE if j == i else ZERO for j in range(alg.dim)])
        for a in sub["m"]:
            for b in sub["m"]:
                out = alg.bracket({a: ONE}, {b: ONE})
                assert not mg.chi(out), (name, a, b)
                dense = [out.get(j, ZERO) for j in range(alg.dim)]
                assert solver.solve(dense) is not None, (name, a, b)


def test_osp12_small_subalgebras(gradings):
    mg = gradings["osp:1|2"]
    sub = admissible_subalgebras(mg)
    assert sub["m"] == (mg.f,)
    assert set(sub["mprime"]) == {mg.f, mg.vmid}
    assert sub["l"] == ()
    assert set(sub["nzero"]) == {mg.f}


def test_nzero_not_isotropic_when_r_is_3(gradings):
    # chi does not kill [n0, n0] here: v1 and v3 pair to f
    mg = gradings["spo:2|3"]
    out = mg.algebra.bracket({mg.vs[0]: ONE}, {mg.vs[2]: ONE})
    assert _eq(out, {mg.f: ONE})
    assert mg.chi(out) == ONE
    sub = admissible_subalgebras(mg)
    assert mg.vs[0] in sub["nzero"] and mg.vs[2] in sub["nzero"]


def test_centralizer_letters(gradings):
    for name, mg in gradings.items():
        alg = mg.algebra
        e = {mg.e: ONE}
        letters = mg.centralizer_letters()
        for i in letters:
            assert not alg.bracket({i: ONE}, e), (name, alg.labels[i])
        # compare against the brute-force kernel of ad e
        solver = LinearSolver(alg.dim)
        rank = 0
        for j in range(alg.dim):
            col = alg.bracket({j: ONE}, e)
            dense = [col.get(i, ZERO) for i in range(alg.dim)]
            if any(map(bool, dense)) and solver.add(j, dense):
                rank += 1
        assert len(letters) == alg.dim - rank, name


def test_chi_nzero_kernel(gradings):
    # on degrees >= -1 the chi([n0, .]) system cuts out exactly the
    # centralizer of e, extended by v_mid in the odd case
    from minwsuper.superalgebra import _rational_kernel

    for name in ["osp:1|2", "spo:2|3", "sl:2|1", "spo:4|1", "psl:2|2"]:
        mg = gradings[name]
        alg = mg.algebra
        sub = admissible_subalgebras(mg)
        space = [i for i in range(alg.dim) if mg.degrees[i] >= -1]
        rows = []
        for b in sub["nzero"]:
            rows.append([
                mg.chi(alg.bracket({b: ONE}, {x: ONE})).as_fraction()
                for x in space])
        ker = _rational_kernel(rows, len(space))
        want = len(mg.centralizer_letters()) + (mg.r % 2)
        assert len(ker) == want, name
        # membership: every claimed kernel vector really lies in it
        claimed = [{i: ONE} for i in mg.centralizer_letters()]
        if mg.parity_type == "odd":
            claimed.append({mg.vmid: ONE})
        for vec in claimed:
            for b in sub["nzero"]:
                assert not mg.chi(alg.bracket({b: ONE}, vec)), name


def test_sharp_projection(gradings):
    mg = gradings["spo:2|3"]
    alg = mg.algebra
    h = {mg.hth: ONE}
    assert mg.sharp(h) == {}
    for i in mg.hes + mg.xs + mg.xstars:
        x = {i: ONE}
        assert mg.sharp(x) == x
    mixed = {mg.hth: scalar(3), mg.hes[0]: ONE}
    out = mg.sharp(mixed)
    assert not alg.pair(h, out)


def test_h0_values(gradings):
    assert compute_h0(gradings["osp:1|2"]) == {}
    for name in ["spo:2|3", "spo:4|1"]:
        mg = gradings[name]
        h0 = compute_h0(mg)
        assert set(h0) <= set(mg.hes), name
        alg = mg.algebra
        e = {mg.e: ONE}
        assert not alg.bracket(h0, e), name
        assert not alg.bracket(h0, {mg.vmid: ONE}), name
        # simple roots other than theta/2 get height one
        for alpha in mg.rd.simple[:-1]:
            idx = mg.rd.spaces[alpha][0]
            pos = [i for i in range(alg.dim)
                   if mg.root_of_letter(i) == alpha]
            vec = {pos[0]: ONE}
            assert _eq(alg.bracket(h0, vec), vec), name


def test_h0_even_type_rejected(gradings):
    with pytest.raises(PreconditionError):
        compute_h0(gradings["sl:2|1"])


def test_heights_are_integers(gradings):
    for name in ODD_NAMES:
        mg = gradings[name]
        assert theta_height(mg, mg.theta) == 0
        for root in mg.rd.roots:
            theta_height(mg, root)


def test_minimal_root_hints():
    g = build_algebra("spo:2|3")
    theta = select_minimal_root(g)
    other = tuple(-c for c in theta)
    assert select_minimal_root(g, other) == other
    mg = grade(g, other)
    assert mg.theta == other
    nb = neg_one_bases(mg)
    for a, (zv, zs) in enumerate(zip(nb["z"], nb["zstar"])):
        assert mg.chi(mg.algebra.bracket(zs, zv)) == ONE


def test_short_root_hint_rejected():
    # the length-one even root of the orthogonal block is not minimal
    g = build_algebra("spo:2|3")
    theta = select_minimal_root(g)
    short = None
    from minwsuper.superalgebra import root_decomposition
    rd = root_decomposition(g, theta)
    for root in rd.roots:
        if not rd.parity[root] and root != theta and root != tuple(
                -c for c in theta):
            short = root
            break
    assert short is not None
    with pytest.raises(PreconditionError) as err:
        select_minimal_root(g, short)
    assert "candidates" in str(err.value)


def test_weight_fixtures(gradings):
    wd = weights_delta_rho(gradings["osp:1|2"])
    assert wd.letters == ()
    assert wd.delta_bar == () and wd.rho_bar == () and wd.rho_e0_bar == ()
    assert wd.pair((), ()) == 0

    mg = gradings["spo:2|3"]
    wd = weights_delta_rho(mg)
    # half the restriction of the single even positive root of degree zero
    beta = mg._beta_even[0]
    half_beta = tuple(Fraction(v, 2) for v in mg.restrict_weight(beta))
    assert wd.rho_e0_bar == half_beta
    assert wd.delta_bar == (Fraction(-1, 2),)


def test_rho_restriction_identity(gradings):
    # rho_{e,0} and rho - 2 delta agree on h^e
    for name, mg in gradings.items():
        wd = weights_delta_rho(mg)
        lhs = wd.rho_e0_bar
        rhs = tuple(r - 2 * d for r, d in zip(wd.rho_bar, wd.delta_bar))
        assert lhs == rhs, name
        assert mg.restrict_weight(mg.theta) == wd.zero(), name


def test_delta_from_dual_roots(gradings):
    # the same weight computed through the dual gamma* system
    for name, mg in gradings.items():
        wd = weights_delta_rho(mg)
        zero = wd.zero()
        total = zero
        for i in range(mg.s // 2):
            gamma = mg.root_of_letter(mg.us[i])
            star = tuple(-t - c for t, c in zip(mg.theta, gamma))
            vals = mg.restrict_weight(star)
            total = tuple(t + Fraction(1, 2) * v for t, v in zip(total, vals))
        for i in range(mg.r // 2):
            gamma = mg.root_of_letter(mg.vs[i])
            star = tuple(-t - c for t, c in zip(mg.theta, gamma))
            vals = mg.restrict_weight(star)
            total = tuple(t - Fraction(1, 2) * v for t, v in zip(total, vals))
        assert total == wd.delta_bar, name


def test_pairing_invariant_under_basis_change(gradings):
    rng = random.Random(7)
    mg = gradings["sl:2|3"]
    wd = weights_delta_rho(mg)
    n = len(wd.letters)
    base_val = wd.pair(wd.delta_bar, wd.rho_bar)
    for _ in range(5):
        while True:
            a = [[Fraction(rng.randint(-3, 3)) for _ in range(n)]
                 for _ in range(n)]
            try:
                from minwsuper.superalgebra import _solve_rational
                _solve_rational(a, [Fraction(0)] * n)
                break
            except StopIteration:
                continue
        def mat(v):
            return tuple(sum(a[i][j] * v[j] for j in range(n))
                         for i in range(n))
        gram2 = tuple(
            tuple(sum(a[i][p] * wd.gram[p][q] * a[j][q]
                      for p in range(n) for q in range(n))
                  for j in range(n))
            for i in range(n))
        wd2 = WeightData(wd.letters, mat(wd.delta_bar), mat(wd.rho_bar),
                         mat(wd.rho_e0_bar), gram2)
        assert wd2.pair(wd2.delta_bar, wd2.rho_bar) == base_val


def test_grading_report(gradings):
    rep = gradings["osp:1|2"].to_json_dict()
    assert rep["s"] == 0 and rep["r"] == 1
    assert rep["parity_type"] == "odd"
    assert rep["dims_per_degree"]["-1"] == [0, 1]
    assert rep["subalgebra_dims"]["m"] == 1
    assert rep["subalgebra_dims"]["mprime"] == 2
    import json
    assert json.dumps(rep, sort_keys=True)
