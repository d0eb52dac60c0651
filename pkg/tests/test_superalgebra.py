from fractions import Fraction

import pytest

from minwsuper.errors import PreconditionError, UnsupportedFamilyError
from minwsuper.scalar import ONE, scalar
from minwsuper.superalgebra import (
    build_algebra,
    classify_minimal_case,
    minimal_root_candidates,
    parse_descriptor,
    root_decomposition,
    validate,
    weight_form,
)

DIMS = {
    "osp:1|2": (3, 2),
    "spo:2|3": (6, 6),
    "sl:2|1": (4, 4),
    "sl:2|3": (12, 12),
    "psl:2|2": (6, 8),
    "gl:2|1": (5, 4),
    "spo:4|1": (10, 4),
    "spo:2|4": (9, 8),
    "spo:4|2": (11, 8),
}


@pytest.fixture(scope="module")
def algebras():
    return {desc: build_algebra(desc) for desc in DIMS}


def test_descriptor_parsing():
    assert parse_descriptor("spo:2|3") == ("spo", (2, 3))
    assert parse_descriptor("osp:3|2") == ("spo", (2, 3))
    assert parse_descriptor("osp:1|2") == ("spo", (2, 1))
    assert parse_descriptor("gl:2|1") == ("gl", (2, 1))
    for bad in ("sl:2|2", "gl:3|3", "q:3", "d21a:1", "spo:3|2", "sl:2", "x"):
        with pytest.raises(UnsupportedFamilyError):
            parse_descriptor(bad)


def test_dimensions(algebras):
    for desc, (ev, od) in DIMS.items():
        g = algebras[desc]
        assert (g.dim_even, g.dim_odd) == (ev, od), desc


def test_validate_clean(algebras):
    for desc, g in algebras.items():
        assert validate(g) == [], desc


def test_validate_detects_damage():
    g = build_algebra("sl:2|1")
    # find a nonzero structure constant and corrupt it
    key = next(k for k, v in g._bracket.items() if v)
    tgt = next(iter(g._bracket[key]))
    g._bracket[key][tgt] = g._bracket[key][tgt] + ONE
    assert validate(g) != []


def test_bracket_bilinearity(algebras):
    g = algebras["spo:2|3"]
    x = {0: scalar(2), 3: scalar(Fraction(-1, 2))}
    y = {1: ONE, 4: scalar(3)}
    lhs = g.bracket(x, y)
    acc = {}
    for i, xi in x.items():
        for j, yj in y.items():
            for k, s in g.bracket_basis(i, j).items():
                acc[k] = acc.get(k, scalar(0)) + xi * yj * s
    acc = {k: v for k, v in acc.items() if v}
    assert lhs == acc


def test_form_matches_pair(algebras):
    g = algebras["sl:2|1"]
    for i in range(g.dim):
        for j in range(g.dim):
            got = g.pair(g.basis_element(i), g.basis_element(j))
            assert got == g.form[i][j]


# -- root systems --------------------------------------------------------


def halves(theta):
    return tuple(c / 2 for c in theta)


def test_roots_osp12(algebras):
    rd = root_decomposition(algebras["osp:1|2"])
    th = rd.theta
    assert set(rd.roots) == {
        th,
        tuple(-c for c in th),
        halves(th),
        tuple(-c for c in halves(th)),
    }
    assert rd.parity[th] == 0
    assert rd.parity[halves(th)] == 1
    assert rd.simple == [halves(th)]
    assert rd.positive == {th, halves(th)}


def test_roots_sl21(algebras):
    rd = root_decomposition(algebras["sl:2|1"])
    ev = [r for r in rd.roots if rd.parity[r] == 0]
    od = [r for r in rd.roots if rd.parity[r] == 1]
    assert len(ev) == 2 and len(od) == 4
    assert len(rd.simple) == 2
    assert rd.simple[-1] == rd.theta
    pair = weight_form(algebras["sl:2|1"])
    first = rd.simple[0]
    # odd simple root sitting in degree -1 relative to theta
    assert rd.parity[first] == 1
    assert 2 * pair(first, rd.theta) / pair(rd.theta, rd.theta) == -1


def test_roots_spo23(algebras):
    g = algebras["spo:2|3"]
    rd = root_decomposition(g)
    th = rd.theta
    half = halves(th)
    assert len(rd.roots) == 10
    assert sum(1 for r in rd.roots if rd.parity[r] == 0) == 4
    assert rd.parity[half] == 1
    # simple system ends with theta/2 in the odd case
    assert rd.simple[-1] == half
    assert len(rd.simple) == 2
    delta = tuple(a + b for a, b in zip(rd.simple[0], half))
    assert delta in rd.roots and rd.parity[delta] == 0
    assert len(rd.positive) == 5


def test_psl22_root_multiplicities(algebras):
    rd = root_decomposition(algebras["psl:2|2"])
    assert len(rd.roots) == 8
    for r in rd.roots:
        assert rd.multiplicity(r) == (2 if rd.parity[r] else 1)


def test_positive_system_closed(algebras):
    for desc in ("spo:2|3", "sl:2|3", "spo:4|2", "psl:2|2"):
        rd = root_decomposition(algebras[desc])
        roots = set(rd.roots)
        assert len(rd.positive) * 2 == len(rd.roots)
        for a in rd.positive:
            neg = tuple(-c for c in a)
            assert not rd.is_positive(neg)
            for b in rd.positive:
                s = tuple(x + y for x, y in zip(a, b))
                if s in roots:
                    assert rd.is_positive(s), (desc, a, b)


def test_simple_roots_indecomposable(algebras):
    for desc in ("sl:2|3", "spo:2|4", "spo:4|1"):
        rd = root_decomposition(algebras[desc])
        pos = sorted(rd.positive)
        for s in rd.simple:
            for a in pos:
                if a == s:
                    continue
                b = tuple(x - y for x, y in zip(s, a))
                assert not rd.is_positive(b), (desc, s, a)


def test_minimal_candidates(algebras):
    g = algebras["osp:1|2"]
    cands = minimal_root_candidates(g)
    rd = root_decomposition(g)
    assert rd.theta in cands
    assert tuple(-c for c in rd.theta) in cands
    assert len(cands) == 2
    with pytest.raises(PreconditionError):
        root_decomposition(g, theta=halves(rd.theta))


def test_theta_hint_respected(algebras):
    g = algebras["spo:2|3"]
    cands = minimal_root_candidates(g)
    other = next(c for c in cands if c != root_decomposition(g).theta)
    rd = root_decomposition(g, theta=other)
    assert rd.theta == other
    assert rd.simple[-1] == halves(other)


# -- classification -------------------------------------------------------

CLASSIFY = {
    "osp:1|2": ("odd", "trivial", True, 1, 0),
    "spo:2|3": ("odd", "so(3)", True, 3, 0),
    "sl:2|1": ("even", "gl(1)", False, 2, 0),
    "sl:2|3": ("even", "gl(3)", False, 6, 0),
    "psl:2|2": ("even", "sl(2)", True, 4, 0),
    "spo:4|1": ("odd", "spo(2|1)", True, 1, 2),
    "spo:2|4": ("even", "so(4)", True, 4, 0),
    "spo:4|2": ("even", "spo(2|2)", False, 2, 2),
}


def test_classification(algebras):
    for desc, (ptype, label, red, r, s) in CLASSIFY.items():
        g = algebras[desc]
        info = classify_minimal_case(g, root_decomposition(g).theta)
        assert info["parity_type"] == ptype, desc
        assert info["ge0_label"] == label, desc
        assert info["completely_reducible"] is red, desc
        assert (info["r"], info["s"]) == (r, s), desc


def test_classification_large():
    g = build_algebra("psl:3|3")
    info = classify_minimal_case(g, root_decomposition(g).theta)
    assert info["ge0_label"] == "sl(1|3)"
    assert not info["completely_reducible"]


def test_r_s_match_grading_dimensions(algebras):
    for desc, g in algebras.items():
        rd = root_decomposition(g)
        pair = weight_form(g)
        tt = pair(rd.theta, rd.theta)
        r = s = 0
        for root in rd.roots:
            if 2 * pair(root, rd.theta) / tt == -1:
                if rd.parity[root]:
                    r += rd.multiplicity(root)
                else:
                    s += rd.multiplicity(root)
        info = classify_minimal_case(g, rd.theta)
        assert (info["r"], info["s"]) == (r, s), desc
        assert s % 2 == 0
        assert (r % 2 == 1) == (info["parity_type"] == "odd")
