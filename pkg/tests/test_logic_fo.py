import itertools

import pytest

from fsgame import bisim, hierarchy
from fsgame.logic import fo
from fsgame.logic.fo import (
    Equal,
    Exists,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    RelAtom,
    SizeConvention,
    eval_fo,
    fo_size,
    make_phi,
    make_psi,
    print_fo,
)


def test_fo_size_conventions():
    psi1 = make_psi(1)
    assert fo_size(psi1) == 11
    assert fo_size(psi1, SizeConvention.ATOMIC_ZERO) == 7
    assert fo_size(make_psi(2)) == 2 * 11 + 13
    assert fo_size(RelAtom("x", "y"), SizeConvention.ATOMIC_ZERO) == 0
    assert fo_size(RelAtom("x", "y")) == 1
    assert fo_size(Not(Equal("x", "y"))) == 1
    assert fo_size(Or(RelAtom("x", "y"), Equal("x", "y"))) == 3


def test_closed_forms():
    for n in range(1, 11):
        assert fo_size(make_psi(n)) == 3 * 2 ** (n + 2) - 13
        assert fo_size(make_phi(n)) == 3 * 2 ** (n + 2) - 7


def test_make_psi_base_shape():
    psi1 = make_psi(1)
    assert isinstance(psi1, Iff)
    assert isinstance(psi1.left, Exists)
    assert psi1.left.body == RelAtom("x", psi1.left.var)
    assert fo.free_vars(psi1) == {"x", "y"}
    assert fo.free_vars(make_phi(2)) == {"x"}


def test_make_psi_rejects_zero():
    with pytest.raises(ValueError):
        make_psi(0)
    with pytest.raises(ValueError):
        make_phi(0)


def test_eval_fo_on_level_two_frame():
    f2 = hierarchy.frame(2)
    psi1 = make_psi(1)
    empty, single = "{}", "{{}}"
    assert eval_fo(f2, psi1, {"x": empty, "y": empty})
    assert not eval_fo(f2, psi1, {"x": empty, "y": single})


def test_eval_fo_basics():
    f2 = hierarchy.frame(2)
    assert eval_fo(f2, RelAtom("x", "y"), {"x": "{{}}", "y": "{}"})
    assert not eval_fo(f2, RelAtom("x", "y"), {"x": "{}", "y": "{{}}"})
    assert eval_fo(f2, Equal("x", "y"), {"x": "{}", "y": "{}"})
    assert eval_fo(f2, Exists("z", RelAtom("z", "x")), {"x": "{}"})
    assert not eval_fo(f2, Forall("z", RelAtom("z", "x")), {"x": "{}"})
    assert eval_fo(f2, Implies(RelAtom("x", "x"), Equal("x", "y")), {"x": "{}", "y": "{{}}"})


def test_eval_fo_rejects_unbound_and_unknown():
    f2 = hierarchy.frame(2)
    with pytest.raises(ValueError, match="unbound"):
        eval_fo(f2, RelAtom("x", "y"), {"x": "{}"})
    with pytest.raises(ValueError, match="not a world"):
        eval_fo(f2, RelAtom("x", "x"), {"x": "nope"})


def test_phi_fails_at_pair_join_root(e1):
    assert not eval_fo(e1.model, make_phi(1), {"x": e1.point})


def test_phi_separates_families(vv1, ee1):
    phi1 = make_phi(1)
    assert all(eval_fo(p.model, phi1, {"x": p.point}) for p in vv1)
    assert all(not eval_fo(q.model, phi1, {"x": q.point}) for q in ee1)


def test_psi_matches_bounded_bisimulation():
    # cross-check the formula family against the refinement-based check
    for n in (1, 2):
        frame = hierarchy.frame(n + 1)
        level = sorted(hierarchy.v_level(n + 1))
        psi = make_psi(n)
        for a, b in itertools.product(level, repeat=2):
            via_fo = eval_fo(frame, psi, {"x": a.encoding, "y": b.encoding})
            via_ref = (
                bisim.n_bisimilar(hierarchy.model_of(a), hierarchy.model_of(b), n) is not None
            )
            assert via_fo == via_ref, (n, a.encoding, b.encoding)


def test_print_fo_mentions_structure():
    text = print_fo(make_phi(1))
    assert text.startswith("∀y")
    assert "R(x,y)" in text and "↔" in text
