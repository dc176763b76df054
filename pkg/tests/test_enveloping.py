"""Rewriting, truncated bases, confluence, the induced action, division."""

import dataclasses
import random

import pytest

from lrhopf import (
    DegreeOverflowError,
    LrhInputError,
    NCElement,
    build_rewrite_system,
    certify_left_action,
    check_local_confluence,
    enumerate_basis,
    left_action_on_R,
    left_divide,
    l_letter,
    multiply_truncated,
    normal_form,
    r_letter,
    relation_elements,
)
from lrhopf.enveloping import find_redex, pair_rule, word_degree

import oracles

MACRON = "̄"


def _rand_element(rng, system, max_terms=4, max_len=3):
    letters = [r_letter(i) for i in range(1, system.r_dim)]
    letters += [l_letter(a) for a in range(system.l_dim)]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        word = tuple(rng.choice(letters)
                     for _ in range(rng.randint(0, max_len)))
        c = system.field.scalar(rng.randint(-3, 3))
        terms[word] = terms.get(word, system.field.zero) + c
    return NCElement(system.field, {w: c for w, c in terms.items() if c})


# ------------------------------------------------------------------ rules

def test_build_refuses_unvalidated(q):
    made = oracles.random_character_candidate(random.Random(3), q)
    assert made is not None
    data = oracles.candidate_data(*made)
    assert not data.validated
    with pytest.raises(LrhInputError):
        build_rewrite_system(data)


def test_rule_instantiation_obstructed(obstructed, q):
    system = obstructed[5]
    # a-bar x -> x a-bar + y  (the anchor sends x to y)
    rhs = pair_rule(system, l_letter(0), r_letter(1))
    assert rhs == [((r_letter(1), l_letter(0)), q.one),
                   ((r_letter(2),), q.one)]
    # x a-bar -> 0 because chi(x) = 0, an empty right-hand side
    assert pair_rule(system, r_letter(1), l_letter(0)) == []
    # x x -> 0 in the base algebra
    assert pair_rule(system, r_letter(1), r_letter(1)) == []
    # a nondecreasing L-pair is irreducible
    assert pair_rule(system, l_letter(0), l_letter(0)) is None


def test_rule_instantiation_euler(euler, q):
    system = euler[5]
    rhs = pair_rule(system, l_letter(0), r_letter(1))
    assert rhs == [((r_letter(1), l_letter(0)), q.one),
                   ((r_letter(1),), q.one)]


def test_find_redex_strategies(obstructed):
    system = obstructed[5]
    word = (r_letter(1), l_letter(0), r_letter(1))
    assert find_redex(word, system, "leftmost") == 0
    assert find_redex(word, system, "rightmost") == 1
    assert find_redex((l_letter(0), l_letter(0)), system, "leftmost") == -1
    with pytest.raises(LrhInputError):
        find_redex(word, system, "sideways")


# ----------------------------------------------------------- normal forms

def test_normal_forms_frozen(obstructed, q):
    system = obstructed[5]
    nf = lambda *word: normal_form(NCElement.from_word(q, word), system)
    y_elem = NCElement.from_word(q, (r_letter(2),))
    assert nf(l_letter(0), r_letter(1)) == y_elem
    assert not nf(r_letter(2), l_letter(0))
    assert not nf(r_letter(1), l_letter(0))
    assert not nf(l_letter(0), r_letter(1), r_letter(1))
    # an irreducible word stays put
    tall = (l_letter(0),) * 5
    assert nf(*tall) == NCElement.from_word(q, tall)


def test_normal_form_reorders_abelian(classical, q):
    data = classical(("b1", "b2"), {})
    system = build_rewrite_system(data)
    swapped = NCElement.from_word(q, (l_letter(1), l_letter(0)))
    sorted_ = NCElement.from_word(q, (l_letter(0), l_letter(1)))
    assert normal_form(swapped, system) == sorted_


def test_normal_form_nonabelian_correction(classical, q):
    data = classical(("b1", "b2"), {(0, 1): (q.one, q.zero)})
    system = build_rewrite_system(data)
    swapped = NCElement.from_word(q, (l_letter(1), l_letter(0)))
    out = normal_form(swapped, system)
    assert system.render_element(out) == f"-b1{MACRON} + b1{MACRON} b2{MACRON}"


def test_normal_form_is_linear(obstructed):
    system = obstructed[5]
    rng = random.Random(9)
    for _ in range(40):
        a = _rand_element(rng, system)
        b = _rand_element(rng, system)
        assert normal_form(a + b, system) == \
            normal_form(a, system) + normal_form(b, system)


def test_strategies_agree_on_random_elements(obstructed):
    system = obstructed[5]
    rng = random.Random(7)
    for _ in range(200):
        elem = _rand_element(rng, system)
        left = normal_form(elem, system, "leftmost")
        right = normal_form(elem, system, "rightmost")
        assert left == right


def test_filtration_respected(obstructed):
    """Rewriting never raises the L-degree of a product."""
    system = obstructed[5]
    rng = random.Random(13)
    for _ in range(60):
        a = _rand_element(rng, system)
        b = _rand_element(rng, system)
        out = normal_form(a.concat(b), system)
        if out:
            assert out.degree <= a.degree + b.degree


def test_relations_normalize_to_zero(obstructed):
    system = obstructed[5]
    rels = relation_elements(system)
    names = [name for name, _ in rels]
    assert len(rels) == 8
    assert names == ["merge[x,x]", "merge[x,y]", "merge[y,x]", "merge[y,y]",
                     "straighten[a,x]", "straighten[a,y]",
                     "absorb[x,a]", "absorb[y,a]"]
    for name, rel in rels:
        assert not normal_form(rel, system), name


def test_relations_vanish_nonabelian(classical, q):
    data = classical(("b1", "b2"), {(0, 1): (q.one, q.zero)})
    system = build_rewrite_system(data)
    rels = relation_elements(system)
    assert [name for name, _ in rels] == ["bracket[b2,b1]"]
    for name, rel in rels:
        assert not normal_form(rel, system), name


# -------------------------------------------------------- truncated bases

def test_basis_frozen_obstructed(obstructed):
    system = obstructed[5]
    env = enumerate_basis(system, 3)
    assert env.basis_labels() == (
        "1", "x", "y", f"a{MACRON}", f"a{MACRON} a{MACRON}",
        f"a{MACRON} a{MACRON} a{MACRON}")
    assert enumerate_basis(system, 0).dim == obstructed[0].dim


def test_basis_frozen_classical(classical, q):
    one_dim = build_rewrite_system(classical(("b1",), {}))
    assert enumerate_basis(one_dim, 4).dim == 5
    two_dim = build_rewrite_system(classical(("b1", "b2"), {}))
    env = enumerate_basis(two_dim, 2)
    assert env.basis_labels() == (
        "1", f"b1{MACRON}", f"b2{MACRON}", f"b1{MACRON} b1{MACRON}",
        f"b1{MACRON} b2{MACRON}", f"b2{MACRON} b2{MACRON}")


def test_basis_dims_match_counting_oracle(obstructed, classical):
    for degree in range(6):
        env = enumerate_basis(obstructed[5], degree)
        assert env.dim == oracles.pbw_dimension(3, 1, degree)
    for l_dim, labels in ((1, ("b1",)), (2, ("b1", "b2")),
                          (3, ("b1", "b2", "b3"))):
        system = build_rewrite_system(classical(labels, {}))
        for degree in range(5):
            env = enumerate_basis(system, degree)
            assert env.dim == oracles.pbw_dimension(1, l_dim, degree)


def test_negative_degree_refused(obstructed):
    with pytest.raises(LrhInputError):
        enumerate_basis(obstructed[5], -1)


def test_coords_roundtrip_and_overflow(obstructed_env, q):
    env = obstructed_env
    elem = NCElement.from_word(q, (l_letter(0),)) \
        + 2 * NCElement.from_word(q, (r_letter(1),))
    coords = env.coords(elem)
    assert env.element(coords) == elem
    too_tall = NCElement.from_word(q, (l_letter(0),) * (env.degree + 1))
    with pytest.raises(DegreeOverflowError):
        env.coords(too_tall)


def test_multiply_truncated(obstructed_env, q):
    env = obstructed_env
    x = NCElement.from_word(q, (r_letter(1),))
    abar = NCElement.from_word(q, (l_letter(0),))
    unit = NCElement.unit(q)
    for n in (1, 2, 5):
        power = NCElement.from_word(q, (l_letter(0),) * n)
        assert not multiply_truncated(x, power, env)
    assert multiply_truncated(abar, abar, env) == \
        NCElement.from_word(q, (l_letter(0), l_letter(0)))
    assert multiply_truncated(unit, abar, env) == abar
    assert multiply_truncated(abar, unit, env) == abar
    five = NCElement.from_word(q, (l_letter(0),) * 5)
    four = NCElement.from_word(q, (l_letter(0),) * 4)
    with pytest.raises(DegreeOverflowError):
        multiply_truncated(five, multiply_truncated(five, four, env), env)


def test_truncated_product_associative(obstructed_env):
    env = obstructed_env
    system = env.system
    rng = random.Random(21)
    for _ in range(25):
        a = _rand_element(rng, system, max_terms=2, max_len=2)
        b = _rand_element(rng, system, max_terms=2, max_len=2)
        c = _rand_element(rng, system, max_terms=2, max_len=2)
        left = multiply_truncated(multiply_truncated(a, b, env), c, env)
        right = multiply_truncated(a, multiply_truncated(b, c, env), env)
        assert left == right


# -------------------------------------------------------------- confluence

def test_confluence_passes_for_valid_systems(obstructed, euler, classical, q):
    for system in (obstructed[5], euler[5],
                   build_rewrite_system(classical(("b1",), {})),
                   build_rewrite_system(classical(("b1", "b2"), {})),
                   build_rewrite_system(
                       classical(("b1", "b2"), {(0, 1): (q.one, q.zero)}))):
        report = check_local_confluence(enumerate_basis(system, 3))
        assert report.ok, report.witnesses


def test_confluence_detects_corrupted_rule(obstructed, q):
    """Replacing the anchor image of x by the unit (not a derivation)
    breaks joinability, first seen on the word x a-bar x."""
    system = obstructed[5]
    rho = list(map(list, system.rho_table))
    rho[0] = list(rho[0])
    rho[0][1] = (q.one, q.zero, q.zero)
    bad = dataclasses.replace(system,
                              rho_table=tuple(tuple(r) for r in rho))
    report = check_local_confluence(enumerate_basis(bad, 3))
    assert not report.ok
    w = report.witnesses[0]
    assert w["word"] == f"x a{MACRON} x"
    assert w["positions"] == [0, 1]
    assert w["reduct-at-0"] == "0"
    assert w["reduct-at-1"] == "x"


# ------------------------------------------------------------- left action

def test_left_action_frozen(obstructed, obstructed_env, q):
    R = obstructed[0]
    env = obstructed_env
    abar = NCElement.from_word(q, (l_letter(0),))
    x = R.basis_element(1)
    assert left_action_on_R(abar, x, env).coeffs == \
        R.basis_element(2).coeffs
    assert left_action_on_R(NCElement.unit(q), x, env).coeffs == x.coeffs


def test_left_action_is_multiplicative(obstructed, obstructed_env):
    R = obstructed[0]
    env = obstructed_env
    system = env.system
    rng = random.Random(31)
    for _ in range(30):
        v = _rand_element(rng, system, max_terms=2, max_len=2)
        w = _rand_element(rng, system, max_terms=2, max_len=2)
        r = oracles.random_element(rng, R)
        direct = left_action_on_R(v.concat(w), r, env)
        nested = left_action_on_R(v, left_action_on_R(w, r, env), env)
        assert direct.coeffs == nested.coeffs


def test_left_action_factors_through_normal_form(obstructed, obstructed_env):
    R = obstructed[0]
    env = obstructed_env
    system = env.system
    rng = random.Random(32)
    for _ in range(30):
        v = _rand_element(rng, system)
        r = oracles.random_element(rng, R)
        reduced = normal_form(v, system)
        assert left_action_on_R(v, r, env).coeffs == \
            left_action_on_R(reduced, r, env).coeffs


def test_certify_left_action(obstructed_env):
    assert certify_left_action(obstructed_env).ok


def test_certify_rejects_corrupted_system(obstructed, q):
    system = obstructed[5]
    rho = list(map(list, system.rho_table))
    rho[0] = list(rho[0])
    rho[0][1] = (q.one, q.zero, q.zero)
    bad = dataclasses.replace(system,
                              rho_table=tuple(tuple(r) for r in rho))
    report = certify_left_action(enumerate_basis(bad, 3))
    assert not report.ok
    w = report.witnesses[0]
    assert w["relation"] == "straighten[a,x]"
    assert w["argument"] == "x"
    assert w["image"] == "-2*x"


# ---------------------------------------------------------------- division

def test_left_divide_by_unit(obstructed_env, q):
    env = obstructed_env
    target = NCElement.from_word(q, (r_letter(2),))
    out = left_divide(NCElement.unit(q), target, env)
    assert out.feasible
    assert env.element(out.witness) == target


def test_left_divide_witness_frozen(obstructed, q):
    system = obstructed[5]
    env = enumerate_basis(system, 2)
    abar = NCElement.from_word(q, (l_letter(0),))
    target = NCElement.from_word(q, (r_letter(2),))
    out = left_divide(abar, target, env)
    assert out.feasible
    assert system.render_element(env.element(out.witness)) == "x"
    assert out.nullity == 1
    # replay: the witness really does multiply out to the target
    product = normal_form(abar.concat(env.element(out.witness)), system)
    assert product == target


def test_left_divide_infeasible_with_replay(obstructed, q):
    """x never divides y at any truncation level: the image of
    multiplication by x is the line through x itself.  Each certificate
    is replayed against freshly computed products."""
    system = obstructed[5]
    x = NCElement.from_word(q, (r_letter(1),))
    y = NCElement.from_word(q, (r_letter(2),))
    for degree in range(1, 7):
        env = enumerate_basis(system, degree)
        out = left_divide(x, y, env)
        assert not out.feasible
        cert = out.certificate
        assert cert is not None
        extended = enumerate_basis(system, degree)  # deg(x) = 0
        assert len(cert) == extended.dim
        functional = lambda e: sum(
            (u * c for u, c in zip(cert, extended.coords(e))),
            q.zero)
        for word in env.basis:
            product = normal_form(
                x.concat(NCElement.from_word(q, word)), system)
            assert not functional(product)
        assert functional(y)
