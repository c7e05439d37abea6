from __future__ import annotations

import pytest

from g2rig.graph import Graph, enumerate_graphs, is_complete
from g2rig.liealg import BasisLabel
from g2rig.rigidity import (
    AbelianFactor,
    AbelianSpecialCase,
    CohomologyVanishes,
    FreeComplete,
    Method,
    RigidityVerdict,
    Status,
    TheoremDWitness,
    classify_graph,
    expected_verdict,
    strip_isolated,
    theorem_d_witness,
    three_rigid_flag,
    witness_is_sound,
)

from conftest import named


@pytest.mark.parametrize("name,status,kind", [
    ("K2", Status.RIGID, "FreeComplete"),
    ("K2+pt", Status.RIGID, "AbelianFactor"),
    ("P3", Status.RIGID, "CohomologyVanishes"),
    ("2K2", Status.RIGID, "CohomologyVanishes"),
    ("C4", Status.RIGID, "CohomologyVanishes"),
    ("K4", Status.RIGID, "FreeComplete"),
    ("P4", Status.NON_RIGID, "TheoremDWitness"),
    ("star4", Status.NON_RIGID, "TheoremDWitness"),
    ("P3+pt", Status.NON_RIGID, "AbelianFactor"),
    ("K2+2pt", Status.NON_RIGID, "AbelianFactor"),
    ("K5-e", Status.NON_RIGID, "TheoremDWitness"),
])
def test_named_verdicts(name, status, kind):
    g = named(name)
    v = classify_graph(g, Method.WITH_COHOMOLOGY)
    assert v.status is status
    assert v.certificate.kind == kind
    assert v.certificate.check(g)


@pytest.mark.parametrize("m,status", [(1, Status.RIGID), (2, Status.RIGID), (3, Status.NON_RIGID), (5, Status.NON_RIGID)])
def test_abelian(m, status):
    v = classify_graph(Graph.empty(m))
    assert v.status is status
    assert isinstance(v.certificate, AbelianSpecialCase)


def test_combinatorial_leaves_cohomology_cases_undecided():
    for g in (Graph.star(2), Graph.cycle(4), Graph.from_edges(4, [(1, 2), (3, 4)])):
        assert classify_graph(g, Method.COMBINATORIAL).status is Status.UNDECIDED
        assert classify_graph(g, Method.AUTO).status is Status.RIGID


def test_cap_too_small_is_undecided():
    v = classify_graph(Graph.cycle(4), Method.WITH_COHOMOLOGY, cap=7)
    assert v.status is Status.UNDECIDED
    assert v.h2_nil_dim is None


def test_witness_examples():
    assert theorem_d_witness(Graph.star(4)) == TheoremDWitness(2, 3, BasisLabel.edge(1, 4))
    assert theorem_d_witness(named("P3+pt")) == TheoremDWitness(2, 3, BasisLabel.vertex(4))
    assert theorem_d_witness(named("K5-e")) == TheoremDWitness(4, 5, BasisLabel.edge(1, 2))
    assert theorem_d_witness(Graph.cycle(4)) is None
    assert theorem_d_witness(Graph.complete(5)) is None


@pytest.mark.parametrize("m", [5, 6])
def test_every_witness_is_sound(m):
    for g in enumerate_graphs(m):
        w = theorem_d_witness(g)
        if w is None:
            continue
        assert w.check(g)
        if m == 5:
            assert witness_is_sound(g, w) == (True, True)


def test_bad_witnesses_fail_check():
    g = Graph.path(4)
    assert not TheoremDWitness(1, 2, BasisLabel.edge(3, 4)).check(g)   # adjacent pair
    assert not TheoremDWitness(1, 3, BasisLabel.edge(1, 2)).check(g)   # z is covered
    assert not TheoremDWitness(1, 4, BasisLabel.vertex(2)).check(g)    # v2 is not isolated
    assert not TheoremDWitness(1, 9, BasisLabel.edge(2, 3)).check(g)


def test_other_certificates_check():
    g = named("K2+2pt")
    assert AbelianFactor(Graph.complete(2), 2, False).check(g)
    assert not AbelianFactor(Graph.complete(2), 2, True).check(g)
    assert not AbelianFactor(Graph.complete(2), 1, False).check(g)
    assert FreeComplete(3).check(Graph.complete(3))
    assert not FreeComplete(3).check(Graph.path(3))
    assert not AbelianSpecialCase(3).check(Graph.path(3))
    good = classify_graph(Graph.cycle(4)).certificate
    assert isinstance(good, CohomologyVanishes)
    assert not CohomologyVanishes(0, good.dims).check(Graph.star(3))


@pytest.mark.parametrize("status,cert", [
    (Status.RIGID, None),
    (Status.RIGID, TheoremDWitness(1, 3, BasisLabel.edge(1, 2))),
    (Status.NON_RIGID, FreeComplete(3)),
    (Status.NON_RIGID, AbelianFactor(Graph.complete(2), 1, True)),
    (Status.RIGID, AbelianSpecialCase(3)),
])
def test_verdict_rejects_wrong_pairing(status, cert):
    with pytest.raises(ValueError):
        RigidityVerdict(status, cert)


def test_strip_isolated():
    assert strip_isolated(Graph.from_edges(5, [(2, 4)])) == Graph.complete(2)
    with pytest.raises(ValueError):
        strip_isolated(Graph.empty(3))


def test_expected_and_three_rigid():
    assert expected_verdict(Graph.complete(7)) is Status.RIGID
    assert expected_verdict(Graph.cycle(4).relabel([2, 4, 1, 3])) is Status.RIGID
    assert expected_verdict(Graph.path(4)) is Status.NON_RIGID
    assert three_rigid_flag(Graph.complete(2))
    assert three_rigid_flag(Graph.empty(2))
    assert three_rigid_flag(Graph.empty(1))
    assert not three_rigid_flag(Graph.complete(3))


def test_verdict_json():
    g = Graph.star(4)
    data = classify_graph(g).to_json(g)
    assert data["status"] == "non_rigid"
    assert data["certificate"] == {"kind": "TheoremDWitness", "i": 2, "j": 3, "z_label": "a14"}
    assert data["three_rigid"] is False


def test_decisions_agree_with_expected_up_to_six():
    for m in range(1, 7):
        for g in enumerate_graphs(m):
            v = classify_graph(g, Method.COMBINATORIAL)
            if v.status is not Status.UNDECIDED:
                assert v.status is expected_verdict(g), g
            if m >= 5:
                assert v.status is (Status.RIGID if is_complete(g) else Status.NON_RIGID)
