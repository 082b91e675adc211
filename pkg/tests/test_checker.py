import random

import pytest

from gwreath import (
    Cyclic,
    GraphError,
    Instance,
    Symmetric,
    WreathElement,
    check_cond2,
    check_cond3,
    check_finitely_presented,
    classify,
    classify_wreath,
    quotient_graph,
    separate,
    separation_bound,
    verify_certificate,
)
from gwreath.checker import NOT_RESIDUALLY_FINITE, RESIDUALLY_FINITE, UNKNOWN
from gwreath.graphs import residues_of

from tests.support import (
    complete_z_graph,
    edgeless_graph,
    factorial_graph,
    k5_cyclic,
    line_graph,
    random_wreath,
    two_orbit_graph,
)

C2 = Cyclic(2)
C3 = Cyclic(3)
S3 = Symmetric(3)


# ---------------------------------------------------------------------------
# condition 2


def test_cond2_line_abelian_branch_with_modulus_evidence():
    result = check_cond2(Instance(C2, line_graph()))
    assert result.holds is True
    assert result.abelian
    assert result.abelian_rule is not None
    assert result.per_orbit[0].modulus == 2


def test_cond2_line_nonabelian_modulus_two():
    result = check_cond2(Instance(S3, line_graph()))
    assert result.holds is True
    assert not result.abelian
    assert result.per_orbit[0].modulus == 2


def test_cond2_factorial_fails_for_every_modulus():
    result = check_cond2(Instance(S3, factorial_graph(0)))
    assert result.holds is False
    assert result.failing.obstruction.lemma == "factorial-zero"


def test_cond2_shifted_factorial_modulus_four():
    result = check_cond2(Instance(S3, factorial_graph(1)))
    assert result.holds is True
    assert result.per_orbit[0].modulus == 4


def test_cond2_complete_graph_arithmetic_lemma():
    result = check_cond2(Instance(S3, complete_z_graph()))
    assert result.holds is False
    assert result.failing.obstruction.lemma == "arithmetic-zero"


def test_cond2_finite_mode_always_holds():
    result = check_cond2(Instance(S3, k5_cyclic()))
    assert result.holds is True
    assert result.per_orbit[0].subgroup_index == 5  # the trivial subgroup


# ---------------------------------------------------------------------------
# condition 3


def test_cond3_line_rule():
    result = check_cond3(Instance(C2, line_graph()))
    assert result.holds is True
    evidence = result.per_pair[0]
    assert evidence.status == "holds-rule"
    assert evidence.rule == "m(t) = |t| + 1 + 1"


def test_cond3_edgeless_rule_is_point_separation():
    result = check_cond3(Instance(S3, edgeless_graph()))
    assert result.holds is True
    assert result.per_pair[0].rule == "m(t) = |t| + 0 + 1"


def test_cond3_shifted_factorial_fails_at_offset_one():
    result = check_cond3(Instance(C2, factorial_graph(1)))
    assert result.holds is False
    t, obstruction = result.failing.failures[0]
    assert t == 1
    assert obstruction.lemma == "factorial-shift"


def test_cond3_factorial_zero_is_unknown():
    result = check_cond3(Instance(C2, factorial_graph(0)))
    assert result.holds is None
    evidence = result.per_pair[0]
    assert evidence.status == "unknown"
    assert not evidence.failures


def test_cond3_complete_graph_vacuous():
    result = check_cond3(Instance(C2, complete_z_graph()))
    assert result.holds is True
    assert result.per_pair[0].status == "holds-vacuous"


def test_cond3_examined_offsets_record_moduli():
    result = check_cond3(Instance(C2, factorial_graph(0)), bound=64)
    evidence = result.per_pair[0]
    fams = factorial_graph(0).families_for("c", "c")
    for t, m in evidence.examined:
        assert t % m not in (residues_of(fams, m) | {0})


def test_cond3_finite_mode_always_holds():
    result = check_cond3(Instance(S3, k5_cyclic()))
    assert result.holds is True


# ---------------------------------------------------------------------------
# classification of the example instances


def test_classify_line_graph_both_coefficient_kinds():
    assert classify(Instance(C2, line_graph())).status == RESIDUALLY_FINITE
    verdict = classify(Instance(S3, line_graph()))
    assert verdict.status == RESIDUALLY_FINITE
    assert verdict.cond2.per_orbit[0].modulus == 2


def test_classify_factorial_not_separable():
    verdict = classify(Instance(S3, factorial_graph(0)))
    assert verdict.status == NOT_RESIDUALLY_FINITE
    assert verdict.witness.theorem == "T3.1"
    assert verdict.failing_condition == "condition-2"
    assert len(verdict.witness.element.word) == 1


def test_classify_shifted_factorial_pair_failure():
    verdict = classify(Instance(C2, factorial_graph(1)))
    assert verdict.status == NOT_RESIDUALLY_FINITE
    assert verdict.witness.theorem == "T3.2"
    assert verdict.failing_condition == "condition-3"
    assert verdict.cond2.per_orbit[0].modulus == 4
    assert verdict.witness.vertices == (("c", 0), ("c", 1))


def test_classify_complete_graph():
    assert classify(Instance(C2, complete_z_graph())).status == RESIDUALLY_FINITE
    verdict = classify(Instance(S3, complete_z_graph()))
    assert verdict.status == NOT_RESIDUALLY_FINITE
    assert verdict.witness.theorem == "T3.1"


def test_classify_finite_mode_complete():
    assert classify(Instance(S3, k5_cyclic())).status == RESIDUALLY_FINITE


def test_classify_edgeless_free_product_shape():
    assert classify(Instance(S3, edgeless_graph())).status == RESIDUALLY_FINITE


def test_classify_factorial_abelian_is_unknown():
    verdict = classify(Instance(C2, factorial_graph(0)))
    assert verdict.status == UNKNOWN
    assert verdict.failing_condition == "condition-3"
    assert verdict.bound == 64


def test_classify_certified_verdicts_are_bound_monotone():
    cases = [
        Instance(C2, line_graph()),
        Instance(S3, line_graph()),
        Instance(S3, factorial_graph(0)),
        Instance(C2, factorial_graph(1)),
        Instance(C2, complete_z_graph()),
        Instance(S3, complete_z_graph()),
        Instance(S3, k5_cyclic()),
    ]
    for inst in cases:
        small = classify(inst, bound=64)
        large = classify(inst, bound=128)
        assert small.status == large.status
        assert small.certified


# ---------------------------------------------------------------------------
# the specialized complete-graph path


def test_classify_wreath_rows():
    assert classify_wreath(Instance(C2, complete_z_graph())).status == RESIDUALLY_FINITE
    verdict = classify_wreath(Instance(S3, complete_z_graph()))
    assert verdict.status == NOT_RESIDUALLY_FINITE
    assert verdict.witness.theorem == "T3.1"
    assert classify_wreath(Instance(S3, k5_cyclic())).status == RESIDUALLY_FINITE


def test_classify_wreath_agrees_with_classify():
    for inst in (
        Instance(C2, complete_z_graph()),
        Instance(C3, complete_z_graph()),
        Instance(S3, complete_z_graph()),
        Instance(S3, k5_cyclic()),
        Instance(C2, k5_cyclic()),
    ):
        assert classify_wreath(inst).status == classify(inst).status


def test_classify_wreath_requires_complete_graph():
    with pytest.raises(GraphError):
        classify_wreath(Instance(C2, line_graph()))


# ---------------------------------------------------------------------------
# certified negatives really are universal


def test_factorial_obstruction_holds_to_one_hundred():
    fams = factorial_graph(0).families_for("c", "c")
    for m in range(1, 101):
        assert 0 in residues_of(fams, m)


def test_factorial_quotients_always_have_loops():
    graph = factorial_graph(0)
    for m in range(1, 101):
        q = quotient_graph(graph, m)
        assert q.loops == frozenset(q.vertices)


# ---------------------------------------------------------------------------
# soundness coupling: separable verdicts make separation succeed


@pytest.mark.parametrize(
    "inst",
    [Instance(C2, line_graph()), Instance(S3, line_graph()), Instance(C3, two_orbit_graph())],
    ids=["line-c2", "line-s3", "two-orbit-c3"],
)
def test_separation_succeeds_within_rule_bound(inst):
    rng = random.Random(83)
    verdict = classify(inst)
    assert verdict.status == RESIDUALLY_FINITE
    done = 0
    while done < 50:
        x = random_wreath(inst, rng, max_len=4, window=3)
        if inst.is_identity_element(x):
            continue
        done += 1
        bound = separation_bound(inst, verdict, x)
        cert = separate(inst, x, bound=bound)
        assert cert.modulus <= bound
        assert verify_certificate(inst, cert)


def test_separation_bound_requires_separable_verdict():
    inst = Instance(C2, factorial_graph(0))
    verdict = classify(inst)
    with pytest.raises(GraphError):
        separation_bound(inst, verdict, WreathElement(inst.identity_element().word, 1))


# ---------------------------------------------------------------------------
# finite presentation


def test_fp_line_graph():
    report = check_finitely_presented(Instance(C2, line_graph()))
    assert report.finitely_presented
    assert report.vertex_orbits == 1 and report.edge_orbits == 1


def test_fp_factorial_fails_on_edge_orbits():
    report = check_finitely_presented(Instance(S3, factorial_graph(0)))
    assert not report.finitely_presented
    assert report.edge_orbits is None
    failing = [c for c in report.conditions if not c.ok]
    assert [c.name for c in failing] == ["finitely-many-orbits"]


def test_fp_complete_graph_fails():
    report = check_finitely_presented(Instance(C3, complete_z_graph()))
    assert not report.finitely_presented


def test_fp_finite_mode_holds():
    report = check_finitely_presented(Instance(S3, k5_cyclic()))
    assert report.finitely_presented
