from itertools import combinations

import pytest
from conftest import brute_hall_ok

from frepkit import (
    BatchPlan,
    BudgetExceededError,
    FrbDefinitionError,
    FrCode,
    NoPlan,
    ParameterError,
    batch_t,
    batch_t_detail,
    frb_certify,
    from_design,
    from_graph,
    projective_plane,
    retrieval_plan,
    theorem5_predicted_t,
    transversal_design,
    turan,
)
from frepkit.construct import cage
from frepkit.matching import hall_witness, maximum_matching


class TestMatching:
    def test_perfect_matching(self):
        match = maximum_matching([[1, 2], [1], [2, 3]])
        assert None not in match
        assert len(set(match)) == 3

    def test_deficient_graph_witness(self):
        neighbors = [[1], [1], [1, 2]]
        match = maximum_matching(neighbors)
        assert match.count(None) == 1
        witness, neighborhood = hall_witness(neighbors, match)
        assert set(witness) == {0, 1}
        assert neighborhood == [1]

    def test_deterministic(self):
        neighbors = [[2, 1], [1, 3], [3, 2], [2]]
        assert maximum_matching(neighbors) == maximum_matching(neighbors)


class TestRetrievalPlan:
    def test_k33_every_five_symbol_request_has_a_plan(self):
        code = from_graph(turan(6, 2))
        for request in combinations(range(1, 10), 5):
            plan = retrieval_plan(code, request)
            assert isinstance(plan, BatchPlan)

    def test_k33_induced_k32_has_no_plan(self):
        code = from_graph(turan(6, 2))
        # parts are {1,2,3} and {4,5,6}; the edges inside {1,2,3,4,5} form an
        # induced K_{3,2}: 6 symbols stored on only 5 nodes
        request = [j for j, ends in enumerate(_edge_endpoints(code), start=1)
                   if set(ends) <= {1, 2, 3, 4, 5}]
        assert len(request) == 6
        result = retrieval_plan(code, request)
        assert isinstance(result, NoPlan)
        assert len(result.neighborhood) == 5
        assert len(result.witness) == 6

    def test_single_symbol_always_plannable(self):
        for code in [from_graph(turan(3, 3)), from_design(transversal_design(3, 4))]:
            for j in range(1, code.theta + 1):
                assert isinstance(retrieval_plan(code, [j]), BatchPlan)

    def test_plans_are_valid_assignments(self):
        code = from_design(transversal_design(3, 4))
        plan = retrieval_plan(code, range(1, 12))
        assert isinstance(plan, BatchPlan)
        nodes_used = [node for _, node in plan.assignment]
        assert len(set(nodes_used)) == len(nodes_used)
        for symbol, node in plan.assignment:
            assert symbol in code.node_sets[node - 1]

    def test_plan_text_export(self):
        code = from_graph(turan(3, 3))
        plan = retrieval_plan(code, [1, 3])
        lines = plan.to_text().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("1 -> node ")

    def test_duplicate_request_rejected(self):
        code = from_graph(turan(3, 3))
        with pytest.raises(ParameterError, match="distinct"):
            retrieval_plan(code, [1, 1, 2])

    def test_out_of_range_request_rejected(self):
        code = from_graph(turan(3, 3))
        with pytest.raises(ParameterError):
            retrieval_plan(code, [4])

    def test_hall_duality_exhaustive_small(self):
        # matcher verdict must coincide with Hall's condition on every
        # request of these theta <= 12 codes
        codes = [
            from_graph(turan(3, 3)),
            from_graph(turan(6, 2)),
            FrCode(4, 4, 2, 2, [(1, 2), (1, 2), (3, 4), (3, 4)]),
            from_design(projective_plane(2)),
        ]
        for code in codes:
            for r in range(1, code.theta + 1):
                for request in combinations(range(1, code.theta + 1), r):
                    plannable = isinstance(retrieval_plan(code, request), BatchPlan)
                    assert plannable == brute_hall_ok(code, request)


class TestBatchT:
    def test_k33(self):
        assert batch_t(from_graph(turan(6, 2))) == 5

    def test_td34(self):
        assert batch_t(from_design(transversal_design(3, 4))) == 11

    def test_td34_published_block_list(self, paper_td34):
        assert batch_t(from_design(paper_td34)) == 11

    def test_triangle_reaches_theta(self):
        detail = batch_t_detail(from_graph(turan(3, 3)))
        assert detail.t == 3
        assert detail.witness is None

    def test_petersen_exact(self):
        assert batch_t(from_graph(cage("petersen"))) == 7

    def test_maximality_certificates_k33(self):
        code = from_graph(turan(6, 2))
        detail = batch_t_detail(code)
        assert detail.t == 5
        # certificate 1: every 5-subset has a plan
        for request in combinations(range(1, 10), 5):
            assert isinstance(retrieval_plan(code, request), BatchPlan)
        # certificate 2: the witness 6-subset has none
        assert len(detail.witness) == 6
        assert isinstance(retrieval_plan(code, detail.witness), NoPlan)

    def test_maximality_certificates_td34(self):
        code = from_design(transversal_design(3, 4))
        detail = batch_t_detail(code)
        assert detail.t == 11
        for request in combinations(range(1, 17), 11):
            assert isinstance(retrieval_plan(code, request), BatchPlan)
        assert isinstance(retrieval_plan(code, detail.witness), NoPlan)

    def test_budget_refusal(self):
        code = from_design(transversal_design(3, 4))
        with pytest.raises(BudgetExceededError):
            batch_t(code, budget=3)


class TestFrbCertify:
    def test_k33_tuple(self):
        cert = frb_certify(from_graph(turan(6, 2)), k=3)
        assert cert.tuple_str == "2-(6, 7, 3, 3, 5)"
        assert cert.all_properties_hold

    def test_td34_tuple(self):
        cert = frb_certify(from_design(transversal_design(3, 4)), k=4)
        assert cert.tuple_str == "3-(12, 11, 4, 4, 11)"
        assert cert.all_properties_hold

    def test_petersen_tuple(self):
        cert = frb_certify(from_graph(cage("petersen")), k=4)
        assert (cert.rho, cert.n, cert.file_size, cert.k, cert.alpha) == (2, 10, 9, 4, 3)
        assert cert.t == 7
        assert cert.t >= theorem5_predicted_t("girth", g=5)

    def test_t_exceeding_m_is_reported_not_clipped(self):
        # at k = 1 the K33 code stores only M = 3 < t = 5
        with pytest.raises(FrbDefinitionError, match="t = 5 exceeds file size M = 3"):
            frb_certify(from_graph(turan(6, 2)), k=1)

    def test_k_beyond_n_rejected(self):
        with pytest.raises(ParameterError):
            frb_certify(from_graph(turan(6, 2)), k=7)


class TestTheorem5:
    def test_predictions(self):
        assert theorem5_predicted_t("complete_bipartite", alpha=3) == 5
        assert theorem5_predicted_t("girth", g=5) == 7
        assert theorem5_predicted_t("resolvable_td", alpha=4) == 11

    def test_preconditions(self):
        with pytest.raises(ParameterError):
            theorem5_predicted_t("complete_bipartite", alpha=2)
        with pytest.raises(ParameterError):
            theorem5_predicted_t("resolvable_td", alpha=6)
        with pytest.raises(ParameterError):
            theorem5_predicted_t("no_such_family")

    def test_exact_t_dominates_prediction_in_family(self):
        cases = [
            (from_graph(turan(6, 2)), theorem5_predicted_t("complete_bipartite", alpha=3)),
            (from_graph(turan(8, 2)), theorem5_predicted_t("complete_bipartite", alpha=4)),
            (from_graph(cage("petersen")), theorem5_predicted_t("girth", g=5)),
            (from_graph(cage("heawood")), theorem5_predicted_t("girth", g=6)),
            (from_design(transversal_design(3, 4)),
             theorem5_predicted_t("resolvable_td", alpha=4)),
        ]
        for code, predicted in cases:
            assert batch_t(code) >= predicted


def _edge_endpoints(code):
    """Recover each symbol's two endpoints from a rho=2 code."""
    return [tuple(i for i, s in enumerate(code.node_sets, start=1) if j in s)
            for j in range(1, code.theta + 1)]
