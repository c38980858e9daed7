"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every assertion is exact (integer equality or byte equality); the stated
runtime limits are asserted where the criterion sets one.  Run with
`pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
"""

import random
import time
from itertools import combinations

from frepkit import (
    GF,
    batch_t_detail,
    execute_repair,
    file_size,
    fr_capacity_bound,
    frb_certify,
    from_design,
    from_graph,
    girth,
    girth_file_size,
    has_k_clique,
    lemma7_flag,
    max_induced_edges,
    mbr_capacity,
    moore_bound,
    plan_repair,
    reconstruct,
    retrieval_plan,
    store,
    td_file_size_lower_bound,
    theorem5_predicted_t,
    transversal_design,
    turan,
    turan_file_size,
)
from frepkit.batch import NoPlan
from frepkit.construct import cage, cage_catalog


class _Criterion:
    def __init__(self, number, description, limit=None):
        self.number = number
        self.description = description
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        verdict = "PASS" if exc_type is None else "FAIL"
        print(f"{verdict} criterion {self.number} ({elapsed:.2f}s): {self.description}")
        if exc_type is None and self.limit is not None:
            assert elapsed < self.limit, (
                f"criterion {self.number} took {elapsed:.2f}s, limit {self.limit}s")
        return False


def turan_pairs(n_max, include_complete=False):
    for n in range(3 if include_complete else 4, n_max + 1):
        top = n if include_complete else n - 1
        for r in range(2, top + 1):
            if n % r == 0:
                yield n, r


def test_criterion_01_example2_golden_table():
    with _Criterion(1, "TD(3,4) exhaustive file sizes match the published table "
                       "and the recursive bound", limit=1.0):
        code = from_design(transversal_design(3, 4))
        expected = {1: 4, 2: 7, 3: 9, 4: 11}
        for k, value in expected.items():
            assert file_size(code, k) == value
            assert fr_capacity_bound(code.n, k, code.alpha, code.rho) == value


def test_criterion_02_theorem3_turan_sweep():
    with _Criterion(2, "Turan sweep n <= 12: enumeration = closed form = "
                       "recursive bound for all k <= alpha", limit=30.0):
        for n, r in turan_pairs(12):
            code = from_graph(turan(n, r))
            for k in range(1, code.alpha + 1):
                exact = file_size(code, k)
                assert exact == turan_file_size(n, r, k), (n, r, k)
                assert exact == fr_capacity_bound(n, k, code.alpha, 2), (n, r, k)


def test_criterion_03_theorem4_and_lemma5_on_cages():
    with _Criterion(3, "Petersen/Heawood match the girth closed form; the "
                       "girth biconditional holds over the cage catalog", limit=10.0):
        petersen = from_graph(cage("petersen"))
        assert [file_size(petersen, k) for k in range(1, 7)] == [3, 5, 7, 9, 10, 12]
        for k in range(1, 7):
            assert file_size(petersen, k) == girth_file_size(3, 5, k)
        heawood = from_graph(cage("heawood"))
        for k in range(1, 8):  # g + ceil(g/2) - 2 = 7
            assert file_size(heawood, k) == girth_file_size(3, 6, k)
        for info in cage_catalog():
            g = cage(info.name)
            code = from_graph(g)
            assert girth(g) == info.girth
            for k in range(1, info.girth + 1):
                tree_like = file_size(code, k) == k * code.alpha - (k - 1)
                assert (info.girth >= k + 1) == tree_like, (info.name, k)


def test_criterion_04_lemma1_oracle_equivalence():
    with _Criterion(4, "rho=2 codes n <= 12: file size equals k*alpha minus "
                       "the max induced edge count, for every k", limit=60.0):
        graphs = [turan(n, r) for n, r in turan_pairs(12, include_complete=True)]
        graphs.append(cage("petersen"))
        for g in graphs:
            code = from_graph(g)
            for k in range(1, g.v + 1):
                assert file_size(code, k) == k * code.alpha - max_induced_edges(g, k)


def test_criterion_05_lemma2_clique_iff_mbr():
    with _Criterion(5, "clique presence iff file size sits at MBR capacity; "
                       "complete graphs sit exactly there"):
        graphs = [turan(n, r) for n, r in turan_pairs(12, include_complete=True)]
        graphs.append(cage("petersen"))
        for g in graphs:
            code = from_graph(g)
            for k in range(1, g.v + 1):
                assert has_k_clique(g, k) == (
                    file_size(code, k) == mbr_capacity(k, code.alpha))
        for n in range(3, 13):
            complete = from_graph(turan(n, n))
            for k in range(1, complete.alpha + 1):
                assert file_size(complete, k) == mbr_capacity(k, n - 1)


def test_criterion_06_theorem_tdrate():
    with _Criterion(6, "TD(rho, alpha) file sizes dominate the design bound; "
                       "equality at the TD(3,4) table points", limit=60.0):
        for alpha in (3, 4, 5, 7):
            for rho in range(2, alpha + 1):
                code = from_design(transversal_design(rho, alpha))
                for k in range(1, alpha + 1):
                    bound = td_file_size_lower_bound(alpha, rho, k)
                    assert file_size(code, k) >= bound, (rho, alpha, k)
        td34 = from_design(transversal_design(3, 4))
        assert file_size(td34, 3) == td_file_size_lower_bound(4, 3, 3) == 9
        assert file_size(td34, 4) == td_file_size_lower_bound(4, 3, 4) == 11


def test_criterion_07_frb_example3():
    with _Criterion(7, "batch parameters: K33 gives t=5, TD(3,4) gives t=11, "
                       "with Hall-violating maximality witnesses", limit=30.0):
        k33 = from_graph(turan(6, 2))
        td34 = from_design(transversal_design(3, 4))
        for code, expected_t in ((k33, 5), (td34, 11)):
            detail = batch_t_detail(code)
            assert detail.t == expected_t
            assert len(detail.witness) == expected_t + 1
            assert isinstance(retrieval_plan(code, detail.witness), NoPlan)
        assert frb_certify(k33, k=3).tuple_str == "2-(6, 7, 3, 3, 5)"
        assert frb_certify(td34, k=4).tuple_str == "3-(12, 11, 4, 4, 11)"


def test_criterion_08_theorem5_girth_family():
    with _Criterion(8, "Petersen batch parameter reaches the girth-family "
                       "guarantee 2g - floor(g/2) - 1 = 7"):
        code = from_graph(cage("petersen"))
        predicted = theorem5_predicted_t("girth", g=5)
        assert predicted == 7
        assert batch_t_detail(code).t >= predicted


def test_criterion_09_dress_lifecycle(tmp_path):
    with _Criterion(9, "TD(3,4) DRESS over GF(16): all 495 reconstructions "
                       "agree; all 12 repairs byte-identical at bandwidth 4", limit=30.0):
        code = from_design(transversal_design(3, 4))
        rng = random.Random(2024)
        file_symbols = [rng.randrange(16) for _ in range(11)]
        system = store(code, 4, file_symbols, tmp_path / "sys", field=GF(16))
        for subset in combinations(range(1, 13), 4):
            assert reconstruct(system, subset) == file_symbols
        for failed in range(1, 13):
            path = system.node_path(failed)
            original = path.read_bytes()
            path.unlink()
            plan = plan_repair(system, failed, policy="spread")
            assert plan.bandwidth == 4
            assert plan.beta == 1
            execute_repair(system, plan)
            assert path.read_bytes() == original


def test_criterion_10_mds_subset_sweep():
    with _Criterion(10, "MDS (theta=9, M=7): every 7-coordinate subset decodes "
                        "across 1000 seeded trials"):
        from frepkit import MdsCode
        field = GF(16)
        mds = MdsCode(field=field, length=9, dimension=7)
        rng = random.Random(90210)
        subsets = list(combinations(range(9), 7))
        assert len(subsets) == 36
        for _ in range(1000):
            message = [rng.randrange(16) for _ in range(7)]
            codeword = mds.encode(message)
            for subset in subsets:
                assert mds.decode((p, codeword[p]) for p in subset) == message


def test_criterion_11_lemma7_flags():
    with _Criterion(11, "non-tightness window flags and the Moore bound values"):
        assert lemma7_flag(8, 3, 4) is True
        assert lemma7_flag(10, 3, 4) is False
        assert moore_bound(3, 5) == 10
        assert moore_bound(3, 6) == 14
