"""Batch-retrieval analysis: one-symbol-per-node plans and the exact batch
parameter t.

A batch of symbols is retrievable when the symbol/node incidence admits a
system of distinct representatives; t is the largest size at which every
batch works, which by Hall's theorem is one less than the smallest
deficient symbol set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .analyze import DEFAULT_BUDGET, file_size
from .errors import BudgetExceededError, FrbDefinitionError, ParameterError
from .galois import GF
from .incidence import FrCode, validate
from .matching import hall_witness, maximum_matching

__all__ = [
    "BatchPlan",
    "NoPlan",
    "retrieval_plan",
    "batch_t",
    "batch_t_detail",
    "BatchTResult",
    "frb_certify",
    "FrbCertificate",
    "theorem5_predicted_t",
]


@dataclass(frozen=True)
class BatchPlan:
    """An injective symbol -> node assignment covering the whole request."""

    symbols: tuple[int, ...]
    assignment: tuple[tuple[int, int], ...]  # (symbol, node) pairs, symbol-ascending

    def to_text(self) -> str:
        return "\n".join(f"{j} -> node {i}" for j, i in self.assignment) + "\n"


@dataclass(frozen=True)
class NoPlan:
    """Proof that the request is not retrievable one-symbol-per-node.

    The witness symbols jointly touch fewer nodes than their count, so no
    assignment can be injective on nodes.
    """

    symbols: tuple[int, ...]
    witness: tuple[int, ...]
    neighborhood: tuple[int, ...]


def retrieval_plan(code: FrCode, symbols) -> BatchPlan | NoPlan:
    """Plan a parallel retrieval of the requested symbols, or explain why none exists."""
    request = tuple(sorted(symbols))
    if len(set(request)) != len(request):
        raise ParameterError("requested symbols must be distinct")
    for j in request:
        if not 1 <= j <= code.theta:
            raise ParameterError(f"symbol {j} out of range 1..{code.theta}")
    holders = code.nodes_of_symbol
    neighbors = [holders[j - 1] for j in request]
    match = maximum_matching(neighbors)
    if all(node is not None for node in match):
        return BatchPlan(symbols=request,
                         assignment=tuple(zip(request, match)))
    witness_idx, neighborhood = hall_witness(neighbors, match)
    return NoPlan(symbols=request,
                  witness=tuple(request[i] for i in witness_idx),
                  neighborhood=tuple(neighborhood))


@dataclass(frozen=True)
class BatchTResult:
    t: int
    # smallest Hall-violating symbol set (size t + 1) and its node
    # neighborhood, absent when t = theta and no violation exists
    witness: tuple[int, ...] | None
    witness_nodes: tuple[int, ...] | None


def batch_t_detail(code: FrCode, budget: int | None = None) -> BatchTResult:
    """Exact maximum t with a maximality witness.

    Searches node subsets T by increasing size for one whose interior (the
    symbols stored only on T) outnumbers it; the smallest such T has size
    t and any |T| + 1 interior symbols violate Hall.  With no deficiency
    anywhere, t = theta.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    holders = code.nodes_of_symbol
    nbr_masks = [sum(1 << (i - 1) for i in h) for h in holders]
    min_rho = min((len(h) for h in holders), default=0)
    if min_rho == 0:
        unstored = next(j for j, h in enumerate(holders, start=1) if not h)
        return BatchTResult(t=0, witness=(unstored,), witness_nodes=())
    spent = 0
    for size in range(min_rho, min(code.n, code.theta - 1) + 1):
        spent += math.comb(code.n, size)
        if spent > budget:
            raise BudgetExceededError(
                f"deficiency search over node subsets of size <= {size}", spent, budget)
        for nodes in combinations(range(code.n), size):
            t_mask = 0
            for i in nodes:
                t_mask |= 1 << i
            interior = [j for j in range(1, code.theta + 1)
                        if nbr_masks[j - 1] & ~t_mask == 0]
            if len(interior) > size:
                witness = tuple(interior[: size + 1])
                return BatchTResult(t=size, witness=witness,
                                    witness_nodes=tuple(i + 1 for i in nodes))
    return BatchTResult(t=code.theta, witness=None, witness_nodes=None)


def batch_t(code: FrCode, budget: int | None = None) -> int:
    """Largest t such that every t-subset of symbols has a retrieval plan."""
    return batch_t_detail(code, budget=budget).t


@dataclass(frozen=True)
class FrbCertificate:
    """The rho-(n, M, k, alpha, t) parameter tuple with per-property checks."""

    rho: int
    n: int
    file_size: int
    k: int
    alpha: int
    t: int
    properties: tuple[bool, bool, bool, bool]
    witness: tuple[int, ...] | None

    @property
    def tuple_str(self) -> str:
        return (f"{self.rho}-({self.n}, {self.file_size}, {self.k}, "
                f"{self.alpha}, {self.t})")

    @property
    def all_properties_hold(self) -> bool:
        return all(self.properties)

    def to_json_dict(self) -> dict:
        """JSON-ready block; joins the capacity report under an "frb" key."""
        return {
            "tuple": self.tuple_str,
            "rho": self.rho, "n": self.n, "M": self.file_size,
            "k": self.k, "alpha": self.alpha, "t": self.t,
            "properties": {
                "node_degree_uniform": self.properties[0],
                "symbol_replication_uniform": self.properties[1],
                "file_size_is_exact_minimum": self.properties[2],
                "every_t_batch_retrievable": self.properties[3],
            },
            "witness": list(self.witness) if self.witness is not None else None,
        }


def frb_certify(code: FrCode, k: int, budget: int | None = None) -> FrbCertificate:
    """Assemble and check the FRB parameters of a code at reconstruction degree k.

    Property 1: every node stores alpha symbols; property 2: every symbol
    sits on rho nodes; property 3: M is the exact minimum k-union (true by
    construction here); property 4: every t-batch is retrievable (true by
    construction of t).  A computed t exceeding M breaks the definition and
    is raised, never clipped.

    k may exceed alpha: the girth-based family is certified on the full
    validity range of its file-size formula, which runs past alpha.
    """
    if not 1 <= k <= code.n:
        raise ParameterError(f"need 1 <= k <= n = {code.n}, got k={k}")
    report = validate(code)
    m_size = file_size(code, k, budget=budget)
    detail = batch_t_detail(code, budget=budget)
    if detail.t > m_size:
        raise FrbDefinitionError(
            f"computed t = {detail.t} exceeds file size M = {m_size} at k = {k}; "
            f"the FRB definition requires t <= M")
    properties = (report.rows_uniform, report.columns_uniform, True, True)
    return FrbCertificate(rho=code.rho, n=code.n, file_size=m_size, k=k,
                          alpha=code.alpha, t=detail.t,
                          properties=properties, witness=detail.witness)


def theorem5_predicted_t(family: str, **params) -> int:
    """Guaranteed batch parameter for the three constructive families.

    complete_bipartite(alpha > 2) -> 5; girth(g) -> 2g - floor(g/2) - 1;
    resolvable_td(alpha a prime power) -> alpha^2 - alpha - 1.
    """
    if family == "complete_bipartite":
        alpha = params["alpha"]
        if alpha <= 2:
            raise ParameterError(f"complete bipartite family needs alpha > 2, got {alpha}")
        return 5
    if family == "girth":
        g = params["g"]
        if g < 3:
            raise ParameterError(f"girth must be at least 3, got {g}")
        return 2 * g - g // 2 - 1
    if family == "resolvable_td":
        alpha = params["alpha"]
        GF(alpha)  # raises unless alpha is a supported prime power
        return alpha * alpha - alpha - 1
    raise ParameterError(f"unknown family {family!r}")
