"""The DRESS storage pipeline: MDS-encode a file, spread the codeword over
nodes per an FR code, reconstruct from any k nodes, and repair failed nodes
by uncoded transfer.

On disk a stored system is a directory holding manifest.json plus one
node_<i>.dat per node.  A node file starts with "i alpha" and then lists
"j value" lines in ascending symbol order; repairs copy those lines
verbatim from donors, so the repair path never performs field arithmetic
and restored files are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .analyze import file_size
from .errors import CorruptionError, FrepkitError, IrreparableError, ParameterError
from .galois import GF, MdsCode, default_field_for
from .incidence import FrCode, validate
from .matching import maximum_matching

__all__ = [
    "StoredSystem",
    "RepairPlan",
    "store",
    "load_system",
    "reconstruct",
    "plan_repair",
    "execute_repair",
    "verify_integrity",
    "file_digest",
]

MANIFEST_NAME = "manifest.json"
REPAIR_POLICIES = ("lowest", "spread")


@dataclass
class StoredSystem:
    """A DRESS instance persisted under root; single-writer, multi-reader."""

    code: FrCode
    field: GF
    mds: MdsCode
    k: int
    m_size: int
    node_contents: dict[int, dict[int, int]]
    root: Path
    seed: int | None = None

    def node_path(self, i: int) -> Path:
        return self.root / f"node_{i}.dat"


@dataclass(frozen=True)
class RepairPlan:
    """Donor assignment for one failed node: one symbol per transfer."""

    failed: int
    transfers: tuple[tuple[int, int], ...]  # (symbol, donor), symbol-ascending
    d: int     # distinct donors contacted
    beta: int  # largest per-donor transfer count; 1 when donors are distinct

    @property
    def bandwidth(self) -> int:
        return len(self.transfers)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def file_digest(symbols) -> str:
    return hashlib.sha256(" ".join(str(v) for v in symbols).encode("ascii")).hexdigest()


def _node_text(i: int, contents: dict[int, int], alpha: int) -> str:
    lines = [f"{i} {alpha}"]
    lines.extend(f"{j} {contents[j]}" for j in sorted(contents))
    return "\n".join(lines) + "\n"


def store(code: FrCode, k: int, file_symbols, root, field: GF | None = None,
          seed: int | None = None) -> StoredSystem:
    """Encode file_symbols and persist the system under root.

    The file must have exactly M = file_size(code, k) symbols and k must
    stay within the reconstruction range k <= alpha.
    """
    report = validate(code)
    if not report.valid:
        raise ParameterError("refusing to store on an invalid FR code; run validate()")
    if k > code.alpha:
        raise ParameterError(f"k = {k} exceeds alpha = {code.alpha}")
    m_size = file_size(code, k)
    file_symbols = list(file_symbols)
    if len(file_symbols) != m_size:
        raise ParameterError(
            f"file length {len(file_symbols)} differs from M = {m_size} for k = {k}")
    field = field if field is not None else default_field_for(code.theta)
    mds = MdsCode(field=field, length=code.theta, dimension=m_size)
    codeword = mds.encode(file_symbols)
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    contents = {i: {j: codeword[j - 1] for j in code.node_sets[i - 1]}
                for i in range(1, code.n + 1)}
    checksums = {}
    for i in range(1, code.n + 1):
        path = root / f"node_{i}.dat"
        path.write_text(_node_text(i, contents[i], code.alpha),
                        encoding="ascii", newline="\n")
        checksums[f"node_{i}.dat"] = _sha256(path)
    manifest = {
        "schema": "frepkit-system/1",
        "code": {"n": code.n, "theta": code.theta, "alpha": code.alpha,
                 "rho": code.rho, "node_sets": [list(s) for s in code.node_sets]},
        "field": field.spec(),
        "mds": {"systematic": mds.systematic, "eval_points": list(mds.eval_points)},
        "k": k,
        "M": m_size,
        "file_sha256": file_digest(file_symbols),
        "seed": seed,
        "checksums": checksums,
    }
    (root / MANIFEST_NAME).write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n",
                                      encoding="ascii", newline="\n")
    return StoredSystem(code=code, field=field, mds=mds, k=k, m_size=m_size,
                        node_contents=contents, root=root, seed=seed)


def _parse_node_file(path: Path) -> tuple[int, dict[int, int]]:
    lines = path.read_text(encoding="ascii").splitlines()
    if not lines:
        raise CorruptionError(f"{path}: empty node file")
    node_id, _alpha = (int(x) for x in lines[0].split())
    contents = {}
    for line in lines[1:]:
        j, v = (int(x) for x in line.split())
        contents[j] = v
    return node_id, contents


def load_system(root, verify: bool = True) -> StoredSystem:
    """Rebuild a StoredSystem from disk, optionally verifying checksums."""
    root = Path(root)
    manifest = json.loads((root / MANIFEST_NAME).read_text(encoding="ascii"))
    c = manifest["code"]
    code = FrCode(n=c["n"], theta=c["theta"], alpha=c["alpha"], rho=c["rho"],
                  node_sets=c["node_sets"])
    field = GF.from_spec(manifest["field"])
    mds = MdsCode(field=field, length=code.theta, dimension=manifest["M"],
                  systematic=manifest["mds"]["systematic"],
                  eval_points=tuple(manifest["mds"]["eval_points"]))
    contents = {}
    for i in range(1, code.n + 1):
        path = root / f"node_{i}.dat"
        if not path.exists():
            continue  # a failed node; repairable while replicas survive
        if verify:
            expected = manifest["checksums"][path.name]
            actual = _sha256(path)
            if actual != expected:
                raise CorruptionError(
                    f"{path} checksum mismatch: manifest {expected}, file {actual}")
        node_id, node_map = _parse_node_file(path)
        if node_id != i:
            raise CorruptionError(f"{path} claims node id {node_id}")
        contents[i] = node_map
    return StoredSystem(code=code, field=field, mds=mds, k=manifest["k"],
                        m_size=manifest["M"], node_contents=contents, root=root,
                        seed=manifest.get("seed"))


def verify_integrity(root) -> None:
    """Raise CorruptionError on any node file that disagrees with the manifest."""
    load_system(root, verify=True)


def reconstruct(system: StoredSystem, nodes) -> list[int]:
    """Recover the stored file from exactly k node files."""
    chosen = sorted(set(nodes))
    if len(chosen) != system.k or len(chosen) != len(list(nodes)):
        raise ParameterError(
            f"reconstruction needs exactly k = {system.k} distinct nodes, "
            f"got {list(nodes)}")
    coords = []
    covered = set()
    for i in chosen:
        if not 1 <= i <= system.code.n:
            raise ParameterError(f"node id {i} out of range 1..{system.code.n}")
        path = system.node_path(i)
        if not path.exists():
            raise FrepkitError(f"node file {path} is missing; repair it first")
        _, node_map = _parse_node_file(path)
        for j, v in node_map.items():
            coords.append((j - 1, v))
            covered.add(j)
    if len(covered) < system.m_size:
        raise FrepkitError(
            f"nodes {chosen} jointly hold {len(covered)} coordinates, fewer than "
            f"M = {system.m_size}: the stored system violates its own contract")
    return system.mds.decode(coords)


def plan_repair(system: StoredSystem, failed: int, policy: str = "lowest",
                dead=()) -> RepairPlan:
    """Pick one donor per lost symbol among the surviving replicas.

    Policy "lowest" takes the smallest node id per symbol; "spread" balances
    load via maximum matching.  Either way, no donor serves two symbols
    whenever a system of distinct donors exists (matching fallback), and
    otherwise the reuse reported is the minimum possible.  Extra dead nodes
    model multi-failure and make symbols without survivors irreparable.
    """
    if policy not in REPAIR_POLICIES:
        raise ParameterError(f"unknown policy {policy!r}; choose from {REPAIR_POLICIES}")
    if not 1 <= failed <= system.code.n:
        raise ParameterError(f"node id {failed} out of range 1..{system.code.n}")
    unavailable = {failed} | set(dead)
    lost = system.code.node_sets[failed - 1]
    candidates = []
    for j in lost:
        donors = [i for i in system.code.nodes_of_symbol[j - 1] if i not in unavailable]
        if not donors:
            raise IrreparableError(
                f"symbol {j} of node {failed} has no surviving replica")
        candidates.append(donors)
    lowest = [min(d) for d in candidates]
    if policy == "lowest" and len(set(lowest)) == len(lowest):
        assignment = lowest
    else:
        matched = maximum_matching(candidates)
        # an unmatched symbol only has already-used donors (else the matching
        # would extend), so falling back to the smallest keeps reuse minimal
        assignment = [m if m is not None else min(c)
                      for m, c in zip(matched, candidates)]
    transfers = tuple(zip(lost, assignment))
    per_donor: dict[int, int] = {}
    for _, donor in transfers:
        per_donor[donor] = per_donor.get(donor, 0) + 1
    return RepairPlan(failed=failed, transfers=transfers,
                      d=len(per_donor), beta=max(per_donor.values()))


def _donor_line(path: Path, symbol: int) -> str:
    """The verbatim 'j value' line for one symbol; repairs stay byte-copies."""
    lines = path.read_text(encoding="ascii").splitlines()
    for line in lines[1:]:  # line 0 is the "i alpha" header
        if line.split(" ", 1)[0] == str(symbol):
            return line
    raise CorruptionError(f"{path} does not hold symbol {symbol}")


def execute_repair(system: StoredSystem, plan: RepairPlan) -> StoredSystem:
    """Rewrite the failed node's file from donor lines, copied byte for byte."""
    lines = [f"{plan.failed} {system.code.alpha}"]
    for symbol, donor in sorted(plan.transfers):
        donor_path = system.node_path(donor)
        if not donor_path.exists():
            raise IrreparableError(f"donor file {donor_path} is unreadable")
        lines.append(_donor_line(donor_path, symbol))
    path = system.node_path(plan.failed)
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")
    manifest = json.loads((system.root / MANIFEST_NAME).read_text(encoding="ascii"))
    expected = manifest["checksums"][path.name]
    actual = _sha256(path)
    if actual != expected:
        raise CorruptionError(
            f"repaired {path} does not match its manifest checksum; "
            f"a donor was corrupt or the plan was stale")
    _, node_map = _parse_node_file(path)
    system.node_contents[plan.failed] = node_map
    return system
