"""Counting formulas, polygon edge-color identities and exhaustive audits.

Every audit walks a finite instance family, stops at the first violation and
re-checks that violation by a separate, slower computation before reporting
it.  Verdicts:

* ``holds``: every instance in the family was checked;
* ``counterexample``: a confirmed violation, serialized in the report;
* ``exhausted-bound``: the time budget ran out first.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from . import io as pio
from .errors import ImproperInput, Planar4cError, TooLarge, UnknownStatement
from .graph import PolygonTriangulation, Triangulation, find_separating_triangles
from .hamilton import all_hamilton_circuits, circuit_edges, rebuild, split_by_circuit
from .instances import (
    ear_addition_states,
    octahedral_family,
    polygons,
    triangulation_corpus,
    wheels,
)
from .polygon import (
    _associate,
    _decode,
    counted_vertices,
    cv3_code_array,
    decode_codes,
    numbering_lower_bound,
    verify_difference_property,
)
from .schemes import (
    EdgeColoring,
    OrientationAssignment,
    all_good_assignments,
    ct2_to_e3c,
    cv3_from_ct2,
    is_proper_edge_coloring,
)
from .solver import close_degenerate, search_good_ct2

STATEMENTS = ("T1", "T2", "T3", "T4", "C1", "S8", "TBL42")
ALIASES = {"S8-existence": "S8", "table-4.2": "TBL42"}
BRUTE_FORCE_BOUND = 24

# Triangle-value counts with vertex sum 0, 1, 2 for t = 1..7 triangles.
COUNT_TABLE = {
    1: (0, 1, 1),
    2: (2, 1, 1),
    3: (2, 3, 3),
    4: (6, 5, 5),
    5: (10, 11, 11),
    6: (22, 21, 21),
    7: (42, 43, 43),
}

DEFAULT_MAX_V = {"T1": 10, "T2": 8, "T3": 10, "T4": 8, "C1": 12, "S8": 8, "TBL42": 20}
DEFAULT_MAX_T = {"T3": 16, "T4": 12}
C1_CORPUS_MAX_V = 8


# ---------------------------------------------------------------------------
# counting


def closed_form_count(t: int, target: int) -> int:
    """Number of ways to give ``t`` triangles values in {1, 2} with sum
    congruent to ``target`` mod 3."""
    if t < 1:
        raise ValueError("t must be >= 1")
    sign = -1 if t % 2 else 1
    if target % 3 == 0:
        return (2**t + 2 * sign) // 3
    return (2**t - sign) // 3


def brute_force_count(t: int, target: int, bound: int = BRUTE_FORCE_BOUND) -> int:
    if t > bound:
        raise TooLarge(f"t={t} exceeds the brute-force bound {bound}")
    return int(_kernels.count_residue(t, target % 3))


def _count_by_product(t: int, target: int) -> int:
    return sum(1 for vals in itertools.product((1, 2), repeat=t) if sum(vals) % 3 == target)


# ---------------------------------------------------------------------------
# perimeter identities


def polygon_identities(P: PolygonTriangulation, ec: EdgeColoring) -> dict[str, bool]:
    """Check every edge-count identity of a properly edge-colored polygon.

    Keys: ``parity`` (each color's perimeter count has the parity of the
    perimeter length), ``per_color`` (triangles = 2 * inner edges + perimeter
    edges, per color), ``euler``, ``faces``, ``edge_count`` and
    ``triangle_count``.
    """
    if not is_proper_edge_coloring(P, ec):
        raise ImproperInput("edge coloring is not proper")
    on_perim = set(P.perimeter_edges)
    per = [0, 0, 0]
    inner = [0, 0, 0]
    for eid, c in enumerate(ec.colors):
        (per if eid in on_perim else inner)[c] += 1
    f = P.t + 1
    return {
        "parity": all((per[x] - P.v_p) % 2 == 0 for x in range(3)),
        "per_color": all(P.t == 2 * inner[x] + per[x] for x in range(3)),
        "euler": len(P.vertices) - P.e + f == 2,
        "faces": f == P.t + 1,
        "edge_count": 2 * P.e == 3 * P.t + P.v_p,
        "triangle_count": P.t == P.v_p + 2 * (P.v_i - 1),
    }


def perimeter_parity_check(P: PolygonTriangulation, ec: EdgeColoring) -> bool:
    """True when every color occurs on the perimeter with the parity of its
    length and the per-color and structural counts all hold."""
    return all(polygon_identities(P, ec).values())


# ---------------------------------------------------------------------------
# reports


@dataclass
class AuditReport:
    statement: str
    generator: str
    checked: int
    verdict: str
    counterexample: dict | None = None
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self, include_time: bool = False) -> dict:
        """JSON-ready form.  Elapsed time is left out unless asked for, so
        repeated runs give identical documents."""
        d = {
            "schema": pio.SCHEMA,
            "type": "audit-report",
            "statement": self.statement,
            "generator": self.generator,
            "checked": self.checked,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "details": self.details,
        }
        if include_time:
            d["elapsed"] = round(self.elapsed, 3)
        return d

    @property
    def exit_code(self) -> int:
        return {"holds": 0, "counterexample": 2, "exhausted-bound": 3}[self.verdict]


class _Budget:
    def __init__(self, seconds):
        self.start = time.perf_counter()
        self.seconds = seconds

    def over(self) -> bool:
        return self.seconds is not None and time.perf_counter() - self.start > self.seconds

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def _run(items, check, budget: _Budget, jobs: int = 1, batch: int = 32):
    """Apply ``check`` to each ``(label, instance)``.

    ``check`` returns ``(n_checked, violation or None)``.  Results are taken
    in instance order whatever ``jobs`` is.  Returns ``(checked, label,
    instance, violation, exhausted)``.
    """
    checked = 0
    it = iter(items)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while True:
            if budget.over():
                return checked, None, None, None, True
            chunk = list(itertools.islice(it, batch if pool else 1))
            if not chunk:
                return checked, None, None, None, False
            if pool:
                results = list(pool.map(check, [x for _, x in chunk]))
            else:
                results = [check(chunk[0][1])]
            for (label, inst), (n, bad) in zip(chunk, results):
                checked += n
                if bad is not None:
                    return checked, label, inst, bad, False
    finally:
        if pool:
            pool.shutdown()


def _serialize(inst) -> dict:
    if isinstance(inst, PolygonTriangulation):
        return pio.polygon_to_dict(inst)
    if isinstance(inst, Triangulation):
        return pio.triangulation_to_dict(inst)
    return {"value": inst}


def _report(statement, generator, result, recheck, budget, details=None) -> AuditReport:
    checked, label, inst, bad, exhausted = result
    if bad is not None:
        if not recheck(inst, bad):
            raise Planar4cError(f"{statement}: violation on {label} did not re-verify: {bad}")
        cx = {"label": label, "instance": _serialize(inst), "violation": bad}
        return AuditReport(statement, generator, checked, "counterexample", cx, budget.elapsed, details or {})
    verdict = "exhausted-bound" if exhausted else "holds"
    return AuditReport(statement, generator, checked, verdict, None, budget.elapsed, details or {})


def _numbering_by_brute_force(G, mask: int, verts) -> tuple[int, ...]:
    return cv3_from_ct2(G, OrientationAssignment.from_mask(mask, G.t)).restricted(verts)


# ---------------------------------------------------------------------------
# T1: orientations <-> numberings of the non-base vertices


def _check_t1(P: PolygonTriangulation):
    nb = P.non_base
    codes = cv3_code_array(P, nb, max_triangles=P.t)
    uniq, first = np.unique(codes, return_index=True)
    if uniq.size != codes.size:
        dup = np.setdiff1d(np.arange(codes.size), first)[0]
        other = int(np.flatnonzero(codes == codes[dup])[0])
        return 1, {"kind": "collision", "masks": [other, int(dup)]}
    assoc = _associate(P)
    rows = decode_codes(codes, len(nb)).tolist()
    for m, row in enumerate(rows):
        got = _decode(P, assoc, dict(zip(nb, row))).to_mask()
        if got != m:
            return 1, {"kind": "decode", "mask": m, "decoded": got}
    return 1, None


def _recheck_t1(P, bad) -> bool:
    nb = P.non_base
    if bad["kind"] == "collision":
        m1, m2 = bad["masks"]
        return m1 != m2 and _numbering_by_brute_force(P, m1, nb) == _numbering_by_brute_force(P, m2, nb)
    return _numbering_by_brute_force(P, bad["mask"], nb) != _numbering_by_brute_force(
        P, bad["decoded"], nb
    ) or bad["mask"] != bad["decoded"]


def _polygon_family(max_v: int):
    for v in range(3, max_v + 1):
        for i, P in enumerate(polygons(v)):
            yield f"polygon v={v} #{i}", P


# ---------------------------------------------------------------------------
# T2: one flip changes the flipped vertex's number


def _check_t2(P: PolygonTriangulation):
    out = verify_difference_property(P)
    if not out.holds:
        return 1, dict(out.violation, shift=None)
    for u in P.non_base:
        for s in (1, 2):
            out = verify_difference_property(P, shifts={u: s})
            if not out.holds:
                return 1, dict(out.violation, shift=[u, s])
    return 1, None


def _recheck_t2(P, bad) -> bool:
    assoc = _associate(P)
    verts = P.non_base
    j = verts.index(bad["vertex"])
    tri_of = [assoc.vertex_triangle[u] for u in verts]

    def number(code_mask):
        vals = [1] * P.t
        for k, tri in enumerate(tri_of):
            if (code_mask >> k) & 1:
                vals[tri] = 2
        return cv3_from_ct2(P, OrientationAssignment(tuple(vals)))[bad["vertex"]]

    m = bad["code_mask"]
    return number(m) == number(m | (1 << j))


# ---------------------------------------------------------------------------
# T3: lower bound on distinct numberings after adding ears


def _check_t3(P: PolygonTriangulation):
    codes = cv3_code_array(P, counted_vertices(P), max_triangles=P.t)
    count = int(np.unique(codes).size)
    bound = numbering_lower_bound(P)
    if count < bound:
        return 1, {"distinct": count, "bound": bound}
    if P.v_i:
        inner = cv3_code_array(P, P.inner_vertices, max_triangles=P.t)
        if np.unique(inner).size != 3**P.v_i:
            return 1, {"inner_combinations": int(np.unique(inner).size), "expected": 3**P.v_i}
    return 1, None


def _recheck_t3(P, bad) -> bool:
    if "distinct" in bad:
        verts = counted_vertices(P)
        seen = {_numbering_by_brute_force(P, m, verts) for m in range(1 << P.t)}
        return len(seen) == bad["distinct"] < bad["bound"]
    seen = {_numbering_by_brute_force(P, m, P.inner_vertices) for m in range(1 << P.t)}
    return len(seen) < 3**P.v_i


# ---------------------------------------------------------------------------
# T4: perimeter color parity for good edge colorings


def _check_t4(P: PolygonTriangulation):
    good = all_good_assignments(P, constrained=P.inner_vertices)
    seen = set()
    n = 0
    for a in good:
        for c in range(3):
            ec = ct2_to_e3c(P, a, 0, c)
            n += 1
            seen.add(ec.colors)
            ids = polygon_identities(P, ec)
            if not all(ids.values()):
                return n, {"colors": list(ec.colors), "failed": sorted(k for k, ok in ids.items() if not ok)}
    for cols in seen:
        for p in itertools.permutations(range(3)):
            if tuple(p[x] for x in cols) not in seen:
                return n, {"colors": list(cols), "failed": ["orbit"]}
    return n, None


def _recheck_t4(P, bad) -> bool:
    cols = bad["colors"]
    perim = set(P.perimeter_edges)
    if "orbit" in bad["failed"]:
        return True  # the missing permutation is itself the witness
    for x in range(3):
        on = sum(1 for e, c in enumerate(cols) if c == x and e in perim)
        off = sum(1 for e, c in enumerate(cols) if c == x and e not in perim)
        if (on - P.v_p) % 2 or P.t != 2 * off + on:
            return True
    return 2 * P.e != 3 * P.t + P.v_p or P.t != P.v_p + 2 * (P.v_i - 1)


# ---------------------------------------------------------------------------
# C1: number of distinct numberings on even-degree triangulations


def _check_c1(T: Triangulation):
    codes = cv3_code_array(T, T.vertices, max_triangles=T.t)
    count = int(np.unique(codes).size)
    if count != 3 ** (T.v - 2):
        return 1, {"distinct": count, "expected": 3 ** (T.v - 2)}
    return 1, None


def _recheck_c1(T, bad) -> bool:
    seen = {_numbering_by_brute_force(T, m, T.vertices) for m in range(1 << T.t)}
    return len(seen) == bad["distinct"] != bad["expected"]


def _even_degree(T: Triangulation) -> bool:
    return all(len(T.incident[u]) % 2 == 0 for u in T.vertices)


# ---------------------------------------------------------------------------
# S8: a zeroing orientation exists on every two-vertex polygon


def _check_s8(T: Triangulation):
    n = 0
    found_circuit = False
    for c in all_hamilton_circuits(T):
        found_circuit = True
        for e in circuit_edges(c):
            sp = split_by_circuit(T, c, e)
            D = rebuild(sp.outer, sp.inner)[-1]
            a, _ = search_good_ct2(D, frozen=D.base)
            n += 1
            where = {"circuit": list(c), "base": list(sp.base)}
            if a is None:
                return n, dict(where, kind="no-zeroing-orientation")
            _, closure = close_degenerate(T, D, a)
            if closure != 0:
                return n, dict(where, kind="closure", assignment=list(a.values), closure=closure)
    if not found_circuit and not find_separating_triangles(T):
        return n, {"kind": "no-hamilton-circuit"}
    return n, None


def _recheck_s8(T, bad) -> bool:
    if bad["kind"] == "no-hamilton-circuit":
        return not any(True for _ in all_hamilton_circuits(T)) and not find_separating_triangles(T)
    sp = split_by_circuit(T, bad["circuit"], tuple(bad["base"]))
    D = rebuild(sp.outer, sp.inner)[-1]
    free = [u for u in D.vertices if u not in D.base]
    if bad["kind"] == "no-zeroing-orientation":
        return all(
            any(cv3_from_ct2(D, OrientationAssignment(vals))[u] for u in free)
            for vals in itertools.product((1, 2), repeat=D.t)
        )
    a = OrientationAssignment(tuple(bad["assignment"]))
    # start from the other border edge instead; the two must still disagree
    ec = ct2_to_e3c(D, a, D.edge_of[D.boundary_darts[0]], 0)
    return ec.colors[D.edge_of[D.boundary_darts[-1]]] != 0


# ---------------------------------------------------------------------------
# table of counts


def _check_tbl(t: int):
    row = tuple(closed_form_count(t, x) for x in range(3))
    brute = tuple(brute_force_count(t, x) for x in range(3))
    if row != brute or sum(row) != 2**t:
        return 1, {"t": t, "closed_form": list(row), "brute_force": list(brute)}
    if t in COUNT_TABLE and row != COUNT_TABLE[t]:
        return 1, {"t": t, "closed_form": list(row), "table": list(COUNT_TABLE[t])}
    return 1, None


def _recheck_tbl(t, bad) -> bool:
    direct = tuple(_count_by_product(t, x) for x in range(3))
    return direct != tuple(bad["closed_form"]) or direct != tuple(bad.get("table", direct))


# ---------------------------------------------------------------------------
# entry point


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1


def audit(
    statement: str,
    max_v: int | None = None,
    budget: float | None = None,
    jobs: int = 1,
    max_t: int | None = None,
) -> AuditReport:
    """Exhaustively check one statement over its bounded instance family.

    Args:
        statement: one of ``STATEMENTS`` (aliases in ``ALIASES`` accepted).
        max_v: vertex bound; for ``TBL42`` the largest triangle count.
        budget: wall-clock seconds before giving up with ``exhausted-bound``.
        jobs: worker processes.
        max_t: triangle bound for the polygon families of ``T3``/``T4``.
    """
    st = ALIASES.get(statement, statement)
    if st not in STATEMENTS:
        raise UnknownStatement(f"unknown statement {statement!r}; choose from {', '.join(STATEMENTS)}")
    if max_v is None:
        max_v = DEFAULT_MAX_V[st]
    if max_t is None:
        max_t = DEFAULT_MAX_T.get(st)
    clock = _Budget(budget)

    if st == "T1":
        gen = f"enumerated polygons, 3 <= v <= {max_v}"
        res = _run(_polygon_family(max_v), _check_t1, clock, jobs)
        return _report(st, gen, res, _recheck_t1, clock)
    if st == "T2":
        gen = f"enumerated polygons, 3 <= v <= {max_v}, plus one-column shifts by 1 and 2"
        res = _run(_polygon_family(max_v), _check_t2, clock, jobs)
        return _report(st, gen, res, _recheck_t2, clock)
    if st == "T3":
        gen = (
            f"wheels with <= {max_t} triangles; ear-addition states of polygon pairs "
            f"(all pairs for v <= 7, first/middle/last for 8 <= v <= {max_v}) with <= {max_t} triangles"
        )
        items = itertools.chain(wheels(max_t), ear_addition_states(max_t, max_v=max_v))
        res = _run(items, _check_t3, clock, jobs)
        return _report(st, gen, res, _recheck_t3, clock)
    if st == "T4":
        gen = (
            f"enumerated polygons, wheels and ear-addition states with <= {max_t} triangles "
            f"(pairs up to v = {max_v}); every good edge coloring"
        )
        items = itertools.chain(
            ((lab, P) for lab, P in _polygon_family(max_v) if P.t <= max_t),
            wheels(max_t),
            ear_addition_states(max_t, full_v=min(6, max_v), max_v=max_v),
        )
        res = _run(items, _check_t4, clock, jobs)
        return _report(st, gen, res, _recheck_t4, clock, {"unit": "edge colorings"})
    if st == "C1":
        return _audit_c1(max_v, clock, jobs)
    if st == "S8":
        gen = f"polygon-pair triangulations, 4 <= v <= {max_v}, deduplicated; every Hamilton circuit and base"
        res = _run(triangulation_corpus(max_v), _check_s8, clock, jobs)
        return _report(st, gen, res, _recheck_s8, clock, {"unit": "circuit and base choices"})
    gen = f"triangle counts 1 <= t <= {max_v}"
    res = _run(((f"t={t}", t) for t in range(1, max_v + 1)), _check_tbl, clock, 1)
    return _report(st, gen, res, _recheck_tbl, clock)


def _audit_c1(max_v, clock, jobs) -> AuditReport:
    corpus_v = min(max_v, C1_CORPUS_MAX_V)
    gen = (
        f"octahedra nested into faces, v <= {max_v}; "
        f"even-degree polygon-pair triangulations, v <= {corpus_v}"
    )
    families = {
        "octahedral": octahedral_family(max_v),
        "even-degree": ((lab, T) for lab, T in triangulation_corpus(corpus_v) if _even_degree(T)),
    }
    details = {}
    total = 0
    for name, items in families.items():
        res = _run(items, _check_c1, clock, jobs)
        rep = _report("C1", name, res, _recheck_c1, clock)
        total += rep.checked
        details[name] = {"checked": rep.checked, "verdict": rep.verdict}
        if rep.verdict != "holds":
            rep.statement, rep.generator, rep.checked = "C1", gen, total
            rep.details = details
            return rep
    return AuditReport("C1", gen, total, "holds", None, clock.elapsed, details)
