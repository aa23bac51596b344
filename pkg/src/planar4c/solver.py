"""4-coloring by Hamilton split, ear-by-ear rebuild and a mod-3 orientation search.

Pipeline for a triangulation without separating triangles:

1. find a Hamilton circuit and cut along it into inner and outer polygons;
2. add the inner polygon's ears to the outer polygon until only the two base
   vertices remain on the border (a polygon with a doubled base edge);
3. search orientations with sum 0 at every vertex except the two base ones;
4. seed one border edge red, propagate edge colors, check that the other
   border edge also came out red, glue the two border edges;
5. read off vertex colors.

Separating triangles are cut off first and the parts colored separately; the
inner part's colors are then permuted to match the outer part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    ImproperInput,
    NoHamiltonCircuit,
    NotGood,
    PipelineCounterexample,
    TooLarge,
    Uncolorable,
)
from .graph import (
    SeparatingTriangle,
    TriangleComplex,
    Triangulation,
    find_separating_triangles,
    split_off_separating_triangle,
)
from .hamilton import find_hamilton_circuit, rebuild, reconstruction_order, split_by_circuit
from .schemes import (
    EdgeColoring,
    OrientationAssignment,
    VertexColoring,
    ct2_to_e3c,
    ct2_to_v4c,
    cv3_from_ct2,
    e3c_to_ct2,
    is_good,
    is_proper_vertex_coloring,
)

EXHAUSTIVE_LIMIT = 20
ORACLE_MAX_V = 14


@dataclass
class SolveTrace:
    """Everything needed to replay a coloring without searching again."""

    kind: str  # "hamilton" or "split"
    v: int
    coloring: tuple[int, ...] = ()
    # hamilton leaves
    circuit: tuple[int, ...] = ()
    base: tuple[int, int] = ()
    ear_steps: tuple[tuple[int, int], ...] = ()
    polygon_assignment: tuple[int, ...] = ()
    polygon_origin: tuple[int, ...] = ()
    assignment: tuple[int, ...] = ()
    seed_edge: int = -1
    seed_color: int = 0
    closure_color: int = -1
    search_nodes: int = 0
    # separating-triangle splits
    separating: tuple[int, int, int] = ()
    parent_labels: tuple[int, ...] = ()
    child_labels: tuple[int, ...] = ()
    permutation: tuple[int, ...] = ()
    parent: "SolveTrace | None" = None
    child: "SolveTrace | None" = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "v": self.v, "coloring": list(self.coloring)}
        if self.kind == "hamilton":
            out.update(
                circuit=list(self.circuit),
                base=list(self.base),
                ear_steps=[list(s) for s in self.ear_steps],
                polygon_assignment=list(self.polygon_assignment),
                polygon_origin=list(self.polygon_origin),
                assignment=list(self.assignment),
                seed_edge=self.seed_edge,
                seed_color=self.seed_color,
                closure_color=self.closure_color,
                search_nodes=self.search_nodes,
            )
        else:
            out.update(
                separating=list(self.separating),
                parent_labels=list(self.parent_labels),
                child_labels=list(self.child_labels),
                permutation=list(self.permutation),
                parent=self.parent.to_dict(),
                child=self.child.to_dict(),
            )
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "SolveTrace":
        kw = dict(d)
        for key in ("coloring", "circuit", "base", "polygon_assignment", "polygon_origin",
                    "assignment", "separating", "parent_labels", "child_labels", "permutation"):
            if key in kw:
                kw[key] = tuple(kw[key])
        if "ear_steps" in kw:
            kw["ear_steps"] = tuple(tuple(s) for s in kw["ear_steps"])
        for key in ("parent", "child"):
            if kw.get(key) is not None:
                kw[key] = cls.from_dict(kw[key])
        return cls(**kw)


# ---------------------------------------------------------------------------
# orientation search


def completion_order(G: TriangleComplex, constrained) -> tuple[list[int], list[list[int]]]:
    """Triangle order finishing vertex stars as early as possible.

    Repeatedly takes the constrained vertex with the fewest unplaced incident
    triangles (ear tips first).  Returns the order and, per position, the
    constrained vertices whose star is complete there.
    """
    placed = [False] * G.t
    left = {u: len(G.incident[u]) for u in constrained}
    order: list[int] = []
    pending = set(constrained)
    while pending:
        u = min(pending, key=lambda x: (left[x], x))
        for i in G.incident[u]:
            if not placed[i]:
                placed[i] = True
                order.append(i)
                for x in G.triangles[i]:
                    if x in left:
                        left[x] -= 1
        pending = {x for x in pending if left[x] > 0}
    order += [i for i in range(G.t) if not placed[i]]
    last = {}
    for pos, i in enumerate(order):
        for x in G.triangles[i]:
            if x in constrained:
                last[x] = pos
    completes: list[list[int]] = [[] for _ in order]
    for x, pos in last.items():
        completes[pos].append(x)
    return order, completes


def search_good_ct2(
    G: TriangleComplex, frozen=(), exhaustive_limit: int = EXHAUSTIVE_LIMIT, first_try=None
):
    """An assignment with sum 0 at every vertex outside ``frozen``, or ``None``.

    Returns ``(assignment, nodes)`` where ``nodes`` counts visited search
    nodes (assignments tried, for plain exhaustion).  ``first_try`` is a
    candidate checked before any search.
    """
    frozen = set(frozen)
    constrained = [u for u in G.vertices if u not in frozen]
    if first_try is not None:
        sums = cv3_from_ct2(G, first_try)
        if all(sums[u] == 0 for u in constrained):
            return first_try, 1
    idx = G.local_index()
    inc = G.incidence_array()
    if G.t <= exhaustive_limit:
        w = _kernels.digit_weights(len(idx), [idx[u] for u in constrained])
        m = int(_kernels.first_zero(inc, len(idx), w))
        if m < 0:
            return None, 1 << G.t
        return OrientationAssignment.from_mask(m, G.t), _gray_rank(m) + 1
    order, completes = completion_order(G, set(constrained))
    ptr = np.zeros(len(order) + 1, dtype=np.int64)
    flat: list[int] = []
    for i, vs in enumerate(completes):
        flat.extend(idx[x] for x in vs)
        ptr[i + 1] = len(flat)
    vals, nodes = _kernels.dfs_zero(
        inc, np.array(order, dtype=np.int64), ptr, np.array(flat, dtype=np.int64), len(idx)
    )
    if vals.size == 0:
        return None, int(nodes)
    return OrientationAssignment(tuple(int(x) for x in vals)), int(nodes)


def _gray_rank(g: int) -> int:
    r = 0
    while g:
        r ^= g
        g >>= 1
    return r


# ---------------------------------------------------------------------------
# pipeline


def four_color(T: Triangulation, circuit=None, base=None) -> tuple[VertexColoring, SolveTrace]:
    seps = find_separating_triangles(T)
    if seps:
        return _color_by_split(T, seps[0])
    return _color_hamiltonian(T, circuit, base)


def _color_by_split(T: Triangulation, s: SeparatingTriangle):
    parent, child = split_off_separating_triangle(T, s)
    cp, tp = four_color(parent)
    cc, tc = four_color(child)
    perm = _align(parent, cp, child, cc, s.vertices)
    colors = _merge(T, parent, cp, child, cc, perm)
    trace = SolveTrace(
        "split",
        T.v,
        coloring=colors.colors,
        separating=s.vertices,
        parent_labels=tuple(parent.labels),
        child_labels=tuple(child.labels),
        permutation=perm,
        parent=tp,
        child=tc,
    )
    return colors, trace


def _align(parent, cp, child, cc, shared) -> tuple[int, ...]:
    """Lexicographically least color permutation taking the child's colors on
    the shared triangle to the parent's."""
    pl = {lab: i for i, lab in enumerate(parent.labels)}
    cl = {lab: i for i, lab in enumerate(child.labels)}
    for perm in itertools.permutations(range(4)):
        if all(perm[cc.colors[cl[u]]] == cp.colors[pl[u]] for u in shared):
            return perm
    raise ImproperInput("shared triangle is not rainbow in both parts")


def _merge(T, parent, cp, child, cc, perm) -> VertexColoring:
    out = [-1] * T.v
    for i, lab in enumerate(child.labels):
        out[lab] = perm[cc.colors[i]]
    for i, lab in enumerate(parent.labels):
        out[lab] = cp.colors[i]
    return VertexColoring(tuple(out))


def _color_hamiltonian(T: Triangulation, circuit=None, base=None):
    if circuit is None:
        circuit = find_hamilton_circuit(T)
        if circuit is None:
            raise NoHamiltonCircuit(f"{T!r} has no Hamilton circuit and no separating triangle")
    sp = split_by_circuit(T, circuit, base)
    states = rebuild(sp.outer, sp.inner)
    D = states[-1]
    a_d, nodes = search_good_ct2(D, frozen=D.base, first_try=_face_parity_hint(T, D))
    if a_d is None:
        raise PipelineCounterexample(
            "no orientation zeroes the non-base vertices",
            {"circuit": list(sp.circuit), "base": list(sp.base)},
        )
    ec_t, closure = close_degenerate(T, D, a_d)
    if closure != 0:
        raise PipelineCounterexample(
            f"second border edge came out {closure}, not red",
            {"circuit": list(sp.circuit), "base": list(sp.base), "assignment": list(a_d.values)},
        )
    ct2 = e3c_to_ct2(T, ec_t)
    seed_edge = base_edge_id(T, sp.base)
    coloring = ct2_to_v4c(T, ct2, seed_edge, 0, 0, 0)
    trace = SolveTrace(
        "hamilton",
        T.v,
        coloring=coloring.colors,
        circuit=sp.circuit,
        base=sp.base,
        ear_steps=tuple((int(tri), int(tip)) for tri, tip in reconstruction_order(sp.inner)),
        polygon_assignment=a_d.values,
        polygon_origin=tuple(D.origin),
        assignment=ct2.values,
        seed_edge=seed_edge,
        seed_color=0,
        closure_color=closure,
        search_nodes=nodes,
    )
    return coloring, trace


def _face_parity_hint(T: Triangulation, D) -> OrientationAssignment | None:
    """Alternating face values carried over to ``D``, when ``T``'s faces
    2-color (every degree even).  Such an assignment yields a 3-coloring."""
    side = [-1] * T.t
    side[0] = 0
    stack = [0]
    while stack:
        i = stack.pop()
        for k in range(3):
            j = T.twin[3 * i + k] // 3
            if side[j] < 0:
                side[j] = 1 - side[i]
                stack.append(j)
            elif side[j] == side[i]:
                return None
    # D is mirrored against T, which swaps 1 and 2
    return OrientationAssignment(tuple(2 - side[o] for o in D.origin))


def base_edge_id(T: Triangulation, base) -> int:
    a, b = base
    d = T.dart_between(a, b)
    return T.edge_of[d[0]]


def close_degenerate(T: Triangulation, D, a_d: OrientationAssignment) -> tuple[EdgeColoring, int]:
    """Edge-color the two-vertex polygon from its outer base edge (red) and
    transfer the colors to ``T``.

    Returns the coloring of ``T`` and the color found on the second border
    edge.  ``D`` is mirrored against ``T``: each of its darts is the reverse
    of a dart of the origin triangle.
    """
    seed_dart, other_dart = D.boundary_darts[-1], D.boundary_darts[0]
    try:
        ec_d = ct2_to_e3c(D, a_d, D.edge_of[seed_dart], 0)
    except NotGood as exc:
        raise PipelineCounterexample(str(exc)) from None
    closure = ec_d.colors[D.edge_of[other_dart]]
    colors = [-1] * T.e
    for j, o in enumerate(D.origin):
        tri = T.triangles[o]
        for k in range(3):
            u, w = D.tail(3 * j + k), D.head(3 * j + k)
            kk = next(q for q in range(3) if tri[q] == w and tri[(q + 1) % 3] == u)
            eid = T.edge_of[3 * o + kk]
            # both border edges land on the base edge; the caller checks them
            colors[eid] = ec_d.colors[D.edge_of[3 * j + k]]
    return EdgeColoring(tuple(colors)), closure


def replay(T: Triangulation, trace: SolveTrace) -> VertexColoring:
    """Rebuild the coloring from a trace without any search."""
    if trace.kind == "hamilton":
        a = OrientationAssignment(tuple(trace.assignment))
        return ct2_to_v4c(T, a, trace.seed_edge, trace.seed_color, 0, 0)
    s = next(x for x in find_separating_triangles(T) if x.vertices == tuple(trace.separating))
    parent, child = split_off_separating_triangle(T, s)
    cp = replay(parent, trace.parent)
    cc = replay(child, trace.child)
    return _merge(T, parent, cp, child, cc, tuple(trace.permutation))


def check_solution(T: Triangulation, coloring: VertexColoring, trace: SolveTrace) -> None:
    """Raise if the coloring is improper or the trace's keystone checks fail."""
    if not is_proper_vertex_coloring(T, coloring):
        raise ImproperInput("solver produced an improper coloring")
    if trace.kind == "hamilton":
        if trace.closure_color != trace.seed_color:
            raise PipelineCounterexample("closure edge color differs from seed")
        if not is_good(T, OrientationAssignment(tuple(trace.assignment))):
            raise NotGood("trace assignment is not good")
    else:
        check_solution_part(trace.parent)
        check_solution_part(trace.child)


def check_solution_part(trace: SolveTrace) -> None:
    if trace.kind == "hamilton" and trace.closure_color != trace.seed_color:
        raise PipelineCounterexample("closure edge color differs from seed")
    if trace.kind == "split":
        check_solution_part(trace.parent)
        check_solution_part(trace.child)


# ---------------------------------------------------------------------------
# oracle


def four_color_oracle(T: Triangulation, palette: int = 4, max_v: int = ORACLE_MAX_V) -> VertexColoring:
    """Plain backtracking over vertex colors; shares no code with the pipeline."""
    n = T.v
    if n > max_v:
        raise TooLarge(f"oracle bound is {max_v} vertices")
    adj = [set() for _ in range(n)]
    for a, b, c in T.triangles:
        adj[a] |= {b, c}
        adj[b] |= {a, c}
        adj[c] |= {a, b}
    order = sorted(range(n), key=lambda u: (-len(adj[u]), u))
    color = [-1] * n

    def place(i):
        if i == n:
            return True
        u = order[i]
        taken = {color[w] for w in adj[u]}
        for c in range(palette):
            if c not in taken:
                color[u] = c
                if place(i + 1):
                    return True
        color[u] = -1
        return False

    if not place(0):
        raise Uncolorable(f"no {palette}-coloring")
    return VertexColoring(tuple(color))
