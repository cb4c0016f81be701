"""Structural audits: spheres, balls, quadrangulation laws, parity, box maps."""

from __future__ import annotations

import random
from itertools import combinations
from math import sqrt
from typing import Optional, Sequence

from .complexes import Complex
from .errors import MissingCoordinates, NotAClosedWalk, NotOnUnitSphere
from .graphs import Graph, box_membership
from .homology import ChainZ2, HomologyCalculator, boundary_squares_to_zero
from .symmetry import (
    Involution,
    TwoColouring,
    antipodal_free_cells,
    antisymmetric_on_pairs,
    associated_graph,
    bichromatic_edge_cells,
    boundary_cells,
    BoundaryStructure,
    identify_antipodes,
    proper_on_maximal,
    quotient,
    validate_involution,
)
from .validation import AuditCollector, AuditReport, ValidationReport, Violation

UNIT_TOL = 1e-9


# ---- homology-flavoured structural checks ----

def boundary_operator_audit(complex: Complex) -> ValidationReport:
    """The composite of consecutive boundary operators vanishes mod 2."""
    violations = []
    for p in range(2, complex.dim + 1):
        if not boundary_squares_to_zero(complex, p):
            violations.append(Violation("BoundaryNotSquareZero", p, None, f"d_{p-1} o d_{p} != 0"))
    return ValidationReport.collect(violations)


def sphere_check(complex: Complex, n: Optional[int] = None, calculator: Optional[HomologyCalculator] = None) -> ValidationReport:
    """Pure dimension n, every ridge in exactly two top cells, sphere homology."""
    violations = []
    if n is None:
        n = complex.dim
    if complex.dim != n:
        violations.append(Violation("WrongDimension", None, None, f"dimension {complex.dim}, expected {n}"))
        return ValidationReport.collect(violations)
    for d, i in complex.maximal_cells():
        if d != n:
            violations.append(Violation("NotPure", d, i, f"maximal cell of dimension {d} < {n}"))
    if n >= 1:
        counts = complex.cofacet_counts(n - 1)
        for c in complex.cells_of(n - 1):
            if counts[c.id] != 2:
                violations.append(Violation("BadCofacetCount", n - 1, c.id, f"{counts[c.id]} cofacets, expected 2"))
    if not violations:
        calc = calculator or HomologyCalculator(complex)
        expected = (2,) if n == 0 else (1,) + (0,) * (n - 1) + (1,)
        got = calc.all_betti()
        if got != expected:
            violations.append(Violation("WrongHomology", None, None, f"betti {got}, expected {expected}"))
    return ValidationReport.collect(violations)


def ball_check(complex: Complex, n: Optional[int] = None) -> ValidationReport:
    """Pure dimension n, ridges in one or two top cells, contractible homology,
    and a boundary subcomplex that passes the sphere check one dimension down."""
    violations = []
    if n is None:
        n = complex.dim
    if complex.dim != n:
        violations.append(Violation("WrongDimension", None, None, f"dimension {complex.dim}, expected {n}"))
        return ValidationReport.collect(violations)
    for d, i in complex.maximal_cells():
        if d != n:
            violations.append(Violation("NotPure", d, i, f"maximal cell of dimension {d} < {n}"))
    if n >= 1:
        counts = complex.cofacet_counts(n - 1)
        for c in complex.cells_of(n - 1):
            if counts[c.id] not in (1, 2):
                violations.append(Violation("BadCofacetCount", n - 1, c.id, f"{counts[c.id]} cofacets"))
    if violations:
        return ValidationReport.collect(violations)
    got = HomologyCalculator(complex).all_betti()
    if got != (1,) + (0,) * n:
        violations.append(Violation("WrongHomology", None, None, f"betti {got}, expected {(1,) + (0,) * n}"))
    if n >= 1:
        bcells = boundary_cells(complex)
        if not bcells.get(n - 1):
            violations.append(Violation("NoBoundary", None, None, "no free ridges; this is a closed complex"))
        else:
            sub, _ = complex.subcomplex(bcells)
            for v in sphere_check(sub, n - 1).violations:
                violations.append(Violation("BoundaryNotSphere", v.cell_dim, v.cell_id, f"{v.code}: {v.detail}"))
    return ValidationReport.collect(violations)


# ---- quadrangulation laws ----

def _complete_bipartite_reason(vertices: Sequence[int], pairs: set[frozenset[int]]) -> Optional[str]:
    """None when the pair set makes the vertex set a complete bipartite graph
    with at least one edge; otherwise a human-readable reason."""
    if not pairs:
        return "no selected edges"
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for pair in pairs:
        a, b = sorted(pair)
        adj[a].add(b)
        adj[b].add(a)
    start = min(v for v in vertices if adj[v])
    side = {start: 0}
    queue = [start]
    while queue:
        u = queue.pop()
        for w in adj[u]:
            if w not in side:
                side[w] = side[u] ^ 1
                queue.append(w)
            elif side[w] == side[u]:
                return "selected edges are not bipartite"
    if len(side) != len(vertices):
        missing = sorted(set(vertices) - set(side))
        return f"vertices {missing} not reached by selected edges"
    a = sum(1 for s in side.values() if s == 0)
    if len(pairs) != a * (len(vertices) - a):
        return f"{len(pairs)} selected pairs, complete bipartite needs {a * (len(vertices) - a)}"
    return None


def _selected_pairs_of_cell(
    complex: Complex,
    d: int,
    i: int,
    graph: Optional[Graph],
    edge_cells: Optional[frozenset[int]],
) -> set[frozenset[int]]:
    vs = complex.cell(d, i).vertices
    if edge_cells is None:
        assert graph is not None
        return {frozenset(p) for p in combinations(vs, 2) if graph.has_edge(*p)}
    out = set()
    for e in complex.one_faces(d, i):
        if e in edge_cells:
            out.add(frozenset(complex.cell(1, e).vertices))
    return out


def quadrangulation_check(
    complex: Complex,
    graph: Optional[Graph] = None,
    *,
    edge_cells: Optional[frozenset[int]] = None,
) -> ValidationReport:
    """Every maximal cell must span a complete bipartite selected subgraph
    with at least one edge.

    With `edge_cells` the selection is the given set of 1-cells, judged
    cell-locally (a maximal cell is tested against its own 1-faces); without
    it, vertex pairs are looked up in `graph`.
    """
    violations = []
    for d, i in complex.maximal_cells():
        vs = complex.cell(d, i).vertices
        pairs = _selected_pairs_of_cell(complex, d, i, graph, edge_cells)
        reason = _complete_bipartite_reason(vs, pairs)
        if reason == "no selected edges":
            violations.append(Violation("NoEdge", d, i, reason))
        elif reason is not None:
            violations.append(Violation("NotCompleteBipartite", d, i, reason))
    return ValidationReport.collect(violations)


def parity_audit(
    complex: Complex,
    graph: Optional[Graph] = None,
    *,
    edge_cells: Optional[frozenset[int]] = None,
) -> ValidationReport:
    """Each 2-cell must contain an even number of selected 1-cells (0 or 2)."""
    violations = []
    if complex.dim < 2:
        return ValidationReport.collect(violations)

    def selected(e: int) -> bool:
        if edge_cells is not None:
            return e in edge_cells
        assert graph is not None
        return graph.has_edge(*complex.cell(1, e).vertices)

    for c in complex.cells_of(2):
        k = sum(1 for f in c.facets if selected(f))
        if k % 2:
            violations.append(Violation("OddSelection", 2, c.id, f"{k} of 3 edges selected"))
    return ValidationReport.collect(violations)


# ---- closed walks against homology ----

def _closed_walk_ok(endpoint_pairs: Sequence[tuple[int, int]]) -> bool:
    first = endpoint_pairs[0]
    states = {(first[0], first[1]), (first[1], first[0])}
    for a, b in endpoint_pairs[1:]:
        nxt = set()
        for start, cur in states:
            if cur == a:
                nxt.add((start, b))
            if cur == b:
                nxt.add((start, a))
        states = nxt
        if not states:
            return False
    return any(start == cur for start, cur in states)


def cycle_parity_vs_homology(
    complex: Complex,
    walk_cells: Sequence[int],
    *,
    graph: Optional[Graph] = None,
    edge_cells: Optional[frozenset[int]] = None,
    calculator: Optional[HomologyCalculator] = None,
) -> dict:
    """Compare a closed walk's length parity with its mod-2 homology class.

    The walk is a sequence of 1-cell ids; consecutive cells must chain into a
    closed vertex walk (NotAClosedWalk otherwise).  Returns the parity, the
    homology class (0 when the mod-2 sum of traversed cells bounds), whether
    every traversed cell was a selected edge, and the consistency verdict:
    even walks must bound and odd walks must not.
    """
    if not walk_cells:
        raise NotAClosedWalk("empty walk")
    n1 = complex.n_cells(1)
    for e in walk_cells:
        if not 0 <= e < n1:
            raise NotAClosedWalk(f"no 1-cell with id {e}")
    pairs = [tuple(complex.cell(1, e).vertices) for e in walk_cells]
    if not _closed_walk_ok(pairs):
        raise NotAClosedWalk("cells do not chain into a closed walk")
    if edge_cells is not None:
        selected = all(e in edge_cells for e in walk_cells)
    elif graph is not None:
        selected = all(graph.has_edge(*p) for p in pairs)
    else:
        selected = True
    calc = calculator or HomologyCalculator(complex)
    support: set[int] = set()
    for e in walk_cells:
        support ^= {e}
    chain = ChainZ2(1, frozenset(support))
    bounds = calc.is_boundary(chain) is not None
    parity = len(walk_cells) % 2
    homology_class = 0 if bounds else 1
    return {
        "length": len(walk_cells),
        "parity": parity,
        "homology_class": homology_class,
        "selected": selected,
        "consistent": parity == homology_class,
    }


def sample_closed_walks(
    complex: Complex,
    edge_cells: frozenset[int],
    count: int,
    seed: int = 0,
    max_len: Optional[int] = None,
) -> list[list[int]]:
    """Deterministic random closed walks along the selected 1-cells."""
    rng = random.Random(seed)
    if max_len is None:
        max_len = 4 * complex.n_vertices + 8
    incident: dict[int, list[tuple[int, int]]] = {}
    for e in sorted(edge_cells):
        u, v = complex.cell(1, e).vertices
        incident.setdefault(u, []).append((e, v))
        incident.setdefault(v, []).append((e, u))
    starts = sorted(incident)
    walks: list[list[int]] = []
    attempts = 0
    while len(walks) < count and attempts < 50 * count:
        attempts += 1
        start = rng.choice(starts)
        cur = start
        walk: list[int] = []
        for _ in range(max_len):
            e, nxt = rng.choice(incident[cur])
            walk.append(e)
            cur = nxt
            if cur == start:
                break
        if cur == start and walk:
            walks.append(walk)
    return walks


# ---- the simplicial-map audit into the box complex ----

def verify_z2_map_to_box(
    complex: Complex,
    colouring: TwoColouring,
    graph: Graph,
    labels: dict[int, object],
    involution: Optional[Involution] = None,
) -> ValidationReport:
    """The vertex map v -> (label(v), colour(v)) must send every cell of the
    complex to a cell of the graph's box complex, injectively on each cell,
    and must intertwine the involution with the side swap."""
    violations = []
    if involution is not None:
        for v, w in sorted(involution.vertex_pairing.items()):
            if v < w:
                if labels.get(v) != labels.get(w):
                    violations.append(Violation("NotEquivariant", 0, v, f"pair ({v}, {w}) have different labels"))
                if colouring.of(v) == colouring.of(w):
                    violations.append(Violation("NotEquivariant", 0, v, f"pair ({v}, {w}) share a colour"))
    cache: dict[tuple[frozenset, frozenset], bool] = {}
    for d in range(complex.dim + 1):
        for c in complex.cells_of(d):
            images = {(labels[v], colouring.of(v)) for v in c.vertices}
            if len(images) != len(c.vertices):
                violations.append(Violation("NotSimplicialMap", d, c.id, "vertices collide in the image"))
                continue
            a1 = frozenset(labels[v] for v in c.vertices if v in colouring.black)
            a2 = frozenset(labels[v] for v in c.vertices if v in colouring.white)
            key = (a1, a2)
            if key not in cache:
                cache[key] = box_membership(graph, a1, a2)
            if not cache[key]:
                violations.append(Violation("NotInBoxComplex", d, c.id, f"({sorted(map(str, a1))}, {sorted(map(str, a2))})"))
    return ValidationReport.collect(violations)


# ---- geometric fineness ----

def fineness_check(complex: Complex, colouring: TwoColouring, n: Optional[int] = None) -> dict:
    """Whether every bichromatic 1-cell is strictly shorter than 2/sqrt(n+3).

    Vertices must carry coordinates of unit norm (tolerance 1e-9).  On a
    verified quadrangulation this bound certifies that the quotient graph
    needs n+2 colours.
    """
    if not complex.has_coords:
        raise MissingCoordinates("fineness needs coordinates on every vertex")
    if n is None:
        n = complex.dim
    for v in complex.vertex_ids():
        u = complex.coords(v)
        norm = sqrt(sum(x * x for x in u))
        if abs(norm - 1.0) > UNIT_TOL:
            raise NotOnUnitSphere(f"vertex {v} has norm {norm!r}")
    longest = 0.0
    for e in sorted(bichromatic_edge_cells(complex, colouring)):
        u, v = complex.cell(1, e).vertices
        cu, cv = complex.coords(u), complex.coords(v)
        length = sqrt(sum((a - b) ** 2 for a, b in zip(cu, cv)))
        longest = max(longest, length)
    threshold = 2.0 / sqrt(n + 3)
    return {
        "max_bichromatic_edge_length": longest,
        "threshold": threshold,
        "fine": longest < threshold,
        "dimension": n,
    }


# ---- composite verifications ----

def _default_labels(complex: Complex, involution: Involution) -> dict[int, object]:
    return {v: min(v, involution.vertex_pairing.get(v, v)) for v in complex.vertex_ids()}


def verify_sphere_quadrangulation(
    complex: Complex,
    involution: Involution,
    colouring: TwoColouring,
    *,
    labels: Optional[dict[int, object]] = None,
    expected_graph: Optional[Graph] = None,
    seed: int = 0,
    n_walks: int = 0,
) -> tuple[AuditReport, dict]:
    """Run the full audit stack on a symmetric coloured sphere.

    Returns the audit report and an artifact dict containing the quotient
    complex, the per-dimension projection, the selected quotient 1-cells,
    and the identified labelled graph.
    """
    audit = AuditCollector()
    artifacts: dict = {}
    if labels is None:
        labels = _default_labels(complex, involution)

    structural_ok = audit.add("complex-valid", complex.validate())
    structural_ok &= audit.add("involution-valid", validate_involution(complex, involution))
    audit.add_flag(
        "colouring-total",
        colouring.covers(complex.vertex_ids()),
        "some vertices are uncoloured",
    )
    audit.add("antipodal-free", antipodal_free_cells(complex, involution))
    audit.add("colouring-proper", proper_on_maximal(complex, colouring))
    audit.add("colouring-antisymmetric", antisymmetric_on_pairs(colouring, involution))
    if not structural_ok:
        return audit.done(), artifacts

    audit.add("boundary-operator", boundary_operator_audit(complex))
    calc = HomologyCalculator(complex)
    audit.add("sphere", sphere_check(complex, calculator=calc))

    assoc = associated_graph(complex, colouring)
    artifacts["associated_graph"] = assoc
    audit.add("parity", parity_audit(complex, assoc))
    audit.add("quadrangulation", quadrangulation_check(complex, assoc))

    orbit_ok = all(
        labels.get(v) == labels.get(w) for v, w in involution.vertex_pairing.items()
    )
    audit.add_flag("labels-on-orbits", orbit_ok, "labels are not constant on antipodal pairs")

    try:
        identified, rep = identify_antipodes(assoc, involution.vertex_pairing)
    except Exception as exc:  # LoopCreated when a bichromatic cell joins a pair
        audit.add_flag("graph-identification", False, f"{type(exc).__name__}: {exc}")
        return audit.done(), artifacts
    graph = identified.relabel({r: labels[r] for r in identified.vertices})
    artifacts["graph"] = graph
    artifacts["orbit_reps"] = {labels[r]: r for r in identified.vertices}
    audit.add("box-map", verify_z2_map_to_box(complex, colouring, graph, labels, involution))

    try:
        q, projection = quotient(complex, involution)
    except Exception as exc:  # NotFree / LoopsWouldForm / BadParameters
        audit.add_flag("quotient", False, f"{type(exc).__name__}: {exc}")
        return audit.done(), artifacts
    artifacts["quotient"] = q
    artifacts["projection"] = projection
    audit.add("quotient-valid", q.validate())
    n = complex.dim
    qb = HomologyCalculator(q).all_betti()
    audit.add_flag("quotient-homology", qb == (1,) * (n + 1), f"betti {qb}, expected {(1,) * (n + 1)}")

    selected_up = bichromatic_edge_cells(complex, colouring)
    selected_q = frozenset(projection[1][e] for e in selected_up)
    artifacts["selected_quotient_cells"] = selected_q

    from_quotient = Graph(sorted(range(q.n_vertices)))
    for e in sorted(selected_q):
        u, v = q.cell(1, e).vertices
        from_quotient.add_edge(u, v)
    relabel_q = {projection[0][r]: labels[r] for r in identified.vertices}
    commute = from_quotient.relabel(relabel_q) == graph
    audit.add_flag("identification-commutes", commute, "identified graph differs from quotient-selected graph")

    audit.add("quotient-parity", parity_audit(q, edge_cells=selected_q))
    audit.add("quotient-quadrangulation", quadrangulation_check(q, edge_cells=selected_q))

    if expected_graph is not None:
        audit.add_flag(
            "graph-matches-expected",
            graph == expected_graph,
            "identified graph differs from the expected labelled graph",
        )

    if n_walks > 0:
        qcalc = HomologyCalculator(q)
        walks = sample_closed_walks(q, selected_q, n_walks, seed=seed)
        bad = 0
        for walk in walks:
            res = cycle_parity_vs_homology(q, walk, edge_cells=selected_q, calculator=qcalc)
            if not (res["consistent"] and res["selected"]):
                bad += 1
        audit.add_flag(
            "walk-parity",
            bad == 0 and len(walks) == n_walks,
            f"{bad} inconsistent walks of {len(walks)} sampled",
            sampled=len(walks),
        )
    return audit.done(), artifacts


def verify_ball_quadrangulation(
    ball: Complex,
    boundary: BoundaryStructure,
    colouring: TwoColouring,
    *,
    labels: Optional[dict[int, object]] = None,
    expected_graph: Optional[Graph] = None,
) -> tuple[AuditReport, dict]:
    """Audit a coloured ball whose boundary carries a free involution."""
    audit = AuditCollector()
    artifacts: dict = {}
    involution = boundary.involution
    if labels is None:
        labels = _default_labels(ball, involution)

    ok = audit.add("complex-valid", ball.validate())
    audit.add("ball", ball_check(ball))
    bcells = boundary_cells(ball)
    matches = all(set(bcells.get(d, set())) == set(boundary.cells.get(d, frozenset())) for d in set(bcells) | set(boundary.cells))
    audit.add_flag("boundary-matches", matches, "stated boundary differs from the free-ridge closure")
    ok &= audit.add("involution-valid", validate_involution(ball, involution))
    audit.add_flag("colouring-total", colouring.covers(ball.vertex_ids()), "some vertices are uncoloured")
    audit.add("colouring-proper", proper_on_maximal(ball, colouring))
    audit.add("colouring-antisymmetric", antisymmetric_on_pairs(colouring, involution))
    audit.add("antipodal-free", antipodal_free_cells(ball, involution))
    if not ok:
        return audit.done(), artifacts
    audit.add("boundary-operator", boundary_operator_audit(ball))

    assoc = associated_graph(ball, colouring)
    artifacts["associated_graph"] = assoc
    audit.add("parity", parity_audit(ball, assoc))
    audit.add("quadrangulation", quadrangulation_check(ball, assoc))

    orbit_ok = all(labels.get(v) == labels.get(w) for v, w in involution.vertex_pairing.items())
    audit.add_flag("labels-on-orbits", orbit_ok, "labels are not constant on antipodal pairs")

    identified, _ = identify_antipodes(assoc, involution.vertex_pairing)
    graph = identified.relabel({r: labels[r] for r in identified.vertices})
    artifacts["graph"] = graph
    artifacts["orbit_reps"] = {labels[r]: r for r in identified.vertices}
    if expected_graph is not None:
        audit.add_flag(
            "graph-matches-expected",
            graph == expected_graph,
            "identified graph differs from the expected labelled graph",
        )
    return audit.done(), artifacts
