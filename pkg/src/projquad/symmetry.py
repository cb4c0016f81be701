"""Free involutions, antipodal two-colourings, quotients, and doubling."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Iterable, Optional

from .complexes import Cell, Complex, VertexId
from .errors import (
    BadParameters,
    BoundaryNotSymmetric,
    ColouringNotBoundaryAntisymmetric,
    LoopCreated,
    LoopsWouldForm,
    NotFree,
    ParseError,
)
from .graphs import Graph
from .validation import ValidationReport, Violation

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class TwoColouring:
    """A black/white split of the vertex ids."""

    black: frozenset[VertexId]
    white: frozenset[VertexId]

    def __post_init__(self) -> None:
        if self.black & self.white:
            raise BadParameters(f"vertices coloured twice: {sorted(self.black & self.white)}")

    def of(self, v: VertexId) -> str:
        if v in self.black:
            return BLACK
        if v in self.white:
            return WHITE
        raise BadParameters(f"vertex {v} is uncoloured")

    def covers(self, vertices: Iterable[VertexId]) -> bool:
        return all(v in self.black or v in self.white for v in vertices)

    def inverted(self) -> "TwoColouring":
        return TwoColouring(self.white, self.black)

    def to_json(self) -> dict:
        return {"black": sorted(self.black), "white": sorted(self.white)}

    @classmethod
    def from_json(cls, obj: dict) -> "TwoColouring":
        try:
            return cls(
                frozenset(int(v) for v in obj["black"]),
                frozenset(int(v) for v in obj["white"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed colouring JSON: {exc}") from exc


@dataclass(frozen=True)
class Involution:
    """A pairing of vertices and of cells, either on the whole complex or on
    its boundary only.

    `vertex_pairing` stores both directions of every pair; `cell_pairing`
    does the same per dimension >= 1 (dimension 0 rides on the vertices,
    since 0-cell ids equal vertex ids).
    """

    scope: str  # "full" | "boundary"
    vertex_pairing: dict[VertexId, VertexId]
    cell_pairing: dict[int, dict[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.scope not in ("full", "boundary"):
            raise BadParameters(f"unknown involution scope {self.scope!r}")

    def vertex(self, v: VertexId) -> VertexId:
        return self.vertex_pairing[v]

    def vertex_or_none(self, v: VertexId) -> Optional[VertexId]:
        return self.vertex_pairing.get(v)

    def cell(self, d: int, i: int) -> int:
        if d == 0:
            return self.vertex_pairing[i]
        return self.cell_pairing[d][i]

    def cell_or_none(self, d: int, i: int) -> Optional[int]:
        if d == 0:
            return self.vertex_pairing.get(i)
        return self.cell_pairing.get(d, {}).get(i)

    def paired_cells(self, d: int) -> dict[int, int]:
        if d == 0:
            return dict(self.vertex_pairing)
        return dict(self.cell_pairing.get(d, {}))

    def to_json(self) -> dict:
        pairs = sorted({(min(a, b), max(a, b)) for a, b in self.vertex_pairing.items()})
        cell_pairs = {}
        for d in sorted(self.cell_pairing):
            m = self.cell_pairing[d]
            cell_pairs[str(d)] = [list(p) for p in sorted({(min(a, b), max(a, b)) for a, b in m.items()})]
        return {"scope": self.scope, "vertex_pairs": [list(p) for p in pairs], "cell_pairs": cell_pairs}

    @classmethod
    def from_json(cls, obj: dict) -> "Involution":
        try:
            vp: dict[int, int] = {}
            for a, b in obj["vertex_pairs"]:
                vp[int(a)] = int(b)
                vp[int(b)] = int(a)
            cp: dict[int, dict[int, int]] = {}
            for key, pairs in obj.get("cell_pairs", {}).items():
                m: dict[int, int] = {}
                for a, b in pairs:
                    m[int(a)] = int(b)
                    m[int(b)] = int(a)
                cp[int(key)] = m
            return cls(str(obj["scope"]), vp, cp)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed involution JSON: {exc}") from exc


def validate_involution(complex: Complex, involution: Involution) -> ValidationReport:
    """Check that the pairing is a free simplicial involution on its scope.

    For full scope every vertex and every cell must be paired; for boundary
    scope the paired cells must be exactly the boundary subcomplex.  In both
    cases pairs must be fixed-point free, self-inverse, and respect the
    vertex and facet structure.
    """
    violations: list[Violation] = []
    vp = involution.vertex_pairing
    for v, w in sorted(vp.items()):
        if v == w:
            violations.append(Violation("FixedPoint", 0, v, "vertex paired with itself"))
        elif vp.get(w) != v:
            violations.append(Violation("NotInvolution", 0, v, f"{v} -> {w} -> {vp.get(w)}"))
        if not (0 <= w < complex.n_vertices):
            violations.append(Violation("UnknownVertex", 0, v, f"pair target {w} does not exist"))
    if involution.scope == "full":
        scope_cells = {d: set(range(complex.n_cells(d))) for d in range(complex.dim + 1)}
    else:
        scope_cells = {d: set(ids) for d, ids in boundary_cells(complex).items()}
    missing_vertices = scope_cells.get(0, set()) - set(vp)
    for v in sorted(missing_vertices):
        violations.append(Violation("UnpairedCell", 0, v, "scope vertex not paired"))
    extra_vertices = set(vp) - scope_cells.get(0, set())
    for v in sorted(extra_vertices):
        violations.append(Violation("PairedOutsideScope", 0, v, "vertex outside scope is paired"))
    for d in range(1, complex.dim + 1):
        pairing = involution.cell_pairing.get(d, {})
        in_scope = scope_cells.get(d, set())
        for i in sorted(in_scope - set(pairing)):
            violations.append(Violation("UnpairedCell", d, i, "scope cell not paired"))
        for i in sorted(set(pairing) - in_scope):
            violations.append(Violation("PairedOutsideScope", d, i, "cell outside scope is paired"))
        for i, j in sorted(pairing.items()):
            if i == j:
                violations.append(Violation("FixedPoint", d, i, "cell paired with itself"))
                continue
            if pairing.get(j) != i:
                violations.append(Violation("NotInvolution", d, i, f"{i} -> {j} -> {pairing.get(j)}"))
                continue
            if not (0 <= j < complex.n_cells(d)):
                violations.append(Violation("DanglingFacet", d, i, f"pair target {j} does not exist"))
                continue
            src, dst = complex.cell(d, i), complex.cell(d, j)
            try:
                image = tuple(sorted(vp[v] for v in src.vertices))
            except KeyError as exc:
                violations.append(Violation("NotSimplicial", d, i, f"vertex {exc.args[0]} of cell is unpaired"))
                continue
            if image != dst.vertices:
                violations.append(Violation("NotSimplicial", d, i, f"vertex image {image} != {dst.vertices}"))
                continue
            if d >= 1:
                lower = involution.vertex_pairing if d == 1 else involution.cell_pairing.get(d - 1, {})
                try:
                    facet_image = {lower[f] for f in src.facets}
                except KeyError as exc:
                    violations.append(Violation("NotSimplicial", d, i, f"facet {exc.args[0]} is unpaired"))
                    continue
                if facet_image != set(dst.facets):
                    violations.append(Violation("NotSimplicial", d, i, "facet images do not match pair's facets"))
    return ValidationReport.collect(violations)


def antipodal_free_cells(complex: Complex, involution: Involution) -> ValidationReport:
    """No cell may contain a vertex together with its antipode."""
    violations = []
    vp = involution.vertex_pairing
    for d in range(1, complex.dim + 1):
        for c in complex.cells_of(d):
            vs = set(c.vertices)
            if any(vp.get(v) in vs for v in c.vertices):
                violations.append(Violation("AntipodalPairInCell", d, c.id, str(c.vertices)))
    return ValidationReport.collect(violations)


def proper_on_maximal(complex: Complex, colouring: TwoColouring) -> ValidationReport:
    """Every maximal cell must see both colours."""
    violations = []
    for d, i in complex.maximal_cells():
        vs = complex.cell(d, i).vertices
        if not any(v in colouring.black for v in vs) or not any(v in colouring.white for v in vs):
            violations.append(Violation("MonochromaticCell", d, i, str(vs)))
    return ValidationReport.collect(violations)


def antisymmetric_on_pairs(colouring: TwoColouring, involution: Involution) -> ValidationReport:
    """Paired vertices must receive opposite colours."""
    violations = []
    for v, w in sorted(involution.vertex_pairing.items()):
        if v < w and colouring.of(v) == colouring.of(w):
            violations.append(Violation("SymmetricPairColour", 0, v, f"pair ({v}, {w}) both {colouring.of(v)}"))
    return ValidationReport.collect(violations)


def colouring_checks(complex: Complex, colouring: TwoColouring, involution: Optional[Involution] = None) -> dict:
    out = {"proper": proper_on_maximal(complex, colouring).ok}
    if involution is not None:
        out["antisymmetric"] = antisymmetric_on_pairs(colouring, involution).ok
    return out


def bichromatic_edge_cells(complex: Complex, colouring: TwoColouring) -> frozenset[int]:
    """Ids of the 1-cells whose endpoints have different colours."""
    out = set()
    for c in complex.cells_of(1) if complex.dim >= 1 else ():
        u, v = c.vertices
        if colouring.of(u) != colouring.of(v):
            out.add(c.id)
    return frozenset(out)


def associated_graph(complex: Complex, colouring: TwoColouring) -> Graph:
    """Simple graph on the vertex ids whose edges are the bichromatic 1-cells."""
    g = Graph(range(complex.n_vertices))
    for cid in sorted(bichromatic_edge_cells(complex, colouring)):
        u, v = complex.cell(1, cid).vertices
        g.add_edge(u, v)
    return g


def identify_antipodes(graph: Graph, vertex_pairing: dict[VertexId, VertexId]) -> tuple[Graph, dict[VertexId, VertexId]]:
    """Collapse each pair to its smaller member; unpaired vertices persist.

    Returns the quotient graph (on representative ids) and the projection
    map.  Raises LoopCreated if an edge joins a pair.
    """
    rep = {v: min(v, vertex_pairing.get(v, v)) for v in graph.vertices}
    out = Graph(sorted(set(rep.values())))
    for u, v in graph.edges():
        ru, rv = rep[u], rep[v]
        if ru == rv:
            raise LoopCreated(f"edge ({u}, {v}) joins an antipodal pair")
        out.add_edge(ru, rv)
    return out, rep


def boundary_cells(complex: Complex) -> dict[int, set[int]]:
    """The face closure of the top-dimension-minus-one cells with one cofacet."""
    n = complex.dim
    out: dict[int, set[int]] = {d: set() for d in range(max(n, 1))}
    if n >= 1:
        counts = complex.cofacet_counts(n - 1)
        for c in complex.cells_of(n - 1):
            if counts[c.id] == 1:
                for d, ids in complex.face_closure(n - 1, c.id).items():
                    out[d] |= ids
    return out


@dataclass(frozen=True)
class BoundaryStructure:
    """The boundary subcomplex of a ball, with its involution."""

    cells: dict[int, frozenset[int]]
    involution: Involution


def quotient(complex: Complex, involution: Involution) -> tuple[Complex, dict[int, dict[int, int]]]:
    """Identify each cell with its antipode; representatives keep labels.

    Returns the quotient complex and the per-dimension projection from old
    cell ids to new ones.  Coordinates are dropped (the quotient does not
    embed).  Raises NotFree on a fixed point and LoopsWouldForm when a cell
    contains an antipodal vertex pair.
    """
    if involution.scope != "full":
        raise BadParameters("quotient needs a full-scope involution")
    vp = involution.vertex_pairing
    for v in complex.vertex_ids():
        if vp.get(v) == v:
            raise NotFree(f"vertex {v} is its own antipode")
        if v not in vp:
            raise BadParameters(f"vertex {v} is unpaired")
    report = antipodal_free_cells(complex, involution)
    if not report.ok:
        first = report.violations[0]
        raise LoopsWouldForm(f"{first.cell_dim}-cell {first.cell_id} contains an antipodal pair")

    projection: dict[int, dict[int, int]] = {}
    reps0 = sorted(v for v in complex.vertex_ids() if v < vp[v])
    new_id0 = {old: new for new, old in enumerate(reps0)}
    projection[0] = {v: new_id0[min(v, vp[v])] for v in complex.vertex_ids()}
    labels = [complex.label(v) for v in reps0]

    layers: list[list[Cell]] = [[Cell(id=i, dim=0, vertices=(i,), facets=()) for i in range(len(reps0))]]
    for d in range(1, complex.dim + 1):
        pairing = involution.cell_pairing[d]
        reps = sorted(i for i in range(complex.n_cells(d)) if i < pairing[i])
        new_id = {old: new for new, old in enumerate(reps)}
        projection[d] = {i: new_id[min(i, pairing[i])] for i in range(complex.n_cells(d))}
        layer = []
        for old in reps:
            c = complex.cell(d, old)
            verts = tuple(sorted(projection[0][v] for v in c.vertices))
            facets = tuple(projection[d - 1][f] for f in c.facets)
            layer.append(Cell(id=new_id[old], dim=d, vertices=verts, facets=facets))
        layers.append(layer)
    return Complex(layers, labels), projection


def double(
    ball: Complex,
    boundary_involution: Involution,
    colouring: TwoColouring,
) -> tuple[Complex, Involution, TwoColouring]:
    """Glue two copies of a ball along the boundary antipodal map.

    The first copy keeps its cell ids and colours; the second copy inverts
    the colours, and its boundary is identified with the antipode of the
    first copy's boundary.  When the input has coordinates, the output
    embeds one dimension up: boundary vertices at height 0, interior copies
    at heights +1/-1 (the second copy mirrored through the origin), all
    radially normalized to the unit sphere.
    """
    if boundary_involution.scope != "boundary":
        raise BadParameters("doubling needs a boundary-scope involution")
    bcells = boundary_cells(ball)
    vp = boundary_involution.vertex_pairing
    if set(vp) != bcells.get(0, set()):
        raise BoundaryNotSymmetric("vertex pairing does not cover exactly the boundary vertices")
    for d in range(1, ball.dim):
        if set(boundary_involution.cell_pairing.get(d, {})) != bcells.get(d, set()):
            raise BoundaryNotSymmetric(f"cell pairing at dimension {d} does not cover exactly the boundary")
    rep = validate_involution(ball, boundary_involution)
    if not rep.ok:
        first = rep.violations[0]
        raise BoundaryNotSymmetric(f"{first.code} at dim {first.cell_dim} id {first.cell_id}: {first.detail}")
    if not colouring.covers(ball.vertex_ids()):
        raise BadParameters("colouring does not cover all vertices")
    for v, w in vp.items():
        if colouring.of(v) == colouring.of(w):
            raise ColouringNotBoundaryAntisymmetric(f"boundary pair ({v}, {w}) share colour {colouring.of(v)}")

    n = ball.dim
    interior0 = [v for v in ball.vertex_ids() if v not in vp]
    copy2_vid = {v: ball.n_vertices + k for k, v in enumerate(interior0)}

    labels: list[Optional[str]] = list(ball.labels)
    used = {lab for lab in labels if lab is not None}
    for v in interior0:
        base = ball.label(v)
        if base is None:
            labels.append(None)
            continue
        lab = base + "*"
        while lab in used:
            lab += "*"
        used.add(lab)
        labels.append(lab)

    coords: Optional[list[Optional[tuple[float, ...]]]] = None
    if ball.has_coords:
        raw: list[tuple[float, ...]] = []
        for v in ball.vertex_ids():
            u = ball.coords(v)
            raw.append(tuple(u) + ((0.0,) if v in vp else (1.0,)))
        for v in interior0:
            u = ball.coords(v)
            raw.append(tuple(-x for x in u) + (-1.0,))
        norms = [sqrt(sum(x * x for x in u)) for u in raw]
        if all(nm > 1e-12 for nm in norms):
            coords = [tuple(x / nm for x in u) for u, nm in zip(raw, norms)]

    def vmap2(v: VertexId) -> VertexId:
        return vp[v] if v in vp else copy2_vid[v]

    layers: list[list[Cell]] = [[Cell(id=i, dim=0, vertices=(i,), facets=()) for i in range(len(labels))]]
    copy2_cell: dict[int, dict[int, int]] = {0: dict(copy2_vid)}
    for d in range(1, n + 1):
        layer = list(ball.cells_of(d))
        cmap: dict[int, int] = {}
        lower_boundary = vp if d - 1 == 0 else boundary_involution.cell_pairing.get(d - 1, {})
        lower_copy2 = copy2_cell.get(d - 1, {})
        for c in ball.cells_of(d):
            if c.id in bcells.get(d, set()):
                continue
            verts = tuple(sorted(vmap2(v) for v in c.vertices))
            facets = tuple(
                lower_boundary[f] if f in lower_boundary else lower_copy2[f] for f in c.facets
            )
            new = Cell(id=len(layer), dim=d, vertices=verts, facets=facets)
            layer.append(new)
            cmap[c.id] = new.id
        copy2_cell[d] = cmap
        layers.append(layer)

    vertex_pairing: dict[int, int] = {}
    for v in ball.vertex_ids():
        w = vmap2(v)
        vertex_pairing[v] = w
        vertex_pairing[w] = v
    cell_pairing: dict[int, dict[int, int]] = {}
    for d in range(1, n + 1):
        m: dict[int, int] = {}
        bd = boundary_involution.cell_pairing.get(d, {})
        for c in ball.cells_of(d):
            j = bd[c.id] if c.id in bd else copy2_cell[d][c.id]
            m[c.id] = j
            m[j] = c.id
        cell_pairing[d] = m

    black = set(colouring.black)
    white = set(colouring.white)
    for v in interior0:
        if v in colouring.black:
            white.add(copy2_vid[v])
        else:
            black.add(copy2_vid[v])

    doubled = Complex(layers, labels, coords)
    involution = Involution("full", vertex_pairing, cell_pairing)
    return doubled, involution, TwoColouring(frozenset(black), frozenset(white))
