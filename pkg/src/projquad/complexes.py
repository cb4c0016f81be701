"""Generalized simplicial complexes with explicit facet incidence.

Cells carry their own facet lists, so two distinct cells may share a vertex
set (parallel cells); this is what antipodal quotients produce.  A complex is
immutable once built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import (
    BadDimension,
    DanglingFacet,
    DuplicateVertexInCell,
    FacetCoverageError,
    ParseError,
    UnknownVertex,
    VertexArityMismatch,
)
from .validation import ValidationReport, Violation

VertexId = int
CellKey = tuple[int, int]  # (dim, id)


@dataclass(frozen=True, slots=True)
class Cell:
    id: int
    dim: int
    vertices: tuple[VertexId, ...]  # sorted, length dim+1, distinct
    facets: tuple[int, ...]  # ids of (dim-1)-cells, length dim+1; empty for dim 0


class Complex:
    """Immutable generalized simplicial complex.

    `cells_of(d)` returns the d-cells in id order; ids are dense per
    dimension.  The 0-cell with id v always sits on vertex v.
    """

    def __init__(
        self,
        cells: Sequence[Sequence[Cell]],
        labels: Sequence[Optional[str]],
        coords: Optional[Sequence[Optional[tuple[float, ...]]]] = None,
    ) -> None:
        self._cells: tuple[tuple[Cell, ...], ...] = tuple(tuple(layer) for layer in cells)
        self._labels: tuple[Optional[str], ...] = tuple(labels)
        self._coords: Optional[tuple[Optional[tuple[float, ...]], ...]] = (
            tuple(tuple(c) if c is not None else None for c in coords) if coords is not None else None
        )
        self._maximal: Optional[tuple[CellKey, ...]] = None
        self._cofacet_counts: dict[int, tuple[int, ...]] = {}

    # ---- basic accessors ----

    @property
    def dim(self) -> int:
        return len(self._cells) - 1

    @property
    def n_vertices(self) -> int:
        return len(self._labels)

    def n_cells(self, d: int) -> int:
        return len(self._cells[d]) if 0 <= d <= self.dim else 0

    def cells_of(self, d: int) -> tuple[Cell, ...]:
        return self._cells[d]

    def cell(self, d: int, i: int) -> Cell:
        return self._cells[d][i]

    def label(self, v: VertexId) -> Optional[str]:
        return self._labels[v]

    @property
    def labels(self) -> tuple[Optional[str], ...]:
        return self._labels

    def coords(self, v: VertexId) -> Optional[tuple[float, ...]]:
        return self._coords[v] if self._coords is not None else None

    @property
    def has_coords(self) -> bool:
        return self._coords is not None and all(c is not None for c in self._coords)

    def vertex_ids(self) -> range:
        return range(self.n_vertices)

    # ---- derived structure ----

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(layer) for d, layer in enumerate(self._cells))

    def cofacet_counts(self, d: int) -> tuple[int, ...]:
        """For each d-cell, the number of (d+1)-cells having it as a facet."""
        if d not in self._cofacet_counts:
            counts = [0] * self.n_cells(d)
            if d + 1 <= self.dim:
                for cell in self._cells[d + 1]:
                    for f in cell.facets:
                        counts[f] += 1
            self._cofacet_counts[d] = tuple(counts)
        return self._cofacet_counts[d]

    def maximal_cells(self) -> tuple[CellKey, ...]:
        """Cells that are not a facet of any other cell, as (dim, id) keys."""
        if self._maximal is None:
            keys: list[CellKey] = []
            for d in range(self.dim + 1):
                counts = self.cofacet_counts(d)
                keys.extend((d, c.id) for c in self._cells[d] if counts[c.id] == 0)
            self._maximal = tuple(keys)
        return self._maximal

    def is_pure(self) -> bool:
        return all(d == self.dim for d, _ in self.maximal_cells())

    def face_closure(self, dim: int, cell_id: int) -> dict[int, set[int]]:
        """All faces of one cell (itself included), as {dim: {ids}}."""
        out: dict[int, set[int]] = {d: set() for d in range(dim + 1)}
        out[dim].add(cell_id)
        frontier = [(dim, cell_id)]
        while frontier:
            d, i = frontier.pop()
            if d == 0:
                continue
            for f in self._cells[d][i].facets:
                if f not in out[d - 1]:
                    out[d - 1].add(f)
                    frontier.append((d - 1, f))
        return out

    def one_faces(self, dim: int, cell_id: int) -> tuple[int, ...]:
        """The 1-cells in the closure of a cell, sorted by id."""
        if dim < 1:
            return ()
        return tuple(sorted(self.face_closure(dim, cell_id)[1]))

    def edge_pairs(self) -> dict[frozenset[VertexId], list[int]]:
        """Vertex pair -> ids of the 1-cells realizing it (parallel cells listed)."""
        out: dict[frozenset[VertexId], list[int]] = {}
        if self.dim >= 1:
            for c in self._cells[1]:
                out.setdefault(frozenset(c.vertices), []).append(c.id)
        return out

    def one_skeleton_graph(self):
        """The 1-skeleton as a simple graph on VertexIds (parallel 1-cells collapse)."""
        from .graphs import Graph

        edges = sorted(tuple(sorted(pair)) for pair in self.edge_pairs())
        return Graph(range(self.n_vertices), edges)

    # ---- subcomplexes ----

    def skeleton(self, k: int) -> "Complex":
        """The k-skeleton; cell ids are preserved."""
        if not 0 <= k <= self.dim:
            raise BadDimension(f"skeleton dimension {k} outside [0, {self.dim}]")
        return Complex(self._cells[: k + 1], self._labels, self._coords)

    def subcomplex(self, cells: dict[int, Iterable[int]]) -> tuple["Complex", dict[int, dict[int, int]]]:
        """Extract the subcomplex on the given cell ids (must be facet-closed).

        Ids are re-densified; returns the new complex and the old->new id maps
        per dimension.  Dimension 0 of `cells` drives the new vertex set.
        """
        top = max((d for d, ids in cells.items() if ids), default=0)
        id_map: dict[int, dict[int, int]] = {}
        for d in range(top + 1):
            old_ids = sorted(cells.get(d, ()))
            id_map[d] = {old: new for new, old in enumerate(old_ids)}
        vert_map = id_map[0]
        labels = [self._labels[v] for v in sorted(vert_map)]
        coords = [self._coords[v] for v in sorted(vert_map)] if self._coords is not None else None
        new_cells: list[list[Cell]] = []
        for d in range(top + 1):
            layer: list[Cell] = []
            for old in sorted(id_map[d]):
                c = self._cells[d][old]
                verts = tuple(sorted(vert_map[v] for v in c.vertices))
                facets = tuple(id_map[d - 1][f] for f in c.facets) if d > 0 else ()
                layer.append(Cell(id=len(layer), dim=d, vertices=verts, facets=facets))
            new_cells.append(layer)
        return Complex(new_cells, labels, coords), id_map

    # ---- validation ----

    def validate(self) -> ValidationReport:
        violations: list[Violation] = []
        seen_labels: dict[str, int] = {}
        for v in range(self.n_vertices):
            lab = self._labels[v]
            if lab is not None:
                if lab in seen_labels:
                    violations.append(
                        Violation("LabelCollision", 0, v, f"label {lab!r} already used by vertex {seen_labels[lab]}")
                    )
                else:
                    seen_labels[lab] = v
        if self.n_cells(0) != self.n_vertices:
            violations.append(Violation("VertexCellMismatch", 0, None, "0-cells do not match vertex set"))
        for d in range(self.dim + 1):
            for c in self._cells[d]:
                if len(c.vertices) != d + 1:
                    violations.append(Violation("VertexArityMismatch", d, c.id, f"{len(c.vertices)} vertices"))
                    continue
                if len(set(c.vertices)) != d + 1:
                    violations.append(Violation("DuplicateVertexInCell", d, c.id, str(c.vertices)))
                    continue
                if tuple(sorted(c.vertices)) != c.vertices:
                    violations.append(Violation("UnsortedVertices", d, c.id, str(c.vertices)))
                if any(not 0 <= v < self.n_vertices for v in c.vertices):
                    violations.append(Violation("UnknownVertex", d, c.id, str(c.vertices)))
                    continue
                if d == 0:
                    if c.id != c.vertices[0]:
                        violations.append(Violation("VertexCellMismatch", 0, c.id, "0-cell id differs from vertex id"))
                    continue
                if len(c.facets) != d + 1:
                    violations.append(Violation("VertexArityMismatch", d, c.id, f"{len(c.facets)} facets"))
                    continue
                if len(set(c.facets)) != d + 1:
                    violations.append(Violation("DuplicateFacet", d, c.id, str(c.facets)))
                    continue
                if any(not 0 <= f < self.n_cells(d - 1) for f in c.facets):
                    violations.append(Violation("DanglingFacet", d, c.id, str(c.facets)))
                    continue
                want = {frozenset(s) for s in combinations(c.vertices, d)}
                got = [frozenset(self._cells[d - 1][f].vertices) for f in c.facets]
                if set(got) != want or len(set(got)) != d + 1:
                    violations.append(Violation("FacetCoverageViolation", d, c.id, "facets do not realize the p-subsets"))
        return ValidationReport.collect(violations)

    # ---- equality (structural) ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return (
            self._cells == other._cells
            and self._labels == other._labels
            and self._coords == other._coords
        )

    def __repr__(self) -> str:
        counts = ",".join(str(len(layer)) for layer in self._cells)
        return f"Complex(dim={self.dim}, cells=[{counts}])"


class ComplexBuilder:
    """Single-writer accumulator; `build()` freezes into a Complex."""

    def __init__(self) -> None:
        self._labels: list[Optional[str]] = []
        self._coords: list[Optional[tuple[float, ...]]] = []
        self._cells: list[list[Cell]] = [[]]
        self._any_coords = False
        self._label_set: set[str] = set()

    @classmethod
    def from_complex(cls, complex: Complex) -> "ComplexBuilder":
        b = cls()
        b._labels = list(complex.labels)
        b._label_set = {lab for lab in b._labels if lab is not None}
        b._coords = [complex.coords(v) for v in complex.vertex_ids()]
        b._any_coords = any(c is not None for c in b._coords)
        b._cells = [list(complex.cells_of(d)) for d in range(complex.dim + 1)]
        return b

    @property
    def n_vertices(self) -> int:
        return len(self._labels)

    def n_cells(self, d: int) -> int:
        return len(self._cells[d]) if d < len(self._cells) else 0

    def cell(self, d: int, i: int) -> Cell:
        return self._cells[d][i]

    def cells_of(self, d: int) -> list[Cell]:
        return self._cells[d] if d < len(self._cells) else []

    def fresh_label(self, base: str) -> str:
        lab = base
        while lab in self._label_set:
            lab += "'"
        return lab

    def add_vertex(self, label: Optional[str] = None, coords: Optional[Sequence[float]] = None) -> VertexId:
        if label is not None:
            label = self.fresh_label(label)
            self._label_set.add(label)
        v = len(self._labels)
        self._labels.append(label)
        self._coords.append(tuple(coords) if coords is not None else None)
        if coords is not None:
            self._any_coords = True
        self._cells[0].append(Cell(id=v, dim=0, vertices=(v,), facets=()))
        return v

    def add_cell(self, dim: int, vertices: Sequence[VertexId], facets: Sequence[int] = ()) -> int:
        if dim < 1:
            raise BadDimension("use add_vertex for 0-cells")
        verts = tuple(sorted(vertices))
        if len(verts) != dim + 1:
            raise VertexArityMismatch(f"{dim}-cell needs {dim + 1} vertices, got {len(verts)}")
        if len(set(verts)) != dim + 1:
            raise DuplicateVertexInCell(str(verts))
        for v in verts:
            if not 0 <= v < len(self._labels):
                raise UnknownVertex(str(v))
        facet_ids = tuple(facets)
        if len(facet_ids) != dim + 1:
            raise VertexArityMismatch(f"{dim}-cell needs {dim + 1} facets, got {len(facet_ids)}")
        while len(self._cells) <= dim:
            self._cells.append([])
        lower = self._cells[dim - 1]
        got: list[frozenset[int]] = []
        for f in facet_ids:
            if not 0 <= f < len(lower):
                raise DanglingFacet(f"{dim - 1}-cell {f} does not exist")
            got.append(frozenset(lower[f].vertices))
        want = {frozenset(s) for s in combinations(verts, dim)}
        if set(got) != want or len(set(got)) != dim + 1:
            raise FacetCoverageError(f"facets of new {dim}-cell do not cover its vertex subsets")
        cell = Cell(id=len(self._cells[dim]), dim=dim, vertices=verts, facets=facet_ids)
        self._cells[dim].append(cell)
        return cell.id

    def build(self) -> Complex:
        coords = self._coords if self._any_coords else None
        return Complex(self._cells, self._labels, coords)


class SimplicialBuilder:
    """Convenience layer for honest simplicial complexes (unique vertex sets).

    `add_simplex` inserts a simplex together with its full face closure,
    reusing faces that already exist.  Unsuitable once parallel cells are
    wanted; the pipelines that need those build cells explicitly.
    """

    def __init__(self) -> None:
        self.builder = ComplexBuilder()
        self._by_vertices: dict[frozenset[int], tuple[int, int]] = {}

    def add_vertex(self, label: Optional[str] = None, coords: Optional[Sequence[float]] = None) -> VertexId:
        v = self.builder.add_vertex(label, coords)
        self._by_vertices[frozenset((v,))] = (0, v)
        return v

    def find(self, vertices: Iterable[int]) -> Optional[tuple[int, int]]:
        return self._by_vertices.get(frozenset(vertices))

    def add_simplex(self, vertices: Sequence[int]) -> tuple[int, int]:
        verts = tuple(sorted(set(vertices)))
        if len(verts) != len(tuple(vertices)):
            raise DuplicateVertexInCell(str(tuple(vertices)))
        key = frozenset(verts)
        if key in self._by_vertices:
            return self._by_vertices[key]
        dim = len(verts) - 1
        if dim == 0:
            raise UnknownVertex("vertices must be added with add_vertex first")
        facet_ids = []
        for sub in combinations(verts, dim):
            d, i = self.add_simplex(sub) if len(sub) > 1 else (0, sub[0])
            facet_ids.append(i)
        cell_id = self.builder.add_cell(dim, verts, facet_ids)
        self._by_vertices[key] = (dim, cell_id)
        return (dim, cell_id)

    def build(self) -> Complex:
        return self.builder.build()


# ---- JSON interchange ----

def complex_to_json(complex: Complex) -> dict:
    vertices = []
    for v in complex.vertex_ids():
        entry: dict = {"id": v}
        if complex.label(v) is not None:
            entry["label"] = complex.label(v)
        c = complex.coords(v)
        if c is not None:
            entry["coords"] = list(c)
        vertices.append(entry)
    cells = []
    for d in range(complex.dim + 1):
        for c in complex.cells_of(d):
            cells.append({"id": c.id, "dim": d, "vertices": list(c.vertices), "facets": list(c.facets)})
    return {"dimension": complex.dim, "vertices": vertices, "cells": cells}


def complex_from_json(obj: dict) -> Complex:
    try:
        dim = int(obj["dimension"])
        vertex_entries = sorted(obj["vertices"], key=lambda e: int(e["id"]))
        if [int(e["id"]) for e in vertex_entries] != list(range(len(vertex_entries))):
            raise ParseError("vertex ids must be dense 0-based")
        labels = [e.get("label") for e in vertex_entries]
        raw_coords = [tuple(float(x) for x in e["coords"]) if "coords" in e else None for e in vertex_entries]
        coords = raw_coords if any(c is not None for c in raw_coords) else None
        layers: list[list[dict]] = [[] for _ in range(dim + 1)]
        for e in obj["cells"]:
            d = int(e["dim"])
            if not 0 <= d <= dim:
                raise ParseError(f"cell dimension {d} outside stated dimension {dim}")
            layers[d].append(e)
        cells: list[list[Cell]] = []
        for d, layer in enumerate(layers):
            layer.sort(key=lambda e: int(e["id"]))
            if [int(e["id"]) for e in layer] != list(range(len(layer))):
                raise ParseError(f"{d}-cell ids must be dense 0-based")
            cells.append(
                [
                    Cell(
                        id=int(e["id"]),
                        dim=d,
                        vertices=tuple(int(v) for v in e["vertices"]),
                        facets=tuple(int(f) for f in e.get("facets", ())),
                    )
                    for e in layer
                ]
            )
        return Complex(cells, labels, coords)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed complex JSON: {exc}") from exc


def dump_canonical(obj) -> str:
    """Canonical JSON text: sorted keys, stable float repr, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"
