"""Certificate-producing 2-rigidity decisions for graph Lie algebras.

Sufficient criteria only: vanishing 2-nil cohomology or completeness prove
rigidity; an abelian factor (other than ``h_1 + a_1``) or a non-adjacent
vertex pair whose brackets miss part of the center disprove it. Everything
else is ``UNDECIDED``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from .cohomology import (
    CohomologyDims,
    Coboundaries,
    alvarez_test,
    c2_vector,
    cohomology_dimensions,
    default_cap,
    in_coboundaries,
    standard_decomposition,
)
from .graph import Graph, canonical_key, incident_edges, is_complete, isolated_vertices, serialize_graph6
from .liealg import BasisLabel, graph_algebra


class Status(str, enum.Enum):
    RIGID = "rigid"
    NON_RIGID = "non_rigid"
    UNDECIDED = "undecided"


class Method(str, enum.Enum):
    AUTO = "auto"
    COMBINATORIAL = "combinatorial"
    WITH_COHOMOLOGY = "with-cohomology"

    @property
    def uses_cohomology(self) -> bool:
        return self is not Method.COMBINATORIAL


@dataclass(frozen=True)
class FreeComplete:
    m: int
    kind = "FreeComplete"
    letter = "B"

    def check(self, g: Graph) -> bool:
        return g.num_vertices == self.m and is_complete(g)

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": self.m}

    def summary(self) -> str:
        return f"K{self.m}"


@dataclass(frozen=True)
class CohomologyVanishes:
    h2_nil_dim: int
    dims: CohomologyDims
    kind = "CohomologyVanishes"
    letter = "A"

    def check(self, g: Graph) -> bool:
        sc = graph_algebra(g)
        return self.h2_nil_dim == 0 and cohomology_dimensions(sc, cap=sc.dim) == self.dims

    def to_json(self) -> dict:
        return {"kind": self.kind, "h2_nil_dim": self.h2_nil_dim, "dims": self.dims.to_json()}

    def summary(self) -> str:
        return f"h2_nil=0 (rank d1={self.dims.rank_delta1}, z2_nil={self.dims.dim_z2_nil})"


@dataclass(frozen=True)
class AbelianFactor:
    nilpotent_part: Graph
    l: int
    is_h1_a1: bool
    kind = "AbelianFactor"
    letter = "C"

    def check(self, g: Graph) -> bool:
        iso = isolated_vertices(g)
        if self.l != len(iso) or self.l == 0:
            return False
        if self.nilpotent_part != strip_isolated(g):
            return False
        expected = self.l == 1 and len(g.edges) == 1 and g.num_vertices == 3
        return self.is_h1_a1 == expected

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "l": self.l,
            "is_h1_a1": self.is_h1_a1,
            "nilpotent_part": self.nilpotent_part.to_json(),
        }

    def summary(self) -> str:
        return f"l={self.l}" + (" (h1+a1)" if self.is_h1_a1 else "")


@dataclass(frozen=True)
class TheoremDWitness:
    i: int
    j: int
    z_label: BasisLabel
    kind = "TheoremDWitness"
    letter = "D"

    def cochain(self, g: Graph):
        """Coordinates of ``v_i* ^ v_j* (x) z`` in the graph algebra's C2."""
        sc = graph_algebra(g)
        z = sc.position(self.z_label)
        return sc, c2_vector(sc, {(self.i - 1, self.j - 1, z): 1})

    def check(self, g: Graph) -> bool:
        """Re-validate combinatorially and by the coboundary rank test."""
        i, j = self.i, self.j
        if not (1 <= i < j <= g.num_vertices) or g.has_edge(i, j):
            return False
        iso = isolated_vertices(g)
        if i in iso or j in iso:
            return False
        covered = incident_edges(g, i) | incident_edges(g, j)
        lab = self.z_label
        if lab.kind == "edge":
            if lab.payload not in g.edges or lab.payload in covered:
                return False
        elif lab.payload[0] not in iso:
            return False
        sc, phi = self.cochain(g)
        return not in_coboundaries(sc, [phi])

    def to_json(self) -> dict:
        return {"kind": self.kind, "i": self.i, "j": self.j, "z_label": str(self.z_label)}

    def summary(self) -> str:
        return f"v{self.i},v{self.j};{self.z_label}"


@dataclass(frozen=True)
class AbelianSpecialCase:
    m: int
    kind = "AbelianSpecialCase"
    letter = None

    def check(self, g: Graph) -> bool:
        return g.num_vertices == self.m and not g.edges

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": self.m}

    def summary(self) -> str:
        return f"a{self.m}"


Certificate = Union[FreeComplete, CohomologyVanishes, AbelianFactor, TheoremDWitness, AbelianSpecialCase]


@dataclass(frozen=True)
class RigidityVerdict:
    status: Status
    certificate: Certificate | None = None
    h2_nil_dim: int | None = field(default=None, compare=False)

    def __post_init__(self):
        cert = self.certificate
        if self.status is Status.UNDECIDED:
            return
        if cert is None:
            raise ValueError("decided verdicts need a certificate")
        if self.status is Status.RIGID:
            ok = isinstance(cert, (FreeComplete, CohomologyVanishes)) or (
                isinstance(cert, AbelianFactor) and cert.is_h1_a1
            ) or (isinstance(cert, AbelianSpecialCase) and cert.m <= 2)
        else:
            ok = isinstance(cert, TheoremDWitness) or (
                isinstance(cert, AbelianFactor) and not cert.is_h1_a1
            ) or (isinstance(cert, AbelianSpecialCase) and cert.m >= 3)
        if not ok:
            raise ValueError(f"certificate {cert.kind} cannot support status {self.status.value}")

    def to_json(self, g: Graph | None = None) -> dict:
        out = {}
        if g is not None:
            out["graph6"] = serialize_graph6(g)
        out["status"] = self.status.value
        out["certificate"] = self.certificate.to_json() if self.certificate else None
        if g is not None:
            out["three_rigid"] = three_rigid_flag(g)
        return out


def strip_isolated(g: Graph) -> Graph:
    """The graph on the non-isolated vertices, renumbered in order."""
    iso = isolated_vertices(g)
    keep = [v for v in range(1, g.num_vertices + 1) if v not in iso]
    if not keep:
        raise ValueError("edgeless graph has no nilpotent part")
    new = {v: k for k, v in enumerate(keep, start=1)}
    return Graph.from_edges(len(keep), [(new[i], new[j]) for i, j in g.edges])


def theorem_d_witness(g: Graph) -> TheoremDWitness | None:
    """Smallest non-adjacent non-isolated pair whose incident edges miss part of the center."""
    iso = isolated_vertices(g)
    live = [v for v in range(1, g.num_vertices + 1) if v not in iso]
    for a_idx, i in enumerate(live):
        for j in live[a_idx + 1:]:
            if g.has_edge(i, j):
                continue
            covered = incident_edges(g, i) | incident_edges(g, j)
            missing = sorted(g.edges - covered)
            if missing:
                return TheoremDWitness(i, j, BasisLabel.edge(*missing[0]))
            if iso:
                return TheoremDWitness(i, j, BasisLabel.vertex(min(iso)))
    return None


def _is_h1_plus_a1(g: Graph) -> bool:
    return g.num_vertices == 3 and len(g.edges) == 1


def classify_graph(g: Graph, method: Method | str = Method.AUTO, cap: int | None = None) -> RigidityVerdict:
    method = Method(method)
    m = g.num_vertices
    if not g.edges:
        status = Status.RIGID if m <= 2 else Status.NON_RIGID
        return RigidityVerdict(status, AbelianSpecialCase(m))
    iso = isolated_vertices(g)
    if iso:
        h1a1 = _is_h1_plus_a1(g)
        cert = AbelianFactor(strip_isolated(g), len(iso), h1a1)
        return RigidityVerdict(Status.RIGID if h1a1 else Status.NON_RIGID, cert)
    if is_complete(g):
        return RigidityVerdict(Status.RIGID, FreeComplete(m))
    witness = theorem_d_witness(g)
    if witness is not None:
        return RigidityVerdict(Status.NON_RIGID, witness)
    cap = default_cap() if cap is None else cap
    if method.uses_cohomology and m + len(g.edges) <= cap:
        dims = cohomology_dimensions(graph_algebra(g), cap)
        if dims.dim_h2_nil == 0:
            return RigidityVerdict(Status.RIGID, CohomologyVanishes(0, dims), h2_nil_dim=0)
        return RigidityVerdict(Status.UNDECIDED, None, h2_nil_dim=dims.dim_h2_nil)
    return RigidityVerdict(Status.UNDECIDED)


# -- reference answers ------------------------------------------------------

EXCEPTIONAL_GRAPHS = (
    Graph(2),                                    # a_2
    Graph.from_edges(3, [(1, 2)]),               # h_1 + a_1
    Graph.from_edges(3, [(1, 2), (1, 3)]),       # path P3
    Graph.from_edges(4, [(1, 2), (3, 4)]),       # 2K2
    Graph.cycle(4),                              # C4
)


@lru_cache(maxsize=None)
def _exceptional_keys() -> frozenset[tuple[int, str]]:
    return frozenset((g.num_vertices, canonical_key(g)) for g in EXCEPTIONAL_GRAPHS)


def expected_verdict(g: Graph) -> Status:
    """Known answer: complete graphs and five small exceptions are the rigid ones."""
    if is_complete(g):
        return Status.RIGID
    if g.num_vertices <= 4 and (g.num_vertices, canonical_key(g)) in _exceptional_keys():
        return Status.RIGID
    return Status.NON_RIGID


def three_rigid_flag(g: Graph) -> bool:
    """``h_1``, ``a_1`` and ``a_2`` are the only 3-rigid graph algebras."""
    m, e = g.num_vertices, len(g.edges)
    return (m == 1) or (m == 2 and e in (0, 1))


def witness_is_sound(g: Graph, witness: TheoremDWitness) -> tuple[bool, bool]:
    """(cochain is not a coboundary, Alvarez containment fails) for the witness's algebra."""
    sc, phi = witness.cochain(g)
    cob = Coboundaries(sc)
    not_coboundary = not in_coboundaries(sc, [phi], cob)
    v, z = standard_decomposition(sc)
    return not_coboundary, not alvarez_test(sc, v, z)
