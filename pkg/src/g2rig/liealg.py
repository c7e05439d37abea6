"""Graph Lie algebras as exact structure-constant tables.

Basis positions are 0-based in Python; labels carry the 1-based vertex
numbering of the graph (``v1..vm`` then edges ``a_ij`` in lexicographic
order). JSON export uses 1-based positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact import nullspace_from_rref, rref
from .graph import Graph, isolated_vertices


@dataclass(frozen=True, order=True)
class BasisLabel:
    kind: str  # "vertex" or "edge"
    payload: tuple[int, ...]

    def __post_init__(self):
        if self.kind == "vertex" and len(self.payload) == 1:
            return
        if self.kind == "edge" and len(self.payload) == 2 and self.payload[0] < self.payload[1]:
            return
        raise ValueError(f"invalid basis label {self.kind}{self.payload}")

    @classmethod
    def vertex(cls, i: int) -> BasisLabel:
        return cls("vertex", (i,))

    @classmethod
    def edge(cls, i: int, j: int) -> BasisLabel:
        return cls("edge", (min(i, j), max(i, j)))

    def __str__(self) -> str:
        if self.kind == "vertex":
            return f"v{self.payload[0]}"
        i, j = self.payload
        return f"a{i}{j}" if j < 10 else f"a{i},{j}"

    def to_json(self) -> dict:
        if self.kind == "vertex":
            return {"kind": "vertex", "index": self.payload[0]}
        return {"kind": "edge", "ends": list(self.payload)}

    @classmethod
    def from_json(cls, data: dict) -> BasisLabel:
        if data["kind"] == "vertex":
            return cls.vertex(int(data["index"]))
        return cls.edge(*(int(x) for x in data["ends"]))


def _generic_labels(n: int) -> tuple[BasisLabel, ...]:
    return tuple(BasisLabel.vertex(i) for i in range(1, n + 1))


class StructureConstants:
    """Bracket table ``[e_i, e_j] = sum_k c[i][j][k] e_k`` over the rationals.

    Antisymmetry is enforced at construction; Jacobi is not (see
    :func:`jacobi_check`), so arbitrary tables can be inspected.
    """

    def __init__(self, dim: int, table, labels: Sequence[BasisLabel] | None = None):
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else _generic_labels(dim)
        if len(self.labels) != dim or len(set(self.labels)) != dim:
            raise ValueError("labels must be a bijection onto the basis")
        c = tuple(tuple(tuple(Fraction(x) for x in table[i][j]) for j in range(dim)) for i in range(dim))
        for i in range(dim):
            if len(c[i]) != dim or any(len(c[i][j]) != dim for j in range(dim)):
                raise ValueError("table must be dim x dim x dim")
            for j in range(dim):
                if any(c[i][j][k] != -c[j][i][k] for k in range(dim)):
                    raise ValueError(f"table is not antisymmetric at ({i}, {j})")
        self.c = c

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict[tuple[int, int], dict[int, object]],
                      labels: Sequence[BasisLabel] | None = None) -> StructureConstants:
        """Build from ``{(i, j): {k: coeff}}`` (0-based, each unordered pair once)."""
        table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in brackets.items():
            if i == j:
                raise ValueError("[e_i, e_i] must vanish")
            for k, v in out.items():
                table[i][j][k] = Fraction(v)
                table[j][i][k] = -Fraction(v)
        return cls(dim, table, labels)

    @cached_property
    def basis_brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """Nonzero ``[e_i, e_j]`` for all ordered pairs, as sparse vectors."""
        out = {}
        n = self.dim
        for i in range(n):
            for j in range(n):
                vec = {k: v for k, v in enumerate(self.c[i][j]) if v}
                if vec:
                    out[(i, j)] = vec
        return out

    @cached_property
    def output_support(self) -> dict[int, list[tuple[int, int, Fraction]]]:
        """For each k, the pairs ``i < j`` with ``c[i][j][k] != 0``."""
        out: dict[int, list] = {}
        for (i, j), vec in self.basis_brackets.items():
            if i < j:
                for k, v in vec.items():
                    out.setdefault(k, []).append((i, j, v))
        return out

    def br(self, i: int, j: int) -> dict[int, Fraction]:
        return self.basis_brackets.get((i, j), {})

    def position(self, label: BasisLabel) -> int:
        return self.labels.index(label)

    def is_abelian(self) -> bool:
        return not self.basis_brackets

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.dim == other.dim and self.labels == other.labels and self.c == other.c

    def __repr__(self) -> str:
        return f"StructureConstants(dim={self.dim}, nonzero_brackets={len(self.basis_brackets) // 2})"

    def to_json(self) -> dict:
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                vec = self.br(i, j)
                if vec:
                    brackets.append({
                        "i": i + 1,
                        "j": j + 1,
                        "coeffs": [[k + 1, f"{v.numerator}/{v.denominator}"] for k, v in sorted(vec.items())],
                    })
        return {"dim": self.dim, "labels": [lab.to_json() for lab in self.labels], "brackets": brackets}

    @classmethod
    def from_json(cls, data: dict) -> StructureConstants:
        dim = int(data["dim"])
        labels = [BasisLabel.from_json(x) for x in data["labels"]]
        brackets = {}
        for entry in data["brackets"]:
            brackets[(entry["i"] - 1, entry["j"] - 1)] = {k - 1: Fraction(v) for k, v in entry["coeffs"]}
        return cls.from_brackets(dim, brackets, labels)


def graph_basis(g: Graph) -> tuple[BasisLabel, ...]:
    return tuple(BasisLabel.vertex(i) for i in range(1, g.num_vertices + 1)) + tuple(
        BasisLabel.edge(i, j) for i, j in g.sorted_edges
    )


def graph_algebra(g: Graph) -> StructureConstants:
    """``[v_i, v_j] = a_ij`` for each edge; every other basis bracket vanishes."""
    labels = graph_basis(g)
    pos = {lab: k for k, lab in enumerate(labels)}
    brackets = {
        (i - 1, j - 1): {pos[BasisLabel.edge(i, j)]: 1} for i, j in g.sorted_edges
    }
    return StructureConstants.from_brackets(len(labels), brackets, labels)


# -- vectors ----------------------------------------------------------------


def unit(n: int, k: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[k] = Fraction(1)
    return v


def bracket(sc: StructureConstants, x: Sequence, y: Sequence) -> list[Fraction]:
    n = sc.dim
    if len(x) != n or len(y) != n:
        raise ValueError(f"vectors must have length {n}")
    out = [Fraction(0)] * n
    for (i, j), vec in sc.basis_brackets.items():
        coef = x[i] * y[j]
        if coef:
            for k, v in vec.items():
                out[k] += coef * v
    return out


def jacobi_check(sc: StructureConstants) -> bool:
    n = sc.dim
    for i, j, k in itertools.combinations(range(n), 3):
        total: dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, coef in sc.br(a, b).items():
                for t, v in sc.br(m, c).items():
                    total[t] = total.get(t, 0) + coef * v
        if any(total.values()):
            return False
    return True


def two_step_check(sc: StructureConstants) -> bool:
    """True iff ``[[e_i, e_j], e_k] = 0`` for all basis triples (abelian included)."""
    for (i, j), vec in sc.basis_brackets.items():
        for k in range(sc.dim):
            total: dict[int, Fraction] = {}
            for m, coef in vec.items():
                for t, v in sc.br(m, k).items():
                    total[t] = total.get(t, 0) + coef * v
            if any(total.values()):
                return False
    return True


# -- subspaces --------------------------------------------------------------


class Subspace:
    """A subspace of Q^n held as the nonzero rows of a reduced echelon form."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [[Fraction(x) for x in v] for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise ValueError(f"vectors must have length {ambient_dim}")
        reduced, pivots = rref(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> Subspace:
        return cls(ambient_dim, [unit(ambient_dim, k) for k in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector: Sequence) -> bool:
        residual = [Fraction(x) for x in vector]
        for row, p in zip(self.basis, self.pivots):
            f = residual[p]
            if f:
                residual = [a - f * b for a, b in zip(residual, row)]
        return not any(residual)

    def is_subspace_of(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def center(sc: StructureConstants) -> Subspace:
    """Kernel of ``x -> ([x, e_1], ..., [x, e_n])``."""
    n = sc.dim
    rows = []
    for j in range(n):
        for k in range(n):
            row = [sc.c[i][j][k] for i in range(n)]
            if any(row):
                rows.append(row)
    reduced, pivots = rref(rows, n)
    return Subspace(n, nullspace_from_rref(reduced, pivots, n))


def derived_subalgebra(sc: StructureConstants) -> Subspace:
    n = sc.dim
    vecs = []
    for (i, j), vec in sc.basis_brackets.items():
        if i < j:
            row = [Fraction(0)] * n
            for k, v in vec.items():
                row[k] = v
            vecs.append(row)
    return Subspace(n, vecs)


def abelian_factor_dimension(g: Graph) -> int:
    """Dimension of the abelian factor spanned by the isolated vertices."""
    return len(isolated_vertices(g))


def transport(sc: StructureConstants, perm: Sequence[int]) -> StructureConstants:
    """Relabel basis positions: position ``p`` of ``sc`` becomes ``perm[p]``."""
    n = sc.dim
    table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vec in sc.basis_brackets.items():
        for k, v in vec.items():
            table[perm[i]][perm[j]][perm[k]] = v
    labels = [None] * n
    for p, lab in enumerate(sc.labels):
        labels[perm[p]] = lab
    return StructureConstants(n, table, labels)
