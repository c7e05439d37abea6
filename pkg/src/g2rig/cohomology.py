"""Coboundary operators with adjoint coefficients and the 2-step tangency map.

Cochain conventions (``n = dim``, positions 0-based):

* level 1, ``Hom(g, g)``: generator ``(a, b)`` is ``e_a* (x) e_b``;
* level 2, ``L2 g* (x) g``: generator ``(a, b, c)``, ``a < b``, is
  ``e_a* ^ e_b* (x) e_c``, i.e. ``phi(e_a, e_b) = e_c = -phi(e_b, e_a)``;
* level 3, ``L3 g* (x) g``: generator ``(a, b, c, d)``, ``a < b < c``;
* tangency target ``L2 g* (x) g* (x) g``: generator ``(a, b, c, d)``, ``a < b``,
  ``c`` free;
* trace target ``g*``: generator ``a``.

2-nil cocycles are the common kernel of delta2, the tangency map
``T(phi)(x, y, z) = phi([x, y], z) + [phi(x, y), z]`` and the trace map
``U(phi)(x) = tr phi(x, -)``. Nilpotent brackets satisfy ``tr ad x = 0``, a
linear equation on brackets, so ``U`` vanishes on every tangent vector of
the variety; without it ``a_2`` and ``h_1 + a_1`` pick up spurious
non-nilpotent classes such as ``[e_1, e_3] = t e_3``.

Row indices of every matrix follow these orders, column indices the order of
the source level.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exact import ExactMatrix, rref
from .liealg import StructureConstants, Subspace, center, two_step_check

DEFAULT_COHOMOLOGY_CAP = 12
CAP_ENV_VAR = "G2RIG_COHOMOLOGY_CAP"


class NotTwoStepError(ValueError):
    pass


class CohomologyCapError(ValueError):
    pass


class InternalInconsistencyError(RuntimeError):
    pass


class DecompositionError(ValueError):
    pass


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_COHOMOLOGY_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None


class CochainBasis:
    """Bijection between flat positions and labeled cochain generators."""

    LEVELS = (1, 2, 3, "tangency")

    def __init__(self, n: int, level):
        if level not in self.LEVELS:
            raise ValueError(f"unknown cochain level {level!r}")
        self.n = n
        self.level = level
        rng = range(n)
        if level == 1:
            gens = list(itertools.product(rng, rng))
        elif level == 2:
            gens = [(a, b, c) for a, b in itertools.combinations(rng, 2) for c in rng]
        elif level == 3:
            gens = [(a, b, c, d) for a, b, c in itertools.combinations(rng, 3) for d in rng]
        else:
            gens = [(a, b, c, d) for a, b in itertools.combinations(rng, 2) for c in rng for d in rng]
        self._labels = gens
        self._index = {g: k for k, g in enumerate(gens)}

    def __len__(self) -> int:
        return len(self._labels)

    def label(self, position: int) -> tuple[int, ...]:
        return self._labels[position]

    def position(self, label: tuple[int, ...]) -> int:
        return self._index[tuple(label)]

    def __iter__(self):
        return iter(self._labels)


@dataclass(frozen=True)
class CohomologyDims:
    dim_c1: int
    dim_c2: int
    dim_c3: int
    rank_delta1: int
    dim_ker_delta2: int
    dim_ker_tangency: int
    dim_ker_trace: int
    dim_z2_nil: int
    dim_h2_nil: int

    def to_json(self) -> dict:
        return asdict(self)


def _require_two_step(sc: StructureConstants) -> None:
    if not two_step_check(sc):
        raise NotTwoStepError("structure constants are not at most 2-step nilpotent")


def _pair_sign(a: int, b: int, p: int, q: int) -> int:
    """Value of ``e_a* ^ e_b*`` (``a < b``) on the basis pair ``(e_p, e_q)``."""
    if p == a and q == b:
        return 1
    if p == b and q == a:
        return -1
    return 0


class Coboundaries:
    """Lazily assembled delta1, delta2 and tangency matrices of one algebra."""

    def __init__(self, sc: StructureConstants):
        _require_two_step(sc)
        self.sc = sc
        n = sc.dim
        self.c1 = CochainBasis(n, 1)
        self.c2 = CochainBasis(n, 2)
        self.c3 = CochainBasis(n, 3)
        self.tangent = CochainBasis(n, "tangency")

    @cached_property
    def delta1(self) -> ExactMatrix:
        sc, n = self.sc, self.sc.dim
        c2 = self.c2
        columns = []
        for a, b in self.c1:
            # f = e_a* (x) e_b:  d f(x, y) = [f x, y] + [x, f y] - f[x, y]
            col: dict[int, Fraction] = {}
            for t in range(n):
                if t == a:
                    continue
                if a < t:
                    x, y, vec = a, t, sc.br(b, t)
                else:
                    x, y, vec = t, a, sc.br(t, b)
                for k, v in vec.items():
                    r = c2.position((x, y, k))
                    col[r] = col.get(r, 0) + v
            for x, y, v in sc.output_support.get(a, ()):
                r = c2.position((x, y, b))
                col[r] = col.get(r, 0) - v
            columns.append(col)
        return ExactMatrix.from_columns(len(c2), columns)

    def _delta2_on_triple(self, a: int, b: int, c: int, x: int, y: int, z: int) -> dict[int, Fraction]:
        sc = self.sc
        out: dict[int, Fraction] = {}

        def add(vec, scale):
            for k, v in vec.items():
                out[k] = out.get(k, 0) + scale * v

        # [x, phi(y,z)] - [y, phi(x,z)] + [z, phi(x,y)]
        for s, u, p, q in ((1, x, y, z), (-1, y, x, z), (1, z, x, y)):
            sign = _pair_sign(a, b, p, q)
            if sign:
                add(sc.br(u, c), s * sign)
        # - phi([x,y],z) + phi([x,z],y) - phi([y,z],x)
        for s, p, q, r in ((-1, x, y, z), (1, x, z, y), (-1, y, z, x)):
            for k, v in sc.br(p, q).items():
                sign = _pair_sign(a, b, k, r)
                if sign:
                    out[c] = out.get(c, 0) + s * sign * v
        return out

    @cached_property
    def delta2(self) -> ExactMatrix:
        sc, n = self.sc, self.sc.dim
        c3 = self.c3
        columns = []
        for a, b, c in self.c2:
            triples = {tuple(sorted((a, b, t))) for t in range(n) if t not in (a, b)}
            for k, partner in ((a, b), (b, a)):
                for p, q, _ in sc.output_support.get(k, ()):
                    if partner not in (p, q):
                        triples.add(tuple(sorted((p, q, partner))))
            col: dict[int, Fraction] = {}
            for x, y, z in sorted(triples):
                for d, v in self._delta2_on_triple(a, b, c, x, y, z).items():
                    if v:
                        col[c3.position((x, y, z, d))] = v
            columns.append(col)
        return ExactMatrix.from_columns(len(c3), columns)

    @cached_property
    def tangency(self) -> ExactMatrix:
        # T(phi)(x, y, z) = phi(mu(x,y), z) + mu(phi(x,y), z)
        sc, n = self.sc, self.sc.dim
        tb = self.tangent
        columns = []
        for a, b, c in self.c2:
            col: dict[int, Fraction] = {}
            for z in range(n):
                for d, v in sc.br(c, z).items():
                    r = tb.position((a, b, z, d))
                    col[r] = col.get(r, 0) + v
            for k, partner, sign in ((a, b, 1), (b, a, -1)):
                for x, y, v in sc.output_support.get(k, ()):
                    r = tb.position((x, y, partner, c))
                    col[r] = col.get(r, 0) + sign * v
            columns.append(col)
        return ExactMatrix.from_columns(len(tb), columns)

    @cached_property
    def trace(self) -> ExactMatrix:
        columns = []
        for a, b, c in self.c2:
            # phi(e_a, e_b) = e_c feeds tr phi(e_a, -) when c == b, tr phi(e_b, -) when c == a
            col = {}
            if c == b:
                col[a] = 1
            if c == a:
                col[b] = -1
            columns.append(col)
        return ExactMatrix.from_columns(self.sc.dim, columns)

    @cached_property
    def rank_delta1(self) -> int:
        return self.delta1.rank()

    def dimensions(self) -> CohomologyDims:
        d2, t, u = self.delta2, self.tangency, self.trace
        c2 = len(self.c2)
        rank_d1 = self.rank_delta1
        z2_nil = c2 - d2.vstack(t).vstack(u).rank()
        if rank_d1 > z2_nil:
            raise InternalInconsistencyError(
                f"rank delta1 = {rank_d1} exceeds dim Z2_2-nil = {z2_nil}; coboundaries must be 2-nil cocycles"
            )
        return CohomologyDims(
            dim_c1=len(self.c1),
            dim_c2=c2,
            dim_c3=len(self.c3),
            rank_delta1=rank_d1,
            dim_ker_delta2=c2 - d2.rank(),
            dim_ker_tangency=c2 - t.rank(),
            dim_ker_trace=c2 - u.rank(),
            dim_z2_nil=z2_nil,
            dim_h2_nil=z2_nil - rank_d1,
        )


def delta1_matrix(sc: StructureConstants) -> ExactMatrix:
    return Coboundaries(sc).delta1


def delta2_matrix(sc: StructureConstants) -> ExactMatrix:
    return Coboundaries(sc).delta2


def tangency_matrix(sc: StructureConstants) -> ExactMatrix:
    return Coboundaries(sc).tangency


def trace_matrix(sc: StructureConstants) -> ExactMatrix:
    return Coboundaries(sc).trace


def _check_cap(sc: StructureConstants, cap: int | None) -> None:
    cap = default_cap() if cap is None else cap
    if sc.dim > cap:
        raise CohomologyCapError(f"algebra dimension {sc.dim} exceeds cohomology cap {cap}")


def cohomology_dimensions(sc: StructureConstants, cap: int | None = None) -> CohomologyDims:
    _check_cap(sc, cap)
    return Coboundaries(sc).dimensions()


def h2_nil_dimension(sc: StructureConstants, cap: int | None = None) -> int:
    """``dim (ker delta2 & ker T & ker U) - rank delta1``."""
    return cohomology_dimensions(sc, cap).dim_h2_nil


def c2_vector(sc: StructureConstants, entries: dict[tuple[int, int, int], object]) -> list[Fraction]:
    """Flat C2 coordinates from ``{(a, b, c): value}``; ``(b, a, c)`` means ``-value`` at ``(a, b, c)``."""
    basis = CochainBasis(sc.dim, 2)
    vec = [Fraction(0)] * len(basis)
    for (a, b, c), v in entries.items():
        if a == b:
            raise ValueError("alternating cochain cannot pair a generator with itself")
        sign = 1 if a < b else -1
        vec[basis.position((min(a, b), max(a, b), c))] += sign * Fraction(v)
    return vec


def _column(vector: Sequence) -> ExactMatrix:
    return ExactMatrix.from_columns(len(vector), [{i: v for i, v in enumerate(vector) if v}])


def in_coboundaries(sc: StructureConstants, phis: Sequence[Sequence], cob: Coboundaries | None = None) -> bool:
    """True iff every cochain in ``phis`` lies in the column space of delta1."""
    cob = cob or Coboundaries(sc)
    d1 = cob.delta1
    if not phis:
        return True
    extra = ExactMatrix.from_columns(d1.nrows, [{i: v for i, v in enumerate(p) if v} for p in phis])
    return d1.hstack(extra).rank() == cob.rank_delta1


def cocycle_not_coboundary(sc: StructureConstants, phi: Sequence) -> bool:
    """True iff appending ``phi`` to delta1 raises the rank by one."""
    cob = Coboundaries(sc)
    if len(phi) != len(cob.c2):
        raise ValueError(f"cochain length {len(phi)} != dim C2 = {len(cob.c2)}")
    return cob.delta1.hstack(_column(phi)).rank() == cob.rank_delta1 + 1


def standard_decomposition(sc: StructureConstants) -> tuple[Subspace, Subspace]:
    """Center plus the coordinate complement on the center's non-pivot positions."""
    z = center(sc)
    pivots = set(z.pivots)
    v = Subspace.coordinate(sc.dim, [k for k in range(sc.dim) if k not in pivots])
    return v, z


def _dual_forms(v_basis: Subspace, z_basis: Subspace) -> list[list[Fraction]]:
    """Functionals ``v_a*`` dual to ``v_basis`` with respect to the splitting ``v + z``.

    With ``M`` holding the combined basis as columns, ``v_a*`` is row ``a`` of ``M^-1``.
    """
    n = v_basis.ambient_dim
    vectors = v_basis.basis + z_basis.basis
    aug = [[vectors[r][i] for r in range(n)] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    reduced, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise DecompositionError("v and z do not span the ambient space")
    return [reduced[a][n:] for a in range(v_basis.dim)]


def alvarez_test(sc: StructureConstants, v_basis: Subspace, z_basis: Subspace) -> bool:
    """True iff every ``v_a* ^ v_b* (x) z_c`` lies in the coboundaries.

    ``False`` certifies non-rigidity; ``True`` alone certifies nothing.
    """
    n = sc.dim
    if v_basis.ambient_dim != n or z_basis.ambient_dim != n:
        raise DecompositionError("subspaces must live in the algebra")
    if z_basis != center(sc):
        raise DecompositionError("z_basis must be the center")
    if v_basis.dim + z_basis.dim != n or (v_basis + z_basis).dim != n:
        raise DecompositionError("v and z must be complementary")
    cob = Coboundaries(sc)
    duals = _dual_forms(v_basis, z_basis)
    basis = cob.c2
    phis = []
    for alpha, beta in itertools.combinations(duals, 2):
        wedge = {}
        for p, q in itertools.combinations(range(n), 2):
            w = alpha[p] * beta[q] - alpha[q] * beta[p]
            if w:
                wedge[(p, q)] = w
        for z in z_basis.basis:
            vec = [Fraction(0)] * len(basis)
            for (p, q), w in wedge.items():
                for d, zd in enumerate(z):
                    if zd:
                        vec[basis.position((p, q, d))] = w * zd
            phis.append(vec)
    return in_coboundaries(sc, phis, cob)
