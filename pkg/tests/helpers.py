"""Shared fixtures: small algebras, fuzz generators for admissible data."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from flatlie.doubleext import (
    ABELIAN_FORM_PARAMS,
    ExtensionData,
    abelian_base,
    family_abelian,
    family_nonabelian_dim3,
    family_nonabelian_dim4,
)
from flatlie.exactnum import Matrix, Q
from flatlie.liealg import LieAlgebra
from flatlie.metric import MetricLieAlgebra
from flatlie.milnor import MilnorData

REAL = [Q(x) for x in ("0", "1", "-1", "2", "1/2", "-3/2")]
POSITIVE = [Q(x) for x in ("1", "2", "1/2", "3")]
NONZERO = [Q(x) for x in ("1", "-1", "2", "1/2", "-2")]


def heisenberg(alpha=1) -> MetricLieAlgebra:
    """Basis (z, zbar, e1) with [zbar, e1] = z."""
    L = LieAlgebra(3, {(1, 2): (1, 0, 0)}, ["z", "zbar", "e1"])
    a = Q(alpha)
    return MetricLieAlgebra(L, Matrix([[0, a, 0], [a, 0, 0], [0, 0, 1]]))


def affine_line() -> MetricLieAlgebra:
    """{[e1, e2] = e2} with the Euclidean metric: solvable, not unimodular, not flat."""
    return MetricLieAlgebra(LieAlgebra(2, {(0, 1): (0, 1)}, ["e1", "e2"]), Matrix.identity(2))


def euclidean_abelian(n: int) -> MetricLieAlgebra:
    return abelian_base(n)


def nonflat_controls() -> list[MetricLieAlgebra]:
    so3 = LieAlgebra(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, -1, 0)})
    book = LieAlgebra(3, {(0, 1): (0, 1, 0), (0, 2): (0, 0, 1)})
    lor = Matrix([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
    return [
        affine_line(),
        MetricLieAlgebra(so3, Matrix.identity(3)),
        MetricLieAlgebra(book, Matrix.identity(3)),
        MetricLieAlgebra(so3, lor),
        MetricLieAlgebra(LieAlgebra(2, {(0, 1): (0, 1)}), Matrix([[0, 1], [1, 0]])),
    ]


def _abelian_draw(rng: random.Random):
    dim, form = rng.choice(sorted(ABELIAN_FORM_PARAMS))
    names = ABELIAN_FORM_PARAMS[(dim, form)]
    while True:
        params = {}
        for n in names:
            params[n] = rng.choice(POSITIVE if n == "lam" else NONZERO if form in ("f4", "f5") else REAL)
        b0 = [rng.choice(REAL) for _ in range(dim)]
        try:
            data = family_abelian(dim, form, params, b0)
        except ValueError:
            continue
        return f"abelian{dim}-{form}", abelian_base(dim), data


def _dim3_draw(rng: random.Random):
    lam = rng.choice(POSITIVE)
    a, b, c, b1 = (rng.choice(REAL) for _ in range(4))
    B, data = family_nonabelian_dim3(lam, a, b, c, b1)
    return "nonabelian3", B, data


def _dim4_draw(rng: random.Random):
    while True:
        l1, l2 = rng.choice(REAL[:5]), rng.choice(REAL[:5])
        if l1 >= 0 and l2 >= 0 and (l1 or l2):
            break
    x, c, d, f, b1, b2 = (rng.choice(REAL) for _ in range(6))
    B, data = family_nonabelian_dim4(l1, l2, x, c, d, f, b1, b2)
    return "nonabelian4", B, data


def fuzz_admissible(count: int = 100, seed: int = 20240601):
    """``count`` admissible quadruples: every printed abelian form appears,
    then draws cycle through the abelian and the two non-abelian families."""
    rng = random.Random(seed)
    out = []
    for dim, form in sorted(ABELIAN_FORM_PARAMS):
        names = ABELIAN_FORM_PARAMS[(dim, form)]
        params = {n: k + 1 for k, n in enumerate(names)}
        out.append((f"abelian{dim}-{form}", abelian_base(dim), family_abelian(dim, form, params, [1] * dim)))
    draws = (_abelian_draw, _dim3_draw, _dim4_draw)
    i = 0
    while len(out) < count:
        out.append(draws[i % 3](rng))
        i += 1
    return out


def perturbed_candidates(count: int = 100, seed: int = 7):
    """Non-abelian candidates: admissible family members, single-entry
    perturbations of xi, D or b0, and targeted single-condition breaks."""
    rng = random.Random(seed)
    out = []
    i = 0
    while len(out) < count:
        label, B, data = (_dim3_draw if i % 2 == 0 else _dim4_draw)(rng)
        n = B.dim
        kind = i % 6
        i += 1
        xi, d, b0 = data.xi.tolist(), data.d.tolist(), list(data.b0)
        r, c = rng.randrange(n), rng.randrange(n)
        delta = rng.choice(NONZERO)
        if kind == 1:
            xi[r][c] += delta
        elif kind == 2:
            d[r][c] += delta
        elif kind == 3:
            b0[r] += delta
        elif kind == 4:
            # same change to D and xi: keeps D - xi, breaks the coupling equations
            xi[r][c] += delta
            d[r][c] += delta
        elif kind == 5:
            # add an inner derivation of the base to D only
            from flatlie.liealg import adjoint

            u = [rng.choice(REAL) for _ in range(n)]
            ad = adjoint(B.algebra, u).tolist()
            d = [[d[p][q] + ad[p][q] for q in range(n)] for p in range(n)]
        out.append((f"{label}-k{kind}", B, ExtensionData(Matrix(xi), Matrix(d), 0, b0)))
    return out


def milnor_grid():
    """MilnorData with p <= 3, r <= 3 and rotation entries in {0, 1, -1/2, 2}."""
    entries = [Q(x) for x in ("0", "1", "-1/2", "2")]
    out = []
    for p in range(1, 4):
        vectors = []
        for idx in range(len(entries) ** p):
            v, k = [], idx
            for _ in range(p):
                v.append(entries[k % len(entries)])
                k //= len(entries)
            if any(v):
                vectors.append(tuple(v))
        for r in range(0, 4):
            combos = list(combinations_with_replacement(range(len(vectors)), r))
            step = max(1, len(combos) // 6)
            for combo in combos[::step][:6]:
                out.append(MilnorData(p, [vectors[j] for j in combo]))
    return out


ACCEPTANCE_LINES: dict[str, str] = {}


def report_criterion(key: str, ok: bool, detail: str) -> None:
    """Record one acceptance line; conftest prints them after the run."""
    line = f"criterion {key}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES[key] = line
    print(line)
