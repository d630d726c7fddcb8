"""Lorentzian flat Lie algebras with degenerate center, dimensions 3 to 6.

Each :class:`CatalogEntry` is one row of the classification: nonvanishing
brackets and Gram matrix as functions of rational parameters, in the basis
``(z, zbar, e1, ..., e_{n-2})``, together with the expected nature of the
algebra.  :func:`verify_all` instantiates every row on a deterministic grid
of admissible parameters and checks it exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping

from .doubleext import round_trip_ok
from .errors import ConstraintError, DegenerateFormError, JacobiError
from .exactnum import Matrix, Q, Rational, format_rational
from .liealg import LieAlgebra, class_labels, is_unimodular
from .metric import (
    MetricLieAlgebra,
    center_degenerate,
    curvature_witness,
    flat_structure_diagnostics,
)

CLASS_LABELS = ("Heisenberg", "2-nilpotent", "3-nilpotent", "2-solvable", "3-solvable")

# Parameter kinds and their sample grids.  A "circle" parameter ``w`` stands
# for the pair (cos w, sin w) and is supplied as ``w_cos`` and ``w_sin``.
GRIDS: dict[str, tuple] = {
    "positive": tuple(Q(x) for x in ("1", "2", "1/2", "3")),
    "real": tuple(Q(x) for x in ("1", "-1", "2", "1/2", "0", "-3/2")),
    "nonzero": tuple(Q(x) for x in ("1", "-1", "2", "1/2", "-2")),
    "circle": tuple(
        (Q(c), Q(s))
        for c, s in (("3/5", "4/5"), ("5/13", "12/13"), ("-4/5", "3/5"), ("8/17", "-15/17"), ("1", "0"))
    ),
}


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # key of GRIDS

    def names(self) -> tuple[str, ...]:
        if self.kind == "circle":
            return (f"{self.name}_cos", f"{self.name}_sin")
        return (self.name,)


@dataclass(frozen=True)
class Constraint:
    text: str
    holds: Callable[[Mapping[str, Rational]], bool]


Bracket = tuple[str, str, dict]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    dim: int
    class_label: str
    params: tuple[Param, ...]
    brackets: Callable[[Mapping[str, Rational]], list[Bracket]]
    gram: Callable[[Mapping[str, Rational]], list[list]]
    constraints: tuple[Constraint, ...] = ()
    corrected: bool = False
    note: str = ""
    derived: Callable[[Mapping[str, Rational]], dict] | None = None

    @property
    def basis_names(self) -> tuple[str, ...]:
        return ("z", "zbar") + tuple(f"e{i}" for i in range(1, self.dim - 1))

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(n for p in self.params for n in p.names())

    def summary(self) -> dict:
        return {
            "id": self.id,
            "dim": self.dim,
            "class_label": self.class_label,
            "params": [{"name": p.name, "kind": p.kind} for p in self.params],
            "constraints": [c.text for c in self.constraints],
            "corrected": self.corrected,
        }

    def to_json(self) -> dict:
        out = self.summary()
        if self.note:
            out["note"] = self.note
        return out


def _unit_circle(name: str) -> Constraint:
    return Constraint(
        f"{name}_cos^2 + {name}_sin^2 = 1",
        lambda p: p[f"{name}_cos"] ** 2 + p[f"{name}_sin"] ** 2 == 1,
    )


def _pos(*names):
    return [Param(n, "positive") for n in names]


def _real(*names):
    return [Param(n, "real") for n in names]


def _nz(*names):
    return [Param(n, "nonzero") for n in names]


def _blank(n):
    return [[0] * n for _ in range(n)]


def _sym(g, i, j, v):
    g[i][j] = g[j][i] = v


def _table() -> list[CatalogEntry]:
    rows: list[CatalogEntry] = []

    # dimension 3
    def g_heis3(p):
        g = _blank(3)
        _sym(g, 0, 1, p["alpha"])
        g[2][2] = 1
        return g

    rows.append(CatalogEntry(
        "dim3-heisenberg", 3, "Heisenberg", tuple(_pos("alpha")),
        lambda p: [("zbar", "e1", {"z": 1})], g_heis3,
    ))

    # dimension 4
    def g4_1(p):
        a = p["a"]
        g = _blank(4)
        _sym(g, 0, 1, p["alpha"])
        g[2][2], g[3][3] = 1, 1 + a * a
        _sym(g, 2, 3, a)
        return g

    rows.append(CatalogEntry(
        "dim4-2nilpotent", 4, "2-nilpotent", tuple(_pos("alpha") + _real("a")),
        lambda p: [("zbar", "e1", {"z": 1})], g4_1,
    ))

    def g4_2(p):
        al = p["alpha"]
        g = _blank(4)
        _sym(g, 0, 1, al)
        _sym(g, 1, 2, p["beta"])
        g[2][2], g[3][3] = al, 1
        return g

    rows.append(CatalogEntry(
        "dim4-3nilpotent", 4, "3-nilpotent", tuple(_pos("alpha") + _real("a", "beta")),
        lambda p: [
            ("zbar", "e1", {"z": p["a"]}),
            ("zbar", "e2", {"e1": 1}),
            ("e1", "e2", {"z": -1}),
        ],
        g4_2,
    ))

    def g4_3(p):
        al = p["alpha"]
        g = _blank(4)
        _sym(g, 0, 1, 1 / al)
        _sym(g, 1, 2, p["beta"])
        _sym(g, 1, 3, p["gamma"])
        g[2][2] = g[3][3] = al * al
        return g

    rows.append(CatalogEntry(
        "dim4-2solvable", 4, "2-solvable", tuple(_nz("alpha") + _real("beta", "gamma")),
        lambda p: [("zbar", "e1", {"e2": 1}), ("zbar", "e2", {"e1": -1})],
        g4_3,
    ))

    # dimension 5
    def g5_1(p):
        a, b = p["a"], p["b"]
        g = _blank(5)
        _sym(g, 0, 1, p["alpha"])
        g[2][2], g[3][3], g[4][4] = 1, 1 + a * a, 1 + b * b
        _sym(g, 2, 3, a)
        _sym(g, 2, 4, b)
        _sym(g, 3, 4, a * b)
        return g

    rows.append(CatalogEntry(
        "dim5-2nilpotent", 5, "2-nilpotent", tuple(_pos("alpha") + _real("a", "b")),
        lambda p: [("zbar", "e1", {"z": 1})], g5_1,
    ))

    def g5_2(p):
        al, c = p["alpha"], p["c"]
        g = _blank(5)
        _sym(g, 0, 1, al)
        _sym(g, 1, 2, p["beta"])
        g[2][2] = al
        _sym(g, 2, 3, c * al)
        g[3][3] = g[4][4] = 1
        return g

    rows.append(CatalogEntry(
        "dim5-3nilpotent", 5, "3-nilpotent", tuple(_pos("alpha") + _real("a", "b", "c", "beta")),
        lambda p: [
            ("zbar", "e1", {"z": p["a"]}),
            ("zbar", "e2", {"z": p["b"]}),
            ("zbar", "e3", {"e1": 1}),
            ("e1", "e3", {"z": -1}),
            ("e2", "e3", {"z": -p["c"]}),
        ],
        g5_2,
        constraints=(
            Constraint("alpha*c^2 != 1", lambda p: p["alpha"] * p["c"] ** 2 != 1),
            Constraint("alpha*c^2 < 1 (Lorentzian)", lambda p: p["alpha"] * p["c"] ** 2 < 1),
        ),
    ))

    def g5_3(p):
        al = p["alpha"]
        g = _blank(5)
        _sym(g, 0, 1, 1 / al)
        _sym(g, 1, 2, p["beta"])
        _sym(g, 1, 3, p["gamma"])
        g[2][2] = g[3][3] = al * al
        g[4][4] = 1
        return g

    rows.append(CatalogEntry(
        "dim5-2solvable-a", 5, "2-solvable", tuple(_pos("alpha") + _real("a", "beta", "gamma")),
        lambda p: [
            ("zbar", "e1", {"e2": 1}),
            ("zbar", "e2", {"e1": -1}),
            ("zbar", "e3", {"z": p["a"]}),
        ],
        g5_3,
    ))

    def g5_4(p):
        al, a, b = p["alpha"], p["a"], p["b"]
        g = _blank(5)
        _sym(g, 0, 1, 1)
        _sym(g, 1, 3, -al * b)
        _sym(g, 1, 4, al * a)
        g[2][2] = 1 / al
        g[3][3] = g[4][4] = al
        return g

    rows.append(CatalogEntry(
        "dim5-2solvable-b", 5, "2-solvable", tuple(_pos("alpha") + _real("a", "b", "c", "d")),
        lambda p: [
            ("zbar", "e1", {"e2": p["a"], "e3": p["b"], "z": p["c"]}),
            ("zbar", "e2", {"e3": p["d"]}),
            ("zbar", "e3", {"e2": -p["d"]}),
            ("e1", "e2", {"e3": 1}),
            ("e1", "e3", {"e2": -1}),
        ],
        g5_4,
        constraints=(Constraint("(a,b,c,d) != 0", lambda p: any(p[k] for k in "abcd")),),
    ))

    # dimension 6
    def g6_1(p):
        vals = [p["a"], p["b"], p["c"]]
        g = _blank(6)
        _sym(g, 0, 1, p["alpha"])
        g[2][2] = 1
        for i, v in enumerate(vals):
            _sym(g, 2, 3 + i, v)
            for j, w in enumerate(vals):
                g[3 + i][3 + j] = v * w + (1 if i == j else 0)
        return g

    rows.append(CatalogEntry(
        "dim6-2nilpotent", 6, "2-nilpotent", tuple(_pos("alpha") + _real("a", "b", "c")),
        lambda p: [("zbar", "e1", {"z": 1})], g6_1,
    ))

    def g6_2(p):
        al, a = p["alpha"], p["a"]
        g = _blank(6)
        _sym(g, 0, 1, 1 / al)
        for k, name in enumerate(("beta", "gamma", "mu_g", "nu")):
            _sym(g, 1, 2 + k, p[name])
        g[2][2] = g[3][3] = al * al
        g[4][4] = g[5][5] = al * al * a * a
        return g

    rows.append(CatalogEntry(
        "dim6-2solvable-a", 6, "2-solvable",
        tuple(_nz("alpha", "a") + _real("beta", "gamma", "mu_g", "nu")),
        lambda p: [
            ("zbar", "e1", {"e2": 1}),
            ("zbar", "e2", {"e1": -1}),
            ("zbar", "e3", {"e4": p["a"]}),
            ("zbar", "e4", {"e3": -p["a"]}),
        ],
        g6_2,
    ))

    def g6_3(p):
        al = p["alpha"]
        g = _blank(6)
        _sym(g, 0, 1, 1 / al)
        _sym(g, 1, 2, p["beta"])
        _sym(g, 1, 3, p["gamma"])
        g[2][2] = g[3][3] = al * al
        g[4][4] = g[5][5] = 1
        return g

    rows.append(CatalogEntry(
        "dim6-2solvable-b", 6, "2-solvable", tuple(_nz("alpha") + _real("a", "b", "beta", "gamma")),
        lambda p: [
            ("zbar", "e1", {"e2": 1}),
            ("zbar", "e2", {"e1": -1}),
            ("zbar", "e3", {"z": p["a"]}),
            ("zbar", "e4", {"z": p["b"]}),
        ],
        g6_3,
    ))

    def rho_mu(p):
        return p["rho1"] * p["rho2"] * p["w_cos"]

    def g6_4(p):
        g = _blank(6)
        _sym(g, 0, 1, 1)
        _sym(g, 1, 2, p["beta"])
        _sym(g, 1, 3, p["gamma"])
        g[2][2], g[3][3] = p["rho1"] ** 2, p["rho2"] ** 2
        _sym(g, 2, 3, rho_mu(p))
        g[4][4] = g[5][5] = 1
        return g

    rows.append(CatalogEntry(
        "dim6-2solvable-c", 6, "2-solvable",
        tuple(_real("a", "b", "beta", "gamma") + _pos("rho1", "rho2") + [Param("w", "circle")]),
        lambda p: [
            ("zbar", "e1", {"z": p["a"]}),
            ("zbar", "e2", {"z": p["b"]}),
            ("zbar", "e3", {"e1": 1}),
            ("zbar", "e4", {"e2": 1}),
            ("e1", "e3", {"z": -p["rho1"] ** 2}),
            ("e2", "e4", {"z": -p["rho2"] ** 2}),
            ("e1", "e4", {"z": -rho_mu(p)}),
            ("e2", "e3", {"z": -rho_mu(p)}),
        ],
        g6_4,
        constraints=(
            _unit_circle("w"),
            Constraint("w_sin != 0", lambda p: p["w_sin"] != 0),
        ),
        note="w is the angle difference omega1 - omega2; mu_g = rho1*rho2*cos(w)",
        derived=lambda p: {"mu_g": rho_mu(p)},
    ))

    def g6_5(p):
        al, d, e = p["alpha"], p["d"], p["e"]
        g = _blank(6)
        _sym(g, 0, 1, al)
        _sym(g, 1, 2, p["beta"])
        g[2][2] = al
        _sym(g, 2, 3, al * d)
        _sym(g, 2, 4, al * e)
        g[3][3] = g[4][4] = g[5][5] = 1
        return g

    rows.append(CatalogEntry(
        "dim6-3nilpotent", 6, "3-nilpotent", tuple(_pos("alpha") + _real("a", "b", "c", "d", "e", "beta")),
        lambda p: [
            ("zbar", "e1", {"z": p["a"]}),
            ("zbar", "e2", {"z": p["b"]}),
            ("zbar", "e3", {"z": p["c"]}),
            ("zbar", "e4", {"e1": 1}),
            ("e1", "e4", {"z": -1}),
            ("e2", "e4", {"z": -p["d"]}),
            ("e3", "e4", {"z": -p["e"]}),
        ],
        g6_5,
        constraints=(
            Constraint("alpha*(d^2+e^2) != 1", lambda p: p["alpha"] * (p["d"] ** 2 + p["e"] ** 2) != 1),
            Constraint(
                "alpha*(d^2+e^2) < 1 (Lorentzian)",
                lambda p: p["alpha"] * (p["d"] ** 2 + p["e"] ** 2) < 1,
            ),
        ),
        corrected=True,
        note="printed as [d,e4]=e1; encoded as [zbar,e4]=e1",
    ))

    def g6_6(p):
        al, be = p["alpha"], p["beta"]
        g = _blank(6)
        _sym(g, 0, 1, al)
        _sym(g, 1, 2, p["gamma"])
        _sym(g, 1, 3, p["mu_g"])
        _sym(g, 1, 4, p["nu"])
        g[2][2] = g[3][3] = g[5][5] = be
        g[4][4] = al
        return g

    rows.append(CatalogEntry(
        "dim6-2solvable-d", 6, "2-solvable", tuple(_pos("alpha", "beta") + _real("a", "gamma", "mu_g", "nu")),
        lambda p: [
            ("zbar", "e1", {"e2": 1}),
            ("zbar", "e2", {"e1": -1}),
            ("zbar", "e3", {"z": p["a"]}),
            ("zbar", "e4", {"e3": 1}),
            ("e3", "e4", {"z": -1}),
        ],
        g6_6,
        corrected=True,
        note="printed as [d,e4]=e3; encoded as [zbar,e4]=e3",
    ))

    def xy(p):
        return p["rho"] * p["w_cos"], p["rho"] * p["w_sin"]

    def g6_7(p):
        x, y = xy(p)
        r2 = p["rho"] ** 2
        g = _blank(6)
        _sym(g, 0, 1, 1)
        for k, name in enumerate(("alpha", "beta", "gamma", "mu_g")):
            _sym(g, 1, 2 + k, p[name])
        g[2][2] = g[3][3] = 1
        g[4][4] = g[5][5] = 1 + r2
        _sym(g, 2, 4, y)
        _sym(g, 2, 5, x)
        _sym(g, 3, 4, -x)
        _sym(g, 3, 5, y)
        return g

    def b6_7(p):
        x, y = xy(p)
        return [
            ("zbar", "e1", {"e2": 1}),
            ("zbar", "e2", {"e1": -1}),
            ("zbar", "e3", {"e2": y, "e1": x, "e4": 1}),
            ("zbar", "e4", {"e2": x, "e1": -y, "e3": -1}),
            ("e1", "e3", {"z": -x}),
            ("e1", "e4", {"z": y}),
            ("e2", "e3", {"z": -y}),
            ("e2", "e4", {"z": -x}),
            ("e3", "e4", {"z": 2 * p["rho"] ** 2}),
        ]

    rows.append(CatalogEntry(
        "dim6-3solvable", 6, "3-solvable",
        tuple(_pos("rho") + [Param("w", "circle")] + _real("alpha", "beta", "gamma", "mu_g")),
        b6_7, g6_7,
        constraints=(_unit_circle("w"),),
        note="X = rho*cos(w), Y = rho*sin(w)",
        derived=lambda p: dict(zip(("X", "Y"), xy(p))),
    ))

    def g6_8(p):
        al, b, c = p["alpha"], p["b"], p["c"]
        g = _blank(6)
        _sym(g, 0, 1, al)
        _sym(g, 1, 4, -c)
        _sym(g, 1, 5, b)
        g[2][2] = p["beta"]
        _sym(g, 2, 3, p["gamma"])
        g[3][3] = al
        g[4][4] = g[5][5] = 1
        return g

    rows.append(CatalogEntry(
        "dim6-2solvable-e", 6, "2-solvable",
        tuple(_pos("alpha") + _real("a", "b", "c", "d", "e", "f", "gamma")),
        lambda p: [
            ("zbar", "e1", {"e2": p["a"], "e3": p["b"], "e4": p["c"], "z": p["d"]}),
            ("zbar", "e2", {"z": p["e"]}),
            ("zbar", "e3", {"e4": p["f"]}),
            ("zbar", "e4", {"e3": -p["f"]}),
            ("e1", "e2", {"z": p["a"]}),
            ("e1", "e3", {"e4": 1}),
            ("e1", "e4", {"e3": -1}),
        ],
        g6_8,
        constraints=(
            Constraint("beta > 0", lambda p: p["beta"] > 0),
            Constraint("alpha*beta - gamma^2 = 1", lambda p: p["alpha"] * p["beta"] - p["gamma"] ** 2 == 1),
        ),
        note="beta is determined by alpha*beta - gamma^2 = 1",
        derived=lambda p: {"beta": (1 + p["gamma"] ** 2) / p["alpha"]},
    ))
    return rows


_ENTRIES = _table()
_BY_ID = {e.id: e for e in _ENTRIES}


def entries() -> list[CatalogEntry]:
    return list(_ENTRIES)


def entry(entry_id: str) -> CatalogEntry:
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise ConstraintError(f"unknown catalog entry {entry_id!r}") from None


def _complete(e: CatalogEntry, params: Mapping) -> dict[str, Rational]:
    p = {k: Q(v) for k, v in params.items()}
    if e.id == "dim6-2solvable-e" and "beta" not in p and "alpha" in p and "gamma" in p:
        p["beta"] = (1 + p["gamma"] ** 2) / p["alpha"]
    return p


def check_params(e: CatalogEntry, params: Mapping) -> dict[str, Rational]:
    """Coerce and validate parameter values; returns the completed mapping."""
    p = _complete(e, params)
    expected = set(e.param_names) | ({"beta"} if e.id == "dim6-2solvable-e" else set())
    missing = sorted(expected - set(p))
    extra = sorted(set(p) - expected)
    if missing or extra:
        raise ConstraintError(f"{e.id}: missing {missing}, unexpected {extra}")
    for prm in e.params:
        if prm.kind == "positive" and p[prm.name] <= 0:
            raise ConstraintError(f"{e.id}: {prm.name} must be positive")
        if prm.kind == "nonzero" and p[prm.name] == 0:
            raise ConstraintError(f"{e.id}: {prm.name} must be nonzero")
    for c in e.constraints:
        if not c.holds(p):
            raise ConstraintError(f"{e.id}: constraint {c.text} violated")
    return p


def build(e: CatalogEntry, p: Mapping[str, Rational]) -> MetricLieAlgebra:
    """Instantiate without constraint checks (Jacobi and nondegeneracy still apply)."""
    names = e.basis_names
    idx = {n: i for i, n in enumerate(names)}
    n = e.dim
    brackets = {}
    for left, right, coeffs in e.brackets(p):
        v = [Q(0)] * n
        for name, c in coeffs.items():
            v[idx[name]] = Q(c)
        brackets[(idx[left], idx[right])] = v
    gram = Matrix([[Q(x) for x in row] for row in e.gram(p)])
    return MetricLieAlgebra(LieAlgebra(n, brackets, names), gram)


def instantiate(entry_id: str, params: Mapping) -> MetricLieAlgebra:
    e = entry(entry_id)
    p = check_params(e, params)
    try:
        return build(e, p)
    except DegenerateFormError as exc:
        raise ConstraintError(f"{e.id}: metric degenerate for these parameters") from exc


def sample_params(e: CatalogEntry, k: int, seed: int = 0) -> list[dict[str, Rational]]:
    """First ``k`` distinct constraint-satisfying draws from the parameter grids.

    The first draw takes every parameter's first grid value; later draws are
    seeded by the entry id, so the sample set is reproducible.
    """
    rng = random.Random(f"{e.id}:{seed}")
    out: list[dict[str, Rational]] = []
    seen = set()
    for i in range(500 * k):
        if len(out) >= k:
            break
        p: dict[str, Rational] = {}
        for prm in e.params:
            grid = GRIDS[prm.kind]
            v = grid[0] if i == 0 else rng.choice(grid)
            if prm.kind == "circle":
                p[f"{prm.name}_cos"], p[f"{prm.name}_sin"] = v
            else:
                p[prm.name] = v
        key = tuple(sorted(p.items()))
        if key in seen:
            continue
        seen.add(key)
        try:
            p = check_params(e, p)
            build(e, p)
        except (ConstraintError, DegenerateFormError):
            continue
        out.append(p)
    return out


def _label_matches(label: str, labels: dict) -> bool:
    if label == "Heisenberg":
        return labels["nilpotency_class"] == 2
    k, kind = label.split("-")
    key = "nilpotency_class" if kind == "nilpotent" else "solvable_length"
    return labels[key] == int(k)


def _label_reading(label: str) -> str:
    # the k in "k-solvable" is read as derived length; this is an assumption
    if label == "Heisenberg":
        return "nilpotency class 2 (assumed reading)"
    k, kind = label.split("-")
    what = "nilpotency class" if kind == "nilpotent" else "derived length"
    return f"{what} {k} (assumed reading)"


def _jsonable_params(p: Mapping) -> dict:
    return {k: format_rational(v) for k, v in sorted(p.items())}


def verify_instance(e: CatalogEntry, p: Mapping, round_trip: bool = False) -> dict:
    checks: dict[str, bool] = {}
    witness: dict = {}
    try:
        M = build(e, p)
    except JacobiError as exc:
        return {"params": _jsonable_params(p), "checks": {"jacobi": False},
                "witness": {"jacobi": list(exc.triple or ())}, "pass": False}
    except DegenerateFormError:
        return {"params": _jsonable_params(p), "checks": {"jacobi": True, "gram_nondegenerate": False},
                "pass": False}
    checks["jacobi"] = True
    n = e.dim
    cw = curvature_witness(M)
    checks["flat"] = cw is None
    if cw is not None:
        witness["flat"] = list(cw)
    sig = M.signature()
    checks["signature"] = sig == (1, 0, n - 1)
    if not checks["signature"]:
        witness["signature"] = list(sig)
    checks["center_degenerate"] = center_degenerate(M)
    checks["unimodular"] = is_unimodular(M.algebra)
    labels = class_labels(M.algebra)
    checks["class_label"] = _label_matches(e.class_label, labels)
    if not checks["class_label"]:
        witness["class_label"] = labels
    if checks["flat"]:
        diag = flat_structure_diagnostics(M)
        checks["diagnostics"] = diag.passed
        if not diag.passed:
            witness["diagnostics"] = diag.failures
    else:
        checks["diagnostics"] = False
    if round_trip and checks["flat"] and checks["signature"] and checks["center_degenerate"]:
        checks["round_trip"] = round_trip_ok(M)
    out = {"params": _jsonable_params(p), "checks": checks, "pass": all(checks.values())}
    if witness:
        out["witness"] = witness
    return out


def verify_entry(entry_id: str, samples: int | list[Mapping] = 3, round_trip: bool = False) -> dict:
    """Check every sample of one entry; ``samples`` is a count or explicit parameter sets."""
    e = entry(entry_id)
    if isinstance(samples, int):
        param_sets = sample_params(e, samples)
        if len(param_sets) < samples:
            raise ConstraintError(f"{e.id}: only {len(param_sets)} admissible grid points")
    else:
        param_sets = [check_params(e, s) for s in samples]
    results = [verify_instance(e, p, round_trip) for p in param_sets]
    return {
        "entry": e.id,
        "dim": e.dim,
        "class_label": e.class_label,
        "label_reading": _label_reading(e.class_label),
        "corrected": e.corrected,
        "samples": results,
        "pass": all(r["pass"] for r in results),
    }


def verify_all(samples: int = 3, round_trip: bool = False, ids: list[str] | None = None) -> dict:
    if samples < 1:
        raise ConstraintError("need at least one sample per entry")
    chosen = [entry(i) for i in ids] if ids else _ENTRIES
    reports = [verify_entry(e.id, samples, round_trip) for e in chosen]
    passed = sum(r["pass"] for r in reports)
    return {
        "summary": f"{passed}/{len(reports)}",
        "passed": passed,
        "total": len(reports),
        "samples_per_entry": samples,
        "entries": reports,
        "pass": passed == len(reports),
    }


def constraint_probe() -> list[dict]:
    """What happens when the printed inequality constraints are violated or pushed.

    For the rows carrying ``alpha*c^2 != 1`` and ``alpha*(d^2+e^2) != 1``
    this reports the signature at, below and above the excluded value.
    """
    out = []
    cases = [
        ("dim5-3nilpotent", {"alpha": 1, "a": 1, "b": 0, "beta": 0}, "c", ("1/2", "1", "2")),
        ("dim6-3nilpotent", {"alpha": 1, "a": 1, "b": 0, "c": 0, "e": 0, "beta": 0}, "d", ("1/2", "1", "2")),
    ]
    for eid, base, var, values in cases:
        e = entry(eid)
        for v in values:
            p = {k: Q(x) for k, x in base.items()}
            p[var] = Q(v)
            try:
                M = build(e, p)
                sig = M.signature()
                out.append({"entry": eid, "params": _jsonable_params(p), "degenerate": False,
                            "signature": list(sig), "lorentzian": sig == (1, 0, e.dim - 1)})
            except DegenerateFormError:
                out.append({"entry": eid, "params": _jsonable_params(p), "degenerate": True})
    return out


SCAN_GRID: dict[str, tuple] = {
    "positive": (Q(1), Q(2)),
    "real": (Q(0), Q(1)),
    "nonzero": (Q(1), Q(-1)),
    "circle": ((Q("3/5"), Q("4/5")), (Q(1), Q(0))),
}


def scan_entry(entry_id: str, grid: Mapping[str, tuple] = SCAN_GRID) -> dict:
    """Verify an entry on the full product grid, zeros included.

    Unlike the sampled check this walks every combination, so it finds
    parameter subsets on which a row leaves the class it claims.  Returns
    counts per failing check and the failing parameter sets.
    """
    e = entry(entry_id)
    failing: list[dict] = []
    counts: dict[str, int] = {}
    total = 0
    for combo in product(*(grid[prm.kind] for prm in e.params)):
        p: dict[str, Rational] = {}
        for prm, v in zip(e.params, combo):
            if prm.kind == "circle":
                p[f"{prm.name}_cos"], p[f"{prm.name}_sin"] = v
            else:
                p[prm.name] = v
        try:
            p = check_params(e, p)
            build(e, p)
        except (ConstraintError, DegenerateFormError):
            continue
        total += 1
        r = verify_instance(e, p)
        if not r["pass"]:
            failing.append(r)
            for k, ok in r["checks"].items():
                if not ok:
                    counts[k] = counts.get(k, 0) + 1
    return {"entry": e.id, "grid_points": total, "failures": counts, "failing": failing,
            "pass": not failing}
