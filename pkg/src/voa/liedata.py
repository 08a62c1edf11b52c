"""Lie algebra data (structure constants, bilinear form) and symmetry actions.

Conventions
-----------
Generators are indexed 0..n-1.  Brackets are stored densely as structure
constants c[i][j][l] with [xi_i, xi_j] = sum_l c[i][j][l] xi_l.  A matrix M
acts on the generator space by xi_j |-> sum_i M[i][j] xi_i (columns are
images).  Group actions are given infinitesimally by Lie-algebra matrices,
plus finite elements for disconnected groups such as O(n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from . import linalg

Matrix = tuple  # tuple of tuples of Fraction

#: dual Coxeter numbers for the built-in simple algebras
DUAL_COXETER = {"sl2": Fraction(2)}


def mat(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])


@dataclass(frozen=True, eq=False)
class LieSpec:
    """A Lie algebra with a symmetric invariant bilinear form.

    Equality is object identity; specs are built once and shared.
    """

    dim: int
    labels: tuple
    structure: tuple  # structure[i][j] is the coefficient tuple of [xi_i, xi_j]
    form: Matrix
    name: str = "lie"

    def bracket(self, i: int, j: int) -> tuple:
        return self.structure[i][j]

    def b(self, i: int, j: int) -> Fraction:
        return self.form[i][j]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown generator {label!r} (have {', '.join(self.labels)})")

    def is_abelian(self) -> bool:
        return all(not c for row in self.structure for vec in row for c in vec)


@dataclass(frozen=True, eq=False)
class ActionSpec:
    """A symmetry of the algebra: infinitesimal generators plus finite elements."""

    lie_generators: tuple  # of n x n matrices
    finite_elements: tuple  # of n x n matrices
    label: str = "action"

    @property
    def dim(self) -> int:
        for m in self.lie_generators + self.finite_elements:
            return len(m)
        return 0


@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)  # (identity name, witness indices)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, kind: str, witness: tuple):
        self.failures.append((kind, witness))

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"FAIL {kind} at {witness}" for kind, witness in self.failures)


def _structure_from_dict(n, entries) -> tuple:
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j, l), v in entries.items():
        c[i][j][l] = Fraction(v)
    return tuple(tuple(tuple(vec) for vec in row) for row in c)


def build_spec(dim, labels, bracket_entries, form_entries, name="lie") -> LieSpec:
    """Assemble a LieSpec from sparse entries, completing antisymmetry/symmetry."""
    entries = {}
    for (i, j, l), v in bracket_entries.items():
        v = Fraction(v)
        for key, val in (((i, j, l), v), ((j, i, l), -v)):
            if key in entries and entries[key] != val:
                raise ValueError(f"inconsistent bracket entry c{key}")
            entries[key] = val
    form = [[Fraction(0)] * dim for _ in range(dim)]
    for (i, j), v in form_entries.items():
        form[i][j] = form[j][i] = Fraction(v)
    return LieSpec(
        dim=dim,
        labels=tuple(labels),
        structure=_structure_from_dict(dim, entries),
        form=mat(form),
        name=name,
    )


# -- built-in algebras ---------------------------------------------------------


import functools


@functools.lru_cache(maxsize=None)
def abelian(n: int) -> LieSpec:
    """Rank-n abelian algebra with the identity form: the Heisenberg case."""
    if n < 1:
        raise ValueError("need n >= 1")
    return build_spec(
        n,
        [f"a{i+1}" for i in range(n)],
        {},
        {(i, i): 1 for i in range(n)},
        name=f"heisenberg{n}",
    )


@functools.lru_cache(maxsize=None)
def sl2_spec() -> LieSpec:
    """sl2 in the root basis (x, y, h): [x,y]=h, [h,x]=2x, [h,y]=-2y.

    The form B(x,y)=1, B(h,h)=2 matches second-order poles k(z-w)^-2 for
    X^x X^y and 2k(z-w)^-2 for X^h X^h.
    """
    return build_spec(
        3,
        ["x", "y", "h"],
        {(0, 1, 2): 1, (2, 0, 0): 2, (2, 1, 1): -2},
        {(0, 1): 1, (2, 2): 2},
        name="sl2",
    )


def adjoint_action(spec: LieSpec) -> ActionSpec:
    """The adjoint action: ad-matrices of the basis, no finite part."""
    n = spec.dim
    gens = []
    for i in range(n):
        m = [[spec.structure[i][j][l] for j in range(n)] for l in range(n)]
        gens.append(mat(m))
    return ActionSpec(tuple(gens), (), label=f"adjoint({spec.name})")


def orthogonal_action(n: int) -> ActionSpec:
    """so(n) rotation generators E_ab - E_ba plus the reflection diag(-1,1,...,1)."""
    gens = []
    for a in range(n):
        for b in range(a + 1, n):
            m = [[Fraction(0)] * n for _ in range(n)]
            m[a][b] = Fraction(1)
            m[b][a] = Fraction(-1)
            gens.append(mat(m))
    refl = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        refl[i][i] = Fraction(-1 if i == 0 else 1)
    return ActionSpec(tuple(gens), (mat(refl),), label=f"orthogonal({n})")


# -- validation ----------------------------------------------------------------


def validate(spec: LieSpec) -> ValidationReport:
    """Check antisymmetry, Jacobi, form symmetry, invariance, nondegeneracy."""
    n = spec.dim
    c = spec.structure
    rep = ValidationReport()
    for i in range(n):
        for j in range(n):
            for l in range(n):
                if c[i][j][l] != -c[j][i][l]:
                    rep.add("antisymmetry", (i, j, l))
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for m in range(n):
                    s = sum(
                        c[j][l][p] * c[i][p][m]
                        + c[l][i][p] * c[j][p][m]
                        + c[i][j][p] * c[l][p][m]
                        for p in range(n)
                    )
                    if s != 0:
                        rep.add("jacobi", (i, j, l, m))
    for i in range(n):
        for j in range(n):
            if spec.form[i][j] != spec.form[j][i]:
                rep.add("form_symmetry", (i, j))
    for i in range(n):
        for j in range(n):
            for l in range(n):
                # B([xi_i, xi_j], xi_l) + B(xi_j, [xi_i, xi_l]) = 0
                s = sum(c[i][j][p] * spec.form[p][l] for p in range(n))
                s += sum(c[i][l][p] * spec.form[j][p] for p in range(n))
                if s != 0:
                    rep.add("form_invariance", (i, j, l))
    if linalg.rank([list(row) for row in spec.form]) != n:
        rep.add("form_nondegenerate", ())
    return rep


def validate_action(spec: LieSpec, action: ActionSpec) -> ValidationReport:
    """Check derivation/skew laws for lie generators and preservation for finite elements."""
    n = spec.dim
    c = spec.structure
    B = spec.form
    rep = ValidationReport()
    for gi, rho in enumerate(action.lie_generators):
        for a in range(n):
            for b in range(n):
                for i in range(n):
                    lhs = sum(c[a][b][l] * rho[i][l] for l in range(n))
                    rhs = sum(rho[p][a] * c[p][b][i] for p in range(n))
                    rhs += sum(rho[p][b] * c[a][p][i] for p in range(n))
                    if lhs != rhs:
                        rep.add("derivation", (gi, a, b, i))
                s = sum(rho[p][a] * B[p][b] for p in range(n))
                s += sum(rho[p][b] * B[a][p] for p in range(n))
                if s != 0:
                    rep.add("skew", (gi, a, b))
    for mi, M in enumerate(action.finite_elements):
        for a in range(n):
            for b in range(n):
                for i in range(n):
                    lhs = sum(c[a][b][l] * M[i][l] for l in range(n))
                    rhs = sum(
                        M[p][a] * M[q][b] * c[p][q][i] for p in range(n) for q in range(n)
                    )
                    if lhs != rhs:
                        rep.add("finite_bracket", (mi, a, b, i))
                s = sum(M[p][a] * M[q][b] * B[p][q] for p in range(n) for q in range(n))
                if s != B[a][b]:
                    rep.add("finite_form", (mi, a, b))
    return rep


# -- config-file ingestion -------------------------------------------------------

CONFIG_DOC = """\
Algebra config format (key-value text):

  [algebra]
  dim = 3
  labels = x y h

  [brackets]          # entries "i j l = c" meaning [xi_i, xi_j] has c*xi_l;
  0 1 2 = 1           # the antisymmetric completion is applied automatically
  2 0 0 = 2
  2 1 1 = -2

  [form]              # entries "i j = b", completed symmetrically
  0 1 = 1
  2 2 = 2

  [action]            # optional: blocks of dim rows, opened by 'lie' or 'finite'
  lie
  0 0 0
  0 0 0
  0 0 0
"""


def parse_config(text: str, name: str = "config"):
    """Parse the key-value algebra document; returns (LieSpec, ActionSpec or None)."""
    section = None
    dim = None
    labels = None
    brackets = {}
    form = {}
    blocks = []  # (kind, rows)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            continue
        if section == "algebra":
            key, _, val = line.partition("=")
            key = key.strip().lower()
            if key == "dim":
                dim = int(val)
            elif key == "labels":
                labels = val.split()
            else:
                raise ValueError(f"unknown [algebra] key {key!r}")
        elif section == "brackets":
            lhs, _, val = line.partition("=")
            i, j, l = (int(t) for t in lhs.split())
            brackets[(i, j, l)] = Fraction(val.strip())
        elif section == "form":
            lhs, _, val = line.partition("=")
            i, j = (int(t) for t in lhs.split())
            form[(i, j)] = Fraction(val.strip())
        elif section == "action":
            if line.lower() in ("lie", "finite"):
                blocks.append((line.lower(), []))
            else:
                if not blocks:
                    raise ValueError("[action] rows must follow a 'lie' or 'finite' line")
                blocks[-1][1].append([Fraction(t) for t in line.split()])
        else:
            raise ValueError(f"line outside any known section: {raw!r}")
    if dim is None:
        raise ValueError("config is missing [algebra] dim")
    if labels is None:
        labels = [f"g{i}" for i in range(dim)]
    if len(labels) != dim:
        raise ValueError("label count does not match dim")
    for (i, j, l) in brackets:
        if not all(0 <= t < dim for t in (i, j, l)):
            raise ValueError(f"bracket index out of range: {(i, j, l)}")
    spec = build_spec(dim, labels, brackets, form, name=name)
    action = None
    if blocks:
        lie_gens = []
        finite = []
        for kind, rows in blocks:
            if len(rows) != dim or any(len(r) != dim for r in rows):
                raise ValueError(f"{kind} action block is not {dim}x{dim}")
            (lie_gens if kind == "lie" else finite).append(mat(rows))
        action = ActionSpec(tuple(lie_gens), tuple(finite), label=f"{name}-action")
    return spec, action


def spec_to_json(spec: LieSpec) -> dict:
    """Canonical JSON form echoed by the CLI after validation."""
    from .scalars import rational_to_str

    return {
        "name": spec.name,
        "dim": spec.dim,
        "labels": list(spec.labels),
        "brackets": [
            {"i": i, "j": j, "l": l, "c": rational_to_str(spec.structure[i][j][l])}
            for i in range(spec.dim)
            for j in range(spec.dim)
            for l in range(spec.dim)
            if spec.structure[i][j][l]
        ],
        "form": [
            {"i": i, "j": j, "b": rational_to_str(spec.form[i][j])}
            for i in range(spec.dim)
            for j in range(spec.dim)
            if spec.form[i][j]
        ],
    }


def builtin_algebra(name: str) -> LieSpec:
    """Resolve 'sl2' or 'heisenberg<n>' to a spec."""
    if name == "sl2":
        return sl2_spec()
    if name.startswith("heisenberg"):
        tail = name[len("heisenberg"):]
        if tail.isdigit() and int(tail) >= 1:
            return abelian(int(tail))
    raise KeyError(f"unknown built-in algebra {name!r}")
