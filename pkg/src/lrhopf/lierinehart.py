"""Lie algebras, module actions, anchors, and the axioms tying them to a
commutative base algebra.

The central object is LieRinehartData: a base algebra R, a Lie algebra L
over the same field, an R-module action on L, and an anchor mapping L
into derivations of R.  Three laws connect the pieces:

  * the anchor is a Lie algebra homomorphism into derivations,
  * the anchor is R-linear with respect to the action,
  * the bracket and the action satisfy the mixed Leibniz rule
      [xi, r.zeta] = r.[xi, zeta] + anchor(xi)(r).zeta .

Each law gets its own check_* verdict.  For actions through a character
(r.xi = chi(r) xi) there is a two-part criterion that is equivalent to
the conjunction of R-linearity and the Leibniz rule, and a constructor
that refuses to build the data when the criterion fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AlgebraMismatchError,
    ConstructionRefusedError,
    FieldMismatchError,
    LrhInputError,
)
from .finalg import (
    AlgebraElement,
    Character,
    CommAlgebra,
    Derivation,
    check_algebra_axioms,
    check_character,
    check_derivation,
    derivation_commutator,
    render_linear,
)
from .reports import FAIL, PASS, VerdictReport


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional Lie algebra as a dense bracket table:
    table[a][b] is the coefficient vector of [xi_a, xi_b]."""

    field: object
    labels: tuple
    table: tuple

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket_basis(self, a: int, b: int) -> tuple:
        return self.table[a][b]

    def bracket(self, u: tuple, v: tuple) -> tuple:
        out = [self.field.zero] * self.dim
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                s = ua * vb
                for c, f in enumerate(self.table[a][b]):
                    if f:
                        out[c] = out[c] + s * f
        return tuple(out)

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def render(self, vec: tuple) -> str:
        return render_linear(vec, self.labels)


def lie_algebra_from_brackets(fld, labels, brackets: dict) -> LieAlgebra:
    """brackets maps (a, b) index pairs to coefficient vectors.  A pair
    whose mirror is absent is completed antisymmetrically; explicitly
    given mirrors are kept verbatim so a bad table can be fed to the
    checker unchanged."""
    labels = tuple(labels)
    m = len(labels)
    zero = (fld.zero,) * m
    table = [[zero] * m for _ in range(m)]
    for (a, b), vec in brackets.items():
        if not (0 <= a < m and 0 <= b < m):
            raise LrhInputError(f"bracket index pair ({a},{b}) out of range")
        vec = tuple(fld.scalar(c) for c in vec)
        if len(vec) != m:
            raise LrhInputError("bracket vector has wrong length")
        table[a][b] = vec
        if (b, a) not in brackets:
            table[b][a] = tuple(-c for c in vec)
    return LieAlgebra(field=fld, labels=labels,
                      table=tuple(tuple(row) for row in table))


@dataclass(frozen=True)
class ModuleAction:
    """Action of the base algebra on the Lie algebra, stored densely as
    tensor[i][a][b] with e_i . xi_a = sum_b tensor[i][a][b] xi_b.  The
    character kind keeps the defining character alongside its tensor
    expansion chi(e_i) * identity."""

    kind: str  # "character" or "tensor"
    algebra: CommAlgebra
    tensor: tuple
    character: Character = None

    @property
    def lie_dim(self) -> int:
        return len(self.tensor[0])

    def act_basis(self, i: int, a: int) -> tuple:
        """Coefficient vector of e_i . xi_a."""
        return self.tensor[i][a]

    def act(self, r: AlgebraElement, vec: tuple) -> tuple:
        """r . (sum_a vec_a xi_a) as an L-coordinate vector."""
        if r.algebra != self.algebra:
            raise AlgebraMismatchError("action applied across algebras")
        fld = self.algebra.field
        out = [fld.zero] * self.lie_dim
        for i, ri in enumerate(r.coeffs):
            if not ri:
                continue
            for a, va in enumerate(vec):
                if not va:
                    continue
                s = ri * va
                for b, t in enumerate(self.tensor[i][a]):
                    if t:
                        out[b] = out[b] + s * t
        return tuple(out)


def character_action(chi: Character, lie_dim: int) -> ModuleAction:
    alg = chi.algebra
    fld = alg.field
    tensor = tuple(
        tuple(tuple(chi.values[i] if a == b else fld.zero
                    for b in range(lie_dim))
              for a in range(lie_dim))
        for i in range(alg.dim))
    return ModuleAction(kind="character", algebra=alg, tensor=tensor,
                        character=chi)


def tensor_action(algebra: CommAlgebra, lie_dim: int,
                  entries: dict) -> ModuleAction:
    """entries maps (i, a, b) to scalars; everything absent is zero
    except the unit slice, which defaults to the identity."""
    fld = algebra.field
    tensor = [[[fld.zero] * lie_dim for _ in range(lie_dim)]
              for _ in range(algebra.dim)]
    for (i, a, b), c in entries.items():
        if not (0 <= i < algebra.dim and 0 <= a < lie_dim
                and 0 <= b < lie_dim):
            raise LrhInputError(f"action index ({i},{a},{b}) out of range")
        tensor[i][a][b] = fld.scalar(c)
    if not any(key[0] == 0 for key in entries):
        for a in range(lie_dim):
            tensor[0][a] = [fld.one if b == a else fld.zero
                            for b in range(lie_dim)]
    return ModuleAction(kind="tensor", algebra=algebra,
                        tensor=tuple(tuple(tuple(row) for row in slab)
                                     for slab in tensor))


@dataclass(frozen=True)
class Anchor:
    """One derivation of R per Lie basis element."""

    derivations: tuple

    @property
    def lie_dim(self) -> int:
        return len(self.derivations)

    def rho(self, a: int) -> Derivation:
        return self.derivations[a]

    def of_vector(self, vec: tuple) -> Derivation:
        """Derivation attached to a general Lie element, by linearity."""
        alg = self.derivations[0].algebra
        n = alg.dim
        fld = alg.field
        out = [[fld.zero] * n for _ in range(n)]
        for a, va in enumerate(vec):
            if not va:
                continue
            mat = self.derivations[a].matrix
            for i in range(n):
                for j in range(n):
                    if mat[i][j]:
                        out[i][j] = out[i][j] + va * mat[i][j]
        return Derivation(alg, tuple(tuple(row) for row in out))


@dataclass(frozen=True)
class LieRinehartData:
    R: CommAlgebra
    L: LieAlgebra
    action: ModuleAction
    anchor: Anchor
    validated: bool = False


def _check_shapes(data: LieRinehartData):
    if data.L.field != data.R.field:
        raise FieldMismatchError("base algebra and Lie algebra live over "
                                 "different fields")
    if data.action.algebra != data.R:
        raise AlgebraMismatchError("action is over a different base algebra")
    if data.action.lie_dim != data.L.dim or data.anchor.lie_dim != data.L.dim:
        raise LrhInputError("action/anchor dimension does not match L")
    for d in data.anchor.derivations:
        if d.algebra != data.R:
            raise AlgebraMismatchError("anchor lands in a different algebra")


# ---------------------------------------------------------------------------
# the individual laws

def check_lie_algebra(L: LieAlgebra) -> VerdictReport:
    """Antisymmetry first (including [xi,xi] = 0, which matters in
    characteristic 2), then Jacobi, all in lexicographic index order."""
    name = "lie-algebra"
    m = L.dim
    zero = L.zero_vector()
    for a in range(m):
        for b in range(a, m):
            if a == b:
                if L.table[a][a] != zero:
                    return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                        "law": "antisymmetry",
                        "pair": [L.labels[a], L.labels[a]],
                        "value": L.render(L.table[a][a])}])
            else:
                mirrored = tuple(-c for c in L.table[b][a])
                if L.table[a][b] != mirrored:
                    return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                        "law": "antisymmetry",
                        "pair": [L.labels[a], L.labels[b]],
                        "lhs": L.render(L.table[a][b]),
                        "rhs": "-(" + L.render(L.table[b][a]) + ")"}])

    def unit_vec(a):
        return tuple(L.field.one if t == a else L.field.zero
                     for t in range(m))

    for a in range(m):
        for b in range(m):
            for c in range(m):
                total = L.bracket(unit_vec(a), L.table[b][c])
                total = tuple(x + y for x, y in zip(
                    total, L.bracket(unit_vec(b), L.bracket_basis(c, a))))
                total = tuple(x + y for x, y in zip(
                    total, L.bracket(unit_vec(c), L.bracket_basis(a, b))))
                if total != zero:
                    return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                        "law": "jacobi",
                        "triple": [L.labels[a], L.labels[b], L.labels[c]],
                        "value": L.render(total)}])
    return VerdictReport(name=name, verdict=PASS, narrative=[
        f"antisymmetry and Jacobi verified over all {m}^3 basis triples"])


def check_module_action(R: CommAlgebra, action: ModuleAction) -> VerdictReport:
    """Unit slice is the identity; action tensor is associative over the
    multiplication of R."""
    name = "module-action"
    m = action.lie_dim
    fld = R.field
    for a in range(m):
        expected = tuple(fld.one if b == a else fld.zero for b in range(m))
        if action.tensor[0][a] != expected:
            return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                "law": "unit-acts-as-identity", "element": f"index {a}",
                "value": render_linear(action.tensor[0][a],
                                       tuple(f"xi_{b}" for b in range(m)))}])
    for i in range(R.dim):
        ei = R.basis_element(i)
        for j in range(R.dim):
            prod = R.basis_product(i, j)
            for a in range(m):
                lhs = action.act(prod, tuple(
                    fld.one if t == a else fld.zero for t in range(m)))
                rhs = action.act(ei, action.act_basis(j, a))
                if lhs != rhs:
                    return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                        "law": "action-associativity",
                        "triple": [R.labels[i], R.labels[j], f"index {a}"]}])
    return VerdictReport(name=name, verdict=PASS, narrative=[
        "unit slice is the identity; action associative on all basis "
        "triples"])


def check_anchor_lie_hom(data: LieRinehartData) -> VerdictReport:
    """anchor([xi_a, xi_b]) equals the commutator of the anchor
    derivations, for every basis pair."""
    _check_shapes(data)
    name = "anchor-lie-homomorphism"
    L = data.L
    for a in range(L.dim):
        for b in range(L.dim):
            lhs = data.anchor.of_vector(L.bracket_basis(a, b))
            rhs = derivation_commutator(data.anchor.rho(a),
                                        data.anchor.rho(b))
            if lhs.matrix != rhs.matrix:
                diff = tuple(tuple(x - y for x, y in zip(r1, r2))
                             for r1, r2 in zip(lhs.matrix, rhs.matrix))
                return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                    "pair": [L.labels[a], L.labels[b]],
                    "difference-matrix": [[str(c) for c in row]
                                          for row in diff]}])
    return VerdictReport(name=name, verdict=PASS, narrative=[
        f"anchor respects the bracket on all {L.dim}^2 basis pairs"])


def check_anchor_r_linear(data: LieRinehartData) -> VerdictReport:
    """anchor(e_i . xi_a)(e_j) = e_i * anchor(xi_a)(e_j) for all i, a, j,
    with the left side expanded through the module action."""
    _check_shapes(data)
    name = "anchor-r-linearity"
    R, L = data.R, data.L
    for i in range(R.dim):
        ei = R.basis_element(i)
        for a in range(L.dim):
            scaled = data.anchor.of_vector(data.action.act_basis(i, a))
            for j in range(R.dim):
                lhs = scaled.column(j)
                rhs = ei * data.anchor.rho(a).column(j)
                if lhs.coeffs != rhs.coeffs:
                    return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                        "triple": [R.labels[i], L.labels[a], R.labels[j]],
                        "lhs": str(lhs), "rhs": str(rhs)}])
    return VerdictReport(name=name, verdict=PASS, narrative=[
        f"R-linearity verified on all {R.dim}x{L.dim}x{R.dim} triples"])


def check_leibniz(data: LieRinehartData) -> VerdictReport:
    """[xi_a, e_i . xi_b] = e_i . [xi_a, xi_b] + anchor(xi_a)(e_i) . xi_b
    on every basis triple, both sides in L-coordinates."""
    _check_shapes(data)
    name = "leibniz-compatibility"
    R, L = data.R, data.L

    def unit_vec(a):
        return tuple(L.field.one if t == a else L.field.zero
                     for t in range(L.dim))

    for i in range(R.dim):
        ei = R.basis_element(i)
        for a in range(L.dim):
            for b in range(L.dim):
                lhs = L.bracket(unit_vec(a), data.action.act_basis(i, b))
                rhs = data.action.act(ei, L.bracket_basis(a, b))
                shift = data.action.act(data.anchor.rho(a).apply(ei),
                                        unit_vec(b))
                rhs = tuple(x + y for x, y in zip(rhs, shift))
                if lhs != rhs:
                    return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                        "triple": [R.labels[i], L.labels[a], L.labels[b]],
                        "lhs": L.render(lhs), "rhs": L.render(rhs)}])
    return VerdictReport(name=name, verdict=PASS, narrative=[
        f"mixed Leibniz rule verified on all {R.dim}x{L.dim}^2 triples"])


# ---------------------------------------------------------------------------
# character modules

def character_criterion(R: CommAlgebra, L: LieAlgebra, anchor: Anchor,
                        chi: Character) -> VerdictReport:
    """Two conditions, jointly equivalent to the action r.xi = chi(r) xi
    making the data a valid structure:

      (a) chi(e_i) * anchor(xi_a)(e_j) = e_i * anchor(xi_a)(e_j)
          (R-linearity of the anchor under the character action), and
      (b) chi(anchor(xi_a)(e_i)) = 0 (anchor values land in ker chi).

    The verdict is the conjunction; witnesses carry the first failure of
    each condition."""
    name = "character-criterion"
    witnesses = []
    narrative = []

    found_a = None
    for i in range(R.dim):
        ei = R.basis_element(i)
        for a in range(anchor.lie_dim):
            for j in range(R.dim):
                img = anchor.rho(a).column(j)
                lhs = chi.values[i] * img
                rhs = ei * img
                if lhs.coeffs != rhs.coeffs:
                    found_a = {"condition": "r-linearity",
                               "triple": [R.labels[i], L.labels[a],
                                          R.labels[j]],
                               "lhs": str(lhs), "rhs": str(rhs)}
                    break
            if found_a:
                break
        if found_a:
            break
    if found_a:
        witnesses.append(found_a)
    else:
        narrative.append("(a) anchor is R-linear for the character action")

    found_b = None
    for a in range(anchor.lie_dim):
        for i in range(R.dim):
            value = chi.apply(anchor.rho(a).column(i))
            if value:
                found_b = {"condition": "anchor-into-kernel",
                           "pair": [L.labels[a], R.labels[i]],
                           "value": str(value)}
                break
        if found_b:
            break
    if found_b:
        witnesses.append(found_b)
    else:
        narrative.append("(b) every anchor value is annihilated by chi")

    verdict = PASS if not witnesses else FAIL
    return VerdictReport(name=name, verdict=verdict, witnesses=witnesses,
                         narrative=narrative)


def make_character_module(R: CommAlgebra, L: LieAlgebra, anchor: Anchor,
                          chi: Character) -> LieRinehartData:
    """Build validated data with the action r.xi = chi(r) xi.  Refuses
    when any component is malformed, when the anchor fails to be a Lie
    homomorphism, or when the character criterion fails; the refusal
    carries the offending report."""
    for report in (check_algebra_axioms(R), check_lie_algebra(L),
                   check_character(R, chi.values)):
        if not report.ok:
            raise ConstructionRefusedError(
                f"component check '{report.name}' failed", report=report)
    for a, d in enumerate(anchor.derivations):
        report = check_derivation(R, d.matrix)
        if not report.ok:
            raise ConstructionRefusedError(
                f"anchor image of {L.labels[a]} is not a derivation",
                report=report)

    data = LieRinehartData(R=R, L=L, action=character_action(chi, L.dim),
                           anchor=anchor)
    hom = check_anchor_lie_hom(data)
    if not hom.ok:
        raise ConstructionRefusedError(
            "anchor is not a Lie algebra homomorphism", report=hom)
    criterion = character_criterion(R, L, anchor, chi)
    if not criterion.ok:
        raise ConstructionRefusedError(
            "character-action criterion failed", report=criterion)
    return LieRinehartData(R=R, L=L, action=data.action, anchor=anchor,
                           validated=True)


def validate_lie_rinehart(data: LieRinehartData) -> list:
    """Every check in one sweep: component laws first, then the three
    compatibility laws.  Returns the reports in a fixed order."""
    _check_shapes(data)
    reports = [
        check_algebra_axioms(data.R),
        check_lie_algebra(data.L),
        check_module_action(data.R, data.action),
    ]
    for a, d in enumerate(data.anchor.derivations):
        rep = check_derivation(data.R, d.matrix)
        rep = VerdictReport(name=f"derivation[{data.L.labels[a]}]",
                            verdict=rep.verdict, witnesses=rep.witnesses,
                            narrative=rep.narrative)
        reports.append(rep)
    if data.action.kind == "character":
        reports.append(check_character(data.R, data.action.character.values))
    reports.extend([
        check_anchor_lie_hom(data),
        check_anchor_r_linear(data),
        check_leibniz(data),
    ])
    return reports
