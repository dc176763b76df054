"""Problem files: parsing, validation, and canonical rendering.

A problem is a single JSON document with five sections:

  field    {"kind": "rationals"} or {"kind": "prime-field", "p": 5}
  algebra  {"kind": "monomial-quotient", "variables": [...],
            "relations": [...]}
           or {"kind": "structure-constants", "dim": n, "labels": [...],
               "constants": [[i, j, k, "coeff"], ...]}
  lie      {"dim": m, "labels": [...],
            "brackets": [[label_a, label_b, label_c, "coeff"], ...]}
  anchor   {lie_label: {generator: "linear expression"}}
  action   {"kind": "character", "values": {generator: "scalar"}}
           or {"kind": "tensor",
               "values": [[r_label, lie_a, lie_b, "coeff"], ...]}

Scalars are written as literals ("3", "-1/2"); anchor values and other
element positions use a linear-expression grammar: terms of the shape
`label`, `scalar`, or `scalar*label`, joined by + and -.  Labels never
start with a digit, so the two token kinds cannot collide.

A bracket pair whose mirror is absent is completed antisymmetrically;
files that spell out both orientations are taken verbatim, which lets
deliberately broken tables reach the checkers intact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import LrhInputError, ProblemFileError
from .finalg import (
    Character,
    CommAlgebra,
    Derivation,
    algebra_from_constants,
    make_monomial_quotient,
)
from .lierinehart import (
    Anchor,
    LieAlgebra,
    LieRinehartData,
    ModuleAction,
    character_action,
    lie_algebra_from_brackets,
    tensor_action,
)
from .enveloping import NCElement, RewriteSystem, l_letter, r_letter
from .scalars import Field

PRESETS = {
    "obstructed-example": "obstructed_example.lrh",
    "euler-example": "euler_example.lrh",
}


# ---------------------------------------------------------------------------
# the linear-expression grammar

def _split_terms(text: str) -> list:
    text = text.strip()
    if not text:
        raise ProblemFileError("empty expression")
    parts = []
    for chunk in text.replace("-", "+-").split("+"):
        chunk = chunk.strip()
        if chunk:
            parts.append(chunk)
    if not parts:
        raise ProblemFileError(f"cannot parse expression {text!r}")
    return parts


def _term_pieces(term: str, fld: Field):
    """(scalar, label-or-None) for one signed term."""
    negative = term.startswith("-")
    if negative:
        term = term[1:].strip()
    if not term:
        raise ProblemFileError("dangling sign in expression")
    if term[0].isdigit():
        head, star, tail = term.partition("*")
        coeff = fld.parse(head)
        label = tail.strip() if star else None
        if star and not label:
            raise ProblemFileError(f"missing label after '*' in {term!r}")
    else:
        coeff, label = fld.one, term
    if negative:
        coeff = -coeff
    return coeff, label


def parse_algebra_expression(text: str, algebra: CommAlgebra):
    """Linear expression over the algebra's basis labels; a bare scalar
    means that multiple of the unit."""
    out = algebra.zero
    for term in _split_terms(str(text)):
        coeff, label = _term_pieces(term, algebra.field)
        index = algebra.unit_index if label is None \
            else algebra.index_of(label)
        out = out + coeff * algebra.basis_element(index)
    return out


def parse_generator_expression(text: str, system: RewriteSystem) -> NCElement:
    """Linear expression over both letter alphabets, for divisibility
    queries: R-labels become R-letters, Lie labels become L-letters."""
    fld = system.field
    out = NCElement.zero(fld)
    for term in _split_terms(str(text)):
        coeff, label = _term_pieces(term, fld)
        if label is None or label == system.r_labels[0]:
            word = ()
        elif label in system.r_labels:
            word = (r_letter(system.r_labels.index(label)),)
        elif label in system.l_labels:
            word = (l_letter(system.l_labels.index(label)),)
        else:
            raise ProblemFileError(
                f"unknown generator label {label!r} (know "
                f"{', '.join(system.r_labels + system.l_labels)})")
        out = out + NCElement.from_word(fld, word, coeff)
    return out


# ---------------------------------------------------------------------------
# section parsers

@dataclass(frozen=True)
class ProblemFile:
    field: Field
    R: CommAlgebra
    L: LieAlgebra
    anchor: Anchor
    action: ModuleAction

    def to_data(self) -> LieRinehartData:
        """Unvalidated structure; run the axiom checks to promote it."""
        return LieRinehartData(R=self.R, L=self.L, action=self.action,
                               anchor=self.anchor)


def _require(section: dict, key: str, where: str):
    if key not in section:
        raise ProblemFileError(f"missing key {key!r} in section {where!r}")
    return section[key]


def _parse_field(section) -> Field:
    kind = _require(section, "kind", "field")
    if kind == "rationals":
        return Field(0)
    if kind == "prime-field":
        p = _require(section, "p", "field")
        if not isinstance(p, int):
            raise ProblemFileError("field.p must be an integer")
        try:
            return Field(p)
        except LrhInputError as exc:
            raise ProblemFileError(str(exc)) from None
    raise ProblemFileError(f"unknown field.kind {kind!r}")


def _parse_algebra(section, fld: Field) -> CommAlgebra:
    kind = _require(section, "kind", "algebra")
    if kind == "monomial-quotient":
        variables = _require(section, "variables", "algebra")
        relations = _require(section, "relations", "algebra")
        return make_monomial_quotient(tuple(variables), tuple(relations),
                                      fld)
    if kind == "structure-constants":
        dim = _require(section, "dim", "algebra")
        labels = tuple(_require(section, "labels", "algebra"))
        if len(labels) != dim:
            raise ProblemFileError("algebra.dim does not match its labels")
        constants = {}
        for entry in section.get("constants", []):
            if len(entry) != 4:
                raise ProblemFileError(
                    f"algebra constant {entry!r} is not [i, j, k, coeff]")
            i, j, k, coeff = entry
            constants[(i, j, k)] = fld.parse(str(coeff))
        return algebra_from_constants(fld, labels, constants)
    raise ProblemFileError(f"unknown algebra.kind {kind!r}")


def _parse_lie(section, fld: Field, r_labels) -> LieAlgebra:
    dim = _require(section, "dim", "lie")
    labels = tuple(_require(section, "labels", "lie"))
    if len(labels) != dim:
        raise ProblemFileError("lie.dim does not match its labels")
    if len(set(labels)) != dim:
        raise ProblemFileError("duplicate Lie labels")
    clash = set(labels) & set(r_labels)
    if clash:
        raise ProblemFileError(
            f"labels used by both sections: {', '.join(sorted(clash))}")

    def lindex(label):
        if label not in labels:
            raise ProblemFileError(f"unknown Lie label {label!r}")
        return labels.index(label)

    sparse = {}
    for entry in section.get("brackets", []):
        if len(entry) != 4:
            raise ProblemFileError(
                f"bracket entry {entry!r} is not [a, b, c, coeff]")
        la, lb, lc, coeff = entry
        a, b, c = lindex(la), lindex(lb), lindex(lc)
        vec = list(sparse.get((a, b), (fld.zero,) * dim))
        vec[c] = vec[c] + fld.parse(str(coeff))
        sparse[(a, b)] = tuple(vec)
    return lie_algebra_from_brackets(fld, labels, sparse)


def _parse_anchor(section, R: CommAlgebra, L: LieAlgebra) -> Anchor:
    derivations = []
    known = set(L.labels)
    for key in section:
        if key not in known:
            raise ProblemFileError(f"anchor names unknown Lie label {key!r}")
    for label in L.labels:
        values = section.get(label, {})
        if R.variables is not None:
            for var in values:
                if var not in R.variables:
                    raise ProblemFileError(
                        f"anchor.{label} names unknown generator {var!r}")
            images = {var: parse_algebra_expression(
                          values.get(var, "0"), R)
                      for var in R.variables}
            derivations.append(Derivation.from_variable_images(R, images))
        else:
            matrix = [[R.field.zero] * R.dim for _ in range(R.dim)]
            for lab in values:
                if lab not in R.labels or lab == R.labels[0]:
                    raise ProblemFileError(
                        f"anchor.{label} names unknown generator {lab!r}")
            for j, lab in enumerate(R.labels):
                if j == R.unit_index:
                    continue
                image = parse_algebra_expression(values.get(lab, "0"), R)
                for i in range(R.dim):
                    matrix[i][j] = image.coeffs[i]
            derivations.append(
                Derivation(R, tuple(tuple(row) for row in matrix)))
    return Anchor(tuple(derivations))


def _parse_action(section, R: CommAlgebra, L: LieAlgebra) -> ModuleAction:
    kind = _require(section, "kind", "action")
    values = _require(section, "values", "action")
    if kind == "character":
        if R.variables is not None and set(values) <= set(R.variables):
            parsed = {var: R.field.parse(str(values.get(var, "0")))
                      for var in R.variables}
            chi = Character.from_variable_values(R, parsed)
        else:
            for lab in values:
                if lab not in R.labels:
                    raise ProblemFileError(
                        f"action.values names unknown label {lab!r}")
            chi = Character(R, tuple(
                R.field.parse(str(values.get(lab, "1" if k == 0 else "0")))
                for k, lab in enumerate(R.labels)))
        return character_action(chi, L.dim)
    if kind == "tensor":
        entries = {}
        for entry in values:
            if len(entry) != 4:
                raise ProblemFileError(
                    f"action entry {entry!r} is not [r, a, b, coeff]")
            rl, la, lb, coeff = entry
            if rl not in R.labels:
                raise ProblemFileError(f"unknown base label {rl!r}")
            if la not in L.labels or lb not in L.labels:
                raise ProblemFileError(f"unknown Lie label in {entry!r}")
            key = (R.labels.index(rl), L.labels.index(la),
                   L.labels.index(lb))
            entries[key] = entries.get(key, R.field.zero) \
                + R.field.parse(str(coeff))
        return tensor_action(R, L.dim, entries)
    raise ProblemFileError(f"unknown action.kind {kind!r}")


def parse_problem_text(text: str) -> ProblemFile:
    try:
        tree = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(
            f"not well-formed JSON: {exc.msg} at line {exc.lineno}, "
            f"column {exc.colno}") from None
    if not isinstance(tree, dict):
        raise ProblemFileError("problem document must be a JSON object")
    for key in ("field", "algebra", "lie", "anchor", "action"):
        if key not in tree:
            raise ProblemFileError(f"missing section {key!r}")
    fld = _parse_field(tree["field"])
    R = _parse_algebra(tree["algebra"], fld)
    L = _parse_lie(tree["lie"], fld, R.labels)
    anchor = _parse_anchor(tree["anchor"], R, L)
    action = _parse_action(tree["action"], R, L)
    return ProblemFile(field=fld, R=R, L=L, anchor=anchor, action=action)


def parse_problem(source: str) -> ProblemFile:
    """`source` is a path or the name of a bundled preset."""
    if source in PRESETS:
        text = resources.files("lrhopf").joinpath(
            "data", PRESETS[source]).read_text()
        return parse_problem_text(text)
    try:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ProblemFileError(
            f"cannot read problem file {source!r}: {exc.strerror}; "
            f"bundled presets: {', '.join(sorted(PRESETS))}") from None
    return parse_problem_text(text)


# ---------------------------------------------------------------------------
# canonical rendering

def render_problem(pf: ProblemFile) -> str:
    """Canonical JSON for a parsed problem.  Parsing the output gives
    back equal in-memory components, which is tested, not assumed."""
    fld = pf.field
    doc = {}
    doc["field"] = {"kind": fld.kind}
    if fld.characteristic:
        doc["field"]["p"] = fld.characteristic

    if pf.R.variables is not None:
        doc["algebra"] = {"kind": "monomial-quotient",
                          "variables": list(pf.R.variables),
                          "relations": list(pf.R.relations)}
    else:
        constants = []
        for i in range(pf.R.dim):
            for j in range(pf.R.dim):
                for k, c in enumerate(pf.R.mul_table[i][j]):
                    if c:
                        constants.append([i, j, k, str(c)])
        doc["algebra"] = {"kind": "structure-constants", "dim": pf.R.dim,
                          "labels": list(pf.R.labels),
                          "constants": constants}

    brackets = []
    for a in range(pf.L.dim):
        for b in range(pf.L.dim):
            for c, f in enumerate(pf.L.table[a][b]):
                if f:
                    brackets.append([pf.L.labels[a], pf.L.labels[b],
                                     pf.L.labels[c], str(f)])
    doc["lie"] = {"dim": pf.L.dim, "labels": list(pf.L.labels),
                  "brackets": brackets}

    anchor = {}
    for a, label in enumerate(pf.L.labels):
        d = pf.anchor.rho(a)
        if pf.R.variables is not None:
            gens = {}
            for var in pf.R.variables:
                j = pf.R.index_of(var)
                gens[var] = str(d.column(j))
            anchor[label] = gens
        else:
            anchor[label] = {
                lab: str(d.column(j))
                for j, lab in enumerate(pf.R.labels) if j != pf.R.unit_index}
    doc["anchor"] = anchor

    if pf.action.kind == "character":
        chi = pf.action.character
        if pf.R.variables is not None:
            values = {var: str(chi.values[pf.R.index_of(var)])
                      for var in pf.R.variables}
        else:
            values = {lab: str(chi.values[k])
                      for k, lab in enumerate(pf.R.labels)}
        doc["action"] = {"kind": "character", "values": values}
    else:
        values = []
        for i in range(pf.R.dim):
            for a in range(pf.L.dim):
                for b, t in enumerate(pf.action.tensor[i][a]):
                    if t:
                        values.append([pf.R.labels[i], pf.L.labels[a],
                                       pf.L.labels[b], str(t)])
        doc["action"] = {"kind": "tensor", "values": values}

    return json.dumps(doc, indent=2) + "\n"
