"""The enveloping algebra of a Lie-Rinehart structure, by term rewriting.

Elements are K-linear combinations of words in two letter kinds: R-letters
(images of the base-algebra basis, with the unit identified with the empty
word) and L-letters (images of the Lie-algebra basis).  Four rewrite rule
families orient the defining relations:

  R1  e_i e_j          -> sum_k c[i][j][k] e_k          (merge R-letters)
  R2  xi_a e_i         -> e_i xi_a + sum_k rho_a(e_i)_k e_k
  R3  e_i xi_a         -> sum_b t[i][a][b] xi_b          (i not the unit)
  R4  xi_a xi_b (a>b)  -> xi_b xi_a + sum_c f[a][b][c] xi_c

Every rule strictly decreases the measure (L-letter count, R-letter count,
inversion count) in lexicographic order, so rewriting terminates; words
irreducible under all four families are the empty word, single non-unit
R-letters, and nondecreasing L-letter words.  Truncating by L-letter count
gives finite bases; local confluence is checked per input rather than
assumed, and the induced action on the base algebra is certified by letting
every defining relation act on every basis element.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import NamedTuple

from .errors import (
    DegreeOverflowError,
    FieldMismatchError,
    LrhInputError,
    RewriteBudgetError,
)
from .finalg import AlgebraElement
from .lierinehart import LieRinehartData
from .reports import FAIL, PASS, VerdictReport
from .scalars import LinearSystem, Scalar, SolveOutcome, solve_linear

R_KIND = "R"
L_KIND = "L"


class Letter(NamedTuple):
    kind: str
    index: int


def r_letter(index: int) -> Letter:
    return Letter(R_KIND, index)


def l_letter(index: int) -> Letter:
    return Letter(L_KIND, index)


def word_degree(word: tuple) -> int:
    """L-letter count; the filtration degree of a monomial word."""
    return sum(1 for x in word if x.kind == L_KIND)


def word_measure(word: tuple) -> tuple:
    """(L-count, R-count, inversions).  Inversions are L-before-R pairs
    plus out-of-order L-L pairs; every rewrite step strictly decreases
    this triple lexicographically."""
    l_count = word_degree(word)
    r_count = len(word) - l_count
    inversions = 0
    for p in range(len(word)):
        for q in range(p + 1, len(word)):
            a, b = word[p], word[q]
            if a.kind == L_KIND and b.kind == R_KIND:
                inversions += 1
            elif a.kind == L_KIND and b.kind == L_KIND \
                    and a.index > b.index:
                inversions += 1
    return (l_count, r_count, inversions)


class NCElement:
    """Linear combination of words; zero coefficients are never stored."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: dict):
        self.field = field
        self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def zero(cls, field) -> "NCElement":
        return cls(field, {})

    @classmethod
    def unit(cls, field) -> "NCElement":
        return cls(field, {(): field.one})

    @classmethod
    def from_word(cls, field, word, coeff=None) -> "NCElement":
        return cls(field, {tuple(word): coeff if coeff is not None
                           else field.one})

    @property
    def degree(self) -> int:
        return max((word_degree(w) for w in self.terms), default=0)

    def _merge(self, other, sign):
        if self.field != other.field:
            raise FieldMismatchError("mixing elements over different fields")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, self.field.zero) + sign * c
        return NCElement(self.field, terms)

    def __add__(self, other):
        return self._merge(other, self.field.one)

    def __sub__(self, other):
        return self._merge(other, -self.field.one)

    def __neg__(self):
        return NCElement(self.field,
                         {w: -c for w, c in self.terms.items()})

    def __rmul__(self, scalar):
        s = self.field.scalar(scalar)
        return NCElement(self.field,
                         {w: s * c for w, c in self.terms.items()})

    def concat(self, other) -> "NCElement":
        """Free (unnormalized) product: concatenate all word pairs."""
        if self.field != other.field:
            raise FieldMismatchError("mixing elements over different fields")
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, self.field.zero) + c1 * c2
        return NCElement(self.field, terms)

    def __eq__(self, other):
        return isinstance(other, NCElement) and self.field == other.field \
            and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"NCElement({self.terms!r})"


def _word_sort_key(word):
    return (word_degree(word), len(word),
            tuple((0 if x.kind == R_KIND else 1, x.index) for x in word))


@dataclass(frozen=True)
class RewriteSystem:
    """Rule tables copied out of the source data so that tests can tamper
    with a single family without rebuilding the structure underneath."""

    field: object
    r_labels: tuple
    l_labels: tuple
    mul_table: tuple      # R1: c[i][j] coefficient vectors over R
    rho_table: tuple      # R2: rho_table[a][i] = coeffs of rho_a(e_i) in R
    action_tensor: tuple  # R3: t[i][a] = coeffs of e_i.xi_a in L
    bracket_table: tuple  # R4: f[a][b] = coeffs of [xi_a, xi_b] in L
    source: LieRinehartData

    @property
    def r_dim(self) -> int:
        return len(self.r_labels)

    @property
    def l_dim(self) -> int:
        return len(self.l_labels)

    def letter_text(self, letter: Letter) -> str:
        if letter.kind == R_KIND:
            return self.r_labels[letter.index]
        return self.l_labels[letter.index] + "̄"

    def render_word(self, word: tuple) -> str:
        if not word:
            return "1"
        return " ".join(self.letter_text(x) for x in word)

    def render_element(self, elem: NCElement) -> str:
        if not elem:
            return "0"
        parts = []
        for w in sorted(elem.terms, key=_word_sort_key):
            text = str(elem.terms[w])
            negative = text.startswith("-")
            mag = text[1:] if negative else text
            if not w:
                body = mag
            elif mag == "1":
                body = self.render_word(w)
            else:
                body = f"{mag}*{self.render_word(w)}"
            if not parts:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)


def build_rewrite_system(data: LieRinehartData) -> RewriteSystem:
    """Instantiate the four rule families from the structure constants.
    Only validated data is accepted: the rules encode the axioms, and on
    invalid data the system they generate need not terminate on a basis."""
    if not data.validated:
        raise LrhInputError(
            "rewrite system requires validated data; run the axiom checks "
            "or use the character-module constructor")
    n = data.R.dim
    rho = tuple(
        tuple(tuple(d.matrix[k][j] for k in range(n)) for j in range(n))
        for d in data.anchor.derivations)
    return RewriteSystem(
        field=data.R.field,
        r_labels=data.R.labels,
        l_labels=data.L.labels,
        mul_table=data.R.mul_table,
        rho_table=rho,
        action_tensor=data.action.tensor,
        bracket_table=data.L.table,
        source=data)


def _r_word(k: int) -> tuple:
    """Single R-letter as a word; the unit letter is the empty word."""
    return () if k == 0 else (r_letter(k),)


def pair_rule(system: RewriteSystem, x: Letter, y: Letter):
    """RHS of the rule rewriting the two-letter word (x, y), as a list of
    (replacement word, coefficient), or None when the pair is irreducible."""
    one = system.field.one
    if x.kind == R_KIND and y.kind == R_KIND:
        return [(_r_word(k), c)
                for k, c in enumerate(system.mul_table[x.index][y.index])
                if c]
    if x.kind == L_KIND and y.kind == R_KIND:
        out = [((y, x), one)]
        out.extend((_r_word(k), c)
                   for k, c in enumerate(system.rho_table[x.index][y.index])
                   if c)
        return out
    if x.kind == R_KIND and y.kind == L_KIND:
        return [((l_letter(b),), c)
                for b, c in enumerate(system.action_tensor[x.index][y.index])
                if c]
    if x.index > y.index:
        out = [((y, x), one)]
        out.extend(((l_letter(c),), f)
                   for c, f in enumerate(
                       system.bracket_table[x.index][y.index])
                   if f)
        return out
    return None


def find_redex(word: tuple, system: RewriteSystem, strategy: str) -> int:
    """Position of the redex the strategy picks, or -1 when irreducible."""
    positions = range(len(word) - 1)
    if strategy == "rightmost":
        positions = reversed(positions)
    elif strategy != "leftmost":
        raise LrhInputError(f"unknown reduction strategy {strategy!r}")
    for p in positions:
        if pair_rule(system, word[p], word[p + 1]) is not None:
            return p
    return -1


def rewrite_once_at(word: tuple, pos: int,
                    system: RewriteSystem) -> NCElement:
    rhs = pair_rule(system, word[pos], word[pos + 1])
    if rhs is None:
        raise LrhInputError("no rule applies at the requested position")
    prefix, suffix = word[:pos], word[pos + 2:]
    terms = {}
    for body, c in rhs:
        w = prefix + body + suffix
        terms[w] = terms.get(w, system.field.zero) + c
    return NCElement(system.field, terms)


# Per-system memo of fully reduced words, keyed by identity so tampered
# copies of a system never share entries with the original.
_NF_CACHE = {}


def _word_cache(system: RewriteSystem, strategy: str) -> dict:
    key = (id(system), strategy)
    entry = _NF_CACHE.get(key)
    if entry is None or entry[0] is not system:
        entry = (system, {})
        _NF_CACHE[key] = entry
    return entry[1]


def normal_form(elem: NCElement, system: RewriteSystem,
                strategy: str = "leftmost") -> NCElement:
    """Reduce every term to irreducible words.  The step budget is the
    number of distinct words no longer than the longest input term, which
    the strictly decreasing measure makes a hard upper bound; exceeding
    it means the rule tables are broken and is treated as internal."""
    cache = _word_cache(system, strategy)
    alphabet = max(1, (system.r_dim - 1) + system.l_dim)
    longest = max((len(w) for w in elem.terms), default=0)
    budget = sum(alphabet ** t for t in range(longest + 1)) + 16
    steps = [0]

    def reduce_word(word: tuple) -> dict:
        hit = cache.get(word)
        if hit is not None:
            return hit
        pos = find_redex(word, system, strategy)
        if pos < 0:
            cache[word] = {word: system.field.one}
            return cache[word]
        steps[0] += 1
        if steps[0] > budget:
            raise RewriteBudgetError(
                f"rewrite exceeded its step budget of {budget}; the rule "
                f"tables cannot come from a terminating presentation")
        stepped = rewrite_once_at(word, pos, system)
        here = word_measure(word)
        out = {}
        for w, c in stepped.terms.items():
            assert word_measure(w) < here, "rewrite step failed to shrink"
            for w2, c2 in reduce_word(w).items():
                out[w2] = out.get(w2, system.field.zero) + c * c2
        out = {w: c for w, c in out.items() if c}
        cache[word] = out
        return out

    total = {}
    for word, coeff in elem.terms.items():
        for w, c in reduce_word(word).items():
            total[w] = total.get(w, system.field.zero) + coeff * c
    return NCElement(system.field, total)


# ---------------------------------------------------------------------------
# truncated bases

@dataclass(frozen=True, eq=False)
class TruncatedEnvelope:
    system: RewriteSystem
    degree: int
    basis: tuple
    index: dict

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, elem: NCElement) -> tuple:
        out = [self.system.field.zero] * self.dim
        for w, c in elem.terms.items():
            pos = self.index.get(w)
            if pos is None:
                raise DegreeOverflowError(
                    f"term {self.system.render_word(w)} lies outside the "
                    f"degree-{self.degree} basis")
            out[pos] = out[pos] + c
        return tuple(out)

    def element(self, coords) -> NCElement:
        return NCElement(self.system.field,
                         {w: self.system.field.scalar(c)
                          for w, c in zip(self.basis, coords)})

    def basis_labels(self) -> tuple:
        return tuple(self.system.render_word(w) for w in self.basis)


def enumerate_basis(system: RewriteSystem, degree: int) -> TruncatedEnvelope:
    """All irreducible words of L-degree at most `degree`: the empty word,
    each non-unit R-letter, and every nondecreasing L-letter word, ordered
    by degree and then lexicographically."""
    if degree < 0:
        raise LrhInputError("truncation degree must be nonnegative")
    basis = [()]
    basis.extend((r_letter(i),) for i in range(1, system.r_dim))
    for t in range(1, degree + 1):
        for combo in combinations_with_replacement(range(system.l_dim), t):
            basis.append(tuple(l_letter(a) for a in combo))
    index = {w: k for k, w in enumerate(basis)}
    return TruncatedEnvelope(system=system, degree=degree,
                             basis=tuple(basis), index=index)


def multiply_truncated(a: NCElement, b: NCElement,
                       env: TruncatedEnvelope) -> NCElement:
    """Concatenate then normalize.  Refuses when the degrees could leave
    the truncation window; silent truncation would corrupt verdicts."""
    if a.degree + b.degree > env.degree:
        raise DegreeOverflowError(
            f"product degree {a.degree}+{b.degree} exceeds the truncation "
            f"bound {env.degree}")
    return normal_form(a.concat(b), env.system)


def check_local_confluence(env: TruncatedEnvelope) -> VerdictReport:
    """Reduce every two-redex word of length at most 3 both ways and
    compare normal forms.  All rule left-hand sides have length 2, so all
    genuine overlaps live in three-letter words; disjoint redexes commute
    for free but are checked anyway since the word list is tiny."""
    system = env.system
    name = "local-confluence"
    letters = [r_letter(i) for i in range(1, system.r_dim)]
    letters += [l_letter(a) for a in range(system.l_dim)]
    examined = 0
    for length in (2, 3):
        words = sorted(
            ((x,) + rest for x in letters
             for rest in combinations_or_products(letters, length - 1)),
            key=_word_sort_key)
        for word in words:
            redexes = [p for p in range(length - 1)
                       if pair_rule(system, word[p], word[p + 1]) is not None]
            for i, p in enumerate(redexes):
                for q in redexes[i + 1:]:
                    examined += 1
                    left = normal_form(rewrite_once_at(word, p, system),
                                       system)
                    right = normal_form(rewrite_once_at(word, q, system),
                                        system)
                    if left != right:
                        return VerdictReport(
                            name=name, verdict=FAIL, witnesses=[{
                                "word": system.render_word(word),
                                "positions": [p, q],
                                "reduct-at-" + str(p):
                                    system.render_element(left),
                                "reduct-at-" + str(q):
                                    system.render_element(right)}])
    return VerdictReport(name=name, verdict=PASS, narrative=[
        f"{examined} overlapping redex pairs examined, all joins agree"])


def combinations_or_products(letters, length):
    """All words of the given length over the alphabet (plain product)."""
    if length == 0:
        return [()]
    shorter = combinations_or_products(letters, length - 1)
    return [(x,) + rest for x in letters for rest in shorter]


# ---------------------------------------------------------------------------
# the induced action on the base algebra

def left_action_on_R(v: NCElement, r: AlgebraElement,
                     env: TruncatedEnvelope) -> AlgebraElement:
    """Act on the base algebra: an R-letter multiplies, an L-letter applies
    its anchor derivation, letters applied right to left along each word."""
    system = env.system
    alg = env.system.source.R
    if r.algebra != alg:
        raise LrhInputError("element does not live in the base algebra")
    total = alg.zero
    for word, coeff in v.terms.items():
        acc = r
        for letter in reversed(word):
            if letter.kind == R_KIND:
                acc = alg.basis_element(letter.index) * acc
            else:
                out = [alg.field.zero] * alg.dim
                for j, c in enumerate(acc.coeffs):
                    if not c:
                        continue
                    for k, rk in enumerate(system.rho_table[letter.index][j]):
                        if rk:
                            out[k] = out[k] + c * rk
                acc = alg.element(out)
        total = total + coeff * acc
    return total


def relation_elements(system: RewriteSystem) -> list:
    """The defining relations as (name, element) pairs: for each rule,
    LHS minus RHS.  Normalizing any of these must give zero, and each must
    act as zero on the base algebra."""
    fld = system.field
    out = []
    for i in range(1, system.r_dim):
        for j in range(1, system.r_dim):
            lhs = NCElement.from_word(fld, (r_letter(i), r_letter(j)))
            rhs = NCElement(fld, {})
            for word, c in pair_rule(system, r_letter(i), r_letter(j)):
                rhs = rhs + NCElement.from_word(fld, word, c)
            out.append((f"merge[{system.r_labels[i]},{system.r_labels[j]}]",
                        lhs - rhs))
    for a in range(system.l_dim):
        for i in range(1, system.r_dim):
            lhs = NCElement.from_word(fld, (l_letter(a), r_letter(i)))
            rhs = NCElement(fld, {})
            for word, c in pair_rule(system, l_letter(a), r_letter(i)):
                rhs = rhs + NCElement.from_word(fld, word, c)
            out.append((f"straighten[{system.l_labels[a]},"
                        f"{system.r_labels[i]}]", lhs - rhs))
    for i in range(1, system.r_dim):
        for a in range(system.l_dim):
            lhs = NCElement.from_word(fld, (r_letter(i), l_letter(a)))
            rhs = NCElement(fld, {})
            for word, c in pair_rule(system, r_letter(i), l_letter(a)):
                rhs = rhs + NCElement.from_word(fld, word, c)
            out.append((f"absorb[{system.r_labels[i]},"
                        f"{system.l_labels[a]}]", lhs - rhs))
    for a in range(system.l_dim):
        for b in range(a):
            lhs = NCElement.from_word(fld, (l_letter(a), l_letter(b)))
            rhs = NCElement(fld, {})
            for word, c in pair_rule(system, l_letter(a), l_letter(b)):
                rhs = rhs + NCElement.from_word(fld, word, c)
            out.append((f"bracket[{system.l_labels[a]},"
                        f"{system.l_labels[b]}]", lhs - rhs))
    return out


def certify_left_action(env: TruncatedEnvelope) -> VerdictReport:
    """Well-definedness of the action: every defining relation must act as
    zero on every basis element of the base algebra."""
    system = env.system
    alg = system.source.R
    name = "left-action-well-defined"
    for rel_name, rel in relation_elements(system):
        for i in range(alg.dim):
            image = left_action_on_R(rel, alg.basis_element(i), env)
            if image:
                return VerdictReport(name=name, verdict=FAIL, witnesses=[{
                    "relation": rel_name, "argument": alg.labels[i],
                    "image": str(image)}])
    return VerdictReport(name=name, verdict=PASS, narrative=[
        "every defining relation acts as zero on every base basis element"])


# ---------------------------------------------------------------------------
# divisibility

def left_divide(g: NCElement, t: NCElement,
                env: TruncatedEnvelope) -> SolveOutcome:
    """Decide whether t = g.z has a solution z in the truncated basis.
    Products g.(basis word) are computed in an internally extended
    envelope so nothing is cut off; the outcome carries a witness z or an
    exact infeasibility certificate."""
    system = env.system
    g = normal_form(g, system)
    t = normal_form(t, system)
    extended = enumerate_basis(system, env.degree + g.degree)
    if t.degree > extended.degree:
        raise DegreeOverflowError(
            f"target degree {t.degree} exceeds the representable bound "
            f"{extended.degree}")
    entries = []
    for col, word in enumerate(env.basis):
        product = normal_form(g.concat(NCElement.from_word(system.field,
                                                           word)), system)
        for row, c in enumerate(extended.coords(product)):
            if c:
                entries.append((row, col, c))
    rhs = extended.coords(t)
    problem = LinearSystem(rows=extended.dim, cols=env.dim,
                           entries=tuple(entries), rhs=tuple(rhs),
                           field=system.field)
    return solve_linear(problem)
