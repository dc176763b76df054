"""Independent oracles and shared random generators for the test suite.

The solvers and counters here deliberately avoid the package's own
algorithms: rational systems are decided by a plain Fraction echelon
with a different pivot order, prime-field systems by exhaustive
enumeration in raw integers, monomial products by direct exponent
arithmetic, and basis sizes by binomial counting.  Tests compare the
package's answers against these.
"""

from fractions import Fraction
from itertools import product
from math import comb

from lrhopf import (
    Anchor,
    Character,
    CommAlgebra,
    Derivation,
    Field,
    LieRinehartData,
    character_action,
    check_derivation,
    lie_algebra_from_brackets,
    make_base_field_algebra,
    make_monomial_quotient,
)


# ---------------------------------------------------------------------------
# linear algebra

def frac_solve(matrix, rhs):
    """Feasibility, one witness, and rank over the rationals, by plain
    Fraction elimination choosing the LAST usable pivot row (the package
    picks the first, so agreement is not an artifact of shared choices).
    matrix is a list of Fraction rows."""
    rows = [list(map(Fraction, row)) + [Fraction(v)]
            for row, v in zip(matrix, rhs)]
    m = len(rows)
    n = len(matrix[0]) if matrix else 0
    pivots = []
    used = set()
    for col in range(n):
        pivot = None
        for r in range(m - 1, -1, -1):
            if r not in used and rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        used.add(pivot)
        pivots.append((pivot, col))
        scale = rows[pivot][col]
        rows[pivot] = [x / scale for x in rows[pivot]]
        for r in range(m):
            if r != pivot and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b
                           for a, b in zip(rows[r], rows[pivot])]
    for r in range(m):
        if r not in used and rows[r][n]:
            return False, None, len(pivots)
    witness = [Fraction(0)] * n
    for r, col in pivots:
        witness[col] = rows[r][n]
    return True, witness, len(pivots)


def gf_exhaustive(matrix, rhs, p):
    """(feasible, number of solutions) for integer matrices mod p by
    trying every vector.  Only sensible for tiny systems."""
    m = len(matrix)
    n = len(matrix[0]) if matrix else 0
    count = 0
    for cand in product(range(p), repeat=n):
        ok = True
        for r in range(m):
            total = sum(matrix[r][c] * cand[c] for c in range(n)) % p
            if total != rhs[r] % p:
                ok = False
                break
        if ok:
            count += 1
    return count > 0, count


def raw_matrix(system):
    """Dense plain-number matrix and rhs out of a LinearSystem."""
    matrix = [[0] * system.cols for _ in range(system.rows)]
    for r, c, v in system.entries:
        matrix[r][c] = v.value
    return matrix, [v.value for v in system.rhs]


def substitute(system, witness):
    """Check A.witness == b using raw values only."""
    matrix, rhs = raw_matrix(system)
    p = system.field.characteristic
    for r in range(system.rows):
        total = sum(matrix[r][c] * witness[c].value
                    for c in range(system.cols))
        if p:
            if total % p != rhs[r] % p:
                return False
        elif total != rhs[r]:
            return False
    return True


def kills_columns(system, certificate):
    """Check u.A == 0 and u.b != 0 using raw values only."""
    matrix, rhs = raw_matrix(system)
    p = system.field.characteristic
    for c in range(system.cols):
        total = sum(certificate[r].value * matrix[r][c]
                    for r in range(system.rows))
        if (total % p if p else total) != 0:
            return False
    total = sum(certificate[r].value * rhs[r] for r in range(system.rows))
    return (total % p if p else total) != 0


# ---------------------------------------------------------------------------
# monomial arithmetic and dimension counting

def monomial_product_mod_ideal(ma, mb, relation_exps):
    """Exponent-tuple product reduced by a monomial ideal: the product
    monomial, or None when it falls into the ideal."""
    prod = tuple(a + b for a, b in zip(ma, mb))
    for rel in relation_exps:
        if all(p >= r for p, r in zip(prod, rel)):
            return None
    return prod


def pbw_dimension(r_dim, l_dim, degree):
    """Expected size of the degree-truncated basis: the base algebra's
    basis (unit included) plus nondecreasing Lie words of each length."""
    return r_dim + sum(comb(t + l_dim - 1, l_dim - 1)
                       for t in range(1, degree + 1))


# ---------------------------------------------------------------------------
# random structure generators (seeded by the caller)

def quotient_pool(fld):
    return [
        make_base_field_algebra(fld),
        make_monomial_quotient(("x",), ("x^2",), fld),
        make_monomial_quotient(("x",), ("x^3",), fld),
        make_monomial_quotient(("x", "y"), ("x*y", "x^2", "y^2"), fld),
        make_monomial_quotient(("x", "y"), ("x^2", "y^2"), fld),
    ]


def lie_pool(fld):
    one, zero = fld.one, fld.zero
    return [
        lie_algebra_from_brackets(fld, ("b1",), {}),
        lie_algebra_from_brackets(fld, ("b1", "b2"), {}),
        lie_algebra_from_brackets(fld, ("b1", "b2"),
                                  {(0, 1): (one, zero)}),
        lie_algebra_from_brackets(fld, ("b1", "b2", "b3"),
                                  {(0, 1): (zero, zero, one)}),
    ]


def natural_character(R: CommAlgebra) -> Character:
    """The evaluation-at-zero character: every generator goes to 0.  For
    monomial quotients with nilpotent generators this is the only one."""
    if R.variables is None:
        return Character(R, (R.field.one,) + (R.field.zero,) * (R.dim - 1))
    return Character.from_variable_values(
        R, {v: R.field.zero for v in R.variables})


def random_element(rng, R, lo=-2, hi=2):
    return R.element(tuple(R.field.scalar(rng.randint(lo, hi))
                           for _ in range(R.dim)))


def random_derivation(rng, R, tries=12):
    """A random valid derivation of R, or None if the draw keeps landing
    on maps that violate Leibniz (they are filtered, never repaired)."""
    if R.variables is None:
        return Derivation.zero(R)
    for _ in range(tries):
        images = {v: random_element(rng, R) for v in R.variables}
        cand = Derivation.from_variable_images(R, images)
        if check_derivation(R, cand.matrix).ok:
            return cand
    return None


def random_character_candidate(rng, fld):
    """(R, L, anchor, chi) with every anchor image a genuine derivation;
    nothing else is filtered, so the compatibility laws may or may not
    hold -- which is the point for equivalence testing."""
    while True:
        R = rng.choice(quotient_pool(fld))
        L = rng.choice(lie_pool(fld))
        derivs = []
        for _ in range(L.dim):
            d = random_derivation(rng, R)
            if d is None:
                break
            derivs.append(d)
        if len(derivs) != L.dim:
            continue
        return R, L, Anchor(tuple(derivs)), natural_character(R)


def candidate_data(R, L, anchor, chi) -> LieRinehartData:
    return LieRinehartData(R=R, L=L, action=character_action(chi, L.dim),
                           anchor=anchor)


def random_nc_element(rng, system, max_terms=4, max_len=3):
    """Random noncommutative element over both letter alphabets."""
    from lrhopf import NCElement, l_letter, r_letter
    letters = [r_letter(i) for i in range(1, system.r_dim)]
    letters += [l_letter(a) for a in range(system.l_dim)]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        word = tuple(rng.choice(letters)
                     for _ in range(rng.randint(0, max_len)))
        c = system.field.scalar(rng.randint(-3, 3))
        terms[word] = terms.get(word, system.field.zero) + c
    return NCElement(system.field, {w: c for w, c in terms.items() if c})
