"""The reverse bisection method: recover a single alternating series.

A specialized triplicate summand, cleared of denominators, becomes a
polynomial P(y) (y standing for q^n).  The ansatz series T_n carries an
unknown polynomial Q evaluated at q^(n/2), and matching

    P(y) = Q(y)*A(y) +- shift * Q(q^(1/2)y) * B(y)

coefficientwise yields an overdetermined linear system over the polynomial
ring in t, solved fraction-free.  At most one sign admits a solution; the
solved Q turns the double-width sum into sum(+-1)^n T_n.

Case data (clearing factor, functional-equation factors, term blocks) ships
in the catalog; the weight polynomial itself is rebuilt from the theorem
recipe, never transcribed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from qseries.linsolve import poly_solve_overdetermined
from qseries.polyring import Poly, RatFunc
from qseries.qcore import QMono, SeriesRing
from qseries.registry import BisectionCase, IdentityRecord
from qseries.theorems import (
    BExp,
    BraceTerm,
    SeriesRecipe,
    bind_theorem,
    eval_term,
)


class ExactDivisionFailed(ArithmeticError):
    """A quotient atom of the clearing factor does not divide the weight."""


class NoBisection(ArithmeticError):
    """Neither sign admits a polynomial Q up to the degree bound."""


class AmbiguousSign(ArithmeticError):
    """Both signs admit solutions; both are attached to the exception."""

    def __init__(self, results):
        super().__init__("both signs are consistent")
        self.results = results


# ------------------------------------------------- y-polynomials over QQ[t]


def _ymono(texp, ypow, coeff=1):
    return [Poly()] * ypow + [Poly.monomial(coeff, texp)]


def _ymul(a, b):
    if not a or not b:
        return []
    out = [Poly() for _ in range(len(a) + len(b) - 1)]
    for i, pa in enumerate(a):
        if pa.is_zero:
            continue
        for j, pb in enumerate(b):
            if not pb.is_zero:
                out[i + j] = out[i + j] + pa * pb
    return out


def _yadd(a, b):
    out = [Poly() for _ in range(max(len(a), len(b)))]
    for i, p in enumerate(a):
        out[i] = out[i] + p
    for i, p in enumerate(b):
        out[i] = out[i] + p
    while out and out[-1].is_zero:
        out.pop()
    return out


def _yatoms_poly(atoms):
    """Product of (1 - t^texp * y^ypow)^mult factors."""
    acc = [Poly.const(1)]
    for texp, ypow, mult in atoms:
        factor = _yadd([Poly.const(1)], _ymono(texp, ypow, -1))
        for _ in range(mult):
            acc = _ymul(acc, factor)
    return acc


def _ydeg(a):
    return len(a) - 1


def _ydivmod_field(num, den):
    """Long division in y over the fraction field QQ(t)."""
    num = [RatFunc(p) for p in num]
    den = [RatFunc(p) for p in den]
    while den and den[-1].is_zero:
        den.pop()
    if not den:
        raise ZeroDivisionError("division by the zero y-polynomial")
    q = [RatFunc(0)] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    d = len(den) - 1
    lead = den[-1]
    for k in range(len(rem) - 1, d - 1, -1):
        if rem[k].is_zero:
            continue
        f = rem[k] / lead
        q[k - d] = f
        for j in range(d + 1):
            rem[k - d + j] = rem[k - d + j] - f * den[j]
    while rem and rem[-1].is_zero:
        rem.pop()
    return q, rem


def _atom_to_y(x: BExp, root: int, what: str):
    if x.ncoef % root:
        raise ExactDivisionFailed(f"{what}: atom exponent {x.ncoef}n is not integral in y")
    if x.const < 0:
        raise ExactDivisionFailed(f"{what}: atom coefficient t^{x.const} is not polynomial")
    return x.ncoef // root, x.const, x.coeff


def weight_y_fraction(case: BisectionCase):
    """The theorem weight at the case parameters as (num, den) y-polynomials."""
    bt = bind_theorem(case.theorem, case.params, case.root)
    root = case.root
    wn = [Poly.const(1)]
    wd = [Poly.const(1)]
    for x in bt.w_num:
        ypow, texp, coeff = _atom_to_y(x, root, "weight numerator")
        wn = _ymul(wn, _yadd([Poly.const(1)], _ymono(texp, ypow, -coeff)))
    for x in bt.w_den:
        ypow, texp, coeff = _atom_to_y(x, root, "weight denominator")
        wd = _ymul(wd, _yadd([Poly.const(1)], _ymono(texp, ypow, -coeff)))
    if len(bt.braces) != 1:
        raise ExactDivisionFailed("theorem weight must have a single brace group")
    group = bt.braces[0]
    dens = []
    for t in group:
        acc = [Poly.const(1)]
        for x in t.den:
            ypow, texp, coeff = _atom_to_y(x, root, "brace denominator")
            acc = _ymul(acc, _yadd([Poly.const(1)], _ymono(texp, ypow, -coeff)))
        dens.append(acc)
    brace_num = []
    for i, t in enumerate(group):
        ypow, texp, coeff = _atom_to_y(t.mono, root, "brace monomial")
        part = _ymono(texp, ypow, coeff)
        for x in t.num:
            ypw, tex, cf = _atom_to_y(x, root, "brace numerator")
            part = _ymul(part, _yadd([Poly.const(1)], _ymono(tex, ypw, -cf)))
        for j, dj in enumerate(dens):
            if j != i:
                part = _ymul(part, dj)
        brace_num = _yadd(brace_num, part)
    brace_den = [Poly.const(1)]
    for dj in dens:
        brace_den = _ymul(brace_den, dj)
    return _ymul(wn, brace_num), _ymul(wd, brace_den)


def build_P(case: BisectionCase):
    """clearing-factor * weight as an exact polynomial in y over QQ[t]."""
    wnum, wden = weight_y_fraction(case)
    num = _ymul(_yatoms_poly(case.clear_num), wnum)
    den = _ymul(_yatoms_poly(case.clear_den), wden)
    q, rem = _ydivmod_field(num, den)
    if rem:
        raise ExactDivisionFailed(f"case {case.id}: clearing factor leaves a remainder")
    out = []
    for i, c in enumerate(q):
        if not c.is_polynomial():
            raise ExactDivisionFailed(f"case {case.id}: y^{i} coefficient is not polynomial")
        out.append(c.as_poly())
    while out and out[-1].is_zero:
        out.pop()
    return out


@dataclass
class BisectionSolution:
    case: str
    sign: str
    degree: int
    coeffs: list            # RatFunc entries, a_0 normalized to 1
    terms: list | None      # per entry: [(coeff, t-exp), ...] when polynomial
    consistent: bool


def _poly_terms(r: RatFunc):
    """The (coeff, t-exponent) terms of a polynomial solution entry."""
    if r.is_zero:
        return []
    if not r.is_polynomial():
        return None
    p = r.as_poly()
    return [(Fraction(c), i) for i, c in enumerate(p.coeffs) if c]


def solve_Q(case: BisectionCase, deg_q: int | None = None, forced_sign: str | None = None):
    """Assemble and solve the functional-equation system for each sign.

    Returns a BisectionSolution for the unique consistent sign.  Raises
    NoBisection when neither sign works and AmbiguousSign when both do.
    """
    if deg_q is None:
        deg_q = case.deg_q
    P = build_P(case)
    A = _yatoms_poly(case.fe_a)
    B = _yatoms_poly(case.fe_b)
    shift_texp, shift_ypow = case.fe_shift
    half = case.root // 2
    rows = len(P)
    if rows - 1 < deg_q:
        raise NoBisection(f"deg P = {rows - 1} cannot balance deg Q = {deg_q}")

    results = {}
    for sign_label, sign in (("+", 1), ("-", -1)):
        if forced_sign is not None and sign_label != forced_sign:
            continue
        M = []
        for k in range(rows):
            row = []
            for i in range(deg_q + 1):
                entry = A[k - i] if 0 <= k - i < len(A) else Poly()
                jb = k - shift_ypow - i
                if 0 <= jb < len(B) and not B[jb].is_zero:
                    contrib = Poly.monomial(sign, shift_texp + half * i) * B[jb]
                    entry = entry + contrib
                row.append(entry)
            M.append(row)
        sol, ok = poly_solve_overdetermined(M, P)
        if ok:
            a0 = sol[0]
            if a0.is_zero:
                ok = False
            else:
                sol = [s / a0 for s in sol]
        if ok:
            terms = [_poly_terms(s) for s in sol]
            results[sign_label] = BisectionSolution(
                case.id, sign_label, deg_q, sol,
                terms if all(t is not None for t in terms) else None, True,
            )
    if not results:
        if forced_sign is not None:
            return BisectionSolution(case.id, forced_sign, deg_q, [], None, False)
        raise NoBisection(f"case {case.id}: no consistent sign at degree {deg_q}")
    if len(results) == 2:
        raise AmbiguousSign(results)
    return next(iter(results.values()))


def degree_search(case: BisectionCase, max_deg: int):
    """Smallest Q-degree admitting a consistent sign, with its solution."""
    for deg in range(max_deg + 1):
        try:
            return deg, solve_Q(case, deg)
        except NoBisection:
            continue
    raise NoBisection(f"case {case.id}: no solution up to degree {max_deg}")


def functional_equation_residual(case: BisectionCase, sol: BisectionSolution):
    """P - [Q*A + sign*shift*Q(q^(1/2)y)*B] as a y-polynomial (must be zero)."""
    P = build_P(case)
    A = _yatoms_poly(case.fe_a)
    B = _yatoms_poly(case.fe_b)
    sign = 1 if sol.sign == "+" else -1
    half = case.root // 2
    qpoly = []
    qshift = []
    for i, r in enumerate(sol.coeffs):
        c = r.as_poly()
        qpoly.append(c)
        qshift.append(c * Poly.monomial(1, half * i))
    rhs = _ymul(qpoly, A)
    sh = _ymul(qshift, B)
    sh = _ymul(sh, _ymono(case.fe_shift[0], case.fe_shift[1], sign))
    rhs = _yadd(rhs, sh)
    return _yadd(P, [(-1) * p for p in rhs])


# ------------------------------------------------------------ emitted series


def reduced_recipe(case: BisectionCase, sol: BisectionSolution) -> SeriesRecipe:
    """The single-sum series recipe from the solved Q (evaluated at q^(n/2))."""
    if sol.terms is None:
        raise NoBisection(f"case {case.id}: solution coefficients are not polynomial in t")
    half = case.root // 2
    qgroup = tuple(
        BraceTerm(BExp(half * i, texp, coeff), (), ())
        for i, entry in enumerate(sol.terms)
        for coeff, texp in entry
    )
    return SeriesRecipe(
        name=f"{case.emit_id}",
        root=case.root,
        lhs_num=tuple(QMono(1, e) for e in case.pp_lhs_num),
        lhs_den=tuple(QMono(1, e) for e in case.pp_lhs_den),
        pref_quad=case.t_pref[0], pref_lin=case.t_pref[1], pref_const=case.t_pref[2],
        pref_base=1,
        poch_num=case.t_poch_num, poch_den=case.t_poch_den,
        w_num=case.t_w_num, w_den=case.t_w_den,
        braces=(qgroup,),
        leading_one=False, n_start=0,
        sign_alt=(sol.sign == "-"),
    )


def pp_recipe(case: BisectionCase) -> SeriesRecipe:
    """The double-width (unreduced) series with P(q^n) as its weight."""
    P = build_P(case)
    group = []
    for k, c in enumerate(P):
        for texp, coeff in [(i, x) for i, x in enumerate(c.coeffs) if x]:
            group.append(BraceTerm(BExp(k * case.root, texp, coeff), (), ()))
    return SeriesRecipe(
        name=f"{case.id}-pp",
        root=case.root,
        lhs_num=tuple(QMono(1, e) for e in case.pp_lhs_num),
        lhs_den=tuple(QMono(1, e) for e in case.pp_lhs_den),
        pref_quad=case.pp_pref[0], pref_lin=case.pp_pref[1], pref_const=case.pp_pref[2],
        pref_base=1,
        poch_num=case.pp_poch_num, poch_den=case.pp_poch_den,
        w_num=case.pp_w_num, w_den=case.pp_w_den,
        braces=(tuple(group),),
        leading_one=False, n_start=0,
    )


def emit_reduced(case: BisectionCase, sol: BisectionSolution) -> IdentityRecord:
    """An IdentityRecord for the reduced series, verifiable by the registry."""
    return IdentityRecord(
        id=case.emit_id, kind="bisected", section="4.1",
        theorem=None, params=None, root=case.root,
        recipe=reduced_recipe(case, sol), case=case.id, sign=sol.sign,
        classical=None,
    )


def pairing_check(case: BisectionCase, sol: BisectionSolution, order: int) -> bool:
    """T_{2n} +- T_{2n+1} must reproduce the unreduced summand exactly."""
    ring = SeriesRing(order=order, root=case.root)
    tform = reduced_recipe(case, sol)
    ppform = pp_recipe(case)
    n = 0
    while True:
        from qseries.theorems import term_valuation_bound

        if term_valuation_bound(ppform, n) >= order and n > 2:
            return True
        pair = eval_term(ring, tform, 2 * n).series + eval_term(ring, tform, 2 * n + 1).series
        ppt = eval_term(ring, ppform, n).series
        if pair.first_difference(ppt, order) is not None:
            return False
        n += 1
