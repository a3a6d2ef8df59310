"""The five specialized nonterminating dual theorems as structured data.

Each theorem is a recipe: an eight-factor infinite-product left side and a
right side summed over n, where term n is

    prefactor(n) * [finite Pochhammer block](n) * W_n

with W_n a ratio of binomial products times one or more brace groups (sums
of binomial-quotient expressions).  Everything is a q-monomial binomial
(1 - coeff * q^(cn*n + cc) * mono), so a term evaluates by O(order) binomial
multiplications and divisions per factor; no dense products are needed.

The same recipe shape (SeriesRecipe) also carries catalogued identities that
are stored explicitly: displayed sums whose theorem form is singular, and
the reduced single-sum series produced by the reverse bisection method.

Terms are summed until a rigorous quadratic lower bound on the term
valuation clears the truncation order; each evaluated term is checked
against its own bound (NonmonotoneValuation guards the stop rule).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from qseries.inversion import (
    NonmonotoneValuation,
    SingularMismatch,
    VanishingDenominatorFactor,
    WPParams,
)
from qseries.qcore import (
    DUPLICATE,
    TRIPLICATE,
    TRIPLICATE_SPLIT,
    QMono,
    SeriesRing,
    poch_infinite,
)
from qseries.series import LaurentSeries


@dataclass(frozen=True)
class BExp:
    """coeff * t^(ncoef*n + const): a monomial whose exponent is linear in n."""

    ncoef: int
    const: int
    coeff: Fraction | int = 1

    def texp(self, n):
        return self.ncoef * n + self.const

    def is_unit(self):
        """The monomial is identically 1, so (1 - it) is identically zero."""
        return self.coeff == 1 and self.ncoef == 0 and self.const == 0

    def describe(self):
        return f"(1 - {self.coeff}*t^({self.ncoef}n{self.const:+d}))"


@dataclass(frozen=True)
class PochF:
    """((coeff*t^texp; t^step)_{kn*n+kc})^(+/-1)."""

    coeff: Fraction | int
    texp: int
    kn: int
    kc: int
    step: int

    def count(self, n):
        return self.kn * n + self.kc


@dataclass(frozen=True)
class BraceTerm:
    mono: BExp
    num: tuple[BExp, ...] = ()
    den: tuple[BExp, ...] = ()


@dataclass(frozen=True)
class SeriesRecipe:
    """One catalogued series identity: LHS product and RHS term recipe."""

    name: str
    root: int
    lhs_num: tuple[QMono, ...]
    lhs_den: tuple[QMono, ...]
    pref_quad: int        # t-exponent of term n is pref_quad*n^2 + pref_lin*n + pref_const
    pref_lin: int
    pref_base: Fraction | int  # coefficient base: base**n multiplies term n
    poch_num: tuple[PochF, ...]
    poch_den: tuple[PochF, ...]
    w_num: tuple[BExp, ...]
    w_den: tuple[BExp, ...]
    braces: tuple[tuple[BraceTerm, ...], ...]
    leading_one: bool = False
    n_start: int = 0
    sign_alt: bool = False     # multiply term n by (-1)^n
    pref_const: int = 0
    # populated for theorem-derived recipes only
    pattern: object = None
    delta: int = 0
    variant: str = "U"


def _mono_pochf(m: QMono, kn, kc=0, step=12):
    return PochF(m.coeff, m.texp, kn, kc, step)


def bind_theorem(name: str, p: WPParams, root: int = 12) -> SeriesRecipe:
    """Resolve a theorem's symbolic recipe at concrete parameters."""
    q = QMono(1, root)
    a, b, c, d = p.a, p.b, p.c, p.d
    one = QMono(1, 0)

    def B(cn, cc, m=one):
        return BExp(cn * root, cc * root + m.texp, m.coeff)

    M = B  # same payload, monomial interpretation

    def P(m, kn, kc=0):
        return _mono_pochf(m, kn, kc, root)

    if name == "2U":
        pref_m = a * a / (b * d)
        return SeriesRecipe(
            name, root,
            lhs_num=(b, c, q * d, q * a**2 / (b * c * d)),
            lhs_den=(q * a / b, q * a / c, a / d, b * c * d / a),
            pref_quad=root, pref_lin=pref_m.texp, pref_base=pref_m.coeff,
            poch_num=(
                P(b * d / a, 2), P(b, 1), P(q * d, 1),
                P(q**2 * a / (b * c), 1), P(b * c / a, 1),
                P(q * a / (c * d), 1), P(c * d / a, 1),
            ),
            poch_den=(
                P(q, 2), P(q * a / c, 2), P(b * c * d / a, 2),
                P(q * a / b, 1), P(q * a / d, 1),
            ),
            w_num=(B(0, 1, a / (b * c)), B(1, 0, c * d / a), B(2, 0, b * d / a), B(3, 1, b)),
            w_den=(B(0, 0, a / d), B(2, 1), B(2, 1, a / c), B(2, 0, b * c * d / a)),
            braces=((
                BraceTerm(M(1, 0, a / d)),
                BraceTerm(
                    M(0, 0),
                    num=(B(1, 0, a / d), B(2, 1), B(2, 1, a / c), B(2, 0, b * c * d / a), B(3, 0, d)),
                    den=(B(1, 1, a / (b * c)), B(1, 0, d), B(1, 0, c * d / a), B(2, 0, b * d / a), B(3, 1, b)),
                ),
            ),),
            leading_one=False, n_start=0,
            pattern=DUPLICATE, delta=0, variant="U",
        )

    if name == "2V":
        pref_m = a * a / (b * d)
        return SeriesRecipe(
            name, root,
            lhs_num=(b, c, q * d, q * a**2 / (b * c * d)),
            lhs_den=(q * a / b, q * a / c, a / d, b * c * d / a),
            pref_quad=root, pref_lin=pref_m.texp, pref_base=pref_m.coeff,
            poch_num=(
                P(b * d / a, 2), P(b, 1), P(d, 1),
                P(q * a / (b * c), 1), P(b * c / a, 1),
                P(q * a / (c * d), 1), P(c * d / a, 1),
            ),
            poch_den=(
                P(q, 2), P(q * a / c, 2), P(b * c * d / a, 2),
                P(q * a / b, 1), P(a / d, 1),
            ),
            w_num=(B(3, 0, d),),
            w_den=(B(0, 0, d),),
            braces=((
                BraceTerm(M(0, 0)),
                BraceTerm(
                    M(0, 0, QMono(-1, 0)),
                    num=(B(2, 0), B(-1, 0, b / a), B(2, 0, a / c), B(2, -1, b * c * d / a), B(3, -2, b)),
                    den=(B(1, 0, a / (c * d)), B(1, -1, b), B(1, -1, b * c / a), B(2, -1, b * d / a), B(3, 0, d)),
                ),
            ),),
            leading_one=True, n_start=1,
            pattern=DUPLICATE, delta=1, variant="V",
        )

    if name == "3U":
        pref_m = a**3 / (b * c * d)
        return SeriesRecipe(
            name, root,
            lhs_num=(b, q * c, q * d, q * a**2 / (b * c * d)),
            lhs_den=(q * a / b, q * a / c, q * a / d, b * c * d / a),
            pref_quad=3 * root, pref_lin=pref_m.texp, pref_base=pref_m.coeff,
            poch_num=(
                P(b, 1), P(c, 1), P(q * d, 1),
                P(q * a / (b * c), 1), P(q * a / (b * d), 1), P(q * a / (c * d), 1),
                P(b * c / a, 2), P(b * d / a, 2), P(c * d / a, 2),
            ),
            poch_den=(
                P(q * a / b, 2), P(q * a / c, 2), P(q * a / d, 2),
                P(q, 3), P(b * c * d / a, 3),
            ),
            w_num=(B(2, 0, b * d / a), B(1, 1, a / (b * c)), B(2, 0, c * d / a), B(4, 1, c)),
            w_den=(B(3, 1), B(0, 0, c), B(2, 1, a / b), B(3, 0, b * c * d / a)),
            braces=((
                BraceTerm(M(2, 0, a / d)),
                BraceTerm(
                    M(0, 0),
                    num=(B(2, 0, a / d), B(3, 0, b * c * d / a), B(4, 0, d), B(2, 1, a / b), B(3, 1)),
                    den=(B(1, 0, d), B(2, 0, b * d / a), B(2, 0, c * d / a), B(1, 1, a / (b * c)), B(4, 1, c)),
                ),
                BraceTerm(
                    M(4, 1, a**2 / (c * d)),
                    num=(B(1, 0, c), B(2, 0, b * c / a), B(1, 1, a / (b * d)), B(2, 1, c * d / a), B(4, 2, b)),
                    den=(B(2, 1, a / c), B(2, 1, a / d), B(3, 1, b * c * d / a), B(3, 2), B(4, 1, c)),
                ),
            ),),
            leading_one=False, n_start=0,
            pattern=TRIPLICATE, delta=0, variant="U",
        )

    if name == "3V":
        pref_m = a**3 / (b * c * d)
        return SeriesRecipe(
            name, root,
            lhs_num=(b, c, q * d, q * a**2 / (b * c * d)),
            lhs_den=(q * a / b, q * a / c, a / d, b * c * d / a),
            pref_quad=3 * root, pref_lin=pref_m.texp - 2 * root, pref_base=pref_m.coeff,
            poch_num=(
                P(b, 1), P(c, 1), P(d, 1),
                P(q * a / (b * c), 1), P(q * a / (b * d), 1), P(a / (c * d), 1),
                P(b * c / a, 2), P(b * d / a, 2), P(c * d / a, 2),
            ),
            poch_den=(
                P(a / b, 2), P(a / c, 2), P(a / d, 2),
                P(q, 3), P(b * c * d / a, 3),
            ),
            w_num=(B(3, 0), B(0, 0, b / a), B(0, 0, c / a), B(3, -1, b * c * d / a), B(4, -2, b)),
            w_den=(B(0, 0, c * d / a), B(0, 0, d**-1), B(1, -1, b), B(2, -1, b * c / a), B(2, -1, b * d / a)),
            braces=((
                BraceTerm(M(0, 0)),
                BraceTerm(
                    M(0, 0, QMono(-1, 0)),
                    num=(B(1, -1, b), B(2, -1, b * c / a), B(2, -1, b * d / a), B(1, 0, a / (c * d)), B(4, 0, d)),
                    den=(B(3, 0), B(-2, 0, b / a), B(2, 0, a / c), B(3, -1, b * c * d / a), B(4, -2, b)),
                ),
                BraceTerm(
                    M(0, 0, QMono(-1, 0)),
                    num=(B(3, -1), B(-2, 1, c / a), B(2, -1, a / d), B(3, -2, b * c * d / a), B(4, -3, c)),
                    den=(B(1, -1, c), B(2, -2, b * c / a), B(1, 0, a / (b * d)), B(2, -1, c * d / a), B(4, -2, b)),
                ),
            ),),
            leading_one=True, n_start=1,
            pattern=TRIPLICATE, delta=1, variant="V",
        )

    if name == "p23U":
        pref_m = a**3 / (b * d * d)
        return SeriesRecipe(
            name, root,
            lhs_num=(b, c, q * d, q * a**2 / (b * c * d)),
            lhs_den=(q * a / b, q * a / c, a / d, b * c * d / a),
            pref_quad=2 * root, pref_lin=pref_m.texp, pref_base=pref_m.coeff,
            poch_num=(
                P(q * a / (c * d), 1), P(b, 1), P(b * c / a, 1),
                P(q * a / (b * c), 2), P(q * d, 2), P(c * d / a, 2),
                P(b * d / a, 3),
            ),
            poch_den=(
                P(q * a / d, 1), P(q * a / b, 2),
                P(q, 3), P(q * a / c, 3), P(b * c * d / a, 3),
            ),
            w_num=(B(2, 1, a / (b * c)), B(2, 0, c * d / a), B(3, 0, b * d / a), B(4, 1, b)),
            w_den=(B(3, 1), B(3, 1, a / c), B(0, 0, a / d), B(3, 0, b * c * d / a)),
            braces=((
                BraceTerm(M(1, 0, a / d)),
                BraceTerm(
                    M(0, 0),
                    num=(B(1, 0, a / d), B(3, 1), B(3, 1, a / c), B(3, 0, b * c * d / a), B(5, 0, d)),
                    den=(B(2, 1, a / (b * c)), B(2, 0, c * d / a), B(2, 0, d), B(3, 0, b * d / a), B(4, 1, b)),
                ),
                BraceTerm(
                    M(3, 1, a**2 / (b * d)),
                    num=(B(1, 0, b), B(1, 0, b * c / a), B(1, 1, a / (c * d)), B(3, 1, b * d / a), B(5, 3, d)),
                    den=(B(2, 1, a / b), B(3, 2), B(3, 2, a / c), B(3, 1, b * c * d / a), B(4, 1, b)),
                ),
            ),),
            leading_one=False, n_start=0,
            pattern=TRIPLICATE_SPLIT, delta=0, variant="U",
        )

    raise ValueError(f"unknown theorem {name!r}")


THEOREM_NAMES = ("2U", "2V", "3U", "3V", "p23U")


# ------------------------------------------------------------- term assembly


def _poch_val(f: PochF, n: int) -> int:
    """Exact valuation of ((x;s)_{count}) for x = coeff*t^texp."""
    cnt = f.count(n)
    if cnt <= 0 or f.texp >= 0:
        return 0
    # factors (1 - coeff*t^(texp + j*step)) have negative valuation while the exponent is < 0
    jneg = min(cnt, (-f.texp + f.step - 1) // f.step)
    return jneg * f.texp + f.step * jneg * (jneg - 1) // 2


def _atom_val(atom: BExp, n: int) -> int:
    return min(0, atom.texp(n))


def term_valuation_bound(bt: SeriesRecipe, n: int) -> int:
    """Exact lower bound for the valuation of term n (cancellation only raises it)."""
    lb = bt.pref_quad * n * n + bt.pref_lin * n + bt.pref_const
    for f in bt.poch_num:
        lb += _poch_val(f, n)
    for f in bt.poch_den:
        lb -= _poch_val(f, n)
    for a in bt.w_num:
        lb += _atom_val(a, n)
    for a in bt.w_den:
        lb -= _atom_val(a, n)
    for group in bt.braces:
        lb += min(
            (t.mono.texp(n)
             + sum(_atom_val(x, n) for x in t.num)
             - sum(_atom_val(x, n) for x in t.den))
            for t in group
        )
    return lb


def stop_index(bt: SeriesRecipe, order: int) -> int:
    """Smallest N such that term_valuation_bound(n) >= order for all n >= N."""
    alpha = bt.pref_quad
    if alpha <= 0:
        raise NonmonotoneValuation("term exponent is not quadratically increasing")
    k1 = abs(bt.pref_lin)
    k0 = abs(bt.pref_const)
    for f in list(bt.poch_num) + list(bt.poch_den):
        if f.texp < 0:
            jneg = (-f.texp + f.step - 1) // f.step
            k0 += -(jneg * f.texp + f.step * jneg * (jneg - 1) // 2)
    for a in list(bt.w_num) + list(bt.w_den):
        k1 += abs(a.ncoef)
        k0 += abs(a.const)
    for group in bt.braces:
        k1 += max(
            (abs(t.mono.ncoef) + sum(abs(x.ncoef) for x in list(t.num) + list(t.den)))
            for t in group
        )
        k0 += max(
            (abs(t.mono.const) + sum(abs(x.const) for x in list(t.num) + list(t.den)))
            for t in group
        )
    # alpha*n^2 - k1*n - k0 >= order beyond the positive root
    disc = k1 * k1 + 4 * alpha * (k0 + max(order, 0))
    n = int((k1 + disc**0.5) / (2 * alpha)) + 2
    while term_valuation_bound(bt, n) < order:
        n += 1
    return n


@dataclass
class TermValue:
    series: LaurentSeries
    net_drops: int | None
    phi: Fraction | int = 1


SHADOW_BASE = 64


def shadow_params(p: WPParams, root: int):
    """Companion parameters for reading off vanishing-factor linear forms.

    Exponents are scaled by SHADOW_BASE**4 and offset by independent units,
    so a factor that vanishes identically at the true parameters has a
    small nonzero shadow exponent equal to its perturbation form.
    """
    big = SHADOW_BASE**4
    offs = (1, SHADOW_BASE, SHADOW_BASE**2, SHADOW_BASE**3)
    monos = [QMono(m.coeff, m.texp * big + u) for m, u in zip((p.a, p.b, p.c, p.d), offs)]
    return WPParams(*monos), root * big


def _apply_poch(ring, acc, f: PochF, n: int, invert: bool, fsh: PochF | None):
    """Multiply or divide by the finite Pochhammer, dropping (1-1) factors.

    Dropped factors multiply phi by their shadow exponent (the perturbation
    form), keeping the regularization orientation-exact.
    """
    drops = 0
    phi = 1
    cnt = f.count(n)
    c, e = f.coeff, f.texp
    esh = fsh.texp if fsh is not None else None
    for _ in range(cnt):
        if c == 1 and e == 0:
            if fsh is None:
                raise SingularMismatch("vanishing Pochhammer factor in an explicit record")
            drops += 1
            phi = phi / Fraction(esh) if invert else phi * esh
        elif invert:
            acc = ring.over_binom(acc, c, e)
        else:
            acc = ring.times_binom(acc, c, e)
        e += f.step
        if esh is not None:
            esh += fsh.step
    return acc, drops, phi


def _eval_brace(ring, group, n: int):
    total = ring.zero()
    for t in group:
        part = ring.mono(t.mono.coeff, t.mono.texp(n))
        dead = False
        for x in t.num:
            if x.coeff == 1 and x.texp(n) == 0:
                dead = True
                break
            part = ring.times_binom(part, x.coeff, x.texp(n))
        if dead:
            continue
        for x in t.den:
            if x.coeff == 1 and x.texp(n) == 0:
                raise VanishingDenominatorFactor(n, x.describe())
            part = ring.over_binom(part, x.coeff, x.texp(n))
        total = total + part
    return total


def eval_weight(ring, bt: SeriesRecipe, n: int, shadow: SeriesRecipe | None = None):
    """W_n (all brace groups and outer atoms) plus net dropped zero factors."""
    net = 0
    phi = 1
    acc = ring.one()
    for group in bt.braces:
        acc = acc * _eval_brace(ring, group, n)
    for i, x in enumerate(bt.w_num):
        if x.is_unit():
            if shadow is None:
                raise SingularMismatch("vanishing weight factor in an explicit record")
            net -= 1
            phi = phi * shadow.w_num[i].texp(n)
        elif x.coeff == 1 and x.texp(n) == 0:
            return ring.zero(), 0, 1, True  # n-dependent zero in the numerator
        else:
            acc = ring.times_binom(acc, x.coeff, x.texp(n))
    for i, x in enumerate(bt.w_den):
        if x.is_unit():
            if shadow is None:
                raise SingularMismatch("vanishing weight factor in an explicit record")
            net += 1
            phi = phi / Fraction(shadow.w_den[i].texp(n))
        elif x.coeff == 1 and x.texp(n) == 0:
            raise VanishingDenominatorFactor(n, x.describe())
        else:
            acc = ring.over_binom(acc, x.coeff, x.texp(n))
    return acc, net, phi, False


def eval_term(ring, bt: SeriesRecipe, n: int, shadow: SeriesRecipe | None = None) -> TermValue:
    """Regularized term n: value, net dropped zero factors, and their weight."""
    if ring.mode == "rational":
        acc, net, phi, dead = _eval_term_core(ring, bt, n, shadow)
        return TermValue(ring.zero(), None) if dead else TermValue(acc, net, phi)
    margin = _margin(bt, n)
    for _ in range(3):
        work = SeriesRing(order=ring.order + margin, root=ring.root)
        acc, net, phi, dead = _eval_term_core(work, bt, n, shadow)
        if dead:
            return TermValue(ring.zero(), None)
        if acc.order is None or acc.order >= ring.order:
            if not acc.is_zero and acc.val_floor() < term_valuation_bound(bt, n):
                raise NonmonotoneValuation(
                    f"term n={n} valuation {acc.val_floor()} below structural "
                    f"bound {term_valuation_bound(bt, n)}"
                )
            return TermValue(acc.truncate(ring.order), net, phi)
        margin = 2 * margin + ring.order
    raise NonmonotoneValuation(
        f"term n={n} resolved only to t^{acc.order} < requested t^{ring.order}"
    )


def _eval_term_core(work, bt: SeriesRecipe, n: int, shadow: SeriesRecipe | None):
    pref_texp = bt.pref_quad * n * n + bt.pref_lin * n + bt.pref_const
    pref_coeff = bt.pref_base**n if bt.pref_base != 1 else 1
    if bt.sign_alt and n % 2:
        pref_coeff = -pref_coeff
    acc = work.mono(pref_coeff, pref_texp)
    net = 0
    phi = 1
    for i, f in enumerate(bt.poch_num):
        acc, dr, ph = _apply_poch(work, acc, f, n, False, shadow.poch_num[i] if shadow else None)
        net -= dr
        phi = phi * ph
    for i, f in enumerate(bt.poch_den):
        acc, dr, ph = _apply_poch(work, acc, f, n, True, shadow.poch_den[i] if shadow else None)
        net += dr
        phi = phi * ph
    w, wnet, wphi, dead = eval_weight(work, bt, n, shadow)
    if dead:
        return None, None, 1, True
    return acc * w, net + wnet, phi * wphi, False


def _margin(bt: SeriesRecipe, n: int) -> int:
    """Working-order headroom covering every negative-valuation factor."""
    gross = max(0, -(bt.pref_quad * n * n + bt.pref_lin * n + bt.pref_const))
    for f in bt.poch_num:
        gross += -_poch_val(f, n)
    for a in bt.w_num:
        gross += -_atom_val(a, n)
    for group in bt.braces:
        gross += max(
            (max(0, -t.mono.texp(n)) + sum(-_atom_val(x, n) for x in t.num)) for t in group
        )
    return gross


@dataclass
class SeriesResult:
    series: LaurentSeries
    net_drops: int
    terms_used: int


def theorem_series(ring, name_or_bt, p: WPParams | None = None,
                   shadow: SeriesRecipe | None = None,
                   expected_net: int | None = None) -> SeriesResult:
    """Right side of a catalogued identity, summed exactly to the ring order.

    Identically-vanishing binomial factors are dropped; each drop weighs the
    term by its shadow form, so terms enter as naive_value * phi.  Terms less
    singular than expected_net (notably the V-form leading 1 when the
    identity is regularized) are annihilated; a more singular term is a
    genuine mismatch.
    """
    bt = name_or_bt if isinstance(name_or_bt, SeriesRecipe) else bind_theorem(name_or_bt, p, ring.root)
    order = ring.order
    terms = []
    terms_used = 0
    nstop = stop_index(bt, order)
    for n in range(bt.n_start, nstop + 1):
        if term_valuation_bound(bt, n) >= order:
            continue
        tv = eval_term(ring, bt, n, shadow)
        terms_used += 1
        if tv.net_drops is None:
            continue  # term vanished through an n-dependent numerator zero
        terms.append((n, tv))
    if expected_net is None:
        expected_net = max((tv.net_drops for _, tv in terms), default=0)
    total = ring.zero()
    for n, tv in terms:
        if tv.net_drops > expected_net:
            raise SingularMismatch(
                f"{bt.name}: term n={n} is more singular ({tv.net_drops} drops) "
                f"than the identity ({expected_net})"
            )
        if tv.net_drops == expected_net:
            total = total + tv.series.scale(tv.phi)
    if bt.leading_one and expected_net == 0:
        total = total + ring.one()
    return SeriesResult(total.truncate(order), expected_net, terms_used)


def theorem_weight(ring, name: str, p: WPParams, n: int):
    """The weight function W_n of a specialized theorem, evaluated exactly.

    Identically-zero factors are dropped (regularized); consult eval_weight
    for the drop accounting.  n-dependent vanishing denominators raise
    VanishingDenominatorFactor.
    """
    bt = bind_theorem(name, p, ring.root)
    psh, rsh = shadow_params(p, ring.root)
    w, _net, _phi, dead = eval_weight(ring, bt, n, bind_theorem(name, psh, rsh))
    return ring.zero() if dead else w


def theorem_lhs(ring, name_or_bt, p: WPParams | None = None,
                shadow: SeriesRecipe | None = None):
    """Left side: the infinite-product quotient, with drop accounting.

    Returns (series, net_drops, phi): net_drops counts identically-zero
    (1 - q^0) factors removed from the products, phi is the product of
    their shadow forms (numerator drops over denominator drops).  The
    regularized identity is then series * phi == theorem_series(...).
    """
    bt = name_or_bt if isinstance(name_or_bt, SeriesRecipe) else bind_theorem(name_or_bt, p, ring.root)
    acc = ring.one()
    net = 0
    phi = 1

    def shadow_form(i, from_num):
        if shadow is None:
            raise SingularMismatch("vanishing product factor in an explicit record")
        m = (bt.lhs_num if from_num else bt.lhs_den)[i]
        msh = (shadow.lhs_num if from_num else shadow.lhs_den)[i]
        j0 = -m.texp // bt.root
        return msh.texp + j0 * shadow.root

    for i, m in enumerate(bt.lhs_num):
        val, dr = poch_infinite(ring, m, on_zero="drop")
        if dr:
            net -= dr
            phi = phi * shadow_form(i, True)
        acc = acc * val
    for i, m in enumerate(bt.lhs_den):
        val, dr = poch_infinite(ring, m, on_zero="drop")
        if dr:
            net += dr
            phi = phi / Fraction(shadow_form(i, False))
        acc = acc * ring.inv(val)
    return acc.truncate(ring.order), net, phi
