"""Catalog of identities: loading, validation, verification, reporting.

The catalog is a human-editable block text file (see data/catalog.txt and
docs/catalog-format.md).  Three record kinds exist:

* theorem  -- parameters a,b,c,d for one of the five specialized theorems;
  both sides are rebuilt from the theorem recipe at load time.
* explicit -- the displayed sum is stored directly (used where the theorem
  form is singular at the record's parameters and the displayed identity is
  the regularized limit, which factor-dropping cannot reproduce).
* bisected -- a reduced single-sum alternating series produced by the
  reverse bisection method, stored with its Q-polynomial.

Verification computes the left product and the right series independently
and compares coefficients; a mismatch reports the lowest differing exponent
and both coefficients.  Mismatches are results, never silently corrected.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from qseries.inversion import (
    SingularMismatch,
    VanishingDenominatorFactor,
    WPParams,
    params_from_exponents,
)
from qseries.qcore import QMono, SeriesRing
from qseries.theorems import (
    BExp,
    BraceTerm,
    PochF,
    SeriesRecipe,
    THEOREM_NAMES,
    bind_theorem,
    shadow_params,
    theorem_lhs,
    theorem_series,
)


class CatalogError(ValueError):
    """Schema violation or failed record validation, with location info."""


# ----------------------------------------------------------- classical data


@dataclass(frozen=True)
class LinearFactor:
    """(c0 + c1*n)**power, a factor of a classical brace term."""

    c0: Fraction
    c1: Fraction
    power: int = 1


@dataclass(frozen=True)
class BraceRational:
    """coeff * n^npow * prod(num) / prod(den): one term of a classical brace."""

    coeff: Fraction
    npow: int
    num: tuple[LinearFactor, ...]
    den: tuple[LinearFactor, ...]


@dataclass(frozen=True)
class FactorialFactor:
    """((p)_{kn*n+kc})**power with the rising factorial (p)_m."""

    p: Fraction
    kn: int
    kc: int
    power: int


@dataclass(frozen=True)
class ClassicalSeries:
    """A classical (q -> 1) limit: closed-form value and term recipe."""

    value_factors: tuple[tuple[str, Fraction, int], ...]  # (kind, arg, power)
    base: Fraction           # explicit geometric factor base**n (1 when embedded)
    rate: Fraction           # declared convergence-rate label
    fnum: tuple[FactorialFactor, ...]
    fden: tuple[FactorialFactor, ...]
    poly: tuple[Fraction, ...]
    polyden: tuple[Fraction, ...]
    braces: tuple[BraceRational, ...]
    factor_num: tuple[LinearFactor, ...]
    factor_den: tuple[LinearFactor, ...]
    start: int
    prefix: Fraction


# ----------------------------------------------------------------- records


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    kind: str                      # theorem | explicit | bisected
    section: str
    theorem: str | None            # for kind == theorem
    params: WPParams | None
    root: int
    recipe: SeriesRecipe | None    # for explicit / bisected kinds
    case: str | None               # bisection case id for bisected records
    sign: str | None
    classical: ClassicalSeries | None
    note: str | None = None

    def lhs_exponents(self):
        """(numerator, denominator) q-exponent lists of the left product."""
        bt = self.recipe if self.recipe is not None else bind_theorem(self.theorem, self.params, self.root)
        num = tuple(Fraction(m.texp, self.root) for m in bt.lhs_num)
        den = tuple(Fraction(m.texp, self.root) for m in bt.lhs_den)
        return num, den


@dataclass(frozen=True)
class BisectionCase:
    """Data of one reverse-bisection derivation (see qseries.bisection)."""

    id: str
    theorem: str
    params: WPParams
    root: int
    clear_num: tuple[tuple[int, int, int], ...]   # (t-exp of q-coeff, y-power, multiplicity)
    clear_den: tuple[tuple[int, int, int], ...]
    fe_a: tuple[tuple[int, int, int], ...]
    fe_shift: tuple[int, int]                      # (t-exp, y-power)
    fe_b: tuple[tuple[int, int, int], ...]
    deg_q: int
    sign: str
    pp_lhs_num: tuple[int, ...]                    # t-exponents
    pp_lhs_den: tuple[int, ...]
    pp_pref: tuple[int, int, int]
    pp_poch_num: tuple[PochF, ...]
    pp_poch_den: tuple[PochF, ...]
    pp_w_num: tuple[BExp, ...]
    pp_w_den: tuple[BExp, ...]
    t_pref: tuple[int, int, int]
    t_poch_num: tuple[PochF, ...]
    t_poch_den: tuple[PochF, ...]
    t_w_num: tuple[BExp, ...]
    t_w_den: tuple[BExp, ...]
    emit_id: str


@dataclass
class Catalog:
    root: int
    records: list[IdentityRecord]
    cases: dict[str, BisectionCase]

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def get(self, rid):
        for r in self.records:
            if r.id == rid:
                return r
        raise KeyError(rid)


# ------------------------------------------------------------------- parser


_COUNT_RE = re.compile(r"^(?:(\d*)n)?(?:\+?(-?\d+))?$")


def _parse_count(text, where):
    m = _COUNT_RE.match(text)
    if not m or text == "":
        raise CatalogError(f"{where}: bad count {text!r}")
    kn = 0
    if text.find("n") >= 0:
        kn = int(m.group(1)) if m.group(1) else 1
    kc = int(m.group(2)) if m.group(2) else 0
    return kn, kc


def _frac(text, where):
    try:
        return Fraction(text)
    except ValueError as exc:
        raise CatalogError(f"{where}: bad rational {text!r}") from exc


def _texp(x: Fraction, root: int, where):
    v = x * root
    if v.denominator != 1:
        raise CatalogError(f"{where}: exponent {x} is not a multiple of 1/{root}")
    return int(v)


def _parse_poch(tok, root, where):
    parts = tok.split(":")
    if len(parts) != 3:
        raise CatalogError(f"{where}: Pochhammer factor needs exp:step:count, got {tok!r}")
    arg = _texp(_frac(parts[0], where), root, where)
    step = _texp(_frac(parts[1], where), root, where)
    kn, kc = _parse_count(parts[2], where)
    return PochF(1, arg, kn, kc, step)


def _parse_atom(tok, root, where):
    parts = tok.split(":")
    if len(parts) != 2:
        raise CatalogError(f"{where}: atom needs ncoef:const (q-units), got {tok!r}")
    u = _frac(parts[0], where)
    v = _frac(parts[1], where)
    return BExp(_texp(u, root, where), _texp(v, root, where), 1)


def _parse_value_expr(text, where):
    out = []
    for tok in text.split():
        m = re.match(r"^([a-z]+)(?:\(([^)]*)\))?(?:\^(-?\d+))?$", tok)
        if m:
            kind, arg, power = m.group(1), m.group(2), int(m.group(3) or 1)
            if kind == "pi":
                out.append(("pi", Fraction(0), power))
            elif kind == "gamma":
                out.append(("gamma", _frac(arg, where), power))
            elif kind == "sqrt":
                out.append(("root", Fraction(int(arg), 2), power))  # arg^(1/2): store base/index
            elif kind == "root":
                base, idx = arg.split(",")
                out.append(("root", Fraction(int(base), int(idx)), power))
            else:
                raise CatalogError(f"{where}: unknown value factor {tok!r}")
        else:
            out.append(("rat", _frac(tok, where), 1))
    return tuple(out)


_LINFACTOR_RE = re.compile(r"^\((-?\d+)([+-]\d+)n\)(?:\^(\d+))?$|^\((-?\d+)n\)(?:\^(\d+))?$|^n(?:\^(\d+))?$")


def _parse_brace_line(text, where):
    """coeff [n^k] (c0+c1n)^k ... / (c0+c1n)^k ...

    The fraction bar must be a standalone token (coefficients like 1/4 keep
    their slash).
    """
    text = text.strip()
    if text.startswith("/ "):
        left, right = "", text[2:]
    elif text.endswith(" /"):
        left, right = text[:-2], ""
    elif " / " in text:
        left, right = text.split(" / ", 1)
    else:
        left, right = text, ""

    def parse_side(side):
        coeff = None
        npow = 0
        factors = []
        for tok in side.split():
            if re.match(r"^-?\d+(/\d+)?$", tok):
                if coeff is not None:
                    raise CatalogError(f"{where}: two coefficients in brace term")
                coeff = _frac(tok, where)
                continue
            m = re.match(r"^n(?:\^(\d+))?$", tok)
            if m:
                npow += int(m.group(1) or 1)
                continue
            m = re.match(r"^\((-?\d+(?:/\d+)?)([+-]\d+(?:/\d+)?)n\)(?:\^(\d+))?$", tok)
            if m:
                factors.append(LinearFactor(_frac(m.group(1), where), _frac(m.group(2), where),
                                            int(m.group(3) or 1)))
                continue
            raise CatalogError(f"{where}: bad brace factor {tok!r}")
        return coeff, npow, factors

    coeff, npow, num = parse_side(left)
    dcoeff, dnpow, den = parse_side(right)
    if dcoeff is not None or dnpow:
        raise CatalogError(f"{where}: denominators take only linear factors")
    return BraceRational(coeff if coeff is not None else Fraction(1), npow, tuple(num), tuple(den))


def _parse_ffactor(tok, where):
    parts = tok.split(":")
    if len(parts) != 3:
        raise CatalogError(f"{where}: factorial factor needs p:count:power, got {tok!r}")
    p = _frac(parts[0], where)
    kn, kc = _parse_count(parts[1], where)
    return FactorialFactor(p, kn, kc, int(parts[2]))


def _parse_yatoms(toks, root, where):
    out = []
    for tok in toks:
        parts = tok.split(":")
        if len(parts) not in (2, 3):
            raise CatalogError(f"{where}: y-atom needs qexp:ypow[:mult], got {tok!r}")
        texp = _texp(_frac(parts[0], where), root, where)
        ypow = int(parts[1])
        mult = int(parts[2]) if len(parts) == 3 else 1
        out.append((texp, ypow, mult))
    return tuple(out)


def _blocks(text):
    """Yield (kind, name, dict-of-key->list-of-values, line_no)."""
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()
        if cur is None:
            if head[0] in ("record", "case") and len(head) == 2:
                cur = (head[0], head[1], {}, lineno)
            elif head[0] == "root" and len(head) == 2:
                yield ("root", head[1], {}, lineno)
            else:
                raise CatalogError(f"line {lineno}: expected 'record <id>' or 'case <id>', got {line!r}")
        elif line == "end":
            yield cur
            cur = None
        else:
            key, _, rest = line.partition(" ")
            cur[2].setdefault(key, []).append(rest.strip())
    if cur is not None:
        raise CatalogError(f"unterminated block starting at line {cur[3]}")


def _single(body, key, where, default=None):
    vals = body.get(key)
    if not vals:
        if default is not None:
            return default
        raise CatalogError(f"{where}: missing key {key!r}")
    if len(vals) > 1:
        raise CatalogError(f"{where}: duplicate key {key!r}")
    return vals[0]


def _parse_classical(body, where):
    if "classical-value" not in body:
        return None
    value = _parse_value_expr(_single(body, "classical-value", where), where)
    base = _frac(_single(body, "classical-base", where, "1"), where)
    rate = _frac(_single(body, "classical-rate", where, str(base) if base != 1 else "1"), where)
    fnum = []
    fden = []
    for r in _single(body, "classical-upper", where, "-").split():
        if r != "-":
            fnum.append(FactorialFactor(_frac(r, where), 1, 0, 1))
    for r in _single(body, "classical-lower", where, "-").split():
        if r != "-":
            fden.append(FactorialFactor(_frac(r, where), 1, 0, 1))
    for tok in body.get("classical-fnum", [""])[0].split():
        fnum.append(_parse_ffactor(tok, where))
    for tok in body.get("classical-fden", [""])[0].split():
        fden.append(_parse_ffactor(tok, where))
    poly = tuple(_frac(x, where) for x in _single(body, "classical-poly", where, "-").split() if x != "-")
    polyden = tuple(_frac(x, where) for x in _single(body, "classical-polyden", where, "-").split() if x != "-")
    braces = tuple(_parse_brace_line(t, where) for t in body.get("classical-brace", []))
    fact = body.get("classical-factor", [None])[0]
    fnum2, fden2 = (), ()
    if fact:
        bl = _parse_brace_line(fact, where)
        if bl.coeff != 1 or bl.npow:
            raise CatalogError(f"{where}: classical-factor takes only linear factors")
        fnum2, fden2 = bl.num, bl.den
    return ClassicalSeries(
        value_factors=value, base=base, rate=rate,
        fnum=tuple(fnum), fden=tuple(fden),
        poly=poly, polyden=polyden, braces=braces,
        factor_num=fnum2, factor_den=fden2,
        start=int(_single(body, "classical-start", where, "0")),
        prefix=_frac(_single(body, "classical-prefix", where, "0"), where),
    )


def _parse_explicit_recipe(rid, body, root, where):
    lhs_num = tuple(QMono(1, _texp(_frac(x, where), root, where))
                    for x in _single(body, "lhs-num", where).split())
    lhs_den = tuple(QMono(1, _texp(_frac(x, where), root, where))
                    for x in _single(body, "lhs-den", where).split())
    pref = [int(x) for x in _single(body, "pref", where).split()]
    if len(pref) != 3:
        raise CatalogError(f"{where}: pref needs three t-exponent coefficients")
    poch_num = tuple(_parse_poch(t, root, where) for t in _single(body, "poch-num", where, "-").split() if t != "-")
    poch_den = tuple(_parse_poch(t, root, where) for t in _single(body, "poch-den", where, "-").split() if t != "-")
    w_num = tuple(_parse_atom(t, root, where) for t in body.get("w-num", [""])[0].split())
    w_den = tuple(_parse_atom(t, root, where) for t in body.get("w-den", [""])[0].split())
    groups = []
    brace_terms = []
    for line in body.get("brace", []):
        segs = [s.strip() for s in line.split("|")]
        if len(segs) != 3:
            raise CatalogError(f"{where}: brace line needs 'coeff mono | num | den'")
        head = segs[0].split()
        coeff = _frac(head[0], where)
        mono = _parse_atom(head[1], root, where) if len(head) > 1 else BExp(0, 0, 1)
        num = tuple(_parse_atom(t, root, where) for t in segs[1].split())
        den = tuple(_parse_atom(t, root, where) for t in segs[2].split())
        brace_terms.append(BraceTerm(BExp(mono.ncoef, mono.const, coeff), num, den))
    if brace_terms:
        groups.append(tuple(brace_terms))
    qpoly_terms = []
    for line in body.get("qpoly", []):
        toks = line.split()
        if len(toks) != 3:
            raise CatalogError(f"{where}: qpoly line needs 'ypow coeff qexp'")
        ypow = int(toks[0])
        coeff = _frac(toks[1], where)
        texp = _texp(_frac(toks[2], where), root, where)
        if root % 2:
            raise CatalogError(f"{where}: half-step Q-polynomial needs an even root")
        qpoly_terms.append(BraceTerm(BExp(ypow * root // 2, texp, coeff), (), ()))
    if qpoly_terms:
        groups.append(tuple(qpoly_terms))
    if not groups:
        groups.append((BraceTerm(BExp(0, 0, 1), (), ()),))
    return SeriesRecipe(
        name=rid, root=root,
        lhs_num=lhs_num, lhs_den=lhs_den,
        pref_quad=pref[0], pref_lin=pref[1], pref_const=pref[2], pref_base=1,
        poch_num=poch_num, poch_den=poch_den,
        w_num=w_num, w_den=w_den,
        braces=tuple(groups),
        leading_one=_single(body, "leading-one", where, "false") == "true",
        n_start=int(_single(body, "start", where, "0")),
        sign_alt=_single(body, "sign-alt", where, "false") == "true",
    )


def _parse_case(cid, body, root):
    where = f"case {cid}"
    exps = [_frac(_single(body, k, where), where) for k in ("a", "b", "c", "d")]
    return BisectionCase(
        id=cid,
        theorem=_single(body, "theorem", where),
        params=params_from_exponents(*exps, root=root),
        root=root,
        clear_num=_parse_yatoms(_single(body, "clear-num", where).split(), root, where),
        clear_den=_parse_yatoms(_single(body, "clear-den", where).split(), root, where),
        fe_a=_parse_yatoms(_single(body, "fe-a", where).split(), root, where),
        fe_shift=tuple(
            [_texp(_frac(_single(body, "fe-shift", where).split()[0], where), root, where),
             int(_single(body, "fe-shift", where).split()[1])]
        ),
        fe_b=_parse_yatoms(_single(body, "fe-b", where).split(), root, where),
        deg_q=int(_single(body, "deg-q", where)),
        sign=_single(body, "sign", where),
        pp_lhs_num=tuple(_texp(_frac(x, where), root, where)
                         for x in _single(body, "pp-lhs-num", where).split()),
        pp_lhs_den=tuple(_texp(_frac(x, where), root, where)
                         for x in _single(body, "pp-lhs-den", where).split()),
        pp_pref=tuple(int(x) for x in _single(body, "pp-pref", where).split()),
        pp_poch_num=tuple(_parse_poch(t, root, where) for t in _single(body, "pp-poch-num", where).split()),
        pp_poch_den=tuple(_parse_poch(t, root, where) for t in _single(body, "pp-poch-den", where).split()),
        pp_w_num=tuple(_parse_atom(t, root, where) for t in body.get("pp-w-num", [""])[0].split()),
        pp_w_den=tuple(_parse_atom(t, root, where) for t in body.get("pp-w-den", [""])[0].split()),
        t_pref=tuple(int(x) for x in _single(body, "t-pref", where).split()),
        t_poch_num=tuple(_parse_poch(t, root, where) for t in _single(body, "t-poch-num", where).split()),
        t_poch_den=tuple(_parse_poch(t, root, where) for t in _single(body, "t-poch-den", where).split()),
        t_w_num=tuple(_parse_atom(t, root, where) for t in body.get("t-w-num", [""])[0].split()),
        t_w_den=tuple(_parse_atom(t, root, where) for t in body.get("t-w-den", [""])[0].split()),
        emit_id=_single(body, "emit-id", where),
    )


def load_catalog(path=None) -> Catalog:
    """Load and validate the catalog; raises CatalogError with diagnostics."""
    if path is None:
        text = resources.files("qseries").joinpath("data/catalog.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    root = 12
    records = []
    cases = {}
    seen = set()
    for kind, name, body, lineno in _blocks(text):
        where = f"{kind} {name} (line {lineno})"
        if kind == "root":
            root = int(name)
            continue
        if kind == "case":
            cases[name] = _parse_case(name, body, root)
            continue
        if name in seen:
            raise CatalogError(f"{where}: duplicate record id")
        seen.add(name)
        rkind = _single(body, "kind", where, "theorem")
        section = _single(body, "section", where, "?")
        classical = _parse_classical(body, where)
        note = body.get("note", [None])[0]
        if rkind == "theorem":
            thm = _single(body, "theorem", where)
            if thm not in THEOREM_NAMES:
                raise CatalogError(f"{where}: unknown theorem {thm!r}")
            exps = [_frac(_single(body, k, where), where) for k in ("a", "b", "c", "d")]
            try:
                params = params_from_exponents(*exps, root=root)
                bind_theorem(thm, params, root)  # re-validates the side condition data
            except (ValueError, ArithmeticError) as exc:
                raise CatalogError(f"{where}: {exc}") from exc
            records.append(IdentityRecord(name, rkind, section, thm, params, root,
                                          None, None, None, classical, note))
        elif rkind in ("explicit", "bisected"):
            recipe = _parse_explicit_recipe(name, body, root, where)
            records.append(IdentityRecord(
                name, rkind, section, None, None, root, recipe,
                body.get("case", [None])[0], body.get("sign", [None])[0],
                classical, note,
            ))
        else:
            raise CatalogError(f"{where}: unknown kind {rkind!r}")
    for r in records:
        if r.kind == "bisected" and r.case not in cases:
            raise CatalogError(f"record {r.id}: unknown bisection case {r.case!r}")
    return Catalog(root, records, cases)


def serialize_catalog_ids(cat: Catalog):
    """Stable snapshot used by the round-trip test."""
    return [(r.id, r.kind, r.section) for r in cat.records]


# ---------------------------------------------------------------- serializer


def _fmt_q(texp: int, root: int) -> str:
    return str(Fraction(texp, root))


def _fmt_count(kn: int, kc: int) -> str:
    if kn == 0:
        return str(kc)
    head = "n" if kn == 1 else f"{kn}n"
    return head if kc == 0 else f"{head}+{kc}" if kc > 0 else f"{head}{kc}"


def _fmt_poch(f: PochF, root: int) -> str:
    return f"{_fmt_q(f.texp, root)}:{_fmt_q(f.step, root)}:{_fmt_count(f.kn, f.kc)}"


def _fmt_atom(x: BExp, root: int) -> str:
    return f"{_fmt_q(x.ncoef, root)}:{_fmt_q(x.const, root)}"


def _fmt_linfactors(factors) -> str:
    out = []
    for f in factors:
        c1 = f.c1 if f.c1 < 0 else f"+{f.c1}"
        body = f"({f.c0}{c1}n)"
        out.append(body if f.power == 1 else f"{body}^{f.power}")
    return " ".join(out)


def _dump_classical(s: ClassicalSeries, out):
    toks = []
    for kind, arg, power in s.value_factors:
        if kind == "rat":
            toks.append(str(arg))
        elif kind == "pi":
            toks.append("pi" if power == 1 else f"pi^{power}")
        elif kind == "root":
            body = f"sqrt({arg.numerator})" if arg.denominator == 2 else \
                f"root({arg.numerator},{arg.denominator})"
            toks.append(body if power == 1 else f"{body}^{power}")
        else:
            body = f"gamma({arg})"
            toks.append(body if power == 1 else f"{body}^{power}")
    out.append(f"  classical-value {' '.join(toks)}")
    if s.base != 1:
        out.append(f"  classical-base {s.base}")
    if s.rate != s.base:
        out.append(f"  classical-rate {s.rate}")
    if s.start:
        out.append(f"  classical-start {s.start}")
    if s.prefix:
        out.append(f"  classical-prefix {s.prefix}")
    plain_num = [f for f in s.fnum if (f.kn, f.kc, f.power) == (1, 0, 1)]
    plain_den = [f for f in s.fden if (f.kn, f.kc, f.power) == (1, 0, 1)]
    if plain_num:
        out.append("  classical-upper " + " ".join(str(f.p) for f in plain_num))
    if plain_den:
        out.append("  classical-lower " + " ".join(str(f.p) for f in plain_den))
    rest_num = [f for f in s.fnum if (f.kn, f.kc, f.power) != (1, 0, 1)]
    rest_den = [f for f in s.fden if (f.kn, f.kc, f.power) != (1, 0, 1)]
    if rest_num:
        out.append("  classical-fnum " + " ".join(
            f"{f.p}:{_fmt_count(f.kn, f.kc)}:{f.power}" for f in rest_num))
    if rest_den:
        out.append("  classical-fden " + " ".join(
            f"{f.p}:{_fmt_count(f.kn, f.kc)}:{f.power}" for f in rest_den))
    if s.factor_num or s.factor_den:
        left = _fmt_linfactors(s.factor_num)
        right = _fmt_linfactors(s.factor_den)
        out.append(f"  classical-factor {left} / {right}".rstrip() if right
                   else f"  classical-factor {left}")
    if s.poly:
        out.append("  classical-poly " + " ".join(str(c) for c in s.poly))
    if s.polyden:
        out.append("  classical-polyden " + " ".join(str(c) for c in s.polyden))
    for b in s.braces:
        left = " ".join(x for x in (str(b.coeff), "n" if b.npow == 1 else
                                    (f"n^{b.npow}" if b.npow else ""),
                                    _fmt_linfactors(b.num)) if x)
        right = _fmt_linfactors(b.den)
        out.append(f"  classical-brace {left} / {right}" if right else f"  classical-brace {left} /")


def _dump_recipe(r: SeriesRecipe, root: int, out):
    out.append("  lhs-num " + " ".join(_fmt_q(m.texp, root) for m in r.lhs_num))
    out.append("  lhs-den " + " ".join(_fmt_q(m.texp, root) for m in r.lhs_den))
    out.append(f"  pref {r.pref_quad} {r.pref_lin} {r.pref_const}")
    if r.sign_alt:
        out.append("  sign-alt true")
    if r.n_start:
        out.append(f"  start {r.n_start}")
    if r.leading_one:
        out.append("  leading-one true")
    if r.poch_num:
        out.append("  poch-num " + " ".join(_fmt_poch(f, root) for f in r.poch_num))
    if r.poch_den:
        out.append("  poch-den " + " ".join(_fmt_poch(f, root) for f in r.poch_den))
    if r.w_num:
        out.append("  w-num " + " ".join(_fmt_atom(x, root) for x in r.w_num))
    if r.w_den:
        out.append("  w-den " + " ".join(_fmt_atom(x, root) for x in r.w_den))
    half = root // 2
    for group in r.braces:
        if len(group) == 1 and not group[0].num and not group[0].den and group[0].mono.is_unit():
            continue  # the implicit trivial brace
        mono_only = all(not t.num and not t.den for t in group)
        if mono_only and all(t.mono.ncoef % half == 0 for t in group):
            for t in group:
                out.append(f"  qpoly {t.mono.ncoef // half} {t.mono.coeff} "
                           f"{_fmt_q(t.mono.const, root)}")
        else:
            for t in group:
                out.append(
                    f"  brace {t.mono.coeff} {_fmt_q(t.mono.ncoef, root)}:{_fmt_q(t.mono.const, root)}"
                    f" | {' '.join(_fmt_atom(x, root) for x in t.num)}"
                    f" | {' '.join(_fmt_atom(x, root) for x in t.den)}"
                )


def dump_catalog(cat: Catalog) -> str:
    """Serialize a catalog back to block text (field order is canonical)."""
    out = [f"root {cat.root}", ""]
    for r in cat.records:
        out.append(f"record {r.id}")
        out.append(f"  kind {r.kind}")
        out.append(f"  section {r.section}")
        if r.note:
            out.append(f"  note {r.note}")
        if r.kind == "theorem":
            out.append(f"  theorem {r.theorem}")
            for k, m in zip("abcd", (r.params.a, r.params.b, r.params.c, r.params.d)):
                out.append(f"  {k} {_fmt_q(m.texp, r.root)}")
        else:
            if r.case:
                out.append(f"  case {r.case}")
            if r.sign:
                out.append(f"  sign {r.sign}")
            _dump_recipe(r.recipe, r.root, out)
        if r.classical:
            _dump_classical(r.classical, out)
        out.append("end")
        out.append("")
    for case in cat.cases.values():
        root = case.root
        out.append(f"case {case.id}")
        out.append(f"  theorem {case.theorem}")
        for k, m in zip("abcd", (case.params.a, case.params.b, case.params.c, case.params.d)):
            out.append(f"  {k} {_fmt_q(m.texp, root)}")
        for key, atoms in (("clear-num", case.clear_num), ("clear-den", case.clear_den),
                           ("fe-a", case.fe_a), ("fe-b", case.fe_b)):
            out.append(f"  {key} " + " ".join(
                f"{_fmt_q(t, root)}:{y}" + (f":{m}" if m != 1 else "") for t, y, m in atoms))
        out.append(f"  fe-shift {_fmt_q(case.fe_shift[0], root)} {case.fe_shift[1]}")
        out.append(f"  deg-q {case.deg_q}")
        out.append(f"  sign {case.sign}")
        out.append("  pp-lhs-num " + " ".join(_fmt_q(e, root) for e in case.pp_lhs_num))
        out.append("  pp-lhs-den " + " ".join(_fmt_q(e, root) for e in case.pp_lhs_den))
        out.append(f"  pp-pref {' '.join(str(x) for x in case.pp_pref)}")
        out.append("  pp-poch-num " + " ".join(_fmt_poch(f, root) for f in case.pp_poch_num))
        out.append("  pp-poch-den " + " ".join(_fmt_poch(f, root) for f in case.pp_poch_den))
        if case.pp_w_num:
            out.append("  pp-w-num " + " ".join(_fmt_atom(x, root) for x in case.pp_w_num))
        if case.pp_w_den:
            out.append("  pp-w-den " + " ".join(_fmt_atom(x, root) for x in case.pp_w_den))
        out.append(f"  t-pref {' '.join(str(x) for x in case.t_pref)}")
        out.append("  t-poch-num " + " ".join(_fmt_poch(f, root) for f in case.t_poch_num))
        out.append("  t-poch-den " + " ".join(_fmt_poch(f, root) for f in case.t_poch_den))
        if case.t_w_num:
            out.append("  t-w-num " + " ".join(_fmt_atom(x, root) for x in case.t_w_num))
        if case.t_w_den:
            out.append("  t-w-den " + " ".join(_fmt_atom(x, root) for x in case.t_w_den))
        out.append(f"  emit-id {case.emit_id}")
        out.append("end")
        out.append("")
    return "\n".join(out)


# ------------------------------------------------------------- verification


@dataclass
class VerificationReport:
    id: str
    status: str                   # verified | mismatch | unverified
    first_diff_exp: int | None
    lhs_coeff: str | None
    rhs_coeff: str | None
    terms_used: int
    order: int
    elapsed_ms: float
    cause: str | None = None

    def to_json(self, include_elapsed=True):
        payload = {
            "id": self.id,
            "status": self.status,
            "first_diff_exp": self.first_diff_exp,
            "lhs_coeff": self.lhs_coeff,
            "rhs_coeff": self.rhs_coeff,
            "terms_used": self.terms_used,
            "order": self.order,
        }
        if self.cause is not None:
            payload["cause"] = self.cause
        if include_elapsed:
            payload["elapsed_ms"] = self.elapsed_ms
        return payload


def record_sides(rec: IdentityRecord, order: int):
    """(lhs_series, rhs_series, terms_used) at the given truncation order.

    For a regularized record (identically-vanishing factors dropped on both
    sides) the right side is rescaled by the common shadow weight, so both
    returned series are normalized with constant term 1.
    """
    ring = SeriesRing(order=order, root=rec.root)
    if rec.kind == "theorem":
        bt = bind_theorem(rec.theorem, rec.params, rec.root)
        bsh = bind_theorem(rec.theorem, *shadow_params(rec.params, rec.root))
        lhs, net, phi = theorem_lhs(ring, bt, shadow=bsh)
        res = theorem_series(ring, bt, shadow=bsh, expected_net=net)
        return lhs, res.series.scale(1 / Fraction(phi)) if phi != 1 else res.series, res.terms_used
    lhs, net, phi = theorem_lhs(ring, rec.recipe)
    if net:
        raise SingularMismatch(f"{rec.id}: explicit record has a vanishing product factor")
    res = theorem_series(ring, rec.recipe)
    return lhs, res.series, res.terms_used


def verify_identity(rec: IdentityRecord, order: int = 200) -> VerificationReport:
    """Compare the two sides to the given order; mismatches are results."""
    t0 = time.perf_counter()
    try:
        lhs, rhs, terms = record_sides(rec, order)
    except (VanishingDenominatorFactor, SingularMismatch, ArithmeticError, ValueError) as exc:
        return VerificationReport(rec.id, "unverified", None, None, None, 0, order,
                                  (time.perf_counter() - t0) * 1000, cause=str(exc))
    diff = lhs.first_difference(rhs, order)
    ms = (time.perf_counter() - t0) * 1000
    if diff is None:
        return VerificationReport(rec.id, "verified", None, None, None, terms, order, ms)
    e, cl, cr = diff
    return VerificationReport(rec.id, "mismatch", e, str(cl), str(cr), terms, order, ms)


def verify_all(cat: Catalog, order: int = 200, parallel: bool = False):
    """Verify every record; failures are data, not exceptions."""
    if parallel:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor() as pool:
            futs = [pool.submit(verify_identity, r, order) for r in cat.records]
            return [f.result() for f in futs]
    return [verify_identity(r, order) for r in cat.records]


def summary_table(reports):
    lines = []
    width = max((len(r.id) for r in reports), default=4)
    for r in reports:
        extra = ""
        if r.status == "mismatch":
            extra = f"  first_diff_exp={r.first_diff_exp} lhs={r.lhs_coeff} rhs={r.rhs_coeff}"
        elif r.status == "unverified":
            extra = f"  cause={r.cause}"
        lines.append(f"{r.id:<{width}}  {r.status:<10} terms={r.terms_used:<3}{extra}")
    n_ok = sum(1 for r in reports if r.status == "verified")
    lines.append(f"-- {n_ok}/{len(reports)} verified")
    return "\n".join(lines)
