"""The affine Hecke algebra over Z[v, v^-1] in the standard basis.

Elements are finite sums of basis terms T_w indexed by WindowPerm, with
q = v**2 and the quadratic relation T_s^2 = q*T_e + (q-1)*T_s.  Products
expand the right factor through its rho power and reduced word, so the cost
of a*b is driven by the length of b.  On top of the T-basis sit

* the parabolic sums x_lambda,
* Kazhdan-Lusztig polynomials (zero across distinct rho powers),
* a commuting family y_1, ..., y_r of invertible elements built from
  translations, together with conversion to the basis of y-monomials times
  finite-permutation terms and back.

>>> from affineschur.weyl import WindowPerm
>>> s1 = t_basis(WindowPerm.s(3, 1))
>>> (s1 * s1).coeff(WindowPerm.identity(3))
v^2
>>> (s1 * s1).coeff(WindowPerm.s(3, 1))
v^2 - 1
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from affineschur._backend import kernels
from affineschur.laurent import Laurent
from affineschur.weyl import ParabolicIndex, WindowPerm, bruhat_leq

__all__ = [
    "HeckeElement",
    "t_basis",
    "t_basis_inverse",
    "mul",
    "x_lambda",
    "specialize_group_algebra",
    "KLTable",
    "kl_polynomial",
    "kl_extended",
    "bernstein_y",
    "bernstein_y_inverse",
    "to_bernstein_basis",
    "from_bernstein",
    "commute_gen_past_translations",
]

_ONE = {0: 1}
_QM1 = {2: 1, 0: -1}       # v^2 - 1
_INV_LO = {-2: 1, 0: -1}   # v^-2 - 1, the correction term of T_s^-1


class HeckeElement:
    """A finite Z[v, v^-1]-combination of basis terms T_w.

    Internally a dict from window tuples to raw Laurent dicts; no zero
    coefficients are stored, and all keys share the period r.
    """

    __slots__ = ("r", "_terms")

    def __init__(self, r: int, terms: Mapping[WindowPerm, Laurent] | None = None):
        if r < 3:
            raise ValueError(f"rank r={r} not supported; need r >= 3")
        self.r = int(r)
        raw: dict[tuple[int, ...], dict[int, int]] = {}
        if terms:
            for w, c in terms.items():
                if w.r != self.r:
                    raise ValueError("period mismatch among terms")
                if c:
                    raw[w.window] = dict(c.raw())
        self._terms = raw

    @classmethod
    def _raw(cls, r: int, terms: dict) -> "HeckeElement":
        out = object.__new__(cls)
        out.r = r
        out._terms = terms
        return out

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, r: int) -> "HeckeElement":
        if r < 3:
            raise ValueError(f"rank r={r} not supported; need r >= 3")
        return cls._raw(r, {})

    @classmethod
    def unit(cls, r: int) -> "HeckeElement":
        if r < 3:
            raise ValueError(f"rank r={r} not supported; need r >= 3")
        return cls._raw(r, {tuple(range(1, r + 1)): {0: 1}})

    @classmethod
    def t_basis(cls, w: WindowPerm) -> "HeckeElement":
        return cls._raw(w.r, {w.window: {0: 1}})

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if self.r != other.r:
            raise ValueError("period mismatch")
        out = {w: dict(c) for w, c in self._terms.items()}
        for w, c in other._terms.items():
            acc = out.setdefault(w, {})
            kernels.lp_add_into(acc, c)
            if not acc:
                del out[w]
        return HeckeElement._raw(self.r, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._raw(self.r, {w: kernels.lp_neg(c) for w, c in self._terms.items()})

    def scale(self, c: "Laurent | int") -> "HeckeElement":
        raw = {0: c} if isinstance(c, int) else c.raw()
        if not raw or (isinstance(c, int) and not c):
            return HeckeElement.zero(self.r)
        return HeckeElement._raw(self.r, {w: kernels.lp_mul(t, raw) for w, t in self._terms.items()})

    # -- products ----------------------------------------------------------

    def mul_gen_right(self, i: int) -> "HeckeElement":
        """Right multiplication by T_{s_i}; i is taken mod r into 1..r."""
        i = (i - 1) % self.r + 1
        return HeckeElement._raw(self.r, kernels.hecke_mul_gen_right(self._terms, i))

    def mul_gen_left(self, i: int) -> "HeckeElement":
        i = (i - 1) % self.r + 1
        return HeckeElement._raw(self.r, kernels.hecke_mul_gen_left(self._terms, i))

    def mul_rho_right(self, z: int) -> "HeckeElement":
        return HeckeElement._raw(self.r, kernels.hecke_mul_rho_right(self._terms, z))

    def mul_rho_left(self, z: int) -> "HeckeElement":
        return HeckeElement._raw(self.r, kernels.hecke_mul_rho_left(self._terms, z))

    def mul_gen_inv_right(self, i: int) -> "HeckeElement":
        """Right multiplication by T_{s_i}^-1 = v^-2 T_{s_i} - (1 - v^-2)."""
        i = (i - 1) % self.r + 1
        out = {
            w: kernels.lp_shift(c, -2)
            for w, c in kernels.hecke_mul_gen_right(self._terms, i).items()
        }
        for w, c in self._terms.items():
            acc = out.setdefault(w, {})
            kernels.lp_addmul_into(acc, c, _INV_LO)
            if not acc:
                del out[w]
        return HeckeElement._raw(self.r, out)

    def mul_gen_inv_left(self, i: int) -> "HeckeElement":
        i = (i - 1) % self.r + 1
        out = {
            w: kernels.lp_shift(c, -2)
            for w, c in kernels.hecke_mul_gen_left(self._terms, i).items()
        }
        for w, c in self._terms.items():
            acc = out.setdefault(w, {})
            kernels.lp_addmul_into(acc, c, _INV_LO)
            if not acc:
                del out[w]
        return HeckeElement._raw(self.r, out)

    def mul_t_right(self, w: WindowPerm) -> "HeckeElement":
        """Right multiplication by the basis term T_w."""
        z, word = w.reduced_word()
        cur = kernels.hecke_mul_rho_right(self._terms, z)
        for i in word:
            cur = kernels.hecke_mul_gen_right(cur, i)
        return HeckeElement._raw(self.r, cur)

    def __mul__(self, other: "HeckeElement | Laurent | int") -> "HeckeElement":
        if isinstance(other, (Laurent, int)):
            return self.scale(other)
        if self.r != other.r:
            raise ValueError("period mismatch")
        total: dict[tuple[int, ...], dict[int, int]] = {}
        for wwin, c in other._terms.items():
            z, word = WindowPerm._unsafe(wwin).reduced_word()
            part = kernels.hecke_mul_rho_right(self._terms, z)
            for i in word:
                part = kernels.hecke_mul_gen_right(part, i)
            for w2, c2 in part.items():
                acc = total.setdefault(w2, {})
                kernels.lp_addmul_into(acc, c2, c)
                if not acc:
                    del total[w2]
        return HeckeElement._raw(self.r, total)

    def __rmul__(self, other: "Laurent | int") -> "HeckeElement":
        if isinstance(other, (Laurent, int)):
            return self.scale(other)
        return NotImplemented

    # -- involutions and specializations -----------------------------------

    def bar(self) -> "HeckeElement":
        """The bar involution: v -> v^-1 and T_w -> (T_{w^-1})^-1."""
        total: dict[tuple[int, ...], dict[int, int]] = {}
        for wwin, c in self._terms.items():
            inv = t_basis_inverse(WindowPerm._unsafe(kernels.win_inverse(wwin)))
            cb = kernels.lp_bar(c)
            for w2, c2 in inv._terms.items():
                acc = total.setdefault(w2, {})
                kernels.lp_addmul_into(acc, c2, cb)
                if not acc:
                    del total[w2]
        return HeckeElement._raw(self.r, total)

    def specialize_group_algebra(self) -> dict[WindowPerm, int]:
        """The image under v -> 1, as a group-algebra element over Z."""
        out = {}
        for wwin, c in self._terms.items():
            val = kernels.lp_eval_one(c)
            if val:
                out[WindowPerm._unsafe(wwin)] = val
        return out

    # -- structure ---------------------------------------------------------

    def coeff(self, w: WindowPerm) -> Laurent:
        return Laurent(self._terms.get(w.window, {}))

    def support(self) -> list[WindowPerm]:
        wins = sorted(self._terms, key=lambda win: (kernels.win_length(win), win))
        return [WindowPerm._unsafe(win) for win in wins]

    def items(self) -> list[tuple[WindowPerm, Laurent]]:
        return [(w, self.coeff(w)) for w in self.support()]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.r == other.r and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.r, frozenset((w, frozenset(c.items())) for w, c in self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"HeckeElement.zero({self.r})"
        parts = [f"({coeff})*T{list(w.window)}" for w, coeff in self.items()]
        return " + ".join(parts)

    # -- serialization -----------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "r": self.r,
            "terms": [
                {"window": list(w.window), "coeff": coeff.to_obj()} for w, coeff in self.items()
            ],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "HeckeElement":
        if not isinstance(obj, Mapping) or "r" not in obj or "terms" not in obj:
            raise ValueError(f"malformed Hecke element: {obj!r}")
        r = int(obj["r"])
        terms = obj["terms"]
        if not isinstance(terms, Sequence) or isinstance(terms, (str, bytes)):
            raise ValueError(f"malformed term list: {terms!r}")
        total: dict[tuple[int, ...], dict[int, int]] = {}
        for entry in terms:
            if not isinstance(entry, Mapping) or "window" not in entry or "coeff" not in entry:
                raise ValueError(f"malformed Hecke term: {entry!r}")
            w = WindowPerm.from_obj({"r": r, "window": entry["window"]})
            c = Laurent.from_obj(entry["coeff"])
            acc = total.setdefault(w.window, {})
            kernels.lp_add_into(acc, c.raw())
            if not acc:
                del total[w.window]
        return cls._raw(r, total)


# ---------------------------------------------------------------------------
# Free-function aliases matching the operation names used across the package


def t_basis(w: WindowPerm) -> HeckeElement:
    return HeckeElement.t_basis(w)


def mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b


def specialize_group_algebra(h: HeckeElement) -> dict[WindowPerm, int]:
    return h.specialize_group_algebra()


def t_basis_inverse(w: WindowPerm) -> HeckeElement:
    """The inverse of the basis term T_w.

    With w = rho^z s_{i_1} ... s_{i_k} reduced, the inverse is the product
    of the generator inverses in reverse order times T_rho^-z.
    """
    z, word = w.reduced_word()
    h = HeckeElement.unit(w.r)
    for i in reversed(word):
        h = h.mul_gen_inv_right(i)
    return h.mul_rho_right(-z)


def x_lambda(pi: ParabolicIndex) -> HeckeElement:
    """The sum of T_w over the finite parabolic subgroup of pi."""
    return HeckeElement._raw(pi.r, {w.window: {0: 1} for w in pi.elements()})


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig polynomials


class KLTable:
    """Memoized Kazhdan-Lusztig polynomials P_{y,w} in q = v**2.

    Values are stored for pairs in the Coxeter part; the extension across
    rho powers is a Kronecker delta.  The single mutable structure of this
    module: confine a table to one task, or guard fills externally.
    """

    def __init__(self, r: int):
        if r < 3:
            raise ValueError(f"rank r={r} not supported; need r >= 3")
        self.r = r
        self._memo: dict[tuple[tuple[int, ...], tuple[int, ...]], dict[int, int]] = {}
        self._lower: dict[tuple[int, ...], frozenset] = {}

    def polynomial(self, y: WindowPerm, w: WindowPerm) -> Laurent:
        """P_{y,w} for y, w in the Coxeter part (rho power 0)."""
        if y.r != self.r or w.r != self.r:
            raise ValueError("rank mismatch")
        if y.rho_power() or w.rho_power():
            raise ValueError("polynomial() needs rho power 0; use extended()")
        return Laurent(self._kl(y.window, w.window))

    def extended(self, y: WindowPerm, w: WindowPerm) -> Laurent:
        """P on the full group: zero unless the rho powers agree."""
        if y.r != self.r or w.r != self.r:
            raise ValueError("rank mismatch")
        zy, cy = y.rho_decompose()
        zw, cw = w.rho_decompose()
        if zy != zw:
            return Laurent.zero()
        return Laurent(self._kl(cy.window, cw.window))

    def mu(self, y: WindowPerm, w: WindowPerm) -> int:
        """The coefficient of v^(l(w)-l(y)-1) in P_{y,w} (0 across rho powers)."""
        zy, cy = y.rho_decompose()
        zw, cw = w.rho_decompose()
        if zy != zw:
            return 0
        mm = cw.length() - cy.length()
        if mm <= 0 or mm % 2 == 0:
            return 0
        return self._kl(cy.window, cw.window).get(mm - 1, 0)

    # -- recursion ---------------------------------------------------------

    def _kl(self, ywin: tuple[int, ...], wwin: tuple[int, ...]) -> dict[int, int]:
        key = (ywin, wwin)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._kl_compute(ywin, wwin)
        if res and ywin != wwin:
            bound = kernels.win_length(wwin) - kernels.win_length(ywin) - 1
            assert max(res) <= bound, f"degree bound violated at {ywin} <= {wwin}"
        self._memo[key] = res
        return res

    def _kl_compute(self, ywin, wwin) -> dict[int, int]:
        if ywin == wwin:
            return {0: 1}
        if not bruhat_leq(WindowPerm._unsafe(ywin), WindowPerm._unsafe(wwin)):
            return {}
        r = self.r
        s = next(
            i for i in range(1, r + 1)
            if kernels.win_apply(wwin, i) > kernels.win_apply(wwin, i + 1)
        )
        if not kernels.win_apply(ywin, s) > kernels.win_apply(ywin, s + 1):
            # s*y > y: P_{y,w} = P_{sy,w}
            return dict(self._kl(kernels.win_mul_s_left(ywin, s), wwin))
        vwin = kernels.win_mul_s_left(wwin, s)
        sywin = kernels.win_mul_s_left(ywin, s)
        acc = dict(self._kl(sywin, vwin))
        kernels.lp_add_into(acc, kernels.lp_shift(self._kl(ywin, vwin), 2))
        lv = kernels.win_length(vwin)
        for zwin in self._lower_set(vwin):
            if not kernels.win_apply(zwin, s) > kernels.win_apply(zwin, s + 1):
                continue  # need s*z < z
            mm = lv - kernels.win_length(zwin)
            if mm <= 0 or mm % 2 == 0:
                continue
            mu = self._kl(zwin, vwin).get(mm - 1, 0)
            if not mu:
                continue
            pyz = self._kl(ywin, zwin)
            if pyz:
                kernels.lp_add_into(acc, kernels.lp_scale(kernels.lp_shift(pyz, mm + 1), -mu))
        return acc

    def _lower_set(self, wwin) -> frozenset:
        """All windows below w in Bruhat order: subword products of one
        reduced expression."""
        hit = self._lower.get(wwin)
        if hit is None:
            _, word = WindowPerm._unsafe(wwin).reduced_word()
            cur = {tuple(range(1, self.r + 1))}
            for i in word:
                cur |= {kernels.win_mul_s_right(u, i) for u in cur}
            hit = frozenset(cur)
            self._lower[wwin] = hit
        return hit


def kl_polynomial(table: KLTable, y: WindowPerm, w: WindowPerm) -> Laurent:
    return table.polynomial(y, w)


def kl_extended(table: KLTable, y: WindowPerm, w: WindowPerm) -> Laurent:
    return table.extended(y, w)


# ---------------------------------------------------------------------------
# The commuting translation family y_1, ..., y_r
#
# Anchor: z_r (the translation moving residue class r up by r) factors as
# rho * s_1 ... s_{r-1} with lengths adding, so T_{z_r} is a single basis
# term and y_r := v^-(r-1) * T_{z_r} is invertible.  The rest of the family
# comes from the braid-compatible descent
#     y_i := v^2 * T_{s_i}^-1 * y_{i+1} * T_{s_i}^-1,
# which builds the conjugation relation T_{s_i} y_i T_{s_i} = v^2 y_{i+1}
# directly into the construction.


@lru_cache(maxsize=None)
def _translation_family(r: int) -> tuple[dict[int, HeckeElement], dict[int, HeckeElement]]:
    base = list(range(1, r + 1))
    base[r - 1] += r
    zr = WindowPerm(tuple(base))
    y = {r: HeckeElement.t_basis(zr).scale(Laurent.v(-(r - 1)))}
    yinv = {r: t_basis_inverse(zr).scale(Laurent.v(r - 1))}
    for i in range(r - 1, 0, -1):
        y[i] = y[i + 1].mul_gen_inv_left(i).mul_gen_inv_right(i).scale(Laurent.v(2))
        yinv[i] = yinv[i + 1].mul_gen_left(i).mul_gen_right(i).scale(Laurent.v(-2))
    return y, yinv


def bernstein_y(r: int, i: int) -> HeckeElement:
    """The i-th member of the commuting translation family, 1 <= i <= r."""
    if not 1 <= i <= r:
        raise ValueError(f"index {i} outside 1..{r}")
    return _translation_family(r)[0][i]


def bernstein_y_inverse(r: int, i: int) -> HeckeElement:
    if not 1 <= i <= r:
        raise ValueError(f"index {i} outside 1..{r}")
    return _translation_family(r)[1][i]


# ---------------------------------------------------------------------------
# Rewriting into the basis of y-monomials times finite permutations
#
# A rewritten element maps keys (c, u) -- translation exponent vector and
# finite window -- to Laurent dicts, standing for y_1^c_1 ... y_r^c_r T_u.
# Right multiplication by generators keeps that shape; the exchange steps
# below are the only places a y passes a T.


@lru_cache(maxsize=None)
def commute_gen_past_translations(a: int, b: int) -> tuple[tuple[bool, int, int, Laurent], ...]:
    """Rewrite y_i^a y_{i+1}^b T_{s_i} as a sum of T_{s_i}-or-1 times
    y-monomials.

    Returns terms (carries_gen, da, db, coeff) meaning
    coeff * T_{s_i}^[carries_gen] * y_i^da * y_{i+1}^db; the exchange
    relations are index-uniform, so i never appears.
    """
    if a == 0 and b == 0:
        return ((True, 0, 0, Laurent.one()),)
    vv = Laurent(_QM1)
    out: dict[tuple[bool, int, int], Laurent] = {}

    def add(key, c):
        cur = out.get(key)
        cur = c if cur is None else cur + c
        if cur:
            out[key] = cur
        else:
            out.pop(key, None)

    if b > 0:
        # peel y_{i+1}: y_{i+1} T_{s_i} = T_{s_i} y_i + (v^2-1) y_{i+1}
        for g, da, db, c in commute_gen_past_translations(a, b - 1):
            add((g, da + 1, db), c)
        add((False, a, b), vv)
    elif b < 0:
        # y_{i+1}^-1 T_{s_i} = T_{s_i} y_i^-1 - (v^2-1) y_i^-1
        for g, da, db, c in commute_gen_past_translations(a, b + 1):
            add((g, da - 1, db), c)
        add((False, a - 1, b + 1), -vv)
    elif a > 0:
        # y_i T_{s_i} = T_{s_i} y_{i+1} - (v^2-1) y_{i+1}
        for g, da, db, c in commute_gen_past_translations(a - 1, 0):
            add((g, da, db + 1), c)
        add((False, a - 1, 1), -vv)
    else:
        # y_i^-1 T_{s_i} = T_{s_i} y_{i+1}^-1 + (v^2-1) y_i^-1
        for g, da, db, c in commute_gen_past_translations(a + 1, 0):
            add((g, da, db - 1), c)
        add((False, a, 0), vv)
    return tuple((g, da, db, c) for (g, da, db), c in sorted(out.items(), key=lambda kv: kv[0]))


def _b_scale(bel: dict, raw: dict) -> dict:
    return {key: kernels.lp_mul(c, raw) for key, c in bel.items()}


def _b_merge(total: dict, bel: dict, raw: dict | None = None) -> None:
    for key, c in bel.items():
        acc = total.setdefault(key, {})
        if raw is None:
            kernels.lp_add_into(acc, c)
        else:
            kernels.lp_addmul_into(acc, c, raw)
        if not acc:
            del total[key]


def _b_mul_gen(bel: dict, i: int) -> dict:
    """Right multiplication by T_{s_i}, i < r, on (c, u) keys: the finite
    quadratic relation on the u part."""
    out: dict = {}
    for (cvec, u), c in bel.items():
        us = kernels.win_mul_s_right(u, i)
        if kernels.win_pos(u, i) > kernels.win_pos(u, i + 1):
            acc = out.setdefault((cvec, us), {})
            kernels.lp_add_into(acc, kernels.lp_shift(c, 2))
            if not acc:
                del out[(cvec, us)]
            acc = out.setdefault((cvec, u), {})
            kernels.lp_addmul_into(acc, c, _QM1)
            if not acc:
                del out[(cvec, u)]
        else:
            acc = out.setdefault((cvec, us), {})
            kernels.lp_add_into(acc, c)
            if not acc:
                del out[(cvec, us)]
    return out


def _b_mul_gen_inv(bel: dict, i: int) -> dict:
    out = {key: kernels.lp_shift(c, -2) for key, c in _b_mul_gen(bel, i).items()}
    _b_merge(out, bel, _INV_LO)
    return out


@lru_cache(maxsize=None)
def _finite_term_mul_y(u: tuple[int, ...], j: int, e: int) -> tuple:
    """T_u * y_j^e (u a finite window, e = +-1) in (c, u)-key form."""
    r = len(u)
    idwin = tuple(range(1, r + 1))
    if u == idwin:
        cvec = tuple(e if t == j else 0 for t in range(1, r + 1))
        return (((cvec, idwin), _ONE),)
    i = next(
        i for i in range(1, r) if kernels.win_pos(u, i) > kernels.win_pos(u, i + 1)
    )
    u2 = kernels.win_mul_s_right(u, i)  # u = u2 * s_i, shorter
    def as_dict(pairs):
        return {key: dict(c) for key, c in pairs}
    if j != i and j != i + 1:
        res = _b_mul_gen(as_dict(_finite_term_mul_y(u2, j, e)), i)
    elif e == 1 and j == i:
        # T_{s_i} y_i = y_{i+1} T_{s_i} - (v^2-1) y_{i+1}
        base = as_dict(_finite_term_mul_y(u2, i + 1, 1))
        res = _b_mul_gen(base, i)
        _b_merge(res, base, kernels.lp_neg(_QM1))
    elif e == 1:
        # T_{s_i} y_{i+1} = y_i T_{s_i} + (v^2-1) y_{i+1}
        res = _b_mul_gen(as_dict(_finite_term_mul_y(u2, i, 1)), i)
        _b_merge(res, as_dict(_finite_term_mul_y(u2, i + 1, 1)), _QM1)
    elif j == i:
        # T_{s_i} y_i^-1 = y_{i+1}^-1 T_{s_i} + (v^2-1) y_i^-1
        res = _b_mul_gen(as_dict(_finite_term_mul_y(u2, i + 1, -1)), i)
        _b_merge(res, as_dict(_finite_term_mul_y(u2, i, -1)), _QM1)
    else:
        # T_{s_i} y_{i+1}^-1 = y_i^-1 T_{s_i} - (v^2-1) y_i^-1
        base = as_dict(_finite_term_mul_y(u2, i, -1))
        res = _b_mul_gen(base, i)
        _b_merge(res, base, kernels.lp_neg(_QM1))
    return tuple((key, c) for key, c in res.items())


def _b_mul_y(bel: dict, j: int, e: int) -> dict:
    out: dict = {}
    for (cvec, u), c in bel.items():
        for (dvec, u2), c2 in _finite_term_mul_y(u, j, e):
            key = (tuple(x + y for x, y in zip(cvec, dvec)), u2)
            acc = out.setdefault(key, {})
            kernels.lp_addmul_into(acc, c, c2)
            if not acc:
                del out[key]
    return out


def _b_mul_rho(bel: dict, r: int) -> dict:
    # T_rho = v^(r-1) * y_r * T_{s_(r-1)}^-1 ... T_{s_1}^-1
    cur = _b_mul_y(bel, r, 1)
    for i in range(r - 1, 0, -1):
        cur = _b_mul_gen_inv(cur, i)
    return _b_scale(cur, {r - 1: 1})


def _b_mul_rho_inv(bel: dict, r: int) -> dict:
    # T_rho^-1 = v^-(r-1) * T_{s_1} ... T_{s_(r-1)} * y_r^-1
    cur = bel
    for i in range(1, r):
        cur = _b_mul_gen(cur, i)
    cur = _b_mul_y(cur, r, -1)
    return _b_scale(cur, {1 - r: 1})


def to_bernstein_basis(h: HeckeElement) -> dict[tuple[tuple[int, ...], WindowPerm], Laurent]:
    """Rewrite h in the basis of y-monomials times finite-permutation terms.

    Keys are (c, u): the translation exponent vector and the finite part;
    the value is the coefficient of y_1^c_1 ... y_r^c_r T_u.  Round-trips
    through from_bernstein.
    """
    r = h.r
    idwin = tuple(range(1, r + 1))
    zero_c = (0,) * r
    total: dict = {}
    for wwin, coeff in h._terms.items():
        z, word = WindowPerm._unsafe(wwin).reduced_word()
        bel = {(zero_c, idwin): dict(_ONE)}
        for _ in range(z):
            bel = _b_mul_rho(bel, r)
        for _ in range(-z):
            bel = _b_mul_rho_inv(bel, r)
        for i in word:
            if i < r:
                bel = _b_mul_gen(bel, i)
            else:
                # s_r = rho s_1 rho^-1 at the level of basis terms
                bel = _b_mul_rho_inv(_b_mul_gen(_b_mul_rho(bel, r), 1), r)
        _b_merge(total, bel, coeff)
    return {
        (cvec, WindowPerm._unsafe(u)): Laurent(c) for (cvec, u), c in total.items()
    }


def from_bernstein(
    assoc: Mapping[tuple[Iterable[int], WindowPerm], Laurent], r: int
) -> HeckeElement:
    """Multiply a (c, u) association back out into the standard basis."""
    total = HeckeElement.zero(r)
    for (cvec, u), coeff in assoc.items():
        h = HeckeElement.unit(r)
        for j, cj in enumerate(cvec, start=1):
            if not cj:
                continue
            factor = bernstein_y(r, j) if cj > 0 else bernstein_y_inverse(r, j)
            for _ in range(abs(cj)):
                h = h * factor
        h = h.mul_t_right(u)
        total = total + h.scale(coeff)
    return total
