"""The affine q-Schur algebra and q-tensor space.

Weights are compositions of r into n nonnegative parts.  The algebra acts
on the direct sum of the right ideals x_lambda * H, and its basis elements
phi^d_{lambda,mu} send x_mu to the double-coset sum over W_lambda d W_mu.
Products are genuine composites of module homomorphisms, re-expanded in the
basis by peeling minimal double-coset strata; nothing here depends on
structure constants being known in closed form.

q-tensor space is the column of the algebra at the weight omega = (1^r, 0*),
a left Schur / right Hecke bimodule with basis x_lambda T_d.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Mapping, Sequence

from affineschur._backend import kernels
from affineschur.hecke import HeckeElement, KLTable, x_lambda
from affineschur.laurent import Laurent
from affineschur.weyl import (
    ParabolicIndex,
    WindowPerm,
    coset_decompose,
    double_coset,
    double_coset_rep,
    is_distinguished,
    longest_double_coset_elt,
    young_subgroup_of_key,
)

__all__ = [
    "Weight",
    "omega",
    "all_weights",
    "young_parabolic",
    "phi",
    "phi_value",
    "SchurElement",
    "schur_mul",
    "embed_hecke",
    "is_finite_type",
    "theta",
    "QTensorElement",
    "act_schur_left",
    "act_hecke_right",
]

# peeling must strictly shrink a finite stratum poset; hitting this cap
# means the input was not in the claimed span
_PEEL_CAP = 100_000


class Weight:
    """A composition of r into n nonnegative parts; no monotonicity."""

    __slots__ = ("n", "r", "parts")

    def __init__(self, n: int, r: int, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        if n < 1 or r < 1:
            raise ValueError("n and r must be positive")
        if len(parts) != n:
            raise ValueError(f"expected {n} parts, got {len(parts)}")
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if sum(parts) != r:
            raise ValueError(f"parts {parts} do not sum to r={r}")
        self.n = n
        self.r = r
        self.parts = parts

    def expanded(self) -> tuple[int, ...]:
        """The weakly increasing r-tuple listing i with multiplicity parts[i-1]."""
        out: list[int] = []
        for i, p in enumerate(self.parts, start=1):
            out.extend([i] * p)
        return tuple(out)

    @classmethod
    def of_key(cls, key: Sequence[int], n: int) -> "Weight":
        """The weight of a tensor key: counts of each residue class mod n."""
        parts = [0] * n
        for t in key:
            parts[(t - 1) % n] += 1
        return cls(n, len(key), parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        return (self.n, self.r, self.parts) == (other.n, other.r, other.parts)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.parts))

    def __repr__(self) -> str:
        return f"Weight({self.n}, {self.r}, {list(self.parts)})"


def omega(n: int, r: int) -> Weight:
    """The weight (1^r, 0^(n-r)); needs n >= r."""
    if n < r:
        raise ValueError(f"omega needs n >= r, got n={n}, r={r}")
    return Weight(n, r, (1,) * r + (0,) * (n - r))


def all_weights(n: int, r: int) -> list[Weight]:
    """Every composition of r into n parts, in lexicographic order."""
    out = []
    for cuts in itertools.combinations(range(r + n - 1), n - 1):
        parts = []
        prev = -1
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(r + n - 2 - prev)
        out.append(Weight(n, r, parts))
    return sorted(out, key=lambda lam: lam.parts)


def young_parabolic(lam: Weight) -> ParabolicIndex:
    """Generators s_i with i and i+1 in the same block of lam (never s_r)."""
    return young_subgroup_of_key(lam.parts, lam.r)


# ---------------------------------------------------------------------------
# The phi basis


@lru_cache(maxsize=None)
def _phi_value_cached(r: int, lparts, mparts, dwin) -> HeckeElement:
    left = young_subgroup_of_key(lparts, r)
    right = young_subgroup_of_key(mparts, r)
    d = WindowPerm._unsafe(dwin)
    return HeckeElement._raw(
        r, {w.window: {0: 1} for w in double_coset(d, left, right)}
    )


def phi_value(lam: Weight, mu: Weight, d: WindowPerm) -> HeckeElement:
    """The image of x_mu: the sum of T_w over the double coset of d."""
    if lam.r != mu.r or d.r != lam.r:
        raise ValueError("rank mismatch")
    dbar = double_coset_rep(d, young_parabolic(lam), young_parabolic(mu))
    return _phi_value_cached(lam.r, lam.parts, mu.parts, dbar.window)


def phi(lam: Weight, mu: Weight, d: WindowPerm, strict: bool = False) -> "SchurElement":
    """The basis element phi^d_{lam,mu} as a one-term SchurElement.

    d is normalized to its distinguished double-coset representative;
    strict=True instead rejects non-distinguished input.
    """
    if lam.n != mu.n or lam.r != mu.r:
        raise ValueError("weight shape mismatch")
    dbar = double_coset_rep(d, young_parabolic(lam), young_parabolic(mu))
    if strict and dbar != d:
        raise ValueError(f"{d!r} is not distinguished for this weight pair")
    return SchurElement._raw(
        lam.n, lam.r, {(lam.parts, mu.parts, dbar.window): {0: 1}}
    )


def _extract_right_factor(h: HeckeElement, pi: ParabolicIndex) -> dict[tuple, Laurent]:
    """Coordinates of h in the basis {x_pi T_d : d distinguished}.

    Peels the minimal-length, lexicographically smallest window; for an
    element of the span that window is always distinguished with the right
    coefficient.  Raises if h leaves the span.
    """
    coords: dict[tuple, Laurent] = {}
    cur = h
    xl = x_lambda(pi)
    for _ in range(_PEEL_CAP):
        if not cur:
            return coords
        wwin = min(cur._terms, key=lambda w: (kernels.win_length(w), w))
        w = WindowPerm._unsafe(wwin)
        if not is_distinguished(w, pi):
            raise ValueError(f"element is not a combination of x*T_d terms: stuck at {wwin}")
        c = Laurent(cur._terms[wwin])
        coords[wwin] = c
        cur = cur - xl.mul_t_right(w).scale(c)
    raise RuntimeError("right-factor peel did not terminate; span assumption violated")


def _expand_phi(h: HeckeElement, lam: Weight, mu: Weight) -> dict[tuple, Laurent]:
    """Coordinates of h in the phi-basis column (lam, mu); peels minimal
    double-coset strata, which always carry unit leading terms."""
    left, right = young_parabolic(lam), young_parabolic(mu)
    coords: dict[tuple, Laurent] = {}
    cur = h
    for _ in range(_PEEL_CAP):
        if not cur:
            return coords
        wwin = min(cur._terms, key=lambda w: (kernels.win_length(w), w))
        w = WindowPerm._unsafe(wwin)
        if double_coset_rep(w, left, right) != w:
            raise ValueError(f"element is not in the double-coset span: stuck at {wwin}")
        c = Laurent(cur._terms[wwin])
        coords[wwin] = c
        cur = cur - _phi_value_cached(lam.r, lam.parts, mu.parts, wwin).scale(c)
    raise RuntimeError("phi-basis peel did not terminate; span assumption violated")


class SchurElement:
    """A finite combination of basis elements phi^d_{lam,mu}.

    Keys are (lam parts, mu parts, d window) with d always distinguished on
    both sides; values are raw Laurent dicts without zeros.
    """

    __slots__ = ("n", "r", "_terms")

    def __init__(self, n: int, r: int):
        self.n = int(n)
        self.r = int(r)
        self._terms: dict[tuple, dict[int, int]] = {}

    @classmethod
    def _raw(cls, n: int, r: int, terms: dict) -> "SchurElement":
        out = object.__new__(cls)
        out.n = n
        out.r = r
        out._terms = terms
        return out

    @classmethod
    def zero(cls, n: int, r: int) -> "SchurElement":
        return cls._raw(n, r, {})

    @classmethod
    def identity(cls, n: int, r: int) -> "SchurElement":
        terms = {}
        for lam in all_weights(n, r):
            key = (lam.parts, lam.parts, tuple(range(1, r + 1)))
            terms[key] = {0: 1}
        return cls._raw(n, r, terms)

    def __add__(self, other: "SchurElement") -> "SchurElement":
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("shape mismatch")
        out = {k: dict(c) for k, c in self._terms.items()}
        for k, c in other._terms.items():
            acc = out.setdefault(k, {})
            kernels.lp_add_into(acc, c)
            if not acc:
                del out[k]
        return SchurElement._raw(self.n, self.r, out)

    def __sub__(self, other: "SchurElement") -> "SchurElement":
        return self + (-other)

    def __neg__(self) -> "SchurElement":
        return SchurElement._raw(
            self.n, self.r, {k: kernels.lp_neg(c) for k, c in self._terms.items()}
        )

    def scale(self, c: "Laurent | int") -> "SchurElement":
        raw = {0: c} if isinstance(c, int) else c.raw()
        if not raw or raw == {0: 0}:
            return SchurElement.zero(self.n, self.r)
        return SchurElement._raw(
            self.n, self.r, {k: kernels.lp_mul(t, raw) for k, t in self._terms.items()}
        )

    def __mul__(self, other: "SchurElement | Laurent | int") -> "SchurElement":
        if isinstance(other, (Laurent, int)):
            return self.scale(other)
        return schur_mul(self, other)

    def __rmul__(self, other: "Laurent | int") -> "SchurElement":
        if isinstance(other, (Laurent, int)):
            return self.scale(other)
        return NotImplemented

    def coeff(self, lam: Weight, mu: Weight, d: WindowPerm) -> Laurent:
        return Laurent(self._terms.get((lam.parts, mu.parts, d.window), {}))

    def items(self) -> list[tuple[Weight, Weight, WindowPerm, Laurent]]:
        out = []
        for key in sorted(
            self._terms, key=lambda k: (k[0], k[1], kernels.win_length(k[2]), k[2])
        ):
            lp, mp, dw = key
            out.append(
                (
                    Weight(self.n, self.r, lp),
                    Weight(self.n, self.r, mp),
                    WindowPerm._unsafe(dw),
                    Laurent(self._terms[key]),
                )
            )
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchurElement):
            return NotImplemented
        return (self.n, self.r, self._terms) == (other.n, other.r, other._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return f"SchurElement.zero({self.n}, {self.r})"
        bits = []
        for lam, mu, d, c in self.items():
            bits.append(f"({c})*phi[{list(lam.parts)},{list(mu.parts)},{list(d.window)}]")
        return " + ".join(bits)

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "terms": [
                {
                    "lambda": list(lam.parts),
                    "mu": list(mu.parts),
                    "d": {"window": list(d.window)},
                    "coeff": c.to_obj(),
                }
                for lam, mu, d, c in self.items()
            ],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "SchurElement":
        if (
            not isinstance(obj, Mapping)
            or "n" not in obj
            or "r" not in obj
            or "terms" not in obj
        ):
            raise ValueError(f"malformed Schur element: {obj!r}")
        n, r = int(obj["n"]), int(obj["r"])
        total = cls.zero(n, r)
        for entry in obj["terms"]:
            if not isinstance(entry, Mapping) or not {"lambda", "mu", "d", "coeff"} <= set(entry):
                raise ValueError(f"malformed Schur term: {entry!r}")
            lam = Weight(n, r, entry["lambda"])
            mu = Weight(n, r, entry["mu"])
            d = WindowPerm.from_obj({"r": r, **dict(entry["d"])})
            c = Laurent.from_obj(entry["coeff"])
            total = total + phi(lam, mu, d).scale(c)
        return total


def schur_mul(a: SchurElement, b: SchurElement) -> SchurElement:
    """The composite homomorphism a after b, re-expanded in the phi basis.

    A term of a with row/column pair (lam1, mu1) composes with a term of b
    at (lam2, mu2) only when mu1 == lam2.  Each b-column is evaluated on
    x_mu2, written as x_lam2 times a right factor, pushed through a, and the
    resulting Hecke value is peeled back into basis coordinates.
    """
    if (a.n, a.r) != (b.n, b.r):
        raise ValueError("shape mismatch")
    n, r = a.n, a.r
    blocks: dict[tuple, dict] = {}
    for (l2, m2, d2), c2 in b._terms.items():
        acc = blocks.setdefault((l2, m2), {})
        base = _phi_value_cached(r, l2, m2, d2)
        for w, c in base._terms.items():
            slot = acc.setdefault(w, {})
            kernels.lp_addmul_into(slot, c, c2)
            if not slot:
                del acc[w]
    values: dict[tuple, HeckeElement] = {}
    for (l2, m2), raw in blocks.items():
        if not raw:
            continue
        lam2 = Weight(n, r, l2)
        factor = _extract_right_factor(
            HeckeElement._raw(r, raw), young_parabolic(lam2)
        )
        for (l1, m1, d1), c1 in a._terms.items():
            if m1 != l2:
                continue
            base = _phi_value_cached(r, l1, m1, d1)
            for dwin, c in factor.items():
                part = base.mul_t_right(WindowPerm._unsafe(dwin)).scale(c * Laurent(c1))
                key = (l1, m2)
                values[key] = values.get(key, HeckeElement.zero(r)) + part
    out: dict[tuple, dict] = {}
    for (l1, m2), h in values.items():
        if not h:
            continue
        coords = _expand_phi(h, Weight(n, r, l1), Weight(n, r, m2))
        for dwin, c in coords.items():
            if c:
                out[(l1, m2, dwin)] = dict(c.raw())
    return SchurElement._raw(n, r, out)


def embed_hecke(h: HeckeElement, n: int) -> SchurElement:
    """T_d -> phi^d_{omega,omega}, linearly extended; needs n >= r."""
    om = omega(n, h.r)
    terms = {(om.parts, om.parts, w.window): dict(c.raw()) for w, c in h.items()}
    return SchurElement._raw(n, h.r, terms)


def is_finite_type(e: SchurElement) -> bool:
    """True when every key's d lies in the finite symmetric group."""
    return all(all(1 <= t <= e.r for t in dwin) for (_, _, dwin) in e._terms)


def _bruhat_lower(w: WindowPerm) -> list[WindowPerm]:
    """Everything below w: rho power fixed, subword products of the Coxeter
    part's reduced word."""
    z, cox = w.rho_decompose()
    _, word = cox.reduced_word()
    cur = {tuple(range(1, w.r + 1))}
    for i in word:
        cur |= {kernels.win_mul_s_right(u, i) for u in cur}
    return [
        WindowPerm._unsafe(kernels.win_rot(u, z)) if z else WindowPerm._unsafe(u)
        for u in cur
    ]


def theta(lam: Weight, mu: Weight, d: WindowPerm, table: KLTable) -> SchurElement:
    """The KL-type basis element: a triangular combination of phi^z over the
    double cosets whose longest element sits below the longest element of
    d's coset, weighted by Kazhdan-Lusztig polynomials.
    """
    if table.r != lam.r:
        raise ValueError("table rank mismatch")
    left, right = young_parabolic(lam), young_parabolic(mu)
    dbar = double_coset_rep(d, left, right)
    dplus = longest_double_coset_elt(dbar, left, right)
    shift = right.longest_element().length() - dplus.length()
    terms: dict[tuple, dict] = {}
    for u in _bruhat_lower(dplus):
        z = double_coset_rep(u, left, right)
        if longest_double_coset_elt(z, left, right) != u:
            continue  # u is not the top of its own coset
        p = table.extended(u, dplus)
        if p:
            terms[(lam.parts, mu.parts, z.window)] = dict(p.shift(shift).raw())
    return SchurElement._raw(lam.n, lam.r, terms)


# ---------------------------------------------------------------------------
# q-tensor space


class QTensorElement:
    """An element of the omega column: a combination of basis terms
    x_lambda T_d with d distinguished for the Young parabolic of lambda."""

    __slots__ = ("n", "r", "_terms")

    def __init__(self, n: int, r: int):
        self.n = int(n)
        self.r = int(r)
        self._terms: dict[tuple, dict[int, int]] = {}

    @classmethod
    def _raw(cls, n: int, r: int, terms: dict) -> "QTensorElement":
        out = object.__new__(cls)
        out.n = n
        out.r = r
        out._terms = terms
        return out

    @classmethod
    def zero(cls, n: int, r: int) -> "QTensorElement":
        return cls._raw(n, r, {})

    @classmethod
    def basis(cls, lam: Weight, d: WindowPerm) -> "QTensorElement":
        """x_lambda T_d; a parabolic part of d is absorbed as a power of q."""
        u, dd = coset_decompose(d, young_parabolic(lam))
        return cls._raw(
            lam.n, lam.r, {(lam.parts, dd.window): {2 * u.length(): 1}}
        )

    def __add__(self, other: "QTensorElement") -> "QTensorElement":
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("shape mismatch")
        out = {k: dict(c) for k, c in self._terms.items()}
        for k, c in other._terms.items():
            acc = out.setdefault(k, {})
            kernels.lp_add_into(acc, c)
            if not acc:
                del out[k]
        return QTensorElement._raw(self.n, self.r, out)

    def __sub__(self, other: "QTensorElement") -> "QTensorElement":
        return self + other.scale(-1)

    def scale(self, c: "Laurent | int") -> "QTensorElement":
        raw = {0: c} if isinstance(c, int) else c.raw()
        if not raw or raw == {0: 0}:
            return QTensorElement.zero(self.n, self.r)
        return QTensorElement._raw(
            self.n, self.r, {k: kernels.lp_mul(t, raw) for k, t in self._terms.items()}
        )

    def coeff(self, lam: Weight, d: WindowPerm) -> Laurent:
        return Laurent(self._terms.get((lam.parts, d.window), {}))

    def items(self) -> list[tuple[Weight, WindowPerm, Laurent]]:
        out = []
        for key in sorted(self._terms, key=lambda k: (k[0], kernels.win_length(k[1]), k[1])):
            lp, dw = key
            out.append(
                (Weight(self.n, self.r, lp), WindowPerm._unsafe(dw), Laurent(self._terms[key]))
            )
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QTensorElement):
            return NotImplemented
        return (self.n, self.r, self._terms) == (other.n, other.r, other._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return f"QTensorElement.zero({self.n}, {self.r})"
        return " + ".join(
            f"({c})*x{list(lam.parts)}T{list(d.window)}" for lam, d, c in self.items()
        )

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "terms": [
                {"lambda": list(lam.parts), "d": {"window": list(d.window)}, "coeff": c.to_obj()}
                for lam, d, c in self.items()
            ],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "QTensorElement":
        if (
            not isinstance(obj, Mapping)
            or "n" not in obj
            or "r" not in obj
            or "terms" not in obj
        ):
            raise ValueError(f"malformed q-tensor element: {obj!r}")
        n, r = int(obj["n"]), int(obj["r"])
        total = cls.zero(n, r)
        for entry in obj["terms"]:
            if not isinstance(entry, Mapping) or not {"lambda", "d", "coeff"} <= set(entry):
                raise ValueError(f"malformed q-tensor term: {entry!r}")
            lam = Weight(n, r, entry["lambda"])
            d = WindowPerm.from_obj({"r": r, **dict(entry["d"])})
            c = Laurent.from_obj(entry["coeff"])
            total = total + cls.basis(lam, d).scale(c)
        return total


def act_schur_left(s: SchurElement, x: QTensorElement) -> QTensorElement:
    """Left action through the identification x_lambda T_d = phi^d_{lam,omega}."""
    if (s.n, s.r) != (x.n, x.r):
        raise ValueError("shape mismatch")
    n, r = x.n, x.r
    values: dict[tuple, HeckeElement] = {}
    for (l2, dwin), c2 in x._terms.items():
        d2 = WindowPerm._unsafe(dwin)
        for (l1, m1, d1), c1 in s._terms.items():
            if m1 != l2:
                continue
            part = (
                _phi_value_cached(r, l1, m1, d1)
                .mul_t_right(d2)
                .scale(Laurent(c1) * Laurent(c2))
            )
            values[l1] = values.get(l1, HeckeElement.zero(r)) + part
    out: dict[tuple, dict] = {}
    for l1, h in values.items():
        if not h:
            continue
        coords = _extract_right_factor(h, young_subgroup_of_key(l1, r))
        for dwin, c in coords.items():
            if c:
                out[(l1, dwin)] = dict(c.raw())
    return QTensorElement._raw(n, r, out)


def act_hecke_right(x: QTensorElement, h: HeckeElement) -> QTensorElement:
    """Right action: multiply each x_lambda T_d by h and re-expand."""
    if x.r != h.r:
        raise ValueError("rank mismatch")
    n, r = x.n, x.r
    values: dict[tuple, HeckeElement] = {}
    for (lp, dwin), c in x._terms.items():
        part = (
            x_lambda(young_subgroup_of_key(lp, r))
            .mul_t_right(WindowPerm._unsafe(dwin))
            .scale(Laurent(c))
            * h
        )
        values[lp] = values.get(lp, HeckeElement.zero(r)) + part
    out: dict[tuple, dict] = {}
    for lp, val in values.items():
        if not val:
            continue
        coords = _extract_right_factor(val, young_subgroup_of_key(lp, r))
        for dwin, c in coords.items():
            if c:
                out[(lp, dwin)] = dict(c.raw())
    return QTensorElement._raw(n, r, out)
