"""The quantum loop algebra of gl_n, tensor space, and the duality maps.

Elements of the algebra are free words in E_i, F_i, K_i^{+-1}, R^{+-1};
no symbolic rewriting is attempted, and every identity is checked through
the action on tensor space.  Tensor space has basis indexed by r-tuples of
arbitrary integers; all operators here are finitary on basis vectors, so
the arithmetic stays exact and truncation windows appear only in global
assertions (injectivity, commutants), always as explicit parameters.

The bridge objects: tau turns Hecke elements into left operators on the
top weight space, kappa turns Schur elements into operators on all of
tensor space, theta_iso matches the q-tensor bimodule with tensor space,
and hecke_right_action gives the right Hecke structure via the rewriting
of elements into translation form.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from affineschur._backend import kernels
from affineschur.hecke import (
    HeckeElement,
    commute_gen_past_translations,
    t_basis,
    to_bernstein_basis,
)
from affineschur.laurent import Laurent
from affineschur.schur import (
    QTensorElement,
    SchurElement,
    Weight,
    act_schur_left,
    omega,
    phi,
    young_parabolic,
)
from affineschur.weyl import WindowPerm

__all__ = [
    "GeneratorWord",
    "UElement",
    "TensorVector",
    "TensorOperator",
    "act_V",
    "act_tensor",
    "counit",
    "antipode",
    "y_op",
    "weight_of",
    "project_weight",
    "e_omega",
    "tau",
    "finite_hecke_right_action",
    "hecke_right_action",
    "theta_iso",
    "theta_iso_basis",
    "theta_iso_inverse",
    "kappa",
    "kappa_exponents",
    "verify_hopf",
    "verify_affine_duality",
]

_KINDS = ("E", "F", "K", "Kinv", "R", "Rinv")
_INDEXED = {"E", "F", "K", "Kinv"}
# v - v^-1, the denominator of the E-F commutator
_VV = {1: 1, -1: -1}


def _next(i: int, n: int) -> int:
    return i % n + 1


class GeneratorWord:
    """A word in the generator alphabet; letters are (kind, index) pairs
    with kind in E/F/K/Kinv/R/Rinv and index in 1..n (0 for the R's)."""

    __slots__ = ("n", "letters")

    def __init__(self, n: int, letters: Iterable[tuple[str, int]]):
        if n < 1:
            raise ValueError("n must be positive")
        out = []
        for kind, i in letters:
            if kind not in _KINDS:
                raise ValueError(f"unknown generator kind {kind!r}")
            if kind in _INDEXED:
                if not 1 <= i <= n:
                    raise ValueError(f"index {i} out of range 1..{n}")
                out.append((kind, int(i)))
            else:
                out.append((kind, 0))
        self.n = n
        self.letters = tuple(out)

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        if self.n != other.n:
            raise ValueError("alphabet mismatch")
        return GeneratorWord(self.n, self.letters + other.letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorWord):
            return NotImplemented
        return (self.n, self.letters) == (other.n, other.letters)

    def __hash__(self) -> int:
        return hash((self.n, self.letters))

    def __repr__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(k if k in ("R", "Rinv") else f"{k}{i}" for k, i in self.letters)


class UElement:
    """A finite Laurent combination of generator words."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[GeneratorWord, Laurent] | None = None):
        self.n = int(n)
        raw: dict[tuple, dict[int, int]] = {}
        if terms:
            for w, c in terms.items():
                if w.n != self.n:
                    raise ValueError("alphabet mismatch among terms")
                if c:
                    raw[w.letters] = dict(c.raw())
        self._terms = raw

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "UElement":
        out = object.__new__(cls)
        out.n = n
        out._terms = terms
        return out

    @classmethod
    def one(cls, n: int) -> "UElement":
        return cls._raw(n, {(): {0: 1}})

    @classmethod
    def from_word(cls, word: GeneratorWord) -> "UElement":
        return cls._raw(word.n, {word.letters: {0: 1}})

    @classmethod
    def E(cls, n: int, i: int) -> "UElement":
        return cls.from_word(GeneratorWord(n, [("E", i)]))

    @classmethod
    def F(cls, n: int, i: int) -> "UElement":
        return cls.from_word(GeneratorWord(n, [("F", i)]))

    @classmethod
    def K(cls, n: int, i: int) -> "UElement":
        return cls.from_word(GeneratorWord(n, [("K", i)]))

    @classmethod
    def K_inv(cls, n: int, i: int) -> "UElement":
        return cls.from_word(GeneratorWord(n, [("Kinv", i)]))

    @classmethod
    def R(cls, n: int) -> "UElement":
        return cls.from_word(GeneratorWord(n, [("R", 0)]))

    @classmethod
    def R_inv(cls, n: int) -> "UElement":
        return cls.from_word(GeneratorWord(n, [("Rinv", 0)]))

    def __add__(self, other: "UElement") -> "UElement":
        if self.n != other.n:
            raise ValueError("alphabet mismatch")
        out = {w: dict(c) for w, c in self._terms.items()}
        for w, c in other._terms.items():
            acc = out.setdefault(w, {})
            kernels.lp_add_into(acc, c)
            if not acc:
                del out[w]
        return UElement._raw(self.n, out)

    def __sub__(self, other: "UElement") -> "UElement":
        return self + (-other)

    def __neg__(self) -> "UElement":
        return UElement._raw(self.n, {w: kernels.lp_neg(c) for w, c in self._terms.items()})

    def scale(self, c: "Laurent | int") -> "UElement":
        raw = {0: c} if isinstance(c, int) else c.raw()
        if not raw or raw == {0: 0}:
            return UElement._raw(self.n, {})
        return UElement._raw(self.n, {w: kernels.lp_mul(t, raw) for w, t in self._terms.items()})

    def __mul__(self, other: "UElement | Laurent | int") -> "UElement":
        if isinstance(other, (Laurent, int)):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError("alphabet mismatch")
        out: dict[tuple, dict[int, int]] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                acc = out.setdefault(w1 + w2, {})
                kernels.lp_add_into(acc, kernels.lp_mul(c1, c2))
                if not acc:
                    del out[w1 + w2]
        return UElement._raw(self.n, out)

    def __rmul__(self, other: "Laurent | int") -> "UElement":
        if isinstance(other, (Laurent, int)):
            return self.scale(other)
        return NotImplemented

    def items(self) -> list[tuple[GeneratorWord, Laurent]]:
        out = []
        for letters in sorted(self._terms, key=lambda w: (len(w), w)):
            out.append((GeneratorWord(self.n, letters), Laurent(self._terms[letters])))
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UElement):
            return NotImplemented
        return (self.n, self._terms) == (other.n, other._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return f"UElement({self.n})"
        return " + ".join(f"({c})*{w}" for w, c in self.items())

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"word": [[k, i] for k, i in w.letters], "coeff": c.to_obj()}
                for w, c in self.items()
            ],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "UElement":
        if not isinstance(obj, Mapping) or "n" not in obj or "terms" not in obj:
            raise ValueError(f"malformed algebra element: {obj!r}")
        n = int(obj["n"])
        total = cls._raw(n, {})
        for entry in obj["terms"]:
            if not isinstance(entry, Mapping) or not {"word", "coeff"} <= set(entry):
                raise ValueError(f"malformed term: {entry!r}")
            word = GeneratorWord(n, [(k, int(i)) for k, i in entry["word"]])
            total = total + cls.from_word(word).scale(Laurent.from_obj(entry["coeff"]))
        return total


class TensorVector:
    """A finite combination of pure tensors e_{j1} x ... x e_{jr}, keys
    being r-tuples of arbitrary integers."""

    __slots__ = ("n", "r", "_terms")

    def __init__(self, n: int, r: int, terms: Mapping[Sequence[int], Laurent] | None = None):
        if n < 1 or r < 1:
            raise ValueError("n and r must be positive")
        self.n = int(n)
        self.r = int(r)
        raw: dict[tuple, dict[int, int]] = {}
        if terms:
            for key, c in terms.items():
                key = tuple(int(t) for t in key)
                if len(key) != self.r:
                    raise ValueError(f"key {key} does not have length r={self.r}")
                if c:
                    raw[key] = dict(c.raw())
        self._terms = raw

    @classmethod
    def _raw(cls, n: int, r: int, terms: dict) -> "TensorVector":
        out = object.__new__(cls)
        out.n = n
        out.r = r
        out._terms = terms
        return out

    @classmethod
    def zero(cls, n: int, r: int) -> "TensorVector":
        return cls._raw(n, r, {})

    @classmethod
    def unit(cls, n: int, key: Sequence[int]) -> "TensorVector":
        key = tuple(int(t) for t in key)
        return cls._raw(n, len(key), {key: {0: 1}})

    def __add__(self, other: "TensorVector") -> "TensorVector":
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("shape mismatch")
        out = {k: dict(c) for k, c in self._terms.items()}
        for k, c in other._terms.items():
            acc = out.setdefault(k, {})
            kernels.lp_add_into(acc, c)
            if not acc:
                del out[k]
        return TensorVector._raw(self.n, self.r, out)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def __neg__(self) -> "TensorVector":
        return TensorVector._raw(self.n, self.r, {k: kernels.lp_neg(c) for k, c in self._terms.items()})

    def scale(self, c: "Laurent | int") -> "TensorVector":
        raw = {0: c} if isinstance(c, int) else c.raw()
        if not raw or raw == {0: 0}:
            return TensorVector.zero(self.n, self.r)
        return TensorVector._raw(
            self.n, self.r, {k: kernels.lp_mul(t, raw) for k, t in self._terms.items()}
        )

    def coeff(self, key: Sequence[int]) -> Laurent:
        return Laurent(self._terms.get(tuple(key), {}))

    def items(self) -> list[tuple[tuple[int, ...], Laurent]]:
        return [(k, Laurent(self._terms[k])) for k in sorted(self._terms)]

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return (self.n, self.r, self._terms) == (other.n, other.r, other._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return f"TensorVector.zero({self.n}, {self.r})"
        return " + ".join(f"({c})*e{list(k)}" for k, c in self.items())

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "terms": [{"key": list(k), "coeff": c.to_obj()} for k, c in self.items()],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "TensorVector":
        if (
            not isinstance(obj, Mapping)
            or "n" not in obj
            or "r" not in obj
            or "terms" not in obj
        ):
            raise ValueError(f"malformed tensor vector: {obj!r}")
        n, r = int(obj["n"]), int(obj["r"])
        total = cls.zero(n, r)
        for entry in obj["terms"]:
            if not isinstance(entry, Mapping) or not {"key", "coeff"} <= set(entry):
                raise ValueError(f"malformed tensor term: {entry!r}")
            key = tuple(int(t) for t in entry["key"])
            if len(key) != r:
                raise ValueError(f"key {key} does not have length r={r}")
            total = total + cls.unit(n, key).scale(Laurent.from_obj(entry["coeff"]))
        return total


def e_omega(n: int, r: int) -> TensorVector:
    """The cyclic vector e_1 x e_2 x ... x e_r; needs n >= r."""
    if n < r:
        raise ValueError(f"need n >= r, got n={n}, r={r}")
    return TensorVector.unit(n, tuple(range(1, r + 1)))


class TensorOperator:
    """A linear endomorphism of tensor space, given by its (finitary)
    values on basis keys."""

    __slots__ = ("n", "r", "_fn")

    def __init__(self, n: int, r: int, fn: Callable[[tuple[int, ...]], TensorVector]):
        self.n = int(n)
        self.r = int(r)
        self._fn = fn

    @classmethod
    def identity(cls, n: int, r: int) -> "TensorOperator":
        return cls(n, r, lambda key: TensorVector.unit(n, key))

    def on_key(self, key: Sequence[int]) -> TensorVector:
        return self._fn(tuple(int(t) for t in key))

    def __call__(self, x: TensorVector) -> TensorVector:
        if (x.n, x.r) != (self.n, self.r):
            raise ValueError("shape mismatch")
        total = TensorVector.zero(self.n, self.r)
        for key, c in x._terms.items():
            total = total + self._fn(key).scale(Laurent(c))
        return total

    def compose(self, other: "TensorOperator") -> "TensorOperator":
        """self after other."""
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("shape mismatch")
        return TensorOperator(self.n, self.r, lambda key: self(other._fn(key)))

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("shape mismatch")
        return TensorOperator(self.n, self.r, lambda key: self._fn(key) + other._fn(key))

    def scale(self, c: "Laurent | int") -> "TensorOperator":
        return TensorOperator(self.n, self.r, lambda key: self._fn(key).scale(c))


# ---------------------------------------------------------------------------
# Actions


def _apply_letter(terms: dict, letter: tuple[str, int], n: int) -> dict:
    kind, i = letter
    if kind == "E":
        return kernels.tensor_act_E(terms, i, n)
    if kind == "F":
        return kernels.tensor_act_F(terms, i, n)
    if kind == "K":
        return kernels.tensor_act_K(terms, i, n, False)
    if kind == "Kinv":
        return kernels.tensor_act_K(terms, i, n, True)
    if kind == "R":
        return kernels.tensor_act_R(terms, False)
    return kernels.tensor_act_R(terms, True)


def _act_word(letters: tuple, terms: dict, n: int) -> dict:
    # a product acts with its rightmost factor first
    for letter in reversed(letters):
        if not terms:
            break
        terms = _apply_letter(terms, letter, n)
    return terms


def act_V(n: int, letter: tuple[str, int], t: int) -> TensorVector:
    """A single generator letter applied to e_t in the natural module."""
    word = GeneratorWord(n, [letter])
    return TensorVector._raw(n, 1, _act_word(word.letters, {(int(t),): {0: 1}}, n))


def act_tensor(u: UElement, x: TensorVector) -> TensorVector:
    """u applied to x through the iterated coproduct."""
    if u.n != x.n:
        raise ValueError("alphabet mismatch")
    out: dict[tuple, dict[int, int]] = {}
    for letters, cw in u._terms.items():
        part = _act_word(letters, x._terms, x.n)
        for key, c in part.items():
            acc = out.setdefault(key, {})
            kernels.lp_add_into(acc, kernels.lp_mul(c, cw))
            if not acc:
                del out[key]
    return TensorVector._raw(x.n, x.r, out)


def counit(u: UElement) -> Laurent:
    """Kills E and F, sends the grouplike letters to 1."""
    total = Laurent.zero()
    for letters, c in u._terms.items():
        if all(kind not in ("E", "F") for kind, _ in letters):
            total = total + Laurent(c)
    return total


_ANTIPODE_TABLE = {
    "E": lambda n, i: UElement.E(n, i) * UElement.K_inv(n, i) * UElement.K(n, _next(i, n)) * -1,
    "F": lambda n, i: UElement.K(n, i) * UElement.K_inv(n, _next(i, n)) * UElement.F(n, i) * -1,
    "K": lambda n, i: UElement.K_inv(n, i),
    "Kinv": lambda n, i: UElement.K(n, i),
    "R": lambda n, i: UElement.R_inv(n),
    "Rinv": lambda n, i: UElement.R(n),
}


def antipode(u: UElement) -> UElement:
    """The antihomomorphism S; reverses words and maps letters by the
    standard table."""
    total = UElement._raw(u.n, {})
    for letters, c in u._terms.items():
        part = UElement.one(u.n)
        for kind, i in reversed(letters):
            part = part * _ANTIPODE_TABLE[kind](u.n, i)
        total = total + part.scale(Laurent(c))
    return total


def _coproduct(letter: tuple[str, int], n: int) -> list[tuple[tuple, tuple, int]]:
    """Delta of a letter as (left word, right word, integer coeff) triples."""
    kind, i = letter
    if kind == "E":
        return [
            ((letter,), (("K", i), ("Kinv", _next(i, n))), 1),
            ((), (letter,), 1),
        ]
    if kind == "F":
        return [
            ((("Kinv", i), ("K", _next(i, n))), (letter,), 1),
            ((letter,), (), 1),
        ]
    # grouplikes
    return [((letter,), (letter,), 1)]


def y_op(n: int, r: int, t: int) -> TensorOperator:
    """The commuting endomorphism shifting index t down by one period."""
    if not 1 <= t <= r:
        raise ValueError(f"slot {t} out of range 1..{r}")
    return TensorOperator(
        n, r, lambda key: TensorVector._raw(n, r, kernels.tensor_shift_slot({key: {0: 1}}, t - 1, -n))
    )


def weight_of(key: Sequence[int], n: int) -> Weight:
    """Residue counts of the key mod n."""
    return Weight.of_key(tuple(key), n)


def project_weight(x: TensorVector, lam: Weight) -> TensorVector:
    """Keep the keys whose residue counts equal lam."""
    if lam.n != x.n or lam.r != x.r:
        raise ValueError("shape mismatch")
    out = {k: dict(c) for k, c in x._terms.items() if Weight.of_key(k, x.n).parts == lam.parts}
    return TensorVector._raw(x.n, x.r, out)


# ---------------------------------------------------------------------------
# tau: the Hecke algebra as left operators on the top weight space


def _tau_sigma_terms(terms: dict, n: int, i: int) -> dict:
    # v F_i E_i - 1
    part = kernels.tensor_act_F(kernels.tensor_act_E(terms, i, n), i, n)
    out = {k: kernels.lp_shift(c, 1) for k, c in part.items()}
    for k, c in terms.items():
        acc = out.setdefault(k, {})
        kernels.lp_add_into(acc, kernels.lp_neg(c))
        if not acc:
            del out[k]
    return out


def _tau_rho_terms(terms: dict, n: int, r: int, inverse: bool) -> dict:
    if not inverse:
        # E_r E_{r+1} ... E_{n-1} R^-1, empty E-product when n = r
        terms = kernels.tensor_act_R(terms, True)
        for j in range(n - 1, r - 1, -1):
            terms = kernels.tensor_act_E(terms, j, n)
        return terms
    # F_n F_{n-1} ... F_{r+1} R
    terms = kernels.tensor_act_R(terms, False)
    for j in range(r + 1, n + 1):
        terms = kernels.tensor_act_F(terms, j, n)
    return terms


def tau(n: int, r: int, w: WindowPerm) -> TensorOperator:
    """The left operator of T_w on tensor space; Hecke relations hold on
    the top weight space.  Needs n >= r."""
    if n < r:
        raise ValueError(f"tau needs n >= r, got n={n}, r={r}")
    if w.r != r:
        raise ValueError("rank mismatch")
    z, word = w.reduced_word()

    def fn(key: tuple[int, ...]) -> TensorVector:
        terms = {key: {0: 1}}
        for i in reversed(word):
            terms = _tau_sigma_terms(terms, n, i)
        for _ in range(abs(z)):
            terms = _tau_rho_terms(terms, n, r, inverse=z < 0)
        return TensorVector._raw(n, r, terms)

    return TensorOperator(n, r, fn)


# ---------------------------------------------------------------------------
# The right Hecke action


def finite_hecke_right_action(x: TensorVector, i: int) -> TensorVector:
    """Right T_{s_i} on keys within 1..n (the finite tensor module)."""
    n, r = x.n, x.r
    if not 1 <= i <= r - 1:
        raise ValueError(f"generator index {i} out of range 1..{r - 1}")
    out: dict[tuple, dict[int, int]] = {}

    def addmul(key, c, extra):
        acc = out.setdefault(key, {})
        kernels.lp_add_into(acc, kernels.lp_mul(c, extra))
        if not acc:
            del out[key]

    for key, c in x._terms.items():
        if any(not 1 <= t <= n for t in key):
            raise ValueError(f"key {key} leaves the range 1..{n}")
        a, b = key[i - 1], key[i]
        swapped = key[: i - 1] + (b, a) + key[i + 1 :]
        if a == b:
            addmul(key, c, {2: 1})
        elif a < b:
            addmul(swapped, c, {1: 1})
        else:
            addmul(swapped, c, {1: 1})
            addmul(key, c, {2: 1, 0: -1})
    return TensorVector._raw(n, r, out)


def _act_sigma_terms(terms: dict, i: int, n: int, r: int) -> dict:
    """Right T_{s_i} on arbitrary keys: peel the translation part off the
    two active slots, commute it past the generator, act finitely, restore."""
    out: dict[tuple, dict[int, int]] = {}
    for key, c in terms.items():
        cvec = tuple((t - 1) // n for t in key)
        base = tuple(t - n * q for t, q in zip(key, cvec))
        a, b = -cvec[i - 1], -cvec[i]
        for carries, da, db, coeff in commute_gen_past_translations(a, b):
            frozen = {base: kernels.lp_mul(c, coeff.raw())}
            acted = finite_hecke_right_action(TensorVector._raw(n, r, frozen), i)._terms if carries else frozen
            for k2, c2 in acted.items():
                nk = list(k2)
                for t in range(r):
                    if t not in (i - 1, i):
                        nk[t] += n * cvec[t]
                nk[i - 1] -= n * da
                nk[i] -= n * db
                nk = tuple(nk)
                acc = out.setdefault(nk, {})
                kernels.lp_add_into(acc, c2)
                if not acc:
                    del out[nk]
    return out


def _bernstein_assoc(h: HeckeElement) -> tuple:
    """h rewritten as (cvec, finite word, raw coeff) rows, ready to act."""
    rows = []
    for (cvec, u), coeff in to_bernstein_basis(h).items():
        z, word = u.reduced_word()
        assert z == 0, "translation form must have a finite tail"
        rows.append((cvec, word, coeff.raw()))
    return tuple(rows)


def _apply_assoc(x: TensorVector, assoc: tuple) -> TensorVector:
    n, r = x.n, x.r
    out: dict[tuple, dict[int, int]] = {}
    for cvec, word, raw in assoc:
        terms = x._terms
        for t, ct in enumerate(cvec):
            if ct and terms:
                terms = kernels.tensor_shift_slot(terms, t, -n * ct)
        for i in word:
            if not terms:
                break
            terms = _act_sigma_terms(terms, i, n, r)
        for key, c in terms.items():
            acc = out.setdefault(key, {})
            kernels.lp_add_into(acc, kernels.lp_mul(c, raw))
            if not acc:
                del out[key]
    return TensorVector._raw(n, r, out)


def hecke_right_action(x: TensorVector, h: HeckeElement) -> TensorVector:
    """The right action of the whole Hecke algebra, through the rewriting
    of h into translation-times-finite form.  Needs n >= r."""
    if x.n < x.r:
        raise ValueError(f"right action needs n >= r, got n={x.n}, r={x.r}")
    if h.r != x.r:
        raise ValueError("rank mismatch")
    return _apply_assoc(x, _bernstein_assoc(h))


# ---------------------------------------------------------------------------
# kappa and the tensor-space isomorphism


@lru_cache(maxsize=None)
def _finite_image(n: int, r: int, lparts: tuple, dwin: tuple) -> TensorVector:
    """The transported basis vector for x_lambda T_d: the normalization
    sends the weakly increasing key of lambda to x_lambda exactly."""
    lam = Weight(n, r, lparts)
    vec = TensorVector.unit(n, lam.expanded())
    _, word = WindowPerm._unsafe(dwin).reduced_word()
    for i in word:
        vec = finite_hecke_right_action(vec, i)
    return vec


@lru_cache(maxsize=None)
def _finite_expansion(n: int, r: int, key: tuple) -> tuple:
    """e_key as a combination of transported basis vectors (finite keys);
    returns ((lparts, dwin, Laurent), ...)."""
    lam = Weight.of_key(key, n)
    pi = young_parabolic(lam)
    block = sorted(
        (d.window for d in _finite_distinguished(r, pi.generators)),
        key=lambda w: (kernels.win_length(w), w),
    )
    columns = [_finite_image(n, r, lam.parts, dw) for dw in block]
    coords = _solve_exact(columns, TensorVector.unit(n, key))
    return tuple(
        (lam.parts, dw, c) for dw, c in zip(block, coords) if c
    )


@lru_cache(maxsize=None)
def _finite_distinguished(r: int, gens: frozenset) -> tuple[WindowPerm, ...]:
    from affineschur.weyl import is_distinguished, ParabolicIndex

    pi = ParabolicIndex(r, gens)
    out = [
        w
        for p in itertools.permutations(range(1, r + 1))
        for w in [WindowPerm(p)]
        if is_distinguished(w, pi)
    ]
    return tuple(sorted(out, key=lambda w: (w.length(), w.window)))


def _solve_exact(columns: list[TensorVector], target: TensorVector) -> list[Laurent]:
    """Solve sum(c_k * columns[k]) = target exactly over Laurent
    coefficients; fraction-free elimination, errors if no Laurent solution."""
    keys = sorted({k for col in columns for k in col._terms} | set(target._terms))
    rows = [[col.coeff(k) for col in columns] + [target.coeff(k)] for k in keys]
    ncols = len(columns)
    piv_rows: list[int] = []
    prev = Laurent.one()
    for c in range(ncols):
        sel = None
        for ri in range(len(rows)):
            if ri not in piv_rows and rows[ri][c]:
                sel = ri
                break
        if sel is None:
            raise ValueError("columns are dependent; cannot invert")
        piv_rows.append(sel)
        pivot = rows[sel][c]
        for ri in range(len(rows)):
            if ri == sel or not any(rows[ri][c2] for c2 in range(c, ncols + 1)):
                continue
            if ri in piv_rows:
                continue
            factor = rows[ri][c]
            rows[ri] = [
                (pivot * rows[ri][c2] - factor * rows[sel][c2]).divexact(prev)
                for c2 in range(ncols + 1)
            ]
        prev = pivot
    for ri in range(len(rows)):
        if ri not in piv_rows and rows[ri][ncols]:
            raise ValueError("target is not in the span")
    # back substitution on the triangularized pivot rows
    sol: list[Laurent] = [Laurent.zero()] * ncols
    for c in range(ncols - 1, -1, -1):
        row = rows[piv_rows[c]]
        acc = row[ncols]
        for c2 in range(c + 1, ncols):
            acc = acc - row[c2] * sol[c2]
        sol[c] = acc.divexact(row[c])
    return sol


def _poincare_of_conjugated(d: WindowPerm, left, right) -> Laurent:
    """Sum of q^l(u) over u in the right parabolic with d u d^-1 in the left."""
    left_windows = {x.window for x in left.elements()}
    total = Laurent.zero()
    dinv = d.inverse()
    for u in right.elements():
        if (d * u * dinv).window in left_windows:
            total = total + Laurent.v(2 * u.length())
    return total


def _term_operator(n: int, r: int, lparts: tuple, mparts: tuple, dwin: tuple) -> TensorOperator:
    lam = Weight(n, r, lparts)
    mu = Weight(n, r, mparts)
    d = WindowPerm._unsafe(dwin)
    om = omega(n, r)
    if all(1 <= t <= r for t in dwin):
        # finite d: transport the finite module structure, extend by the
        # commuting translation operators
        g = phi(lam, mu, d)

        def fn(key: tuple[int, ...]) -> TensorVector:
            cvec = tuple((t - 1) // n for t in key)
            base = tuple(t - n * q for t, q in zip(key, cvec))
            total = TensorVector.zero(n, r)
            for lp2, dw2, c in _finite_expansion(n, r, base):
                if lp2 != mparts:
                    continue
                moved = act_schur_left(
                    g, QTensorElement.basis(Weight(n, r, lp2), WindowPerm._unsafe(dw2))
                )
                for lam3, d3, c3 in moved.items():
                    total = total + _finite_image(n, r, lam3.parts, d3.window).scale(c * c3)
            if total.is_zero():
                return total
            terms = total._terms
            for t, ct in enumerate(cvec):
                if ct:
                    terms = kernels.tensor_shift_slot(terms, t, n * ct)
            return TensorVector._raw(n, r, terms)

        return TensorOperator(n, r, fn)

    # affine d: route through the top weight space and divide by the
    # Poincare factor of the sandwich identity
    pnu = _poincare_of_conjugated(d, young_parabolic(lam), young_parabolic(mu))
    merge = _term_operator(n, r, lparts, om.parts, WindowPerm.identity(r).window)
    split = _term_operator(n, r, om.parts, mparts, WindowPerm.identity(r).window)
    middle = tau(n, r, d)
    omega_proj = om

    def fn(key: tuple[int, ...]) -> TensorVector:
        part = split.on_key(key)
        part = project_weight(part, omega_proj)
        part = middle(part)
        part = merge(part)
        if part.is_zero():
            return part
        out = {}
        for k2, c2 in part._terms.items():
            out[k2] = Laurent(c2).divexact(pnu).raw()
        return TensorVector._raw(n, r, out)

    return TensorOperator(n, r, fn)


def kappa(s: SchurElement) -> TensorOperator:
    """The Schur algebra as operators on tensor space; needs n >= r."""
    n, r = s.n, s.r
    if n < r:
        raise ValueError(f"kappa needs n >= r, got n={n}, r={r}")
    parts = [(key, Laurent(c)) for key, c in s._terms.items()]

    def fn(key: tuple[int, ...]) -> TensorVector:
        total = TensorVector.zero(n, r)
        for (lp, mp, dw), c in parts:
            total = total + _term_operator(n, r, lp, mp, dw).on_key(key).scale(c)
        return total

    return TensorOperator(n, r, fn)


def kappa_exponents(n: int, r: int, lam: Weight) -> tuple[int, int]:
    """The observed normalization exponents (f, g): f from the merge map on
    the cyclic vector, g from the split map on the increasing key."""
    om = omega(n, r)
    merge = kappa(phi(lam, om, WindowPerm.identity(r)))
    vec = merge(e_omega(n, r))
    if len(vec) != 1:
        raise ValueError("merge map did not produce a single basis vector")
    [(key, c)] = vec.items()
    terms = sorted(c.items())
    if len(terms) != 1 or terms[0][1] != 1:
        raise ValueError(f"merge coefficient {c} is not a power of v")
    wl = young_parabolic(lam).longest_element().length()
    f = terms[0][0] - 2 * wl
    split = kappa(phi(om, lam, WindowPerm.identity(r)))
    vec = split(TensorVector.unit(n, lam.expanded()))
    base = vec.coeff(tuple(range(1, r + 1)))
    gterms = sorted(base.items())
    if len(gterms) != 1 or gterms[0][1] != 1:
        raise ValueError(f"split base coefficient {base} is not a power of v")
    g = gterms[0][0]
    return f, g


def theta_iso(x: QTensorElement) -> TensorVector:
    """The bimodule identification: the omega row goes to the orbit of the
    cyclic vector, other rows through kappa."""
    n, r = x.n, x.r
    om = omega(n, r)
    total = TensorVector.zero(n, r)
    base = e_omega(n, r)
    for (lp, dw), c in x._terms.items():
        cl = Laurent(c)
        if lp == om.parts:
            total = total + hecke_right_action(base, t_basis(WindowPerm._unsafe(dw))).scale(cl)
        else:
            total = total + _term_operator(n, r, lp, om.parts, dw).on_key(base.support()[0]).scale(cl)
    return total


def theta_iso_basis(n: int, r: int, len_bound: int, rho_bound: int) -> list[tuple[Weight, WindowPerm]]:
    """The q-tensor basis keys inside the truncation window, sorted."""
    from affineschur.weyl import enumerate_up_to_length, is_distinguished
    from affineschur.schur import all_weights

    keys = []
    pool = enumerate_up_to_length(r, len_bound, extended=True, rho_bound=rho_bound)
    for lam in all_weights(n, r):
        pi = young_parabolic(lam)
        for d in pool:
            if is_distinguished(d, pi):
                keys.append((lam, d))
    keys.sort(key=lambda t: (t[0].parts, t[1].length(), t[1].window))
    return keys


def theta_iso_inverse(
    y: TensorVector, len_bound: int, rho_bound: int = 1
) -> QTensorElement:
    """Invert theta_iso on the span of basis keys with d inside the given
    truncation; exact solve, errors if y is not in that span."""
    n, r = y.n, y.r
    keys = theta_iso_basis(n, r, len_bound, rho_bound)
    columns = [theta_iso(QTensorElement.basis(lam, d)) for lam, d in keys]
    coords = _solve_exact(columns, y)
    total = QTensorElement.zero(n, r)
    for (lam, d), c in zip(keys, coords):
        if c:
            total = total + QTensorElement.basis(lam, d).scale(c)
    return total


# ---------------------------------------------------------------------------
# Verification sweeps


def _vec_obj(terms: dict) -> list:
    return [[list(k), {str(e): c for e, c in sorted(v.items())}] for k, v in sorted(terms.items())]


def _op_check(name: str, lhs: TensorVector, rhs: TensorVector, key) -> tuple:
    if lhs == rhs:
        return (name, True, None)
    return (
        name,
        False,
        {"key": list(key), "lhs": _vec_obj(lhs._terms), "rhs": _vec_obj(rhs._terms)},
    )


def _first_failure(name: str, fails: list) -> tuple:
    if not fails:
        return (name, True, None)
    return (name, False, fails[0][2])


def _defining_relation_pairs(n: int):
    """(name, lhs word, rhs combination) for the word-vs-word relations."""
    U = UElement
    pairs = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            pairs.append((f"kk-commute-{i}-{j}", U.K(n, i) * U.K(n, j), U.K(n, j) * U.K(n, i)))
    for i in range(1, n + 1):
        pairs.append((f"k-inverse-{i}", U.K(n, i) * U.K_inv(n, i), U.one(n)))
        pairs.append((f"k-inverse-rev-{i}", U.K_inv(n, i) * U.K(n, i), U.one(n)))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            eps = (1 if i == j else 0) - (1 if i == _next(j, n) else 0)
            pairs.append(
                (
                    f"ke-twist-{i}-{j}",
                    U.K(n, i) * U.E(n, j),
                    (U.E(n, j) * U.K(n, i)).scale(Laurent.v(eps)),
                )
            )
            pairs.append(
                (
                    f"kf-twist-{i}-{j}",
                    U.K(n, i) * U.F(n, j),
                    (U.F(n, j) * U.K(n, i)).scale(Laurent.v(-eps)),
                )
            )
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            adjacent = j == _next(i, n) or i == _next(j, n)
            if i == j or adjacent:
                continue
            pairs.append((f"ee-commute-{i}-{j}", U.E(n, i) * U.E(n, j), U.E(n, j) * U.E(n, i)))
            pairs.append((f"ff-commute-{i}-{j}", U.F(n, i) * U.F(n, j), U.F(n, j) * U.F(n, i)))
    vpv = Laurent({1: 1, -1: 1})
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or not (j == _next(i, n) or i == _next(j, n)):
                continue
            e_i, e_j = U.E(n, i), U.E(n, j)
            pairs.append(
                (
                    f"e-serre-{i}-{j}",
                    e_i * e_i * e_j + e_j * e_i * e_i,
                    (e_i * e_j * e_i).scale(vpv),
                )
            )
            f_i, f_j = U.F(n, i), U.F(n, j)
            pairs.append(
                (
                    f"f-serre-{i}-{j}",
                    f_i * f_i * f_j + f_j * f_i * f_i,
                    (f_i * f_j * f_i).scale(vpv),
                )
            )
    pairs.append(("r-inverse", U.R(n) * U.R_inv(n), U.one(n)))
    pairs.append(("r-inverse-rev", U.R_inv(n) * U.R(n), U.one(n)))
    for i in range(1, n + 1):
        ip = _next(i, n)
        for tag, mk in (("e", U.E), ("f", U.F), ("k", U.K), ("kinv", U.K_inv)):
            pairs.append(
                (f"r-rotate-{tag}-{i}", U.R_inv(n) * mk(n, ip) * U.R(n), mk(n, i))
            )
    return pairs


def verify_hopf(n: int, r_max: int, window: Iterable[int]) -> list[tuple]:
    """Operator-level check of the defining relations, coassociativity,
    counit laws, and the antipode law; returns (name, ok, witness) rows."""
    window = sorted(set(int(t) for t in window))
    checks: list[tuple] = []
    pairs = _defining_relation_pairs(n)
    for k in range(1, r_max + 1):
        keyset = list(itertools.product(window, repeat=k))
        for name, lhs, rhs in pairs:
            fails = []
            for key in keyset:
                x = TensorVector.unit(n, key)
                got, want = act_tensor(lhs, x), act_tensor(rhs, x)
                if got != want:
                    fails.append(_op_check("", got, want, key))
            checks.append(_first_failure(f"def-rel-{name}-r{k}", fails))
        # relation (5): the E-F commutator against the quantum Cartan term
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                fails = []
                for key in keyset:
                    x = TensorVector.unit(n, key)
                    lhs = act_tensor(UElement.E(n, i) * UElement.F(n, j), x) - act_tensor(
                        UElement.F(n, j) * UElement.E(n, i), x
                    )
                    if i != j:
                        rhs = TensorVector.zero(n, k)
                    else:
                        num = act_tensor(
                            UElement.K(n, i) * UElement.K_inv(n, _next(i, n)), x
                        ) - act_tensor(UElement.K_inv(n, i) * UElement.K(n, _next(i, n)), x)
                        rhs = TensorVector._raw(
                            n,
                            k,
                            {
                                kk: Laurent(cc).divexact(Laurent(_VV)).raw()
                                for kk, cc in num._terms.items()
                            },
                        )
                    if lhs != rhs:
                        fails.append(_op_check("", lhs, rhs, key))
                checks.append(_first_failure(f"def-rel-ef-commutator-{i}-{j}-r{k}", fails))
    # coassociativity on three slots
    letters = (
        [("E", i) for i in range(1, n + 1)]
        + [("F", i) for i in range(1, n + 1)]
        + [("K", 1), ("Kinv", 1), ("R", 0), ("Rinv", 0)]
    )
    triple = list(itertools.product(window, repeat=3))
    for letter in letters:
        fails = []
        comps = _coproduct(letter, n)
        for key in triple:
            left = TensorVector.zero(n, 3)
            right = TensorVector.zero(n, 3)
            for aw, bw, coeff in comps:
                la = _act_word(aw, {key[:2]: {0: 1}}, n)
                lb = _act_word(bw, {key[2:]: {0: 1}}, n)
                for ka, ca in la.items():
                    for kb, cb in lb.items():
                        left = left + TensorVector._raw(
                            n, 3, {ka + kb: kernels.lp_mul(ca, cb)}
                        ).scale(coeff)
                ra = _act_word(aw, {key[:1]: {0: 1}}, n)
                rb = _act_word(bw, {key[1:]: {0: 1}}, n)
                for ka, ca in ra.items():
                    for kb, cb in rb.items():
                        right = right + TensorVector._raw(
                            n, 3, {ka + kb: kernels.lp_mul(ca, cb)}
                        ).scale(coeff)
            if left != right:
                fails.append(_op_check("", left, right, key))
        name = letter[0] if letter[0] in ("R", "Rinv") else f"{letter[0]}{letter[1]}"
        checks.append(_first_failure(f"coassoc-{name}", fails))
    # counit and antipode laws on the natural module
    for letter in letters:
        comps = _coproduct(letter, n)
        u = UElement.from_word(GeneratorWord(n, [letter]))
        fails_l, fails_r, fails_s = [], [], []
        for t in window:
            x = TensorVector.unit(n, (t,))
            direct = act_tensor(u, x)
            lhs_l = TensorVector.zero(n, 1)
            lhs_r = TensorVector.zero(n, 1)
            for aw, bw, coeff in comps:
                ua = UElement.from_word(GeneratorWord(n, aw))
                ub = UElement.from_word(GeneratorWord(n, bw))
                lhs_l = lhs_l + act_tensor(ub, x).scale(counit(ua)).scale(coeff)
                lhs_r = lhs_r + act_tensor(ua, x).scale(counit(ub)).scale(coeff)
            if lhs_l != direct:
                fails_l.append(_op_check("", lhs_l, direct, (t,)))
            if lhs_r != direct:
                fails_r.append(_op_check("", lhs_r, direct, (t,)))
            folded = UElement._raw(n, {})
            for aw, bw, coeff in comps:
                sa = antipode(UElement.from_word(GeneratorWord(n, aw)))
                folded = folded + (sa * UElement.from_word(GeneratorWord(n, bw))).scale(coeff)
            want = x.scale(counit(u))
            got = act_tensor(folded, x)
            if got != want:
                fails_s.append(_op_check("", got, want, (t,)))
        name = letter[0] if letter[0] in ("R", "Rinv") else f"{letter[0]}{letter[1]}"
        checks.append(_first_failure(f"counit-left-{name}", fails_l))
        checks.append(_first_failure(f"counit-right-{name}", fails_r))
        checks.append(_first_failure(f"antipode-{name}", fails_s))
    return sorted(checks, key=lambda c: c[0])


def verify_affine_duality(
    n: int, r: int, L: int, window: Iterable[int], seed: int = 20250825, samples: int = 30
) -> list[tuple]:
    """The two-sided structure at desk scale: commuting actions, tau
    injectivity, the translation presentation as right operators, Lemma-level
    conjugation identities, the bimodule identification, and kappa as an
    algebra map; returns (name, ok, witness) rows."""
    import random as _random

    from affineschur.hecke import bernstein_y, bernstein_y_inverse
    from affineschur.schur import all_weights
    from affineschur.weyl import enumerate_up_to_length

    if n < r:
        raise ValueError(f"duality checks need n >= r, got n={n}, r={r}")
    window = sorted(set(int(t) for t in window))
    keyset = list(itertools.product(window, repeat=r))
    checks: list[tuple] = []
    rng = _random.Random(seed)
    p = 46337

    ugens = (
        [UElement.E(n, i) for i in range(1, n + 1)]
        + [UElement.F(n, i) for i in range(1, n + 1)]
        + [UElement.K(n, i) for i in range(1, n + 1)]
        + [UElement.R(n), UElement.R_inv(n)]
    )
    hgens = [t_basis(WindowPerm.s(r, i)) for i in range(1, r)] + [
        t_basis(WindowPerm.rho(r)),
        t_basis(WindowPerm.rho(r, -1)),
    ]
    hassocs = [_bernstein_assoc(h) for h in hgens]
    right_cache = [
        {key: _apply_assoc(TensorVector.unit(n, key), assoc) for key in keyset}
        for assoc in hassocs
    ]
    for gi, g in enumerate(ugens):
        for hi, assoc in enumerate(hassocs):
            fails = []
            for key in keyset:
                x = TensorVector.unit(n, key)
                lhs = _apply_assoc(act_tensor(g, x), assoc)
                rhs = act_tensor(g, right_cache[hi][key])
                if lhs != rhs:
                    fails.append(_op_check("", lhs, rhs, key))
                    break
            checks.append(_first_failure(f"commuting-actions-u{gi:02d}-h{hi}", fails))

    # tau injectivity by rank over a large prime
    basis = enumerate_up_to_length(r, L, extended=True, rho_bound=2)
    omega_keys = [k for k in keyset if Weight.of_key(k, n).parts == omega(n, r).parts]
    colindex: dict[tuple, int] = {}
    mat_rows = []
    for w in basis:
        op = tau(n, r, w)
        images: dict[tuple, int] = {}
        for key in omega_keys:
            for k2, c2 in op.on_key(key)._terms.items():
                col = (key, k2)
                images[col] = (images.get(col, 0) + kernels.lp_eval_mod(c2, 3, p)) % p
                if col not in colindex:
                    colindex[col] = len(colindex)
        mat_rows.append(images)
    dense = [[0] * len(colindex) for _ in mat_rows]
    for ri, images in enumerate(mat_rows):
        for col, val in images.items():
            dense[ri][colindex[col]] = val
    rank = _modp_rank_dense(dense, p)
    checks.append(
        (
            "tau-injective",
            rank == len(basis),
            None if rank == len(basis) else {"rank": rank, "expected": len(basis)},
        )
    )

    # the translation presentation as right operators
    sample_keys = rng.sample(keyset, min(len(keyset), 40))
    assoc_of = {}

    def acth(h, vec):
        key = id(h)
        if key not in assoc_of:
            assoc_of[key] = _bernstein_assoc(h)
        return _apply_assoc(vec, assoc_of[key])

    sigma = [None] + [t_basis(WindowPerm.s(r, i)) for i in range(1, r)]
    ys = [None] + [bernstein_y(r, i) for i in range(1, r + 1)]
    yinvs = [None] + [bernstein_y_inverse(r, i) for i in range(1, r + 1)]
    for i in range(1, r):
        fails = []
        for key in sample_keys:
            x = TensorVector.unit(n, key)
            lhs = acth(sigma[i], acth(sigma[i], x))
            rhs = acth(sigma[i], x).scale(Laurent({2: 1, 0: -1})) + x.scale(Laurent.q())
            if lhs != rhs:
                fails.append(_op_check("", lhs, rhs, key))
        checks.append(_first_failure(f"presentation-quadratic-{i}", fails))
    for i in range(1, r - 1):
        fails = []
        for key in sample_keys:
            x = TensorVector.unit(n, key)
            lhs = acth(sigma[i], acth(sigma[i + 1], acth(sigma[i], x)))
            rhs = acth(sigma[i + 1], acth(sigma[i], acth(sigma[i + 1], x)))
            if lhs != rhs:
                fails.append(_op_check("", lhs, rhs, key))
        checks.append(_first_failure(f"presentation-braid-{i}", fails))
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            fails = []
            for key in sample_keys[:10]:
                x = TensorVector.unit(n, key)
                lhs = acth(ys[j], acth(ys[i], x))
                rhs = acth(ys[i], acth(ys[j], x))
                if lhs != rhs:
                    fails.append(_op_check("", lhs, rhs, key))
            checks.append(_first_failure(f"presentation-y-commute-{i}-{j}", fails))
    for i in range(1, r + 1):
        fails = []
        for key in sample_keys[:10]:
            x = TensorVector.unit(n, key)
            lhs = acth(yinvs[i], acth(ys[i], x))
            if lhs != x:
                fails.append(_op_check("", lhs, x, key))
        checks.append(_first_failure(f"presentation-y-inverse-{i}", fails))
    for i in range(1, r):
        for j in range(1, r + 1):
            if j in (i, i + 1):
                continue
            fails = []
            for key in sample_keys[:10]:
                x = TensorVector.unit(n, key)
                lhs = acth(sigma[i], acth(ys[j], x))
                rhs = acth(ys[j], acth(sigma[i], x))
                if lhs != rhs:
                    fails.append(_op_check("", lhs, rhs, key))
            checks.append(_first_failure(f"presentation-y-distant-{i}-{j}", fails))
    for i in range(1, r):
        fails = []
        for key in sample_keys:
            x = TensorVector.unit(n, key)
            lhs = acth(sigma[i], acth(ys[i], acth(sigma[i], x)))
            rhs = acth(ys[i + 1], x).scale(Laurent.q())
            if lhs != rhs:
                fails.append(_op_check("", lhs, rhs, key))
        checks.append(_first_failure(f"conjugation-identity-{i}", fails))
    # distant translation operators commute with the generators on all keys
    for i in range(1, r):
        fails = []
        for key in keyset:
            x = TensorVector.unit(n, key)
            for j in range(1, r + 1):
                if j in (i, i + 1):
                    continue
                lhs = acth(sigma[i], y_op(n, r, j)(x))
                rhs = y_op(n, r, j)(acth(sigma[i], x))
                if lhs != rhs:
                    fails.append(_op_check("", lhs, rhs, key))
                    break
        checks.append(_first_failure(f"translation-distant-all-keys-{i}", fails))

    # bimodule identification: intertwining plus injectivity on the window
    tkeys = theta_iso_basis(n, r, L, rho_bound=1)
    images = [theta_iso(QTensorElement.basis(lam, d)) for lam, d in tkeys]
    allsup = sorted({k for img in images for k in img._terms})
    supidx = {k: i for i, k in enumerate(allsup)}
    dense = [[0] * len(allsup) for _ in images]
    for ri, img in enumerate(images):
        for k2, c2 in img._terms.items():
            dense[ri][supidx[k2]] = kernels.lp_eval_mod(c2, 3, p)
    rank = _modp_rank_dense(dense, p)
    checks.append(
        (
            "theta-injective",
            rank == len(tkeys),
            None if rank == len(tkeys) else {"rank": rank, "expected": len(tkeys)},
        )
    )
    from affineschur.schur import act_hecke_right

    hsub = [t_basis(WindowPerm.s(r, i)) for i in range(1, r)] + [t_basis(WindowPerm.rho(r))]
    fails = []
    for (lam, d), img in zip(tkeys, images):
        x = QTensorElement.basis(lam, d)
        for h in hsub:
            lhs = theta_iso(act_hecke_right(x, h))
            rhs = hecke_right_action(img, h)
            if lhs != rhs:
                fails.append(_op_check("", lhs, rhs, (list(lam.parts), list(d.window))))
                break
        if fails:
            break
    checks.append(_first_failure("theta-intertwines-right", fails))
    sgens = [phi(lam, lam, WindowPerm.identity(r)) for lam in all_weights(n, r)[:4]] + [
        phi(omega(n, r), omega(n, r), WindowPerm.s(r, 1)),
        phi(omega(n, r), omega(n, r), WindowPerm.rho(r)),
    ]
    fails = []
    for (lam, d), img in zip(tkeys[:: max(1, len(tkeys) // 12)], images[:: max(1, len(tkeys) // 12)]):
        x = QTensorElement.basis(lam, d)
        for g in sgens:
            lhs = theta_iso(act_schur_left(g, x))
            rhs = kappa(g)(img)
            if lhs != rhs:
                fails.append(_op_check("", lhs, rhs, (list(lam.parts), list(d.window))))
                break
        if fails:
            break
    checks.append(_first_failure("theta-intertwines-left", fails))

    # kappa respects sampled products
    pool = enumerate_up_to_length(r, 2, rho_bound=1)
    lamlist = all_weights(n, r)
    fails = []
    tested = 0
    while tested < samples:
        lam, mu, nu = rng.choice(lamlist), rng.choice(lamlist), rng.choice(lamlist)
        a = phi(lam, mu, rng.choice(pool))
        b = phi(mu, nu, rng.choice(pool))
        prod = a * b
        ka, kb, kp = kappa(a), kappa(b), kappa(prod)
        for key in rng.sample(keyset, 4):
            lhs = ka(kb.on_key(key))
            rhs = kp.on_key(key)
            if lhs != rhs:
                fails.append(
                    _op_check("", lhs, rhs, (list(lam.parts), list(mu.parts), list(nu.parts), list(key)))
                )
                break
        tested += 1
    checks.append(_first_failure("kappa-multiplicative", fails))
    return sorted(checks, key=lambda c: c[0])


def _modp_rank_dense(rows: list[list[int]], p: int) -> int:
    """Row-echelon rank over Z/p; small local routine to keep the module
    free of test-side dependencies."""
    mat = [row[:] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        sel = None
        for ri in range(rank, len(mat)):
            if mat[ri][c] % p:
                sel = ri
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = pow(mat[rank][c], p - 2, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for ri in range(len(mat)):
            if ri != rank and mat[ri][c]:
                f = mat[ri][c]
                mat[ri] = [(a - f * b) % p for a, b in zip(mat[ri], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank
