"""Pure-Python reference implementations of the hot kernels.

Same API as the compiled extension ``affineschur._kernels``; the import-time
selection lives in ``affineschur._backend``.  Everything here works on plain
containers so both backends stay trivially interchangeable:

* Laurent polynomials in v are dicts mapping int exponents to nonzero int
  coefficients; ``{}`` is zero.  Functions return freshly normalized dicts
  (no zero values); the ``*_into`` variants mutate their accumulator.
* Window permutations are tuples ``(w(1), ..., w(r))`` of ints whose residues
  mod r form a complete residue system.  The tuple describes a bijection of
  the integers with ``(t + r)w = (t)w + r``, and composition is postfix:
  ``(t)(uw) = ((t)u)w``.
* Hecke algebra elements are dicts mapping window tuples to Laurent dicts.
* Tensor-space vectors are dicts mapping int tuples (keys) to Laurent dicts.

The Hecke and tensor kernels hard-code q = v**2.
"""

from __future__ import annotations

BACKEND = "pure-python"

_Q = {2: 1}          # q
_QM1 = {2: 1, 0: -1}  # q - 1


# ---------------------------------------------------------------------------
# Laurent dictionaries


def lp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lp_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lp_neg(a):
    return {e: -c for e, c in a.items()}


def lp_mul(a, b):
    if not a or not b:
        return {}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def lp_scale(a, c):
    if not c:
        return {}
    return {e: c * ca for e, ca in a.items()}


def lp_shift(a, k):
    if not k:
        return dict(a)
    return {e + k: c for e, c in a.items()}


def lp_bar(a):
    return {-e: c for e, c in a.items()}


def lp_add_into(acc, a):
    for e, c in a.items():
        s = acc.get(e, 0) + c
        if s:
            acc[e] = s
        else:
            acc.pop(e, None)


def lp_addmul_into(acc, a, b):
    """acc += a*b, mutating acc."""
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = acc.get(e, 0) + ca * cb
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)


def lp_eval_one(a):
    return sum(a.values())


def lp_eval_mod(a, x, p):
    """Evaluate at v = x over Z/p; x must be invertible mod p."""
    total = 0
    xinv = pow(x, -1, p)
    for e, c in a.items():
        base = pow(x if e >= 0 else xinv, abs(e), p)
        total = (total + c * base) % p
    return total


# ---------------------------------------------------------------------------
# Window permutations


def win_apply(w, t):
    r = len(w)
    s = (t - 1) % r
    return w[s] + (t - 1 - s)


def win_pos(w, val):
    """Position of a value: val = (t)w returns t.  O(r) scan by residue."""
    r = len(w)
    for j in range(r):
        if (val - w[j]) % r == 0:
            return j + 1 + (val - w[j])
    raise ValueError("incomplete residue system in window")


def win_compose(u, w):
    return tuple(win_apply(w, t) for t in u)


def win_inverse(w):
    r = len(w)
    out = [0] * r
    for j, val in enumerate(w):
        s = (val - 1) % r
        out[s] = j + 1 + (s + 1 - val)
    return tuple(out)


def win_length(w):
    """Crossing count: pairs i < j (i in 1..r, j in Z) with (i)w > (j)w."""
    r = len(w)
    total = 0
    for i in range(r):
        wi = w[i]
        for s in range(r):
            d = wi - w[s]
            if d <= 0:
                continue
            cnt = (d + r - 1) // r  # number of m >= 0 with m*r < d
            if s <= i:
                cnt -= 1  # position s + m*r must exceed i + 1, so m >= 1
            if cnt > 0:
                total += cnt
    return total


def win_add(w, z):
    """Window of w * rho**z (shift every value by z)."""
    if not z:
        return tuple(w)
    return tuple(v + z for v in w)


def win_rot(w, z):
    """Window of rho**z * w, i.e. t -> (t + z)w."""
    if not z:
        return tuple(w)
    return tuple(win_apply(w, t + z) for t in range(1, len(w) + 1))


def win_mul_s_right(w, i):
    """Window of w * s_i: swap the values i, i+1 in every congruence class."""
    r = len(w)
    out = list(w)
    for j in range(r):
        m = (out[j] - i) % r
        if m == 0:
            out[j] += 1
        elif m == 1:
            out[j] -= 1
    return tuple(out)


def win_mul_s_left(w, i):
    """Window of s_i * w: swap positions i, i+1 (periodically)."""
    r = len(w)
    out = list(w)
    if i == r:
        out[0] = w[r - 1] - r
        out[r - 1] = w[0] + r
    else:
        out[i - 1] = w[i]
        out[i] = w[i - 1]
    return tuple(out)


def win_is_left_descent(w, i):
    """True iff (i)w > (i+1)w, i.e. s_i * w is shorter than w."""
    return win_apply(w, i) > win_apply(w, i + 1)


def win_is_right_descent(w, i):
    """True iff (i)w^-1 > (i+1)w^-1, i.e. w * s_i is shorter than w."""
    return win_pos(w, i) > win_pos(w, i + 1)


# ---------------------------------------------------------------------------
# Hecke elements: dict[window tuple, Laurent dict]


def hecke_mul_gen_right(terms, i):
    out = {}
    for w, c in terms.items():
        wsi = win_mul_s_right(w, i)
        if win_pos(w, i) > win_pos(w, i + 1):
            acc = out.setdefault(wsi, {})
            lp_addmul_into(acc, c, _Q)
            if not acc:
                del out[wsi]
            acc = out.setdefault(w, {})
            lp_addmul_into(acc, c, _QM1)
            if not acc:
                del out[w]
        else:
            acc = out.setdefault(wsi, {})
            lp_add_into(acc, c)
            if not acc:
                del out[wsi]
    return out


def hecke_mul_gen_left(terms, i):
    out = {}
    for w, c in terms.items():
        siw = win_mul_s_left(w, i)
        if win_apply(w, i) > win_apply(w, i + 1):
            acc = out.setdefault(siw, {})
            lp_addmul_into(acc, c, _Q)
            if not acc:
                del out[siw]
            acc = out.setdefault(w, {})
            lp_addmul_into(acc, c, _QM1)
            if not acc:
                del out[w]
        else:
            acc = out.setdefault(siw, {})
            lp_add_into(acc, c)
            if not acc:
                del out[siw]
    return out


def hecke_mul_rho_right(terms, z):
    if not z:
        return {w: dict(c) for w, c in terms.items()}
    return {win_add(w, z): dict(c) for w, c in terms.items()}


def hecke_mul_rho_left(terms, z):
    if not z:
        return {w: dict(c) for w, c in terms.items()}
    return {win_rot(w, z): dict(c) for w, c in terms.items()}


# ---------------------------------------------------------------------------
# Tensor-space generator sweeps: dict[key tuple, Laurent dict]


def tensor_act_E(terms, i, n):
    out = {}
    for key, c in terms.items():
        r = len(key)
        for t in range(r):
            if (key[t] - 1 - i) % n:
                continue
            wt = 0
            for u in range(t + 1, r):
                m = (key[u] - i) % n
                if m == 0:
                    wt += 1
                elif m == 1:
                    wt -= 1
            nk = key[:t] + (key[t] - 1,) + key[t + 1:]
            acc = out.setdefault(nk, {})
            lp_add_into(acc, lp_shift(c, wt))
            if not acc:
                del out[nk]
    return out


def tensor_act_F(terms, i, n):
    out = {}
    for key, c in terms.items():
        r = len(key)
        for t in range(r):
            if (key[t] - i) % n:
                continue
            wt = 0
            for u in range(t):
                m = (key[u] - i) % n
                if m == 0:
                    wt -= 1
                elif m == 1:
                    wt += 1
            nk = key[:t] + (key[t] + 1,) + key[t + 1:]
            acc = out.setdefault(nk, {})
            lp_add_into(acc, lp_shift(c, wt))
            if not acc:
                del out[nk]
    return out


def tensor_act_K(terms, i, n, inv):
    out = {}
    sign = -1 if inv else 1
    for key, c in terms.items():
        wt = sum(1 for j in key if (j - i) % n == 0)
        out[key] = lp_shift(c, sign * wt)
    return out


def tensor_act_R(terms, inv):
    shift = -1 if inv else 1
    return {tuple(j + shift for j in key): dict(c) for key, c in terms.items()}


def tensor_shift_slot(terms, t, amount):
    """Shift slot t (0-based) of every key by amount; the y operators."""
    out = {}
    for key, c in terms.items():
        nk = key[:t] + (key[t] + amount,) + key[t + 1:]
        out[nk] = dict(c)
    return out
