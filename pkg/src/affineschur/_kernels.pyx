# cython: language_level=3
"""Compiled implementations of the hot kernels.

Mirrors ``affineschur._kernels_py`` exactly; see that module for the data
conventions.  Containers stay plain Python objects (coefficients are
unbounded ints), the win comes from typed index loops and static dispatch
in the inner sweeps.
"""

BACKEND = "cython"

_Q = {2: 1}
_QM1 = {2: 1, 0: -1}


# ---------------------------------------------------------------------------
# Laurent dictionaries


def lp_add(dict a, dict b):
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lp_sub(dict a, dict b):
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lp_neg(dict a):
    return {e: -c for e, c in a.items()}


def lp_mul(dict a, dict b):
    if not a or not b:
        return {}
    cdef dict out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def lp_scale(dict a, c):
    if not c:
        return {}
    return {e: c * ca for e, ca in a.items()}


def lp_shift(dict a, k):
    if not k:
        return dict(a)
    return {e + k: c for e, c in a.items()}


def lp_bar(dict a):
    return {-e: c for e, c in a.items()}


def lp_add_into(dict acc, dict a):
    for e, c in a.items():
        s = acc.get(e, 0) + c
        if s:
            acc[e] = s
        else:
            acc.pop(e, None)


def lp_addmul_into(dict acc, dict a, dict b):
    """acc += a*b, mutating acc."""
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = acc.get(e, 0) + ca * cb
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)


def lp_eval_one(dict a):
    return sum(a.values())


def lp_eval_mod(dict a, x, p):
    """Evaluate at v = x over Z/p; x must be invertible mod p."""
    total = 0
    xinv = pow(x, -1, p)
    for e, c in a.items():
        base = pow(x if e >= 0 else xinv, abs(e), p)
        total = (total + c * base) % p
    return total


# ---------------------------------------------------------------------------
# Window permutations


def win_apply(tuple w, t):
    cdef Py_ssize_t r = len(w)
    s = (t - 1) % r
    return w[s] + (t - 1 - s)


def win_pos(tuple w, val):
    """Position of a value: val = (t)w returns t.  O(r) scan by residue."""
    cdef Py_ssize_t r = len(w)
    cdef Py_ssize_t j
    for j in range(r):
        if (val - w[j]) % r == 0:
            return j + 1 + (val - w[j])
    raise ValueError("incomplete residue system in window")


def win_compose(tuple u, tuple w):
    return tuple([win_apply(w, t) for t in u])


def win_inverse(tuple w):
    cdef Py_ssize_t r = len(w)
    cdef list out = [0] * r
    cdef Py_ssize_t j
    for j in range(r):
        val = w[j]
        s = (val - 1) % r
        out[s] = j + 1 + (s + 1 - val)
    return tuple(out)


def win_length(tuple w):
    """Crossing count: pairs i < j (i in 1..r, j in Z) with (i)w > (j)w."""
    cdef Py_ssize_t r = len(w)
    cdef Py_ssize_t i, s
    cdef long long wi, d, cnt, total = 0
    for i in range(r):
        wi = w[i]
        for s in range(r):
            d = wi - w[s]
            if d <= 0:
                continue
            cnt = (d + r - 1) // r
            if s <= i:
                cnt -= 1
            if cnt > 0:
                total += cnt
    return total


def win_add(tuple w, z):
    """Window of w * rho**z (shift every value by z)."""
    if not z:
        return tuple(w)
    return tuple([v + z for v in w])


def win_rot(tuple w, z):
    """Window of rho**z * w, i.e. t -> (t + z)w."""
    cdef Py_ssize_t r = len(w)
    if not z:
        return tuple(w)
    return tuple([win_apply(w, t + z) for t in range(1, r + 1)])


def win_mul_s_right(tuple w, i):
    """Window of w * s_i: swap the values i, i+1 in every congruence class."""
    cdef Py_ssize_t r = len(w)
    cdef list out = list(w)
    cdef Py_ssize_t j
    for j in range(r):
        m = (out[j] - i) % r
        if m == 0:
            out[j] = out[j] + 1
        elif m == 1:
            out[j] = out[j] - 1
    return tuple(out)


def win_mul_s_left(tuple w, i):
    """Window of s_i * w: swap positions i, i+1 (periodically)."""
    cdef Py_ssize_t r = len(w)
    cdef list out = list(w)
    if i == r:
        out[0] = w[r - 1] - r
        out[r - 1] = w[0] + r
    else:
        out[i - 1] = w[i]
        out[i] = w[i - 1]
    return tuple(out)


def win_is_left_descent(tuple w, i):
    """True iff (i)w > (i+1)w, i.e. s_i * w is shorter than w."""
    return win_apply(w, i) > win_apply(w, i + 1)


def win_is_right_descent(tuple w, i):
    """True iff (i)w^-1 > (i+1)w^-1, i.e. w * s_i is shorter than w."""
    return win_pos(w, i) > win_pos(w, i + 1)


# ---------------------------------------------------------------------------
# Hecke elements: dict[window tuple, Laurent dict]


def hecke_mul_gen_right(dict terms, i):
    cdef dict out = {}
    cdef dict acc
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


def hecke_mul_gen_left(dict terms, i):
    cdef dict out = {}
    cdef dict acc
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


def hecke_mul_rho_right(dict terms, z):
    if not z:
        return {w: dict(c) for w, c in terms.items()}
    return {win_add(w, z): dict(c) for w, c in terms.items()}


def hecke_mul_rho_left(dict terms, z):
    if not z:
        return {w: dict(c) for w, c in terms.items()}
    return {win_rot(w, z): dict(c) for w, c in terms.items()}


# ---------------------------------------------------------------------------
# Tensor-space generator sweeps: dict[key tuple, Laurent dict]


def tensor_act_E(dict terms, i, n):
    cdef dict out = {}
    cdef dict acc
    cdef Py_ssize_t r, t, u
    cdef long long wt
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


def tensor_act_F(dict terms, i, n):
    cdef dict out = {}
    cdef dict acc
    cdef Py_ssize_t r, t, u
    cdef long long wt
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


def tensor_act_K(dict terms, i, n, inv):
    cdef dict out = {}
    cdef long long sign = -1 if inv else 1
    cdef long long wt
    for key, c in terms.items():
        wt = 0
        for j in key:
            if (j - i) % n == 0:
                wt += 1
        out[key] = lp_shift(c, sign * wt)
    return out


def tensor_act_R(dict terms, inv):
    shift = -1 if inv else 1
    return {tuple([j + shift for j in key]): dict(c) for key, c in terms.items()}


def tensor_shift_slot(dict terms, t, amount):
    """Shift slot t (0-based) of every key by amount; the y operators."""
    cdef dict out = {}
    for key, c in terms.items():
        nk = key[:t] + (key[t] + amount,) + key[t + 1:]
        out[nk] = dict(c)
    return out
