"""Named verification suites with reproducible reports.

Each suite re-derives its expected values from scratch (breadth first
search, bar-involution solve, Poincare sums) so the checks stay honest
rather than comparing the library to itself.  Reports are deterministic
for a fixed seed and parameter set; wall time is carried on the object
but kept out of the serialized form so identical runs emit identical
bytes.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from affineschur._backend import kernels
from affineschur.hecke import (
    HeckeElement,
    KLTable,
    bernstein_y,
    bernstein_y_inverse,
    t_basis,
    t_basis_inverse,
    x_lambda,
)
from affineschur.laurent import Laurent
from affineschur.weyl import (
    ParabolicIndex,
    WindowPerm,
    all_proper_parabolics,
    bruhat_leq,
    coset_decompose,
    double_coset_rep,
    enumerate_up_to_length,
    is_distinguished,
    longest_double_coset_elt,
)

__all__ = ["SuiteReport", "SUITES", "run_suite", "run_all"]

DEFAULT_SEED = 20250825


@dataclass
class SuiteReport:
    suite: str
    parameters: dict
    checks: list  # (name, ok, witness) with witness JSON-serializable
    wall_time: float = 0.0

    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c[1]]

    def to_obj(self) -> dict:
        # wall_time deliberately omitted: identical runs must serialize
        # identically
        rows = []
        for name, ok, witness in self.checks:
            row = {"name": name, "status": "pass" if ok else "fail"}
            if not ok:
                row["witness"] = witness
            rows.append(row)
        return {
            "suite": self.suite,
            "parameters": {k: self.parameters[k] for k in sorted(self.parameters)},
            "checks": rows,
            "failed": sum(1 for _, ok, _ in self.checks if not ok),
        }

    def render(self) -> str:
        lines = [f"suite {self.suite}  ({self._param_str()})"]
        for name, ok, witness in self.checks:
            mark = "pass" if ok else "FAIL"
            lines.append(f"  {mark}  {name}")
            if not ok:
                lines.append(f"        witness: {witness}")
        bad = sum(1 for _, ok, _ in self.checks if not ok)
        lines.append(f"  {len(self.checks)} checks, {bad} failed")
        return "\n".join(lines)

    def _param_str(self) -> str:
        return ", ".join(f"{k}={self.parameters[k]}" for k in sorted(self.parameters))


class _Recorder:
    """Collects (name, ok, witness) rows; exceptions become failures."""

    def __init__(self):
        self.rows: list = []

    def add(self, name: str, ok: bool, witness=None):
        self.rows.append((name, bool(ok), witness if not ok else None))

    def guard(self, name: str, fn: Callable[[], tuple]):
        try:
            ok, witness = fn()
        except Exception as exc:  # a crash is a failed check, not a crash
            ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        self.add(name, ok, witness)

    def done(self) -> list:
        return sorted(self.rows, key=lambda c: c[0])


def _finish(suite: str, parameters: dict, rec: _Recorder, t0: float) -> SuiteReport:
    return SuiteReport(suite, parameters, rec.done(), time.time() - t0)


# ---------------------------------------------------------------------------
# weyl-core


def run_weyl_core(r: int = 3, length: int = 8, coset_len: int = 6, **_) -> SuiteReport:
    t0 = time.time()
    rec = _Recorder()
    gens = [WindowPerm.s(r, i) for i in range(1, r + 1)]

    def bfs_lengths():
        dist = {WindowPerm.identity(r).window: 0}
        frontier = [WindowPerm.identity(r).window]
        for depth in range(1, length + 1):
            nxt = []
            for win in frontier:
                for g in gens:
                    p = kernels.win_compose(win, g.window)
                    if p not in dist:
                        dist[p] = depth
                        nxt.append(p)
            frontier = nxt
        return dist

    dist = bfs_lengths()

    def check_lengths():
        for win, d in dist.items():
            if kernels.win_length(win) != d:
                return False, {"window": list(win), "bfs": d, "crossings": kernels.win_length(win)}
        return True, None

    rec.guard("length-equals-min-word", check_lengths)

    def check_descents():
        for win in dist:
            w = WindowPerm._unsafe(win)
            lw = w.length()
            right = {i for i in range(1, r + 1) if (w * WindowPerm.s(r, i)).length() < lw}
            if right != set(w.right_descents()):
                return False, {"window": list(win), "drop": sorted(right)}
            left = {i for i in range(1, r + 1) if (WindowPerm.s(r, i) * w).length() < lw}
            winv = w.inverse()
            if left != set(winv.right_descents()):
                return False, {"window": list(win), "left-drop": sorted(left)}
        return True, None

    rec.guard("descents-match-length-drop", check_descents)

    def check_cosets():
        pool = enumerate_up_to_length(r, coset_len, extended=True, rho_bound=1)
        for pi in all_proper_parabolics(r):
            members = {x.window for x in pi.elements()}
            for w in pool:
                u, d = coset_decompose(w, pi)
                if u.window not in members:
                    return False, {"w": list(w.window), "u": list(u.window)}
                if (u * d) != w or u.length() + d.length() != w.length():
                    return False, {"w": list(w.window), "u": list(u.window), "d": list(d.window)}
                if not is_distinguished(d, pi):
                    return False, {"w": list(w.window), "d": list(d.window)}
        return True, None

    rec.guard("coset-split-unique-and-additive", check_cosets)

    def check_rotation():
        rho = WindowPerm.rho(r)
        for i in range(1, r + 1):
            if rho * WindowPerm.s(r, i % r + 1) != WindowPerm.s(r, i) * rho:
                return False, {"i": i}
        return True, None

    rec.guard("shift-conjugation-rotates-generators", check_rotation)

    def check_shift_never_below():
        rho = WindowPerm.rho(r)
        for win in itertools.islice(dist, 60):
            y = WindowPerm._unsafe(win)
            if bruhat_leq(rho * y, y):
                return False, {"y": list(win)}
        return True, None

    rec.guard("shifted-element-never-below", check_shift_never_below)

    def check_rank_two():
        for ctor in (lambda: WindowPerm.identity(2), lambda: WindowPerm((2, 1)),
                     lambda: ParabolicIndex(2, [1]), lambda: HeckeElement.unit(2)):
            try:
                ctor()
                return False, {"accepted": "a rank-2 construction"}
            except ValueError:
                pass
        return True, None

    rec.guard("rank-two-rejected", check_rank_two)

    return _finish("weyl-core", {"r": r, "len": length, "coset_len": coset_len}, rec, t0)


# ---------------------------------------------------------------------------
# hecke-core


def _random_hecke(rng: random.Random, r: int, pool) -> HeckeElement:
    total = HeckeElement.zero(r)
    for _ in range(2):
        w = rng.choice(pool)
        c = Laurent({rng.randrange(-2, 3): rng.randrange(-3, 4) or 1})
        total = total + t_basis(w).scale(c)
    return total


def _convolve(a: dict, b: dict) -> dict:
    out: dict[WindowPerm, int] = {}
    for u, ca in a.items():
        for w, cb in b.items():
            uw = u * w
            s = out.get(uw, 0) + ca * cb
            if s:
                out[uw] = s
            else:
                out.pop(uw, None)
    return out


def run_hecke_core(r: int = 3, seed: int = DEFAULT_SEED, triples: int = 200, **_) -> SuiteReport:
    t0 = time.time()
    rec = _Recorder()
    rng = random.Random(seed)
    pool = enumerate_up_to_length(r, 4, extended=True, rho_bound=2)

    def check_assoc():
        for k in range(triples):
            a, b, c = (_random_hecke(rng, r, pool) for _ in range(3))
            if (a * b) * c != a * (b * c):
                return False, {"triple": k}
        return True, None

    rec.guard("associativity-on-seeded-triples", check_assoc)

    def check_v1():
        for k in range(40):
            a, b = _random_hecke(rng, r, pool), _random_hecke(rng, r, pool)
            lhs = (a * b).specialize_group_algebra()
            rhs = _convolve(a.specialize_group_algebra(), b.specialize_group_algebra())
            if lhs != rhs:
                return False, {"pair": k}
        return True, None

    rec.guard("group-algebra-specialization", check_v1)

    q = Laurent.q()
    sig = [None] + [t_basis(WindowPerm.s(r, i)) for i in range(1, r)]
    ys = [None] + [bernstein_y(r, i) for i in range(1, r + 1)]
    yinvs = [None] + [bernstein_y_inverse(r, i) for i in range(1, r + 1)]

    def pair_name(i, j):
        return f"{i}-{j}"

    for i in range(1, r):
        rec.guard(
            f"translation-quadratic-{i}",
            lambda i=i: (sig[i] * sig[i] == sig[i].scale(q - 1) + HeckeElement.unit(r).scale(q), {"i": i}),
        )
    for i in range(1, r - 1):
        rec.guard(
            f"translation-braid-{i}",
            lambda i=i: (sig[i] * sig[i + 1] * sig[i] == sig[i + 1] * sig[i] * sig[i + 1], {"i": i}),
        )
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            rec.guard(
                f"translation-commute-{pair_name(i, j)}",
                lambda i=i, j=j: (ys[i] * ys[j] == ys[j] * ys[i], {"i": i, "j": j}),
            )
    for i in range(1, r + 1):
        rec.guard(
            f"translation-invertible-{i}",
            lambda i=i: (ys[i] * yinvs[i] == HeckeElement.unit(r), {"i": i}),
        )
    for i in range(1, r):
        for j in range(1, r + 1):
            if j in (i, i + 1):
                continue
            rec.guard(
                f"translation-distant-{pair_name(i, j)}",
                lambda i=i, j=j: (sig[i] * ys[j] == ys[j] * sig[i], {"i": i, "j": j}),
            )
    for i in range(1, r):
        rec.guard(
            f"translation-conjugation-{i}",
            lambda i=i: (sig[i] * ys[i] * sig[i] == ys[i + 1].scale(q), {"i": i}),
        )

    def check_center():
        prod = HeckeElement.unit(r)
        for i in range(1, r + 1):
            prod = prod * ys[i]
        if prod != t_basis(WindowPerm.rho(r, r)):
            return False, {"detail": "product of translations is not the full shift"}
        for h in [sig[i] for i in range(1, r)] + [t_basis(WindowPerm.rho(r))]:
            if prod * h != h * prod:
                return False, {"detail": "full-shift translation is not central"}
        return True, None

    rec.guard("translation-product-central", check_center)

    return _finish("hecke-core", {"r": r, "seed": seed, "triples": triples}, rec, t0)


# ---------------------------------------------------------------------------
# kl


def _kl_by_involution(w: WindowPerm) -> dict[WindowPerm, Laurent]:
    """Solve for every P_{y,w} from bar-invariance of the canonical term,
    independent of the mu-recursion."""
    r = w.r
    _, word = w.reduced_word()
    lower = {WindowPerm.identity(r)}
    for i in word:
        lower |= {u * WindowPerm.s(r, i) for u in lower}
    bar_t = {z: t_basis_inverse(z.inverse()) for z in lower}
    lw = w.length()
    out: dict[WindowPerm, Laurent] = {w: Laurent.one()}
    for y in sorted(lower, key=lambda z: (-z.length(), z.window)):
        if y == w:
            continue
        m = lw - y.length()
        big = Laurent.zero()
        for z in lower:
            if z == y or z.length() <= y.length():
                continue
            coeff = bar_t[z].coeff(y)
            if coeff:
                big = big + coeff * out[z].bar()
        big = big.shift(2 * lw)
        low = Laurent({e: c for e, c in big.items() if e < m})
        if big - low != -low.bar().shift(2 * m):
            raise ArithmeticError("bar equation inconsistent")
        out[y] = low
    return out


def run_kl(r: int = 5, block: Iterable[int] = (1, 2, 3), **_) -> SuiteReport:
    t0 = time.time()
    rec = _Recorder()
    pi = ParabolicIndex(r, block)
    elems = sorted(pi.elements(), key=lambda w: (w.length(), w.window))
    table = KLTable(r)
    one_plus_q = Laurent({0: 1, 2: 1})

    def check_match():
        for w in elems:
            oracle = _kl_by_involution(w)
            for y in elems:
                got = table.polynomial(y, w)
                want = oracle.get(y, Laurent.zero()) if bruhat_leq(y, w) else Laurent.zero()
                if got != want:
                    return False, {"y": list(y.window), "w": list(w.window), "got": got.to_obj(), "want": want.to_obj()}
        return True, None

    rec.guard("recursion-matches-involution-solve", check_match)

    def check_degree():
        for w in elems:
            for y in elems:
                if not bruhat_leq(y, w) or y == w:
                    continue
                p = table.polynomial(y, w)
                if p.is_zero():
                    continue
                if p.degree > max(0, w.length() - y.length() - 1):
                    return False, {"y": list(y.window), "w": list(w.window), "poly": p.to_obj()}
        return True, None

    rec.guard("degree-bound", check_degree)

    def check_singular():
        singular = set()
        for w in elems:
            for y in elems:
                if bruhat_leq(y, w) and table.polynomial(y, w) == one_plus_q:
                    singular.add(w.window)
        if len(singular) != 2:
            return False, {"count": len(singular), "windows": sorted(map(list, singular))}
        return True, None

    rec.guard("exactly-two-singular-elements", check_singular)

    return _finish("kl", {"r": r, "block": sorted(block)}, rec, t0)


# ---------------------------------------------------------------------------
# schur-core


def run_schur_core(n: int = 3, r: int = 3, seed: int = DEFAULT_SEED, samples: int = 50, **_) -> SuiteReport:
    from affineschur.schur import (
        SchurElement,
        Weight,
        all_weights,
        embed_hecke,
        omega,
        phi,
        schur_mul,
        theta,
        young_parabolic,
    )

    t0 = time.time()
    rec = _Recorder()
    rng = random.Random(seed)
    om = omega(n, r)
    lams = all_weights(n, r)
    e = WindowPerm.identity(r)
    q = Laurent.q()

    def check_pairing():
        for lam in lams:
            for mu in lams:
                prod = schur_mul(phi(om, lam, e), phi(mu, om, e))
                if lam == mu:
                    want = SchurElement.zero(n, r)
                    for d in young_parabolic(lam).elements():
                        want = want + phi(om, om, d)
                    if prod != want:
                        return False, {"lambda": list(lam.parts)}
                elif not prod.is_zero():
                    return False, {"lambda": list(lam.parts), "mu": list(mu.parts)}
        return True, None

    rec.guard("row-column-pairing-diagonal", check_pairing)

    def check_parabolic_scalars():
        for lam in lams:
            for i in sorted(young_parabolic(lam).generators):
                s = WindowPerm.s(r, i)
                if schur_mul(phi(om, om, s), phi(om, lam, e)) != phi(om, lam, e).scale(q):
                    return False, {"lambda": list(lam.parts), "i": i, "side": "left"}
                if schur_mul(phi(lam, om, e), phi(om, om, s)) != phi(lam, om, e).scale(q):
                    return False, {"lambda": list(lam.parts), "i": i, "side": "right"}
        return True, None

    rec.guard("block-generators-scale-by-q", check_parabolic_scalars)

    def check_poincare():
        pool = enumerate_up_to_length(r, 4, extended=True, rho_bound=1)
        for k in range(samples):
            lam, mu = rng.choice(lams), rng.choice(lams)
            pl, pm = young_parabolic(lam), young_parabolic(mu)
            d = double_coset_rep(rng.choice(pool), pl, pm)
            lhs = schur_mul(schur_mul(phi(lam, om, e), phi(om, om, d)), phi(om, mu, e))
            left_windows = {x.window for x in pl.elements()}
            poincare = Laurent.zero()
            for u in pm.elements():
                if (d * u * d.inverse()).window in left_windows:
                    poincare = poincare + Laurent.v(2 * u.length())
            if lhs != phi(lam, mu, d).scale(poincare):
                return False, {"sample": k, "lambda": list(lam.parts), "mu": list(mu.parts), "d": list(d.window)}
        return True, None

    rec.guard("sandwich-poincare-identity", check_poincare)

    def check_products_close():
        pool = enumerate_up_to_length(r, 3, extended=True, rho_bound=1)
        for k in range(20):
            lam, mu, nu = rng.choice(lams), rng.choice(lams), rng.choice(lams)
            a = phi(lam, mu, rng.choice(pool))
            b = phi(mu, nu, rng.choice(pool))
            c = phi(nu, rng.choice(lams), rng.choice(pool))
            ab = a * b
            if (ab * c) != a * (b * c):
                return False, {"sample": k}
        return True, None

    rec.guard("products-reexpand-and-associate", check_products_close)

    def check_theta():
        table = KLTable(r)
        pool = enumerate_up_to_length(r, 3, extended=True, rho_bound=1)
        for lam in lams[:6]:
            for mu in lams[:6]:
                pl, pm = young_parabolic(lam), young_parabolic(mu)
                seen = set()
                for d0 in pool:
                    d = double_coset_rep(d0, pl, pm)
                    if d.window in seen:
                        continue
                    seen.add(d.window)
                    th = theta(lam, mu, d, table)
                    dplus = longest_double_coset_elt(d, pl, pm)
                    lead = th.coeff(lam, mu, d)
                    if lead != Laurent.v(pm.longest_element().length() - dplus.length()):
                        return False, {"lambda": list(lam.parts), "mu": list(mu.parts), "d": list(d.window), "lead": lead.to_obj()}
                    for _, _, z, _ in th.items():
                        if z == d:
                            continue
                        zplus = longest_double_coset_elt(z, pl, pm)
                        if not bruhat_leq(zplus, dplus) or zplus == dplus:
                            return False, {"d": list(d.window), "z": list(z.window)}
        return True, None

    rec.guard("ic-basis-unitriangular", check_theta)

    def check_embed():
        pool = enumerate_up_to_length(r, 4, extended=True, rho_bound=1)
        seen = set()
        for k in range(25):
            a = _random_hecke(rng, r, pool)
            b = _random_hecke(rng, r, pool)
            if embed_hecke(a, n) * embed_hecke(b, n) != embed_hecke(a * b, n):
                return False, {"pair": k}
        for w in pool:
            img = embed_hecke(t_basis(w), n)
            key = tuple(
                (lam.parts, mu.parts, d.window, tuple(sorted(c.raw().items())))
                for lam, mu, d, c in img.items()
            )
            if key in seen:
                return False, {"w": list(w.window)}
            seen.add(key)
        return True, None

    rec.guard("hecke-corner-embedding", check_embed)

    def check_narrow():
        try:
            omega(2, 3)
            return False, {"accepted": "omega(2, 3)"}
        except ValueError:
            return True, None

    rec.guard("narrow-column-rejected", check_narrow)

    return _finish("schur-core", {"n": n, "r": r, "seed": seed, "samples": samples}, rec, t0)


# ---------------------------------------------------------------------------
# hopf and duality (wrappers around the operator sweeps)


def run_hopf(n: int = 3, r: int = 3, window: int | None = None, **_) -> SuiteReport:
    from affineschur.quantum import verify_hopf

    t0 = time.time()
    bound = 2 * n if window is None else window
    checks = verify_hopf(n, r, range(-bound, bound + 1))
    return SuiteReport("hopf", {"n": n, "r": r, "window": bound}, checks, time.time() - t0)


def run_duality(
    n: int = 3, r: int = 3, length: int = 3, window: int | None = None, seed: int = DEFAULT_SEED, **_
) -> SuiteReport:
    from affineschur.quantum import verify_affine_duality

    t0 = time.time()
    bound = 2 * n if window is None else window
    checks = verify_affine_duality(n, r, length, range(-bound, bound + 1), seed=seed)
    return SuiteReport(
        "duality", {"n": n, "r": r, "len": length, "window": bound, "seed": seed}, checks, time.time() - t0
    )


# ---------------------------------------------------------------------------
# dispatch


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "weyl-core": run_weyl_core,
    "hecke-core": run_hecke_core,
    "kl": run_kl,
    "schur-core": run_schur_core,
    "hopf": run_hopf,
    "duality": run_duality,
}


def run_suite(name: str, **params) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name](**params)


def run_all(seed: int = DEFAULT_SEED) -> list[SuiteReport]:
    """The acceptance sweep: both ranks for the group suite, both column
    counts for the Hopf suite, defaults elsewhere."""
    return [
        run_weyl_core(r=3),
        run_weyl_core(r=4),
        run_hecke_core(seed=seed),
        run_kl(),
        run_schur_core(seed=seed),
        run_hopf(n=3),
        run_hopf(n=4),
        run_duality(seed=seed),
    ]
