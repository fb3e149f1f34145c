"""The two-sided parameter space Z and Vogan duality.

A pair (x, y) couples an element of X for (G, gamma) with an element of
X for the dual group, over twisted involutions whose torus involutions
are negative transposes of each other.  Swapping the components is the
duality bijection; counting pairs with fixed central squares counts
irreducible representations at regular integral infinitesimal character.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .fiber import FiberSpace, central_fixed_points, tits_group
from .intlinalg import RatVecModZ
from .kgb import KGBElt, cartans_for, enumerate_X, real_weyl
from .rootdatum import from_type
from .weyl import (InnerClass, TwistedInvolution, WeylError, _mat_mul,
                   trivial_inner_class, twisted_involutions)


class NoMatch(ValueError):
    pass


@dataclass(frozen=True)
class ZPair:
    x: KGBElt
    y: KGBElt
    x_square: RatVecModZ
    y_square: RatVecModZ
    tau: TwistedInvolution

    def line(self) -> str:
        def fmt(v):
            return ",".join(str(a) for a in v.entries)
        word = self.tau.tau_word_str() or "e"
        return (f"{self.x.id} {self.y.id} {fmt(self.x_square)} "
                f"{fmt(self.y_square)} {word}")


def dual_tau(tau: TwistedInvolution, ic: InnerClass) -> TwistedInvolution:
    """The twisted involution of the dual inner class whose torus
    involution is the negative transpose of tau's."""
    dic = ic.dual
    neg_t = tuple(tuple(-tau.theta_X[c][r] for c in range(len(tau.theta_X)))
                  for r in range(len(tau.theta_X)))
    wmat = _mat_mul(neg_t, dic.gamma_mat)
    winv = _mat_mul(dic.gamma_mat, neg_t)
    try:
        w = dic.weyl.from_mats(wmat, winv)
    except (WeylError, KeyError) as exc:
        raise NoMatch(f"no dual Weyl element: {exc}")
    dtbl = twisted_involutions(dic)
    theta = dic.theta_X(w)
    if theta != neg_t or theta not in dtbl.index_by_theta:
        raise NoMatch("dual torus involution is not a twisted involution")
    return dtbl.elements[dtbl.index_by_theta[theta]]


def enumerate_Z(ic: InnerClass, restrict_x_square=None,
                restrict_y_square=None):
    """All pairs (x, y), grouped by the x-side twisted involution."""
    dic = ic.dual
    xt = enumerate_X(ic) if restrict_x_square is None \
        else enumerate_X(ic, squares=[restrict_x_square])
    yt = enumerate_X(dic) if restrict_y_square is None \
        else enumerate_X(dic, squares=[restrict_y_square])
    by_tau_x = {}
    for x in xt.elements:
        by_tau_x.setdefault(x.tau.index, []).append(x)
    by_tau_y = {}
    for y in yt.elements:
        by_tau_y.setdefault(y.tau.index, []).append(y)
    pairs = []
    for tau in twisted_involutions(ic).elements:
        xs = by_tau_x.get(tau.index)
        if not xs:
            continue
        ys = by_tau_y.get(dual_tau(tau, ic).index)
        if not ys:
            continue
        for x in xs:
            for y in ys:
                pairs.append(ZPair(x, y, x.square, y.square, tau))
    return pairs


def _slice_size(ic, tau, squares) -> int:
    """|X_tau(z)| summed over the given central squares, from the fiber
    structure alone (no element materialization)."""
    fs = FiberSpace(tau, ic)
    total = 0
    for z in squares:
        if fs.base_point(z) is not None:
            total += 2 ** fs.fiber_rank
    return total


def count_z_blocks(ic: InnerClass, restrict_x_square=None,
                   restrict_y_square=None, threads: int = 1):
    """Per-tau block sizes (tau index, |X_tau|, |X^dual_dualtau|) and the
    total number of pairs, without enumerating elements."""
    dic = ic.dual
    xs = (restrict_x_square,) if restrict_x_square is not None \
        else central_fixed_points(ic)
    ys = (restrict_y_square,) if restrict_y_square is not None \
        else central_fixed_points(dic)
    tbl = twisted_involutions(ic)
    twisted_involutions(dic)
    tits_group(ic)
    tits_group(dic)

    def work(idx):
        tau = tbl.elements[idx]
        nx = _slice_size(ic, tau, xs)
        ny = _slice_size(dic, dual_tau(tau, ic), ys) if nx else 0
        return idx, nx, ny

    indices = range(len(tbl.elements))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(work, indices))
    else:
        rows = [work(i) for i in indices]
    rows.sort()
    total = sum(nx * ny for _, nx, ny in rows)
    return rows, total


def sp2n_count(n: int, threads: int = 1) -> int:
    """Number of pairs for Sp(2n) simply connected, equal rank, with
    x^2 = -I and y^2 = I."""
    ic = trivial_inner_class(from_type(f"C{n}", "sc"))
    zg = central_fixed_points(ic)
    minus = [z for z in zg if any(a != 0 for a in z.entries)]
    if len(minus) != 1:
        raise ValueError("expected a center of order 2")
    n_rank = ic.dual.rank
    plus = RatVecModZ.reduce(tuple(Fraction(0) for _ in range(n_rank)))
    _, total = count_z_blocks(ic, restrict_x_square=minus[0],
                              restrict_y_square=plus, threads=threads)
    return total


@dataclass(frozen=True)
class LanglandsCount:
    counts: dict            # dual central square -> number of pairs
    formula_total: object   # per-class closed-form count, or None
    note: object            # str or None


def langlands_count(ic: InnerClass, x0: KGBElt) -> LanglandsCount:
    """Pairs whose x lies in the strong real form of x0, counted per
    dual-central-square class (infinitesimal character class)."""
    full = enumerate_X(ic)
    # locate x0 in the full table (it may come from a per-form table)
    key_ids = [x.id for x in full.elements
               if x.tau.theta_X == x0.tau.theta_X
               and x.torus_coord == x0.torus_coord]
    ids = set(full.form_partition[full.form_of(key_ids[0])])
    counts = {}
    for p in enumerate_Z(ic):
        if p.x.id in ids:
            counts[p.y_square] = counts.get(p.y_square, 0) + 1
    formula = None
    note = None
    if ic.rd.rho_in_X():
        w_order = ic.weyl.order()
        by_class = {}
        for i in ids:
            x = full.elements[i]
            from .weyl import cartan_class_of
            c = cartan_class_of(ic, x.tau.index)
            by_class.setdefault(c, x)
        formula = 0
        for c, sig in cartans_for(full.elements[min(ids)]):
            rep = by_class[c]
            formula += (w_order // real_weyl(rep).total) * 2 ** sig.a
        if counts:
            assert formula * len(counts) == sum(counts.values()), \
                "closed-form count disagrees with pair enumeration"
    else:
        note = ("half-sum of positive roots is not a character: counts "
                "refer to the rho-cover")
    return LanglandsCount(counts, formula, note)


@dataclass(frozen=True)
class DualityReport:
    ok: bool
    total: int
    dual_total: int
    blocks: dict         # (tau idx, dual tau idx) -> size
    dual_blocks: dict
    mismatches: tuple


def duality_check(ic: InnerClass) -> DualityReport:
    """Verify that swapping components is a bijection between the pair
    space of ic and that of its dual."""
    dic = ic.dual
    pairs = enumerate_Z(ic)
    dual_pairs = enumerate_Z(dic)
    blocks = {}
    for p in pairs:
        key = (p.tau.index, dual_tau(p.tau, ic).index)
        blocks[key] = blocks.get(key, 0) + 1
    dual_blocks = {}
    for p in dual_pairs:
        key = (p.tau.index, dual_tau(p.tau, dic).index)
        dual_blocks[key] = dual_blocks.get(key, 0) + 1
    mismatches = []
    for (a, b), size in blocks.items():
        if dual_blocks.get((b, a)) != size:
            mismatches.append((a, b, size, dual_blocks.get((b, a))))
    for (a, b) in dual_blocks:
        if (b, a) not in blocks:
            mismatches.append((b, a, None, dual_blocks[(a, b)]))
    ok = not mismatches and len(pairs) == len(dual_pairs)
    return DualityReport(ok, len(pairs), len(dual_pairs), blocks,
                         dual_blocks, tuple(mismatches))
