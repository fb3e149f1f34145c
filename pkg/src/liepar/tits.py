"""The extended group of order-2 torus points: elements sigma_w . x_t
with w in the Weyl group and t in Xv/2Xv.

An element is normalized as (w, t) = sigma_w . x_t where sigma_w is the
canonical lift built from the canonical reduced word of w.  The defining
relations are the braid relations among the sigma_i together with
sigma_i^2 = x_{m_i} (m_i the simple coroot mod 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlinalg import f2_add, f2_mat_apply, f2_vec
from .weyl import InnerClass, WeylElt, WeylError, _mat_apply, _mat_mul


@dataclass(frozen=True)
class TitsElt:
    w: WeylElt
    t: tuple  # element of Xv/2Xv (0/1 coordinates)

    def __repr__(self):
        word = ",".join(str(i + 1) for i in self.w.word) or "e"
        return f"TitsElt({word}; {''.join(map(str, self.t))})"


class TitsGroup:
    def __init__(self, ic: InnerClass):
        self.ic = ic
        self.rd = ic.rd
        self.weyl = ic.weyl
        n = self.rd.rank
        self.zero = tuple(0 for _ in range(n))
        # simple reflection action on Xv, reduced mod 2
        self._simple_mod2 = tuple(
            tuple(tuple(x % 2 for x in row) for row in m)
            for m in self.weyl.simple_mats_dual)
        self.identity = TitsElt(self.weyl.identity, self.zero)

    def m_alpha(self, root_idx: int) -> tuple:
        return f2_vec(self.rd.coroots[root_idx])

    def torus_elt(self, t) -> TitsElt:
        return TitsElt(self.weyl.identity, f2_vec(t))

    def canonical_lift(self, w: WeylElt) -> TitsElt:
        return TitsElt(w, self.zero)

    def fold_letter(self, mat, inv, t, i):
        """Right-multiply the state (matrices of w on X, torus part t) by
        sigma_i: sigma_w x_t sigma_i = sigma_{w s_i} x_{s_i(t) (+ m_i)},
        the m_i correction appearing exactly on descents."""
        descent = self.weyl._root_is_negative(
            _mat_apply(mat, self.rd.simple_roots[i]))
        t = f2_mat_apply(self._simple_mod2[i], t)
        if descent:
            t = f2_add(t, f2_vec(self.rd.simple_coroots[i]))
        s = self.weyl.simple_mats[i]
        return _mat_mul(mat, s), _mat_mul(s, inv), t

    def fold(self, mat, inv, t, word):
        for i in word:
            mat, inv, t = self.fold_letter(mat, inv, t, i)
        return mat, inv, t

    def mult_by_simple_right(self, a: TitsElt, i: int) -> TitsElt:
        """a . sigma_i, renormalized."""
        mat, inv, t = self.fold_letter(a.w.mat, a.w.inv, a.t, i)
        return TitsElt(self.weyl.from_mats(mat, inv), t)

    def multiply(self, a: TitsElt, b: TitsElt) -> TitsElt:
        mat, inv, t = self.fold(a.w.mat, a.w.inv, a.t, b.w.word)
        return TitsElt(self.weyl.from_mats(mat, inv), f2_add(t, b.t))

    def inverse(self, a: TitsElt) -> TitsElt:
        winv = self.weyl.inverse(a.w)
        p = self.multiply(a, self.canonical_lift(winv))
        if p.w.word:
            raise WeylError("inverse normalization failed")
        return TitsElt(winv, p.t)

    def twist(self, a: TitsElt) -> TitsElt:
        """Conjugation by the distinguished involution delta."""
        tw = self.ic.twist_weyl(a.w)
        t = f2_vec(_mat_apply(self.ic.gamma_mat_dual, a.t))
        return TitsElt(tw, t)

    def sigma_for_root(self, root_idx: int) -> TitsElt:
        """A lift sigma_alpha of the reflection in a positive root alpha
        (canonical for simple alpha; well defined up to x_{m_alpha})."""
        rd = self.rd
        if not rd.is_positive(root_idx):
            raise WeylError("sigma_for_root wants a positive root")
        simple = rd.simple_indices()
        if root_idx in simple:
            return self.canonical_lift(self.weyl.simple(simple.index(root_idx)))
        for i in range(rd.n_simple):
            img = _mat_apply(self.weyl.simple_mats[i], rd.roots[root_idx])
            j = rd.index_of(img)
            if rd.is_positive(j) and rd.heights[j] < rd.heights[root_idx]:
                si = self.canonical_lift(self.weyl.simple(i))
                si_inv = TitsElt(si.w, f2_vec(rd.simple_coroots[i]))
                inner = self.sigma_for_root(j)
                return self.multiply(self.multiply(si, inner), si_inv)
        raise WeylError("no height-reducing simple reflection found")
