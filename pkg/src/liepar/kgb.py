"""The one-sided parameter space X.

Elements are strong involutions exp(2 pi i lambda) . sigma_w . delta
modulo torus conjugation, encoded as (tau, lambda) with tau a twisted
involution and lambda a canonical fiber coordinate.  The space carries
the cross action of W, Cayley transforms between fibers, and a Z/2
grading (compact/noncompact) on imaginary roots; connected components
of the move graph are the strong real forms.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .fiber import (FiberSpace, InfiniteCenterFixedPoints,  # noqa: F401
                    central_fixed_points, fiber_space, tits_group,
                    torus_signature)
from .intlinalg import (RatVecModZ, frac_vec, is_integral, solve_congruence,
                        vec_add, vec_dot)
from .intlinalg import IntMatrix
from .rootdatum import _simple_coordinates, new_root_datum
from .weyl import (InnerClass, TwistedInvolution, WeylError, WeylGroup,
                   _mat_apply, _mat_mul, cartan_class_of, cartan_classes,
                   twisted_involutions)


class NotImaginary(ValueError):
    pass


class NotNoncompactImaginary(ValueError):
    pass


class NotReal(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class KGBElt:
    id: int
    tau: TwistedInvolution
    torus_coord: RatVecModZ
    length: int
    square: RatVecModZ
    status: tuple          # per simple root: 'c' / 'n' / 'r' / 'C'
    cross: tuple           # per simple root: element id
    cayley: tuple          # per simple root: element id or None
    grading: tuple         # sorted (positive imaginary root index, 0/1)
    table: object = field(default=None, repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, KGBElt) and self.table is other.table \
            and self.id == other.id

    def __hash__(self):
        return hash((id(self.table), self.id))

    @property
    def grading_map(self) -> dict:
        return dict(self.grading)

    def tau_word_str(self) -> str:
        return self.tau.tau_word_str()


@dataclass(frozen=True)
class StrongRealForm:
    index: int
    square: RatVecModZ
    base_ids: tuple        # the W_i-orbit in the base fiber
    element_ids: tuple     # all of X[x0]
    quasisplit: bool


class KGBTable:
    def __init__(self, ic, elements, form_partition, quasisplit_forms,
                 squares, generation_log):
        self.ic = ic
        self.elements = elements
        self.form_partition = form_partition
        self.quasisplit_forms = quasisplit_forms
        self.squares = squares
        self.generation_log = generation_log
        self._down = {}
        for x in elements:
            for s, target in enumerate(x.cayley):
                if target is not None:
                    self._down.setdefault((s, target), []).append(x.id)

    def __len__(self):
        return len(self.elements)

    def element(self, i: int) -> KGBElt:
        return self.elements[i]

    def cayley_down_ids(self, s: int, xid: int):
        return tuple(sorted(self._down.get((s, xid), ())))

    def form_of(self, xid: int) -> int:
        for f, ids in self.form_partition.items():
            if xid in ids:
                return f
        raise KeyError(xid)

    def lines(self):
        """One text line per element: id: length cartan# [status] cross
        columns, cayley columns, tau word."""
        classes = cartan_classes(self.ic)
        cls_of = {}
        for c in classes:
            for t in c.members:
                cls_of[t] = c.index
        out = []
        for x in self.elements:
            cr = " ".join(str(j) for j in x.cross)
            cy = " ".join("*" if j is None else str(j) for j in x.cayley)
            word = x.tau_word_str() or "e"
            out.append(f"{x.id}: {x.length} {cls_of[x.tau.index]} "
                       f"[{','.join(x.status)}] {cr} {cy} {word}")
        return out

    def dot(self):
        """DOT graph: cross edges undirected, Cayley edges directed and
        labeled by (1-based) simple index."""
        out = ["digraph kgb {"]
        for x in self.elements:
            out.append(f'  n{x.id} [label="{x.id}"];')
        seen = set()
        for x in self.elements:
            for s, j in enumerate(x.cross):
                if j != x.id and (min(x.id, j), max(x.id, j), s) not in seen:
                    seen.add((min(x.id, j), max(x.id, j), s))
                    out.append(f'  n{min(x.id, j)} -> n{max(x.id, j)} '
                               f'[dir=none, style=dashed, label="{s + 1}"];')
            for s, j in enumerate(x.cayley):
                if j is not None:
                    out.append(f'  n{x.id} -> n{j} [label="{s + 1}"];')
        out.append("}")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# move arithmetic on raw (tau, lambda, grading) data


def _half(t):
    return tuple(Fraction(x, 2) for x in t)


def _square_of(ic, tau_idx, lam) -> RatVecModZ:
    tbl = twisted_involutions(ic)
    fs = fiber_space(tbl.elements[tau_idx], ic)
    v = frac_vec(lam)
    return RatVecModZ.reduce(vec_add(vec_add(v, fs.theta_v.apply(v)), fs.nu))


def _delta_signs(ic) -> dict:
    """For each delta-imaginary positive root beta, the sign (0 or 1) by
    which the distinguished involution delta acts on a root vector for
    beta.  Conjugating by delta a lift of the reflection in beta taken
    inside the root SL(2) either fixes the lift (sign 0) or multiplies
    it by the order-two coroot point (sign 1); the comparison is carried
    out in a simply connected companion datum, where it is faithful, and
    the answer only depends on the Cartan matrix and the diagram
    involution."""
    if 'delta_signs' in ic._cache:
        return ic._cache['delta_signs']
    rd = ic.rd
    cls = twisted_involutions(ic).classification(0)
    k = rd.n_simple
    cartan = [[vec_dot(rd.simple_roots[i], rd.simple_coroots[j])
               for j in range(k)] for i in range(k)]
    sc_rd = new_root_datum(
        cartan, [[1 if i == j else 0 for j in range(k)] for i in range(k)])
    perm = ic.diagram_perm
    sc_ic = InnerClass(sc_rd, IntMatrix.from_rows(
        [[1 if j == perm[i] else 0 for j in range(k)] for i in range(k)]))
    if sc_ic.diagram_perm != perm:
        raise WeylError("companion datum twist mismatch")
    tg = tits_group(sc_ic)
    signs = {}
    for b in cls.im_pos:
        coeffs = _simple_coordinates(rd.roots[b], rd.simple_roots)
        vec = tuple(
            sum(int(c) * sc_rd.simple_roots[i][t]
                for i, c in enumerate(coeffs))
            for t in range(k))
        j = sc_rd.index_of(vec)
        sig = tg.sigma_for_root(j)
        d = tg.multiply(tg.twist(sig), tg.inverse(sig))
        if d.w.word:
            raise WeylError("twist does not fix a delta-imaginary root")
        if all(x == 0 for x in d.t):
            signs[b] = 0
        elif d.t == tg.m_alpha(j):
            signs[b] = 1
        else:
            raise WeylError("sign of delta on a root vector is ill defined")
    ic._cache['delta_signs'] = signs
    return signs


def _base_grading(ic, lam) -> dict:
    """Grading at the distinguished fiber: a delta-imaginary positive
    root is noncompact iff the parity of its pairing with lambda differs
    from the sign by which delta acts on its root vector."""
    tbl = twisted_involutions(ic)
    cls = tbl.classification(0)
    rd = ic.rd
    eps = _delta_signs(ic)
    g = {}
    for b in cls.im_pos:
        pair = vec_dot(rd.roots[b], frac_vec(lam.entries))
        if (2 * pair).denominator != 1:
            raise WeylError("base fiber coordinate pairing not half-integral")
        g[b] = (eps[b] + (0 if pair.denominator == 1 else 1)) % 2
    return g


def _cross_raw(ic, tau_idx, lam, grading, s):
    """Conjugate exp(2 pi i lambda) sigma_w delta by sigma_s."""
    tg = tits_group(ic)
    wg = ic.weyl
    tbl = twisted_involutions(ic)
    rd = ic.rd
    tau = tbl.elements[tau_idx]
    gs = ic.diagram_perm[s]
    ws = wg.simple(s)
    # sigma_s sigma_w sigma_{gamma(s)}^{-1}, with sigma^{-1} = sigma x_m
    mat, inv, t = tg.fold(ws.mat, ws.inv, tg.zero, tau.w.word + (gs,))
    t = tuple((a + b) % 2 for a, b in zip(t, rd.simple_coroots[gs]))
    tau2_idx = tbl.index_by_theta[_mat_mul(mat, ic.gamma_mat)]
    slam = _mat_apply(wg.simple_mats_dual[s], frac_vec(lam.entries))
    shift = _mat_apply(tuple(zip(*inv)), _half(t))
    fs2 = fiber_space(tbl.elements[tau2_idx], ic)
    lam2 = fs2.canonical_form(vec_add(slam, shift))
    smat = wg.simple_mats[s]
    g2 = {}
    for b, g in grading.items():
        img = rd.index_of(_mat_apply(smat, rd.roots[b]))
        if not rd.is_positive(img):
            img = rd.negative_of(img)
        g2[img] = g
    assert set(g2) == set(tbl.classification(tau2_idx).im_pos)
    return tau2_idx, lam2, g2


def _cayley_raw(ic, tau_idx, lam, grading, s):
    """Left-multiply exp(2 pi i lambda) sigma_w delta by sigma_s (alpha_s
    noncompact imaginary)."""
    tg = tits_group(ic)
    wg = ic.weyl
    tbl = twisted_involutions(ic)
    rd = ic.rd
    tau = tbl.elements[tau_idx]
    ws = wg.simple(s)
    mat, inv, t = tg.fold(ws.mat, ws.inv, tg.zero, tau.w.word)
    tau2_idx = tbl.index_by_theta[_mat_mul(mat, ic.gamma_mat)]
    assert tau2_idx == tbl.cayley[tau_idx][s]
    slam = _mat_apply(wg.simple_mats_dual[s], frac_vec(lam.entries))
    shift = _mat_apply(tuple(zip(*inv)), _half(t))
    fs2 = fiber_space(tbl.elements[tau2_idx], ic)
    lam2 = fs2.canonical_form(vec_add(slam, shift))
    alpha = rd.simple_roots[s]
    g2 = {}
    for b, g in grading.items():
        if vec_dot(rd.roots[b], rd.simple_coroots[s]) == 0:
            flip = tuple(x + y for x, y in zip(alpha, rd.roots[b])) \
                in rd.root_index
            g2[b] = g ^ (1 if flip else 0)
    assert set(g2) == set(tbl.classification(tau2_idx).im_pos)
    return tau2_idx, lam2, g2


# ---------------------------------------------------------------------------
# enumeration


def _validate_square(ic, z: RatVecModZ):
    rd = ic.rd
    v = frac_vec(z.entries)
    for a in rd.simple_roots:
        if vec_dot(a, v).denominator != 1:
            raise ValueError("square is not central")
    img = _mat_apply(ic.gamma_mat_dual, v)
    if not is_integral(tuple(x - y for x, y in zip(v, img))):
        raise ValueError("square is not fixed by the twist")
    return RatVecModZ.reduce(v)


def enumerate_X(ic: InnerClass, squares=None) -> KGBTable:
    """The full one-sided space (or its slices over the given central
    squares), built breadth-first from the distinguished fiber."""
    cache_key = None
    if squares is None:
        cache_key = 'kgbtable'
        if cache_key in ic._cache:
            return ic._cache[cache_key]
        squares = central_fixed_points(ic)
    else:
        squares = tuple(sorted((_validate_square(ic, z) for z in squares),
                               key=lambda z: z.entries))
    tbl = twisted_involutions(ic)
    rd = ic.rd
    k = rd.n_simple

    taus, lams, sqs, grads = [], [], [], []
    key_index = {}
    log = []

    def add(tau_idx, lam, z, grading, origin):
        key = (tau_idx, lam)
        if key in key_index:
            j = key_index[key]
            assert sqs[j] == z and grads[j] == grading, \
                "inconsistent duplicate element"
            return j, False
        j = len(taus)
        key_index[key] = j
        taus.append(tau_idx)
        lams.append(lam)
        sqs.append(z)
        grads.append(grading)
        log.append((j,) + origin)
        return j, True

    queue = deque()
    fs0 = fiber_space(tbl.elements[0], ic)
    for z in squares:
        for lam in fs0.elements(z):
            j, _ = add(0, lam, z, _base_grading(ic, lam), (-1, 'seed'))
            queue.append(j)

    cross_links = {}
    cayley_links = {}
    while queue:
        i = queue.popleft()
        tau_idx, lam, z, grading = taus[i], lams[i], sqs[i], grads[i]
        cls = tbl.classification(tau_idx)
        for s in range(k):
            t2, l2, g2 = _cross_raw(ic, tau_idx, lam, grading, s)
            j, new = add(t2, l2, z, g2, (i, f'x{s}'))
            cross_links[(i, s)] = j
            if new:
                queue.append(j)
        for s in range(k):
            a_idx = rd.root_index[rd.simple_roots[s]]
            if cls.status[a_idx] == 'i' and grading[a_idx] == 1:
                t2, l2, g2 = _cayley_raw(ic, tau_idx, lam, grading, s)
                j, new = add(t2, l2, z, g2, (i, f'c{s}'))
                cayley_links[(i, s)] = j
                if new:
                    queue.append(j)

    n = len(taus)
    # statuses
    statuses = []
    for i in range(n):
        cls = tbl.classification(taus[i])
        row = []
        for s in range(k):
            a_idx = rd.root_index[rd.simple_roots[s]]
            st = cls.status[a_idx]
            if st == 'i':
                row.append('n' if grads[i][a_idx] else 'c')
            elif st == 'r':
                row.append('r')
            else:
                row.append('C')
        statuses.append(tuple(row))
    # sanity: squares recompute, lengths nondecreasing
    for i in range(n):
        assert _square_of(ic, taus[i], lams[i].entries) == sqs[i]
        if i:
            assert tbl.elements[taus[i]].length >= \
                tbl.elements[taus[i - 1]].length

    # strong real forms = connected components of the move graph
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for (i, s), j in cross_links.items():
        union(i, j)
    for (i, s), j in cayley_links.items():
        union(i, j)
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    ordered = sorted(comps.values(), key=lambda ids: ids[0])
    no_im = {t.index for t in tbl.elements
             if not tbl.classification(t.index).im_pos}
    quasisplit = [any(taus[i] in no_im for i in ids) for ids in ordered]
    final = [ids for ids, q in zip(ordered, quasisplit) if not q] + \
            [ids for ids, q in zip(ordered, quasisplit) if q]
    form_partition = {f: tuple(ids) for f, ids in enumerate(final)}
    quasisplit_forms = tuple(f for f, ids in enumerate(final)
                             if any(taus[i] in no_im for i in ids))

    elements = []
    for i in range(n):
        elements.append(KGBElt(
            id=i, tau=tbl.elements[taus[i]], torus_coord=lams[i],
            length=tbl.elements[taus[i]].length, square=sqs[i],
            status=statuses[i],
            cross=tuple(cross_links[(i, s)] for s in range(k)),
            cayley=tuple(cayley_links.get((i, s)) for s in range(k)),
            grading=tuple(sorted(grads[i].items()))))
    table = KGBTable(ic, tuple(elements), form_partition, quasisplit_forms,
                     squares, tuple(log))
    for x in elements:
        object.__setattr__(x, 'table', table)
    if cache_key:
        ic._cache[cache_key] = table
    return table


def enumerate_form(ic: InnerClass, x0: KGBElt) -> KGBTable:
    """The subtable X[x0] of everything linked to x0, renumbered."""
    full = x0.table if x0.table is not None else enumerate_X(ic)
    ids = full.form_partition[full.form_of(x0.id)]
    remap = {old: new for new, old in enumerate(ids)}
    elements = []
    for old in ids:
        x = full.elements[old]
        elements.append(KGBElt(
            id=remap[old], tau=x.tau, torus_coord=x.torus_coord,
            length=x.length, square=x.square, status=x.status,
            cross=tuple(remap[j] for j in x.cross),
            cayley=tuple(None if j is None else remap[j] for j in x.cayley),
            grading=x.grading))
    log = tuple((remap[i], remap.get(src, -1), mv)
                for (i, src, mv) in full.generation_log if i in remap)
    table = KGBTable(ic, tuple(elements), {0: tuple(range(len(ids)))},
                     (0,) if full.form_of(x0.id) in full.quasisplit_forms
                     else (), full.squares, log)
    for x in elements:
        object.__setattr__(x, 'table', table)
    return table


def strong_real_forms(ic: InnerClass):
    """Strong real forms as orbits on the distinguished fiber, in the
    canonical order (quasisplit last)."""
    table = enumerate_X(ic)
    forms = []
    for f, ids in table.form_partition.items():
        base = tuple(i for i in ids if table.elements[i].length == 0)
        forms.append(StrongRealForm(
            index=f, square=table.elements[ids[0]].square, base_ids=base,
            element_ids=ids, quasisplit=f in table.quasisplit_forms))
    return tuple(forms)


# ---------------------------------------------------------------------------
# point operations


def grading(x: KGBElt, root_idx: int) -> int:
    g = x.grading_map
    if root_idx in g:
        return g[root_idx]
    rd = x.table.ic.rd
    neg = rd.negative_of(root_idx)
    if neg in g:
        return g[neg]
    raise NotImaginary(f"root {root_idx} is not imaginary at this element")


def cross(s: int, x: KGBElt) -> KGBElt:
    return x.table.elements[x.cross[s]]


def cross_by_word(word, x: KGBElt) -> KGBElt:
    """Cross action of the Weyl element with the given word: the last
    letter acts first."""
    for s in reversed(tuple(word)):
        x = cross(s, x)
    return x


def cayley_up(s: int, x: KGBElt) -> KGBElt:
    if x.status[s] != 'n':
        raise NotNoncompactImaginary(
            f"simple root {s} is not noncompact imaginary here")
    return x.table.elements[x.cayley[s]]


def cayley_down(s: int, x: KGBElt):
    if x.status[s] != 'r':
        raise NotReal(f"simple root {s} is not real here")
    ids = x.table.cayley_down_ids(s, x.id)
    assert len(ids) in (1, 2)
    return tuple(x.table.elements[i] for i in ids)


# ---------------------------------------------------------------------------
# real Weyl groups and Cartans


@dataclass(frozen=True)
class RealWeylInfo:
    total: int
    complex_fixed: int      # |(W_C)^tau|
    stab_imaginary: int     # |Stab_{W_i}(x)|
    real_order: int         # |W_r|
    imaginary_order: int
    orbit_size: int


def real_weyl(x: KGBElt) -> RealWeylInfo:
    table = x.table
    ic = table.ic
    rd = ic.rd
    tbl = twisted_involutions(ic)
    cls = tbl.classification(x.tau.index)
    wg = ic.weyl
    wi = WeylGroup.generate_matrices(
        [rd.reflection_for_root(i).entries for i in cls.im_simples])
    wr = WeylGroup.generate_matrices(
        [rd.reflection_for_root(i).entries for i in cls.re_simples])
    wi_order = len(wi) if wi else 1
    wr_order = len(wr) if wr else 1
    # orbit of x under the imaginary Weyl group's cross action
    gens = [wg.from_matrix(rd.reflection_for_root(i).entries)
            for i in cls.im_simples]
    orbit = {x.id}
    frontier = [x]
    while frontier:
        y = frontier.pop()
        for g in gens:
            z = cross_by_word(g.word, y)
            if z.id not in orbit:
                orbit.add(z.id)
                frontier.append(z)
    stab = wi_order // len(orbit)
    # tau-fixed part of the complex factor
    wc = WeylGroup.generate_matrices(
        [rd.reflection_for_root(i).entries for i in cls.deltaC_simples])
    theta = x.tau.theta_X
    if wc:
        from .weyl import _mat_mul
        fixed = sum(1 for m in wc if _mat_mul(theta, _mat_mul(m, theta)) == m)
    else:
        fixed = 1
    return RealWeylInfo(total=fixed * stab * wr_order, complex_fixed=fixed,
                        stab_imaginary=stab, real_order=wr_order,
                        imaginary_order=wi_order, orbit_size=len(orbit))


def cartans_for(x0: KGBElt):
    """Cartan classes met by the strong real form of x0, with the torus
    signature at a representative."""
    table = x0.table
    ic = table.ic
    ids = table.form_partition[table.form_of(x0.id)]
    seen = {}
    for i in ids:
        x = table.elements[i]
        c = cartan_class_of(ic, x.tau.index)
        if c not in seen:
            fs = fiber_space(x.tau, ic)
            seen[c] = fs.signature
    return tuple(sorted(seen.items()))


@dataclass(frozen=True)
class ReducedSpace:
    z0: tuple          # transversal of Z^Gamma mod {z delta(z)}
    slices: dict       # z -> element ids of X(z)


def reduced_space(ic: InnerClass) -> ReducedSpace:
    """The reduced space: one X(z) slice per class of central squares
    modulo the subgroup {zeta delta(zeta)}."""
    rd = ic.rd
    n = rd.rank
    zg = central_fixed_points(ic)
    rows = [[(1 if i == j else 0) + ic.gamma_mat_dual[i][j]
             for j in range(n)] for i in range(n)]
    rows += [list(a) for a in rd.simple_roots]
    m = IntMatrix.from_rows(rows)

    def equivalent(z1, z2):
        diff = tuple(a - b for a, b in zip(z1.entries, z2.entries))
        target = tuple(diff) + tuple(Fraction(0) for _ in rd.simple_roots)
        return solve_congruence(m, target) is not None

    z0 = []
    for z in zg:
        if not any(equivalent(z, w) for w in z0):
            z0.append(z)
    table = enumerate_X(ic)
    slices = {z: tuple(x.id for x in table.elements if x.square == z)
              for z in z0}
    return ReducedSpace(tuple(z0), slices)
