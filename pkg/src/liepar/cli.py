"""Command-line front end: an interactive REPL / batch interpreter for
root data, strong real forms, the one-sided space X and the two-sided
pair space.

Commands:
  type <Xn[.Xn...][.Tk]> <sc|ad|matrix>   choose a root datum
  inner <c|u|perm>                        choose the inner class twist
  strongreal                              list strong real forms
  cartan                                  list Cartan classes
  kgb <form#>                             table of one strong real form
  X                                       table of the full space
  block <form#> [y2-class]                pair table for one form
  count-z [x2 y2]                         block sizes and total pairs
  realweyl <kgb-id>                       real Weyl group of an element
  dual                                    switch to the dual inner class
  dot <X|form#> <path>                    export the move graph
  quit
Central elements are written `1` (identity), `-1` (the order-2 central
element, when unique) or explicit coordinates `a/b,c/d`.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .fiber import InfiniteCenterFixedPoints, central_fixed_points
from .intlinalg import IntMatrix, RatVecModZ
from .kgb import (enumerate_form, enumerate_X, real_weyl, strong_real_forms,
                  _validate_square)
from .rootdatum import (RootDatumError, from_type, new_root_datum,
                        parse_type)
from .weyl import (InnerClass, InvalidInvolution, cartan_classes,
                   inner_class_from_perm, trivial_inner_class,
                   twisted_involutions)
from .zspace import count_z_blocks, enumerate_Z, langlands_count


class CommandError(Exception):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


def _fmt_vec(v: RatVecModZ) -> str:
    return ",".join(str(a) for a in v.entries)


def parse_central(ic: InnerClass, text: str) -> RatVecModZ:
    if text == "1":
        return _validate_square(
            ic, RatVecModZ.reduce([0] * ic.rank))
    if text == "-1":
        cands = [z for z in central_fixed_points(ic) if z.order == 2]
        if len(cands) != 1:
            raise CommandError(
                f"'-1' is ambiguous: {len(cands)} central elements of "
                "order 2; give explicit coordinates")
        return cands[0]
    try:
        coords = [Fraction(p) for p in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise CommandError(f"cannot parse central element '{text}'")
    if len(coords) != ic.rank:
        raise CommandError(
            f"central element needs {ic.rank} coordinates, got {len(coords)}")
    try:
        return _validate_square(ic, RatVecModZ.reduce(coords))
    except ValueError as exc:
        raise CommandError(str(exc))


def _diagram_involutions(cartan):
    n = len(cartan)
    perms = []

    def backtrack(partial):
        i = len(partial)
        if i == n:
            if all(partial[partial[a]] == a for a in range(n)) and \
                    any(partial[a] != a for a in range(n)):
                perms.append(tuple(partial))
            return
        for j in range(n):
            if j in partial:
                continue
            if any(cartan[a][i] != cartan[partial[a]][j] or
                   cartan[i][a] != cartan[j][partial[a]]
                   for a in range(i)):
                continue
            backtrack(partial + [j])

    backtrack([])
    return perms


class Session:
    def __init__(self, out=None, verbose=False, threads=1):
        self.out = out if out is not None else sys.stdout
        self.verbose = verbose
        self.threads = threads
        self.rd = None
        self.type_desc = None
        self.ic = None
        self.history = []
        self._pending_matrix = None  # (type string, cartan, torus rank)
        self.done = False
        self.lineno = 0

    def emit(self, text=""):
        self.out.write(text + "\n")

    # -- command loop ----------------------------------------------------

    def run(self, lines):
        for raw in lines:
            if self.done:
                break
            self.lineno += 1
            line = raw.rstrip("\n")
            started = time.monotonic()
            try:
                self.handle(line)
            except CommandError as exc:
                col = f", column {exc.column}" if exc.column else ""
                self.emit(f"error (line {self.lineno}{col}): {exc}")
            except (RootDatumError, InvalidInvolution,
                    InfiniteCenterFixedPoints, ValueError) as exc:
                self.emit(f"error (line {self.lineno}): {exc}")
            if self.verbose and line.strip():
                self.emit(f"# {time.monotonic() - started:.3f}s")

    def handle(self, line):
        if self._pending_matrix is not None:
            self._finish_matrix(line)
            return
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            return
        self.history.append(stripped)
        tokens = stripped.split()
        cmd, args = tokens[0], tokens[1:]
        handler = getattr(self, "cmd_" + cmd.replace("-", "_"), None)
        if handler is None:
            raise CommandError(f"unknown command '{cmd}'",
                               column=line.index(cmd) + 1)
        handler(args)

    # -- state helpers ---------------------------------------------------

    def need_rd(self):
        if self.rd is None:
            raise CommandError("no root datum; run 'type' first")
        return self.rd

    def need_ic(self):
        self.need_rd()
        if self.ic is None:
            raise CommandError("no inner class; run 'inner' first")
        return self.ic

    def _x_table(self):
        return enumerate_X(self.need_ic())

    def _form_table(self, text):
        ic = self.need_ic()
        forms = strong_real_forms(ic)
        try:
            k = int(text)
        except ValueError:
            raise CommandError(f"form number expected, got '{text}'")
        if not 0 <= k < len(forms):
            raise CommandError(
                f"form number out of range 0..{len(forms) - 1}")
        return forms[k]

    # -- commands --------------------------------------------------------

    def cmd_type(self, args):
        if len(args) != 2:
            raise CommandError("usage: type <Xn[.Xn...][.Tk]> <sc|ad|matrix>")
        type_string, isogeny = args
        if isogeny in ("sc", "ad"):
            self.rd = from_type(type_string, isogeny)
            self.type_desc = f"{type_string} {isogeny}"
            self.ic = None
            self.emit(f"root datum: {self.type_desc} "
                      f"(rank {self.rd.rank}, "
                      f"{self.rd.n_pos} positive roots)")
        elif isogeny == "matrix":
            blocks, torus = parse_type(type_string)
            cartan = _block_diagonal(blocks)
            self._pending_matrix = (type_string, cartan, torus)
            self.emit(f"enter the lattice basis for {type_string} as rows "
                      "in fundamental-weight/torus coordinates "
                      "(rows ';'-separated, entries ','-separated):")
        else:
            raise CommandError(f"isogeny must be sc, ad or matrix, "
                               f"got '{isogeny}'")

    def _finish_matrix(self, line):
        type_string, cartan, torus = self._pending_matrix
        self._pending_matrix = None
        k = len(cartan)
        n = k + torus
        try:
            rows = [[int(e) for e in row.split(",")]
                    for row in line.strip().split(";")]
        except ValueError:
            raise CommandError("lattice basis rows must be integers")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise CommandError(f"lattice basis must be {n}x{n}")
        basis = IntMatrix.from_rows(rows)
        if basis.det() == 0:
            raise CommandError("lattice basis is singular")
        # simple root j in fundamental-weight coordinates is row j of the
        # Cartan matrix (zero on torus coordinates); rewrite the roots in
        # the chosen basis and read the coroots off the basis columns
        inv = _rational_inverse_rows(rows)
        simple_roots = []
        for j in range(k):
            col = list(cartan[j]) + [0] * torus
            coords = [sum(Fraction(col[t]) * inv[t][c] for t in range(n))
                      for c in range(n)]
            if any(x.denominator != 1 for x in coords):
                raise CommandError(
                    "the root lattice is not contained in this lattice")
            simple_roots.append([int(x) for x in coords])
        simple_coroots = [[rows[i][j] for i in range(n)] for j in range(k)]
        self.rd = new_root_datum(simple_roots, simple_coroots)
        self.type_desc = f"{type_string} matrix"
        self.ic = None
        self.emit(f"root datum: {self.type_desc} "
                  f"(rank {self.rd.rank}, {self.rd.n_pos} positive roots)")

    def cmd_inner(self, args):
        rd = self.need_rd()
        if len(args) != 1:
            raise CommandError("usage: inner <c|u|perm>")
        spec = args[0]
        if spec == "c":
            self.ic = trivial_inner_class(rd)
        elif spec == "u":
            cartan = [[rd.cartan_matrix[i, j] for j in range(rd.n_simple)]
                      for i in range(rd.n_simple)]
            invs = _diagram_involutions(cartan)
            if len(invs) != 1:
                raise CommandError(
                    f"'u' needs a unique nontrivial diagram involution; "
                    f"found {len(invs)}")
            self.ic = self._class_from_perm(invs[0])
        else:
            try:
                perm = tuple(int(p) - 1 for p in spec.split(","))
            except ValueError:
                raise CommandError(f"cannot parse permutation '{spec}'")
            if sorted(perm) != list(range(rd.n_simple)):
                raise CommandError(
                    "permutation must list each simple root 1..k once")
            self.ic = self._class_from_perm(perm)
        perm1 = ",".join(str(p + 1) for p in self.ic.diagram_perm)
        self.emit(f"inner class: diagram permutation {perm1}")

    def _class_from_perm(self, perm):
        rd = self.rd
        n = rd.rank
        if all(p == i for i, p in enumerate(perm)):
            return trivial_inner_class(rd)
        errors = []
        # candidate 1: solved on the span of the simple roots
        if rd.n_simple == n:
            try:
                return inner_class_from_perm(rd, perm)
            except InvalidInvolution as exc:
                errors.append(str(exc))
        # candidates 2/3: a coordinate permutation (sc/ad-style data)
        for orient in (0, 1):
            g = [[0] * n for _ in range(n)]
            for i in range(n):
                j = perm[i] if i < len(perm) else i
                if orient:
                    g[j if i < len(perm) else i][i] = 1
                else:
                    g[i][j if i < len(perm) else i] = 1
            try:
                ic = InnerClass(rd, IntMatrix.from_rows(g))
                if ic.diagram_perm[:len(perm)] == tuple(perm):
                    return ic
            except InvalidInvolution as exc:
                errors.append(str(exc))
        raise CommandError(
            "no lattice involution realizes this permutation ("
            + "; ".join(errors[:1]) + ")")

    def cmd_strongreal(self, args):
        ic = self.need_ic()
        forms = strong_real_forms(ic)
        self.emit(f"{len(forms)} strong real forms (quasisplit last):")
        for f in forms:
            tag = " quasisplit" if f.quasisplit else ""
            self.emit(f"form {f.index}: size {len(f.element_ids)}, "
                      f"square {_fmt_vec(f.square)}, "
                      f"base fiber {list(f.base_ids)}{tag}")

    def cmd_cartan(self, args):
        ic = self.need_ic()
        tbl = twisted_involutions(ic)
        from .fiber import fiber_space
        self.emit(f"{len(cartan_classes(ic))} Cartan classes:")
        for c in cartan_classes(ic):
            rep = tbl.elements[c.rep]
            sig = fiber_space(rep, ic).signature
            word = rep.tau_word_str() or "e"
            self.emit(f"cartan {c.index}: tau {word}, "
                      f"size {len(c.members)}, "
                      f"signature split={sig.a} compact={sig.b} "
                      f"complex={sig.c}")

    def cmd_kgb(self, args):
        if len(args) != 1:
            raise CommandError("usage: kgb <form#>")
        form = self._form_table(args[0])
        table = enumerate_form(self.ic, self._x_table()
                               .elements[form.element_ids[0]])
        self.emit(f"kgb size: {len(table)}")
        for line in table.lines():
            self.emit(line)

    def cmd_X(self, args):
        table = self._x_table()
        self.emit(f"X size: {len(table)}")
        for line in table.lines():
            self.emit(line)

    def cmd_block(self, args):
        if len(args) not in (1, 2):
            raise CommandError("usage: block <form#> [y2-class]")
        ic = self.need_ic()
        form = self._form_table(args[0])
        y2 = parse_central(ic.dual, args[1]) if len(args) == 2 else None
        if not ic.rd.rho_in_X():
            self.emit("note: half-sum of positive roots is not a "
                      "character; counts refer to the rho-cover")
        ids = set(form.element_ids)
        rows = [p for p in enumerate_Z(ic)
                if p.x.id in ids and (y2 is None or p.y_square == y2)]
        self.emit(f"{len(rows)} pairs:")
        for p in rows:
            self.emit(p.line())
        lc = langlands_count(ic, self._x_table().elements[
            form.element_ids[0]])
        per = " ".join(f"{_fmt_vec(z)}:{c}"
                       for z, c in sorted(lc.counts.items(),
                                          key=lambda kv: kv[0].entries))
        self.emit(f"per infinitesimal-character class: {per}")

    def cmd_count_z(self, args):
        ic = self.need_ic()
        if len(args) not in (0, 2):
            raise CommandError("usage: count-z [x2 y2]")
        rx = parse_central(ic, args[0]) if args else None
        ry = parse_central(ic.dual, args[1]) if args else None
        rows, total = count_z_blocks(ic, rx, ry, threads=self.threads)
        tbl = twisted_involutions(ic)
        for idx, nx, ny in rows:
            if nx and ny:
                word = tbl.elements[idx].tau_word_str() or "e"
                self.emit(f"tau {word}: {nx} x {ny} = {nx * ny}")
        self.emit(f"total {total}")

    def cmd_realweyl(self, args):
        if len(args) != 1:
            raise CommandError("usage: realweyl <kgb-id>")
        table = self._x_table()
        try:
            k = int(args[0])
        except ValueError:
            raise CommandError(f"element id expected, got '{args[0]}'")
        if not 0 <= k < len(table):
            raise CommandError(f"element id out of range 0..{len(table) - 1}")
        info = real_weyl(table.elements[k])
        self.emit(f"real weyl group of element {k}: order {info.total} = "
                  f"{info.complex_fixed} (complex) x {info.stab_imaginary} "
                  f"(imaginary stabilizer) x {info.real_order} (real)")

    def cmd_dual(self, args):
        ic = self.need_ic()
        self.ic = ic.dual
        self.rd = self.ic.rd
        self.type_desc = (self.type_desc or "") + " (dual)"
        self.emit(f"switched to the dual inner class "
                  f"(rank {self.rd.rank}, {self.rd.n_pos} positive roots)")

    def cmd_dot(self, args):
        if len(args) != 2:
            raise CommandError("usage: dot <X|form#> <path>")
        what, path = args
        if what == "X":
            table = self._x_table()
        else:
            form = self._form_table(what)
            table = enumerate_form(self.ic, self._x_table()
                                   .elements[form.element_ids[0]])
        with open(path, "w") as fh:
            fh.write(table.dot())
        self.emit(f"wrote {path}")

    def cmd_quit(self, args):
        self.done = True


def _block_diagonal(blocks):
    k = sum(len(b) for b in blocks)
    out = [[0] * k for _ in range(k)]
    offset = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                out[offset + i][offset + j] = b[i][j]
        offset += len(b)
    return [tuple(r) for r in out]


def _rational_inverse_rows(rows):
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)] +
           [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise CommandError("lattice basis is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        pv = aug[k][k]
        aug[k] = [x / pv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [row[n:] for row in aug]


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="liepar",
        description="structure theory of real reductive groups")
    parser.add_argument("--cmd-file", help="read commands from a file")
    parser.add_argument("--verbose", action="store_true",
                        help="append timing comments to command output")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for counting commands")
    opts = parser.parse_args(argv)
    session = Session(sys.stdout, verbose=opts.verbose, threads=opts.threads)
    if opts.cmd_file:
        with open(opts.cmd_file) as fh:
            session.run(fh)
    elif sys.stdin.isatty():
        while not session.done:
            sys.stderr.write("liepar> ")
            sys.stderr.flush()
            line = sys.stdin.readline()
            if not line:
                break
            session.run([line])
    else:
        session.run(sys.stdin)
    return 0


if __name__ == "__main__":
    sys.exit(main())
