"""Conformal representations of Leibniz algebras on free k[T]-modules.

Given a left Leibniz bracket on g, the module is M0 = V (+) (g (x) V) for
a module V over the quotient Lie algebra of g by the span of squares.
The representing map sends x to rho0(x) - T rho1(x) inside the polynomial
current algebra over End(M0); the commutator current structure makes it a
homomorphism of dialgebras, and the associative one realizes the
embedding of g into an associative dialgebra.

Bracket bookkeeping: inputs are LEFT Leibniz ([ab] = a|-b in the induced
dialgebra).  The representation formulas use the mirror bracket
r(a, x) = a -| x = -[xa], under which both operator identities
[rho0(a), rho0(b)] = rho0(r(a,b)) and [rho1(a), rho0(b)] = rho1(r(a,b))
hold on the nose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .current import CurrentPA, PolyMat
from .envelope import coefficient_dialgebra
from .errors import InputError
from .fd import FDAlgebra, FDDialgebra, Vec, leibniz_to_dialgebra
from .linalg import RowSpace
from .translate import derive_variety, zero_dialgebra_axioms

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LeibnizData:
    """A left Leibniz algebra, its quotient Lie algebra, and a module."""

    def __init__(self, bracket: FDAlgebra, module: str = "trivial"):
        self.g = bracket
        self.dialgebra: FDDialgebra = leibniz_to_dialgebra(bracket)  # validates Leibniz
        d = bracket.dim

        squares = RowSpace()
        for i in range(d):
            squares.add({k: v for k, v in enumerate(bracket.table[i][i]) if v})
            for j in range(i + 1, d):
                pol = [bracket.table[i][j][k] + bracket.table[j][i][k] for k in range(d)]
                squares.add({k: v for k, v in enumerate(pol) if v})
        self.squares = squares
        pivots = set(squares.pivots())
        self.l_basis = tuple(i for i in range(d) if i not in pivots)  # g indices lifting l

        for row in squares.rows():  # the span must be a two-sided ideal
            rv = self._row_vec(row)
            for i in range(d):
                b = bracket.basis(i)
                for prod in (bracket.product(b, rv), bracket.product(rv, b)):
                    if not squares.contains({k: v for k, v in enumerate(prod) if v}):
                        raise InputError("span of squares is not an ideal; bracket is inconsistent")

        self._check_quotient_lie()

        if module == "trivial":
            self.dim_v = 1
            self.action = [self._zero_mat(1) for _ in range(d)]
        elif module == "adjoint":
            if not self.l_basis:
                raise InputError("quotient Lie algebra is zero; adjoint module is empty")
            self.dim_v = len(self.l_basis)
            self.action = [self._adjoint_action(t) for t in range(d)]
            self._check_module_axiom()
        else:
            raise InputError(f"unknown module choice {module!r} (trivial or adjoint)")
        self.module = module

    def _row_vec(self, row: dict) -> Vec:
        out = [_ZERO] * self.g.dim
        for k, v in row.items():
            out[k] = v
        return tuple(out)

    def project_l(self, vec: Vec) -> tuple:
        """Coordinates of the image of vec in the quotient Lie algebra."""
        red = self.squares.reduce({k: v for k, v in enumerate(vec) if v})
        return tuple(red.get(i, _ZERO) for i in self.l_basis)

    def l_bracket(self, cx: tuple, cy: tuple) -> tuple:
        d = self.g.dim
        x = [_ZERO] * d
        y = [_ZERO] * d
        for pos, i in enumerate(self.l_basis):
            x[i] = cx[pos]
            y[i] = cy[pos]
        return self.project_l(self.g.product(tuple(x), tuple(y)))

    def _check_quotient_lie(self):
        basis = [tuple(_ONE if k == pos else _ZERO for k in range(len(self.l_basis)))
                 for pos in range(len(self.l_basis))]
        for x in basis:
            if any(self.l_bracket(x, x)):
                raise InputError("quotient bracket is not antisymmetric")
        for x, y, z in itertools.product(basis, repeat=3):
            jac = [a + b + c for a, b, c in zip(
                self.l_bracket(self.l_bracket(x, y), z),
                self.l_bracket(self.l_bracket(y, z), x),
                self.l_bracket(self.l_bracket(z, x), y))]
            if any(jac):
                raise InputError("quotient bracket fails the Jacobi identity")

    def _zero_mat(self, n: int) -> list:
        return [[_ZERO] * n for _ in range(n)]

    def _adjoint_action(self, t: int) -> list:
        n = len(self.l_basis)
        xbar = self.project_l(self.g.basis(t))
        mat = self._zero_mat(n)
        for col in range(n):
            v = tuple(_ONE if k == col else _ZERO for k in range(n))
            img = self.l_bracket(xbar, v)
            for row in range(n):
                mat[row][col] = img[row]
        return mat

    def _check_module_axiom(self):
        n = self.dim_v
        d = self.g.dim

        def act(t, v):
            return tuple(sum(self.action[t][r][c] * v[c] for c in range(n)) for r in range(n))

        for s in range(d):
            for t in range(d):
                br = self.g.product(self.g.basis(s), self.g.basis(t))
                for col in range(n):
                    v = tuple(_ONE if k == col else _ZERO for k in range(n))
                    lhs = tuple(a - b for a, b in zip(act(s, act(t, v)), act(t, act(s, v))))
                    xy = self.project_l(br)
                    g_lift = [_ZERO] * d
                    for pos, i in enumerate(self.l_basis):
                        g_lift[i] = xy[pos]
                    rhs_mat = [[sum(self.action[i][r][c] * g_lift[i] for i in range(d))
                                for c in range(n)] for r in range(n)]
                    rhs = tuple(sum(rhs_mat[r][c] * v[c] for c in range(n)) for r in range(n))
                    if lhs != rhs:
                        raise InputError("module action does not respect the quotient bracket")


@dataclass
class ConformalRep:
    data: LeibnizData
    dim_m0: int
    rho0: list            # constant PolyMat per g basis element
    rho1: list
    rho: list             # rho0 - T rho1
    cur: CurrentPA        # associative current structure on End M0
    cur_lie: CurrentPA    # commutator current structure

    def rho_of(self, vec: Vec) -> PolyMat:
        out: PolyMat = {}
        for i, c in enumerate(vec):
            if c:
                for k, v in self.rho[i].items():
                    s = out.get(k, 0) + c * v
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out


def build_rho(bracket: FDAlgebra, module: str = "trivial") -> ConformalRep:
    """The faithful conformal representation on V (+) (g (x) V)."""
    data = LeibnizData(bracket, module)
    g = bracket
    d = g.dim
    nv = data.dim_v
    if nv == 0:
        raise InputError("module V must be nonzero")
    dim_m0 = nv * (1 + d)

    def v_index(alpha):
        return alpha

    def gv_index(i, alpha):
        return nv + i * nv + alpha

    rho0 = []
    rho1 = []
    rho = []
    for t in range(d):
        m0: PolyMat = {}
        act = data.action[t]
        for alpha in range(nv):
            for beta in range(nv):
                if act[beta][alpha]:
                    m0[(0, v_index(beta), v_index(alpha))] = act[beta][alpha]
        for i in range(d):
            # a (x) u  ->  a (x) xbar.u  +  [x a] (x) u
            for alpha in range(nv):
                col = gv_index(i, alpha)
                for beta in range(nv):
                    if act[beta][alpha]:
                        key = (0, gv_index(i, beta), col)
                        m0[key] = m0.get(key, _ZERO) + act[beta][alpha]
                br = g.product(g.basis(t), g.basis(i))
                for j, c in enumerate(br):
                    if c:
                        key = (0, gv_index(j, alpha), col)
                        s = m0.get(key, _ZERO) + c
                        if s:
                            m0[key] = s
                        else:
                            m0.pop(key, None)
        m1: PolyMat = {}
        for alpha in range(nv):
            m1[(0, gv_index(t, alpha), v_index(alpha))] = _ONE
        rho0.append(m0)
        rho1.append(m1)
        full = dict(m0)
        for (k, r, c), v in m1.items():
            full[(1, r, c)] = -v
        rho.append(full)
    return ConformalRep(data, dim_m0, rho0, rho1, rho,
                        CurrentPA(dim_m0, bracket=False),
                        CurrentPA(dim_m0, bracket=True))


@dataclass
class RepReport:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, name: str, ok: bool, detail: str = ""):
        self.checks[name] = ok
        if not ok:
            self.failures.append(f"{name}: {detail}")

    def lines(self) -> list[str]:
        return [f"  {name}: {'pass' if ok else 'FAIL'}" for name, ok in self.checks.items()]


def verify_representation(rep: ConformalRep) -> RepReport:
    """The four defining checks of the representation."""
    report = RepReport()
    cur = rep.cur
    d = rep.data.g.dim
    dlg = rep.data.dialgebra

    ok = all(cur.is_zero(_mat_prod(cur, rep.rho1[a], rep.rho1[b]))
             for a in range(d) for b in range(d))
    report.record("rho1-product-vanishes", ok)

    ok = True
    detail = ""
    for a in range(d):
        for b in range(d):
            r_ab = dlg.lprod(dlg.basis(a), dlg.basis(b))  # the mirror bracket a -| b
            lhs0 = cur.commutator(rep.rho0[a], rep.rho0[b])
            rhs0 = _lin_comb(cur, rep.rho0, r_ab)
            lhs1 = cur.commutator(rep.rho1[a], rep.rho0[b])
            rhs1 = _lin_comb(cur, rep.rho1, r_ab)
            if not cur.eq(lhs0, rhs0):
                ok, detail = False, f"rho0 bracket at ({a},{b})"
                break
            if not cur.eq(lhs1, rhs1):
                ok, detail = False, f"rho1 bracket at ({a},{b})"
                break
        if not ok:
            break
    report.record("operator-brackets", ok, detail)

    cd = coefficient_dialgebra(rep.cur_lie)
    ok = True
    detail = ""
    for a in range(d):
        for b in range(d):
            ba, bb = dlg.basis(a), dlg.basis(b)
            if not cur.eq(cd.rprod(rep.rho[a], rep.rho[b]), rep.rho_of(dlg.rprod(ba, bb))):
                ok, detail = False, f"|- at ({a},{b})"
                break
            if not cur.eq(cd.lprod(rep.rho[a], rep.rho[b]), rep.rho_of(dlg.lprod(ba, bb))):
                ok, detail = False, f"-| at ({a},{b})"
                break
        if not ok:
            break
    report.record("dialgebra-homomorphism", ok, detail)

    span = RowSpace(dict(m) for m in rep.rho)
    report.record("faithful", span.rank == d, f"rank {span.rank} < {d}")
    return report


def _mat_prod(cur: CurrentPA, a: PolyMat, b: PolyMat) -> PolyMat:
    out = cur.zero()
    for p, q, c in cur.base_product(a, b):
        out = cur.add(out, cur.t_pow(c, p + q))
    return out


def _lin_comb(cur: CurrentPA, mats: Sequence[PolyMat], vec: Vec) -> PolyMat:
    out = cur.zero()
    for i, c in enumerate(vec):
        if c:
            out = cur.add(out, cur.scale(mats[i], c))
    return out


def embed_associative(bracket: FDAlgebra, module: str = "trivial",
                      truncation: int = 2) -> tuple[RepReport, ConformalRep]:
    """Realize g inside the associative coefficient dialgebra of the current
    algebra and verify the associative-dialgebra identities on the subspace
    generated by the image under both products, words of length <= 3."""
    rep = build_rho(bracket, module)
    cur = rep.cur
    cd = coefficient_dialgebra(cur)
    report = RepReport()

    d = bracket.dim
    layer1 = [rep.rho[i] for i in range(d)]
    layer2 = [op(x, y) for x in layer1 for y in layer1 for op in (cd.rprod, cd.lprod)]
    layer3 = [op(x, y) for x, y in itertools.chain(
        itertools.product(layer1, layer2), itertools.product(layer2, layer1))
        for op in (cd.rprod, cd.lprod)]
    span = RowSpace()
    basis_mats = []
    for m in itertools.chain(layer1, layer2, layer3):
        if m and span.add(dict(m)):
            basis_mats.append(m)
    report.record("generated-subspace", True, "")

    ok = all(max((k for (k, _r, _c) in m), default=0) <= truncation for m in basis_mats)
    report.record("degree-truncation", ok, f"degree exceeds {truncation}")

    dv_axioms = list(zero_dialgebra_axioms())
    from .varieties import builtin_identity_set
    diass = derive_variety(builtin_identity_set("associative")).derived
    bad = None
    for p in itertools.chain(dv_axioms, diass):
        for combo in itertools.product(basis_mats, repeat=3):
            if not cur.is_zero(cd.eval_dipoly(p, list(combo))):
                bad = f"{p} fails on generated subspace"
                break
        if bad:
            break
    report.record("associative-dialgebra-identities", bad is None, bad or "")

    dlg = rep.data.dialgebra
    ok = True
    for a in range(d):
        for b in range(d):
            lhs = cur.add(cd.lprod(rep.rho[a], rep.rho[b]),
                          cur.scale(cd.rprod(rep.rho[b], rep.rho[a]), -1))
            if not cur.eq(lhs, rep.rho_of(dlg.lprod(dlg.basis(a), dlg.basis(b)))):
                ok = False
    report.record("mirror-bracket-identity", ok,
                  "rho(a)-|rho(b) - rho(b)|-rho(a) != rho(a-|b)")
    return report, rep
