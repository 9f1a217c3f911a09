"""Power-torsion and eventual-division analysis of cyclic graded modules,
degreewise local cohomology at (p), and nonrealizability certificates.

Torsion questions for a cyclic module R/J with p in J reduce to normal
forms modulo a Groebner basis of the reduction of J over F_p, taken with
respect to the same monomial order as everywhere else (highest generator
index most significant).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import OutsideScope, TruncationUnsound
from .formal import trivial_tower
from .gradedpoly import (
    GradedPoly,
    MONOMIAL_KEY,
    PolyRing,
    ResidueGradedPoly,
    divide_by_var,
    leading_term,
    monomial,
    monomial_divide,
    monomial_lcm,
    monomial_mul,
    monomial_weight,
)
from .numberring import TowerDescriptor, padic_valuation_rational


# ---------------------------------------------------------------------------
# Cyclic module presentations


@dataclass(frozen=True)
class CyclicModulePresentation:
    """R/J for R = Z_(p)[v_1..v_N] (the q = p grading) and J homogeneous."""

    p: int
    N: int
    gens: tuple  # GradedPoly over the trivial tower, field coefficients
    finitely_presented: bool
    context: object  # "bp" or a TowerDescriptor
    contains_p: object  # smallest a with p^a among constant generators, or None

    @property
    def ring(self):
        return PolyRing(trivial_tower(self.p), N=self.N)

    @staticmethod
    def from_json(obj):
        p = int(obj["p"])
        N = int(obj["N"])
        ring = PolyRing(trivial_tower(p), N=N)
        gens = tuple(GradedPoly.from_json(ring, g) for g in obj.get("ideal", []))
        context = obj.get("context", "bp")
        if isinstance(context, dict) and "tower" in context:
            context = TowerDescriptor.from_json(context["tower"])
        contains_p = _detect_p_power(gens, p)
        return CyclicModulePresentation(
            p=p,
            N=N,
            gens=gens,
            finitely_presented=bool(obj.get("finitely_presented", True)),
            context=context,
            contains_p=contains_p,
        )

    def to_json(self):
        ctx = (
            {"tower": self.context.to_json()}
            if isinstance(self.context, TowerDescriptor)
            else self.context
        )
        return {
            "p": self.p,
            "N": self.N,
            "ideal": [g.to_json() for g in self.gens],
            "finitely_presented": self.finitely_presented,
            "context": ctx,
        }


def _detect_p_power(gens, p):
    best = None
    for g in gens:
        if set(g.terms) == {()}:
            c = g.terms[()]
            # constant generator over the trivial tower: a rational
            r = c.coords[0][0]
            a = padic_valuation_rational(r, p)
            if a >= 1 and (best is None or a < best):
                best = a
    return best


# ---------------------------------------------------------------------------
# Groebner bases over F_p


@dataclass
class GroebnerBasis:
    p: int
    basis: list
    degree_bound: int
    truncated: bool = False


def _monic(f):
    _, lc = leading_term(f)
    return f * lc.inverse()


def _reduce_once(f, basis):
    """One full reduction pass; returns (reduced remainder)."""
    ring = f.ring
    rem = ring.zero()
    work = f
    while not work.is_zero():
        m, c = leading_term(work)
        hit = None
        for b in basis:
            bm, bc = leading_term(b)
            ratio = monomial_divide(m, bm)
            if ratio is not None:
                hit = (ratio, c * bc.inverse(), b)
                break
        if hit is None:
            t = type(f)(ring, {m: c})
            rem = rem + t
            work = work - t
        else:
            ratio, coeff, b = hit
            work = work - type(f)(ring, {ratio: coeff}) * b
    return rem


def normal_form(f, gb):
    """Remainder of f on division by the basis; zero certifies membership
    (only up to the truncation caveat, which is raised as an error)."""
    basis = gb.basis if isinstance(gb, GroebnerBasis) else list(gb)
    rem = _reduce_once(f, basis)
    if isinstance(gb, GroebnerBasis) and gb.truncated and not rem.is_zero():
        raise TruncationUnsound(
            "basis was degree-truncated; nonzero normal form proves nothing"
        )
    return rem


def groebner_basis(gens, degree_bound):
    """Buchberger completion of homogeneous generators over F_p under the
    monomial order, with S-polynomial weight capped by degree_bound."""
    work = [_monic(g) for g in gens if not g.is_zero()]
    if not work:
        return GroebnerBasis(p=0, basis=[], degree_bound=degree_bound)
    ring = work[0].ring
    p = ring.tower.p
    basis = list(work)
    truncated = False
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop()
        fi, fj = basis[i], basis[j]
        mi, _ = leading_term(fi)
        mj, _ = leading_term(fj)
        lcm = monomial_lcm(mi, mj)
        if monomial_mul(mi, mj) == lcm:
            continue  # coprime leading monomials: S-poly reduces to zero
        if monomial_weight(lcm, ring.q) > degree_bound:
            truncated = True
            continue
        si = type(fi)(ring, {monomial_divide(lcm, mi): ring.coeff_one()}) * fi
        sj = type(fj)(ring, {monomial_divide(lcm, mj): ring.coeff_one()}) * fj
        s = si - sj
        rem = _reduce_once(s, basis)
        if not rem.is_zero():
            rem = _monic(rem)
            pairs.extend((k, len(basis)) for k in range(len(basis)))
            basis.append(rem)
    # Inter-reduce for a canonical-ish basis.
    reduced = []
    for idx, b in enumerate(basis):
        others = [x for k, x in enumerate(basis) if k != idx]
        r = _reduce_once(b, others) if others else b
        if not r.is_zero():
            reduced.append(_monic(r))
    seen = []
    for b in reduced:
        if b not in seen:
            seen.append(b)
    seen.sort(key=lambda b: MONOMIAL_KEY(leading_term(b)[0]))
    return GroebnerBasis(p=p, basis=seen, degree_bound=degree_bound, truncated=truncated)


def module_groebner(module, degree_bound=None):
    """Groebner basis of the reduction mod p of the module's ideal."""
    if module.contains_p is None:
        raise OutsideScope("torsion decisions require p in the ideal")
    if module.contains_p > 1:
        raise OutsideScope(
            "ideal contains p^%d but not p; outside the cyclic-over-F_p scope"
            % module.contains_p
        )
    from .gradedpoly import reduce_coeffs_mod_p

    if degree_bound is None:
        degree_bound = 2 * (module.p ** module.N - 1)
    reduced = []
    for g in module.gens:
        if set(g.terms) == {()}:
            continue  # the generator p itself
        r = reduce_coeffs_mod_p(g)
        if not r.is_zero():
            reduced.append(r)
    return groebner_basis(reduced, degree_bound) if reduced else GroebnerBasis(
        p=module.p, basis=[], degree_bound=degree_bound
    )


# ---------------------------------------------------------------------------
# Torsion and eventual-division scans


def is_vn_power_torsion(module, n, k_max, gb=None):
    """Smallest k <= k_max with v_n^k = 0 in R/J, else a bounded 'no' with
    the nonzero normal forms as replayable witnesses."""
    if gb is None:
        gb = module_groebner(module)
    ring = gb.basis[0].ring if gb.basis else PolyRing(
        trivial_tower(module.p), N=module.N, coefficients="residue"
    )
    nonzero = []
    for k in range(1, k_max + 1):
        f = ResidueGradedPoly(ring, {monomial({n: k}): ring.coeff_one()})
        nf = normal_form(f, gb)
        if nf.is_zero():
            return {"torsion": True, "k": k, "n": n}
    # record a few nonzero normal forms as witnesses
    for k in (1, k_max):
        f = ResidueGradedPoly(ring, {monomial({n: k}): ring.coeff_one()})
        nonzero.append(
            {"element": "v_%d^%d" % (n, k), "normal_form": normal_form(f, gb).to_json()}
        )
    return {"torsion": False, "no_up_to": k_max, "n": n, "nonzero_normal_forms": nonzero}


def eventual_division_module(module, r_index, s_index, m_max, gb=None):
    """Smallest m <= m_max and y with v_s * y = v_r^m in R/J; the zero case
    is preferred over the division case at equal m."""
    if gb is None:
        gb = module_groebner(module)
    ring = gb.basis[0].ring if gb.basis else PolyRing(
        trivial_tower(module.p), N=module.N, coefficients="residue"
    )
    for m in range(1, m_max + 1):
        f = ResidueGradedPoly(ring, {monomial({r_index: m}): ring.coeff_one()})
        nf = normal_form(f, gb)
        if nf.is_zero():
            return {"found": True, "case": "zero", "m": m, "y": "0",
                    "r": r_index, "s": s_index}
        y = divide_by_var(nf, s_index)
        if y is not None:
            return {"found": True, "case": "divide", "m": m, "y": y.to_json(),
                    "r": r_index, "s": s_index}
    return {"found": False, "not_found_up_to": m_max, "r": r_index, "s": s_index}


# ---------------------------------------------------------------------------
# Smith normal form and degreewise local cohomology


def smith_normal_form(A):
    """U, D, V with U*A*V = D diagonal, U and V unimodular, and each
    diagonal entry dividing the next; exact integer arithmetic."""
    A = [list(map(int, row)) for row in A]
    g = len(A)
    r = len(A[0]) if g else 0
    U = [[int(i == j) for j in range(g)] for i in range(g)]
    V = [[int(i == j) for j in range(r)] for i in range(r)]

    def row_op(i1, i2, c):  # row i1 += c * row i2 (in A and U)
        for k in range(r):
            A[i1][k] += c * A[i2][k]
        for k in range(g):
            U[i1][k] += c * U[i2][k]

    def col_op(j1, j2, c):
        for k in range(g):
            A[k][j1] += c * A[k][j2]
        for k in range(r):
            V[k][j1] += c * V[k][j2]

    def row_swap(i1, i2):
        A[i1], A[i2] = A[i2], A[i1]
        U[i1], U[i2] = U[i2], U[i1]

    def col_swap(j1, j2):
        for k in range(g):
            A[k][j1], A[k][j2] = A[k][j2], A[k][j1]
        for k in range(r):
            V[k][j1], V[k][j2] = V[k][j2], V[k][j1]

    def row_negate(i):
        for k in range(r):
            A[i][k] = -A[i][k]
        for k in range(g):
            U[i][k] = -U[i][k]

    t = 0
    while t < min(g, r):
        # find a pivot: smallest nonzero |entry| in the remaining block
        pivot = None
        for i in range(t, g):
            for j in range(t, r):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        if A[t][t] < 0:
            row_negate(t)
        dirty = False
        for i in range(t + 1, g):
            if A[i][t]:
                qv = A[i][t] // A[t][t]
                row_op(i, t, -qv)
                if A[i][t]:
                    dirty = True
        for j in range(t + 1, r):
            if A[t][j]:
                qv = A[t][j] // A[t][t]
                col_op(j, t, -qv)
                if A[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot divides everything in its row/column; check the block
        bad = None
        for i in range(t + 1, g):
            for j in range(t + 1, r):
                if A[i][j] % A[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            # fold the offending row into the pivot row and redo the step;
            # afterwards the pivot divides the whole remaining block, which
            # is what makes the final diagonal a divisibility chain
            row_op(t, bad, 1)
            continue
        t += 1
    return U, A, V


def local_cohomology_degreewise(presentations, p):
    """Per degree: M_d = coker(Z^r -> Z^g) from a g x r integer matrix;
    H0 at (p) lists the p-power elementary divisors, H1 corank is the free
    rank; H^n vanishes for n >= 2."""
    report = {}
    for degree, matrix in presentations.items():
        if not matrix or not matrix[0]:
            g = len(matrix)
            report[str(degree)] = {"H0_invariants": [], "H1_corank": g, "H2_and_above": 0}
            continue
        for row in matrix:
            for x in row:
                if int(x) != x:
                    from .errors import NonIntegerMatrix

                    raise NonIntegerMatrix("presentation entries must be integers")
        _, D, _ = smith_normal_form(matrix)
        g = len(matrix)
        diag = [D[i][i] for i in range(min(g, len(matrix[0])))]
        rank = sum(1 for x in diag if x != 0)
        h0 = []
        for x in diag:
            if x == 0 or abs(x) == 1:
                continue
            a = 0
            y = abs(x)
            while y % p == 0:
                y //= p
                a += 1
            if a:
                h0.append(p ** a)
        h0.sort()
        report[str(degree)] = {
            "H0_invariants": h0,
            "H1_corank": g - rank,
            "H2_and_above": 0,
        }
    return {"p": p, "degrees": report}


# ---------------------------------------------------------------------------
# Verdict assembly


@dataclass
class ObstructionCertificate:
    verdict: str
    rules_fired: list
    witnesses: dict
    scan_log: list
    bounds: dict

    def to_json(self):
        return {
            "verdict": self.verdict,
            "rules_fired": self.rules_fired,
            "witnesses": self.witnesses,
            "scan_log": self.scan_log,
            "bounds": self.bounds,
        }


def realizability_obstruction(module, k_max=20, m_max=32):
    """Apply the verdict rules in order:

    R1 — the module is p-power-torsion, some v_{n+1} acts with eventual
         v_n-division modulo the ideal, and the module is NOT
         v_n-power-torsion up to k_max;
    R2 — the context tower is not totally ramified and the module is not
         v_n-power-torsion for some n (with V^A itself witnessed by 1);
    R3 — finite presentation declared and every scanned v_n is torsion.

    Otherwise NoObstructionFound with the scan log, or OutsideScope.
    """
    bounds = {"k_max": k_max, "m_max": m_max}
    scan_log = []
    tower_context = isinstance(module.context, TowerDescriptor)
    nontrivially_unramified = tower_context and module.context.f > 1

    if module.contains_p is None:
        # The free route: no p-torsion relation. V^A over itself qualifies.
        if not module.gens and tower_context:
            if nontrivially_unramified:
                return ObstructionCertificate(
                    verdict="NotRealizable",
                    rules_fired=["R2"],
                    witnesses={
                        "not_p_power_torsion_witness": "1",
                        "tower": module.context.to_json(),
                        "reason": "context tower is not totally ramified and "
                        "the module is not p-power-torsion",
                    },
                    scan_log=[
                        {
                            "check": "p-power-torsion of the generator 1",
                            "outcome": "p^k * 1 != 0 for all k (free module)",
                        }
                    ],
                    bounds=bounds,
                )
            return ObstructionCertificate(
                verdict="NoObstructionFound",
                rules_fired=[],
                witnesses={},
                scan_log=[{"check": "context tower totally ramified or trivial"}],
                bounds=bounds,
            )
        return ObstructionCertificate(
            verdict="OutsideScope",
            rules_fired=[],
            witnesses={"reason": "ideal does not contain a power of p"},
            scan_log=scan_log,
            bounds=bounds,
        )
    if module.contains_p > 1:
        return ObstructionCertificate(
            verdict="OutsideScope",
            rules_fired=[],
            witnesses={
                "reason": "ideal contains p^%d but not p" % module.contains_p
            },
            scan_log=scan_log,
            bounds=bounds,
        )

    gb = module_groebner(module)
    torsion = {}
    for n in range(1, module.N + 1):
        torsion[n] = is_vn_power_torsion(module, n, k_max, gb=gb)
        scan_log.append(torsion[n])

    # R1: p-torsion (automatic: p is in the ideal, the module is cyclic),
    # eventual division witness, and non-torsion in the same index.
    for n in range(1, module.N):
        if torsion[n]["torsion"]:
            continue
        div = eventual_division_module(module, n + 1, n, m_max, gb=gb)
        scan_log.append(div)
        if div["found"]:
            return ObstructionCertificate(
                verdict="NotRealizable",
                rules_fired=["R1"],
                witnesses={
                    "p_power_torsion": {"k": 1, "reason": "p lies in the ideal"},
                    "division_witness": div,
                    "not_vn_power_torsion": torsion[n],
                },
                scan_log=scan_log,
                bounds=bounds,
            )

    if nontrivially_unramified:
        for n in range(1, module.N + 1):
            if not torsion[n]["torsion"]:
                return ObstructionCertificate(
                    verdict="NotRealizable",
                    rules_fired=["R2"],
                    witnesses={
                        "tower": module.context.to_json(),
                        "not_vn_power_torsion": torsion[n],
                    },
                    scan_log=scan_log,
                    bounds=bounds,
                )

    if module.finitely_presented and all(t["torsion"] for t in torsion.values()):
        return ObstructionCertificate(
            verdict="NotRealizable",
            rules_fired=["R3"],
            witnesses={"torsion_exponents": {str(n): torsion[n]["k"] for n in torsion}},
            scan_log=scan_log,
            bounds=bounds,
        )

    return ObstructionCertificate(
        verdict="NoObstructionFound",
        rules_fired=[],
        witnesses={
            "torsion_exponents": {
                str(n): (torsion[n].get("k") if torsion[n]["torsion"] else
                         {"unresolved_up_to": k_max})
                for n in torsion
            }
        },
        scan_log=scan_log,
        bounds=bounds,
    )
