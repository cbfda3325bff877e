"""Exact linear programming over rationals.

A small two-phase simplex with Bland's rule, operating entirely on
``fractions.Fraction``.  Feasibility answers are therefore exact booleans that
cannot flip on rounding, which is what the Blackwell-order decisions require.

Also provides a Fourier-Motzkin eliminator used as an independent feasibility
oracle in the test suite.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class LPError(RuntimeError):
    pass


def _simplex(tableau, basis, n_total, cost_row):
    """Minimise the cost row in place with Bland's rule; returns objective."""
    m = len(tableau)
    while True:
        enter = -1
        for j in range(n_total):
            if cost_row[j] < 0:
                enter = j
                break
        if enter < 0:
            return -cost_row[n_total]
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][n_total] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            raise LPError("unbounded linear program")
        piv = tableau[leave][enter]
        row = tableau[leave]
        for j in range(n_total + 1):
            row[j] /= piv
        for i in range(m):
            if i == leave:
                continue
            f = tableau[i][enter]
            if f != 0:
                ri = tableau[i]
                for j in range(n_total + 1):
                    ri[j] -= f * row[j]
        f = cost_row[enter]
        if f != 0:
            for j in range(n_total + 1):
                cost_row[j] -= f * row[j]
        basis[leave] = enter


def solve_lp(A, b, c=None, maximize=False):
    """Solve min/max c.x subject to A x = b, x >= 0, exactly.

    Parameters
    ----------
    A : list of rows (lists of Fraction-compatible values)
    b : list of right-hand sides
    c : objective coefficients (None = pure feasibility)

    Returns
    -------
    (status, x, value) where status is 'optimal', 'infeasible' or 'unbounded';
    x is a list of Fractions (None when infeasible).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    n_total = n + m  # original + artificial
    tableau = []
    for i in range(m):
        row = A[i] + [ONE if j == i else ZERO for j in range(m)] + [b[i]]
        tableau.append(row)
    basis = [n + i for i in range(m)]

    # phase 1: minimise the sum of artificials
    cost = [ZERO] * (n_total + 1)
    for i in range(m):
        for j in range(n):
            cost[j] -= tableau[i][j]
        cost[n_total] -= tableau[i][n_total]
    art_sum = _simplex(tableau, basis, n_total, cost)
    if art_sum != 0:
        return "infeasible", None, None

    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if tableau[i][j] != 0:
                    piv = tableau[i][j]
                    row = tableau[i]
                    for k in range(n_total + 1):
                        row[k] /= piv
                    for i2 in range(m):
                        if i2 != i and tableau[i2][j] != 0:
                            f = tableau[i2][j]
                            r2 = tableau[i2]
                            for k in range(n_total + 1):
                                r2[k] -= f * row[k]
                    basis[i] = j
                    break

    if c is not None:
        sign = -1 if maximize else 1
        cost = [sign * Fraction(v) for v in c] + [ZERO] * (m + 1)
        for i in range(m):
            if basis[i] < n and cost[basis[i]] != 0:
                f = cost[basis[i]]
                for j in range(n_total + 1):
                    cost[j] -= f * tableau[i][j]
        # forbid re-entering artificial columns
        for j in range(n, n_total):
            cost[j] = Fraction(10**18)
        try:
            obj = _simplex(tableau, basis, n_total, cost)
        except LPError:
            return "unbounded", None, None
        value = -obj if maximize else obj
    else:
        value = ZERO

    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][n_total]
    return "optimal", x, value


def feasible(A, b):
    """Exact feasibility of {A x = b, x >= 0}; returns (bool, x_or_None)."""
    status, x, _ = solve_lp(A, b, c=None)
    return status == "optimal", x


# -- Fourier-Motzkin elimination -------------------------------------------


def fourier_motzkin_feasible(ineqs, n):
    """Exact feasibility of a system of inequalities sum_j a_j x_j <= c.

    `ineqs` is a list of (coeffs, const) with len(coeffs) == n.  Variables are
    eliminated one at a time; the residual constant constraints decide
    feasibility.  Intended as an independent oracle for small systems.
    """
    rows = [( [Fraction(a) for a in coeffs], Fraction(c) ) for coeffs, c in ineqs]

    def normalise(row):
        coeffs, c = row
        nz = [a for a in coeffs if a != 0]
        if not nz:
            return None
        scale = abs(nz[0])
        return tuple(a / scale for a in coeffs), c / scale

    for var in range(n):
        pos, neg, rest = [], [], []
        for coeffs, c in rows:
            a = coeffs[var]
            if a > 0:
                pos.append((coeffs, c))
            elif a < 0:
                neg.append((coeffs, c))
            else:
                rest.append((coeffs, c))
        new_rows = rest
        seen = set()
        for cp, kp in pos:
            for cn, kn in neg:
                ap, an = cp[var], -cn[var]
                coeffs = [an * cp[j] + ap * cn[j] for j in range(n)]
                const = an * kp + ap * kn
                key = normalise((coeffs, const))
                if key is None:
                    if const < 0:
                        return False
                    continue
                if key not in seen:
                    seen.add(key)
                    new_rows.append((list(key[0]), key[1]))
        rows = new_rows
    return all(c >= 0 for _, c in rows)


def equalities_to_inequalities(A, b, nonneg=True):
    """Convert {A x = b, (x >= 0)} to a <=-inequality list for Fourier-Motzkin."""
    n = len(A[0]) if A else 0
    ineqs = []
    for row, rhs in zip(A, b):
        r = [Fraction(v) for v in row]
        ineqs.append((r, Fraction(rhs)))
        ineqs.append(([-v for v in r], -Fraction(rhs)))
    if nonneg:
        for j in range(n):
            coeffs = [ZERO] * n
            coeffs[j] = -ONE
            ineqs.append((coeffs, ZERO))
    return ineqs
