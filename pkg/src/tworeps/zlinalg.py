"""Exact integer linear algebra.

Smith normal form over Z with full transform tracking, the two solvers that
power every cohomology decision (solve modulo K, and preimage with
divisible/rational coefficients), an integer left-kernel routine, and a
vectorized diagonalization over Z/K for large structured systems.

Matrices are dense: plain nested sequences of Python ints on the way in,
``numpy`` object arrays (exact big-int entries) inside the Smith engine.
The mod-K routines run in ``int64``; all their values stay reduced into
``[0, K)`` so the arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import ValidationError


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def as_object_matrix(A, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Copy input into a 2-D object-dtype array of Python ints."""
    if isinstance(A, np.ndarray) and A.dtype == object and A.ndim == 2:
        arr = A.copy()
    else:
        rows = [list(map(int, row)) for row in A]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValidationError("ragged matrix")
            arr = np.empty((len(rows), ncols), dtype=object)
            for i, r in enumerate(rows):
                arr[i, :] = r
        else:
            arr = np.empty((0, 0) if shape is None else shape, dtype=object)
    if shape is not None and tuple(arr.shape) != tuple(shape):
        raise ValidationError(f"matrix shape {arr.shape} != expected {shape}")
    return arr


def _eye_object(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


@dataclass(frozen=True)
class SNFResult:
    """U @ A @ V == D with U, V unimodular and D diagonal.

    ``divisors`` lists the full diagonal of D (length min(m, n)): a chain
    d_1 | d_2 | ... of nonnegative integers with zeros trailing; ``rank`` is
    the number of nonzero entries.
    """

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    divisors: tuple[int, ...]
    rank: int


class _Reduction:
    """Smith reduction by alternating row/column clearing.

    Pivot choice is deterministic: least absolute nonzero entry of the
    remaining submatrix, row-major tie-break.  Row operations are mirrored
    on U (optional) and on an optional right-hand-side vector, so callers
    can obtain U @ v without materializing U.  Column operations are
    mirrored on V.
    """

    def __init__(self, A, want_U: bool = False, want_V: bool = False, rhs=None):
        self.D = as_object_matrix(A)
        self.m, self.n = self.D.shape
        self.U = _eye_object(self.m) if want_U else None
        self.V = _eye_object(self.n) if want_V else None
        if rhs is not None and len(rhs) != self.m:
            raise ValidationError(f"rhs length {len(rhs)} != row count {self.m}")
        self.rhs = list(rhs) if rhs is not None else None

    # -- elementary operations -------------------------------------------

    def _swap_rows(self, i, j):
        if i == j:
            return
        self.D[[i, j], :] = self.D[[j, i], :]
        if self.U is not None:
            self.U[[i, j], :] = self.U[[j, i], :]
        if self.rhs is not None:
            self.rhs[i], self.rhs[j] = self.rhs[j], self.rhs[i]

    def _swap_cols(self, i, j):
        if i == j:
            return
        self.D[:, [i, j]] = self.D[:, [j, i]]
        if self.V is not None:
            self.V[:, [i, j]] = self.V[:, [j, i]]

    def _addmul_row(self, dst, src, q):
        # row_dst += q * row_src
        self.D[dst, :] += q * self.D[src, :]
        if self.U is not None:
            self.U[dst, :] += q * self.U[src, :]
        if self.rhs is not None:
            self.rhs[dst] += q * self.rhs[src]

    def _addmul_col(self, dst, src, q):
        self.D[:, dst] += q * self.D[:, src]
        if self.V is not None:
            self.V[:, dst] += q * self.V[:, src]

    def _negate_row(self, i):
        self.D[i, :] = -self.D[i, :]
        if self.U is not None:
            self.U[i, :] = -self.U[i, :]
        if self.rhs is not None:
            self.rhs[i] = -self.rhs[i]

    def _combine_rows(self, i, j, x, y, u, v):
        # (row_i, row_j) <- (x·row_i + y·row_j, u·row_i + v·row_j), det ±1
        ri = x * self.D[i, :] + y * self.D[j, :]
        rj = u * self.D[i, :] + v * self.D[j, :]
        self.D[i, :], self.D[j, :] = ri, rj
        if self.U is not None:
            ui = x * self.U[i, :] + y * self.U[j, :]
            uj = u * self.U[i, :] + v * self.U[j, :]
            self.U[i, :], self.U[j, :] = ui, uj
        if self.rhs is not None:
            a, b = self.rhs[i], self.rhs[j]
            self.rhs[i], self.rhs[j] = x * a + y * b, u * a + v * b

    def _combine_cols(self, i, j, x, y, u, v):
        ci = x * self.D[:, i] + y * self.D[:, j]
        cj = u * self.D[:, i] + v * self.D[:, j]
        self.D[:, i], self.D[:, j] = ci, cj
        if self.V is not None:
            vi = x * self.V[:, i] + y * self.V[:, j]
            vj = u * self.V[:, i] + v * self.V[:, j]
            self.V[:, i], self.V[:, j] = vi, vj

    # -- pivoting ----------------------------------------------------------

    def _find_pivot(self, t):
        best = None
        for i in range(t, self.m):
            row = self.D[i]
            for j in range(t, self.n):
                v = row[j]
                if v:
                    a = -v if v < 0 else v
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            return best
        return best

    def _clear_col(self, t):
        for i in range(t + 1, self.m):
            b = self.D[i, t]
            if not b:
                continue
            a = self.D[t, t]
            if b % a == 0:
                self._addmul_row(i, t, -(b // a))
            else:
                g, x, y = ext_gcd(a, b)
                self._combine_rows(t, i, x, y, -(b // g), a // g)

    def _clear_row(self, t):
        for j in range(t + 1, self.n):
            b = self.D[t, j]
            if not b:
                continue
            a = self.D[t, t]
            if b % a == 0:
                self._addmul_col(j, t, -(b // a))
            else:
                g, x, y = ext_gcd(a, b)
                self._combine_cols(t, j, x, y, -(b // g), a // g)

    def _col_dirty(self, t):
        return any(self.D[i, t] for i in range(t + 1, self.m))

    def _row_dirty(self, t):
        return any(self.D[t, j] for j in range(t + 1, self.n))

    def run(self):
        t = 0
        limit = min(self.m, self.n)
        while t < limit:
            piv = self._find_pivot(t)
            if piv is None:
                break
            _, i, j = piv
            self._swap_rows(t, i)
            self._swap_cols(t, j)
            while True:
                self._clear_col(t)
                if self._row_dirty(t):
                    self._clear_row(t)
                else:
                    break
                if not self._col_dirty(t):
                    break
            t += 1
        self._rank = t
        self._fix_chain()
        for i in range(limit):
            if self.D[i, i] < 0:
                self._negate_row(i)
        return self

    def _fix_chain(self):
        # Restore d_i | d_{i+1}: replace each bad pair with (gcd, lcm).
        r = self._rank
        for i in range(r):
            for j in range(i + 1, r):
                a, b = self.D[i, i], self.D[j, j]
                if b % a == 0:
                    continue
                self._addmul_col(i, j, 1)           # puts b at (j, i)
                g, x, y = ext_gcd(a, b)
                self._combine_rows(i, j, x, y, -(b // g), a // g)
                # (i, i) = g, (j, j) = ±lcm, (i, j) = y·b: clear it.
                self._addmul_col(j, i, -(y * b) // g)

    def divisors(self) -> tuple[int, ...]:
        lim = min(self.m, self.n)
        return tuple(int(self.D[i, i]) for i in range(lim))


def smith_normal_form(A) -> SNFResult:
    """Smith normal form with unimodular transforms: U @ A @ V == D."""
    red = _Reduction(A, want_U=True, want_V=True).run()
    divisors = red.divisors()
    rank = sum(1 for d in divisors if d)
    return SNFResult(U=red.U, D=red.D, V=red.V, divisors=divisors, rank=rank)


def solve_mod(A, v, K: int):
    """Some x with A x ≡ v (mod K), or None if there is no solution.

    Uses the Smith change of basis: with U A V = D the system becomes
    D y ≡ U v, solved divisor by divisor.  The returned x is reduced
    into [0, K).
    """
    if K < 1:
        raise ValidationError(f"modulus must be >= 1, got {K}")
    red = _Reduction(A, want_V=True, rhs=[int(t) for t in v]).run()
    m, n = red.m, red.n
    uv = red.rhs
    y = [0] * n
    for i in range(m):
        d = int(red.D[i, i]) if i < min(m, n) else 0
        g = gcd(d, K)
        if uv[i] % g:
            return None
        if d and i < n:
            kk = K // g
            if kk > 1:
                y[i] = (uv[i] // g) * pow((d // g) % kk, -1, kk) % kk
    x = [0] * n
    for j in range(n):
        acc = 0
        for i in range(n):
            yi = y[i]
            if yi:
                acc += int(red.V[j, i]) * yi
        x[j] = acc % K
    return x


def divisible_preimage(A, d):
    """Rational b with A b ≡ d (mod Z), or None.

    ``d`` is a vector of exact rationals read modulo 1.  With U A V = D the
    congruence has a solution over Q exactly when every coordinate of U d
    sitting on a zero row of D is an integer; the nonzero divisors impose
    no constraint because b ranges over all rationals.  When solvable a
    witness is back-substituted through V.
    """
    rhs = [Fraction(t) for t in d]
    red = _Reduction(A, want_V=True, rhs=rhs).run()
    m, n = red.m, red.n
    ud = red.rhs
    c = [Fraction(0)] * n
    for i in range(m):
        dd = int(red.D[i, i]) if i < min(m, n) else 0
        if dd == 0:
            if ud[i].denominator != 1:
                return None
        elif i < n:
            c[i] = ud[i] / dd
    b = []
    for j in range(n):
        acc = Fraction(0)
        for i in range(n):
            if c[i]:
                acc += int(red.V[j, i]) * c[i]
        b.append(acc)
    return b


# ---------------------------------------------------------------------------
# integer left kernel (row reduction of [A | I], int64 with exact fallback)


class _OverflowRisk(Exception):
    pass


def _left_kernel_attempt(A: np.ndarray, limit: int | None):
    m, n = A.shape
    if limit is None:
        work = np.concatenate([A.astype(object), _eye_object(m)], axis=1)
    else:
        work = np.concatenate(
            [A.astype(np.int64), np.eye(m, dtype=np.int64)], axis=1)
    pivots: dict[int, np.ndarray] = {}
    kernel = []
    for idx in range(m):
        row = work[idx]
        while True:
            lead = None
            for j in range(n):
                if row[j]:
                    lead = j
                    break
            if lead is None:
                kernel.append(row[n:].copy())
                break
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a, b = int(piv[lead]), int(row[lead])
            if limit is not None and (abs(a) > limit or abs(b) > limit):
                raise _OverflowRisk
            if b % a == 0:
                row -= (b // a) * piv
            else:
                g, x, y = ext_gcd(a, b)
                if limit is not None and max(map(abs, (x, y, a // g, b // g))) > limit:
                    raise _OverflowRisk
                new_piv = x * piv + y * row
                row = (a // g) * row - (b // g) * piv
                pivots[lead] = new_piv
            if limit is not None and (np.abs(row).max(initial=0) > limit
                                      or np.abs(pivots[lead]).max(initial=0) > limit):
                raise _OverflowRisk
    return [np.array([int(t) for t in u], dtype=object) for u in kernel]


def left_kernel_basis(A) -> list[np.ndarray]:
    """Basis of the left kernel {u : u @ A == 0} of an integer matrix.

    The basis spans the saturated kernel lattice and extends to a basis of
    Z^m, which is exactly what the divisibility criteria downstream need.
    Runs in int64 and falls back to exact big-int arithmetic if entries
    threaten the 64-bit range.
    """
    arr = as_object_matrix(A)
    try:
        small = np.empty(arr.shape, dtype=np.int64)
        for i in range(arr.shape[0]):
            for j in range(arr.shape[1]):
                v = int(arr[i, j])
                if abs(v) > 2 ** 20:
                    raise _OverflowRisk
                small[i, j] = v
        return _left_kernel_attempt(small, limit=2 ** 30)
    except _OverflowRisk:
        return _left_kernel_attempt(arr, limit=None)


# ---------------------------------------------------------------------------
# vectorized linear algebra over Z/K (exact int64, everything reduced mod K)


def diagonalize_mod(R: np.ndarray, K: int, want_V: bool = True):
    """Diagonalize R over Z/K by invertible row/column operations.

    Returns (diag, V) with diag the list of diagonal values produced (one
    per pivot step) and V the accumulated column transform, so that the
    solutions of R x ≡ 0 (mod K) are exactly x = V y with
    diag[a] · y[a] ≡ 0 for every a (coordinates beyond the pivot count are
    free).  No divisor chain is enforced; callers only ever use
    gcd(diag[a], K).
    """
    R = np.mod(np.array(R, dtype=np.int64, copy=True), K)
    m, n = R.shape
    V = np.eye(n, dtype=np.int64) if want_V else None
    gcd_table = np.array([gcd(v, K) for v in range(K)], dtype=np.int64)
    diag = []
    t = 0
    while t < min(m, n):
        sub = R[t:, t:]
        score = np.where(sub == 0, K + 1, gcd_table[sub])
        flat = int(np.argmin(score))
        if score.flat[flat] == K + 1:
            break
        di, dj = divmod(flat, n - t)
        i, j = t + di, t + dj
        if i != t:
            R[[t, i], :] = R[[i, t], :]
        if j != t:
            R[:, [t, j]] = R[:, [j, t]]
            if want_V:
                V[:, [t, j]] = V[:, [j, t]]
        while True:
            a = int(R[t, t])
            if gcd(a, K) == 1:
                if a != 1:
                    R[t, t:] = (R[t, t:] * pow(a, -1, K)) % K
                col = R[t + 1:, t]
                if col.any():
                    R[t + 1:, t:] = (R[t + 1:, t:]
                                     - np.outer(col, R[t, t:])) % K
                rowtail = R[t, t + 1:]
                if rowtail.any():
                    if want_V:
                        V[:, t + 1:] = (V[:, t + 1:]
                                        - np.outer(V[:, t], rowtail)) % K
                    R[t, t + 1:] = 0
                break
            # non-unit pivot: gcd dance on column, then row
            for i in range(t + 1, m):
                b = int(R[i, t])
                if not b:
                    continue
                a = int(R[t, t])
                if b % a == 0:
                    R[i, t:] = (R[i, t:] - (b // a) * R[t, t:]) % K
                else:
                    g, x, y = ext_gcd(a, b)
                    top = (x * R[t, t:] + y * R[i, t:]) % K
                    R[i, t:] = ((a // g) * R[i, t:] - (b // g) * R[t, t:]) % K
                    R[t, t:] = top
            for j in range(t + 1, n):
                b = int(R[t, j])
                if not b:
                    continue
                a = int(R[t, t])
                if b % a == 0:
                    q = b // a
                    R[:, j] = (R[:, j] - q * R[:, t]) % K
                    if want_V:
                        V[:, j] = (V[:, j] - q * V[:, t]) % K
                else:
                    g, x, y = ext_gcd(a, b)
                    cl = (x * R[:, t] + y * R[:, j]) % K
                    R[:, j] = ((a // g) * R[:, j] - (b // g) * R[:, t]) % K
                    R[:, t] = cl
                    if want_V:
                        vl = (x * V[:, t] + y * V[:, j]) % K
                        V[:, j] = ((a // g) * V[:, j] - (b // g) * V[:, t]) % K
                        V[:, t] = vl
            if not R[t + 1:, t].any() and not R[t, t + 1:].any():
                break
        diag.append(int(R[t, t]))
        t += 1
    return diag, V


def kernel_mod_generators(R: np.ndarray, K: int):
    """Generators of {x : R x ≡ 0 (mod K)} as a finite abelian group.

    Returns (gens, orders): columns generating the kernel, each with its
    additive order; trivial (order-1) generators are omitted.  The
    generators are independent: the kernel is the internal direct sum of
    the cyclic groups they generate.
    """
    n = R.shape[1]
    diag, V = diagonalize_mod(R, K, want_V=True)
    gens, orders = [], []
    for a in range(n):
        d = diag[a] if a < len(diag) else 0
        g = gcd(d, K)
        if g == 1:
            continue
        gens.append((V[:, a] * (K // g)) % K)
        orders.append(g)
    return gens, orders


def _prime_power_factors(K: int) -> list[tuple[int, int]]:
    out = []
    n, p = K, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _solution_gens_prime_power(M: np.ndarray, p: int, e: int):
    """Kernel generators of M x ≡ 0 over Z/p^e by a vectorized column sweep.

    Every pivot is normalized to a pure prime power p^v (multiplying its row
    by the inverse of the unit part), so clearing a column is one masked
    outer-product subtraction.  Unit pivots (v = 0) determine their
    coordinate outright; the non-unit pivot rows restricted to the remaining
    coordinates form a small residual system whose kernel is lifted back.
    All operations are invertible row transforms, so the solution set never
    changes.
    """
    q = p ** e
    dtype = np.int32 if q < 2 ** 15 else np.int64
    M = np.mod(M, q).astype(dtype)
    M = np.unique(M, axis=0)
    if M.shape[0] and not M[0].any():
        M = M[1:]                      # unique sorts the zero row first
    m, n = M.shape

    val_table = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        v, y = 0, x
        while y % p == 0:
            y //= p
            v += 1
        val_table[x] = v
    val_table[0] = e

    is_pivot = np.zeros(m, dtype=bool)
    unit_rows: list[tuple[int, int]] = []      # (row, pivot col)
    nonunit_rows: list[int] = []
    for j in range(n):
        col = M[:, j]
        cand = np.nonzero((col != 0) & ~is_pivot)[0]
        if cand.size == 0:
            continue
        vals = val_table[col[cand]]
        r0 = int(cand[int(np.argmin(vals))])
        v = int(val_table[col[r0]])
        pv = p ** v
        unit = int(col[r0]) // pv
        if unit != 1:
            M[r0] = (M[r0] * pow(unit, -1, q)) % q
        colv = M[:, j]
        elim = (colv != 0) & (val_table[colv] >= v)
        elim[r0] = False
        if elim.any():
            coefs = (colv[elim] // pv).astype(dtype)
            M[elim] = (M[elim] - np.outer(coefs, M[r0])) % q
        is_pivot[r0] = True
        if v == 0:
            unit_rows.append((r0, j))
        else:
            nonunit_rows.append(r0)

    unit_cols = {j for _, j in unit_rows}
    y_cols = np.array([j for j in range(n) if j not in unit_cols], dtype=np.intp)
    T = M[nonunit_rows][:, y_cols] if nonunit_rows else \
        np.zeros((0, len(y_cols)), dtype=dtype)
    ygens, orders = kernel_mod_generators(T.astype(np.int64), q)

    gens = []
    for y in ygens:
        x = np.zeros(n, dtype=np.int64)
        x[y_cols] = y
        for r, jc in unit_rows:
            x[jc] = (-(M[r, y_cols].astype(np.int64) @ y)) % q
        gens.append(x)
    return gens, orders


def solution_generators_mod(M: np.ndarray, K: int):
    """Independent generators (with orders) of {x : M x ≡ 0 (mod K)}.

    Splits K into prime powers, solves each factor with the column sweep,
    and recombines through the CRT idempotents, so the returned generators
    are again independent and their cyclic spans fill the whole solution
    group.  Order-1 generators are dropped.
    """
    if K < 1:
        raise ValidationError("modulus must be >= 1")
    n = M.shape[1]
    gens, orders = [], []
    for p, e in _prime_power_factors(K):
        q = p ** e
        r = K // q
        idem = 1 if r == 1 else r * pow(r, -1, q)
        for g, o in zip(*_solution_gens_prime_power(M, p, e)):
            gens.append((g * idem) % K)
            orders.append(o)
    return gens, orders
