"""Concrete representations of the R-matrix presentation of U_q(gl_n).

A representation is stored through its two generating matrices on
C^n (x) W: the upper operator L+ = sum e_ij (x) pi(l+_ij) and the lower
operator L- = sum e_ij (x) pi(l-_ij).  The vector representation is
built explicitly; tensor products come from the coproduct, realised as
the ordered product of the big L-operators acting through a common
auxiliary space.  Highest weight vectors are found exactly as joint
kernels of the raising operators inside a weight subspace.
"""

from __future__ import annotations

import itertools

from . import faults
from .scalars import SCALARS, Scalar, ONE, Q, QINV, Q_MINUS_QINV
from .tmatrix import TMatrix, embed, lift
from .verdict import Verdict, matrix_verdict


class WeightError(ValueError):
    """Requested weight is not dominant or not present in the module."""


class NotEigenvectorError(ArithmeticError):
    """An operator expected to act as a scalar failed to do so."""


class Representation:
    """A finite-dimensional module, presented by its big L-operators."""

    def __init__(self, n, d, Lp, Lm, label):
        assert Lp.rows == Lp.cols == n * d
        assert Lm.rows == Lm.cols == n * d
        self.n = n
        self.d = d
        self.Lp = Lp.with_shape((n, d))
        self.Lm = Lm.with_shape((n, d))
        self.label = label
        self._cache = {}

    def __repr__(self):
        return f"Representation({self.label}, n={self.n}, d={self.d})"

    def op(self, sign, i, j):
        """The d x d matrix of pi(l+_ij) or pi(l-_ij), 1-based indices."""
        key = ("op", sign, i, j)
        if key not in self._cache:
            big = self.Lp if sign == "+" else self.Lm
            d = self.d
            blk = TMatrix.zeros(SCALARS, d, d)
            for r in range(d):
                base = ((i - 1) * d + r) * big.cols + (j - 1) * d
                for c in range(d):
                    blk.e[r * d + c] = big.e[base + c]
            self._cache[key] = blk
        return self._cache[key]

    def weights(self):
        """Weight of each basis vector, read from the diagonal action of
        the l-_ii; every basis vector must be a joint eigenvector with
        eigenvalues integral powers of q."""
        if "weights" not in self._cache:
            out = []
            diag = []
            for i in range(1, self.n + 1):
                blk = self.op("-", i, i)
                for r in range(self.d):
                    for c in range(self.d):
                        if r != c:
                            assert not blk.e[r * self.d + c], \
                                f"l-_{i}{i} is not diagonal on {self.label}"
                diag.append([blk.e[r * self.d + r] for r in range(self.d)])
            for b in range(self.d):
                wt = []
                for i in range(self.n):
                    e = _q_exponent(diag[i][b])
                    assert e is not None, \
                        f"non-monomial weight entry on {self.label}"
                    wt.append(e)
                out.append(tuple(wt))
            self._cache["weights"] = tuple(out)
        return self._cache["weights"]


def _q_exponent(s):
    """k when s = q^k exactly, else None."""
    if s.den.is_one() and s.num.c == (1,):
        return s.num.low
    return None


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def vector_rep(n):
    """The vector representation on C^n, highest weight (1, 0, ..., 0).

    pi(l+_ii) = q^-1 e_ii + sum_{j != i} e_jj,
    pi(l+_ij) = -(q - q^-1) e_ij        (i < j),
    pi(l-_ii) = q e_ii + sum_{j != i} e_jj,
    pi(l-_ij) = (q - q^-1) e_ij         (i > j).
    """
    a = Q_MINUS_QINV
    lp = TMatrix.zeros(SCALARS, n * n, n * n)
    lm = TMatrix.zeros(SCALARS, n * n, n * n)

    def put(m, i, j, r, c, x):
        m.e[((i - 1) * n + (r - 1)) * n * n + (j - 1) * n + (c - 1)] = x

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            put(lp, i, i, j, j, QINV if j == i else ONE)
            put(lm, i, i, j, j, Q if j == i else ONE)
            if i < j:
                put(lp, i, j, i, j, -a)
            elif i > j:
                put(lm, i, j, i, j, a)
    if faults.active("rep"):
        # test hook: drop the q^-1 twist in pi(l+_11)
        put(lp, 1, 1, 1, 1, ONE)
    return Representation(n, n, lp, lm, f"vector({n})")


def trivial_rep(n):
    """The one-dimensional module where every l+-_ii acts as 1."""
    eye = TMatrix.identity(SCALARS, n)
    return Representation(n, 1, eye, eye.copy(), f"trivial({n})")


def tensor_product(a, b):
    """Module on W_a (x) W_b via the coproduct
    l+-_ij |-> sum_k l+-_ik (x) l+-_kj (first slot to first factor)."""
    assert a.n == b.n
    n, d = a.n, a.d * b.d
    dims = (n, a.d, b.d)
    lp = embed(a.Lp, (1, 2), dims) * embed(b.Lp, (1, 3), dims)
    lm = embed(a.Lm, (1, 2), dims) * embed(b.Lm, (1, 3), dims)
    return Representation(n, d, lp, lm, f"{a.label}(x){b.label}")


def tensor_power(rep, N):
    """N-fold tensor power; N = 0 gives the trivial module."""
    assert N >= 0
    if N == 0:
        return trivial_rep(rep.n)
    out = rep
    for _ in range(N - 1):
        out = tensor_product(out, rep)
    out.label = f"{rep.label}^(x){N}"
    return out


def evaluated_L(rep, sign, u):
    """The evaluated operator on C^n (x) W over the field of ``u``:
    L+(u) = L+ - u L-  or  L-(u) = L- - u^-1 L+."""
    field = u.field
    key = ("lift", id(field))
    if key not in rep._cache:
        rep._cache[key] = (lift(rep.Lp, field), lift(rep.Lm, field))
    lp, lm = rep._cache[key]
    if sign == "+":
        return lp - lm.scaled(u)
    if sign == "-":
        return lm - lp.scaled(u.inverse())
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


# ---------------------------------------------------------------------------
# defining relations
# ---------------------------------------------------------------------------

def verify_defining_relations(rep):
    """All defining relations of the presentation, checked on
    C^n (x) C^n (x) W: the three exchange relations

        R L1+- L2+- = L2+- L1+- R   and   R L1+ L2- = L2- L1+ R,

    triangularity of L+ (lower blocks vanish) and of L- (upper blocks
    vanish), and l-_ii l+_ii = 1.  Returns (name, verdict) pairs.
    """
    from .rmatrix import build_rmatrix_set

    n, d = rep.n, rep.d
    dims = (n, n, d)
    r12 = embed(build_rmatrix_set(n).R, (1, 2), dims)
    l1 = {s: embed((rep.Lp if s == "+" else rep.Lm), (1, 3), dims)
          for s in "+-"}
    l2 = {s: embed((rep.Lp if s == "+" else rep.Lm), (2, 3), dims)
          for s in "+-"}
    out = []
    for s1, s2 in (("+", "+"), ("-", "-"), ("+", "-")):
        v = matrix_verdict(r12 * (l1[s1] * l2[s2]), l2[s2] * (l1[s1] * r12),
                           label=f"exchange {s1}{s2} {rep.label}")
        out.append((f"exchange {s1}{s2}", v))

    tri_ok, tri_wit = True, None
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i > j and bool(rep.op("+", i, j)):
                tri_ok, tri_wit = False, f"pi(l+_{i}{j}) != 0 on {rep.label}"
            if i < j and bool(rep.op("-", i, j)):
                tri_ok, tri_wit = False, f"pi(l-_{i}{j}) != 0 on {rep.label}"
    out.append(("triangularity", Verdict(tri_ok, witness=tri_wit)))

    eye = TMatrix.identity(SCALARS, d)
    diag_ok, diag_wit = True, None
    for i in range(1, n + 1):
        if rep.op("-", i, i) * rep.op("+", i, i) != eye:
            diag_ok, diag_wit = False, f"l-_{i}{i} l+_{i}{i} != 1 on {rep.label}"
    out.append(("diagonal inverses", Verdict(diag_ok, witness=diag_wit)))
    return out


# ---------------------------------------------------------------------------
# weights and highest weight vectors
# ---------------------------------------------------------------------------

def dominant(lam):
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def weight_subspace(rep, lam):
    """Indices of the basis vectors of weight ``lam``."""
    lam = tuple(lam)
    if len(lam) != rep.n:
        raise WeightError(f"weight length {len(lam)} != n = {rep.n}")
    return tuple(b for b, wt in enumerate(rep.weights()) if wt == lam)


def highest_weight_vector(rep, lam):
    """A nonzero vector of weight ``lam`` killed by every raising
    operator pi(l+_ij), i < j, normalised so its first nonzero
    coordinate is 1.  Raises WeightError when none exists."""
    lam = tuple(lam)
    if not dominant(lam):
        raise WeightError(f"weight {lam} is not dominant "
                          "(entries must be weakly decreasing)")
    cols = weight_subspace(rep, lam)
    if not cols:
        raise WeightError(f"weight {lam} does not occur in {rep.label}")
    n, d = rep.n, rep.d
    raisers = [rep.op("+", i, j)
               for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    rows = []
    for op in raisers:
        for r in range(d):
            row = [op.e[r * d + c] for c in cols]
            if any(row):
                rows.append(row)
    if not rows:
        rows = [[SCALARS.zero] * len(cols)]
    stacked = TMatrix.from_rows(SCALARS, rows)
    basis = stacked.nullspace()
    if not basis:
        raise WeightError(f"no highest weight vector of weight {lam} "
                          f"in {rep.label}")
    coords = basis[0]
    vec = TMatrix.column(SCALARS, [SCALARS.zero] * d)
    for c, x in zip(cols, coords.e):
        vec.e[c] = x
    for i in range(1, n + 1):
        assert not _apply(rep.op("+", i, i), vec, scale=Scalar.q_power(lam[i - 1])), \
            "highest weight vector fails the diagonal eigenvalue test"
    return vec


def _apply(mat, vec, scale=None):
    """mat . vec - scale^-1 . vec (or mat . vec); returns a column."""
    out = mat * vec
    if scale is not None:
        out = out - vec.scaled(scale.inverse())
    return out


def scalar_on_vector(mat, vec):
    """The scalar by which ``mat`` acts on ``vec``; exact check."""
    field = mat.field
    image = mat * vec
    pivot = next((i for i, x in enumerate(vec.e) if x), None)
    if pivot is None:
        raise ValueError("zero vector has no eigenvalue")
    c = image.e[pivot] / vec.e[pivot]
    if image != vec.scaled(c):
        raise NotEigenvectorError(
            f"operator does not act as a scalar (candidate {field.render(c)})")
    return c


def lift_vector(vec, field):
    """Column over Q(q) lifted into a rational-function field."""
    return vec.map_entries(field.from_coeff, field=field)
