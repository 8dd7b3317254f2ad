"""Independent brute-force oracles (dense matrices, sympy ranks)."""

import itertools

from sympy import Matrix
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix


def dense_rank(rows, n_cols, p):
    if not rows or not n_cols:
        return 0
    if p == 0:
        return Matrix(rows).rank()
    return DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), n_cols), GF(p)).rank()


def structure_tensor(A):
    n = A.dim
    return [[[A.prod[i][j].get(k, 0) for k in range(n)] for j in range(n)] for i in range(n)]


def hochschild_dims(A, q_max):
    """HH^q(A, A) straight from the cochain formula on dense tensors."""
    n, p = A.dim, A.field.p
    T = structure_tensor(A)

    def mul(x, y):
        out = [0] * n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k in range(n):
                            out[k] += a * b * T[i][j][k]
        return out

    def basis(i):
        return [1 if t == i else 0 for t in range(n)]

    def differential(q):
        # rows: (args of length q+1, output k); cols: (args of length q, output m)
        src = list(itertools.product(range(n), repeat=q))
        tgt = list(itertools.product(range(n), repeat=q + 1))
        col_of = {(a, m): c for c, (a, m) in enumerate(itertools.product(src, range(n)))}
        rows = []
        for args in tgt:
            # value of d(phi)(args) is linear in phi; collect coefficient of phi(a, m) in output k
            coeff = [[0] * len(col_of) for _ in range(n)]

            def add(sign, arg_tuple, left=None, right=None):
                for m in range(n):
                    v = basis(m)
                    if left is not None:
                        v = mul(left, v)
                    if right is not None:
                        v = mul(v, right)
                    for k in range(n):
                        if v[k]:
                            coeff[k][col_of[(arg_tuple, m)]] += sign * v[k]

            add(1, args[1:], left=basis(args[0]))
            for i in range(q):
                prod = mul(basis(args[i]), basis(args[i + 1]))
                for t, c in enumerate(prod):
                    if c:
                        new = args[:i] + (t,) + args[i + 2:]
                        for m in range(n):
                            coeff_k = basis(m)
                            for k in range(n):
                                if coeff_k[k]:
                                    coeff[k][col_of[(new, m)]] += (-1) ** (i + 1) * c
            add((-1) ** (q + 1), args[:-1], right=basis(args[-1]))
            rows.extend(coeff)
        return rows, len(col_of)

    dims = [n ** (q + 1) for q in range(q_max + 2)]
    ranks = []
    for q in range(q_max + 1):
        rows, c = differential(q)
        ranks.append(dense_rank(rows, c, p))
    return [dims[q] - ranks[q] - (ranks[q - 1] if q else 0) for q in range(q_max + 1)]


def order_complex_faces(P):
    """Strict chains of a poset, as vertex tuples."""
    out = []
    els = list(P.elements)
    for r in range(1, len(els) + 1):
        for combo in itertools.permutations(els, r):
            if all(P.lt(combo[i], combo[i + 1]) for i in range(r - 1)):
                out.append(list(combo))
    return out
