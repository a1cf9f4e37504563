# cython: language_level=3
"""Compiled LLL kernel, semantically identical to _lll_py.

Same all-integer algorithm and tie-breaking as the pure kernel; the
compilation only removes interpreter overhead from the inner loops.
Arithmetic stays on arbitrary precision Python objects, so results are
bit for bit identical to the pure kernel.
"""

KERNEL_NAME = "cython"


cdef object _round_nearest(object num, object den):
    # nearest integer to num/den with den > 0, ties toward zero
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den:
        return q + 1
    if twice < den:
        return q
    return q + 1 if q < 0 else q


cdef bint _size_reduce(list b, list u, list uinv, list lam, list dvec,
                       Py_ssize_t i, Py_ssize_t j):
    # make |mu_ij| <= 1/2, i.e. 2*|lam[i][j]| <= dvec[j+1]
    cdef Py_ssize_t t
    cdef list bi, bj, ui, uj, ri, rj, li, lj
    lij = lam[i][j]
    dj = dvec[j + 1]
    if 2 * abs(lij) <= dj:
        return False
    q = _round_nearest(lij, dj)
    bi = b[i]
    bj = b[j]
    for t in range(len(bi)):
        bi[t] -= q * bj[t]
    ui = u[i]
    uj = u[j]
    for t in range(len(ui)):
        ui[t] -= q * uj[t]
    ri = uinv[i]
    rj = uinv[j]
    for t in range(len(rj)):
        rj[t] += q * ri[t]
    li = lam[i]
    lj = lam[j]
    for t in range(j):
        li[t] -= q * lj[t]
    li[j] = lij - q * dj
    return True


def lll_reduce_ints(cols, delta_num, delta_den):
    """Same contract as the pure kernel's lll_reduce_ints."""
    cdef Py_ssize_t d = len(cols)
    cdef Py_ssize_t k, i, j, t, r
    cdef list b = [list(c) for c in cols]
    cdef list u = [[1 if r == j else 0 for r in range(d)] for j in range(d)]
    cdef list uinv = [[1 if t == i else 0 for t in range(d)] for i in range(d)]
    cdef list lam = [[0] * i for i in range(d)]
    cdef list dvec = [0] * (d + 1)
    cdef list bi, bj, lr, lk, lk1
    cdef long long swaps = 0
    cdef long long reductions = 0
    dvec[0] = 1

    for i in range(d):
        bi = b[i]
        for j in range(i + 1):
            bj = b[j]
            acc = 0
            for t in range(len(bi)):
                acc += bi[t] * bj[t]
            for t in range(j):
                acc = (dvec[t + 1] * acc - lam[i][t] * lam[j][t]) // dvec[t]
            if j < i:
                lam[i][j] = acc
            elif acc <= 0:
                raise ValueError("columns are linearly dependent")
            else:
                dvec[i + 1] = acc

    k = 1
    while k < d:
        if _size_reduce(b, u, uinv, lam, dvec, k, k - 1):
            reductions += 1
        lkk = lam[k][k - 1]
        if delta_den * (dvec[k + 1] * dvec[k - 1] + lkk * lkk) < delta_num * dvec[k] * dvec[k]:
            # Lovasz condition fails at the lowest unsettled index: swap
            swaps += 1
            b[k - 1], b[k] = b[k], b[k - 1]
            u[k - 1], u[k] = u[k], u[k - 1]
            uinv[k - 1], uinv[k] = uinv[k], uinv[k - 1]
            lk = lam[k]
            lk1 = lam[k - 1]
            for j in range(k - 1):
                lk[j], lk1[j] = lk1[j], lk[j]
            coupling = lk[k - 1]
            dnew = (dvec[k - 1] * dvec[k + 1] + coupling * coupling) // dvec[k]
            for r in range(k + 1, d):
                lr = lam[r]
                tt = lr[k]
                lr[k] = (dvec[k + 1] * lr[k - 1] - coupling * tt) // dvec[k]
                lr[k - 1] = (dnew * tt + coupling * lr[k]) // dvec[k + 1]
            dvec[k] = dnew
            if k > 1:
                k -= 1
        else:
            for j in range(k - 2, -1, -1):
                if _size_reduce(b, u, uinv, lam, dvec, k, j):
                    reductions += 1
            k += 1

    return b, u, uinv, lam, dvec, int(swaps), int(reductions)
