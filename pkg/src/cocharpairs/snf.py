"""Smith normal form over the integers, with transforms."""


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a):
    """Return (U, D, V) with U * A * V = D diagonal, U and V unimodular.

    ``a`` is a list of integer rows.  The diagonal entries of D are
    non-negative and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u, v = _identity(m), _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                q = d[i][t] // d[t][t]
                if q:
                    add_row(i, t, -q)
                if d[i][t]:
                    swap_rows(t, i)
                    done = False
            for j in range(t + 1, n):
                q = d[t][j] // d[t][t]
                if q:
                    add_col(j, t, -q)
                if d[t][j]:
                    swap_cols(t, j)
                    done = False
            if done:
                # the pivot must divide the rest of the matrix
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                    None,
                )
                if bad:
                    add_row(t, bad[0], 1)
                    done = False
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def invariant_factors(a):
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]
