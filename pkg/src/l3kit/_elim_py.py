"""Pure-Python fraction-free elimination (fallback for the compiled kernel)."""

from math import gcd


def _content_reduce(row, ncols):
    g = 0
    for j in range(ncols):
        if row[j]:
            g = gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(ncols):
            row[j] //= g


def row_echelon(rows, ncols):
    """Reduce an integer matrix to a scaled reduced row echelon form.

    ``rows`` is a list of integer lists and is not modified. Forward
    elimination is Bareiss (every intermediate entry is a minor of the input,
    so the division is exact); the backward pass clears entries above each
    pivot and divides rows by their content.

    Returns ``(reduced_rows, pivot_columns)``; only the first
    ``len(pivot_columns)`` rows are returned, each with a positive pivot and
    zeros in every other pivot column.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        prow = m[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (piv * row[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1

    m = m[:r]
    for k in range(r - 1, -1, -1):
        prow = m[k]
        _content_reduce(prow, ncols)
        c = pivots[k]
        if prow[c] < 0:
            for j in range(ncols):
                prow[j] = -prow[j]
        piv = prow[c]
        for i in range(k):
            row = m[i]
            a = row[c]
            if a:
                for j in range(ncols):
                    row[j] = piv * row[j] - a * prow[j]
                _content_reduce(row, ncols)
    return m, pivots
