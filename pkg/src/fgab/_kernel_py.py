"""Pure-Python row reduction kernel.

This is the reference implementation used whenever the compiled
``fgab._kernel`` extension is unavailable, and the fallback the compiled
kernel defers to once an intermediate value no longer fits in 62 bits.
"""


def hnf_rows(rows, npiv):
    """Bring ``rows`` into row Hermite normal form on the leading ``npiv`` columns.

    ``rows`` is a list of equal-length integer lists and is rewritten in
    place. Every operation is an elementary unimodular row operation applied
    to the *whole* row, so trailing columns (e.g. an appended identity block)
    record the transform. Returns the number of pivots found; rows past that
    count are zero on the leading ``npiv`` columns.
    """
    m = len(rows)
    if m == 0:
        return 0
    w = len(rows[0])
    pr = 0
    for col in range(npiv):
        if pr == m:
            break
        found = False
        while True:
            best = -1
            bv = 0
            for i in range(pr, m):
                v = rows[i][col]
                if v:
                    av = v if v > 0 else -v
                    if best < 0 or av < bv:
                        best, bv = i, av
            if best < 0:
                break
            found = True
            if best != pr:
                rows[pr], rows[best] = rows[best], rows[pr]
            prow = rows[pr]
            p = prow[col]
            done = True
            for i in range(pr + 1, m):
                row = rows[i]
                v = row[col]
                if v:
                    q = v // p
                    if q:
                        for j in range(col, w):
                            row[j] -= q * prow[j]
                    if row[col]:
                        done = False
            if done:
                break
        if not found:
            continue
        prow = rows[pr]
        p = prow[col]
        if p < 0:
            for j in range(col, w):
                prow[j] = -prow[j]
            p = -p
        for i in range(pr):
            row = rows[i]
            q = row[col] // p
            if q:
                for j in range(col, w):
                    row[j] -= q * prow[j]
        pr += 1
    return pr
