"""Pure-Python modular linear algebra kernel (fallback for the compiled one).

Same interface as ``_modkernel``: an incremental echelon form over GF(p),
the dimension of a matrix algebra generated by sparse matrices, and the rank
of a sparse system.  Values are integers in [0, p).
"""


class ModEchelon:
    """Incremental row echelon basis over GF(p).

    Each stored row is monic at its pivot and zero before it.  Reducing a
    candidate in increasing column order therefore never reintroduces an
    entry at a column already processed.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self._rows = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vec) -> bool:
        """Insert ``vec`` if it is independent; return whether it was inserted."""
        p, n, rows = self.p, self.ncols, self._rows
        v = [x % p for x in vec]
        for col in range(n):
            x = v[col]
            if not x:
                continue
            row = rows.get(col)
            if row is None:
                inv = pow(x, p - 2, p)
                rows[col] = [0] * col + [(y * inv) % p for y in v[col:]]
                return True
            for j in range(col, n):
                if row[j]:
                    v[j] = (v[j] - x * row[j]) % p
        return False


def _dense_times_sparse(W, G, d, p):
    out = [0] * (d * d)
    for i in range(d):
        base = i * d
        for k in range(d):
            w = W[base + k]
            if w:
                for col, val in G[k]:
                    out[base + col] = (out[base + col] + w * val) % p
    return out


def algebra_dimension(gens, d: int, p: int, stop_at: int = -1) -> int:
    """Dimension over GF(p) of the unital algebra generated by ``gens``.

    ``gens`` is a list of d x d matrices, each given as d rows of
    (column, value) pairs.  Stops early once ``stop_at`` is reached.
    """
    n = d * d
    target = stop_at if stop_at > 0 else n
    ech = ModEchelon(n, p)
    ident = [0] * n
    for i in range(d):
        ident[i * d + i] = 1
    ech.add(ident)
    queue = [ident]
    head = 0
    while head < len(queue) and ech.rank < target:
        W = queue[head]
        head += 1
        for G in gens:
            C = _dense_times_sparse(W, G, d, p)
            if ech.add(C):
                queue.append(C)
                if ech.rank >= target:
                    break
    return ech.rank


def rank_mod(rows, ncols: int, p: int) -> int:
    """Rank over GF(p) of a sparse system given as lists of (column, value) pairs."""
    ech = ModEchelon(ncols, p)
    for r in rows:
        v = [0] * ncols
        for col, val in r:
            v[col] = (v[col] + val) % p
        ech.add(v)
        if ech.rank == ncols:
            break
    return ech.rank
