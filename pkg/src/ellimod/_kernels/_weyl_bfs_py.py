"""Pure-Python Weyl orbit BFS; reference implementation of the compiled kernel."""
import numpy as np


def weyl_bfs(cartan, tracked, expected):
    """Breadth-first enumeration of W through the orbit of rho^vee.

    Elements are discovered by left multiplication ``s_i * w`` in generator
    order, starting from the identity. ``parent[k]``/``gen[k]`` record that
    element ``k`` equals ``s_gen[k] * element[parent[k]]``; ``images[k]`` is
    ``w_k @ tracked`` (coroot coordinates).
    """
    C = [list(map(int, row)) for row in np.asarray(cartan)]
    r = len(C)
    T = np.asarray(tracked, dtype=np.int64)
    m = T.shape[1] if T.ndim == 2 else 0
    cols = [list(map(int, T[:, j])) for j in range(m)]
    ccols = [[C[i][j] for i in range(r)] for j in range(r)]

    start = tuple([1] * r)  # pairing coordinates of rho^vee
    seen = {start: 0}
    points = [start]
    parent = [-1]
    gen = [-1]
    images = [cols]
    head = 0
    while head < len(points):
        p = points[head]
        img = images[head]
        for i in range(r):
            pi = p[i]
            q = tuple(a - pi * b for a, b in zip(p, ccols[i]))
            if q in seen:
                continue
            seen[q] = len(points)
            points.append(q)
            parent.append(head)
            gen.append(i)
            Ci = C[i]
            new = []
            for t in img:
                t = list(t)
                t[i] -= sum(c * x for c, x in zip(Ci, t))
                new.append(t)
            images.append(new)
        head += 1
    n = len(points)
    if expected and n != expected:
        raise RuntimeError(f"orbit enumeration found {n} elements, expected {expected}")
    out = np.zeros((n, r, m), dtype=np.int64)
    if m:
        arr = np.asarray(images, dtype=np.int64)  # (n, m, r)
        out[:] = arr.transpose(0, 2, 1)
    return (np.asarray(parent, dtype=np.int64), np.asarray(gen, dtype=np.int64), out)
