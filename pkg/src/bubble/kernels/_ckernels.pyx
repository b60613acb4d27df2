# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled diagram kernels; same contracts as ``_pykernels``."""

from libc.stdlib cimport malloc, free


cdef inline int _find(int* parent, int x) noexcept nogil:
    cdef int root = x
    cdef int nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef inline void _join(int* parent, int x, int y) noexcept nogil:
    cdef int rx = _find(parent, x)
    cdef int ry = _find(parent, y)
    if rx != ry:
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry


def compose(upper, lower, int n_top, int n_mid, int n_bot, mid_colours, int m):
    cdef int size = n_top + n_mid + n_bot
    cdef int n_up = n_top + n_mid
    cdef int n_low = n_mid + n_bot
    cdef int i, lab, root, node, k
    # one buffer: parent | first-seen per label | relabel map | flags
    cdef int* buf = <int*> malloc(sizeof(int) * (4 * size + 2))
    if buf == NULL:
        raise MemoryError()
    cdef int* parent = buf
    cdef int* first = buf + size
    cdef int* relabel = buf + 2 * size
    cdef int* flag = buf + 3 * size
    labels = []
    removed = [0] * m
    try:
        for i in range(size):
            parent[i] = i
            relabel[i] = -1
            flag[i] = 0
        for i in range(size):
            first[i] = -1
        for i in range(n_up):
            lab = upper[i]
            if lab < 0 or lab >= size:
                raise ValueError("label out of range")
            if first[lab] >= 0:
                _join(parent, first[lab], i)
            else:
                first[lab] = i
        for i in range(size):
            first[i] = -1
        for i in range(n_low):
            lab = lower[i]
            if lab < 0 or lab >= size:
                raise ValueError("label out of range")
            node = n_top + i
            if first[lab] >= 0:
                _join(parent, first[lab], node)
            else:
                first[lab] = node
        k = 0
        for i in range(size):
            if n_top <= i < n_up:
                continue
            root = _find(parent, i)
            flag[root] = 1
            if relabel[root] < 0:
                relabel[root] = k
                k += 1
            labels.append(relabel[root])
        for i in range(n_mid):
            root = _find(parent, n_top + i)
            if flag[root]:
                continue
            flag[root] = 1
            removed[mid_colours[i]] += 1
    finally:
        free(buf)
    return tuple(labels), tuple(removed)


def pair_form(x, y, colours, int m):
    cdef int n = len(x)
    cdef int i, start, cur, nxt, other
    cdef int* buf = <int*> malloc(sizeof(int) * (3 * n + 1))
    if buf == NULL:
        raise MemoryError()
    cdef int* px = buf
    cdef int* py = buf + n
    cdef int* visited = buf + 2 * n
    loops = [0] * m
    try:
        for i in range(n):
            px[i] = x[i]
            py[i] = y[i]
            visited[i] = 0
        for start in range(n):
            if px[start] != -1:
                continue
            cur = start
            while True:
                visited[cur] = 1
                nxt = py[cur]
                if nxt == -1:
                    break
                visited[nxt] = 1
                cur = px[nxt]
                if cur == -1:
                    return None
        for start in range(n):
            if visited[start]:
                continue
            cur = start
            while not visited[cur]:
                visited[cur] = 1
                other = px[cur]
                visited[other] = 1
                cur = py[other]
                if cur == -1:
                    return None
            loops[colours[start]] += 1
    finally:
        free(buf)
    return tuple(loops)


def planar_pairing(labels, int n_top, int n_bot, colours, int m):
    cdef int size = n_top + n_bot
    cdef int i, node, lab, c, pos
    cdef int* buf = <int*> malloc(sizeof(int) * (4 * size + m + 1))
    if buf == NULL:
        raise MemoryError()
    cdef int* count = buf
    cdef int* opened = buf + size
    cdef int* stack = buf + 2 * size
    cdef int* colour_of = buf + 3 * size
    # stacks share one array; each colour keeps a linked top via `below`
    cdef int* top = buf + 4 * size
    cdef int* below
    below = <int*> malloc(sizeof(int) * (size + 1))
    if below == NULL:
        free(buf)
        raise MemoryError()
    try:
        for i in range(size):
            count[i] = 0
            opened[i] = 0
        for i in range(size):
            lab = labels[i]
            if lab < 0 or lab >= size:
                return False
            count[lab] += 1
            colour_of[i] = colours[i]
        for i in range(size):
            if count[i] != 0 and count[i] != 2:
                return False
        for c in range(m):
            top[c] = -1
        pos = 0
        for i in range(size):
            if i < n_top:
                node = i
            else:
                node = size - 1 - (i - n_top)
            lab = labels[node]
            c = colour_of[node]
            if opened[lab]:
                if top[c] < 0 or stack[top[c]] != lab:
                    return False
                top[c] = below[top[c]]
            else:
                opened[lab] = 1
                stack[pos] = lab
                below[pos] = top[c]
                top[c] = pos
                pos += 1
    finally:
        free(buf)
        free(below)
    return True
