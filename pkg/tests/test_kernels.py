import random

import pytest

from bubble import kernels
from bubble.diagrams import nc_matchings

BACKENDS = kernels.available_backends()


def test_compiled_backend_present():
    # the build compiles the extension; losing it silently would hide a packaging bug
    assert "cython" in BACKENDS
    assert kernels.BACKEND in BACKENDS


def _random_labels(rng, size):
    return [rng.randrange(max(size, 1)) for _ in range(size)]


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_compose_agrees_with_python(name):
    impl = BACKENDS[name]
    ref = BACKENDS["python"]
    rng = random.Random(11)
    for _ in range(2000):
        t, mid, b, m = rng.randint(0, 5), rng.randint(0, 5), rng.randint(0, 5), rng.randint(1, 3)
        upper = _random_labels(rng, t + mid)
        lower = _random_labels(rng, mid + b)
        colours = [rng.randrange(m) for _ in range(mid)]
        assert impl.compose(upper, lower, t, mid, b, colours, m) == ref.compose(upper, lower, t, mid, b, colours, m)


def _random_partners(rng, n, defects):
    nodes = list(range(n))
    rng.shuffle(nodes)
    out = [-1] * n
    paired = nodes[defects:]
    for i in range(0, len(paired) - 1, 2):
        a, b = paired[i], paired[i + 1]
        out[a], out[b] = b, a
    return out


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_pair_form_agrees_with_python(name):
    impl = BACKENDS[name]
    ref = BACKENDS["python"]
    rng = random.Random(12)
    for _ in range(2000):
        n = rng.randint(0, 9)
        k = rng.randint(0, n)
        if (n - k) % 2:
            k += 1 if k < n else -1
        x, y = _random_partners(rng, n, k), _random_partners(rng, n, k)
        m = rng.randint(1, 3)
        colours = [rng.randrange(m) for _ in range(n)]
        assert impl.pair_form(x, y, colours, m) == ref.pair_form(x, y, colours, m)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_planar_pairing_agrees_with_python(name):
    impl = BACKENDS[name]
    ref = BACKENDS["python"]
    rng = random.Random(13)
    for _ in range(2000):
        n = rng.randint(1, 5)
        m = rng.randint(1, 3)
        if rng.random() < 0.5:
            labels = _random_labels(rng, 2 * n)
        else:
            part = rng.choice(nc_matchings(2 * n)) if rng.random() < 0.5 else _random_partners(rng, 2 * n, 0)
            labels = [min(i, j) for i, j in enumerate(part)]
        colours = [rng.randrange(m) for _ in range(2 * n)]
        for i, lab in enumerate(labels):
            colours[i] = colours[lab % (2 * n)]
        assert impl.planar_pairing(labels, n, n, colours, m) == ref.planar_pairing(labels, n, n, colours, m)


def test_pair_form_loop_count():
    # two identical arcs close one loop; a cap against a shifted cap leaves an open path
    for impl in BACKENDS.values():
        assert impl.pair_form([1, 0], [1, 0], [0, 0], 1) == (1,)
        assert impl.pair_form([1, 0, -1], [-1, 2, 1], [0, 0, 0], 1) == (0,)
        assert impl.pair_form([-1, -1, 3, 2], [1, 0, -1, -1], [0, 0, 0, 0], 1) is None


def test_benchmark_smoke():
    import pathlib
    import subprocess
    import sys

    script = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    res = subprocess.run(
        [sys.executable, str(script), "--n", "4", "--cases", "20", "--repeat", "1"],
        capture_output=True, text=True, check=True,
    )
    assert "compose" in res.stdout and "planar_pairing" in res.stdout
