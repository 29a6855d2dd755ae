import numpy as np
import pytest

from dyckbaker import _kernels
from dyckbaker._kernels import pure

core = pytest.importorskip("dyckbaker._kernels._core")


def test_backend_reports_lane():
    assert _kernels.backend() in ("cython", "pure")


@pytest.mark.parametrize("M,n", [(2, 1), (2, 5), (2, 8), (3, 4), (3, 6)])
def test_class_counts_lanes_agree(M, n):
    assert core.class_counts(M, n) == pure.class_counts(M, n)


@pytest.mark.parametrize("prefix", [(), (0,), (2,), (0, 2), (2, 0), (0, 3)])
def test_prefix_counts_lanes_agree(prefix):
    assert core.class_counts(2, 6, prefix) == pure.class_counts(2, 6, prefix)


def test_zero_prefix_counts_nothing():
    # a1 followed by b2 annihilates; no completions exist
    assert core.class_counts(2, 6, (0, 3)) == pure.class_counts(2, 6, (0, 3))
    assert pure.class_counts(2, 6, (0, 3)) == (0, 0, 0)


@pytest.mark.parametrize("cls", [pure.CLASS_ALPHA, pure.CLASS_BETA, pure.CLASS_ZERO])
def test_cylinder_tallies_lanes_agree(cls):
    for m in (1, 2, 3):
        table = np.zeros((2 * 2) ** m, dtype=np.int64)
        words = core.cylinder_fill(2, 6, cls, m, (), table)
        ptab, pwords = pure.cylinder_counts(2, 6, cls, m)
        assert words == pwords
        assert table.tolist() == ptab


def test_word_arrays_lanes_agree():
    arr = _kernels.word_array(2, 5, pure.CLASS_ALPHA)
    rows = [tuple(int(c) for c in row) for row in arr]
    assert rows == list(pure.iter_codes(2, 5, pure.CLASS_ALPHA))
    assert rows == sorted(rows)


@pytest.mark.parametrize("cls", [pure.CLASS_ALPHA, pure.CLASS_BETA])
@pytest.mark.parametrize("b", [None, (1, 5)])
def test_scatter_lanes_agree_bitwise(cls, b):
    got = _kernels.scatter_solve(2, 5, cls, (1, 5), b)
    xus, xcs, xss, inner = pure.scatter_solve(2, 5, cls, (1, 5), b)
    assert got["xu"].tolist() == xus
    assert got["xc"].tolist() == xcs
    if b is None:
        assert got["xs"] is None and xss is None
    else:
        assert got["xs"].tolist() == xss
    assert got["interior"].tolist() == inner


def test_scatter_overflow_falls_back_to_pure():
    # a denominator near 2^40 overflows the compiled 64-bit rationals at
    # n=2 but stays trivial for the unbounded pure lane
    a = (1, (1 << 40) + 1)
    with pytest.raises(OverflowError):
        xu = np.empty(4)
        xc = np.empty(4)
        xs = np.empty(0)
        interior = np.empty(4, dtype=np.uint8)
        core.scatter_fill(2, 2, pure.CLASS_ALPHA, a[0], a[1], 1, 8, 0, (),
                          xu, xc, xs, interior)
    got = _kernels.scatter_solve(2, 2, pure.CLASS_ALPHA, a, None)
    xus, _, _, _ = pure.scatter_solve(2, 2, pure.CLASS_ALPHA, a, None)
    assert got["xu"].tolist() == xus


def test_kernel_dimension_guards():
    with pytest.raises(OverflowError):
        core.class_counts(2, 97)
    with pytest.raises(OverflowError):
        core.class_counts(17, 4)
    # the wrapper silently falls back to the pure lane for out-of-range M
    assert _kernels.class_counts(17, 2) == pure.class_counts(17, 2)


def test_kernel_argument_validation():
    with pytest.raises(ValueError):
        table = np.zeros(3, dtype=np.int64)
        core.cylinder_fill(2, 4, 0, 2, (), table)
    with pytest.raises(ValueError):
        core.scatter_fill(2, 4, pure.CLASS_ZERO, 1, 5, 1, 5, 0, (),
                          np.empty(0), np.empty(0), np.empty(0),
                          np.empty(0, dtype=np.uint8))


def test_forced_pure_env():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c",
         "from dyckbaker import _kernels; print(_kernels.backend())"],
        capture_output=True, text=True, env={"DYCKBAKER_PURE": "1", "PATH": "/usr/bin:/bin"},
    )
    assert out.stdout.strip() == "pure"
