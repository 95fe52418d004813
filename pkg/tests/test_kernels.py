"""Differential tests between the compiled and pure-Python kernels."""

import pytest

from meanders import _core_py, _kernel
from meanders.meander import count_irreducible_slice
from meanders.nclat import catalan, iter_nc

try:
    from meanders import _core
except ImportError:
    _core = None

needs_ext = pytest.mark.skipif(_core is None, reason="extension not built")


def test_backend_selected():
    assert _kernel.BACKEND in ("python", "cython")
    if _core is not None:
        assert _kernel.BACKEND == "cython"


@needs_ext
@pytest.mark.parametrize("n", range(1, 9))
def test_irreducible_counts_agree(n):
    py = count_irreducible_slice(n, kernel=_core_py.count_for_alpha)
    cy = count_irreducible_slice(n, kernel=_core.count_for_alpha)
    assert py == cy


@needs_ext
def test_loop_tables_agree():
    for n in range(1, 8):
        perms = [[v - 1 for v in p.perm] for p in iter_nc(n)]
        assert list(_core.loop_table(n, perms)) == _core_py.loop_table(n, perms)


def test_python_loop_table_totals():
    for n in range(1, 7):
        perms = [[v - 1 for v in p.perm] for p in iter_nc(n)]
        table = _core_py.loop_table(n, perms)
        assert sum(table) == catalan(n) ** 2
        assert table[n] == catalan(n)


def test_emission_kernel_is_shared():
    # pair emission always comes from the Python module
    assert _kernel.iter_irreducible_for_alpha is _core_py.iter_irreducible_for_alpha
