"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``HEISENPOLY_PURE=1`` in the environment to force the pure-Python kernel
(used by the benchmark to compare both implementations).
"""

import os

if os.environ.get("HEISENPOLY_PURE"):
    from . import _kernel_py as kernel

    KERNEL_IMPL = "python"
else:
    try:
        from . import _kernel_cy as kernel  # type: ignore[no-redef]

        KERNEL_IMPL = "cython"
    except ImportError:
        from . import _kernel_py as kernel

        KERNEL_IMPL = "python"

cd_iadd = kernel.cd_iadd
cd_add = kernel.cd_add
cd_neg = kernel.cd_neg
cd_sub = kernel.cd_sub
cd_scale = kernel.cd_scale
cd_mul = kernel.cd_mul
word_concat = kernel.word_concat
word_is_normal = kernel.word_is_normal
word_measure = kernel.word_measure
straighten = kernel.straighten
free_mul_terms = kernel.free_mul_terms
mul_terms = kernel.mul_terms
