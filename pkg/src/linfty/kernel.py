"""Kernel lane selection.

Imports the compiled term-arithmetic kernel when available, otherwise
the pure-Python twin.  Set LINFTY_PURE=1 to force the Python lane (used
by the benchmark and by tests that compare the two lanes).
"""

import os

if os.environ.get("LINFTY_PURE"):
    from linfty._kernel_py import (  # noqa: F401
        IMPLEMENTATION,
        add_exps,
        add_into,
        merge_words,
        mul_terms,
        scale_terms,
        sort_word,
    )
else:
    try:
        from linfty._kernel import (  # noqa: F401
            IMPLEMENTATION,
            add_exps,
            add_into,
            merge_words,
            mul_terms,
            scale_terms,
            sort_word,
        )
    except ImportError:
        from linfty._kernel_py import (  # noqa: F401
            IMPLEMENTATION,
            add_exps,
            add_into,
            merge_words,
            mul_terms,
            scale_terms,
            sort_word,
        )
