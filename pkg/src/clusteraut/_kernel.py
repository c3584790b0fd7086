"""Kernel selection.

The compiled extension is used when available; set CLUSTERAUT_PURE=1 to force
the pure-Python kernels (useful for debugging and benchmarking).
"""
from __future__ import annotations

import os

if os.environ.get("CLUSTERAUT_PURE"):
    from . import _kernel_py as impl
else:
    try:
        from . import _speedups as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as impl

IMPLEMENTATION: str = impl.IMPLEMENTATION

add_terms = impl.add_terms
sub_terms = impl.sub_terms
neg_terms = impl.neg_terms
scale_terms = impl.scale_terms
mul_terms = impl.mul_terms
pow_terms = impl.pow_terms
order_key = impl.order_key
max_weighted_degree = impl.max_weighted_degree
exact_div_terms = impl.exact_div_terms
substitute_terms = impl.substitute_terms
new_power_caches = impl.new_power_caches
normal_form_terms = impl.normal_form_terms
