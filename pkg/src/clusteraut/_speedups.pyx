# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled term-map kernels.

Same contracts as _kernel_py (keep the two in sync).  Monomials are packed
into 64-bit keys (four 16-bit biased fields) inside the hot loops; calls whose
exponents could leave the packed range delegate to the pure kernels.
"""

from cpython.dict cimport PyDict_GetItem, PyDict_Next
from cpython.object cimport PyObject
from libc.stdint cimport uint64_t, int64_t

from math import comb

from . import _kernel_py as _py
from .budget import WORK_FACTOR
from .errors import BudgetExceeded, NotDivisible

IMPLEMENTATION = "cython"

cdef long BIAS = 32768
cdef uint64_t FMASK = 0xFFFF
# headroom so field sums stay inside 16 bits after biasing
cdef long SAFE = 32000
cdef uint64_t PACK_ZERO = ((<uint64_t> 32768) << 48) | ((<uint64_t> 32768) << 32) | \
                          ((<uint64_t> 32768) << 16) | (<uint64_t> 32768)


cdef inline uint64_t _pack(long e1, long e2, long e3, long e4) noexcept:
    return ((<uint64_t> (e1 + BIAS)) << 48) | ((<uint64_t> (e2 + BIAS)) << 32) | \
           ((<uint64_t> (e3 + BIAS)) << 16) | (<uint64_t> (e4 + BIAS))


cdef inline void _unpack(uint64_t k, long* e) noexcept:
    e[0] = <long> ((k >> 48) & FMASK) - BIAS
    e[1] = <long> ((k >> 32) & FMASK) - BIAS
    e[2] = <long> ((k >> 16) & FMASK) - BIAS
    e[3] = <long> (k & FMASK) - BIAS


cdef inline tuple _key_tuple(uint64_t k):
    cdef long e[4]
    _unpack(k, e)
    return (e[0], e[1], e[2], e[3])


cdef long _max_abs(dict t) except -1:
    """Largest |exponent| appearing in a term map."""
    cdef long m = 0, v
    cdef tuple exps
    for key in t:
        exps = <tuple> key
        for i in range(4):
            v = exps[i]
            if v < 0:
                v = -v
            if v > m:
                m = v
    return m


cdef dict _pack_map(dict t):
    cdef dict out = {}
    cdef tuple exps
    for key, val in t.items():
        exps = <tuple> key
        out[_pack(<long> exps[0], <long> exps[1], <long> exps[2],
                  <long> exps[3])] = val
    return out


cdef dict _unpack_map(dict t):
    cdef dict out = {}
    for key, val in t.items():
        out[_key_tuple(<uint64_t> <object> key)] = val
    return out


cdef void _box(dict t, long* lo, long* hi) except *:
    cdef bint first = 1
    cdef tuple exps
    cdef long v
    cdef int i
    for key in t:
        exps = <tuple> key
        for i in range(4):
            v = exps[i]
            if first or v < lo[i]:
                lo[i] = v
            if first or v > hi[i]:
                hi[i] = v
        first = 0


cdef inline int _ordcmp(long* x, long* y, long* w) noexcept:
    """Compare monomials in the weighted order; 1, -1 or 0."""
    cdef long dx = w[0] * x[0] + w[1] * x[1] + w[2] * x[2] + w[3] * x[3]
    cdef long dy = w[0] * y[0] + w[1] * y[1] + w[2] * y[2] + w[3] * y[3]
    if dx != dy:
        return 1 if dx > dy else -1
    if x[0] != y[0]:
        return 1 if x[0] > y[0] else -1
    if x[3] != y[3]:
        return 1 if x[3] > y[3] else -1
    if x[1] != y[1]:
        return 1 if x[1] > y[1] else -1
    if x[2] != y[2]:
        return 1 if x[2] > y[2] else -1
    return 0


cdef inline void _absorb(dict bucket, object key, cc, ops) except *:
    cdef PyObject* ptr = PyDict_GetItem(bucket, key)
    if ops is None:
        s = cc if ptr == NULL else <object> ptr + cc
        if s:
            bucket[key] = s
        elif ptr != NULL:
            del bucket[key]
    else:
        s = cc if ptr == NULL else ops.add(<object> ptr, cc)
        if ops.is_zero(s):
            if ptr != NULL:
                del bucket[key]
        else:
            bucket[key] = s


def new_power_caches(ops=None):
    one = 1 if ops is None else ops.one
    return [{0: {(0, 0, 0, 0): one}} for _ in range(4)]


def add_terms(dict ta, dict tb, ops=None):
    cdef dict out = dict(ta)
    cdef PyObject* ptr
    if ops is None:
        for k, v in tb.items():
            ptr = PyDict_GetItem(out, k)
            if ptr == NULL:
                out[k] = v
            else:
                s = <object> ptr + v
                if s:
                    out[k] = s
                else:
                    del out[k]
    else:
        for k, v in tb.items():
            ptr = PyDict_GetItem(out, k)
            if ptr == NULL:
                out[k] = v
            else:
                s = ops.add(<object> ptr, v)
                if ops.is_zero(s):
                    del out[k]
                else:
                    out[k] = s
    return out


def neg_terms(dict ta, ops=None):
    cdef dict out = {}
    if ops is None:
        for k, v in ta.items():
            out[k] = -v
    else:
        for k, v in ta.items():
            out[k] = ops.neg(v)
    return out


def sub_terms(dict ta, dict tb, ops=None):
    return add_terms(ta, neg_terms(tb, ops), ops)


def scale_terms(dict ta, tuple exps, coeff, ops=None):
    cdef long e1 = exps[0], e2 = exps[1], e3 = exps[2], e4 = exps[3]
    cdef dict out = {}
    cdef tuple f
    if ops is None:
        for k, v in ta.items():
            f = <tuple> k
            out[(<long> f[0] + e1, <long> f[1] + e2, <long> f[2] + e3,
                 <long> f[3] + e4)] = v * coeff
    else:
        for k, v in ta.items():
            c = ops.mul(v, coeff)
            if not ops.is_zero(c):
                f = <tuple> k
                out[(<long> f[0] + e1, <long> f[1] + e2, <long> f[2] + e3,
                     <long> f[3] + e4)] = c
    return out


def mul_terms(dict ta, dict tb, ops=None, max_terms=0):
    cdef Py_ssize_t na = len(ta), nb = len(tb)
    cdef int64_t cap = max_terms
    if na == 0 or nb == 0:
        return {}
    if na == 1:
        (exps, coeff), = ta.items()
        return scale_terms(tb, exps, coeff, ops)
    if nb == 1:
        (exps, coeff), = tb.items()
        return scale_terms(ta, exps, coeff, ops)
    if cap and na * nb > cap * WORK_FACTOR:
        raise BudgetExceeded(f"product work {na}*{nb} exceeds budget")
    if _max_abs(ta) + _max_abs(tb) > SAFE:
        return _py.mul_terms(ta, tb, ops, max_terms)

    cdef dict pb = _pack_map(tb)
    cdef dict acc = {}
    cdef tuple ea
    cdef uint64_t ka
    cdef object key
    cdef PyObject* ptr
    cdef Py_ssize_t pos
    cdef PyObject* pkey
    cdef PyObject* pval
    for akey, av in ta.items():
        ea = <tuple> akey
        ka = _pack(<long> ea[0], <long> ea[1], <long> ea[2], <long> ea[3])
        pos = 0
        while PyDict_Next(pb, &pos, &pkey, &pval):
            # per-field addition: the double bias cancels against PACK_ZERO
            key = (ka + (<uint64_t> <object> pkey)) - PACK_ZERO
            if ops is None:
                prod = av * <object> pval
                ptr = PyDict_GetItem(acc, key)
                if ptr == NULL:
                    acc[key] = prod
                else:
                    s = <object> ptr + prod
                    if s:
                        acc[key] = s
                    else:
                        del acc[key]
            else:
                prod = ops.mul(av, <object> pval)
                ptr = PyDict_GetItem(acc, key)
                if ptr == NULL:
                    if not ops.is_zero(prod):
                        acc[key] = prod
                else:
                    s = ops.add(<object> ptr, prod)
                    if ops.is_zero(s):
                        del acc[key]
                    else:
                        acc[key] = s
    if cap and len(acc) > cap:
        raise BudgetExceeded(f"product has {len(acc)} terms, budget {cap}")
    return _unpack_map(acc)


def pow_terms(dict ta, k, ops=None, max_terms=0):
    one = 1 if ops is None else ops.one
    result = {(0, 0, 0, 0): one}
    cdef long kk = k
    if kk == 0:
        return result
    base = dict(ta)
    while True:
        if kk & 1:
            result = mul_terms(result, base, ops, max_terms)
        kk >>= 1
        if not kk:
            return result
        base = mul_terms(base, base, ops, max_terms)


def order_key(tuple exps, tuple weights):
    cdef long e1 = exps[0], e2 = exps[1], e3 = exps[2], e4 = exps[3]
    cdef long w1 = weights[0], w2 = weights[1], w3 = weights[2], w4 = weights[3]
    return (w1 * e1 + w2 * e2 + w3 * e3 + w4 * e4, e1, e4, e2, e3)


def max_weighted_degree(dict tp, tuple weights):
    cdef long w1 = weights[0], w2 = weights[1], w3 = weights[2], w4 = weights[3]
    cdef long best = 0, d
    cdef bint first = 1
    cdef tuple e
    for key in tp:
        e = <tuple> key
        d = w1 * <long> e[0] + w2 * <long> e[1] + w3 * <long> e[2] + w4 * <long> e[3]
        if first or d > best:
            best = d
            first = 0
    if first:
        raise ValueError("empty term map")
    return best


def exact_div_terms(dict tp, dict td, tuple weights, max_terms=0):
    if not tp:
        return {}
    # remainder keys are quotient + divisor monomials, hence the factor 2
    if _max_abs(tp) + 2 * _max_abs(td) > SAFE:
        return _py.exact_div_terms(tp, td, weights, max_terms)

    cdef long w[4]
    cdef int i
    for i in range(4):
        w[i] = weights[i]

    cdef int64_t cap = max_terms
    cdef int64_t work_cap = cap * WORK_FACTOR if cap else 0
    cdef int64_t work = 0

    cdef dict pd = _pack_map(td)
    cdef long lead_d[4]
    cdef long cand[4]
    cdef uint64_t lead_d_key = 0
    cdef bint first = 1
    cdef Py_ssize_t pos = 0
    cdef PyObject* pkey
    cdef PyObject* pval
    cdef uint64_t k
    while PyDict_Next(pd, &pos, &pkey, &pval):
        k = <uint64_t> <object> pkey
        _unpack(k, cand)
        if first or _ordcmp(cand, lead_d, w) > 0:
            lead_d[0] = cand[0]; lead_d[1] = cand[1]
            lead_d[2] = cand[2]; lead_d[3] = cand[3]
            lead_d_key = k
            first = 0
    lc_d = pd[lead_d_key]

    cdef long p_lo[4]
    cdef long p_hi[4]
    cdef long d_lo[4]
    cdef long d_hi[4]
    cdef long q_lo[4]
    cdef long q_hi[4]
    _box(tp, p_lo, p_hi)
    _box(td, d_lo, d_hi)
    for i in range(4):
        q_lo[i] = p_lo[i] - d_lo[i]
        q_hi[i] = p_hi[i] - d_hi[i]

    cdef dict r = _pack_map(tp)
    cdef dict q = {}
    cdef long lead_r[4]
    cdef long t[4]
    cdef uint64_t lead_r_key = 0
    cdef uint64_t tkey
    cdef object nkey
    cdef Py_ssize_t nd = len(pd)
    cdef PyObject* ptr
    while r:
        first = 1
        pos = 0
        while PyDict_Next(r, &pos, &pkey, &pval):
            k = <uint64_t> <object> pkey
            _unpack(k, cand)
            if first or _ordcmp(cand, lead_r, w) > 0:
                lead_r[0] = cand[0]; lead_r[1] = cand[1]
                lead_r[2] = cand[2]; lead_r[3] = cand[3]
                lead_r_key = k
                first = 0
        for i in range(4):
            t[i] = lead_r[i] - lead_d[i]
            if t[i] < q_lo[i] or t[i] > q_hi[i]:
                raise NotDivisible("leading term not reachable by any exact quotient")
        if _ordcmp(t, q_lo, w) < 0:
            raise NotDivisible("leading term not reachable by any exact quotient")
        c, rem = divmod(r[lead_r_key], lc_d)
        if rem:
            raise NotDivisible("leading coefficient not divisible")
        tkey = _pack(t[0], t[1], t[2], t[3])
        q[tkey] = c
        pos = 0
        while PyDict_Next(pd, &pos, &pkey, &pval):
            nkey = ((<uint64_t> <object> pkey) + tkey) - PACK_ZERO
            delta = c * <object> pval
            ptr = PyDict_GetItem(r, nkey)
            if ptr == NULL:
                r[nkey] = -delta
            else:
                s = <object> ptr - delta
                if s:
                    r[nkey] = s
                else:
                    del r[nkey]
        work += nd
        if cap and (len(q) > cap or len(r) > cap or work > work_cap):
            raise BudgetExceeded("division budget exhausted")
    return _unpack_map(q)


def normal_form_terms(dict tp, a, b, ops=None, max_terms=0):
    cdef long ca = a, cb = b
    cdef long guard = _max_abs(tp)
    if guard * (1 + (ca if ca > cb else cb)) > SAFE:
        return _py.normal_form_terms(tp, a, b, ops, max_terms)

    cdef dict out = {}
    cdef dict pending = {}  # weighted degree -> packed term map
    cdef dict layer, bucket
    cdef tuple exps, tk
    cdef long e[4]
    cdef long d, level, m13, m24, kk1, kk2, kk3, kk4
    cdef int64_t cap = max_terms
    cdef int64_t work_cap = cap * WORK_FACTOR if cap else 0
    cdef int64_t processed = 0
    cdef Py_ssize_t size
    cdef PyObject* ptr
    cdef long i

    for tkey, c in tp.items():
        exps = <tuple> tkey
        e[0] = exps[0]; e[1] = exps[1]; e[2] = exps[2]; e[3] = exps[3]
        d = ca * e[0] + e[1] + e[2] + cb * e[3]
        bucket = <dict> pending.setdefault(d, {})
        _absorb(bucket, _pack(e[0], e[1], e[2], e[3]), c, ops)

    while pending:
        level = max(pending)
        layer = <dict> pending.pop(level)
        for lkey, c in layer.items():
            _unpack(<uint64_t> <object> lkey, e)
            m13 = e[0] if e[0] < e[2] else e[2]
            m24 = e[1] if e[1] < e[3] else e[3]
            if m13 <= 0 and m24 <= 0:
                tk = (e[0], e[1], e[2], e[3])
                _absorb(out, tk, c, ops)
                continue
            if m13 > 0:
                for i in range(m13 + 1):
                    kk1 = e[0] - m13; kk2 = e[1] + ca * i
                    kk3 = e[2] - m13; kk4 = e[3]
                    w = comb(m13, i)
                    if ops is None:
                        cc = c if w == 1 else c * w
                    else:
                        cc = c if w == 1 else ops.mul(c, (w,) + (0,) * (ops.m - 1))
                    d = ca * kk1 + kk2 + kk3 + cb * kk4
                    bucket = <dict> pending.setdefault(d, {})
                    _absorb(bucket, _pack(kk1, kk2, kk3, kk4), cc, ops)
                processed += m13 + 1
            else:
                for i in range(m24 + 1):
                    kk1 = e[0]; kk2 = e[1] - m24
                    kk3 = e[2] + cb * i; kk4 = e[3] - m24
                    w = comb(m24, i)
                    if ops is None:
                        cc = c if w == 1 else c * w
                    else:
                        cc = c if w == 1 else ops.mul(c, (w,) + (0,) * (ops.m - 1))
                    d = ca * kk1 + kk2 + kk3 + cb * kk4
                    bucket = <dict> pending.setdefault(d, {})
                    _absorb(bucket, _pack(kk1, kk2, kk3, kk4), cc, ops)
                processed += m24 + 1
        if cap:
            size = len(out)
            for v in pending.values():
                size += len(<dict> v)
            if size > cap or processed > work_cap + len(tp):
                raise BudgetExceeded("normal form budget exhausted")
    return out


def substitute_terms(dict tp, images, ops=None, max_terms=0, caches=None, nf=None):
    if caches is None:
        caches = new_power_caches(ops)
    cdef bint do_nf = nf is not None
    a = nf[0] if do_nf else 0
    b = nf[1] if do_nf else 0

    cdef dict out = {}
    cdef dict prod
    cdef dict cache
    cdef tuple exps
    cdef long e
    cdef int i
    cdef int64_t cap = max_terms
    for key, c in tp.items():
        exps = <tuple> key
        prod = {(0, 0, 0, 0): c}
        for i in range(4):
            e = exps[i]
            if e:
                cache = <dict> caches[i]
                got = cache.get(e)
                if got is None:
                    best = max(kk for kk in cache if kk <= e)
                    got = cache[best]
                    while best < e:
                        got = mul_terms(got, images[i], ops, max_terms)
                        if do_nf:
                            got = normal_form_terms(got, a, b, ops, max_terms)
                        best += 1
                        cache[best] = got
                prod = mul_terms(prod, got, ops, max_terms)
                if do_nf:
                    prod = normal_form_terms(prod, a, b, ops, max_terms)
        out = add_terms(out, prod, ops)
        if cap and len(out) > cap:
            raise BudgetExceeded("substitution budget exhausted")
    return out
