"""Pure-Python term-map kernels.

A term map is a dict from exponent 4-tuples (e1, e2, e3, e4) to nonzero
coefficient values: Python ints, or integer tuples for the surrogate ring.
The optional ``ops`` argument carries surrogate-ring arithmetic; ``ops is
None`` selects the native int fast path.

The compiled kernel in _speedups.pyx implements the same functions with the
same semantics; keep the two in sync.
"""
from __future__ import annotations

from math import comb

from .budget import WORK_FACTOR
from .errors import BudgetExceeded, NotDivisible

IMPLEMENTATION = "python"


def add_terms(ta: dict, tb: dict, ops=None) -> dict:
    out = dict(ta)
    if ops is None:
        for k, v in tb.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    else:
        for k, v in tb.items():
            cur = out.get(k)
            s = v if cur is None else ops.add(cur, v)
            if ops.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
    return out


def neg_terms(ta: dict, ops=None) -> dict:
    if ops is None:
        return {k: -v for k, v in ta.items()}
    return {k: ops.neg(v) for k, v in ta.items()}


def sub_terms(ta: dict, tb: dict, ops=None) -> dict:
    return add_terms(ta, neg_terms(tb, ops), ops)


def scale_terms(ta: dict, exps: tuple, coeff, ops=None) -> dict:
    """Multiply by the single term coeff * y^exps.  coeff must be nonzero."""
    e1, e2, e3, e4 = exps
    out = {}
    if ops is None:
        for (f1, f2, f3, f4), v in ta.items():
            out[(f1 + e1, f2 + e2, f3 + e3, f4 + e4)] = v * coeff
    else:
        for (f1, f2, f3, f4), v in ta.items():
            c = ops.mul(v, coeff)
            if not ops.is_zero(c):
                out[(f1 + e1, f2 + e2, f3 + e3, f4 + e4)] = c
    return out


def mul_terms(ta: dict, tb: dict, ops=None, max_terms: int = 0) -> dict:
    na, nb = len(ta), len(tb)
    if na == 0 or nb == 0:
        return {}
    if na == 1:
        (exps, coeff), = ta.items()
        return scale_terms(tb, exps, coeff, ops)
    if nb == 1:
        (exps, coeff), = tb.items()
        return scale_terms(ta, exps, coeff, ops)
    if max_terms and na * nb > max_terms * WORK_FACTOR:
        raise BudgetExceeded(f"product work {na}*{nb} exceeds budget")
    out = {}
    if ops is None:
        for (a1, a2, a3, a4), va in ta.items():
            for (b1, b2, b3, b4), vb in tb.items():
                k = (a1 + b1, a2 + b2, a3 + b3, a4 + b4)
                s = out.get(k, 0) + va * vb
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
    else:
        for (a1, a2, a3, a4), va in ta.items():
            for (b1, b2, b3, b4), vb in tb.items():
                k = (a1 + b1, a2 + b2, a3 + b3, a4 + b4)
                cur = out.get(k)
                s = ops.mul(va, vb) if cur is None else ops.add(cur, ops.mul(va, vb))
                if ops.is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
    if max_terms and len(out) > max_terms:
        raise BudgetExceeded(f"product has {len(out)} terms, budget {max_terms}")
    return out


def pow_terms(ta: dict, k: int, ops=None, max_terms: int = 0) -> dict:
    one = 1 if ops is None else ops.one
    result = {(0, 0, 0, 0): one}
    if k == 0:
        return result
    base = dict(ta)
    while True:
        if k & 1:
            result = mul_terms(result, base, ops, max_terms)
        k >>= 1
        if not k:
            return result
        base = mul_terms(base, base, ops, max_terms)


def order_key(exps: tuple, weights: tuple) -> tuple:
    """Total order: weighted degree first, then lex on (e1, e4, e2, e3)."""
    e1, e2, e3, e4 = exps
    w1, w2, w3, w4 = weights
    return (w1 * e1 + w2 * e2 + w3 * e3 + w4 * e4, e1, e4, e2, e3)


def max_weighted_degree(tp: dict, weights: tuple) -> int:
    w1, w2, w3, w4 = weights
    return max(w1 * e1 + w2 * e2 + w3 * e3 + w4 * e4 for e1, e2, e3, e4 in tp)


def _support_box(tp: dict):
    los = [None] * 4
    his = [None] * 4
    for exps in tp:
        for i, e in enumerate(exps):
            if los[i] is None or e < los[i]:
                los[i] = e
            if his[i] is None or e > his[i]:
                his[i] = e
    return los, his


def exact_div_terms(tp: dict, td: dict, weights: tuple, max_terms: int = 0) -> dict:
    """Exact quotient tp / td over the integers, or raise NotDivisible.

    Standard leading-term elimination under the weighted order.  Three
    independent rejection rules keep the non-divisible case finite:
    coefficient divisibility at each step, the order floor given by the
    trailing terms, and the coordinate box Newton(q) = Newton(p) - Newton(d).
    """
    if not tp:
        return {}
    lead_d = max(td, key=lambda e: order_key(e, weights))
    lc_d = td[lead_d]
    # exact per-coordinate bounds on any quotient monomial
    p_lo, p_hi = _support_box(tp)
    d_lo, d_hi = _support_box(td)
    q_lo = [pl - dl for pl, dl in zip(p_lo, d_lo)]
    q_hi = [ph - dh for ph, dh in zip(p_hi, d_hi)]
    trail_key = order_key(
        tuple(q_lo), weights
    )  # key of the smallest possible quotient term
    r = dict(tp)
    q = {}
    work = 0
    work_cap = max_terms * WORK_FACTOR if max_terms else 0
    nd = len(td)
    while r:
        lead_r = max(r, key=lambda e: order_key(e, weights))
        t = (
            lead_r[0] - lead_d[0],
            lead_r[1] - lead_d[1],
            lead_r[2] - lead_d[2],
            lead_r[3] - lead_d[3],
        )
        if order_key(t, weights) < trail_key or any(
            not (lo <= e <= hi) for e, lo, hi in zip(t, q_lo, q_hi)
        ):
            raise NotDivisible("leading term not reachable by any exact quotient")
        c, rem = divmod(r[lead_r], lc_d)
        if rem:
            raise NotDivisible("leading coefficient not divisible")
        q[t] = c
        t1, t2, t3, t4 = t
        for (e1, e2, e3, e4), v in td.items():
            k = (e1 + t1, e2 + t2, e3 + t3, e4 + t4)
            s = r.get(k, 0) - c * v
            if s:
                r[k] = s
            elif k in r:
                del r[k]
        work += nd
        if max_terms and (
            len(q) > max_terms or len(r) > max_terms or work > work_cap
        ):
            raise BudgetExceeded("division budget exhausted")
    return q


def new_power_caches(ops=None) -> list:
    """Fresh power caches for substitute_terms; share across calls with the
    same images to avoid recomputing image powers."""
    one = 1 if ops is None else ops.one
    return [{0: {(0, 0, 0, 0): one}} for _ in range(4)]


def substitute_terms(
    tp: dict, images, ops=None, max_terms: int = 0, caches=None, nf=None
) -> dict:
    """Evaluate tp at the four image term maps.  tp must have nonnegative exponents.

    With nf=(a, b) every partial product is reduced to normal form on the
    spot, which keeps intermediates at the size of the reduced answer (sound
    because reduction is a ring map on classes).  Only valid when the images
    are themselves reduced representatives.
    """
    if caches is None:
        caches = new_power_caches(ops)

    def reduce_(t: dict) -> dict:
        if nf is None:
            return t
        return normal_form_terms(t, nf[0], nf[1], ops, max_terms)

    def power(i: int, e: int) -> dict:
        cache = caches[i]
        got = cache.get(e)
        if got is None:
            # build from the largest cached power below e
            best = max(k for k in cache if k <= e)
            got = cache[best]
            while best < e:
                got = reduce_(mul_terms(got, images[i], ops, max_terms))
                best += 1
                cache[best] = got
        return got

    out = {}
    for exps, c in tp.items():
        prod = {(0, 0, 0, 0): c}
        for i, e in enumerate(exps):
            if e:
                prod = reduce_(mul_terms(prod, power(i, e), ops, max_terms))
        out = add_terms(out, prod, ops)
        if max_terms and len(out) > max_terms:
            raise BudgetExceeded("substitution budget exhausted")
    return out


def normal_form_terms(tp: dict, a: int, b: int, ops=None, max_terms: int = 0) -> dict:
    """Rewrite with y1*y3 -> y2^a + 1 and y2*y4 -> y3^b + 1 until normal.

    Each rewrite strictly lowers the (a,1,1,b)-weighted degree, so processing
    terms level by level (highest weighted degree first, like terms merged
    within each level) terminates and visits every monomial at most once per
    level.  The result is the unique normal form.
    """
    out = {}
    pending: dict = {}  # weighted degree -> merged term map awaiting reduction
    for exps, c in tp.items():
        e1, e2, e3, e4 = exps
        d = a * e1 + e2 + e3 + b * e4
        pending.setdefault(d, {})[exps] = c
    processed = 0
    work_cap = max_terms * WORK_FACTOR if max_terms else 0

    def absorb(bucket: dict, key: tuple, value) -> None:
        if ops is None:
            s = bucket.get(key, 0) + value
            if s:
                bucket[key] = s
            else:
                bucket.pop(key, None)
        else:
            cur = bucket.get(key)
            s = value if cur is None else ops.add(cur, value)
            if ops.is_zero(s):
                bucket.pop(key, None)
            else:
                bucket[key] = s

    while pending:
        level = max(pending)
        layer = pending.pop(level)
        for (e1, e2, e3, e4), c in layer.items():
            m13 = e1 if e1 < e3 else e3
            m24 = e2 if e2 < e4 else e4
            if m13 <= 0 and m24 <= 0:
                absorb(out, (e1, e2, e3, e4), c)
                continue
            if m13 > 0:
                # y1^m13 y3^m13 -> (y2^a + 1)^m13, expanded binomially
                children = (
                    ((e1 - m13, e2 + a * i, e3 - m13, e4), comb(m13, i))
                    for i in range(m13 + 1)
                )
            else:
                children = (
                    ((e1, e2 - m24, e3 + b * i, e4 - m24), comb(m24, i))
                    for i in range(m24 + 1)
                )
            for key, w in children:
                k1, k2, k3, k4 = key
                d = a * k1 + k2 + k3 + b * k4
                cc = c * w if ops is None else ops.mul(c, (w,) + (0,) * (ops.m - 1))
                absorb(pending.setdefault(d, {}), key, cc)
            processed += m13 + m24 + 1
        if max_terms:
            size = len(out) + sum(len(v) for v in pending.values())
            if size > max_terms or processed > work_cap + len(tp):
                raise BudgetExceeded("normal form budget exhausted")
    return out
