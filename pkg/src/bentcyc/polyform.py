"""Switching between cyclotomic form and polynomial form.

Multiplicative side: an index-d cyclotomic mapping equals the sparse
polynomial (1/d) sum_{i,j} w^(-ij(2^n-1)/d) a_i x^(j(2^n-1)/d + r_i); in
characteristic 2 every admissible d is odd so 1/d = 1. Trace forms of the
Dillon and Niho families come out as sum_{i,j} Tr(u^(2ij) a_i x^(...)), and
those convert back to branch tables coset by coset.

Additive side: branch selection by powers of phi(x) = x^q + x, either as the
double-sum interpolation over xi powers or as the indicator products
Tr(alpha_i x^(q+1)) ((x^q + x + xi^i)^(q-1) + 1); both are evaluable cheaply
and expandable (with a term cap) into a genuine sparse polynomial.

Exponent convention: on nonzero arguments exponents live mod 2^n - 1 and are
normalized into [1, 2^n - 1] (so x = 0 evaluates every such term to 0, and
exponent-class 0 becomes 2^n - 1 rather than a constant); exponent 0 stays a
genuine constant term.
"""

from __future__ import annotations

import json
from array import array
from typing import Callable, Optional, Union

from . import _kernels as kern
from .boolfun import BooleanFunction
from .cyclotomic import AddCycSpec, MultCycSpec
from .fields import FieldCtx


def _norm_exp(e: int, N: int) -> int:
    """Reduce a positive exponent into [1, N]; 0 stays 0."""
    if e == 0:
        return 0
    return (e - 1) % N + 1


class UnivariatePoly:
    """Sparse polynomial over GF(2^n) with normalized exponents."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms=None):
        self.ctx = ctx
        self.terms: dict[int, int] = {}
        if terms:
            for e, c in terms.items() if isinstance(terms, dict) else terms:
                self.add_term(e, c)

    def add_term(self, e: int, c: int) -> None:
        if c == 0:
            return
        e = _norm_exp(e, self.ctx.mult_order)
        acc = self.terms.get(e, 0) ^ c
        if acc:
            self.terms[e] = acc
        else:
            self.terms.pop(e, None)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UnivariatePoly)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def degree(self) -> int:
        return max(self.terms, default=0)

    def evaluate(self, x: int) -> int:
        ctx = self.ctx
        if x == 0:
            return self.terms.get(0, 0)
        acc = 0
        for e, c in self.terms.items():
            acc ^= ctx.mul(c, ctx.pow(x, e))
        return acc

    def evaluate_all(self) -> list[int]:
        """Values at every point, index = element bitmask."""
        ctx = self.ctx
        N = ctx.mult_order
        out = [0] * ctx.order
        out[0] = self.terms.get(0, 0)
        if not self.terms:
            return out
        coeff_logs = array("q", (ctx.log(c) for _, c in sorted(self.terms.items())))
        exps = array("q", (e for e, _ in sorted(self.terms.items())))
        vals = array("i", bytes(4 * N))
        kern.sparse_eval_all(coeff_logs, exps, ctx.exp_array(), N, vals)
        for L in range(N):
            out[ctx.exp(L)] = vals[L]
        return out

    def mul(self, other: "UnivariatePoly") -> "UnivariatePoly":
        ctx = self.ctx
        out = UnivariatePoly(ctx)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.add_term(e1 + e2, ctx.mul(c1, c2))
        return out

    def square(self) -> "UnivariatePoly":
        ctx = self.ctx
        out = UnivariatePoly(ctx)
        for e, c in self.terms.items():
            out.add_term(2 * e, ctx.sq(c))
        return out

    def pow(self, k: int, cap: Optional[int] = None) -> "UnivariatePoly":
        """Sparse power by square and multiply; cap bounds the term count."""
        result = UnivariatePoly(self.ctx, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
                if cap and len(result) > cap:
                    raise MemoryError(f"expansion exceeds {cap} terms")
            k >>= 1
            if k:
                base = base.square()
        return result

    def boolean_function(self) -> BooleanFunction:
        """Truth table assuming the polynomial is already F2 valued."""
        vals = self.evaluate_all()
        if any(v > 1 for v in vals):
            raise ValueError("polynomial is not F2 valued")
        return BooleanFunction(self.ctx, bytes(vals))

    def to_json_obj(self) -> list:
        return [
            {"coeff": self.ctx.format_element(c), "exp": e}
            for e, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json_obj(cls, ctx: FieldCtx, obj) -> "UnivariatePoly":
        p = cls(ctx)
        for t in obj:
            p.add_term(int(t["exp"]), ctx.parse_element(t["coeff"]))
        return p


class TracePolynomial:
    """x -> const + sum_j Tr_1^n(c_j x^(e_j)), an F2-valued sparse form."""

    __slots__ = ("ctx", "terms", "const")

    def __init__(self, ctx: FieldCtx, terms=None, const: int = 0):
        self.ctx = ctx
        self.terms: dict[int, int] = {}
        self.const = const & 1
        if terms:
            for e, c in terms.items() if isinstance(terms, dict) else terms:
                self.add_term(e, c)

    def add_term(self, e: int, c: int) -> None:
        if c == 0:
            return
        e = _norm_exp(e, self.ctx.mult_order)
        acc = self.terms.get(e, 0) ^ c
        if acc:
            self.terms[e] = acc
        else:
            self.terms.pop(e, None)

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, x: int) -> int:
        ctx = self.ctx
        v = self.const
        if x == 0:
            if 0 in self.terms:
                v ^= ctx.abs_trace(self.terms[0])
            return v
        for e, c in self.terms.items():
            v ^= ctx.abs_trace(ctx.mul(c, ctx.pow(x, e)))
        return v

    def field_expansion(self) -> UnivariatePoly:
        """Expand each trace into its n Frobenius terms (F2-valued poly)."""
        ctx = self.ctx
        out = UnivariatePoly(ctx, {0: self.const} if self.const else None)
        for e, c in self.terms.items():
            ce, ee = c, e
            for _ in range(ctx.e):
                out.add_term(ee, ce)
                ce = ctx.sq(ce)
                ee = _norm_exp(2 * ee, ctx.mult_order)
        return out

    def boolean_function(self) -> BooleanFunction:
        vals = self.field_expansion().evaluate_all()
        # the expansion of a trace form is automatically F2 valued
        return BooleanFunction(self.ctx, bytes(v & 1 for v in vals))

    def to_json_obj(self) -> dict:
        return {
            "const": self.const,
            "terms": [
                {"coeff": self.ctx.format_element(c), "exp": e, "trace_to": 1}
                for e, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json_obj(cls, ctx: FieldCtx, obj: dict) -> "TracePolynomial":
        p = cls(ctx, const=int(obj.get("const", 0)))
        for t in obj["terms"]:
            p.add_term(int(t["exp"]), ctx.parse_element(t["coeff"]))
        return p


# ---------------------------------------------------------------------------
# Multiplicative conversions
# ---------------------------------------------------------------------------

def mult_to_poly(spec: MultCycSpec) -> UnivariatePoly:
    """Field-valued polynomial form of an index-d cyclotomic mapping.

    P(x) = sum_{i,j in Z_d} w^(-ij(2^n-1)/d) a_i x^(j(2^n-1)/d + r_i), with
    the normalization pushing exponent-class 0 to 2^n - 1 so that P(0) = 0.
    """
    ctx = spec.ctx
    N = ctx.mult_order
    step = N // spec.d
    out = UnivariatePoly(ctx)
    for i, (a, r) in enumerate(spec.branches):
        if a == 0:
            continue
        for j in range(spec.d):
            coeff = ctx.mul(ctx.exp(-i * j * step), a)
            e = j * step + r
            out.add_term(e if e else N, coeff)
    return out


def dillon_polyform(spec: MultCycSpec) -> TracePolynomial:
    """Trace form sum_{i,j} Tr(u^(2ij) a_i x^((q-1)(j + l_i))).

    Input must be Dillon shaped: every branch exponent a multiple of q-1.
    """
    ctx = spec.ctx
    q = spec.q
    from .constructions import u_powers

    up = u_powers(ctx)
    out = TracePolynomial(ctx)
    for i, (a, r) in enumerate(spec.branches):
        if r % (q - 1) != 0:
            raise ValueError("not Dillon shaped: exponent not multiple of q-1")
        li = r // (q - 1)
        if a == 0:
            continue
        for j in range(q + 1):
            e = (q - 1) * ((j + li) % (q + 1))
            out.add_term(e if e else ctx.mult_order,
                         ctx.mul(up[(2 * i * j) % (q + 1)], a))
    return out


def niho_polyform(spec: MultCycSpec) -> TracePolynomial:
    """Trace form sum_{i,j} Tr(u^(2ij) a_i x^((q-1)(j + s_i) + 1))."""
    ctx = spec.ctx
    q = spec.q
    from .constructions import u_powers

    up = u_powers(ctx)
    out = TracePolynomial(ctx)
    for i, (a, r) in enumerate(spec.branches):
        if r % (q - 1) != 1:
            raise ValueError("not Niho shaped: exponent not 1 mod q-1")
        si = (r - 1) // (q - 1)
        if a == 0:
            continue
        for j in range(q + 1):
            e = (q - 1) * ((j + si) % (q + 1)) + 1
            out.add_term(e, ctx.mul(up[(2 * i * j) % (q + 1)], a))
    return out


def poly_to_cyclotomic(tp: TracePolynomial) -> MultCycSpec:
    """Branch table of a pure Dillon (all exponents t(q-1)) or pure Niho
    (all exponents s(q-1)+1) trace polynomial.

    Dillon branches become constants (a_i = sum_t gamma_t u^(-2it), r_i = 0);
    Niho branches become linear (a_i = sum_t gamma_t u^(-2 s_t i), r_i = 1).
    """
    ctx = tp.ctx
    if ctx.e % 2 != 0:
        raise ValueError("conversion needs GF(2^(2m))")
    if tp.const:
        raise ValueError("not Dillon/Niho pure: constant term present")
    q = 1 << (ctx.e // 2)
    from .constructions import u_powers

    up = u_powers(ctx)
    exps = sorted(tp.terms)
    if not exps:
        return MultCycSpec(ctx, [(0, 0)] * (q + 1))
    if all(e % (q - 1) == 0 for e in exps):
        branches = []
        for i in range(q + 1):
            acc = 0
            for e, c in tp.terms.items():
                t = e // (q - 1)
                acc ^= ctx.mul(c, up[(-2 * i * t) % (q + 1)])
            branches.append((acc, 0))
        return MultCycSpec(ctx, branches)
    if all(e % (q - 1) == 1 for e in exps):
        branches = []
        for i in range(q + 1):
            acc = 0
            for e, c in tp.terms.items():
                s = (e - 1) // (q - 1)
                acc ^= ctx.mul(c, up[(-2 * i * s) % (q + 1)])
            branches.append((acc, 1))
        return MultCycSpec(ctx, branches)
    raise ValueError("not Dillon/Niho pure")


def dillon_r3_polyform(
    ctx: FieldCtx, c: int, eps: int, l1: int = 1, l2: int = 1
) -> TracePolynomial:
    """Explicit trace form of the r = 3 family (odd m):

    Tr( sum_{i<(q+1)/3} (c eps x^((3i+l1)(q-1)) + c x^((3i+l2)(q-1)))
        + c x^(l2(q-1)) ).
    """
    if ctx.e % 2 != 0 or (ctx.e // 2) % 2 != 1:
        raise ValueError("r3 polynomial form needs odd m")
    q = 1 << (ctx.e // 2)
    N = ctx.mult_order
    ce = ctx.mul(c, eps)
    out = TracePolynomial(ctx)
    for i in range((q + 1) // 3):
        e1 = ((3 * i + l1) * (q - 1)) % N
        e2 = ((3 * i + l2) * (q - 1)) % N
        out.add_term(e1 if e1 else N, ce)
        out.add_term(e2 if e2 else N, c)
    e3 = (l2 * (q - 1)) % N
    out.add_term(e3 if e3 else N, c)
    return out


# ---------------------------------------------------------------------------
# Additive conversions
# ---------------------------------------------------------------------------

class AddPolyExpr:
    """Evaluable polynomial expression for an additive-coset mapping.

    evaluate(x) is exact and cheap; expand() multiplies everything out into
    a genuine UnivariatePoly (term count capped, default 2^22).
    """

    def __init__(self, ctx: FieldCtx, evaluate: Callable[[int], int],
                 expand: Callable[[Optional[int]], UnivariatePoly], label: str):
        self.ctx = ctx
        self._evaluate = evaluate
        self._expand = expand
        self.label = label

    def evaluate(self, x: int) -> int:
        return self._evaluate(x)

    def boolean_function(self) -> BooleanFunction:
        return BooleanFunction.from_closure(self.ctx, self._evaluate)

    def expand(self, cap: Optional[int] = 1 << 22) -> UnivariatePoly:
        return self._expand(cap)


def _trace_m_poly(ctx: FieldCtx, alpha: int, q: int) -> UnivariatePoly:
    # Tr_1^m(alpha x^(q+1)) as the field polynomial sum_l (alpha x^(q+1))^(2^l)
    m = ctx.e // 2
    out = UnivariatePoly(ctx)
    c, e = alpha, q + 1
    for _ in range(m):
        out.add_term(e, c)
        c = ctx.sq(c)
        e = _norm_exp(2 * e, ctx.mult_order)
    return out


def add_to_poly(spec: AddCycSpec) -> AddPolyExpr:
    """Interpolation over powers of phi(x) = x^q + x:

    H(x) = f_inf(x)(1 + phi(x)^(2^n-1))
           + sum_{j in Z_(q-1)} sum_{i=1}^{q-1} xi^(-ij) f_j(x) phi(x)^i,
    with f_j(x) = Tr_1^m(alpha_j x^(q+1)) as F2-subset-valued factors
    (1/k = 1 since k = q-1 is odd). The inner index runs over 1..k rather
    than 0..k-1: on nonzero fibers any full residue system gives the same
    geometric sum, while i = 0 would leak sum_j f_j onto the kernel fiber.
    """
    ctx = spec.ctx
    q = spec.q
    m = spec.m
    k = q - 1
    N = ctx.mult_order
    xi_log = ctx.log(spec.xi)

    def evaluate(x: int) -> int:
        phi = ctx.frob(x, m) ^ x
        xq1 = ctx.pow(x, q + 1)
        acc = 0
        if spec.alpha_inf:
            gate = ctx.pow(phi, N) ^ 1
            if gate:
                acc ^= ctx.subfield_trace_bit(m, ctx.mul(spec.alpha_inf, xq1))
        if phi:
            fvals = [
                ctx.subfield_trace_bit(m, ctx.mul(spec.alphas[j], xq1))
                if spec.alphas[j]
                else 0
                for j in range(k)
            ]
            phi_i = 1
            for i in range(1, k + 1):
                phi_i = ctx.mul(phi_i, phi)
                inner = 0
                for j in range(k):
                    if fvals[j]:
                        inner ^= ctx.exp((-xi_log * i * j) % N)
                acc ^= ctx.mul(inner, phi_i)
        return acc

    def expand(cap: Optional[int]) -> UnivariatePoly:
        phi_poly = UnivariatePoly(ctx, {q: 1, 1: 1})
        out = UnivariatePoly(ctx)
        if spec.alpha_inf:
            f_inf = _trace_m_poly(ctx, spec.alpha_inf, q)
            one_plus = phi_poly.pow(N, cap)
            one_plus.add_term(0, 1)
            for e, c in f_inf.mul(one_plus).terms.items():
                out.add_term(e, c)
        phi_i = UnivariatePoly(ctx, {0: 1})
        for i in range(1, k + 1):
            phi_i = phi_i.mul(phi_poly)
            for j in range(k):
                if spec.alphas[j] == 0:
                    continue
                coeff = ctx.exp((-xi_log * i * j) % N)
                prod = _trace_m_poly(ctx, spec.alphas[j], q).mul(phi_i)
                for e, c in prod.terms.items():
                    out.add_term(e, ctx.mul(coeff, c))
                if cap and len(out) > cap:
                    raise MemoryError(f"expansion exceeds {cap} terms")
        return out

    return AddPolyExpr(ctx, evaluate, expand, "fernando-hou")


def kasami_indicator_form(spec: AddCycSpec) -> AddPolyExpr:
    """Indicator-product form:

    sum_{i in Z_(q-1)} Tr_1^m(alpha_i x^(q+1)) ((x^q + x + xi^i)^(q-1) + 1)
    + Tr_1^m(alpha_inf x^(q+1)) ((x^q + x)^(q-1) + 1).
    """
    ctx = spec.ctx
    q = spec.q
    m = spec.m

    def evaluate(x: int) -> int:
        phi = ctx.frob(x, m) ^ x
        xq1 = ctx.pow(x, q + 1)
        acc = 0
        for i in spec.branch_indices():
            al = spec.alpha(i)
            if al == 0:
                continue
            gate = ctx.pow(phi ^ spec.xi_pow(i), q - 1) ^ 1
            if gate:
                acc ^= ctx.mul(ctx.subfield_trace_bit(m, ctx.mul(al, xq1)), gate)
        return acc

    def expand(cap: Optional[int]) -> UnivariatePoly:
        out = UnivariatePoly(ctx)
        for i in spec.branch_indices():
            al = spec.alpha(i)
            if al == 0:
                continue
            shifted = UnivariatePoly(ctx, {q: 1, 1: 1})
            xp = spec.xi_pow(i)
            if xp:
                shifted.add_term(0, xp)
            gate = shifted.pow(q - 1, cap)
            gate.add_term(0, 1)
            prod = _trace_m_poly(ctx, al, q).mul(gate)
            for e, c in prod.terms.items():
                out.add_term(e, c)
            if cap and len(out) > cap:
                raise MemoryError(f"expansion exceeds {cap} terms")
        return out

    return AddPolyExpr(ctx, evaluate, expand, "indicator")


def kasami0_closed_form(ctx: FieldCtx, c: int) -> AddPolyExpr:
    """Tr_1^m(c x^(q+1)) (x^q + x + c^(2^(m-1)-1))^(q-1)."""
    if ctx.e % 2 != 0:
        raise ValueError("needs GF(2^(2m))")
    m = ctx.e // 2
    q = 1 << m
    beta = ctx.pow(c, (1 << (m - 1)) - 1)

    def evaluate(x: int) -> int:
        t = ctx.subfield_trace_bit(m, ctx.mul(c, ctx.pow(x, q + 1)))
        if t == 0:
            return 0
        return ctx.pow(ctx.frob(x, m) ^ x ^ beta, q - 1)

    def expand(cap: Optional[int]) -> UnivariatePoly:
        shifted = UnivariatePoly(ctx, {q: 1, 1: 1})
        shifted.add_term(0, beta)
        gate = shifted.pow(q - 1, cap)
        return _trace_m_poly(ctx, c, q).mul(gate)

    return AddPolyExpr(ctx, evaluate, expand, "kasami0-closed")


# ---------------------------------------------------------------------------
# JSON dump helpers (CLI surface)
# ---------------------------------------------------------------------------

def poly_to_json(p: Union[UnivariatePoly, TracePolynomial]) -> str:
    if isinstance(p, TracePolynomial):
        obj = {"kind": "tracepoly", "field": str(p.ctx.spec)}
        obj.update(p.to_json_obj())
    else:
        obj = {"kind": "poly", "field": str(p.ctx.spec), "terms": p.to_json_obj()}
    return json.dumps(obj)


def poly_from_json(s: str):
    from .fields import parse_field_spec

    obj = json.loads(s)
    ctx = parse_field_spec(obj["field"])
    if obj.get("kind") == "tracepoly":
        return TracePolynomial.from_json_obj(ctx, obj)
    if obj.get("kind") == "poly":
        return UnivariatePoly.from_json_obj(ctx, obj["terms"])
    raise ValueError(f"unknown polynomial kind: {obj.get('kind')!r}")
