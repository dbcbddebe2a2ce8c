"""Coset partitions of GF(2^n) and materialization of cyclotomic mappings.

Multiplicative side: the index-d subgroup C of the unit group partitions
GF(2^n)^* into cosets C_i = w^i C; a spec assigns a branch monomial a_i x^r_i
to each coset and the mapping's Boolean trace gives the truth table. All
constructions downstream use d = q+1 on GF(q^2), where C = F_q^* and
w^i F_q^* = u^i F_q^* for u the canonical generator of mu_(q+1); general odd
d is supported for the polynomial-form conversions.

Additive side: cosets of a subfield. AddCycSpec is the q+1-power (Kasami)
branch family over the fibers of x -> x^q + x; AddCycSpecGeneral carries
arbitrary representatives and Gold-type exponents 2^t_i + 1 with k | t_i.
"""

from __future__ import annotations

import json
from array import array
from typing import Optional, Sequence, Union

from .boolfun import BooleanFunction
from .fields import FieldCtx, FieldError, make_field, parse_field_spec


class MultCycSpec:
    """Branch table (a_i, r_i) over the index-d multiplicative cosets."""

    def __init__(
        self,
        ctx: FieldCtx,
        branches: Sequence[tuple[int, int]],
        d: Optional[int] = None,
        value_at_zero: int = 0,
    ):
        if d is None:
            if ctx.e % 2 != 0:
                raise ValueError("default index d = q+1 needs an even degree")
            d = (1 << (ctx.e // 2)) + 1
        if ctx.mult_order % d != 0:
            raise ValueError(f"index {d} does not divide 2^{ctx.e} - 1")
        branches = [(a, r) for a, r in branches]
        if len(branches) != d:
            raise ValueError(f"need {d} branches, got {len(branches)}")
        if any(r < 0 for _, r in branches):
            raise ValueError("branch exponents must be non-negative")
        self.ctx = ctx
        self.d = d
        self.branches = branches
        self.value_at_zero = value_at_zero & 1

    # -- coset structure ------------------------------------------------------

    @property
    def q(self) -> int:
        if self.ctx.e % 2 != 0 or self.d != (1 << (self.ctx.e // 2)) + 1:
            raise ValueError("q is only defined for index q+1 specs")
        return 1 << (self.ctx.e // 2)

    def u(self) -> int:
        """Canonical generator of mu_(q+1); u^i F_q^* = w^i F_q^*."""
        _ = self.q
        return self.ctx.compute_u()

    def coset_index(self, x: int) -> int:
        """The unique i with x in w^i C; closed form via discrete log."""
        if x == 0:
            raise ValueError("zero has index infinity")
        if self.ctx.has_log_tables:
            return self.ctx.log(x) % self.d
        return self.coset_index_search(x)

    def coset_index_search(self, x: int) -> int:
        """Membership-test fallback: find i with x * w^-i in C."""
        if x == 0:
            raise ValueError("zero has index infinity")
        ctx = self.ctx
        sub_ord = ctx.mult_order // self.d
        for i in range(self.d):
            y = ctx.mul(x, ctx.inv(ctx.exp(i)))
            if ctx.pow(y, sub_ord) == 1:
                return i
        raise FieldError("coset search failed")  # unreachable on valid input

    def coset_elements(self, i: int) -> list[int]:
        ctx = self.ctx
        return [
            ctx.exp(i + k * self.d) for k in range(ctx.mult_order // self.d)
        ]

    def coset_index_table(self) -> array:
        """int32 table: entry x is the coset of x, with slot d reserved for 0.

        Cached; feeds the kernel-side expansion (vals needs length d+1 with
        vals[d] = value at zero).
        """
        key = ("cidx", self.d)
        cache = self.ctx._cache
        if key not in cache:
            ctx = self.ctx
            t = array("i", bytes(4 * ctx.order))
            t[0] = self.d
            if ctx.has_log_tables:
                for L in range(ctx.mult_order):
                    t[ctx.exp(L)] = L % self.d
            else:
                for x in range(1, ctx.order):
                    t[x] = self.coset_index_search(x)
            cache[key] = t
        return cache[key]

    # -- materialization --------------------------------------------------------

    def materialize(self) -> BooleanFunction:
        """f(0) = value_at_zero; f(x) = Tr(a_i x^r_i) on coset i."""
        ctx = self.ctx
        table = bytearray(ctx.order)
        table[0] = self.value_at_zero
        if ctx.has_log_tables:
            tr = ctx.abs_trace
            mul = ctx.mul
            exp = ctx._exp
            N = ctx.mult_order
            for L in range(N):
                a, r = self.branches[L % self.d]
                if a:
                    table[exp[L]] = tr(mul(a, exp[(L * r) % N]))
        else:
            for x in range(1, ctx.order):
                a, r = self.branches[self.coset_index(x)]
                table[x] = ctx.abs_trace(ctx.mul(a, ctx.pow(x, r)))
        return BooleanFunction(ctx, table)

    def branch_sum(self, i: int, b: int) -> int:
        """S_i(b) = sum over the coset of (-1)^(Tr(a_i x^r_i) + Tr(bx)).

        Brute force; the Walsh spectrum satisfies W(b) = 1 + sum_i S_i(b)
        whenever value_at_zero = 0.
        """
        ctx = self.ctx
        a, r = self.branches[i % self.d]
        s = 0
        for x in self.coset_elements(i):
            s += 1 - 2 * (
                ctx.abs_trace(ctx.mul(a, ctx.pow(x, r)))
                ^ ctx.abs_trace(ctx.mul(b, x))
            )
        return s

    # -- serialization ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        q = self.q  # errors out for general-d specs, which do not serialize
        out = {
            "kind": "mult",
            "m": self.ctx.e // 2,
            "branches": [
                {"a": self.ctx.format_element(a), "r": r} for a, r in self.branches
            ],
            "value_at_zero": self.value_at_zero,
        }
        from .fields import PRIMITIVE_POLY

        if self.ctx.modulus != PRIMITIVE_POLY[self.ctx.e]:
            out["field"] = str(self.ctx.spec)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultCycSpec)
            and self.ctx == other.ctx
            and self.d == other.d
            and self.branches == other.branches
            and self.value_at_zero == other.value_at_zero
        )


class AddCycSpec:
    """Kasami branch table over the additive fibers N_i = {x : x^q + x = xi^i}.

    alphas[i] (in F_q) rules fiber i for i in Z_(q-1); alpha_inf rules the
    kernel fiber x^q + x = 0 (= F_q). The representative of fiber i is
    xi^i * x0 with x0 the canonical solution of x^q + x = 1.
    """

    def __init__(
        self,
        ctx: FieldCtx,
        alphas: Sequence[int],
        alpha_inf: int,
        xi: Optional[int] = None,
    ):
        if ctx.e % 2 != 0:
            raise ValueError("AddCycSpec needs GF(2^(2m))")
        m = ctx.e // 2
        q = 1 << m
        if xi is None:
            xi = ctx.subfield_generator(m)
        alphas = list(alphas)
        if len(alphas) != q - 1:
            raise ValueError(f"need q-1 = {q - 1} alphas, got {len(alphas)}")
        for al in alphas + [alpha_inf]:
            if not ctx.subfield_test(m, al):
                raise ValueError("branch coefficients must lie in F_q")
        if not ctx.subfield_test(m, xi):
            raise ValueError("xi must lie in F_q")
        # xi must generate F_q^*
        dlog = {}
        v = 1
        for i in range(q - 1):
            if v in dlog:
                raise ValueError("xi does not generate F_q^*")
            dlog[v] = i
            v = ctx.mul(v, xi)
        if v != 1:
            raise ValueError("xi does not generate F_q^*")
        self.ctx = ctx
        self.m = m
        self.q = q
        self.xi = xi
        self.alphas = alphas
        self.alpha_inf = alpha_inf
        self._dlog_xi = dlog
        x0 = ctx.solve_artin_schreier(1)
        assert x0 is not None  # Tr_m^n(1) = 0 always
        self.x0 = x0

    def branch_of(self, x: int) -> Union[int, str]:
        """Fiber index of x: 'inf' on the kernel, else dlog_xi(x^q + x)."""
        s = self.ctx.frob(x, self.m) ^ x
        if s == 0:
            return "inf"
        return self._dlog_xi[s]

    def alpha(self, i: Union[int, str]) -> int:
        return self.alpha_inf if i == "inf" else self.alphas[i]

    def xi_pow(self, i: Union[int, str]) -> int:
        """xi^i with the xi^inf = 0 convention."""
        return 0 if i == "inf" else self.ctx.pow(self.xi, i)

    def representative(self, i: Union[int, str]) -> int:
        """v_i = xi^i x0; v_inf = 0 (kernel fiber is F_q itself)."""
        return 0 if i == "inf" else self.ctx.mul(self.xi_pow(i), self.x0)

    def branch_indices(self) -> list:
        return ["inf"] + list(range(self.q - 1))

    def materialize(self) -> BooleanFunction:
        """f(x) = Tr_1^m(alpha_i x^(q+1)) on fiber i."""
        ctx = self.ctx
        m = self.m
        table = bytearray(ctx.order)
        for x in range(ctx.order):
            al = self.alpha(self.branch_of(x))
            if al:
                table[x] = ctx.subfield_trace_bit(
                    m, ctx.mul(al, ctx.pow(x, self.q + 1))
                )
        return BooleanFunction(ctx, table)

    def to_general(self) -> "AddCycSpecGeneral":
        """Reindex as a general additive spec (k = t_i = m, Gold exponent q+1).

        Branch coefficients a_i are Artin-Schreier lifts of the alphas, so
        Tr_1^n(a_i x^(q+1)) = Tr_1^m(alpha_i x^(q+1)) pointwise.
        """
        ctx = self.ctx
        reps = []
        branches = []
        for i in self.branch_indices():
            a = ctx.solve_artin_schreier(self.alpha(i))
            assert a is not None  # alphas lie in F_q = image of x -> x^q + x
            reps.append(self.representative(i))
            branches.append((a, self.m))
        return AddCycSpecGeneral(ctx, self.m, reps, branches)

    def to_json_dict(self) -> dict:
        from .fields import PRIMITIVE_POLY

        ctx = self.ctx
        out = {
            "kind": "add",
            "m": self.m,
            "alphas": [ctx.format_element(a) for a in self.alphas],
            "alpha_inf": ctx.format_element(self.alpha_inf),
        }
        if self.xi != ctx.subfield_generator(self.m):
            out["xi"] = ctx.format_element(self.xi)
        if ctx.modulus != PRIMITIVE_POLY[ctx.e]:
            out["field"] = str(ctx.spec)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AddCycSpec)
            and self.ctx == other.ctx
            and self.xi == other.xi
            and self.alphas == other.alphas
            and self.alpha_inf == other.alpha_inf
        )


class AddCycSpecGeneral:
    """Additive cyclotomic mapping over cosets v_i + F_(2^k), k | n.

    Branch i applies Tr(a_i x^(2^t_i + 1)) on v_i + F_(2^k); every t_i must
    be a multiple of k so the branch phase is F_(2^k)-linear.
    """

    def __init__(
        self,
        ctx: FieldCtx,
        k: int,
        representatives: Sequence[int],
        branches: Sequence[tuple[int, int]],
    ):
        n = ctx.e
        if n % k != 0:
            raise ValueError(f"k must divide n, got k={k}, n={n}")
        d = 1 << (n - k)
        representatives = list(representatives)
        branches = [(a, t) for a, t in branches]
        if len(representatives) != d or len(branches) != d:
            raise ValueError(f"need 2^(n-k) = {d} cosets")
        for _, t in branches:
            if t <= 0 or t % k != 0:
                raise ValueError("every t_i must be a positive multiple of k")
        sub = ctx.subfield_elements(k)
        canon = {}
        for i, v in enumerate(representatives):
            c = min(v ^ s for s in sub)
            if c in canon:
                raise ValueError("representatives do not partition the field")
            canon[c] = i
        if len(canon) != d:
            raise ValueError("representatives do not partition the field")
        self.ctx = ctx
        self.k = k
        self.representatives = representatives
        self.branches = branches
        self._sub = sub
        self._canon = canon

    def coset_index(self, x: int) -> int:
        return self._canon[min(x ^ s for s in self._sub)]

    def materialize(self) -> BooleanFunction:
        ctx = self.ctx
        table = bytearray(ctx.order)
        for x in range(ctx.order):
            a, t = self.branches[self.coset_index(x)]
            if a:
                table[x] = ctx.abs_trace(ctx.mul(a, ctx.pow(x, (1 << t) + 1)))
        return BooleanFunction(ctx, table)


# ---------------------------------------------------------------------------
# Spec JSON round-trip
# ---------------------------------------------------------------------------

def spec_to_json(spec: Union[MultCycSpec, AddCycSpec]) -> str:
    return json.dumps(spec.to_json_dict())


def spec_from_json_dict(obj: dict) -> Union[MultCycSpec, AddCycSpec]:
    kind = obj.get("kind")
    m = obj["m"]
    if "field" in obj:
        ctx = parse_field_spec(obj["field"])
        if ctx.e != 2 * m:
            raise ValueError("field degree does not match m")
    else:
        ctx = make_field(2 * m)
    if kind == "mult":
        branches = [
            (ctx.parse_element(b["a"]), int(b["r"])) for b in obj["branches"]
        ]
        return MultCycSpec(
            ctx, branches, value_at_zero=int(obj.get("value_at_zero", 0))
        )
    if kind == "add":
        alphas = [ctx.parse_element(s) for s in obj["alphas"]]
        alpha_inf = ctx.parse_element(obj["alpha_inf"])
        xi = ctx.parse_element(obj["xi"]) if "xi" in obj else None
        return AddCycSpec(ctx, alphas, alpha_inf, xi=xi)
    raise ValueError(f"unknown spec kind: {kind!r}")


def spec_from_json(s: str) -> Union[MultCycSpec, AddCycSpec]:
    return spec_from_json_dict(json.loads(s))
