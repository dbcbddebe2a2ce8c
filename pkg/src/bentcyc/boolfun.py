"""Boolean functions on GF(2^n) as truth tables: the ground-truth layer.

Everything downstream is checked against this module: exact integer Walsh
spectra (fast coordinate transform plus an O(4^n) naive oracle), bentness
and duals, ANF/algebraic degree via the Moebius transform, Kloosterman and
unit-circle character sums, and EA-invariant records.

The fast transform works because Tr(bx) is the GF(2) dot product of the
coordinates of x in the polynomial basis (which ARE the bits of x) with the
Gram image of b; a plain Hadamard butterfly followed by that index map gives
the spectrum indexed by the element bitmask of b.
"""

from __future__ import annotations

import hashlib
import json
from array import array
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from . import _kernels as kern
from .fields import FieldCtx, FieldError


class BooleanFunction:
    """Truth table of an F2-valued function on GF(2^n), indexed by bitmask."""

    __slots__ = ("ctx", "table")

    def __init__(self, ctx: FieldCtx, table):
        tb = bytearray(table)
        if len(tb) != ctx.order:
            raise ValueError(f"table length {len(tb)} != 2^{ctx.e}")
        if any(v > 1 for v in tb):
            raise ValueError("table entries must be bits")
        self.ctx = ctx
        self.table = tb

    @classmethod
    def from_closure(cls, ctx: FieldCtx, g: Callable[[int], int]) -> "BooleanFunction":
        return cls(ctx, bytes(g(x) & 1 for x in range(ctx.order)))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "BooleanFunction":
        return cls(ctx, bytes(ctx.order))

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BooleanFunction)
            and self.ctx == other.ctx
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.ctx, bytes(self.table)))

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        if self.ctx != other.ctx:
            raise ValueError("mixed field contexts")
        return BooleanFunction(
            self.ctx, bytes(a ^ b for a, b in zip(self.table, other.table))
        )

    def weight(self) -> int:
        return sum(self.table)

    # -- dumps ---------------------------------------------------------------

    def to_hex(self) -> str:
        """Hex dump; most significant bit = value at element bitmask 2^n - 1."""
        v = 0
        for x, bit in enumerate(self.table):
            if bit:
                v |= 1 << x
        return format(v, f"0{self.ctx.order // 4 if self.ctx.order >= 4 else 1}x")

    @classmethod
    def from_hex(cls, ctx: FieldCtx, s: str) -> "BooleanFunction":
        v = int(s, 16)
        return cls(ctx, bytes((v >> x) & 1 for x in range(ctx.order)))

    # -- spectra ---------------------------------------------------------------

    def walsh(self) -> "WalshSpectrum":
        """Exact spectrum via the fast coordinate transform, O(n 2^n)."""
        size = self.ctx.order
        out = array("q", bytes(8 * size))
        work = array("q", bytes(8 * size))
        kern.walsh_from_bits(self.table, self.ctx.walsh_perm(), out, work)
        return WalshSpectrum(self.ctx, out)

    def walsh_naive(self) -> "WalshSpectrum":
        """O(4^n) spectrum straight from the definition; the transform oracle."""
        size = self.ctx.order
        out = array("q", bytes(8 * size))
        kern.naive_walsh(
            self.table,
            self.ctx.log_array(),
            self.ctx.exp_array(),
            self.ctx._trace_mask,
            out,
        )
        return WalshSpectrum(self.ctx, out)

    def is_bent(self) -> bool:
        if self.ctx.e % 2 != 0:
            return False
        work = array("q", bytes(8 * self.ctx.order))
        return kern.bent_from_bits(self.table, self.ctx.e // 2, work)

    def dual(self) -> "BooleanFunction":
        return self.walsh().dual()

    # -- algebraic normal form ---------------------------------------------------

    def anf(self) -> "Anf":
        coeffs = bytearray(self.table)
        kern.mobius_u8(coeffs)
        return Anf(self.ctx, coeffs)

    def algebraic_degree(self) -> int:
        return self.anf().degree()

    # -- autocorrelation and EA invariants ----------------------------------------

    def autocorrelation(self) -> list[int]:
        """ac[a] = sum_x (-1)^(f(x)+f(x+a)); field addition is XOR of masks."""
        size = self.ctx.order
        s = array("q", bytes(8 * size))
        for i, bit in enumerate(self.table):
            s[i] = 1 - 2 * bit
        kern.fwht_i64(s)
        for i in range(size):
            s[i] *= s[i]
        kern.fwht_i64(s)
        return [v // size for v in s]

    def ea_invariants(self) -> "EAInvariants":
        spec = self.walsh()
        whist = Counter(abs(v) for v in spec.values)
        ac = self.autocorrelation()
        ahist = Counter(abs(v) for v in ac[1:])
        return EAInvariants(
            degree=self.algebraic_degree(),
            walsh_value_histogram=tuple(sorted(whist.items())),
            autocorrelation_histogram=tuple(sorted(ahist.items())),
        )


class WalshSpectrum:
    """Full vector of Walsh coefficients, indexed by the bitmask of b."""

    __slots__ = ("ctx", "values")

    def __init__(self, ctx: FieldCtx, values):
        self.ctx = ctx
        self.values = values if isinstance(values, array) else array("q", values)
        if len(self.values) != ctx.order:
            raise ValueError("spectrum length mismatch")

    def __getitem__(self, b: int) -> int:
        return self.values[b]

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, WalshSpectrum) and self.values == other.values

    def parseval_sum(self) -> int:
        return sum(v * v for v in self.values)

    def is_bent(self) -> bool:
        if self.ctx.e % 2 != 0:
            return False
        t = 1 << (self.ctx.e // 2)
        return all(v == t or v == -t for v in self.values)

    def dual(self) -> BooleanFunction:
        """Sign pattern as a Boolean function: +2^(n/2) -> 0, -2^(n/2) -> 1."""
        if not self.is_bent():
            raise ValueError("not bent")
        t = 1 << (self.ctx.e // 2)
        return BooleanFunction(self.ctx, bytes(1 if v == -t else 0 for v in self.values))

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    def digest(self) -> str:
        return hashlib.sha256(self.values.tobytes()).hexdigest()[:16]


class Anf:
    """ANF coefficients over the 2^n monomials in the bitmask coordinates.

    coeffs[mask] is the coefficient of prod_{i in mask} x_i; the Moebius
    transform is an involution, so to_truth_table is the same butterfly.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        self.coeffs = bytearray(coeffs)

    def degree(self) -> int:
        return max(
            (mask.bit_count() for mask, c in enumerate(self.coeffs) if c),
            default=0,
        )

    def monomials(self) -> list[int]:
        return [mask for mask, c in enumerate(self.coeffs) if c]

    def to_truth_table(self) -> BooleanFunction:
        bits = bytearray(self.coeffs)
        kern.mobius_u8(bits)
        return BooleanFunction(self.ctx, bits)


@dataclass(frozen=True)
class EAInvariants:
    """EA-invariant record; unequal records certify inequivalence."""

    degree: int
    walsh_value_histogram: tuple
    autocorrelation_histogram: tuple

    def compare(self, other: "EAInvariants") -> str:
        return "inconclusive" if self == other else "distinguished"

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "walsh_value_histogram": [list(p) for p in self.walsh_value_histogram],
            "autocorrelation_histogram": [
                list(p) for p in self.autocorrelation_histogram
            ],
        }


# ---------------------------------------------------------------------------
# Character sums
# ---------------------------------------------------------------------------

def kloosterman(ctx_m: FieldCtx, a: int) -> int:
    """K_m(a) = sum over x in GF(2^m) of (-1)^Tr(ax + x^(q-2)).

    The inverse term follows the 0 -> 0 convention, so the x = 0 summand is
    always +1 (for q = 2 the literal exponent q-2 = 0 would say otherwise).
    """
    q = ctx_m.order
    tr = ctx_m.abs_trace
    mul = ctx_m.mul
    inv_exp = q - 2
    s = 1
    for x in range(1, q):
        s += 1 - 2 * tr(mul(a, x) ^ ctx_m.pow(x, inv_exp))
    return s


def kloosterman_table(ctx_m: FieldCtx) -> list[int]:
    """All K_m values at once: the Walsh spectrum of x -> Tr(x^(q-2))."""
    q = ctx_m.order
    inv_exp = q - 2
    f = BooleanFunction.from_closure(
        ctx_m, lambda x: ctx_m.abs_trace(ctx_m.pow(x, inv_exp)) if x else 0
    )
    return list(f.walsh().values)


def mu_character_sum(ctx: FieldCtx, a: int) -> int:
    """sum over x in mu_(q+1) of (-1)^Tr(ax) on GF(2^(2m)).

    a = 0 is degenerate (returns q+1, every term +1).
    """
    if ctx.e % 2 != 0:
        raise FieldError("needs an even extension degree")
    q = 1 << (ctx.e // 2)
    if a == 0:
        return q + 1
    tr = ctx.abs_trace
    mul = ctx.mul
    return sum(1 - 2 * tr(mul(a, z)) for z in ctx.mu_elements(q + 1))
