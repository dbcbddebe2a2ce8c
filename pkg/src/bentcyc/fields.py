"""Exact arithmetic in GF(2^e) for 1 <= e <= 20.

Field elements are plain ints: the bits of an element are the coefficients
of its polynomial representation modulo the field's irreducible modulus
(bit i = coefficient of x^i). A FieldCtx carries the modulus, the log and
antilog tables (for e <= 16) and all derived machinery: traces, subfield
tests and embeddings, roots of unity, Artin-Schreier solving.

The class of x is required to be primitive, so omega = 0b10 generates the
multiplicative group and discrete logs are table lookups. For e in 17..20
the tables would cost too much memory and multiplication falls back to
carry-less multiply plus modular reduction (no discrete logs there).

Text format for fields: ``gf2:e=<int>[,mod=0x<hex>]``. Elements print as
``w^<k>`` (log form) when tables exist, ``0x<hex>`` otherwise, ``0`` for zero.
"""

from __future__ import annotations

import re
from array import array
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

# Smallest (as a bitmask, equivalently lexicographically for fixed degree)
# primitive polynomial per extension degree. Degree 1 uses the marker "x":
# GF(2) has omega = 1 and no reduction ever happens.
PRIMITIVE_POLY = {
    1: 0b10,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1002D,
    17: 0x20009,
    18: 0x40027,
    19: 0x80027,
    20: 0x100009,
}

MAX_DEGREE = 20
LOG_TABLE_MAX_DEGREE = 16


class FieldError(ValueError):
    """Invalid field construction or illegal element operation."""


# ---------------------------------------------------------------------------
# GF(2)[x] helpers on int bitmasks
# ---------------------------------------------------------------------------

def _pmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _pmod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _ppowmod(a: int, e: int, m: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _pmod(_pmul(r, a), m)
        a = _pmod(_pmul(a, a), m)
        e >>= 1
    return r


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly: int) -> bool:
    """Irreducibility of a GF(2)[x] polynomial given as a bitmask."""
    e = poly.bit_length() - 1
    if e <= 0:
        return False
    if e == 1:
        return True
    if _ppowmod(0b10, 1 << e, poly) != 0b10:
        return False
    for p in _prime_factors(e):
        if _pgcd(_ppowmod(0b10, 1 << (e // p), poly) ^ 0b10, poly) != 1:
            return False
    return True


def is_primitive(poly: int) -> bool:
    """Primitivity: irreducible and the class of x generates the unit group."""
    e = poly.bit_length() - 1
    if not is_irreducible(poly):
        return False
    order = (1 << e) - 1
    for p in _prime_factors(order):
        if _ppowmod(0b10, order // p, poly) == 1:
            return False
    return True


# ---------------------------------------------------------------------------
# GF(2)-linear algebra on bitmask vectors (used for Artin-Schreier solving
# and canonical coset representatives)
# ---------------------------------------------------------------------------

def _echelonize(vectors: list[int]) -> list[int]:
    """Row echelon basis (distinct leading bits, leading bit cleared below)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v.bit_length() == b.bit_length():
                v ^= b
        if v:
            basis.append(v)
            basis.sort(key=int.bit_length, reverse=True)
    # reduced form: clear each pivot from the other rows
    for i, b in enumerate(basis):
        piv = 1 << (b.bit_length() - 1)
        for j in range(len(basis)):
            if j != i and basis[j] & piv:
                basis[j] ^= b
    return basis


def _reduce_by_basis(x: int, basis: list[int]) -> int:
    """Minimal bitmask in the coset x + span(basis); basis must be reduced."""
    for b in basis:
        if x & (1 << (b.bit_length() - 1)):
            x ^= b
    return x


@dataclass(frozen=True)
class FieldSpec:
    """Degree plus modulus; uniquely pins a concrete GF(2^e) representation."""

    extension_degree: int
    modulus: int

    def __str__(self) -> str:
        if self.modulus == PRIMITIVE_POLY.get(self.extension_degree):
            return f"gf2:e={self.extension_degree}"
        return f"gf2:e={self.extension_degree},mod=0x{self.modulus:x}"


class FieldCtx:
    """Concrete GF(2^e) with log/antilog tables and trace machinery.

    Immutable after construction (internal caches aside); safe to share.
    Use :func:`make_field` rather than the constructor so contexts are
    interned and validated once.
    """

    def __init__(self, spec: FieldSpec):
        e = spec.extension_degree
        self.spec = spec
        self.e = e
        self.modulus = spec.modulus
        self.order = 1 << e
        self.mult_order = self.order - 1
        self.generator = 1 if e == 1 else 2
        self.has_log_tables = e <= LOG_TABLE_MAX_DEGREE
        self._cache: dict = {}

        if self.has_log_tables:
            N = self.mult_order
            exp = [0] * (2 * N)
            log = [0] * self.order
            v = 1
            for i in range(N):
                exp[i] = v
                log[v] = i
                v = self._mul_raw(v, self.generator)
            if v != 1:
                raise FieldError("not primitive")
            for i in range(N, 2 * N):
                exp[i] = exp[i - N]
            self._exp = exp
            self._log = log
        else:
            self._exp = None
            self._log = None

        # Tr is GF(2)-linear: Tr(a) = parity of popcount(a & mask).
        mask = 0
        for j in range(e):
            t = 0
            a = 1 << j
            for _ in range(e):
                t ^= a
                a = self._mul_raw(a, a)
            if t not in (0, 1):
                raise FieldError("trace table construction failed")
            if t:
                mask |= 1 << j
        self._trace_mask = mask

    # -- core arithmetic ----------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Carry-less multiply with interleaved reduction (table-free path)."""
        if self.e == 1:
            return a & b
        r = 0
        top = 1 << self.e
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            if a & top:
                a ^= self.modulus
            b >>= 1
        return r

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_log_tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def sq(self, a: int) -> int:
        if a == 0:
            return 0
        if self.has_log_tables:
            return self._exp[(self._log[a] * 2) % self.mult_order]
        return self._mul_raw(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero inverse")
        if self.has_log_tables:
            return self._exp[self.mult_order - self._log[a]]
        return self.pow(a, self.mult_order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        """a^k with 0^0 = 1 and 0^k = 0 for k > 0 (so x^(q-2) maps 0 to 0)."""
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise FieldError("zero inverse")
            return 0
        if self.has_log_tables:
            return self._exp[(self._log[a] * k) % self.mult_order]
        k %= self.mult_order
        r = 1
        while k:
            if k & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            k >>= 1
        return r

    def frob(self, a: int, j: int = 1) -> int:
        """Frobenius power a^(2^j)."""
        if a == 0:
            return 0
        if self.has_log_tables:
            return self._exp[(self._log[a] << (j % self.e)) % self.mult_order]
        for _ in range(j % self.e):
            a = self._mul_raw(a, a)
        return a

    def sqrt(self, a: int) -> int:
        """Inverse of squaring: a^(2^(e-1))."""
        return self.frob(a, self.e - 1)

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("log of zero")
        if not self.has_log_tables:
            raise FieldError(f"no log tables for e={self.e}")
        return self._log[a]

    def exp(self, k: int) -> int:
        """omega^k (any integer k)."""
        if not self.has_log_tables:
            return self.pow(self.generator, k % self.mult_order)
        return self._exp[k % self.mult_order]

    def elements(self) -> range:
        return range(self.order)

    def nonzero_elements(self) -> range:
        return range(1, self.order)

    # -- traces ---------------------------------------------------------------

    def abs_trace(self, a: int) -> int:
        """Tr_1^e(a) = sum of a^(2^i), as a bit."""
        return (a & self._trace_mask).bit_count() & 1

    def rel_trace(self, k: int, a: int) -> int:
        """Tr_k^e(a) = sum of a^(2^(k*i)); lands in the 2^k-element subfield."""
        if self.e % k != 0:
            raise FieldError(f"relative trace needs k | e, got k={k}, e={self.e}")
        s = 0
        c = a
        for _ in range(self.e // k):
            s ^= c
            c = self.frob(c, k)
        return s

    def subfield_trace_bit(self, k: int, a: int) -> int:
        """Tr_1^k(a) for a in the 2^k subfield, computed inside this field.

        Uses Tr_1^k(a) = Tr_1^e(lam * a) for any lam with Tr_k^e(lam) = 1.
        """
        lam = self._cache.get(("tb", k))
        if lam is None:
            if self.e % k != 0:
                raise FieldError(f"k must divide e, got k={k}, e={self.e}")
            lam = next(
                c for c in range(1, self.order) if self.rel_trace(k, c) == 1
            )
            self._cache[("tb", k)] = lam
        return self.abs_trace(self.mul(lam, a))

    # -- subfields ------------------------------------------------------------

    def subfield_test(self, k: int, a: int) -> bool:
        """a lies in the 2^k-element subfield iff a^(2^k) = a."""
        if self.e % k != 0:
            raise FieldError(f"k must divide e, got k={k}, e={self.e}")
        return self.frob(a, k) == a

    def subfield_elements(self, k: int) -> list[int]:
        key = ("sub", k)
        if key not in self._cache:
            self._cache[key] = [
                a for a in range(self.order) if self.subfield_test(k, a)
            ]
        return self._cache[key]

    def subfield_generator(self, k: int) -> int:
        """omega^((2^e-1)/(2^k-1)), generator of the order 2^k - 1 subgroup."""
        if self.e % k != 0:
            raise FieldError(f"k must divide e, got k={k}, e={self.e}")
        return self.exp(self.mult_order // ((1 << k) - 1))

    def subfield_embed(self, sub: "FieldCtx", a: int) -> int:
        """Multiplicative correspondence from a small ctx into the subfield.

        omega_small^j maps to omega^(j*(2^e-1)/(2^k-1)). Image always passes
        subfield_test; this is not additive in general (use subfield_project
        / subfield_lift for the canonical field isomorphism).
        """
        if a == 0:
            return 0
        return self.exp(sub.log(a) * (self.mult_order // sub.mult_order))

    def _subfield_iso_tables(self, sub: "FieldCtx") -> tuple[dict, dict]:
        # canonical iso: g = subfield_generator(k) maps to a root, in `sub`,
        # of g's minimal polynomial; extended multiplicatively it is then a
        # field isomorphism. Any root works for our uses (Kloosterman values
        # are Frobenius invariant); we take the smallest.
        key = ("iso", sub.spec)
        if key not in self._cache:
            k = sub.e
            if self.e % k != 0:
                raise FieldError(f"no subfield of degree {k} in GF(2^{self.e})")
            g = self.subfield_generator(k)
            conj = []
            c = g
            while c not in conj:
                conj.append(c)
                c = self.sq(c)
            poly = [1]
            for r in conj:
                nxt = [0] * (len(poly) + 1)
                for i, co in enumerate(poly):
                    nxt[i + 1] ^= co
                    nxt[i] ^= self.mul(r, co)
                poly = nxt
            if any(co not in (0, 1) for co in poly) or len(poly) != k + 1:
                raise FieldError("minimal polynomial construction failed")
            root = None
            for cand in range(sub.order):
                acc = 0
                for co in reversed(poly):
                    acc = sub.mul(acc, cand) ^ co
                if acc == 0:
                    root = cand
                    break
            if root is None:
                raise FieldError("no root of subfield generator minpoly")
            down = {0: 0}
            up = {0: 0}
            v, sv = 1, 1
            for _ in range(sub.mult_order):
                down[v] = sv
                up[sv] = v
                v = self.mul(v, g)
                sv = sub.mul(sv, root)
            self._cache[key] = (down, up)
        return self._cache[key]

    def subfield_project(self, sub: "FieldCtx", a: int) -> int:
        """Canonical field isomorphism: subfield of self -> sub."""
        down, _ = self._subfield_iso_tables(sub)
        try:
            return down[a]
        except KeyError:
            raise FieldError("element not in the requested subfield") from None

    def subfield_lift(self, sub: "FieldCtx", a: int) -> int:
        """Inverse of subfield_project."""
        _, up = self._subfield_iso_tables(sub)
        return up[a]

    # -- structure for quadratic extensions ------------------------------------

    def unity_root(self, e: int) -> int:
        """Generator omega^((2^n-1)/e) of mu_e; requires e | 2^n - 1."""
        if e <= 0 or self.mult_order % e != 0:
            raise FieldError(f"{e} does not divide 2^{self.e} - 1")
        return self.exp(self.mult_order // e)

    def mu_elements(self, e: int) -> list[int]:
        g = self.unity_root(e)
        out = [1]
        v = g
        while v != 1:
            out.append(v)
            v = self.mul(v, g)
        if len(out) != e:
            raise FieldError("unity_root order mismatch")
        return out

    def compute_u(self) -> int:
        """omega^((q-1)(2^(n-1)-1)); a generator of mu_(q+1), n = 2m even."""
        if self.e % 2 != 0:
            raise FieldError("compute_u needs an even extension degree")
        q = 1 << (self.e // 2)
        return self.exp(((q - 1) * ((1 << (self.e - 1)) - 1)) % self.mult_order)

    # -- Artin-Schreier --------------------------------------------------------

    def _artin_schreier_system(self):
        key = "as"
        if key not in self._cache:
            m = self.e // 2
            q = 1 << m
            # images of the basis under L(x) = x^q + x, echelonized with
            # bookkeeping of which combination of basis bits produced each row
            rows = []  # (image, preimage)
            for j in range(self.e):
                x = 1 << j
                rows.append((self.frob(x, m) ^ x, x))
            pivots: dict[int, tuple[int, int]] = {}
            for img, pre in rows:
                while img:
                    p = img.bit_length() - 1
                    if p in pivots:
                        img ^= pivots[p][0]
                        pre ^= pivots[p][1]
                    else:
                        pivots[p] = (img, pre)
                        break
            kernel_basis = _echelonize(self.subfield_elements(m)[1:])
            self._cache[key] = (pivots, kernel_basis)
        return self._cache[key]

    def solve_artin_schreier(self, rhs: int) -> Optional[int]:
        """Canonical x with x^q + x = rhs over GF(2^(2m)), or None.

        Solvable iff Tr_m^(2m)(rhs) = 0; the representative returned is the
        smallest bitmask among the 2^m solutions.
        """
        if self.e % 2 != 0:
            raise FieldError("Artin-Schreier solving needs an even degree")
        m = self.e // 2
        if self.rel_trace(m, rhs) != 0:
            return None
        pivots, kernel_basis = self._artin_schreier_system()
        x = 0
        r = rhs
        while r:
            p = r.bit_length() - 1
            img, pre = pivots[p]
            r ^= img
            x ^= pre
        return _reduce_by_basis(x, kernel_basis)

    # -- quadratic roots on the unit circle -------------------------------------

    def quadratic_mu_roots(self, a: int, b: int) -> int:
        """Count roots of x^2 + ax + b inside mu_(q+1), by exhaustion.

        Preconditions follow the root-pairing lemma: a, b nonzero and
        Tr_1^n(b/a^2) = 0 (otherwise the quadratic has no roots at all).
        """
        if self.e % 2 != 0:
            raise FieldError("needs an even extension degree")
        if a == 0 or b == 0:
            raise FieldError("lemma precondition violated: a, b must be nonzero")
        if self.abs_trace(self.mul(b, self.inv(self.sq(a)))) != 0:
            raise FieldError("lemma precondition violated: Tr(b/a^2) != 0")
        q = 1 << (self.e // 2)
        return sum(
            1
            for z in self.mu_elements(q + 1)
            if self.sq(z) ^ self.mul(a, z) ^ b == 0
        )

    def quadratic_mu_root_predicate(self, a: int, b: int) -> int:
        """Closed-form root count in mu_(q+1) for x^2 + ax + b (0, 1 or 2).

        Count 2 iff b = a^(1-q) and Tr_1^m(b/a^2) = 1. Count 1 iff
        b != a^(1-q) and (1+b^(q+1))(1+a^(q+1)+b^(q+1)) + a^2 b^q + a^2q b = 0,
        the vanishing of Res(x^2+ax+b, conjugate-reciprocal). Same
        preconditions as quadratic_mu_roots.
        """
        if self.e % 2 != 0:
            raise FieldError("needs an even extension degree")
        if a == 0 or b == 0:
            raise FieldError("lemma precondition violated: a, b must be nonzero")
        boa2 = self.mul(b, self.inv(self.sq(a)))
        if self.abs_trace(boa2) != 0:
            raise FieldError("lemma precondition violated: Tr(b/a^2) != 0")
        m = self.e // 2
        q = 1 << m
        if b == self.pow(a, 1 - q):
            return 2 if self.subfield_trace_bit(m, boa2) == 1 else 0
        bq1 = self.pow(b, q + 1)
        aq1 = self.pow(a, q + 1)
        res = (
            self.mul(1 ^ bq1, 1 ^ aq1 ^ bq1)
            ^ self.mul(self.sq(a), self.pow(b, q))
            ^ self.mul(self.frob(self.pow(a, q)), b)
        )
        return 1 if res == 0 else 0

    # -- kernel-facing cached arrays --------------------------------------------

    def exp_array(self) -> array:
        """Antilog table as int32, doubled for wraparound-free indexing."""
        if "exp_arr" not in self._cache:
            if not self.has_log_tables:
                raise FieldError(f"no log tables for e={self.e}")
            self._cache["exp_arr"] = array("i", self._exp)
        return self._cache["exp_arr"]

    def log_array(self) -> array:
        if "log_arr" not in self._cache:
            if not self.has_log_tables:
                raise FieldError(f"no log tables for e={self.e}")
            self._cache["log_arr"] = array("i", self._log)
        return self._cache["log_arr"]

    def walsh_perm(self) -> array:
        """Gram map b -> (Tr(b*w^i))_i as an index permutation (int32).

        Sends the element bitmask of b to the Hadamard-domain index such
        that Tr(bx) = <perm(b), coords(x)> for every x; a bijection since
        the trace form is nondegenerate.
        """
        if "wperm" not in self._cache:
            n = self.e
            V = [0] * n
            for j in range(n):
                col = 0
                for i in range(n):
                    if self.abs_trace(self.mul(1 << j, self.exp(i))):
                        col |= 1 << i
                V[j] = col
            M = array("i", bytes(4 * self.order))
            for b in range(1, self.order):
                lb = b & -b
                M[b] = M[b ^ lb] ^ V[lb.bit_length() - 1]
            if len(set(M)) != self.order:
                raise FieldError("degenerate trace form")
            self._cache["wperm"] = M
        return self._cache["wperm"]

    def dual_basis(self) -> list[int]:
        """Trace-dual basis B* of (w^0 .. w^(n-1)): Tr(w^i * B*_j) = delta_ij."""
        if "dualb" not in self._cache:
            n = self.e
            # invert the Gram matrix G_ij = Tr(w^(i+j)) over GF(2)
            rows = []
            for i in range(n):
                r = 0
                for j in range(n):
                    if self.abs_trace(self.exp(i + j)):
                        r |= 1 << j
                rows.append(r)
            aug = [(rows[i], 1 << i) for i in range(n)]
            piv: dict[int, tuple[int, int]] = {}
            for rv, ident in aug:
                while rv:
                    p = rv.bit_length() - 1
                    if p in piv:
                        rv ^= piv[p][0]
                        ident ^= piv[p][1]
                    else:
                        piv[p] = (rv, ident)
                        break
                else:
                    raise FieldError("degenerate trace form")
            inv_rows = [0] * n
            for p in sorted(piv, reverse=True):
                rv, ident = piv[p]
                for pp in range(p - 1, -1, -1):
                    if rv & (1 << pp) and pp in piv:
                        rv ^= piv[pp][0]
                        ident ^= piv[pp][1]
                if rv != 1 << p:
                    raise FieldError("degenerate trace form")
                inv_rows[p] = ident
            # column j of G^-1 gives the coordinates of B*_j
            dual = []
            for j in range(n):
                v = 0
                for i in range(n):
                    if inv_rows[i] & (1 << j):
                        v ^= self.exp(i)
                dual.append(v)
            self._cache["dualb"] = dual
        return self._cache["dualb"]

    # -- formatting --------------------------------------------------------------

    def format_element(self, a: int) -> str:
        if a == 0:
            return "0"
        if self.has_log_tables:
            return f"w^{self.log(a)}"
        return f"0x{a:x}"

    def parse_element(self, s: str) -> int:
        s = s.strip()
        if s == "0":
            return 0
        if s == "1":
            return 1
        if s.startswith("w^"):
            return self.exp(int(s[2:]))
        if s.startswith(("0x", "0X")):
            v = int(s, 16)
        else:
            v = int(s)
        if not 0 <= v < self.order:
            raise FieldError(f"element out of range: {s}")
        return v

    def __repr__(self) -> str:
        return f"FieldCtx({self.spec})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)


@lru_cache(maxsize=None)
def make_field(e: int, modulus: Optional[int] = None) -> FieldCtx:
    """Build (or fetch the interned) GF(2^e) context.

    Default modulus: the smallest primitive polynomial of degree e. A custom
    modulus must be a degree-e primitive polynomial, so that the class of x
    is a generator.
    """
    if not 1 <= e <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in 1..{MAX_DEGREE}, got {e}")
    if e == 1:
        if modulus is not None and modulus != PRIMITIVE_POLY[1]:
            raise FieldError(
                "not primitive (degree-1 convention: GF(2) uses modulus x, 0b10)"
            )
        return FieldCtx(FieldSpec(1, PRIMITIVE_POLY[1]))
    if modulus is None:
        modulus = PRIMITIVE_POLY[e]
    if modulus.bit_length() - 1 != e:
        raise FieldError(f"modulus degree {modulus.bit_length() - 1} != e={e}")
    if not is_irreducible(modulus):
        raise FieldError("not irreducible")
    if not is_primitive(modulus):
        raise FieldError("not primitive")
    return FieldCtx(FieldSpec(e, modulus))


_FIELD_RE = re.compile(r"^gf2:e=(\d+)(?:,mod=(0[xX][0-9a-fA-F]+))?$")


def parse_field_spec(s: str) -> FieldCtx:
    """Parse the ``gf2:e=<int>[,mod=0x<hex>]`` field spec format."""
    m = _FIELD_RE.match(s.strip())
    if not m:
        raise FieldError(f"bad field spec: {s!r} (want gf2:e=<int>[,mod=0x<hex>])")
    e = int(m.group(1))
    mod = int(m.group(2), 16) if m.group(2) else None
    return make_field(e, mod)


def quadratic_ctx(m: int, modulus: Optional[int] = None) -> FieldCtx:
    """GF(2^(2m)), the ambient field of every construction here."""
    return make_field(2 * m, modulus)
