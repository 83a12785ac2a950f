"""Diophantine polynomials: canonical forms, the pinned enumerations Z and N,
exact evaluation, and an independent integer-root oracle.

A polynomial is an arity k plus a monomial map from exponent vectors to
nonzero integer coefficients, kept in canonical form (vectors strictly
increasing lexicographically).  Z enumerates all polynomials bijectively in
length-then-lex order of their binary payloads; N is the zigzag enumeration
of the integers.  Multivariate root candidates come from composing N with an
iterated Cantor unpairing, one candidate tuple per natural number.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .formulas import BitReader, cantor_pair, cantor_unpair, nat_sd, read_nat_sd


@dataclass(frozen=True)
class Pol:
    nvars: int
    monos: tuple  # ((exps tuple, coef int), ...), canonical

    def __post_init__(self):
        if self.nvars < 0:
            raise ValueError("nvars must be >= 0")
        prev = None
        for exps, coef in self.monos:
            if len(exps) != self.nvars:
                raise ValueError("exponent vector arity mismatch")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            if coef == 0:
                raise ValueError("zero coefficient")
            if prev is not None and not prev < exps:
                raise ValueError("monomials must be strictly increasing")
            prev = exps

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.monos), default=0)

    def is_zero(self) -> bool:
        return not self.monos


def pol(nvars: int, terms: dict) -> Pol:
    """Build a canonical Pol from an {exps: coef} mapping (zeros dropped)."""
    monos = tuple(sorted((tuple(e), c) for e, c in terms.items() if c != 0))
    return Pol(nvars, monos)


def eval_pol(p: Pol, point: tuple) -> int:
    if len(point) != p.nvars:
        raise ValueError(f"arity mismatch: poly wants {p.nvars}, got {len(point)}")
    total = 0
    for exps, coef in p.monos:
        v = coef
        for x, e in zip(point, exps):
            v *= x ** e
        total += v
    return total


# ---------------------------------------------------------------------------
# Enumerations
# ---------------------------------------------------------------------------

def n_enum(n: int) -> int:
    """Zigzag bijection: 0, 1, -1, 2, -2, ..."""
    if n < 0:
        raise ValueError("naturals only")
    return (n + 1) // 2 if n % 2 else -(n // 2)


def n_inv(z: int) -> int:
    return 2 * z - 1 if z > 0 else -2 * z


def unpair_tuple(i: int, k: int) -> tuple:
    """i-th coordinate tuple of arity k (right-nested Cantor unpairing)."""
    if k == 0:
        return ()
    out = []
    rest = i
    for _ in range(k - 1):
        a, rest = cantor_unpair(rest)
        out.append(a)
    out.append(rest)
    return tuple(out)


def pair_tuple(t: tuple) -> int:
    if not t:
        return 0
    acc = t[-1]
    for a in reversed(t[:-1]):
        acc = cantor_pair(a, acc)
    return acc


def root_candidate(i: int, k: int) -> tuple:
    """i-th integer point probed for a k-variable polynomial."""
    return tuple(n_enum(c) for c in unpair_tuple(i, k))


# Binary payload:  unary(k) monomial* "0"
# where unary(e) = "1"*e + "0",
#       monomial = "1" unary(e_1) ... unary(e_k) signbit nat_sd(|coef|-1).
# Monomial exponent vectors must be strictly increasing (lex).

def _unary(e: int) -> str:
    return "1" * e + "0"


def pol_to_bits(p: Pol) -> str:
    parts = [_unary(p.nvars)]
    for exps, coef in p.monos:
        parts.append("1")
        for e in exps:
            parts.append(_unary(e))
        parts.append("0" if coef > 0 else "1")
        parts.append(nat_sd(abs(coef) - 1))
    parts.append("0")
    return "".join(parts)


def _read_unary(r: BitReader):
    n = 0
    while True:
        b = r.take(1)
        if b is None:
            return None
        if b == "0":
            return n
        n += 1
        if n > 4096:
            return None


def bits_to_pol(bits: str):
    """Decode a polynomial payload; None when malformed or non-canonical."""
    if not set(bits) <= {"0", "1"}:
        return None
    r = BitReader(bits)
    k = _read_unary(r)
    if k is None:
        return None
    monos = []
    prev = None
    while True:
        b = r.take(1)
        if b is None:
            return None
        if b == "0":
            break
        exps = []
        for _ in range(k):
            e = _read_unary(r)
            if e is None:
                return None
            exps.append(e)
        exps = tuple(exps)
        sign = r.take(1)
        if sign is None:
            return None
        mag = read_nat_sd(r)
        if mag is None:
            return None
        coef = (mag + 1) if sign == "0" else -(mag + 1)
        if prev is not None and not prev < exps:
            return None
        prev = exps
        monos.append((exps, coef))
    if not r.done():
        return None
    return Pol(k, tuple(monos))


def _payload_successors(state):
    """Decoder-state transitions of the polynomial payload grammar.

    Yields (bit, next_state_or_"ACCEPT") pairs with the '0' branch first, so
    a breadth-first walk visits payloads in (length, lex) order.  States:

      ("k", k)                    unary arity
      ("m", k, prev)              mono marker / end of list
      ("e", k, prev, exps, cur)   unary exponents
      ("s", k, exps)              sign bit
      ("c", k, exps, mode)        coefficient nat_sd units; mode in
                                  {start, low_first, after_zero, az1,
                                   norm, low, end1}
    """
    phase = state[0]
    if phase == "k":
        _, k = state
        yield "0", ("m", k, None)
        yield "1", ("k", k + 1)
    elif phase == "m":
        _, k, prev = state
        yield "0", "ACCEPT"
        if k == 0:
            if prev is None:
                yield "1", ("s", 0, ())
        else:
            yield "1", ("e", k, prev, (), 0)
    elif phase == "e":
        _, k, prev, exps, cur = state
        closed = exps + (cur,)
        if len(closed) == k:
            if prev is None or prev < closed:
                yield "0", ("s", k, closed)
        else:
            yield "0", ("e", k, prev, closed, 0)
        yield "1", ("e", k, prev, exps, cur + 1)
    elif phase == "s":
        _, k, exps = state
        yield "0", ("c", k, exps, "start")
        yield "1", ("c", k, exps, "start")
    elif phase == "c":
        _, k, exps, mode = state
        if mode == "start":
            yield "0", ("c", k, exps, "low_first")
        elif mode == "low_first":
            yield "0", ("c", k, exps, "after_zero")
            yield "1", ("c", k, exps, "norm")
        elif mode == "after_zero":
            yield "1", ("c", k, exps, "az1")
        elif mode == "az1":
            yield "1", ("m", k, exps)
        elif mode == "norm":
            yield "0", ("c", k, exps, "low")
            yield "1", ("c", k, exps, "end1")
        elif mode == "low":
            yield "0", ("c", k, exps, "norm")
            yield "1", ("c", k, exps, "norm")
        elif mode == "end1":
            yield "1", ("m", k, exps)


def _gen_valid_payloads():
    """All valid polynomial payloads, in (length, lex) order."""
    level = [("", ("k", 0))]
    while True:
        nxt = []
        for prefix, state in level:
            for bit, succ in _payload_successors(state):
                if succ == "ACCEPT":
                    yield prefix + bit
                else:
                    nxt.append((prefix + bit, succ))
        level = nxt


_Z_CACHE: list = []
_Z_GEN = None


def z_enum_pol(n: int) -> Pol:
    """n-th polynomial in payload length-lex order (bijective)."""
    global _Z_GEN
    if _Z_GEN is None:
        _Z_GEN = _gen_valid_payloads()
    while len(_Z_CACHE) <= n:
        _Z_CACHE.append(next(_Z_GEN))
    p = bits_to_pol(_Z_CACHE[n])
    assert p is not None
    return p


def z_rank_pol(p: Pol) -> int:
    """Inverse of z_enum_pol by search."""
    target = pol_to_bits(p)
    i = 0
    while True:
        q = z_enum_pol(i)
        if pol_to_bits(q) == target:
            return i
        i += 1


def dio_sign(p: Pol, n: int) -> bool:
    """The stage-n trial sign: True (+) iff none of the first n+1 candidate
    tuples is an integer root."""
    for i in range(n + 1):
        if eval_pol(p, root_candidate(i, p.nvars)) == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Independent root oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HasRoot:
    point: tuple


@dataclass(frozen=True)
class NoRootWithin:
    bound: int


@dataclass(frozen=True)
class CertifiedNoRoot:
    reason: str


def _divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def dio_root_oracle(p: Pol, bound: int):
    """Exhaustive box search plus sound certificates.

    Certificates: nonzero constants; positive (or negative) definite forms
    made of even-exponent monomials with uniformly signed coefficients and a
    nonzero constant term; univariate integer-root divisor test.
    """
    if p.is_zero():
        return HasRoot(tuple(0 for _ in range(p.nvars)))

    # box search first: a found root is a root
    rng = range(-bound, bound + 1)
    for point in product(rng, repeat=p.nvars):
        if eval_pol(p, point) == 0:
            return HasRoot(point)

    if p.nvars == 0:
        return CertifiedNoRoot("nonzero constant")

    const = 0
    definite = True
    sign = None
    for exps, coef in p.monos:
        if all(e == 0 for e in exps):
            const = coef
            s = 1 if coef > 0 else -1
        elif all(e % 2 == 0 for e in exps):
            s = 1 if coef > 0 else -1
        else:
            definite = False
            break
        if sign is None:
            sign = s
        elif s != sign:
            definite = False
            break
    if definite and const != 0 and sign is not None:
        return CertifiedNoRoot("definite: even exponents, uniform sign, nonzero constant")

    if p.nvars == 1:
        # integer roots divide the trailing coefficient
        trailing = None
        min_exp = None
        for exps, coef in p.monos:
            if min_exp is None or exps[0] < min_exp:
                min_exp = exps[0]
                trailing = coef
        if min_exp is not None and min_exp > 0:
            # x | p, so 0 is a root; but the box search covers 0 when bound>=0
            return HasRoot((0,))
        candidates = set()
        for d in _divisors(trailing):
            candidates.add(d)
            candidates.add(-d)
        for c in sorted(candidates):
            if eval_pol(p, (c,)) == 0:
                return HasRoot((c,))
        return CertifiedNoRoot("rational root bound: no divisor of the constant term works")

    return NoRootWithin(bound)
