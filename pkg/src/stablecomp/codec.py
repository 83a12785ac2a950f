"""Canonical, mutually disjoint, decidable encodings into {0,1,#}-strings.

Every code is  "#" + tagbits + "#" + payload  where tagbits spell the full
(possibly composite) tag tree in a prefix-free binary grammar, so codes of
distinct tags can never collide.  Pair and list payloads carry their members
in a self-delimiting escape coding readable by a single left-to-right scan.

Tag grammar:   NAT 000 | SIGN 001 | MACH 010 | FORM 011 | POL 100 | F0 101
               | PAIR 110 t t | LIST 111 t
Escape coding: '0' -> 00, '1' -> 01, '#' -> 10, end of member -> 11.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas as F
from . import dio as D
from .machine import BLANK, MachineSpec
from .formulas import BitReader, nat_sd, read_nat_sd

CODE_ALPHABET = frozenset("01#")


class NotMember:
    """Decode answer for codes outside the requested set's image."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotMember"

    def __bool__(self):
        return False


class Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


NOT_MEMBER = NotMember()
UNDEFINED = Undefined()


# ---------------------------------------------------------------------------
# Tags
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tag:
    pass


@dataclass(frozen=True)
class Nat(Tag):
    pass


@dataclass(frozen=True)
class Sign(Tag):
    pass


@dataclass(frozen=True)
class Mach(Tag):
    pass


@dataclass(frozen=True)
class Form(Tag):
    pass


@dataclass(frozen=True)
class PolTag(Tag):
    pass


@dataclass(frozen=True)
class F0(Tag):
    pass


@dataclass(frozen=True)
class Pair(Tag):
    first: Tag
    second: Tag


@dataclass(frozen=True)
class ListOf(Tag):
    member: Tag


NAT = Nat()
SIGN = Sign()
MACH = Mach()
FORM = Form()
POL = PolTag()
F0_TAG = F0()

_ATOM_BITS = {Nat: "000", Sign: "001", Mach: "010", Form: "011",
              PolTag: "100", F0: "101"}


def tag_bits(tag: Tag) -> str:
    t = type(tag)
    if t in _ATOM_BITS:
        return _ATOM_BITS[t]
    if t is Pair:
        return "110" + tag_bits(tag.first) + tag_bits(tag.second)
    if t is ListOf:
        return "111" + tag_bits(tag.member)
    raise TypeError(f"not a tag: {tag!r}")


def _read_tag(r: BitReader):
    b = r.take(3)
    if b is None:
        return None
    if b == "000":
        return NAT
    if b == "001":
        return SIGN
    if b == "010":
        return MACH
    if b == "011":
        return FORM
    if b == "100":
        return POL
    if b == "101":
        return F0_TAG
    if b == "110":
        t1 = _read_tag(r)
        if t1 is None:
            return None
        t2 = _read_tag(r)
        if t2 is None:
            return None
        return Pair(t1, t2)
    t1 = _read_tag(r)
    if t1 is None:
        return None
    return ListOf(t1)


def parse_tag_bits(bits: str):
    r = BitReader(bits)
    t = _read_tag(r)
    if t is None or not r.done():
        return None
    return t


def header(tag: Tag) -> str:
    return "#" + tag_bits(tag) + "#"


def tag_of(code: str):
    """Parse the tag header of a code; NotMember when malformed."""
    if not code or code[0] != "#":
        return NOT_MEMBER
    end = code.find("#", 1)
    if end < 0:
        return NOT_MEMBER
    t = parse_tag_bits(code[1:end])
    return NOT_MEMBER if t is None else t


def payload_of(code: str) -> str:
    end = code.find("#", 1)
    return code[end + 1:]


# ---------------------------------------------------------------------------
# Member escape coding
# ---------------------------------------------------------------------------

_ESC = {"0": "00", "1": "01", "#": "10"}
_UNESC = {v: k for k, v in _ESC.items()}


def esc(s: str) -> str:
    return "".join(_ESC[ch] for ch in s) + "11"


def read_esc(s: str, i: int):
    """Read one escaped member starting at s[i]; (member, next_i) or None."""
    out = []
    n = len(s)
    while True:
        if i + 2 > n:
            return None
        unit = s[i:i + 2]
        i += 2
        if unit == "11":
            return "".join(out), i
        ch = _UNESC.get(unit)
        if ch is None:
            return None
        out.append(ch)


# ---------------------------------------------------------------------------
# Machine payload
#
#   nat_sd(nstates) nat_sd(start) nat_sd(nfinals) nat_sd(final)* nat_sd(reject)
#   nat_sd(nrules) record*
#   record = nat_sd(q) si sc so wc wo mi mc mo nat_sd(ns)   (2 bits per sym/move)
#
# Machines in the MACH set use exactly the working alphabet {b,0,1,#} and the
# canonical state names q0..q{n-1}; records sorted by key.  Encoding any spec
# canonicalizes names; decode(encode(M)) == M iff M was already canonical.
# ---------------------------------------------------------------------------

_SYM_BITS = {BLANK: "00", "0": "01", "1": "10", "#": "11"}
_BITS_SYM = {v: k for k, v in _SYM_BITS.items()}
_MOVE_BITS = {"L": "00", "R": "01", "S": "10"}
_BITS_MOVE = {v: k for k, v in _MOVE_BITS.items()}

WORK_ALPHABET = frozenset({BLANK, "0", "1", "#"})


def canonical_state_order(spec: MachineSpec) -> list:
    """start first, then the rest sorted by name (numeric q-names in numeric
    order)."""
    from .machine import _state_sort_key
    rest = sorted((q for q in spec.states if q != spec.start), key=_state_sort_key)
    return [spec.start] + rest


def canonicalize_machine(spec: MachineSpec) -> MachineSpec:
    order = canonical_state_order(spec)
    rename = {q: f"q{i}" for i, q in enumerate(order)}
    return MachineSpec(
        alphabet=spec.alphabet,
        states=frozenset(rename.values()),
        start=rename[spec.start],
        finals=frozenset(rename[q] for q in spec.finals),
        reject=rename[spec.reject],
        rules={
            (rename[q], si, sc, so): (wc, wo, mi, mc, mo, rename[ns])
            for (q, si, sc, so), (wc, wo, mi, mc, mo, ns) in spec.rules.items()
        },
    )


def machine_to_bits(spec: MachineSpec) -> str:
    if spec.alphabet != WORK_ALPHABET:
        raise ValueError("MACH encoding covers machines over the working alphabet {b,0,1,#}")
    order = canonical_state_order(spec)
    idx = {q: i for i, q in enumerate(order)}
    parts = [nat_sd(len(order)), nat_sd(idx[spec.start])]
    finals = sorted(idx[q] for q in spec.finals)
    parts.append(nat_sd(len(finals)))
    parts.extend(nat_sd(i) for i in finals)
    parts.append(nat_sd(idx[spec.reject]))
    recs = []
    for (q, si, sc, so), (wc, wo, mi, mc, mo, ns) in spec.rules.items():
        recs.append((idx[q], si, sc, so, wc, wo, mi, mc, mo, idx[ns]))
    recs.sort(key=lambda r: (r[0], _SYM_BITS[r[1]], _SYM_BITS[r[2]], _SYM_BITS[r[3]]))
    parts.append(nat_sd(len(recs)))
    for q, si, sc, so, wc, wo, mi, mc, mo, ns in recs:
        parts.append(nat_sd(q))
        parts.append(_SYM_BITS[si] + _SYM_BITS[sc] + _SYM_BITS[so])
        parts.append(_SYM_BITS[wc] + _SYM_BITS[wo])
        parts.append(_MOVE_BITS[mi] + _MOVE_BITS[mc] + _MOVE_BITS[mo])
        parts.append(nat_sd(ns))
    return "".join(parts)


def bits_to_machine(bits: str):
    if not set(bits) <= {"0", "1"}:
        return None
    r = BitReader(bits)
    nstates = read_nat_sd(r)
    if nstates is None or nstates < 1:
        return None
    start = read_nat_sd(r)
    if start is None or start >= nstates:
        return None
    nfinals = read_nat_sd(r)
    if nfinals is None or nfinals < 1 or nfinals > nstates:
        return None
    finals = []
    for _ in range(nfinals):
        f = read_nat_sd(r)
        if f is None or f >= nstates:
            return None
        if finals and f <= finals[-1]:
            return None
        finals.append(f)
    reject = read_nat_sd(r)
    if reject is None or reject not in finals:
        return None
    nrules = read_nat_sd(r)
    if nrules is None:
        return None
    rules = {}
    prev_key = None
    final_set = set(finals)
    for _ in range(nrules):
        q = read_nat_sd(r)
        if q is None or q >= nstates:
            return None
        syms = r.take(6)
        if syms is None:
            return None
        si, sc, so = _BITS_SYM[syms[0:2]], _BITS_SYM[syms[2:4]], _BITS_SYM[syms[4:6]]
        writes = r.take(4)
        if writes is None:
            return None
        wc, wo = _BITS_SYM[writes[0:2]], _BITS_SYM[writes[2:4]]
        moves = r.take(6)
        if moves is None:
            return None
        mtags = (moves[0:2], moves[2:4], moves[4:6])
        if any(m not in _BITS_MOVE for m in mtags):
            return None
        mi, mc, mo = (_BITS_MOVE[m] for m in mtags)
        ns = read_nat_sd(r)
        if ns is None or ns >= nstates:
            return None
        key = (q, _SYM_BITS[si], _SYM_BITS[sc], _SYM_BITS[so])
        if prev_key is not None and key <= prev_key:
            return None
        prev_key = key
        if q in final_set:
            frozen = wc == sc and wo == so and mi == mc == mo == "S" and ns == q
            if not frozen:
                return None
        rules[(f"q{q}", si, sc, so)] = (wc, wo, mi, mc, mo, f"q{ns}")
    if not r.done():
        return None
    try:
        return MachineSpec(
            alphabet=WORK_ALPHABET,
            states=frozenset(f"q{i}" for i in range(nstates)),
            start=f"q{start}",
            finals=frozenset(f"q{i}" for i in finals),
            reject=f"q{reject}",
            rules=rules,
        )
    except Exception:
        return None


# ---------------------------------------------------------------------------
# encode / decode
# ---------------------------------------------------------------------------

def _sign_bits(v: str) -> str:
    if v == "+":
        return "1"
    if v == "-":
        return "0"
    raise ValueError("sign values are '+' and '-'")


def encode(tag: Tag, value) -> str:
    h = header(tag)
    t = type(tag)
    if t is Nat:
        if not isinstance(value, int) or value < 0:
            raise ValueError("NAT encodes naturals")
        return h + bin(value)[2:]
    if t is Sign:
        return h + _sign_bits(value)
    if t is Pair:
        a, b = value
        return h + esc(encode(tag.first, a)) + esc(encode(tag.second, b))
    if t is ListOf:
        return h + "".join(esc(encode(tag.member, v)) for v in value) + "11"
    if t is Mach:
        return h + machine_to_bits(value)
    if t is Form:
        return h + F.form_to_bits(value)
    if t is F0:
        if not is_f0(value):
            raise ValueError("F0 encodes Delta-0 formulas with exactly one free variable")
        return h + F.form_to_bits(value)
    if t is PolTag:
        return h + D.pol_to_bits(value)
    raise TypeError(f"not a tag: {tag!r}")


def is_f0(f) -> bool:
    return F.is_delta0(f) and len(F.free_vars(f)) == 1


def decode(tag: Tag, code: str):
    """Left inverse of encode; NotMember exactly off the image."""
    if not isinstance(code, str) or not set(code) <= CODE_ALPHABET:
        return NOT_MEMBER
    h = header(tag)
    if not code.startswith(h):
        return NOT_MEMBER
    body = code[len(h):]
    t = type(tag)
    if t is Nat:
        if not body or not set(body) <= {"0", "1"}:
            return NOT_MEMBER
        if len(body) > 1 and body[0] == "0":
            return NOT_MEMBER
        return int(body, 2)
    if t is Sign:
        if body == "1":
            return "+"
        if body == "0":
            return "-"
        return NOT_MEMBER
    if t is Pair:
        m1 = read_esc(body, 0)
        if m1 is None:
            return NOT_MEMBER
        a, i = m1
        m2 = read_esc(body, i)
        if m2 is None:
            return NOT_MEMBER
        b, i = m2
        if i != len(body):
            return NOT_MEMBER
        va = decode(tag.first, a)
        if va is NOT_MEMBER:
            return NOT_MEMBER
        vb = decode(tag.second, b)
        if vb is NOT_MEMBER:
            return NOT_MEMBER
        return (va, vb)
    if t is ListOf:
        out = []
        i = 0
        while True:
            if body[i:i + 2] == "11" and i + 2 == len(body):
                return tuple(out)
            m = read_esc(body, i)
            if m is None:
                return NOT_MEMBER
            member, i = m
            v = decode(tag.member, member)
            if v is NOT_MEMBER:
                return NOT_MEMBER
            out.append(v)
    if t is Mach:
        m = bits_to_machine(body)
        return NOT_MEMBER if m is None else m
    if t is Form:
        f = F.bits_to_form(body)
        return NOT_MEMBER if f is None else f
    if t is F0:
        f = F.bits_to_form(body)
        if f is None or not is_f0(f):
            return NOT_MEMBER
        return f
    if t is PolTag:
        p = D.bits_to_pol(body)
        return NOT_MEMBER if p is None else p
    raise TypeError(f"not a tag: {tag!r}")


def encode_machine(spec: MachineSpec) -> str:
    return encode(MACH, spec)


def decode_machine(code: str):
    return decode(MACH, code)


# ---------------------------------------------------------------------------
# List operations at the code level
# ---------------------------------------------------------------------------

def _split_list(code: str):
    """(tag, member-code list) of a LIST code, or None."""
    t = tag_of(code)
    if t is NOT_MEMBER or type(t) is not ListOf:
        return None
    body = payload_of(code)
    out = []
    i = 0
    while True:
        if body[i:i + 2] == "11" and i + 2 == len(body):
            return t, out
        m = read_esc(body, i)
        if m is None:
            return None
        member, i = m
        if tag_of(member) != t.member:
            return None
        out.append(member)


def make_list(tag: Tag, member_codes) -> str:
    return header(ListOf(tag)) + "".join(esc(c) for c in member_codes) + "11"


def list_length(code: str):
    """Paper convention: length = max index, so a singleton has length 0.
    Undefined on the empty list and on non-list codes."""
    s = _split_list(code)
    if s is None or not s[1]:
        return UNDEFINED
    return len(s[1]) - 1


def list_at(code: str, i: int):
    s = _split_list(code)
    if s is None:
        return UNDEFINED
    members = s[1]
    if i < 0 or i >= len(members):
        return UNDEFINED
    return members[i]


def list_union(l1: str, l2: str):
    """Concatenation per the natural list union: the second list's entries
    follow the first's, indices shifted by length(l1)+1."""
    s1 = _split_list(l1)
    s2 = _split_list(l2)
    if s1 is None or s2 is None:
        return NOT_MEMBER
    t1, m1 = s1
    t2, m2 = s2
    if t1 != t2:
        return NOT_MEMBER
    return make_list(t1.member, m1 + m2)
