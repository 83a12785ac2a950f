"""Deterministic 3-tape Turing machines: specs, configurations, stepping, runs.

Tapes are input (read-only head), computation and output (read/write heads).
Tape contents are sparse maps position -> symbol; absent cells read as the
blank symbol ``b``.  Generated machines use the fixed working alphabet
{b, 0, 1, #}; user-supplied specs may declare larger alphabets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

BLANK = "b"
MOVES = ("L", "R", "S")

# (new comp sym, new out sym, move_in, move_comp, move_out, new state)
Action = tuple[str, str, str, str, str, str]
# (state, input sym, comp sym, out sym)
RuleKey = tuple[str, str, str, str]

_MOVE_DELTA = {"L": -1, "R": 1, "S": 0}


class MachineError(Exception):
    """Ill-formed machine spec."""


class MachineParseError(MachineError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line
        self.msg = msg


@dataclass(frozen=True)
class MachineSpec:
    """A deterministic 3-tape machine table.

    ``rules`` maps a lookup key (state, sym under input head, sym under comp
    head, sym under output head) to the action taken.  Final states are
    frozen: they carry no rule, or only the identity rule.
    """

    alphabet: frozenset
    states: frozenset
    start: str
    finals: frozenset
    reject: str
    rules: dict

    def __post_init__(self):
        if BLANK not in self.alphabet:
            raise MachineError("alphabet must contain the blank symbol 'b'")
        if self.start not in self.states:
            raise MachineError("start state not declared")
        if not self.finals <= self.states:
            raise MachineError("final states must be declared states")
        if not self.finals:
            raise MachineError("at least one final state required")
        if self.reject not in self.finals:
            raise MachineError("reject state must be final")
        for key, act in self.rules.items():
            q, si, sc, so = key
            wc, wo, mi, mc, mo, ns = act
            if q not in self.states or ns not in self.states:
                raise MachineError(f"rule {key}: undeclared state")
            for s in (si, sc, so, wc, wo):
                if s not in self.alphabet:
                    raise MachineError(f"rule {key}: undeclared symbol {s!r}")
            for m in (mi, mc, mo):
                if m not in MOVES:
                    raise MachineError(f"rule {key}: bad move {m!r}")
            if q in self.finals:
                frozen = wc == sc and wo == so and mi == mc == mo == "S" and ns == q
                if not frozen:
                    raise MachineError(f"rule {key}: final state must be frozen")

    def __eq__(self, other):
        if not isinstance(other, MachineSpec):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.states == other.states
            and self.start == other.start
            and self.finals == other.finals
            and self.reject == other.reject
            and self.rules == other.rules
        )

    def rule_count(self) -> int:
        return len(self.rules)


def _norm_tape(cells: Mapping) -> dict:
    return {p: s for p, s in cells.items() if s != BLANK}


@dataclass(frozen=True)
class TotalState:
    """Complete configuration: tapes, head positions, internal state.

    Tape maps never store blank cells, so equality of configurations is
    equality of the dataclass fields.
    """

    tape_in: dict
    tape_comp: dict
    tape_out: dict
    heads: tuple
    internal: str

    @staticmethod
    def make(tape_in, tape_comp, tape_out, heads, internal) -> "TotalState":
        return TotalState(
            _norm_tape(tape_in), _norm_tape(tape_comp), _norm_tape(tape_out),
            tuple(heads), internal,
        )

    def __eq__(self, other):
        if not isinstance(other, TotalState):
            return NotImplemented
        return (
            self.internal == other.internal
            and self.heads == other.heads
            and self.tape_in == other.tape_in
            and self.tape_comp == other.tape_comp
            and self.tape_out == other.tape_out
        )


@dataclass(frozen=True)
class Halted:
    output: str


@dataclass(frozen=True)
class Rejected:
    pass


@dataclass(frozen=True)
class OutOfFuel:
    last: TotalState


@dataclass(frozen=True)
class StuckNoRule:
    last: TotalState


RunOutcome = Halted | Rejected | OutOfFuel | StuckNoRule


def initial_state(spec: MachineSpec, input_str: str) -> TotalState:
    for ch in input_str:
        if ch == BLANK:
            raise MachineError("input must not contain the blank symbol")
        if ch not in spec.alphabet:
            raise MachineError(f"input symbol {ch!r} not in machine alphabet")
    tape_in = {i: ch for i, ch in enumerate(input_str)}
    return TotalState.make(tape_in, {}, {}, (0, 0, 0), spec.start)


def step(spec: MachineSpec, st: TotalState) -> TotalState | StuckNoRule:
    """One move of the machine; final states are frozen and return st itself."""
    if st.internal in spec.finals:
        return st
    hi, hc, ho = st.heads
    si = st.tape_in.get(hi, BLANK)
    sc = st.tape_comp.get(hc, BLANK)
    so = st.tape_out.get(ho, BLANK)
    act = spec.rules.get((st.internal, si, sc, so))
    if act is None:
        return StuckNoRule(st)
    wc, wo, mi, mc, mo, ns = act
    tc = dict(st.tape_comp)
    to = dict(st.tape_out)
    if wc == BLANK:
        tc.pop(hc, None)
    else:
        tc[hc] = wc
    if wo == BLANK:
        to.pop(ho, None)
    else:
        to[ho] = wo
    heads = (hi + _MOVE_DELTA[mi], hc + _MOVE_DELTA[mc], ho + _MOVE_DELTA[mo])
    return TotalState(st.tape_in, tc, to, heads, ns)


def output_string(tape_out: Mapping) -> str:
    """Maximal blank-delimited string on the output tape."""
    if not tape_out:
        return ""
    lo = min(tape_out)
    hi = max(tape_out)
    return "".join(tape_out.get(p, BLANK) for p in range(lo, hi + 1))


class _Compiled:
    """Integer-indexed rule table for the fast run loop."""

    __slots__ = ("sym_id", "state_id", "rules", "final_ids", "reject_id", "start_id")

    def __init__(self, spec: MachineSpec):
        self.sym_id = {s: i for i, s in enumerate(sorted(spec.alphabet))}
        self.state_id = {q: i for i, q in enumerate(sorted(spec.states))}
        nsym = len(self.sym_id)
        rules = {}
        for (q, si, sc, so), (wc, wo, mi, mc, mo, ns) in spec.rules.items():
            key = ((self.state_id[q] * nsym + self.sym_id[si]) * nsym
                   + self.sym_id[sc]) * nsym + self.sym_id[so]
            rules[key] = (
                self.sym_id[wc], self.sym_id[wo],
                _MOVE_DELTA[mi], _MOVE_DELTA[mc], _MOVE_DELTA[mo],
                self.state_id[ns],
            )
        self.rules = rules
        self.final_ids = frozenset(self.state_id[q] for q in spec.finals)
        self.reject_id = self.state_id[spec.reject]
        self.start_id = self.state_id[spec.start]


_compiled_cache: dict = {}


def _compiled(spec: MachineSpec) -> _Compiled:
    c = _compiled_cache.get(id(spec))
    if c is None:
        c = _Compiled(spec)
        _compiled_cache[id(spec)] = c
        # keep the spec alive so id() stays unique
        _compiled_cache[("ref", id(spec))] = spec
    return c


def run(spec: MachineSpec, input_str: str, fuel: int) -> RunOutcome:
    """Iterate from the canonical initial configuration for at most ``fuel`` steps."""
    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    comp = _compiled(spec)
    st0 = initial_state(spec, input_str)

    sym_id = comp.sym_id
    blank = sym_id[BLANK]
    id_sym = {v: k for k, v in sym_id.items()}
    nsym = len(sym_id)
    rules = comp.rules
    finals = comp.final_ids

    tin = {p: sym_id[s] for p, s in st0.tape_in.items()}
    tc: dict = {}
    to: dict = {}
    hi = hc = ho = 0
    q = comp.start_id

    steps_left = fuel
    while q not in finals:
        if steps_left == 0:
            return OutOfFuel(_reconstruct(st0, tc, to, (hi, hc, ho), q, comp, id_sym))
        si = tin.get(hi, blank)
        sc = tc.get(hc, blank)
        so = to.get(ho, blank)
        act = rules.get(((q * nsym + si) * nsym + sc) * nsym + so)
        if act is None:
            return StuckNoRule(_reconstruct(st0, tc, to, (hi, hc, ho), q, comp, id_sym))
        wc, wo, mi, mc, mo, q = act
        if wc == blank:
            if sc != blank:
                del tc[hc]
        else:
            tc[hc] = wc
        if wo == blank:
            if so != blank:
                del to[ho]
        else:
            to[ho] = wo
        hi += mi
        hc += mc
        ho += mo
        steps_left -= 1

    if q == comp.reject_id:
        return Rejected()
    out = {p: id_sym[s] for p, s in to.items()}
    return Halted(output_string(out))


def _reconstruct(st0, tc, to, heads, q, comp, id_sym) -> TotalState:
    rev_state = {v: k for k, v in comp.state_id.items()}
    return TotalState(
        dict(st0.tape_in),
        {p: id_sym[s] for p, s in tc.items()},
        {p: id_sym[s] for p, s in to.items()},
        heads,
        rev_state[q],
    )


def trace(spec: MachineSpec, input_str: str, fuel: int) -> list:
    """Configurations s_0 ... s_k visited, ending at the first final state or
    at fuel exhaustion.  StuckNoRule propagates as an exception-free cut: the
    trace ends at the stuck configuration."""
    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    st = initial_state(spec, input_str)
    out = [st]
    for _ in range(fuel):
        if st.internal in spec.finals:
            break
        nxt = step(spec, st)
        if isinstance(nxt, StuckNoRule):
            break
        st = nxt
        out.append(st)
    return out


# ---------------------------------------------------------------------------
# Text format
#
#   alphabet: b 0 1 #
#   states: q0 q1 qa qr
#   start: q0
#   final: qa qr
#   reject: qr
#   rule: q0 (ri,rc,ro) -> q1 write(wc,wo) move(mi,mc,mo)
#
# Lines whose first non-blank character is '#' are comments (full-line only,
# since '#' is a legitimate alphabet symbol inside directives).
# ---------------------------------------------------------------------------

import re

_RULE_RE = re.compile(
    r"^rule:\s*(\S+)\s*\(\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*\)\s*"
    r"->\s*(\S+)\s+write\(\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*\)\s+"
    r"move\(\s*([LRS])\s*,\s*([LRS])\s*,\s*([LRS])\s*\)\s*$"
)


def parse_machine(text: str) -> MachineSpec:
    alphabet = None
    states = None
    start = None
    finals = None
    reject = None
    rules: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line[0] == "#":
            continue
        if line.startswith("alphabet:"):
            alphabet = line[len("alphabet:"):].split()
            if not alphabet:
                raise MachineParseError(lineno, "empty alphabet")
        elif line.startswith("states:"):
            states = line[len("states:"):].split()
        elif line.startswith("start:"):
            parts = line[len("start:"):].split()
            if len(parts) != 1:
                raise MachineParseError(lineno, "start wants exactly one state")
            start = parts[0]
        elif line.startswith("final:"):
            finals = line[len("final:"):].split()
        elif line.startswith("reject:"):
            parts = line[len("reject:"):].split()
            if len(parts) != 1:
                raise MachineParseError(lineno, "reject wants exactly one state")
            reject = parts[0]
        elif line.startswith("rule:"):
            if alphabet is None or states is None:
                raise MachineParseError(lineno, "rule before alphabet/states")
            m = _RULE_RE.match(line)
            if m is None:
                raise MachineParseError(lineno, "malformed rule")
            q, si, sc, so, ns, wc, wo, mi, mc, mo = m.groups()
            for st_name in (q, ns):
                if st_name not in states:
                    raise MachineParseError(lineno, f"undeclared state {st_name!r}")
            for sym in (si, sc, so, wc, wo):
                if sym not in alphabet:
                    raise MachineParseError(lineno, f"undeclared symbol {sym!r}")
            key = (q, si, sc, so)
            if key in rules:
                raise MachineParseError(lineno, f"duplicate rule key {key}")
            rules[key] = (wc, wo, mi, mc, mo, ns)
        else:
            raise MachineParseError(lineno, f"unrecognized directive: {line.split()[0]}")
    if alphabet is None:
        raise MachineParseError(0, "missing alphabet")
    if states is None:
        raise MachineParseError(0, "missing states")
    if start is None:
        raise MachineParseError(0, "missing start")
    if finals is None:
        raise MachineParseError(0, "missing final")
    if reject is None:
        raise MachineParseError(0, "missing reject")
    try:
        return MachineSpec(
            alphabet=frozenset(alphabet),
            states=frozenset(states),
            start=start,
            finals=frozenset(finals),
            reject=reject,
            rules=rules,
        )
    except MachineError as e:
        raise MachineParseError(0, str(e)) from e


def _state_sort_key(name: str):
    m = re.fullmatch(r"q(\d+)", name)
    if m:
        return (0, int(m.group(1)), name)
    return (1, 0, name)


def format_machine(spec: MachineSpec) -> str:
    """Canonical text rendering: sorted sections, rules sorted by key."""
    def sym_key(s):
        order = {BLANK: 0, "0": 1, "1": 2, "#": 3}
        return (order.get(s, 4), s)

    lines = []
    lines.append("alphabet: " + " ".join(sorted(spec.alphabet, key=sym_key)))
    lines.append("states: " + " ".join(sorted(spec.states, key=_state_sort_key)))
    lines.append("start: " + spec.start)
    lines.append("final: " + " ".join(sorted(spec.finals, key=_state_sort_key)))
    lines.append("reject: " + spec.reject)
    for key in sorted(spec.rules, key=lambda k: (_state_sort_key(k[0]), k[1:])):
        q, si, sc, so = key
        wc, wo, mi, mc, mo, ns = spec.rules[key]
        lines.append(
            f"rule: {q} ({si},{sc},{so}) -> {ns} write({wc},{wo}) move({mi},{mc},{mo})"
        )
    return "\n".join(lines) + "\n"
