"""First-order arithmetic terms and formulas.

Terms are built from 0, successor, +, *, variables v0, v1, ... and numeric
literals (printed in decimal; a literal k abbreviates the k-fold successor
of 0 and is kept distinct from the successor-chain spelling).  Formulas add
equality, the propositional connectives, and both unbounded and bounded
quantifiers.  Sentences with only bounded quantifiers (the Delta-0 class)
are decidable by direct evaluation in the standard model.

Surface syntax is one S-expression per formula:

    (= (+ v0 (s 0)) 5)
    (all v0 (ex<= v1 v0 (= v0 v1)))
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


class FormulaSyntaxError(Exception):
    def __init__(self, pos: int, msg: str):
        super().__init__(f"at position {pos}: {msg}")
        self.pos = pos
        self.msg = msg


class NotDelta0Error(Exception):
    pass


class BudgetExceededError(Exception):
    pass


class CaptureError(Exception):
    """Substitution would capture a free variable of the inserted term."""


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Zero:
    pass


@dataclass(frozen=True, slots=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Var:
    index: int


@dataclass(frozen=True, slots=True)
class Num:
    """Decimal literal; value >= 1 (0 is spelled Zero)."""

    value: int

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("Num wants value >= 1; use Zero for 0")


Term = Zero | Succ | Add | Mul | Var | Num


@dataclass(frozen=True, slots=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Not:
    body: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class ForAll:
    var: int
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: int
    body: "Formula"


@dataclass(frozen=True, slots=True)
class BForAll:
    var: int
    bound: Term
    body: "Formula"

    def __post_init__(self):
        if self.var in free_vars(self.bound):
            raise ValueError("bound term may not mention the bound variable")


@dataclass(frozen=True, slots=True)
class BExists:
    var: int
    bound: Term
    body: "Formula"

    def __post_init__(self):
        if self.var in free_vars(self.bound):
            raise ValueError("bound term may not mention the bound variable")


Formula = Eq | Not | And | Or | Implies | ForAll | Exists | BForAll | BExists

_BINDERS = (ForAll, Exists, BForAll, BExists)
_BINARY = {And: "and", Or: "or", Implies: "->"}


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are naturals")
    return Zero() if n == 0 else Num(n)


# ---------------------------------------------------------------------------
# Structural walks
# ---------------------------------------------------------------------------

def free_vars(node) -> frozenset:
    """Free variable indices of a term or formula."""
    out = set()
    stack = [(node, frozenset())]
    while stack:
        n, bound = stack.pop()
        t = type(n)
        if t is Var:
            if n.index not in bound:
                out.add(n.index)
        elif t is Succ:
            stack.append((n.arg, bound))
        elif t in (Add, Mul, Eq, And, Or, Implies):
            stack.append((n.left, bound))
            stack.append((n.right, bound))
        elif t is Not:
            stack.append((n.body, bound))
        elif t in (ForAll, Exists):
            stack.append((n.body, bound | {n.var}))
        elif t in (BForAll, BExists):
            stack.append((n.bound, bound))
            stack.append((n.body, bound | {n.var}))
    return frozenset(out)


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def is_delta0(f: Formula) -> bool:
    stack = [f]
    while stack:
        n = stack.pop()
        t = type(n)
        if t in (ForAll, Exists):
            return False
        if t is Not:
            stack.append(n.body)
        elif t in (And, Or, Implies):
            stack.append(n.left)
            stack.append(n.right)
        elif t in (BForAll, BExists):
            stack.append(n.body)
    return True


def all_vars(node) -> frozenset:
    """Every variable index occurring (free or bound, including binders)."""
    out = set()
    stack = [node]
    while stack:
        n = stack.pop()
        t = type(n)
        if t is Var:
            out.add(n.index)
        elif t is Succ:
            stack.append(n.arg)
        elif t in (Add, Mul, Eq, And, Or, Implies):
            stack.append(n.left)
            stack.append(n.right)
        elif t is Not:
            stack.append(n.body)
        elif t in (ForAll, Exists):
            out.add(n.var)
            stack.append(n.body)
        elif t in (BForAll, BExists):
            out.add(n.var)
            stack.append(n.bound)
            stack.append(n.body)
    return frozenset(out)


def free_for(t: Term, x: int, f: Formula) -> bool:
    """True when substituting t for free x in f captures no variable of t."""
    tvars = free_vars(t)
    stack = [(f, False)]
    while stack:
        n, shadowed = stack.pop()
        ty = type(n)
        if shadowed:
            continue
        if ty is Eq:
            continue
        if ty is Not:
            stack.append((n.body, shadowed))
        elif ty in (And, Or, Implies):
            stack.append((n.left, shadowed))
            stack.append((n.right, shadowed))
        elif ty in _BINDERS:
            if n.var == x:
                continue
            if n.var in tvars and x in free_vars(n.body):
                return False
            stack.append((n.body, shadowed))
    return True


def subst_term(node: Term, x: int, t: Term) -> Term:
    ty = type(node)
    if ty is Var:
        return t if node.index == x else node
    if ty is Succ:
        return Succ(subst_term(node.arg, x, t))
    if ty is Add:
        return Add(subst_term(node.left, x, t), subst_term(node.right, x, t))
    if ty is Mul:
        return Mul(subst_term(node.left, x, t), subst_term(node.right, x, t))
    return node


def subst(f: Formula, x: int, t: Term) -> Formula:
    """Capture-checked substitution of t for free occurrences of v<x>."""
    if not free_for(t, x, f):
        raise CaptureError(f"term not free for v{x}")
    return _subst(f, x, t)


def _subst(f, x, t):
    ty = type(f)
    if ty is Eq:
        return Eq(subst_term(f.left, x, t), subst_term(f.right, x, t))
    if ty is Not:
        return Not(_subst(f.body, x, t))
    if ty in (And, Or, Implies):
        return ty(_subst(f.left, x, t), _subst(f.right, x, t))
    if ty in (ForAll, Exists):
        if f.var == x:
            return f
        return ty(f.var, _subst(f.body, x, t))
    if ty in (BForAll, BExists):
        bound = subst_term(f.bound, x, t)
        if f.var == x:
            return ty(f.var, bound, f.body)
        return ty(f.var, bound, _subst(f.body, x, t))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Printing / parsing
# ---------------------------------------------------------------------------

def to_sexp(node) -> str:
    parts: list[str] = []
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, str):
            parts.append(n)
            continue
        t = type(n)
        if t is Zero:
            parts.append("0")
        elif t is Num:
            parts.append(str(n.value))
        elif t is Var:
            parts.append(f"v{n.index}")
        elif t is Succ:
            parts.append("(s ")
            stack.append(")")
            stack.append(n.arg)
        elif t is Add:
            parts.append("(+ ")
            stack.extend([")", n.right, " ", n.left])
        elif t is Mul:
            parts.append("(* ")
            stack.extend([")", n.right, " ", n.left])
        elif t is Eq:
            parts.append("(= ")
            stack.extend([")", n.right, " ", n.left])
        elif t is Not:
            parts.append("(not ")
            stack.extend([")", n.body])
        elif t in _BINARY:
            parts.append(f"({_BINARY[t]} ")
            stack.extend([")", n.right, " ", n.left])
        elif t is ForAll:
            parts.append(f"(all v{n.var} ")
            stack.extend([")", n.body])
        elif t is Exists:
            parts.append(f"(ex v{n.var} ")
            stack.extend([")", n.body])
        elif t is BForAll:
            parts.append(f"(all<= v{n.var} ")
            stack.extend([")", n.body, " ", n.bound])
        elif t is BExists:
            parts.append(f"(ex<= v{n.var} ")
            stack.extend([")", n.body, " ", n.bound])
        else:
            raise TypeError(f"not a term/formula: {n!r}")
    return "".join(parts)


def _tokenize(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\n\r":
            i += 1
        elif c in "()":
            toks.append((c, i))
            i += 1
        else:
            j = i
            while j < n and text[j] not in " \t\n\r()":
                j += 1
            toks.append((text[i:j], i))
            i = j
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        if self.i >= len(self.toks):
            return None
        return self.toks[self.i]

    def next(self):
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError(len(self.text), "unexpected end of input")
        self.i += 1
        return tok

    def expect(self, what: str):
        tok, pos = self.next()
        if tok != what:
            raise FormulaSyntaxError(pos, f"expected {what!r}, got {tok!r}")

    def var(self) -> int:
        tok, pos = self.next()
        if len(tok) >= 2 and tok[0] == "v" and tok[1:].isdigit():
            return int(tok[1:])
        raise FormulaSyntaxError(pos, f"expected a variable, got {tok!r}")

    def term(self) -> Term:
        tok, pos = self.next()
        if tok == "(":
            op, oppos = self.next()
            if op == "s":
                t = Succ(self.term())
            elif op == "+":
                t = Add(self.term(), self.term())
            elif op == "*":
                t = Mul(self.term(), self.term())
            else:
                raise FormulaSyntaxError(oppos, f"unknown term operator {op!r}")
            self.expect(")")
            return t
        if tok == "0":
            return Zero()
        if tok.isdigit():
            return Num(int(tok))
        if len(tok) >= 2 and tok[0] == "v" and tok[1:].isdigit():
            return Var(int(tok[1:]))
        raise FormulaSyntaxError(pos, f"expected a term, got {tok!r}")

    def formula(self) -> Formula:
        tok, pos = self.next()
        if tok != "(":
            raise FormulaSyntaxError(pos, f"expected '(', got {tok!r}")
        op, oppos = self.next()
        if op == "=":
            f = Eq(self.term(), self.term())
        elif op == "not":
            f = Not(self.formula())
        elif op == "and":
            f = And(self.formula(), self.formula())
        elif op == "or":
            f = Or(self.formula(), self.formula())
        elif op == "->":
            f = Implies(self.formula(), self.formula())
        elif op == "all":
            f = ForAll(self.var(), self.formula())
        elif op == "ex":
            f = Exists(self.var(), self.formula())
        elif op == "all<=":
            f = BForAll(self.var(), self.term(), self.formula())
        elif op == "ex<=":
            f = BExists(self.var(), self.term(), self.formula())
        else:
            raise FormulaSyntaxError(oppos, f"unknown connective {op!r}")
        self.expect(")")
        return f


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    extra = p.peek()
    if extra is not None:
        raise FormulaSyntaxError(extra[1], "trailing input after formula")
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    extra = p.peek()
    if extra is not None:
        raise FormulaSyntaxError(extra[1], "trailing input after term")
    return t


# ---------------------------------------------------------------------------
# Delta-0 evaluation
# ---------------------------------------------------------------------------

def term_value(t: Term, env: dict) -> int:
    ty = type(t)
    if ty is Zero:
        return 0
    if ty is Num:
        return t.value
    if ty is Var:
        return env[t.index]
    if ty is Succ:
        return term_value(t.arg, env) + 1
    if ty is Add:
        return term_value(t.left, env) + term_value(t.right, env)
    if ty is Mul:
        return term_value(t.left, env) * term_value(t.right, env)
    raise TypeError(f"not a term: {t!r}")


def _flatten_and(f) -> list:
    out = []
    stack = [f]
    while stack:
        n = stack.pop()
        if type(n) is And:
            stack.append(n.right)
            stack.append(n.left)
        else:
            out.append(n)
    return out


def _count_var(node, x: int) -> int:
    n = 0
    stack = [node]
    while stack:
        t = stack.pop()
        ty = type(t)
        if ty is Var:
            if t.index == x:
                n += 1
        elif ty is Succ:
            stack.append(t.arg)
        elif ty in (Add, Mul):
            stack.append(t.left)
            stack.append(t.right)
    return n


_NO_SOLUTION = object()
_AMBIGUOUS = object()


def _solve_linear(term: Term, x: int, target: int, env: dict):
    """Solve term == target for the single occurrence of v<x>.  Returns the
    witness, _NO_SOLUTION when no natural satisfies the equation, or
    _AMBIGUOUS when the equation does not pin the variable."""
    ty = type(term)
    if ty is Var and term.index == x:
        return target
    if ty is Succ:
        if target < 1:
            return _NO_SOLUTION
        return _solve_linear(term.arg, x, target - 1, env)
    if ty is Add:
        if _count_var(term.left, x):
            rest = term_value(term.right, env)
            branch = term.left
        else:
            rest = term_value(term.left, env)
            branch = term.right
        if target < rest:
            return _NO_SOLUTION
        return _solve_linear(branch, x, target - rest, env)
    if ty is Mul:
        if _count_var(term.left, x):
            coef = term_value(term.right, env)
            branch = term.left
        else:
            coef = term_value(term.left, env)
            branch = term.right
        if coef == 0:
            return _AMBIGUOUS if target == 0 else _NO_SOLUTION
        if target % coef:
            return _NO_SOLUTION
        return _solve_linear(branch, x, target // coef, env)
    return _AMBIGUOUS


def _linear_witness(conjuncts: list, x: int, env: dict):
    """Scan for an Eq conjunct with exactly one occurrence of v<x> and solve
    it.  Returns (found, value-or-None); found=False means no conjunct pins
    the variable and the caller must expand."""
    for c in conjuncts:
        if type(c) is not Eq:
            continue
        nl = _count_var(c.left, x)
        nr = _count_var(c.right, x)
        if nl + nr != 1:
            continue
        if nl:
            having, other = c.left, c.right
        else:
            having, other = c.right, c.left
        target = term_value(other, env)
        val = _solve_linear(having, x, target, env)
        if val is _AMBIGUOUS:
            continue
        if val is _NO_SOLUTION:
            return True, None
        return True, val
    return False, None


def _is_diag_square(t, x: int) -> bool:
    """Matches the term  v<x> * (s v<x>)."""
    return (
        type(t) is Mul
        and type(t.left) is Var
        and t.left.index == x
        and type(t.right) is Succ
        and type(t.right.arg) is Var
        and t.right.arg.index == x
    )


def _match_le_diag(c, x: int):
    """Matches  le_f(x*(x+1), Z, w)  ==  exists w <= Z: Z = x(x+1) + w.
    Returns the term Z or None."""
    if type(c) is not BExists:
        return None
    body = c.body
    if type(body) is not Eq:
        return None
    z, rhs = body.left, body.right
    if not (
        type(rhs) is Add
        and _is_diag_square(rhs.left, x)
        and type(rhs.right) is Var
        and rhs.right.index == c.var
    ):
        return None
    if z != c.bound or _count_var(z, x):
        return None
    return z


def _match_lt_upper(c, x: int):
    """Matches  lt_f(Z, x(x+1) + (x + x + 2), w).  Returns Z or None."""
    if type(c) is not BExists:
        return None
    body = c.body
    if type(body) is not Eq:
        return None
    upper, rhs = body.left, body.right
    if not (
        type(upper) is Add
        and _is_diag_square(upper.left, x)
        and type(upper.right) is Add
        and type(upper.right.left) is Add
        and type(upper.right.left.left) is Var
        and upper.right.left.left.index == x
        and type(upper.right.left.right) is Var
        and upper.right.left.right.index == x
        and upper.right.right == Num(2)
    ):
        return None
    if not (
        type(rhs) is Add
        and type(rhs.right) is Succ
        and type(rhs.right.arg) is Var
        and rhs.right.arg.index == c.var
    ):
        return None
    z = rhs.left
    if _count_var(z, x):
        return None
    return z


def _cantor_witness(conjuncts: list, x: int, env: dict):
    """Matches the interval pair  x(x+1) <= Z < (x+1)(x+2)  emitted by
    cantor_split.  The intervals partition the naturals, so the diagonal
    index is unique and computable; returns (found, value-or-None)."""
    lower = {}
    upper = {}
    for c in conjuncts:
        z = _match_le_diag(c, x)
        if z is not None:
            lower[to_sexp(z)] = z
        z = _match_lt_upper(c, x)
        if z is not None:
            upper[to_sexp(z)] = z
    for key, z in lower.items():
        if key in upper:
            val = term_value(z, env)
            return True, (isqrt(4 * val + 1) - 1) // 2
    return False, None


def _match_le_mul(c, x: int):
    """Matches  le_f(x*D, X, w): exists w <= X: X = x*D + w.  Returns (D, X)
    or None; D and X must be free of x."""
    if type(c) is not BExists:
        return None
    body = c.body
    if type(body) is not Eq:
        return None
    xt, rhs = body.left, body.right
    if not (
        type(rhs) is Add
        and type(rhs.left) is Mul
        and type(rhs.left.left) is Var
        and rhs.left.left.index == x
        and type(rhs.right) is Var
        and rhs.right.index == c.var
    ):
        return None
    d = rhs.left.right
    if xt != c.bound or _count_var(xt, x) or _count_var(d, x):
        return None
    return d, xt


def _match_lt_mul(c, x: int):
    """Matches  lt_f(X, x*D + D, w).  Returns (D, X) or None."""
    if type(c) is not BExists:
        return None
    body = c.body
    if type(body) is not Eq:
        return None
    upper, rhs = body.left, body.right
    if not (
        type(upper) is Add
        and type(upper.left) is Mul
        and type(upper.left.left) is Var
        and upper.left.left.index == x
    ):
        return None
    d = upper.left.right
    if upper.right != d or _count_var(d, x):
        return None
    if not (
        type(rhs) is Add
        and type(rhs.right) is Succ
        and type(rhs.right.arg) is Var
        and rhs.right.arg.index == c.var
    ):
        return None
    xt = rhs.left
    if _count_var(xt, x):
        return None
    return d, xt


def _div_witness(conjuncts: list, x: int, env: dict):
    """Matches the quotient interval pair  x*D <= X < x*D + D.  For D >= 1
    the witness is X // D, uniquely; for D = 0 there is none."""
    lower = {}
    upper = {}
    for c in conjuncts:
        m = _match_le_mul(c, x)
        if m is not None:
            lower[(to_sexp(m[0]), to_sexp(m[1]))] = m
        m = _match_lt_mul(c, x)
        if m is not None:
            upper[(to_sexp(m[0]), to_sexp(m[1]))] = m
    for key, (d, xt) in lower.items():
        if key in upper:
            dv = term_value(d, env)
            if dv == 0:
                return True, None
            return True, term_value(xt, env) // dv
    return False, None


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n: int):
        self.left = n

    def spend(self, k: int = 1):
        self.left -= k
        if self.left < 0:
            raise BudgetExceededError()


_EXPAND_LIMIT = 1 << 20  # refuse structural expansion of wider ranges


def eval_delta0(f: Formula, budget: int = 10_000_000) -> bool:
    """Truth of a closed Delta-0 sentence in the standard model.

    Bounded quantifiers are expanded structurally, except that existential
    witnesses pinned by an equation (linear or monic-square patterns, as
    produced by the arithmetization templates) are computed directly and
    then checked structurally, which keeps template sentences with large
    numeric bounds evaluable.
    """
    if free_vars(f):
        raise ValueError("eval_delta0 wants a closed formula")
    if not is_delta0(f):
        raise NotDelta0Error(to_sexp(f)[:80])
    return _eval(f, {}, _Budget(budget))


def _eval(f, env: dict, budget: _Budget) -> bool:
    budget.spend()
    ty = type(f)
    if ty is Eq:
        return term_value(f.left, env) == term_value(f.right, env)
    if ty is Not:
        return not _eval(f.body, env, budget)
    if ty is And:
        return _eval(f.left, env, budget) and _eval(f.right, env, budget)
    if ty is Or:
        return _eval(f.left, env, budget) or _eval(f.right, env, budget)
    if ty is Implies:
        return (not _eval(f.left, env, budget)) or _eval(f.right, env, budget)
    if ty is BExists:
        return _eval_bexists(f, env, budget)
    if ty is BForAll:
        bound = term_value(f.bound, env)
        if bound + 1 > _EXPAND_LIMIT:
            raise BudgetExceededError(f"universal range 0..{bound} too wide")
        env2 = dict(env)
        for v in range(bound + 1):
            budget.spend()
            env2[f.var] = v
            if not _eval(f.body, env2, budget):
                return False
        return True
    raise NotDelta0Error(f"unbounded quantifier: {ty.__name__}")


def _eval_bexists(f: BExists, env: dict, budget: _Budget) -> bool:
    bound = term_value(f.bound, env)
    conjuncts = _flatten_and(f.body)
    env2 = dict(env)

    found, val = _linear_witness(conjuncts, f.var, env2)
    if not found:
        found, val = _cantor_witness(conjuncts, f.var, env2)
    if not found:
        found, val = _div_witness(conjuncts, f.var, env2)
    if found:
        # the equation admits at most one witness; check it structurally
        if val is None or val < 0 or val > bound:
            return False
        env2[f.var] = val
        return _eval(f.body, env2, budget)

    if bound + 1 > _EXPAND_LIMIT:
        raise BudgetExceededError(f"existential range 0..{bound} too wide")
    for v in range(bound + 1):
        budget.spend()
        env2[f.var] = v
        if _eval(f.body, env2, budget):
            return True
    return False


# ---------------------------------------------------------------------------
# Template helpers used by the arithmetization layer
# ---------------------------------------------------------------------------

def balanced_and(fs: list) -> Formula:
    if not fs:
        return Eq(Zero(), Zero())
    while len(fs) > 1:
        nxt = []
        for i in range(0, len(fs) - 1, 2):
            nxt.append(And(fs[i], fs[i + 1]))
        if len(fs) % 2:
            nxt.append(fs[-1])
        fs = nxt
    return fs[0]


def balanced_or(fs: list) -> Formula:
    if not fs:
        return Not(Eq(Zero(), Zero()))
    while len(fs) > 1:
        nxt = []
        for i in range(0, len(fs) - 1, 2):
            nxt.append(Or(fs[i], fs[i + 1]))
        if len(fs) % 2:
            nxt.append(fs[-1])
        fs = nxt
    return fs[0]


def lt_f(a: Term, b: Term, scratch: int) -> Formula:
    """a < b, via an existential difference witness in v<scratch>."""
    return BExists(scratch, b, Eq(b, Add(a, Succ(Var(scratch)))))


def le_f(a: Term, b: Term, scratch: int) -> Formula:
    """a <= b."""
    return BExists(scratch, b, Eq(b, Add(a, Var(scratch))))


def divmod_split(x: Term, d: Term, q: int, r: int, w1: int, w2: int,
                 body: Formula) -> Formula:
    """exists q, r:  x = q*d + r  and  r < d,  then body.

    q is pinned by the interval pair  q*d <= x < q*d + d  (recognized and
    solved directly by the evaluator), then r is linear.  w1, w2 are scratch
    indices for the comparisons.
    """
    qd = Mul(Var(q), d)
    pin = And(le_f(qd, x, w1), lt_f(x, Add(qd, d), w2))
    inner = BExists(r, x, And(Eq(x, Add(qd, Var(r))), body))
    return BExists(q, x, And(pin, inner))


def cantor_pair(n: int, t: int) -> int:
    s = n + t
    return s * (s + 1) // 2 + t


def cantor_unpair(z: int) -> tuple:
    w = (isqrt(8 * z + 1) - 1) // 2
    t = z - w * (w + 1) // 2
    n = w - t
    return n, t


def cantor_split(z: Term, s: int, y: int, x: int, w1: int, w2: int, body: Formula) -> Formula:
    """exists s y x binding z = cantor_pair(x, y), then body.

    Structure: s is pinned by the interval pair s(s+1) <= 2z < (s+1)(s+2)
    (which the evaluator recognizes and solves directly), then y and x are
    linear:  2z = s(s+1) + 2y  and  s = x + y.
    """
    sv = Var(s)
    zz = Add(z, z)
    diag_sq = Mul(sv, Succ(sv))
    pin_lo = le_f(diag_sq, zz, w1)
    pin_hi = lt_f(zz, Add(diag_sq, Add(Add(sv, sv), Num(2))), w2)
    eq_y = Eq(zz, Add(diag_sq, Mul(Num(2), Var(y))))
    eq_x = Eq(sv, Add(Var(x), Var(y)))
    inner = And(And(pin_lo, pin_hi),
                BExists(y, z, And(eq_y, BExists(x, zz, And(eq_x, body)))))
    return BExists(s, zz, inner)


# ---------------------------------------------------------------------------
# Binary payload format (bit strings over {0,1})
#
# Naturals are self-delimiting: each binary digit b is sent as "0"+b and the
# string ends with "11"; no leading zeroes except for 0 itself.
# ---------------------------------------------------------------------------

def nat_sd(n: int) -> str:
    if n < 0:
        raise ValueError("naturals only")
    return "".join("0" + b for b in bin(n)[2:]) + "11"


class BitReader:
    __slots__ = ("s", "i")

    def __init__(self, s: str):
        self.s = s
        self.i = 0

    def take(self, k: int):
        if self.i + k > len(self.s):
            return None
        out = self.s[self.i:self.i + k]
        self.i += k
        return out

    def done(self) -> bool:
        return self.i == len(self.s)


def read_nat_sd(r: BitReader):
    bits = []
    while True:
        pair = r.take(2)
        if pair is None or pair == "10":
            return None
        if pair == "11":
            break
        bits.append(pair[1])
    if not bits:
        return None
    if len(bits) > 1 and bits[0] == "0":
        return None
    return int("".join(bits), 2)


_TERM_TAGS = {"Var": "0", "Zero": "10", "Succ": "110", "Add": "11100",
              "Mul": "11101", "Num": "1111"}
_FORM_TAGS = {"Eq": "0", "Not": "100", "And": "1010", "Or": "1011",
              "Implies": "1100", "ForAll": "11010", "Exists": "11011",
              "BForAll": "11100", "BExists": "11101"}


def term_to_bits(t: Term) -> str:
    ty = type(t)
    if ty is Var:
        return "0" + nat_sd(t.index)
    if ty is Zero:
        return "10"
    if ty is Succ:
        return "110" + term_to_bits(t.arg)
    if ty is Add:
        return "11100" + term_to_bits(t.left) + term_to_bits(t.right)
    if ty is Mul:
        return "11101" + term_to_bits(t.left) + term_to_bits(t.right)
    if ty is Num:
        return "1111" + nat_sd(t.value)
    raise TypeError(f"not a term: {t!r}")


def form_to_bits(f: Formula) -> str:
    ty = type(f)
    if ty is Eq:
        return "0" + term_to_bits(f.left) + term_to_bits(f.right)
    if ty is Not:
        return "100" + form_to_bits(f.body)
    if ty is And:
        return "1010" + form_to_bits(f.left) + form_to_bits(f.right)
    if ty is Or:
        return "1011" + form_to_bits(f.left) + form_to_bits(f.right)
    if ty is Implies:
        return "1100" + form_to_bits(f.left) + form_to_bits(f.right)
    if ty is ForAll:
        return "11010" + nat_sd(f.var) + form_to_bits(f.body)
    if ty is Exists:
        return "11011" + nat_sd(f.var) + form_to_bits(f.body)
    if ty is BForAll:
        return "11100" + nat_sd(f.var) + term_to_bits(f.bound) + form_to_bits(f.body)
    if ty is BExists:
        return "11101" + nat_sd(f.var) + term_to_bits(f.bound) + form_to_bits(f.body)
    raise TypeError(f"not a formula: {f!r}")


def _read_term(r: BitReader):
    b = r.take(1)
    if b is None:
        return None
    if b == "0":
        idx = read_nat_sd(r)
        return None if idx is None else Var(idx)
    b = r.take(1)
    if b is None:
        return None
    if b == "0":
        return Zero()
    b = r.take(1)
    if b is None:
        return None
    if b == "0":
        arg = _read_term(r)
        return None if arg is None else Succ(arg)
    b = r.take(1)
    if b is None:
        return None
    if b == "1":
        n = read_nat_sd(r)
        if n is None or n < 1:
            return None
        return Num(n)
    b = r.take(1)
    if b is None:
        return None
    left = _read_term(r)
    if left is None:
        return None
    right = _read_term(r)
    if right is None:
        return None
    return Add(left, right) if b == "0" else Mul(left, right)


def _read_form(r: BitReader):
    b = r.take(1)
    if b is None:
        return None
    if b == "0":
        left = _read_term(r)
        if left is None:
            return None
        right = _read_term(r)
        return None if right is None else Eq(left, right)
    b = r.take(2)
    if b is None:
        return None
    if b == "00":
        body = _read_form(r)
        return None if body is None else Not(body)
    if b == "01":
        b2 = r.take(1)
        if b2 is None:
            return None
        left = _read_form(r)
        if left is None:
            return None
        right = _read_form(r)
        if right is None:
            return None
        return And(left, right) if b2 == "0" else Or(left, right)
    if b == "10":
        b2 = r.take(1)
        if b2 is None:
            return None
        if b2 == "0":
            left = _read_form(r)
            if left is None:
                return None
            right = _read_form(r)
            return None if right is None else Implies(left, right)
        b3 = r.take(1)
        if b3 is None:
            return None
        var = read_nat_sd(r)
        if var is None:
            return None
        body = _read_form(r)
        if body is None:
            return None
        return ForAll(var, body) if b3 == "0" else Exists(var, body)
    # b == "11": bounded quantifiers, tags 11100 / 11101
    b2 = r.take(2)
    if b2 not in ("00", "01"):
        return None
    var = read_nat_sd(r)
    if var is None:
        return None
    bound = _read_term(r)
    if bound is None:
        return None
    body = _read_form(r)
    if body is None:
        return None
    try:
        return BForAll(var, bound, body) if b2 == "00" else BExists(var, bound, body)
    except ValueError:
        return None


def bits_to_form(bits: str):
    """Decode a formula payload; None when malformed or has trailing bits."""
    if not set(bits) <= {"0", "1"}:
        return None
    r = BitReader(bits)
    f = _read_form(r)
    if f is None or not r.done():
        return None
    return f


def bits_to_term(bits: str):
    if not set(bits) <= {"0", "1"}:
        return None
    r = BitReader(bits)
    t = _read_term(r)
    if t is None or not r.done():
        return None
    return t
