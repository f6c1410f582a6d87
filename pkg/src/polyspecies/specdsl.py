"""A small language for systems of species equations.

Example (polygonal 2-trees; ``quot2`` switches to orientation-aware semantics)::

    Astar = E(sum(n >= 1, L[n](X) * L[n+1](Astar)));
    Ao    = L[2](X) * (Astar - 1) + P[>=3](X, Astar)
            - L[2](X) * Astar * sum(n >= 1, L[n](X) * L[n+1](Astar));
    A     = quot2(Ao);

Grammar (``;`` after a binding is optional; ``#`` starts a comment)::

    system  := { IDENT "=" expr [";"] }
    expr    := term { ("+" | "-") term }
    term    := unary { "*" unary }
    unary   := "-" unary | postfix
    postfix := factor { "(" expr ")" }                 composition f(g)
    factor  := NUMBER ["/" NUMBER] | "X" | IDENT | "(" expr ")"
             | "E" "(" expr ")" | "D" "(" expr ")" | "quot2" "(" expr ")"
             | "L" "[" idx "]" "(" expr ")" | "C" "[" idx "]" "(" expr ")"
             | "P" "[" idx "]" "(" expr "," expr ")"
             | "sum" "(" IDENT ">=" NUMBER "," expr ")"
    idx     := NUMBER | IDENT [("+" | "-") NUMBER] | ">=" NUMBER

``L[n]``, ``C[n]`` are linear and cyclic orders (``C[>=k]``: all sizes ``>= k``);
``P[m](V, W)`` is a polygon with ``V`` at every corner and ``W`` on every side,
reversed corner-to-corner and side-to-side; ``D`` is the derivative.  Index
identifiers are either ``sum`` variables or integer parameters supplied at solve
time (``params={"k": 4}``).

A recursive reference is allowed only when every cycle of references gains
valuation (weight) at least 1 per round trip; this is what makes the iteration
from the all-zero assignment converge layer by layer.
"""
from __future__ import annotations

import importlib.resources
import math
import re
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import cis
from .cis import CycleIndexSeries, DivergenceError
from .gamma2 import S2Series, g_builtin, g_exp_compose, g_mul, g_plethysm, g_polygon, lift, quotient_s2

__all__ = [
    "SpecSyntaxError",
    "SpecError",
    "Index",
    "Atom",
    "Const",
    "Named",
    "Neg",
    "Sum",
    "Difference",
    "Product",
    "Compose",
    "SetOf",
    "Lin",
    "Cyc",
    "Polygon",
    "Derivative",
    "BoundedSum",
    "QuotientS2",
    "Binding",
    "SpeciesSystem",
    "parse",
    "parse_expr",
    "pretty",
    "check_guarded",
    "solve_system",
    "shipped_systems",
    "load_system",
]

INF = math.inf
KEYWORDS = {"X", "E", "L", "C", "P", "D", "quot2", "sum"}


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class SpecError(ValueError):
    """Well-formed text that does not describe a solvable system."""


# ---------------------------------------------------------------------------
# abstract syntax
# ---------------------------------------------------------------------------

_pos = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Index:
    """``n`` (fixed), ``var`` / ``var+offset``, or ``>= n`` (``at_least``)."""

    value: int = 0
    var: str | None = None
    at_least: bool = False

    def resolve(self, env: dict) -> int:
        if self.var is None:
            return self.value
        if self.var not in env:
            raise SpecError(f"unbound index variable {self.var!r}")
        return env[self.var] + self.value

    def __str__(self) -> str:
        if self.at_least:
            return f">={self.value}"
        if self.var is None:
            return str(self.value)
        if self.value == 0:
            return self.var
        return f"{self.var}{self.value:+d}"


@dataclass(frozen=True)
class Atom:
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Const:
    value: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Named:
    name: str
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Sum:
    left: object
    right: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Difference:
    left: object
    right: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Product:
    left: object
    right: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Compose:
    outer: object
    inner: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class SetOf:
    arg: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Lin:
    index: Index
    arg: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Cyc:
    index: Index
    arg: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Polygon:
    index: Index
    corner: object
    side: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Derivative:
    arg: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class BoundedSum:
    var: str
    lower: int
    body: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class QuotientS2:
    arg: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class Binding:
    name: str
    expr: object
    pos: tuple | None = _pos


@dataclass(frozen=True)
class SpeciesSystem:
    bindings: tuple[Binding, ...]

    @property
    def names(self) -> list[str]:
        return [b.name for b in self.bindings]

    def __getitem__(self, name: str):
        for b in self.bindings:
            if b.name == name:
                return b.expr
        raise KeyError(name)

    @property
    def outputs(self) -> list[str]:
        """Bindings no other binding refers to, in source order (all bindings if none)."""
        used = set()
        for b in self.bindings:
            used |= {r for r in _refs(b.expr) if r != b.name}
        return [n for n in self.names if n not in used] or self.names

    def __str__(self) -> str:
        return pretty(self)


def _children(e) -> list:
    if isinstance(e, (Atom, Const, Named)):
        return []
    if isinstance(e, (Sum, Difference, Product)):
        return [e.left, e.right]
    if isinstance(e, Compose):
        return [e.outer, e.inner]
    if isinstance(e, Polygon):
        return [e.corner, e.side]
    if isinstance(e, BoundedSum):
        return [e.body]
    return [e.arg]


def _refs(e) -> set[str]:
    if isinstance(e, Named):
        return {e.name}
    out = set()
    for c in _children(e):
        out |= _refs(c)
    return out


# ---------------------------------------------------------------------------
# lexer and parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<num>\d+) | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>>=|[=;+\-*/()\[\],])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    line, start = 1, 0
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise SpecSyntaxError(f"unexpected character {text[i]!r}", line, i - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, i - start + 1))
        i = m.end()
    toks.append(_Tok("eof", "", line, i - start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise SpecSyntaxError(msg, tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def number(self) -> int:
        if self.tok.kind != "num":
            self.error(f"expected a number, found {self.tok.text or 'end of input'!r}")
        v = int(self.tok.text)
        self.i += 1
        return v

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.error(f"expected an identifier, found {self.tok.text or 'end of input'!r}")
        v = self.tok.text
        self.i += 1
        return v

    # grammar ------------------------------------------------------------

    def system(self) -> SpeciesSystem:
        bindings = []
        seen = {}
        while self.tok.kind != "eof":
            t = self.tok
            name = self.ident()
            if name in KEYWORDS:
                self.error(f"{name!r} is reserved and cannot be bound", t)
            if name in seen:
                self.error(f"duplicate binding for {name!r} (first bound on line {seen[name]})", t)
            seen[name] = t.line
            self.expect("=")
            expr = self.expr()
            if self.at(";"):
                self.i += 1
            elif self.tok.kind != "eof" and not (self.tok.kind == "ident" and self.toks[self.i + 1].text == "="):
                self.error(f"expected ';' or a new binding, found {self.tok.text!r}")
            bindings.append(Binding(name, expr, (t.line, t.col)))
        return SpeciesSystem(tuple(bindings))

    def expr(self):
        left = self.term()
        while self.at("+") or self.at("-"):
            t = self.tok
            self.i += 1
            right = self.term()
            left = (Sum if t.text == "+" else Difference)(left, right, (t.line, t.col))
        return left

    def term(self):
        left = self.unary()
        while self.at("*"):
            t = self.tok
            self.i += 1
            left = Product(left, self.unary(), (t.line, t.col))
        return left

    def unary(self):
        if self.at("-"):
            t = self.tok
            self.i += 1
            return Neg(self.unary(), (t.line, t.col))
        return self.postfix()

    def postfix(self):
        e = self.factor()
        while self.at("("):
            t = self.tok
            self.i += 1
            inner = self.expr()
            self.expect(")")
            e = Compose(e, inner, (t.line, t.col))
        return e

    def args(self, op: _Tok, count: int) -> list:
        self.expect("(")
        out = [self.expr()]
        while self.at(","):
            self.i += 1
            out.append(self.expr())
        self.expect(")")
        if len(out) != count:
            self.error(f"{op.text} takes {count} argument{'s' if count > 1 else ''}, got {len(out)}", op)
        return out

    def index(self) -> Index:
        self.expect("[")
        if self.at(">="):
            self.i += 1
            idx = Index(self.number(), at_least=True)
        elif self.tok.kind == "num":
            idx = Index(self.number())
        else:
            var = self.ident()
            off = 0
            if self.at("+") or self.at("-"):
                sign = 1 if self.tok.text == "+" else -1
                self.i += 1
                off = sign * self.number()
            idx = Index(off, var)
        self.expect("]")
        return idx

    def factor(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "num":
            num = self.number()
            den = 1
            if self.at("/") and self.toks[self.i + 1].kind == "num":
                self.i += 1
                den = self.number()
                if den == 0:
                    self.error("zero denominator", t)
            return Const(mpq(num, den), pos)
        if self.at("("):
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if t.kind != "ident":
            self.error(f"unexpected {t.text or 'end of input'!r}")
        self.i += 1
        name = t.text
        if name == "X":
            return Atom(pos)
        if name in ("E", "D", "quot2"):
            (arg,) = self.args(t, 1)
            return {"E": SetOf, "D": Derivative, "quot2": QuotientS2}[name](arg, pos)
        if name in ("L", "C"):
            idx = self.index()
            (arg,) = self.args(t, 1)
            if name == "L":
                if idx.at_least:
                    self.error("L needs a fixed size; '>=' is only allowed for C and P", t)
                return Lin(idx, arg, pos)
            return Cyc(idx, arg, pos)
        if name == "P":
            idx = self.index()
            corner, side = self.args(t, 2)
            return Polygon(idx, corner, side, pos)
        if name == "sum":
            self.expect("(")
            var = self.ident()
            self.expect(">=")
            lower = self.number()
            self.expect(",")
            body = self.expr()
            self.expect(")")
            return BoundedSum(var, lower, body, pos)
        if self.at("["):
            self.error(f"unknown operator {name!r}", t)
        return Named(name, pos)


def parse(text: str) -> SpeciesSystem:
    """Parse a system of bindings and check names and guardedness (no parameters needed)."""
    system = _Parser(text).system()
    names = set(system.names)
    for b in system.bindings:
        for r in sorted(_refs(b.expr)):
            if r not in names:
                raise SpecError(f"{b.name}: unknown identifier {r!r}")
    check_guarded(system)
    return system


def parse_expr(text: str):
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r} after expression")
    return e


# ---------------------------------------------------------------------------
# pretty printing (inverse of the parser on the abstract syntax)
# ---------------------------------------------------------------------------

def _prec(e) -> int:
    if isinstance(e, (Sum, Difference)):
        return 1
    if isinstance(e, Product):
        return 2
    if isinstance(e, Neg):
        return 3
    return 4


def _wrap(e, level: int) -> str:
    s = pretty(e)
    return f"({s})" if _prec(e) < level else s


def pretty(e) -> str:
    if isinstance(e, SpeciesSystem):
        return "\n".join(f"{b.name} = {pretty(b.expr)};" for b in e.bindings) + "\n"
    if isinstance(e, Atom):
        return "X"
    if isinstance(e, Const):
        v = e.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(e, Named):
        return e.name
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, (Sum, Difference)):
        op = " + " if isinstance(e, Sum) else " - "
        return _wrap(e.left, 1) + op + _wrap(e.right, 2)
    if isinstance(e, Product):
        return _wrap(e.left, 2) + " * " + _wrap(e.right, 3)
    if isinstance(e, Compose):
        return f"{_wrap(e.outer, 4)}({pretty(e.inner)})"
    if isinstance(e, SetOf):
        return f"E({pretty(e.arg)})"
    if isinstance(e, Derivative):
        return f"D({pretty(e.arg)})"
    if isinstance(e, QuotientS2):
        return f"quot2({pretty(e.arg)})"
    if isinstance(e, Lin):
        return f"L[{e.index}]({pretty(e.arg)})"
    if isinstance(e, Cyc):
        return f"C[{e.index}]({pretty(e.arg)})"
    if isinstance(e, Polygon):
        return f"P[{e.index}]({pretty(e.corner)}, {pretty(e.side)})"
    if isinstance(e, BoundedSum):
        return f"sum({e.var} >= {e.lower}, {pretty(e.body)})"
    raise TypeError(f"not a species expression: {e!r}")


# ---------------------------------------------------------------------------
# static analysis: valuations and guardedness
# ---------------------------------------------------------------------------

# Index variables inside sum(...) are instantiated at a few values for analysis;
# every accepted summand has valuation growing with the index, so the smallest
# instances are the binding ones.
_SUM_PROBES = 3
# Parameters that are not supplied yet are analysed at this value (k-gonal: k=3).
_DEFAULT_PARAM = 3


def _idx_range(idx: Index, env: dict) -> int:
    if idx.at_least:
        return idx.value
    if idx.var is not None and idx.var not in env:
        return _DEFAULT_PARAM + idx.value
    return idx.resolve(env)


def _val(e, vals: dict, env: dict) -> float:
    """Lower bound on the valuation of ``e`` given lower bounds ``vals`` for names."""
    if isinstance(e, Atom):
        return 1
    if isinstance(e, Const):
        return 0 if e.value else INF
    if isinstance(e, Named):
        return vals[e.name]
    if isinstance(e, (Sum, Difference)):
        return min(_val(e.left, vals, env), _val(e.right, vals, env))
    if isinstance(e, Neg) or isinstance(e, QuotientS2):
        return _val(e.arg, vals, env)
    if isinstance(e, Product):
        return _val(e.left, vals, env) + _val(e.right, vals, env)
    if isinstance(e, Compose):
        vf, vg = _val(e.outer, vals, env), _val(e.inner, vals, env)
        if vf == INF:
            return INF
        return 0 if vf == 0 else vf * vg
    if isinstance(e, SetOf):
        return 0
    if isinstance(e, (Lin, Cyc)):
        m = _idx_range(e.index, env)
        va = _val(e.arg, vals, env)
        return 0 if m == 0 else m * va
    if isinstance(e, Polygon):
        m = _idx_range(e.index, env)
        return m * (_val(e.corner, vals, env) + _val(e.side, vals, env))
    if isinstance(e, Derivative):
        v = _val(e.arg, vals, env)
        return v if v == INF else max(v - 1, 0)
    if isinstance(e, BoundedSum):
        return min(_val(e.body, vals, {**env, e.var: e.lower + j}, ) for j in range(_SUM_PROBES))
    raise TypeError(e)


def _valuations(system: SpeciesSystem, env: dict) -> dict:
    vals = {n: INF for n in system.names}
    for _ in range(4 * len(vals) + 8):
        new = {b.name: _val(b.expr, vals, env) for b in system.bindings}
        if new == vals:
            return vals
        vals = {k: min(vals[k], new[k]) for k in vals}
    return vals


def _shift(e, target: str, vals: dict, env: dict) -> float:
    """How many layers below ``n`` the references to ``target`` are read when computing layer ``n``."""
    if isinstance(e, Named):
        return 0 if e.name == target else INF
    if isinstance(e, (Atom, Const)):
        return INF
    if isinstance(e, (Sum, Difference)):
        return min(_shift(e.left, target, vals, env), _shift(e.right, target, vals, env))
    if isinstance(e, (Neg, QuotientS2)):
        return _shift(e.arg, target, vals, env)
    if isinstance(e, Product):
        return min(_shift(e.left, target, vals, env) + _val(e.right, vals, env),
                   _shift(e.right, target, vals, env) + _val(e.left, vals, env))
    if isinstance(e, Derivative):
        return _shift(e.arg, target, vals, env) - 1
    if isinstance(e, BoundedSum):
        return min(_shift(e.body, target, vals, {**env, e.var: e.lower + j}) for j in range(_SUM_PROBES))
    if isinstance(e, Compose):
        vg = _val(e.inner, vals, env)
        w_min = max(_val(e.outer, vals, env), 1)
        return min(_shift(e.outer, target, vals, env),
                   _shift(e.inner, target, vals, env) + (w_min - 1) * vg)
    if isinstance(e, SetOf):
        return _shift(e.arg, target, vals, env)
    if isinstance(e, (Lin, Cyc)):
        m = max(_idx_range(e.index, env), 1)
        return _shift(e.arg, target, vals, env) + (m - 1) * _val(e.arg, vals, env)
    if isinstance(e, Polygon):
        m = max(_idx_range(e.index, env), 1)
        vc, vs = _val(e.corner, vals, env), _val(e.side, vals, env)
        return min(_shift(e.corner, target, vals, env) + (m - 1) * vc + m * vs,
                   _shift(e.side, target, vals, env) + m * vc + (m - 1) * vs)
    raise TypeError(e)


def _shift_matrix(system: SpeciesSystem, env: dict):
    vals = _valuations(system, env)
    names = system.names
    return vals, {(a, b): _shift(system[a], b, vals, env) for a in names for b in names}


def check_guarded(system: SpeciesSystem, params: dict | None = None) -> None:
    """Reject systems with a cycle of references whose total valuation gain is < 1.

    The weight of an edge ``A -> B`` is the shift computed by ``_shift``; the
    minimum closed-walk weight is found with Floyd-Warshall.
    """
    env = dict(params or {})
    _, w = _shift_matrix(system, env)
    names = system.names
    dist = dict(w)
    for k in names:
        for i in names:
            dik = dist[i, k]
            if dik == INF:
                continue
            for j in names:
                d = dik + dist[k, j]
                if d < dist[i, j]:
                    dist[i, j] = d
        if any(dist[i, i] < 1 for i in names):
            break
    for n in names:
        if dist[n, n] < 1:
            raise SpecError(f"{n}: unguarded recursion (a cycle of references through {n} "
                            f"does not raise the valuation)")


def _order(system: SpeciesSystem, env: dict) -> list[str]:
    # evaluate dependencies that are read at the same (or a higher) layer first
    _, w = _shift_matrix(system, env)
    names = system.names
    order: list[str] = []
    temp: set[str] = set()

    def visit(n):
        if n in order:
            return
        if n in temp:
            raise SpecError(f"{n}: unguarded recursion")
        temp.add(n)
        for m in names:
            if m != n and w[n, m] <= 0:
                visit(m)
        temp.discard(n)
        order.append(n)

    for n in names:
        visit(n)
    return order


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

class _Evaluator:
    """Evaluates expressions at a demanded precision against current iterates."""

    def __init__(self, state: dict, params: dict):
        self.state = state
        self.params = params
        self.memo: dict = {}
        self.powers: dict = {}

    def ref(self, name: str, s2: bool, need: int):
        v = self.state[name, s2]
        return v.padded(need) if v.truncation < need else v

    def pw(self, base, e: int, need: int):
        # base ** e at truncation need, sharing the chain base, base^2, ...
        key = id(base)
        chain = self.powers.setdefault(key, (base, [CycleIndexSeries.one(need), base]))[1]
        while len(chain) <= e:
            chain.append(cis.mul(chain[-1], base, truncation=need))
        return chain[e]

    def lin(self, m: int, g, s2: bool, need: int):
        if m == 0:
            return S2Series.one(need) if s2 else CycleIndexSeries.one(need)
        if not s2:
            return self.pw(g, m, need)
        e_part = self.pw(g.part_e, m, need)
        half = self.memo.setdefault(("stretch2", id(g.part_e), need),
                                    cis.stretch(g.part_e, 2, truncation=need))
        tau = self.pw(half, m // 2, need)
        if m % 2:
            tau = cis.mul(g.part_tau, tau, truncation=need)
        return S2Series(e_part, tau)

    def eval(self, e, s2: bool, need: int, env: dict):
        key = (e, s2, need, tuple(sorted(env.items())))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        v = self._eval(e, s2, need, env)
        if v.truncation > need:
            v = v.with_truncation(need)
        self.memo[key] = v
        return v

    def _builtin(self, kind: str, m, s2: bool, need: int):
        return g_builtin(kind, m, truncation=need) if s2 else cis.builtin(kind, m, truncation=need)

    def _eval(self, e, s2: bool, need: int, env: dict):
        if isinstance(e, Atom):
            return self._builtin("X", None, s2, need)
        if isinstance(e, Const):
            return S2Series.constant(e.value, need) if s2 else CycleIndexSeries.constant(e.value, need)
        if isinstance(e, Named):
            return self.ref(e.name, s2, need)
        if isinstance(e, Neg):
            return -self.eval(e.arg, s2, need, env)
        if isinstance(e, Sum):
            return self.eval(e.left, s2, need, env) + self.eval(e.right, s2, need, env)
        if isinstance(e, Difference):
            return self.eval(e.left, s2, need, env) - self.eval(e.right, s2, need, env)
        if isinstance(e, Product):
            a, b = self.eval(e.left, s2, need, env), self.eval(e.right, s2, need, env)
            return g_mul(a, b, need) if s2 else cis.mul(a, b, truncation=need)
        if isinstance(e, QuotientS2):
            inner = self.eval(e.arg, True, need, env)
            q = quotient_s2(inner)
            return lift(q) if s2 else q
        if isinstance(e, Derivative):
            a = self.eval(e.arg, s2, need + 1, env)
            if s2:
                return S2Series(cis.derivative(a.part_e), cis.derivative(a.part_tau))
            return cis.derivative(a)
        if isinstance(e, SetOf):
            g = self.eval(e.arg, s2, need, env)
            return g_exp_compose(g) if s2 else cis.exp_compose(g)
        if isinstance(e, Compose):
            f = self.eval(e.outer, s2, need, env)
            g = self.eval(e.inner, s2, need, env)
            return g_plethysm(f, g, need) if s2 else cis.plethysm(f, g, truncation=need)
        if isinstance(e, Lin):
            m = e.index.resolve({**self.params, **env})
            if m < 0:
                raise SpecError(f"negative size in L[{e.index}]")
            return self.lin(m, self.eval(e.arg, s2, need, env), s2, need)
        if isinstance(e, Cyc):
            g = self.eval(e.arg, s2, need, env)
            if e.index.at_least:
                ring = self._builtin("C_>=k", e.index.value, True, need)
                ring = ring if s2 else ring.part_e
            else:
                m = e.index.resolve({**self.params, **env})
                if m < 1:
                    raise SpecError(f"C[{e.index}] needs a positive size")
                ring = self._builtin("C_n", m, s2, need)
            return g_plethysm(ring, g, need) if s2 else cis.plethysm(ring, g, truncation=need)
        if isinstance(e, Polygon):
            sizes = (e.index.value, None) if e.index.at_least else e.index.resolve({**self.params, **env})
            corner = self.eval(e.corner, s2, need, env)
            side = self.eval(e.side, s2, need, env)
            if s2:
                return g_polygon(sizes, corner, side, need)
            lo = sizes[0] if isinstance(sizes, tuple) else sizes
            ring = g_builtin("C_>=k", lo, truncation=need).part_e if isinstance(sizes, tuple) \
                else cis.builtin("C_n", lo, truncation=need)
            return cis.plethysm(ring, cis.mul(corner, side, truncation=need), truncation=need)
        if isinstance(e, BoundedSum):
            total = S2Series.zero(need) if s2 else CycleIndexSeries.zero(need, exact=False)
            for n in range(e.lower, max(need, e.lower) + 1):
                term = self.eval(e.body, s2, need, {**env, e.var: n})
                if term.valuation() < n:
                    raise SpecError(f"sum({e.var} >= {e.lower}, ...): summand valuation "
                                    f"{term.valuation()} is below the index {n}")
                total = total + term
            return total
        raise TypeError(f"not a species expression: {e!r}")


def _modes(system: SpeciesSystem, outputs: list[str], equivariant: bool) -> list[tuple[str, bool]]:
    """Which (binding, S2-mode) pairs are needed to evaluate the outputs."""
    need: set = set()
    todo = [(n, equivariant) for n in outputs]

    def walk(e, s2):
        if isinstance(e, Named):
            todo.append((e.name, s2))
            return
        if isinstance(e, QuotientS2):
            walk(e.arg, True)
            return
        for c in _children(e):
            walk(c, s2)

    while todo:
        key = todo.pop()
        if key in need:
            continue
        need.add(key)
        walk(system[key[0]], key[1])
    return list(need)


def _layers_equal(a, b, n: int) -> bool:
    if isinstance(a, S2Series):
        return _layers_equal(a.part_e, b.part_e, n) and _layers_equal(a.part_tau, b.part_tau, n)
    la = a.layers[n] if n <= a.truncation else {}
    lb = b.layers[n] if n <= b.truncation else {}
    return la == lb


def solve_system(system: SpeciesSystem, N: int, equivariant: bool = False,
                 params: dict | None = None, outputs: list[str] | None = None,
                 stats: dict | None = None) -> dict:
    """Solve ``system`` through layer ``N`` by iteration from the all-zero assignment.

    Returns ``{name: series}`` for every binding needed by ``outputs`` (default:
    :attr:`SpeciesSystem.outputs`).  Values are :class:`S2Series` for bindings
    evaluated with the orientation action (``equivariant=True`` or inside
    ``quot2``), otherwise :class:`CycleIndexSeries`.

    Iterations run in dependency order (Gauss-Seidel); iteration ``t`` works at
    precision ``min(t, N)``.  Layer ``n`` of every binding must be final after
    iteration ``n + len(system.bindings)``; a later change raises
    :class:`AssertionError`, and failing to settle raises :class:`DivergenceError`.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    params = dict(params or {})
    for k, v in params.items():
        if not isinstance(v, int):
            raise SpecError(f"parameter {k!r} must be an integer")
        if k in system.names:
            raise SpecError(f"parameter {k!r} clashes with a binding")
    check_guarded(system, params)
    outputs = list(outputs or system.outputs)
    for n in outputs:
        if n not in system.names:
            raise SpecError(f"unknown output {n!r}")
    keys = _modes(system, outputs, equivariant)
    order = _order(system, params)
    keys.sort(key=lambda k: (order.index(k[0]), not k[1]))
    state = {k: (S2Series.zero(0) if k[1] else CycleIndexSeries.zero(0, exact=False)) for k in keys}
    last_change = {k: {} for k in keys}
    slack = len(system.bindings)
    limit = N + 2 * slack + 4
    it = 0
    while True:
        it += 1
        if it > limit:
            raise DivergenceError(f"no layerwise convergence after {limit} iterations")
        need = min(it, N)
        ev = _Evaluator(state, params)
        changed = False
        for k in keys:
            name, s2 = k
            new = ev.eval(system[name], s2, need, {})
            old = state[k]
            for n in range(need + 1):
                if not _layers_equal(old, new, n):
                    last_change[k][n] = it
                    if it > n + slack + 1:
                        raise AssertionError(f"{name}: layer {n} changed at iteration {it}")
                    changed = True
            state[k] = new
            ev.memo.clear()
            ev.powers.clear()
        if need >= N and not changed:
            break
    if stats is not None:
        stats["iterations"] = it
        stats["last_change"] = last_change
    out = {}
    for name in system.names:
        if (name, equivariant) in state:
            out[name] = state[name, equivariant]
        elif (name, not equivariant) in state:
            out[name] = state[name, not equivariant]
    return out


# ---------------------------------------------------------------------------
# shipped systems
# ---------------------------------------------------------------------------

def shipped_systems() -> list[str]:
    files = importlib.resources.files("polyspecies") / "systems"
    return sorted(p.name[: -len(".species")] for p in files.iterdir() if p.name.endswith(".species"))


def system_text(name: str) -> str:
    path = importlib.resources.files("polyspecies") / "systems" / f"{name}.species"
    if not path.is_file():
        raise FileNotFoundError(f"no shipped system {name!r}; available: {shipped_systems()}")
    return path.read_text()


def load_system(name: str) -> SpeciesSystem:
    return parse(system_text(name))
