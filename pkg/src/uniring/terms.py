"""First-order terms: representation, unification, matching, text format.

A term is either a variable (a plain ``int``) or an application
``(name, arg1, ..., argn)`` where ``name`` is the symbol and the args are
terms; a constant is a 1-tuple ``(name,)``.  This flat representation keeps
hashing, equality and renaming cheap, which matters because unification and
matching sit in every inner loop of the package.

Reserved symbols: the dummy constant ``#`` (printed ``#``), the infix binary
``*`` (right associating), the direction constants ``l`` and ``r``, and the
unary position marker ``m``.

Concrete syntax (used by every file format):

* variables ``[A-Z][A-Za-z0-9_]*``
* constants / function symbols ``[a-z][A-Za-z0-9_]*``
* the star constant ``#``
* infix bullet ``*``, right associating: ``a*b*c`` is ``a*(b*c)``
* application ``f(t1,...,tn)``; ``%`` starts a line comment
"""

from __future__ import annotations

import re
from typing import Iterator, Optional, Union

from .errors import MatchSubjectOpenError, ParseError, SymbolArityError

Term = Union[int, tuple]
Subst = dict[int, Term]

STAR_NAME = "#"
BULLET_NAME = "*"
LEFT_NAME = "l"
RIGHT_NAME = "r"
MARK_NAME = "m"

STAR: Term = (STAR_NAME,)
LEFT: Term = (LEFT_NAME,)
RIGHT: Term = (RIGHT_NAME,)

RESERVED_ARITIES = {
    STAR_NAME: 0,
    BULLET_NAME: 2,
    LEFT_NAME: 0,
    RIGHT_NAME: 0,
    MARK_NAME: 1,
}


def var(i: int) -> Term:
    return i


def app(name: str, *args: Term) -> Term:
    return (name, *args)


def bullet(left: Term, right: Term) -> Term:
    return (BULLET_NAME, left, right)


def bullet_chain(*parts: Term) -> Term:
    """Right-associated bullet chain: ``bullet_chain(a, b, c) = a*(b*c)``."""
    if not parts:
        raise ValueError("empty bullet chain")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = (BULLET_NAME, p, out)
    return out


def mark(t: Term) -> Term:
    return (MARK_NAME, t)


def is_var(t: Term) -> bool:
    return isinstance(t, int)


def is_closed(t: Term) -> bool:
    if isinstance(t, int):
        return False
    return all(is_closed(a) for a in t[1:])


def height(t: Term) -> int:
    """Maximal distance from the root; 0 for variables and constants."""
    if isinstance(t, int) or len(t) == 1:
        return 0
    return 1 + max(height(a) for a in t[1:])


def term_vars(t: Term) -> list[int]:
    """Variables of t in first-occurrence order."""
    seen: list[int] = []
    stack = [t]
    while stack:
        s = stack.pop(0)
        if isinstance(s, int):
            if s not in seen:
                seen.append(s)
        else:
            stack[0:0] = list(s[1:])
    return seen


def variable_heights(t: Term) -> dict[int, frozenset[int]]:
    """Map each variable to the set of depths at which it occurs."""
    acc: dict[int, set[int]] = {}
    stack: list[tuple[Term, int]] = [(t, 0)]
    while stack:
        s, d = stack.pop()
        if isinstance(s, int):
            acc.setdefault(s, set()).add(d)
        else:
            stack.extend((a, d + 1) for a in s[1:])
    return {v: frozenset(ds) for v, ds in acc.items()}


def term_symbols(t: Term, into: Optional[dict[str, int]] = None) -> dict[str, int]:
    """Collect symbol arities; raises SymbolArityError on an inconsistency."""
    acc = {} if into is None else into
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, int):
            continue
        name, arity = s[0], len(s) - 1
        old = acc.get(name)
        if old is None:
            acc[name] = arity
        elif old != arity:
            raise SymbolArityError(f"symbol {name} used with arities {old} and {arity}")
        stack.extend(s[1:])
    return acc


def subst_apply(t: Term, s: Subst) -> Term:
    if isinstance(t, int):
        return s.get(t, t)
    if len(t) == 1:
        return t
    return (t[0], *(subst_apply(a, s) for a in t[1:]))


def shift_vars(t: Term, offset: int) -> Term:
    if isinstance(t, int):
        return t + offset
    if len(t) == 1:
        return t
    return (t[0], *(shift_vars(a, offset) for a in t[1:]))


def _walk(t: Term, s: Subst) -> Term:
    while isinstance(t, int) and t in s:
        t = s[t]
    return t


def _occurs(v: int, t: Term, s: Subst) -> bool:
    stack = [t]
    while stack:
        u = _walk(stack.pop(), s)
        if isinstance(u, int):
            if u == v:
                return True
        else:
            stack.extend(u[1:])
    return False


def _resolve(s: Subst) -> Subst:
    # Turn the binding map into an idempotent substitution: every right-hand
    # side is fully rewritten.  Terminates because the occurs check kept the
    # binding graph acyclic.
    cache: dict[int, Term] = {}

    def res(t: Term) -> Term:
        if isinstance(t, int):
            if t in cache:
                return cache[t]
            if t in s:
                out = res(s[t])
                cache[t] = out
                return out
            return t
        if len(t) == 1:
            return t
        return (t[0], *(res(a) for a in t[1:]))

    return {v: res(rhs) for v, rhs in s.items()}


def unify(t: Term, u: Term) -> Optional[Subst]:
    """Most general unifier of t and u, or None.

    The result is idempotent: applying it twice equals applying it once.
    Symbol clash, arity clash and occurs-check failure all yield None.
    """
    s: Subst = {}
    stack = [(t, u)]
    while stack:
        a, b = stack.pop()
        a = _walk(a, s)
        b = _walk(b, s)
        if a == b:
            continue
        if isinstance(a, int):
            if _occurs(a, b, s):
                return None
            s[a] = b
        elif isinstance(b, int):
            if _occurs(b, a, s):
                return None
            s[b] = a
        else:
            if a[0] != b[0] or len(a) != len(b):
                return None
            stack.extend(zip(a[1:], b[1:]))
    return _resolve(s)


def match_term(pattern: Term, subject: Term) -> Optional[Subst]:
    """Substitution s with pattern*s == subject, or None.

    The subject must be closed; an open subject is a contract violation and
    raises MatchSubjectOpenError rather than returning None.
    """
    if not is_closed(subject):
        raise MatchSubjectOpenError(f"match subject is not closed: {format_term(subject)}")
    s: Subst = {}
    stack = [(pattern, subject)]
    while stack:
        p, o = stack.pop()
        if isinstance(p, int):
            bound = s.get(p)
            if bound is None:
                s[p] = o
            elif bound != o:
                return None
        else:
            if p[0] != o[0] or len(p) != len(o):
                return None
            stack.extend(zip(p[1:], o[1:]))
    return s


def rename_apart(t: Term, avoid: set[int]) -> Term:
    """Bijectively rename the variables of t away from `avoid`."""
    fresh = max(avoid, default=-1) + 1
    mapping: dict[int, int] = {}
    for v in term_vars(t):
        if v in avoid:
            mapping[v] = fresh
            fresh += 1
    # keep non-clashing variables unless they collide with a fresh pick
    taken = avoid | set(mapping.values())
    for v in term_vars(t):
        if v not in mapping and v in taken:
            mapping[v] = fresh
            fresh += 1
    return subst_apply(t, mapping) if mapping else t


def disjoint(t: Term, u: Term) -> bool:
    """True iff renamed-apart copies of t and u do not unify."""
    off = max(term_vars(t), default=-1) + 1
    return unify(t, shift_vars(u, off + max(term_vars(u), default=0) + 1)) is None


def canonicalize(*terms: Term) -> tuple[Term, ...]:
    """Renumber variables 0,1,2,... in first-occurrence order across `terms`."""
    mapping: dict[int, int] = {}

    def walk(t: Term) -> Term:
        if isinstance(t, int):
            if t not in mapping:
                mapping[t] = len(mapping)
            return mapping[t]
        if len(t) == 1:
            return t
        return (t[0], *(walk(a) for a in t[1:]))

    return tuple(walk(t) for t in terms)


# ---------------------------------------------------------------------------
# printing

def format_term(t: Term) -> str:
    if isinstance(t, int):
        return f"X{t}"
    name = t[0]
    if name == BULLET_NAME:
        left, right = t[1], t[2]
        ls = format_term(left)
        if not isinstance(left, int) and left[0] == BULLET_NAME:
            ls = f"({ls})"
        return f"{ls}*{format_term(right)}"
    if len(t) == 1:
        return name
    return f"{name}({','.join(format_term(a) for a in t[1:])})"


# ---------------------------------------------------------------------------
# symbol table and parser

class SymbolTable:
    """Name -> arity registry; the reserved symbols are preloaded."""

    def __init__(self) -> None:
        self.arities: dict[str, int] = dict(RESERVED_ARITIES)

    def check(self, name: str, arity: int, line: int = 0, column: int = 0) -> None:
        old = self.arities.get(name)
        if old is None:
            self.arities[name] = arity
        elif old != arity:
            raise ParseError(
                f"symbol {name} already declared with arity {old}, used with arity {arity}",
                line,
                column,
            )


_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t]+)
      | (?P<comment>%[^\n]*)
      | (?P<nl>\n)
      | (?P<arrow><-)
      | (?P<var>[A-Z][A-Za-z0-9_]*)
      | (?P<name>[a-z][A-Za-z0-9_]*)
      | (?P<star>\#)
      | (?P<bullet>\*)
      | (?P<lpar>\()
      | (?P<rpar>\))
      | (?P<comma>,)
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str, first_line: int = 1) -> Iterator[_Token]:
    line, col, pos = first_line, 1, 0
    while pos < len(text):
        mo = _TOKEN_RE.match(text, pos)
        if mo is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = mo.lastgroup
        tok = mo.group()
        if kind == "nl":
            yield _Token("nl", tok, line, col)
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(tok)
        else:
            yield _Token(kind, tok, line, col)
            col += len(tok)
        pos = mo.end()
    yield _Token("eof", "", line, col)


class _Parser:
    def __init__(self, text: str, table: SymbolTable, first_line: int = 1):
        self.tokens = [t for t in _tokenize(text, first_line)]
        self.i = 0
        self.table = table
        self.varmap: dict[str, int] = {}

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, what: str) -> _Token:
        t = self.next()
        if t.kind != kind:
            raise ParseError(f"expected {what}, found {t.text or 'end of input'!r}", t.line, t.column)
        return t

    def skip_newlines(self) -> None:
        while self.peek().kind == "nl":
            self.next()

    def term(self) -> Term:
        left = self.atom()
        if self.peek().kind == "bullet":
            self.next()
            right = self.term()  # right associating
            return (BULLET_NAME, left, right)
        return left

    def atom(self) -> Term:
        t = self.next()
        if t.kind == "var":
            if t.text not in self.varmap:
                self.varmap[t.text] = len(self.varmap)
            return self.varmap[t.text]
        if t.kind == "star":
            return STAR
        if t.kind == "lpar":
            inner = self.term()
            self.expect("rpar", "')'")
            return inner
        if t.kind == "name":
            if self.peek().kind == "lpar":
                self.next()
                args = [self.term()]
                while self.peek().kind == "comma":
                    self.next()
                    args.append(self.term())
                self.expect("rpar", "')' or ','")
                self.table.check(t.text, len(args), t.line, t.column)
                return (t.text, *args)
            self.table.check(t.text, 0, t.line, t.column)
            return (t.text,)
        raise ParseError(f"expected a term, found {t.text or 'end of input'!r}", t.line, t.column)


def parse_term(text: str, table: Optional[SymbolTable] = None) -> Term:
    p = _Parser(text, table or SymbolTable())
    p.skip_newlines()
    t = p.term()
    p.skip_newlines()
    end = p.peek()
    if end.kind != "eof":
        raise ParseError(f"trailing input {end.text!r}", end.line, end.column)
    return t


def parse_flow_parts(
    text: str, table: Optional[SymbolTable] = None, first_line: int = 1
) -> tuple[Term, Term]:
    """Parse one ``HEAD <- BODY`` line into a raw (head, body) term pair."""
    p = _Parser(text, table or SymbolTable(), first_line)
    p.skip_newlines()
    head = p.term()
    p.expect("arrow", "'<-'")
    body = p.term()
    p.skip_newlines()
    end = p.peek()
    if end.kind != "eof":
        raise ParseError(f"trailing input {end.text!r}", end.line, end.column)
    return head, body
