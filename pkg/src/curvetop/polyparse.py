"""Reading bivariate integer polynomials from text or JSON.

Text grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'x' | 'y' | '(' expr ')'

Juxtaposition such as ``2x`` is rejected.  JSON input has the form
``{"terms": [[i, j, "coeff"], ...]}`` for sum coeff * x**i * y**j.
"""

from __future__ import annotations

import json
import re

from .bpoly import IntPoly2

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)|([xXyY])|(\S))")


class ParseError(ValueError):
    """Malformed polynomial input; ``pos`` is a 0-based character offset."""

    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} at position {pos}")


class DegreeTooLarge(ValueError):
    """The polynomial exceeds the configured degree cap."""


# polynomials are dicts {(i, j): coeff} while parsing

def _add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + sign * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), u in a.items():
        for (i2, j2), v in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + u * v
    return {k: v for k, v in out.items() if v}


def _degree(a: dict) -> int:
    return max((i + j for i, j in a), default=0)


class _Parser:
    def __init__(self, text: str, max_degree: int | None):
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            start = m.start(m.lastindex)
            num, var, op = m.groups()
            if num is not None:
                if not num.isdigit():
                    raise ParseError(f"non-integer coefficient {num!r}", start)
                self.toks.append(("int", int(num), start))
            elif var is not None:
                self.toks.append(("var", var.lower(), start))
            elif op in "+-*^()":
                self.toks.append(("op", op, start))
            else:
                raise ParseError(f"unexpected character {op!r}", start)
            pos = m.end()
        self.toks.append(("end", None, len(text)))
        self.i = 0
        self.cap = max_degree

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def check(self, a: dict, pos: int) -> dict:
        if self.cap is not None and _degree(a) > self.cap:
            raise DegreeTooLarge(f"degree exceeds {self.cap} (at position {pos})")
        return a

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return e

    def expr(self) -> dict:
        acc = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = 1 if self.take()[1] == "+" else -1
            acc = _add(acc, self.term(), sign)
        return acc

    def term(self) -> dict:
        acc = self.unary()
        while True:
            kind, val, pos = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = self.check(_mul(acc, self.unary()), pos)
            elif kind in ("int", "var") or (kind, val) == ("op", "("):
                raise ParseError("implicit multiplication is not allowed; use '*'", pos)
            else:
                return acc

    def unary(self) -> dict:
        kind, val, _ = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return {k: -v for k, v in self.unary().items()}
        if (kind, val) == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        kind, val, pos = self.peek()
        if (kind, val) != ("op", "^"):
            return base
        self.take()
        kind, e, epos = self.take()
        if kind != "int":
            raise ParseError("exponent must be a nonnegative integer", epos)
        if self.cap is not None and _degree(base) * e > self.cap:
            raise DegreeTooLarge(f"degree exceeds {self.cap} (at position {pos})")
        out = {(0, 0): 1}
        for _ in range(e):
            out = _mul(out, base)
        return out

    def atom(self) -> dict:
        kind, val, pos = self.take()
        if kind == "int":
            return {(0, 0): val} if val else {}
        if kind == "var":
            return {(1, 0): 1} if val == "x" else {(0, 1): 1}
        if (kind, val) == ("op", "("):
            e = self.expr()
            k2, v2, p2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ParseError("expected ')'", p2)
            return e
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_poly(text: str, max_degree: int | None = None) -> IntPoly2:
    """Parse an expression such as ``"x^2 + y^2 - 1"``."""
    return IntPoly2.from_dict(_Parser(text, max_degree).parse())


def parse_terms_json(data, max_degree: int | None = None) -> IntPoly2:
    """Polynomial from ``{"terms": [[i, j, "coeff"], ...]}`` (string or parsed)."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", e.pos) from None
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
        raise ParseError('JSON input needs a "terms" list')
    acc: dict = {}
    for n, t in enumerate(data["terms"]):
        if not (isinstance(t, list) and len(t) == 3):
            raise ParseError(f"term {n} is not a triple [i, j, coeff]")
        i, j, c = t
        if not (isinstance(i, int) and isinstance(j, int)) or isinstance(i, bool) \
                or isinstance(j, bool) or i < 0 or j < 0:
            raise ParseError(f"term {n}: exponents must be nonnegative integers")
        if isinstance(c, str):
            s = c.strip()
            if not re.fullmatch(r"[-+]?\d+", s):
                raise ParseError(f"term {n}: non-integer coefficient {c!r}")
            c = int(s)
        elif not isinstance(c, int) or isinstance(c, bool):
            raise ParseError(f"term {n}: non-integer coefficient {c!r}")
        if max_degree is not None and c and i + j > max_degree:
            raise DegreeTooLarge(f"degree exceeds {max_degree} (term {n})")
        acc = _add(acc, {(i, j): c} if c else {})
    return IntPoly2.from_dict(acc)


def read_poly(text: str, max_degree: int | None = None) -> IntPoly2:
    """Text or JSON input, told apart by a leading '{'."""
    if text.lstrip().startswith("{"):
        return parse_terms_json(text, max_degree)
    return parse_poly(text, max_degree)
