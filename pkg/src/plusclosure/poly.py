"""Sparse multivariate polynomials over F_p.

A :class:`Polynomial` is an immutable mapping from exponent tuples to
nonzero coefficients in ``[0, p)``.  Monomial orders are encoded as integer
keys that are *additive* (``key(m1 * m2) == key(m1) + key(m2)``), which lets
the Groebner engine multiply and compare monomials with plain integer
arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .arith import PrimeModulus, as_modulus

__all__ = [
    "MAX_EXPONENT",
    "VariableSet",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "Ring",
    "Polynomial",
    "ParseError",
    "parse_poly",
    "format_poly",
]

MAX_EXPONENT = 2**32 - 1
_KEY_BITS = 40  # room for partial exponent sums of up to 256 variables
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _check_exponent(e: int) -> int:
    if e < 0 or e > MAX_EXPONENT:
        raise OverflowError(f"exponent {e} outside [0, 2^32)")
    return e


class VariableSet(tuple):
    """Ordered, duplicate-free variable names; earlier names rank higher."""

    def __new__(cls, names: Iterable[str] | str):
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        names = tuple(names)
        for name in names:
            if not isinstance(name, str) or not _NAME.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        return super().__new__(cls, names)

    def index(self, name):  # noqa: D401 - tuple override with a clear error
        try:
            return super().index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}; ambient is {tuple(self)}") from None

    def __repr__(self):
        return f"VariableSet({list(self)})"


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``block`` (grevlex on the first ``k`` variables,
    then grevlex on the rest; eliminates the first ``k``)."""

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.k < 0:
            raise ValueError("block size must be nonnegative")

    @classmethod
    def block(cls, k: int) -> "MonomialOrder":
        return cls("block", k)

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip().lower()
        m = re.fullmatch(r"block\((\d+)\)", text)
        if m:
            return cls.block(int(m.group(1)))
        return cls(text)

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind

    def key(self, exps: tuple[int, ...]) -> int:
        """Integer sort key; larger key means larger monomial."""
        if self.kind == "lex":
            key = 0
            for e in exps:
                key = (key << _KEY_BITS) | e
            return key
        if self.kind == "grevlex":
            return _grevlex_key(exps)
        k = min(self.k, len(exps))
        tail = _grevlex_key(exps[k:])
        return (_grevlex_key(exps[:k]) << (_KEY_BITS * (len(exps) - k))) | tail

    def exps_from_key(self, key: int, nvars: int) -> tuple[int, ...]:
        """Inverse of :meth:`key` for monomials in ``nvars`` variables."""
        if self.kind == "lex":
            return tuple(_split_fields(key, nvars))
        if self.kind == "grevlex":
            return _grevlex_exps(key, nvars)
        k = min(self.k, nvars)
        mask = (1 << (_KEY_BITS * (nvars - k))) - 1
        return _grevlex_exps(key >> (_KEY_BITS * (nvars - k)), k) + _grevlex_exps(key & mask, nvars - k)


def _max_exps(f) -> list[int]:
    return [max(col) for col in zip(*f.terms)]


def _split_fields(key: int, n: int) -> list[int]:
    mask = (1 << _KEY_BITS) - 1
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = key & mask
        key >>= _KEY_BITS
    return out


def _grevlex_key(exps) -> int:
    # fields, most significant first: s_n, s_{n-1}, ..., s_1 with s_j = e_1 + ... + e_j
    partial = []
    s = 0
    for e in exps:
        s += e
        partial.append(s)
    key = 0
    for s in reversed(partial):
        key = (key << _KEY_BITS) | s
    return key


def _grevlex_exps(key: int, n: int) -> tuple[int, ...]:
    partial = _split_fields(key, n)[::-1]
    prev = 0
    out = []
    for s in partial:
        out.append(s - prev)
        prev = s
    return tuple(out)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class Ring:
    """F_p[vars]; a factory for polynomials sharing ambient and modulus."""

    __slots__ = ("vars", "modulus")

    def __init__(self, variables, p):
        self.vars = variables if isinstance(variables, VariableSet) else VariableSet(variables)
        self.modulus = as_modulus(p)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.vars == other.vars and self.modulus == other.modulus

    def __hash__(self):
        return hash((tuple(self.vars), self.modulus.p))

    def __repr__(self):
        return f"Ring(F_{self.p}[{', '.join(self.vars)}])"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name: str) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.vars.index(name)] = 1
        return Polynomial(self, {tuple(exps): 1})

    @property
    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.vars)

    def monomial(self, exps, coeff: int = 1) -> "Polynomial":
        exps = tuple(_check_exponent(int(e)) for e in exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length does not match the ambient")
        return Polynomial(self, {exps: coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self.vars, self.modulus)

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            return obj.to_ring(self)
        if isinstance(obj, str):
            return self.parse(obj)
        return self.constant(int(obj))

    def extend(self, names: Iterable[str], front: bool = False) -> "Ring":
        names = list(names)
        if front:
            return Ring(names + list(self.vars), self.modulus)
        return Ring(list(self.vars) + names, self.modulus)


class Polynomial:
    """Immutable element of F_p[x_1, ..., x_n]; canonical (no zero terms)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, int], _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            p = ring.p
            n = ring.nvars
            clean = {}
            for exps, c in terms.items():
                c = int(c) % p
                if c:
                    if len(exps) != n:
                        raise ValueError("exponent vector length does not match the ambient")
                    clean[tuple(exps)] = c
            self.terms = clean
        self._hash = None

    # -- basic protocol ---------------------------------------------------

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def modulus(self) -> PrimeModulus:
        return self.ring.modulus

    @property
    def ambient(self) -> VariableSet:
        return self.ring.vars

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, {self.ring!r})"

    def __str__(self):
        return format_poly(self)

    def _check(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = (out.get(m, 0) + c) % p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.terms and other.terms:
            for a, b in zip(_max_exps(self), _max_exps(other)):
                _check_exponent(a + b)
        p = self.p
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (get(m, 0) + c1 * c2) % p
        for m in [m for m, c in out.items() if not c]:
            del out[m]
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        c %= self.p
        if not c:
            return self.ring.zero()
        p = self.p
        return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()}, _trusted=True)

    def mul_monomial(self, exps, c: int = 1) -> "Polynomial":
        p = self.p
        c %= p
        if not c:
            return self.ring.zero()
        out = {}
        for m, v in self.terms.items():
            out[tuple(_check_exponent(a + b) for a, b in zip(m, exps))] = v * c % p
        return Polynomial(self.ring, out, _trusted=True)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a nonnegative int, got {e!r}")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius_power(self, q: int) -> "Polynomial":
        """f^q for q a power of p: scale every exponent by q, keep coefficients."""
        if not self.modulus.is_power(q):
            raise ValueError(f"{q} is not a power of the characteristic {self.p}")
        return Polynomial(
            self.ring,
            {tuple(_check_exponent(e * q) for e in m): c for m, c in self.terms.items()},
            _trusted=True,
        )

    def derivative(self, var: str) -> "Polynomial":
        i = self.ring.vars.index(var)
        p = self.p
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            v = c * e % p
            if v:
                out[m[:i] + (e - 1,) + m[i + 1:]] = v
        return Polynomial(self.ring, out, _trusted=True)

    # -- structure --------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, var: str) -> int:
        i = self.ring.vars.index(var)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def coeff(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[tuple[int, ...], int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> tuple[int, ...]:
        return self.leading_term(order)[0]

    def leading_coeff(self, order: MonomialOrder = GREVLEX) -> int:
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(pow(self.leading_coeff(order), -1, self.p))

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def variables(self) -> list[str]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return [v for i, v in enumerate(self.ring.vars) if i in used]

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Re-embed into a ring over the same field whose variables include ours."""
        if ring == self.ring:
            return self
        if ring.modulus != self.ring.modulus:
            raise ValueError("cannot move a polynomial between different characteristics")
        idx = [ring.vars.index(v) for v in self.ring.vars]
        n = ring.nvars
        out = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in zip(idx, m):
                new[i] = e
            out[tuple(new)] = c
        return Polynomial(ring, out, _trusted=True)

    def drop_to(self, ring: Ring) -> "Polynomial":
        """Restrict to a ring on a subset of our variables; unused ones must not occur."""
        keep = {v: i for i, v in enumerate(self.ring.vars)}
        idx = [keep[v] for v in ring.vars]
        dropped = [i for i in range(self.ring.nvars) if i not in idx]
        out = {}
        for m, c in self.terms.items():
            if any(m[i] for i in dropped):
                raise ValueError(f"{self} involves variables outside {ring}")
            out[tuple(m[i] for i in idx)] = c
        return Polynomial(ring, out, _trusted=True)

    def substitute(self, images: Mapping[str, "Polynomial"], ring: Ring | None = None) -> "Polynomial":
        """Ring map sending each variable to its image (unmapped ones map to themselves)."""
        if ring is not None:
            target = ring
        elif images:
            target = next(iter(images.values())).ring
        else:
            target = self.ring
        gens = []
        for v in self.ring.vars:
            img = images.get(v)
            if img is None:
                img = target.gen(v)
            gens.append(img)
        powers: list[dict[int, Polynomial]] = [{} for _ in gens]
        result = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = gens[i] ** e
                    term = term * cache[e]
            result = result + term
        return result

    def divexact(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient self / other; raises ArithmeticError if it does not divide."""
        q, r = self.divmod_single(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divmod_single(self, other: "Polynomial", order: MonomialOrder = LEX) -> tuple["Polynomial", "Polynomial"]:
        """Division by one polynomial w.r.t. ``order``; remainder has no term divisible by LM(other)."""
        other = self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_term(order)
        inv = pow(lc, -1, self.p)
        p = self.p
        rem = dict(self.terms)
        quo: dict = {}
        out_rem: dict = {}
        key = order.key
        while rem:
            m = max(rem, key=key)
            c = rem.pop(m)
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(a - b for a, b in zip(m, lm))
                f = c * inv % p
                quo[shift] = (quo.get(shift, 0) + f) % p
                for m2, c2 in other.terms.items():
                    if m2 == lm:
                        continue
                    t = tuple(a + b for a, b in zip(m2, shift))
                    v = (rem.get(t, 0) - f * c2) % p
                    if v:
                        rem[t] = v
                    else:
                        rem.pop(t, None)
            else:
                out_rem[m] = c
        return Polynomial(self.ring, quo), Polynomial(self.ring, out_rem, _trusted=True)


# -- text format ------------------------------------------------------------


class ParseError(ValueError):
    """Malformed polynomial text; carries 1-based line and column."""

    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = col
        self.pos = pos
        super().__init__(f"{message} at line {line}, column {col}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*^]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("var", m.group(2), start))
        else:
            toks.append((m.group(3), m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_poly(text: str, ambient, p) -> Polynomial:
    """Parse ``expr := term (('+'|'-') term)*`` with ``term := factor ('*' factor)*``
    and ``factor := integer | var ('^' integer)?``.  A leading sign is accepted."""
    ring = ambient if isinstance(ambient, Ring) else Ring(ambient, p)
    modp = ring.p
    index = {v: i for i, v in enumerate(ring.vars)}
    n = ring.nvars
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind):
        nonlocal pos
        tok = toks[pos]
        if tok[0] != kind:
            want = "number or variable" if kind == "factor" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", text, tok[2])
        pos += 1
        return tok

    def factor(exps, coeff):
        nonlocal pos
        tok = peek()
        if tok[0] == "int":
            pos += 1
            return coeff * tok[1] % modp
        if tok[0] == "var":
            pos += 1
            if tok[1] not in index:
                raise ParseError(f"unknown variable {tok[1]!r}", text, tok[2])
            e = 1
            if peek()[0] == "^":
                pos += 1
                etok = take("int")
                e = etok[1]
                if e > MAX_EXPONENT:
                    raise ParseError(f"exponent {e} overflows 32 bits", text, etok[2])
            i = index[tok[1]]
            exps[i] += e
            if exps[i] > MAX_EXPONENT:
                raise ParseError("exponent overflows 32 bits", text, tok[2])
            return coeff
        got = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"expected number or variable, got {got}", text, tok[2])

    def term(sign):
        nonlocal pos
        exps = [0] * n
        coeff = factor(exps, sign)
        while peek()[0] == "*":
            pos += 1
            coeff = factor(exps, coeff)
        return tuple(exps), coeff

    out: dict = {}
    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if peek()[0] == "-" else 1
        pos += 1
    while True:
        m, c = term(sign)
        out[m] = (out.get(m, 0) + c) % modp
        tok = peek()
        if tok[0] == "end":
            break
        if tok[0] not in ("+", "-"):
            raise ParseError(f"expected '+', '-' or end of input, got {tok[1]!r}", text, tok[2])
        sign = -1 if tok[0] == "-" else 1
        pos += 1
    return Polynomial(ring, out)


def format_poly(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Render in the parse grammar, terms in descending ``order``; coefficients
    above p/2 are printed as negatives."""
    if not f.terms:
        return "0"
    p = f.p
    names = f.ring.vars
    pieces = []
    for m, c in f.sorted_terms(order):
        neg = c > p // 2 and p > 2
        mag = p - c if neg else c
        factors = []
        for v, e in zip(names, m):
            if e == 1:
                factors.append(v)
            elif e:
                factors.append(f"{v}^{e}")
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)
