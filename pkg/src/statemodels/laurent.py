"""Exact sparse multivariate Laurent polynomials over the integers.

Every state sum in the package lands in this ring. Polynomials are immutable
and hashable; terms map integer exponent vectors (negative entries allowed)
to non-zero Python ints.

    >>> A = LaurentPolynomial.variable("A")
    >>> (A + A**-1) * (A - A**-1)
    LaurentPolynomial('A^2 - A^-2', vars=('A',))
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from typing import Union

__all__ = [
    "VariableSet",
    "LaurentPolynomial",
    "NotDivisibleError",
    "VariableMismatchError",
    "substitute",
    "eliminate_inverse",
    "canonical_text",
    "parse",
]


class VariableMismatchError(ValueError):
    """Raised when two polynomials over different variable sets are combined."""


class NotDivisibleError(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


class VariableSet(tuple):
    """Ordered tuple of distinct variable names."""

    def __new__(cls, names: Iterable[str] = ()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not isinstance(n, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"invalid variable name {n!r}")
        return super().__new__(cls, names)

    def index(self, name: str) -> int:  # type: ignore[override]
        try:
            return super().index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r} (have {tuple(self)})") from None

    def __repr__(self) -> str:
        return f"VariableSet({tuple(self)!r})"


PolyLike = Union["LaurentPolynomial", int]


class LaurentPolynomial:
    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple[int, ...], int] | None = None):
        vs = vars if isinstance(vars, VariableSet) else VariableSet(vars)
        n = len(vs)
        clean: dict[tuple[int, ...], int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self._vars = vs
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, vars: VariableSet, terms: dict) -> LaurentPolynomial:
        # terms must already be canonical
        obj = cls.__new__(cls)
        obj._vars = vars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int, vars: Iterable[str] = ()) -> LaurentPolynomial:
        vs = vars if isinstance(vars, VariableSet) else VariableSet(vars)
        return cls._raw(vs, {(0,) * len(vs): c} if c else {})

    @classmethod
    def zero(cls, vars: Iterable[str] = ()) -> LaurentPolynomial:
        return cls.constant(0, vars)

    @classmethod
    def one(cls, vars: Iterable[str] = ()) -> LaurentPolynomial:
        return cls.constant(1, vars)

    @classmethod
    def variable(cls, name: str, vars: Iterable[str] | None = None) -> LaurentPolynomial:
        vs = VariableSet((name,) if vars is None else vars)
        exp = [0] * len(vs)
        exp[vs.index(name)] = 1
        return cls._raw(vs, {tuple(exp): 1})

    @classmethod
    def monomial(cls, vars: Iterable[str], exponents: Iterable[int], coeff: int = 1) -> LaurentPolynomial:
        return cls(vars, {tuple(exponents): coeff})

    @classmethod
    def variables(cls, *names: str) -> tuple[LaurentPolynomial, ...]:
        """Return the generators of the ring over ``names``, in order."""
        vs = VariableSet(names)
        return tuple(cls.variable(n, vs) for n in names)

    # -- accessors ----------------------------------------------------------
    @property
    def vars(self) -> VariableSet:
        return self._vars

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0,) * len(self._vars), 0)

    def coefficient(self, exponents: Iterable[int]) -> int:
        return self._terms.get(tuple(exponents), 0)

    def degree_range(self, name: str) -> tuple[int, int]:
        """(lowest, highest) exponent of ``name``; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        i = self._vars.index(name)
        exps = [e[i] for e in self._terms]
        return min(exps), max(exps)

    def in_vars(self, vars: Iterable[str]) -> LaurentPolynomial:
        """Re-express over a variable set containing every variable actually used."""
        target = vars if isinstance(vars, VariableSet) else VariableSet(vars)
        if target == self._vars:
            return self
        pos = {n: j for j, n in enumerate(target)}
        out = {}
        for exp, c in self._terms.items():
            new = [0] * len(target)
            for n, e in zip(self._vars, exp):
                if e:
                    if n not in pos:
                        raise VariableMismatchError(f"variable {n!r} is not in {tuple(target)}")
                    new[pos[n]] = e
            out[tuple(new)] = c
        return LaurentPolynomial._raw(target, out)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other: PolyLike) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            if other._vars == self._vars:
                return other
            if other.is_constant():
                return LaurentPolynomial.constant(other.constant_value(), self._vars)
            if self.is_constant():
                raise _Promote(other)
            raise VariableMismatchError(f"variable sets differ: {tuple(self._vars)} vs {tuple(other._vars)}")
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self._vars)
        return NotImplemented

    def _binary(self, other, op):
        try:
            o = self._coerce(other)
        except _Promote as p:
            return op(LaurentPolynomial.constant(self.constant_value(), p.target._vars), p.target)
        if o is NotImplemented:
            return NotImplemented
        return op(self, o)

    @staticmethod
    def _add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
        out = dict(p._terms)
        for exp, c in q._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPolynomial._raw(p._vars, out)

    @staticmethod
    def _mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
        out: dict = {}
        for e1, c1 in p._terms.items():
            for e2, c2 in q._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                out[exp] = out.get(exp, 0) + c1 * c2
        return LaurentPolynomial._raw(p._vars, {e: c for e, c in out.items() if c})

    def __add__(self, other):
        return self._binary(other, LaurentPolynomial._add)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self._binary(other, lambda p, q: LaurentPolynomial._add(p, -q))

    def __rsub__(self, other):
        return self._binary(other, lambda p, q: LaurentPolynomial._add(q, -p))

    def __mul__(self, other):
        return self._binary(other, LaurentPolynomial._mul)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPolynomial:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError(f"cannot raise a {len(self._terms)}-term polynomial to a negative power")
            (exp, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError(f"monomial with coefficient {c} is not invertible over the integers")
            return LaurentPolynomial._raw(self._vars, {tuple(e * n for e in exp): c ** (-n)})
        result = LaurentPolynomial.one(self._vars)
        base = self
        while n:
            if n & 1:
                result = LaurentPolynomial._mul(result, base)
            n >>= 1
            if n:
                base = LaurentPolynomial._mul(base, base)
        return result

    def exact_divide(self, divisor: PolyLike) -> LaurentPolynomial:
        """Return ``q`` with ``q * divisor == self``, or raise :class:`NotDivisibleError`.

        Long division on lex-leading terms. The quotient's exponents in each
        variable are confined to a box fixed by the degree ranges of the
        operands, which bounds the loop.
        """
        if isinstance(divisor, int):
            d = LaurentPolynomial.constant(divisor, self._vars)
        else:
            d = divisor.in_vars(self._vars)
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return self
        n = len(self._vars)
        lo = [min(e[i] for e in self._terms) - min(e[i] for e in d._terms) for i in range(n)]
        hi = [max(e[i] for e in self._terms) - max(e[i] for e in d._terms) for i in range(n)]
        lead_exp = max(d._terms)
        lead_c = d._terms[lead_exp]
        rem = dict(self._terms)
        quot: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, lead_exp))
            if c % lead_c or any(not (l <= x <= h) for l, x, h in zip(lo, qe, hi)):
                raise NotDivisibleError(f"{self} is not divisible by {d}")
            qc = c // lead_c
            quot[qe] = qc
            for de, dc in d._terms.items():
                te = tuple(a + b for a, b in zip(qe, de))
                v = rem.get(te, 0) - qc * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return LaurentPolynomial._raw(self._vars, quot)

    # -- comparison / hashing -------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if self._vars == other._vars:
            return self._terms == other._terms
        if self.is_constant() and other.is_constant():
            return self.constant_value() == other.constant_value()
        return False

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation -----------------------------------------------------------
    def substitute(self, bindings: Mapping[str, PolyLike], vars: Iterable[str] | None = None) -> LaurentPolynomial:
        return substitute(self, bindings, vars)

    def __str__(self) -> str:
        return canonical_text(self)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({canonical_text(self)!r}, vars={tuple(self._vars)!r})"


class _Promote(Exception):
    def __init__(self, target):
        self.target = target


def substitute(p: LaurentPolynomial, bindings: Mapping[str, PolyLike],
               vars: Iterable[str] | None = None) -> LaurentPolynomial:
    """Ring homomorphism sending each variable of ``p`` to its binding.

    Bindings must share one variable set (``vars`` if given); ints are
    promoted. A variable appearing with a negative exponent must be bound to
    a unit monomial; use :func:`eliminate_inverse` for anything else.
    """
    targets = [b for b in bindings.values() if isinstance(b, LaurentPolynomial) and not b.is_constant()]
    if vars is not None:
        tv = VariableSet(vars)
    elif targets:
        tv = targets[0].vars
    else:
        tv = VariableSet(())
    bound: dict[str, LaurentPolynomial] = {}
    for name, val in bindings.items():
        if isinstance(val, int):
            val = LaurentPolynomial.constant(val, tv)
        elif val.vars != tv:
            val = val.in_vars(tv)
        bound[name] = val

    used = [i for i in range(len(p.vars)) if any(e[i] for e in p._terms)]
    for i in used:
        if p.vars[i] not in bound:
            raise KeyError(f"variable {p.vars[i]!r} is not bound")

    cache: dict[tuple[int, int], LaurentPolynomial] = {}

    def power(i: int, e: int) -> LaurentPolynomial:
        key = (i, e)
        if key not in cache:
            base = bound[p.vars[i]]
            if e < 0 and not base.is_monomial():
                raise ValueError(
                    f"cannot substitute {base} for {p.vars[i]!r} at exponent {e}: not a unit monomial")
            cache[key] = base ** e
        return cache[key]

    total = LaurentPolynomial.zero(tv)
    for exp, c in p._terms.items():
        term = LaurentPolynomial.constant(c, tv)
        for i in used:
            if exp[i]:
                term = term * power(i, exp[i])
        total = total + term
    return total


def eliminate_inverse(p: LaurentPolynomial, name: str, value: LaurentPolynomial) -> LaurentPolynomial:
    """Replace a formal variable ``name`` by ``value``, allowing negative powers.

    ``name`` stands for ``value`` with its inverse adjoined formally. All
    negative powers are cleared by multiplying through by ``value**k``; the
    cleared polynomial is evaluated and divided exactly by ``value**k``.
    A remainder means the expression is not a Laurent polynomial and raises
    :class:`NotDivisibleError`.
    """
    rest = VariableSet(v for v in p.vars if v != name)
    value = value.in_vars(rest)
    if not p:
        return LaurentPolynomial.zero(rest)
    i = p.vars.index(name)
    k = max(0, -min(e[i] for e in p._terms))
    shifted = {tuple(x + (k if j == i else 0) for j, x in enumerate(e)): c for e, c in p._terms.items()}
    cleared = LaurentPolynomial._raw(p.vars, shifted)
    binds = {v: LaurentPolynomial.variable(v, rest) for v in rest}
    binds[name] = value
    evaluated = substitute(cleared, binds, rest)
    return evaluated.exact_divide(value ** k) if k else evaluated


# -- text form -----------------------------------------------------------------

def _monomial_text(vars: VariableSet, exp: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(vars, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def canonical_text(p: LaurentPolynomial) -> str:
    """Deterministic text: terms in descending lex order of exponent vectors."""
    if not p:
        return "0"
    out = []
    for exp in sorted(p._terms, reverse=True):
        c = p._terms[exp]
        mono = _monomial_text(p.vars, exp)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(out)


def parse(text: str, vars: Iterable[str] | None = None) -> LaurentPolynomial:
    """Parse polynomial text such as ``"-A^4 - 2*A^-4 + 3"``.

    ``*`` is optional and whitespace is ignored. With ``vars`` given, juxtaposed
    names are split greedily against the known variables (so ``YZ`` reads as
    ``Y*Z``); otherwise each identifier is one variable and the variable set
    is the identifiers in order of first appearance.
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty polynomial text")
    known = VariableSet(vars) if vars is not None else None

    def split_name(name: str) -> list[str]:
        if known is None:
            return [name]
        out, i = [], 0
        names = sorted(known, key=len, reverse=True)
        while i < len(name):
            for n in names:
                if name.startswith(n, i):
                    out.append(n)
                    i += len(n)
                    break
            else:
                raise ValueError(f"unknown variable in {name!r}")
        return out

    # first pass: collect variables when not declared
    if known is None:
        seen: list[str] = []
        for m in re.finditer(r"[A-Za-z_][A-Za-z_0-9]*", compact):
            if m.group(0) not in seen:
                seen.append(m.group(0))
        vs = VariableSet(seen)
    else:
        vs = known

    pos = 0
    total: dict[tuple[int, ...], int] = {}
    expect_term = True
    sign = 1
    n = len(vs)
    while pos < len(compact):
        if compact[pos] in "+-":
            s = 1
            while pos < len(compact) and compact[pos] in "+-":
                if compact[pos] == "-":
                    s = -s
                pos += 1
            sign = s
            expect_term = True
            continue
        if not expect_term:
            raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
        coeff = 1
        exp = [0] * n
        have_factor = False
        while pos < len(compact) and compact[pos] not in "+-":
            if compact[pos] == "*":
                pos += 1
                continue
            m = re.match(r"\d+", compact[pos:])
            if m:
                coeff *= int(m.group(0))
                pos += m.end()
                have_factor = True
                continue
            m = re.match(r"[A-Za-z_][A-Za-z_0-9]*", compact[pos:])
            if not m:
                raise ValueError(f"unexpected character {compact[pos]!r} in {text!r}")
            pos += m.end()
            names = split_name(m.group(0))
            e = 1
            if pos < len(compact) and compact[pos] == "^":
                pm = re.match(r"\^(-?\d+)", compact[pos:])
                if not pm:
                    raise ValueError(f"malformed exponent at position {pos} in {text!r}")
                e = int(pm.group(1))
                pos += pm.end()
            for j, nm in enumerate(names):
                exp[vs.index(nm)] += e if j == len(names) - 1 else 1
            have_factor = True
        if not have_factor:
            raise ValueError(f"dangling sign in {text!r}")
        key = tuple(exp)
        total[key] = total.get(key, 0) + sign * coeff
        sign = 1
        expect_term = False
    if expect_term:
        raise ValueError(f"dangling sign in {text!r}")
    return LaurentPolynomial(vs, total)
