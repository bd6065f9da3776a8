"""Differential operators over a 3D contact frame X, Y, T.

The frame satisfies

    [X,Y] = c0 T + c1 X + c2 Y,   [X,T] = c3 X + c4 Y,   [Y,T] = c5 X + c6 Y

with c0 nowhere vanishing.  Coefficients (`CoefPoly`) are commutative
polynomials with rational coefficients in the symbols W(c_i), where W ranges
over normal-ordered words X^a Y^b T^t, plus a formal inverse of c0.  Operators
(`NCOperator`) are finite sums f * X^a Y^b T^t.

The c_i are not free: d^2 = 0 on 2-forms forces

    T(c0) = -c0 (c3 + c6)
    T(c1) = -X(c5) + Y(c3) - c1 c6 + c2 c5
    T(c2) = -X(c6) + Y(c4) - c2 c3 + c1 c4

so every symbol W(c_i) with i <= 2 and a T in W is rewritten through these
relations.  Equality of canonical forms is therefore equality modulo the
differential ideal they generate.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Symbol = tuple[int, int, int, int]          # (i, a, b, t): X^a Y^b T^t applied to c_i
Monomial = tuple[tuple[Symbol, int], ...]    # sorted (symbol, exponent) pairs
OpMono = tuple[int, int, int]                # (a, b, t) for X^a Y^b T^t

GENERATORS = ("X", "Y", "T")
OP_WEIGHT = {"X": 1, "Y": 1, "T": 2}


def _sym_key(s: Symbol):
    i, a, b, t = s
    return (a + b + t, i, -a, -b, -t)


def symbol_name(s: Symbol) -> str:
    i, a, b, t = s
    out = f"c{i}"
    for letter in reversed("X" * a + "Y" * b + "T" * t):
        out = f"{letter}({out})"
    return out


def _mono_key(m: Monomial):
    order = sum(sum(s[1:]) * e for s, e in m)
    degree = sum(abs(e) for _, e in m)
    return (order, degree, tuple((_sym_key(s), e) for s, e in m))


def _mono_mul(m: Monomial, n: Monomial) -> Monomial:
    exps = dict(m)
    for s, e in n:
        exps[s] = exps.get(s, 0) + e
    for s, e in exps.items():
        if e < 0 and s != (0, 0, 0, 0):
            raise ValueError(f"negative power of {symbol_name(s)}")
    return tuple(sorted(((s, e) for s, e in exps.items() if e), key=lambda p: _sym_key(p[0])))


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_mono(m: Monomial) -> list[str]:
    return [symbol_name(s) if e == 1 else f"{symbol_name(s)}^{e}" for s, e in m]


def _fmt_opmono(o: OpMono) -> list[str]:
    return [g if e == 1 else f"{g}^{e}" for g, e in zip(GENERATORS, o) if e]


def _join_terms(terms: list[tuple[Fraction, list[str]]]) -> str:
    if not terms:
        return "0"
    out = []
    for q, factors in terms:
        mag = abs(q)
        parts = list(factors)
        if mag != 1 or not parts:
            parts.insert(0, _fmt_rational(mag))
        body = "*".join(parts)
        if not out:
            out.append(("-" if q < 0 else "") + body)
        else:
            out.append((" - " if q < 0 else " + ") + body)
    return "".join(out)


Scalar = Union[int, Fraction]


class CoefPoly:
    """Commutative polynomial in the c-symbols; immutable, canonical."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        self.terms = {m: Fraction(q) for m, q in (terms or {}).items() if q}

    @classmethod
    def const(cls, q: Scalar) -> "CoefPoly":
        return cls({(): Fraction(q)})

    @classmethod
    def raw_symbol(cls, s: Symbol, e: int = 1) -> "CoefPoly":
        return cls({((s, e),): Fraction(1)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CoefPoly.const(other)
        return isinstance(other, CoefPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _as_coef(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, q in other.terms.items():
            out[m] = out.get(m, 0) + q
        return CoefPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CoefPoly({m: -q for m, q in self.terms.items()})

    def __sub__(self, other):
        other = _as_coef(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_coef(other) - self

    def __mul__(self, other):
        other = _as_coef(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m, q in self.terms.items():
            for n, r in other.terms.items():
                k = _mono_mul(m, n)
                out[k] = out.get(k, 0) + q * r
        return CoefPoly(out)

    def __rmul__(self, other):
        return _as_coef(other) * self

    def __pow__(self, e: int):
        out = CoefPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda p: _mono_key(p[0]))

    def symbols(self) -> set[Symbol]:
        return {s for m in self.terms for s, _ in m}

    def substitute(self, fn) -> "CoefPoly":
        """Replace each symbol s by fn(s).  Negative powers need fn(s) = s or a nonzero rational."""
        out = CoefPoly()
        for m, q in self.terms.items():
            acc = CoefPoly.const(q)
            for s, e in m:
                v = _as_coef(fn(s))
                if e >= 0:
                    acc = acc * v ** e
                elif v == CoefPoly.raw_symbol(s):
                    acc = acc * CoefPoly.raw_symbol(s, e)
                elif set(v.terms) == {()}:
                    acc = acc * CoefPoly.const(1 / v.terms[()] ** -e)
                else:
                    raise ValueError(f"cannot invert the value substituted for {symbol_name(s)}")
            out = out + acc
        return out

    def text(self) -> str:
        return _join_terms([(q, _fmt_mono(m)) for m, q in self.sorted_terms()])

    def __repr__(self):
        return f"CoefPoly({self.text()})"


def _as_coef(x):
    if isinstance(x, CoefPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return CoefPoly.const(x)
    return NotImplemented


class NCOperator:
    """Sum of f * X^a Y^b T^t with f a `CoefPoly`; immutable, normal-ordered."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[OpMono, CoefPoly] | None = None):
        self.terms = {o: f for o, f in (terms or {}).items() if f}

    @classmethod
    def coef(cls, f) -> "NCOperator":
        return cls({(0, 0, 0): _as_coef(f)})

    @classmethod
    def monomial(cls, o: OpMono, f=1) -> "NCOperator":
        return cls({o: _as_coef(f)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = _as_op(other)
        return other is not NotImplemented and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _as_op(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for o, f in other.terms.items():
            out[o] = out[o] + f if o in out else f
        return NCOperator(out)

    __radd__ = __add__

    def __neg__(self):
        return NCOperator({o: -f for o, f in self.terms.items()})

    def __sub__(self, other):
        other = _as_op(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_op(other) - self

    def __mul__(self, other):
        """Composition self ∘ other."""
        other = _as_op(other)
        if other is NotImplemented:
            return NotImplemented
        return nc_multiply(self, other)

    def __rmul__(self, other):
        # a coefficient on the left multiplies without differentiating
        f = _as_coef(other)
        if f is NotImplemented:
            return NotImplemented
        return NCOperator({o: f * g for o, g in self.terms.items()})

    def order(self) -> int:
        return max((sum(o) for o in self.terms), default=0)

    def zeroth_order(self) -> CoefPoly:
        return self.terms.get((0, 0, 0), CoefPoly())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda p: (sum(p[0]),) + p[0], reverse=True)

    def map_coefficients(self, fn) -> "NCOperator":
        return NCOperator({o: fn(f) for o, f in self.terms.items()})

    def text(self) -> str:
        terms = []
        for o, f in self.sorted_terms():
            for m, q in f.sorted_terms():
                terms.append((q, _fmt_mono(m) + _fmt_opmono(o)))
        return _join_terms(terms)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"NCOperator({self.text()})"


def _as_op(x):
    if isinstance(x, NCOperator):
        return x
    f = _as_coef(x)
    if f is NotImplemented:
        return NotImplemented
    return NCOperator.coef(f)


# ---------------------------------------------------------------------------
# structure functions and normal ordering
#
# Termination: left-multiplying a normal monomial by a generator only moves
# that generator rightwards past letters that precede it in X < Y < T.  Each
# swap replaces the pair by its normal-ordered product plus a bracket term of
# strictly smaller length, so the induction is on (length, number of
# inversions).  Derivatives of coefficients produced on the way are symbols of
# order at most the current length, handled by the same induction.


def c(i: int) -> CoefPoly:
    return CoefPoly.raw_symbol((i, 0, 0, 0))


C0_INV = CoefPoly.raw_symbol((0, 0, 0, 0), -1)

_JACOBI_T = {
    0: lambda: -c(0) * (c(3) + c(6)),
    1: lambda: -CoefPoly.raw_symbol((5, 1, 0, 0)) + CoefPoly.raw_symbol((3, 0, 1, 0)) - c(1) * c(6) + c(2) * c(5),
    2: lambda: -CoefPoly.raw_symbol((6, 1, 0, 0)) + CoefPoly.raw_symbol((4, 0, 1, 0)) - c(2) * c(3) + c(1) * c(4),
}


@lru_cache(maxsize=None)
def symbol_value(s: Symbol) -> CoefPoly:
    """W(c_i) reduced by the Jacobi relations for T-derivatives of c0, c1, c2."""
    i, a, b, t = s
    if t >= 1 and i in _JACOBI_T:
        return apply_word((a, b, t - 1), _JACOBI_T[i]())
    return CoefPoly.raw_symbol(s)


def apply_word(o: OpMono, f: CoefPoly) -> CoefPoly:
    """(X^a Y^b T^t)(f): apply T first, X last."""
    a, b, t = o
    for g, e in (("T", t), ("Y", b), ("X", a)):
        for _ in range(e):
            f = derive(f, g)
    return f


@lru_cache(maxsize=None)
def derive_symbol(s: Symbol, g: str) -> CoefPoly:
    i, a, b, t = s
    out = CoefPoly()
    for o, f in gen_times_monomial(g, (a, b, t)).terms.items():
        out = out + f * symbol_value((i,) + o)
    return out


def derive(f: CoefPoly, g: str) -> CoefPoly:
    """Vector field g applied to f (Leibniz; V(c0^-1) = -c0^-2 V(c0) falls out of e = -1)."""
    acc = CoefPoly()
    for m, q in f.terms.items():
        for idx, (s, e) in enumerate(m):
            rest = m[:idx] + (((s, e - 1),) if e - 1 else ()) + m[idx + 1:]
            acc = acc + CoefPoly({rest: q * e}) * derive_symbol(s, g)
    return acc


_X, _Y, _T = (1, 0, 0), (0, 1, 0), (0, 0, 1)


@lru_cache(maxsize=None)
def gen_times_monomial(g: str, o: OpMono) -> NCOperator:
    """Normal form of g ∘ X^a Y^b T^t."""
    a, b, t = o
    if g == "X":
        return NCOperator.monomial((a + 1, b, t))
    if g == "Y":
        if a == 0:
            return NCOperator.monomial((0, b + 1, t))
        rest = (a - 1, b, t)
        # Y X = X Y - c0 T - c1 X - c2 Y
        return (gen_times_operator("X", gen_times_monomial("Y", rest))
                - c(0) * gen_times_monomial("T", rest)
                - c(1) * gen_times_monomial("X", rest)
                - c(2) * gen_times_monomial("Y", rest))
    if g == "T":
        if a > 0:
            rest = (a - 1, b, t)
            # T X = X T - c3 X - c4 Y
            return (gen_times_operator("X", gen_times_monomial("T", rest))
                    - c(3) * gen_times_monomial("X", rest)
                    - c(4) * gen_times_monomial("Y", rest))
        if b > 0:
            rest = (0, b - 1, t)
            # T Y = Y T - c5 X - c6 Y
            return (gen_times_operator("Y", gen_times_monomial("T", rest))
                    - c(5) * gen_times_monomial("X", rest)
                    - c(6) * gen_times_monomial("Y", rest))
        return NCOperator.monomial((0, 0, t + 1))
    raise ValueError(f"unknown generator {g!r}")


def gen_times_operator(g: str, R: NCOperator) -> NCOperator:
    """g ∘ R = sum g(f) n + f (g ∘ n)."""
    out = NCOperator()
    for o, f in R.terms.items():
        out = out + NCOperator.monomial(o, derive(f, g)) + f * gen_times_monomial(g, o)
    return out


def nc_multiply(p: NCOperator, q: NCOperator) -> NCOperator:
    """Composition p ∘ q, re-normalized."""
    out = NCOperator()
    for (a, b, t), f in p.terms.items():
        r = q
        for g, e in (("T", t), ("Y", b), ("X", a)):
            for _ in range(e):
                r = gen_times_operator(g, r)
        out = out + f * r
    return out


X = NCOperator.monomial(_X)
Y = NCOperator.monomial(_Y)
T = NCOperator.monomial(_T)
ONE_OP = NCOperator.coef(1)
ZERO_OP = NCOperator()


def cop(i: int) -> NCOperator:
    """Multiplication by c_i as an operator."""
    return NCOperator.coef(c(i))


C0_INV_OP = NCOperator.coef(C0_INV)


def drop_c0_derivatives(op: NCOperator) -> NCOperator:
    """Set every derivative W(c0) (W non-empty) to zero."""
    def fn(s: Symbol):
        return 0 if s[0] == 0 and sum(s[1:]) else CoefPoly.raw_symbol(s)
    return op.map_coefficients(lambda f: f.substitute(fn))


def specialize_constant(op: NCOperator, values: dict[int, Scalar], keep_vector_fields: bool = False) -> NCOperator:
    """Evaluate c_i := values[i] with all derivative symbols := 0.

    Without `keep_vector_fields`, operator monomials of positive order are
    dropped too (their action on constant coefficients vanishes).
    """
    def fn(s: Symbol):
        return 0 if sum(s[1:]) else values.get(s[0], 0)
    out = op.map_coefficients(lambda f: f.substitute(fn))
    if not keep_vector_fields:
        out = NCOperator.coef(out.zeroth_order())
    return out


def iter_symbols(ops: Iterable[NCOperator]) -> set[Symbol]:
    return {s for op in ops for f in op.terms.values() for s in f.symbols()}
