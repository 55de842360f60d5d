"""PBW normal forms and the q-twisted multiplication engine.

Elements are finite sums of ordered monomials g_1^{t_1} ... g_N^{t_N}
where the first n generators are polynomial (exponents in N) and the
remaining m are invertible (exponents in Z).  Multiplication rewrites
out-of-order products using the presentation's commutation scalars and
tail relations; rewriting terminates because every tail lives in the
subalgebra generated by strictly later generators, and a step budget
guards against malformed input.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import QsolvError, RewriteBudgetError
from .params import FracElem, LaurentPoly, UnitMonomial

DEFAULT_BUDGET = 10**6


def _coerce_coef(pres, value):
    if isinstance(value, (LaurentPoly, FracElem)):
        return value
    if isinstance(value, UnitMonomial):
        return value.as_poly()
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.const(pres.params, value)
    raise TypeError(f"cannot use {value!r} as a coefficient")


class NFElement:
    """An algebra element in PBW normal form.

    terms maps exponent keys (tuples of length n+m) to nonzero
    coefficients, which are LaurentPoly values or, after eigencomponent
    constructions, FracElem values.
    """

    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms):
        object.__setattr__(self, "pres", pres)
        clean = {}
        n, m = pres.n, pres.m
        for key, coef in terms.items():
            key = tuple(int(v) for v in key)
            if len(key) != n + m:
                raise ValueError("exponent key width does not match presentation")
            if any(v < 0 for v in key[:n]):
                raise ValueError(
                    "negative exponent on a polynomial generator; localize instead"
                )
            coef = _coerce_coef(pres, coef)
            if not coef.is_zero():
                clean[key] = coef
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NFElement is immutable")

    # -- queries -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        """Set of generator positions appearing with nonzero exponent."""
        used = set()
        for key in self.terms:
            for pos, e in enumerate(key):
                if e:
                    used.add(pos)
        return used

    def in_tail_subalgebra(self, i):
        """True when every monomial uses only generators after position i
        (invertible generators always qualify)."""
        n = self.pres.n
        return all(pos >= n or pos > i for pos in self.support())

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        zero = (0,) * (self.pres.n + self.pres.m)
        if set(self.terms) == {zero}:
            coef = self.terms[zero]
            if isinstance(coef, LaurentPoly):
                return coef.constant_value()
        return None

    # -- ring operations ------------------------------------------------

    def _check(self, other):
        if self.pres is not other.pres and self.pres != other.pres:
            raise QsolvError("elements belong to different presentations")

    def __add__(self, other):
        if not isinstance(other, NFElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for key, coef in other.terms.items():
            if key in terms:
                terms[key] = terms[key] + coef
            else:
                terms[key] = coef
        return NFElement(self.pres, terms)

    def __neg__(self):
        return NFElement(self.pres, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NFElement):
            return NotImplemented
        return self + (-other)

    def scale(self, value):
        """Multiply every coefficient by a central scalar."""
        value = _coerce_coef(self.pres, value)
        return NFElement(
            self.pres, {k: c * value for k, c in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, NFElement):
            return nf_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def map_coefficients(self, fn):
        return NFElement(self.pres, {k: fn(c) for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NFElement):
            return NotImplemented
        self._check(other)
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    # -- display ---------------------------------------------------------

    def _monomial_str(self, key):
        factors = []
        for pos, e in enumerate(key):
            if not e:
                continue
            name = self.pres.gens[pos]
            factors.append(name if e == 1 else f"{name}^{e}")
        return "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            coef = self.terms[key]
            mono = self._monomial_str(key)
            cs = str(coef)
            if mono:
                if cs == "1":
                    body = mono
                elif cs == "-1":
                    body = f"-{mono}"
                else:
                    if isinstance(coef, LaurentPoly) and len(coef.terms) > 1:
                        cs = f"({cs})"
                    elif isinstance(coef, FracElem) and not (
                        coef.den.is_one() and len(coef.num.terms) <= 1
                    ):
                        cs = f"({cs})"
                    body = f"{cs}*{mono}"
            else:
                body = cs if (cs.startswith("(") is False) else cs
            if parts:
                if body.startswith("-"):
                    parts.append(" - " + body[1:])
                else:
                    parts.append(" + " + body)
            else:
                parts.append(body)
        return "".join(parts)

    def __repr__(self):
        return f"NFElement({self})"


# -- the rewriting engine ----------------------------------------------


def _key_to_xword(pres, key):
    word = []
    for pos in range(pres.n):
        word.extend([pos] * key[pos])
    return tuple(word)


def _kshift_unit(pres, letter, kvec):
    """Scalar picked up moving the invertible block k^kvec right across
    one polynomial letter: k^v * g = scalar * g * k^v."""
    unit = UnitMonomial.one(pres.params)
    n = pres.n
    for t, e in enumerate(kvec):
        if e:
            unit = unit * pres.commutation_unit(letter, n + t).pow(-e)
    return unit


def _kmerge_unit(pres, left, right):
    """Scalar from merging two ordered invertible blocks:
    k^left * k^right = scalar * k^(left+right)."""
    unit = UnitMonomial.one(pres.params)
    n = pres.n
    for t in range(pres.m):
        if not left[t]:
            continue
        for u in range(t):
            if right[u]:
                unit = unit * pres.commutation_unit(n + t, n + u).pow(
                    left[t] * right[u]
                )
    return unit


def _normalize(pres, items, budget):
    """Rewrite (coef, xword, kvec) items into PBW form.

    Strategy: repeatedly fix the leftmost adjacent inversion in the
    polynomial word.  The swap keeps the multidegree; the tail branch
    strictly lowers the count of the earlier generator, so the process
    terminates on well-formed presentations.
    """
    out = {}
    stack = list(items)
    steps = 0
    zero_k = (0,) * pres.m
    while stack:
        coef, word, kvec = stack.pop()
        spot = None
        for p in range(len(word) - 1):
            if word[p] > word[p + 1]:
                spot = p
                break
        if spot is None:
            key = [0] * (pres.n + pres.m)
            for letter in word:
                key[letter] += 1
            key[pres.n:] = kvec
            key = tuple(key)
            if key in out:
                out[key] = out[key] + coef
            else:
                out[key] = coef
            continue
        steps += 1
        if steps > budget:
            raise RewriteBudgetError(
                f"rewriting exceeded {budget} steps; "
                "check tail well-formedness or raise the budget"
            )
        b, a = word[spot], word[spot + 1]
        u_inv = pres.commutation_unit(a, b).inverse().as_poly()
        swapped = word[:spot] + (a, b) + word[spot + 2:]
        base = coef * u_inv
        stack.append((base, swapped, kvec))
        tail = pres.tail_terms(a, b)
        if tail:
            rest = word[spot + 2:]
            for t_coef, t_xword, t_kvec in tail:
                scalar = UnitMonomial.one(pres.params)
                if t_kvec != zero_k:
                    for letter in rest:
                        scalar = scalar * _kshift_unit(pres, letter, t_kvec)
                    scalar = scalar * _kmerge_unit(pres, t_kvec, kvec)
                new_coef = -base * t_coef * scalar.as_poly()
                new_k = tuple(x + y for x, y in zip(t_kvec, kvec))
                stack.append((new_coef, word[:spot] + t_xword + rest, new_k))
    return {k: c for k, c in out.items() if not c.is_zero()}


def nf_mul(left, right, budget=DEFAULT_BUDGET):
    """Product of two normal-form elements, again in normal form."""
    if left.pres is not right.pres:
        left._check(right)
    pres = left.pres
    items = []
    n = pres.n
    for k1, c1 in left.terms.items():
        w1 = _key_to_xword(pres, k1)
        s1 = k1[n:]
        for k2, c2 in right.terms.items():
            w2 = _key_to_xword(pres, k2)
            s2 = k2[n:]
            scalar = UnitMonomial.one(pres.params)
            if any(s1):
                for letter in w2:
                    scalar = scalar * _kshift_unit(pres, letter, s1)
                scalar = scalar * _kmerge_unit(pres, s1, s2)
            coef = c1 * c2
            if not scalar.is_one():
                coef = coef * scalar.as_poly()
            items.append((coef, w1 + w2, tuple(x + y for x, y in zip(s1, s2))))
    return NFElement(pres, _normalize(pres, items, budget))


# -- skew actions -------------------------------------------------------


def tau_apply(pres, i, element, power=1):
    """Apply the diagonal automorphism attached to polynomial generator i
    (0-based), ``power`` times; negative powers are allowed."""
    if not 0 <= i < pres.n:
        raise QsolvError("tau index must name a polynomial generator")
    terms = {}
    for key, coef in element.terms.items():
        weight = pres.key_weight(i, key).pow(power)
        terms[key] = coef * weight.as_poly()
    return NFElement(pres, terms)


def delta_apply(pres, i, element, budget=DEFAULT_BUDGET):
    """The skew derivation at generator i: delta(a) = x_i a - tau(a) x_i.

    Defined on the subalgebra generated by later generators; the result
    lands in that subalgebra again.
    """
    if not 0 <= i < pres.n:
        raise QsolvError("delta index must name a polynomial generator")
    if not element.in_tail_subalgebra(i):
        raise QsolvError(
            "delta is defined on the subalgebra of later generators only"
        )
    x = pres.gen(i)
    result = nf_mul(x, element, budget) - nf_mul(tau_apply(pres, i, element), x, budget)
    return result


def skew_action(pres, i, kind, element):
    """Dispatch for the two skew operators: kind is 'tau' or 'delta'."""
    if kind == "tau":
        return tau_apply(pres, i, element)
    if kind == "delta":
        return delta_apply(pres, i, element)
    raise QsolvError(f"unknown skew action {kind!r}")


# -- Gaussian binomials and the twisted Leibniz rule ---------------------


def q_binomial(n, i, params=("q",), slot=0):
    """Gaussian binomial coefficient as a polynomial in one parameter.

    Computed by the q-Pascal recursion, so no division is involved; the
    classical binomial appears on substituting 1.
    """
    n, i = int(n), int(i)
    if i < 0 or i > n:
        raise ValueError("binomial index out of range")
    params = tuple(params)
    width = len(params)
    one = LaurentPoly.one(params)
    q_exps = tuple(1 if j == slot else 0 for j in range(width))
    row = [one]
    for level in range(1, n + 1):
        new = [one]
        for k in range(1, level):
            shift = LaurentPoly.monomial(params, tuple(e * k for e in q_exps))
            new.append(row[k - 1] + shift * row[k])
        new.append(one)
        row = new
    return row[i]


def q_integer(n, params=("q",), slot=0):
    """1 + q + ... + q^(n-1) in the designated parameter slot."""
    params = tuple(params)
    width = len(params)
    q_exps = tuple(1 if j == slot else 0 for j in range(width))
    terms = {}
    for k in range(int(n)):
        terms[tuple(e * k for e in q_exps)] = Fraction(1)
    return LaurentPoly(params, terms)


def q_binomial_at_unit(n, i, unit):
    """Gaussian binomial evaluated at a unit monomial scalar."""
    uni = q_binomial(n, i)
    total = LaurentPoly.zero(unit.params)
    for exps, coef in uni.terms.items():
        total = total + unit.pow(exps[0]).as_poly() * coef
    return total


def q_leibniz_expand(pres, i, npow, element, budget=DEFAULT_BUDGET):
    """Expand x_i^npow * a through the twisted Leibniz rule.

    Returns sum_j C(npow, j)_{q_i} tau^(npow-j) delta^j (a) x_i^(npow-j),
    which agrees with nf_mul(x_i^npow, a) on well-formed presentations.
    """
    npow = int(npow)
    if npow < 0:
        raise ValueError("power must be nonnegative")
    if not element.in_tail_subalgebra(i):
        raise QsolvError(
            "Leibniz expansion needs an element of the later subalgebra"
        )
    q_i = pres.qskew[i]
    total = pres.zero()
    delta_j = element
    for j in range(npow + 1):
        if delta_j.is_zero():
            break
        coef = q_binomial_at_unit(npow, j, q_i)
        part = tau_apply(pres, i, delta_j, npow - j)
        part = nf_mul(part, pres.gen_power(i, npow - j), budget)
        total = total + part.scale(coef)
        if j < npow:
            delta_j = delta_apply(pres, i, delta_j, budget)
    return total
