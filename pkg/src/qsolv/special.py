"""Specialization of parameters into rational or cyclotomic values.

A presentation over Laurent parameters can be pushed into a concrete
field: rational numbers, a cyclotomic field (q at a root of unity), or
kept symbolic (a transcendental value generates the same field as the
parameter itself).  Specialized commutation data is re-validated; in
particular the torsion-freeness condition genuinely fails at roots of
unity, where the finiteness-over-center witnesses take over.
"""

from __future__ import annotations

from fractions import Fraction

from . import intlinalg
from .errors import SpecializationError
from .normalform import nf_mul
from .params import FracElem, LaurentPoly
from .presentation import Finding, ValidationReport
from .torus import root_of_unity_structure, torus_of_presentation

MAX_CYCLOTOMIC_ORDER = 64


# -- exact polynomial helpers over Q (dense, ascending) --------------------

def _ptrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _psub(a, b):
    width = max(len(a), len(b))
    a = a + [Fraction(0)] * (width - len(a))
    b = b + [Fraction(0)] * (width - len(b))
    return _ptrim([x - y for x, y in zip(a, b)])


def _pdivmod(a, b):
    rem = [Fraction(v) for v in a]
    quo = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
        _ptrim(rem)
        if not rem:
            break
    return _ptrim(quo), rem


_CYCLOTOMIC_CACHE = {}


def cyclotomic_polynomial(N):
    """Coefficients of the N-th cyclotomic polynomial, ascending, exact.

    Computed by dividing z^N - 1 by the cyclotomic polynomials of the
    proper divisors of N.
    """
    if N < 1:
        raise SpecializationError("root-of-unity order must be positive")
    if N > MAX_CYCLOTOMIC_ORDER:
        raise SpecializationError(
            f"root-of-unity order {N} exceeds the supported bound "
            f"{MAX_CYCLOTOMIC_ORDER}"
        )
    if N in _CYCLOTOMIC_CACHE:
        return _CYCLOTOMIC_CACHE[N]
    poly = [Fraction(-1)] + [Fraction(0)] * (N - 1) + [Fraction(1)]
    for d in range(1, N):
        if N % d == 0:
            poly, rem = _pdivmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    result = tuple(poly)
    _CYCLOTOMIC_CACHE[N] = result
    return result


class CycNumber:
    """An element of Q(zeta_N), stored as a residue modulo the N-th
    cyclotomic polynomial."""

    __slots__ = ("N", "vec")

    def __init__(self, N, vec):
        phi = cyclotomic_polynomial(N)
        dense = [Fraction(v) for v in vec]
        if len(dense) >= len(phi):
            _, dense = _pdivmod(dense, list(phi))
        dense += [Fraction(0)] * (len(phi) - 1 - len(dense))
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "vec", tuple(dense))

    def __setattr__(self, name, value):
        raise AttributeError("CycNumber is immutable")

    @classmethod
    def const(cls, N, value):
        return cls(N, [Fraction(value)])

    @classmethod
    def zeta(cls, N, power=1):
        power %= N
        return cls(N, [Fraction(0)] * power + [Fraction(1)])

    def is_zero(self):
        return not any(self.vec)

    def is_one(self):
        return self.vec[0] == 1 and not any(self.vec[1:])

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.N != self.N:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.const(self.N, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNumber(self.N, [a + b for a, b in zip(self.vec, other.vec)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.N, [-a for a in self.vec])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNumber(self.N, _pmul(list(self.vec), list(other.vec)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[z] against the cyclotomic modulus, which
        # is irreducible, so the gcd with a nonzero residue is constant
        r0, r1 = list(cyclotomic_polynomial(self.N)), _ptrim(list(self.vec))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        assert len(r0) == 1
        g = r0[0]
        return CycNumber(self.N, [c / g for c in s0])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNumber.const(self.N, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.vec == other.vec

    def __hash__(self):
        return hash((self.N, self.vec))

    def __str__(self):
        parts = []
        for e, c in enumerate(self.vec):
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*z" if c != 1 else "z")
            else:
                parts.append(f"{c}*z^{e}" if c != 1 else f"z^{e}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def __repr__(self):
        return f"CycNumber(zeta_{self.N}: {self})"


class SpecTarget:
    """Where the parameters go: exact rationals, a cyclotomic field, or
    nowhere (transcendental mode keeps them symbolic)."""

    __slots__ = ("kind", "values", "order", "exponents")

    def __init__(self, kind, values=None, order=None, exponents=None):
        self.kind = kind
        self.values = values
        self.order = order
        self.exponents = exponents

    @classmethod
    def rational(cls, values):
        clean = {}
        for name, v in dict(values).items():
            v = Fraction(v)
            if not v:
                raise SpecializationError(
                    f"parameter {name} must stay a unit; zero is not allowed"
                )
            clean[name] = v
        return cls("rational", values=clean)

    @classmethod
    def cyclotomic(cls, order, exponents):
        if order < 1:
            raise SpecializationError("root-of-unity order must be positive")
        if order > MAX_CYCLOTOMIC_ORDER:
            raise SpecializationError(
                f"root-of-unity order {order} exceeds the supported bound "
                f"{MAX_CYCLOTOMIC_ORDER}"
            )
        exps = {name: int(e) % order for name, e in dict(exponents).items()}
        return cls("cyclotomic", order=order, exponents=exps)

    @classmethod
    def transcendental(cls):
        return cls("transcendental")

    def assignment(self, params):
        """Parameter-to-value map for evaluation, or None in symbolic mode."""
        if self.kind == "transcendental":
            return None
        if self.kind == "rational":
            missing = [p for p in params if p not in self.values]
            if missing:
                raise SpecializationError(
                    f"no value for parameter(s) {', '.join(missing)}"
                )
            return {p: self.values[p] for p in params}
        missing = [p for p in params if p not in self.exponents]
        if missing:
            raise SpecializationError(
                f"no exponent for parameter(s) {', '.join(missing)}"
            )
        return {
            p: CycNumber.zeta(self.order, self.exponents[p]) for p in params
        }

    def __repr__(self):
        if self.kind == "rational":
            body = ", ".join(f"{k}={v}" for k, v in sorted(self.values.items()))
            return f"SpecTarget(rational: {body})"
        if self.kind == "cyclotomic":
            body = ", ".join(
                f"{k}=zeta^{e}" for k, e in sorted(self.exponents.items())
            )
            return f"SpecTarget(zeta_{self.order}: {body})"
        return "SpecTarget(transcendental)"


def _is_zero_value(v):
    if isinstance(v, CycNumber):
        return v.is_zero()
    return not v


def _is_one_value(v):
    if isinstance(v, CycNumber):
        return v.is_one()
    return v == 1


def _eval_coef(coef, assignment, params):
    if isinstance(coef, FracElem):
        num = coef.num.eval_map(assignment)
        den = coef.den.eval_map(assignment)
        if _is_zero_value(den):
            raise SpecializationError("coefficient denominator vanishes")
        return num / den
    if isinstance(coef, LaurentPoly):
        return coef.eval_map(assignment)
    return Fraction(coef)


def _unit_value(unit, assignment):
    value = unit.as_poly().eval_map(assignment)
    if _is_zero_value(value):
        raise SpecializationError(f"unit scalar {unit} specializes to zero")
    return value


def _factor_rational(v):
    """(sign, {prime: exponent}) of a nonzero rational."""
    sign = 1 if v > 0 else -1
    out = {}
    for part, s in ((abs(v.numerator), 1), (v.denominator, -1)):
        d = 2
        while d * d <= part:
            while part % d == 0:
                out[d] = out.get(d, 0) + s
                part //= d
            d += 1
        if part > 1:
            out[part] = out.get(part, 0) + s
    return sign, out


def rational_torsionfree(values):
    """Whether nonzero rationals generate a torsion-free multiplicative
    group; the only possible torsion element is -1, so this is a parity
    condition on the kernel of the prime-exponent matrix."""
    vals = [Fraction(v) for v in values]
    if any(not v for v in vals):
        raise SpecializationError("zero is not a unit")
    factored = [_factor_rational(v) for v in vals]
    primes = sorted({p for _, f in factored for p in f})
    negatives = [t for t, (s, _) in enumerate(factored) if s < 0]
    if not negatives:
        return True
    rows = [[f.get(p, 0) for _, f in factored] for p in primes]
    if not rows:
        rows = [[0] * len(factored)]
    for vec in intlinalg.kernel_basis(rows):
        if sum(vec[t] for t in negatives) % 2:
            return False
    return True


class SpecializedPresentation:
    """A presentation with all scalars pushed into the target field.

    Keeps the generator layout of the base presentation; scalar lookups
    mirror the symbolic API but return field values, and findings hold
    the re-run condition checks at the specialized values.
    """

    __slots__ = ("base", "target", "qskew_values", "tail_values", "findings")

    def __init__(self, base, target, qskew_values, tail_values, findings):
        self.base = base
        self.target = target
        self.qskew_values = tuple(qskew_values)
        self.tail_values = tail_values
        self.findings = findings

    @property
    def gens(self):
        return self.base.gens

    @property
    def passed(self):
        return self.findings.passed

    def commutation_value(self, a, b):
        assignment = self.target.assignment(self.base.params)
        return _unit_value(self.base.commutation_unit(a, b), assignment)

    def hweight_value(self, i, g):
        assignment = self.target.assignment(self.base.params)
        return _unit_value(self.base.hweight(i, g), assignment)

    def __repr__(self):
        state = "passes" if self.findings.passed else "fails"
        return (f"SpecializedPresentation({self.base.name} at {self.target}, "
                f"{state} validation)")


def specialize_presentation(p, target):
    """Evaluate every scalar of the presentation in the target field and
    re-run the condition checks there.

    In transcendental mode the symbolic presentation already is the
    answer, so its generic validation is returned unchanged.  At a root
    of unity the torsion check fails unless all scalars are 1, which is
    the expected root-of-unity dichotomy.
    """
    from .presentation import validate_presentation

    if target.kind == "transcendental":
        report = validate_presentation(p)
        tails = {pair: dict(terms) for pair, terms in p.tails.items()}
        return SpecializedPresentation(p, target, p.qskew, tails, report)

    assignment = target.assignment(p.params)
    findings = []

    def unit(u):
        return _unit_value(u, assignment)

    tail_values = {}
    for (i, j), terms in p.tails.items():
        vals = {}
        for key, coef in terms.items():
            v = _eval_coef(coef, assignment, p.params)
            if not _is_zero_value(v):
                vals[key] = v
        if vals:
            tail_values[(i, j)] = vals

    # weight compatibility of the commutation matrix, at the target;
    # only entries for later generators are forced
    for i in range(p.n):
        for g in range(i + 1, p.n + p.m):
            if unit(p.hweight(i, g)) != unit(p.commutation_unit(i, g)):
                findings.append(Finding(
                    "WF", f"({p.gens[i]}, {p.gens[g]})",
                    "specialized diagonal weight differs from the "
                    "commutation scalar",
                ))

    # Q1 and Q3 termwise on the surviving tail monomials
    for (i, j), vals in tail_values.items():
        loc = f"({p.gens[i]}, {p.gens[j]})"
        target_q1 = unit(p.qskew[i].inverse() * p.hweight(i, j))
        for key in vals:
            if unit(p.key_weight(i, key)) != target_q1:
                findings.append(Finding(
                    "Q1", loc,
                    "tail monomial weight breaks the q-skew relation "
                    "at the specialized values",
                ))
                break
    for h in range(p.n):
        for (i, j), vals in tail_values.items():
            loc = f"tau_{p.gens[h]} on ({p.gens[i]}, {p.gens[j]})"
            target_q3 = unit(p.hweight(h, i) * p.hweight(h, j))
            for key in vals:
                if unit(p.key_weight(h, key)) != target_q3:
                    findings.append(Finding(
                        "Q3", loc,
                        "tail monomial is not an eigenvector of the "
                        "diagonal action at the specialized values",
                    ))
                    break

    scalars = [unit(u) for u in p.qmat.values()]
    scalars.extend(unit(u) for u in p.qskew)
    for i in range(p.n):
        scalars.extend(
            unit(p.hweight(i, g)) for g in range(p.n + p.m)
        )
    if target.kind == "rational":
        torsionfree = rational_torsionfree(scalars)
    else:
        torsionfree = all(_is_one_value(v) for v in scalars)
    if not torsionfree:
        findings.append(Finding(
            "Q2", "commutation scalars",
            "specialized scalars generate torsion (root of unity); the "
            "generic stratification does not apply",
        ))

    qskew_values = tuple(unit(u) for u in p.qskew)
    report = ValidationReport(
        not any(f.severity == "error" for f in findings), tuple(findings)
    )
    return SpecializedPresentation(p, target, qskew_values, tail_values, report)


def classify_specialization(f, target):
    """Membership of the parameter value in the good open set of the
    rank-2 single-tail family.

    Transcendental values always lie inside; a rational value is inside
    exactly when it avoids 1 and the rational roots of the tail.
    """
    if target.kind == "transcendental":
        return True
    if target.kind != "rational":
        raise SpecializationError(
            "classification needs a rational or transcendental target"
        )
    from .strat import rational_roots

    if not isinstance(f, LaurentPoly):
        f = LaurentPoly.const(("q",), f)
    if len(f.params) != 1:
        raise SpecializationError("the family has a single parameter")
    name = f.params[0]
    lam = target.assignment(f.params)[name]
    roots, _ = rational_roots(f)
    return lam != 1 and lam not in roots


def is_central_at(p, element, target):
    """Exact centrality of an element after specializing coefficients.

    Commutators against every generator are computed symbolically in
    normal form and then evaluated; zero at the target means central.
    """
    assignment = target.assignment(p.params)
    for g in range(p.n + p.m):
        diff = nf_mul(element, p.gen(g)) - nf_mul(p.gen(g), element)
        if assignment is None:
            if not diff.is_zero():
                return False
            continue
        for coef in diff.terms.values():
            if not _is_zero_value(_eval_coef(coef, assignment, p.params)):
                return False
    return True


def root_of_unity_witness(p, N):
    """Finiteness-over-center witness at q -> zeta_N for a tail-free
    single-parameter presentation.

    Returns (per-generator centrality of x_i^N, congruence lattice, rank
    over the center).  The N-th powers must commute with everything on
    the nose, and the lattice index is the module rank.
    """
    if p.has_tails:
        raise SpecializationError(
            "the root-of-unity witness needs a tail-free presentation"
        )
    if len(p.params) != 1:
        raise SpecializationError("single-parameter presentations only")
    target = SpecTarget.cyclotomic(N, {p.params[0]: 1})
    central = tuple(
        is_central_at(p, p.gen_power(i, N), target) for i in range(p.n)
    )
    torus = torus_of_presentation(p, range(p.n + p.m))
    lattice, rank = root_of_unity_structure(torus, N)
    return central, lattice, rank
