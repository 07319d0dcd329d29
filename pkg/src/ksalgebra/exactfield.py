"""Exact arithmetic in totally real Galois number fields.

A field E = Q(alpha) is described by a monic minimal polynomial P of degree
d over Q, the full list of its d automorphisms (as polynomials giving the
image of alpha), and d isolating intervals with rational endpoints, one per
real root of P.  Elements are residue classes g(alpha) mod P with Fraction
coefficients, so every operation is exact; no floating point anywhere.

Real places are indexed 1..d.  The first listed interval is the field's
distinguished inclusion into R, and interval i must isolate the image of
automorphism i applied to alpha, seen through that first inclusion.  In
other words place i = (first embedding) o (automorphism i); automorphism 1
is the identity.  This pairing is validated at construction, which is what
lets signature bookkeeping elsewhere identify "signature at place i" with
"signature of the i-th conjugate form at the distinguished place".

Signs are decided exactly: test for zero first, then evaluate on the
isolating interval with interval arithmetic and bisect until the enclosure
has constant sign.  Norms go through the resultant with the minimal
polynomial, which in the Galois case equals the product of the conjugates.
"""

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .errors import (
    FieldMismatch,
    InvalidDescriptor,
    MalformedInput,
    NonGaloisField,
    UnsupportedDegree,
)
from .polynomials import (
    Poly,
    count_real_roots,
    count_roots_in,
    interval_eval,
    is_squarefree,
    ext_gcd,
    pcompose,
    pderiv,
    peval,
    pmod,
    pmul,
    poly,
    render,
    resultant,
    trim,
)

_BISECTION_CAP = 2000


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root in Q, or None if q is not a square."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _has_rational_root(p: Sequence[Fraction]) -> bool:
    """Rational root test, used as the irreducibility check for degree <= 3."""
    from math import gcd, lcm

    p = trim(p)
    den = lcm(*[c.denominator for c in p]) if len(p) > 1 else 1
    ip = [int(c * den) for c in p]
    if ip[0] == 0:
        return True
    lead, const = abs(ip[-1]), abs(ip[0])

    def divisors(n: int) -> list[int]:
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.extend((i, n // i))
            i += 1
        return out

    for num in divisors(const):
        for den2 in divisors(lead):
            if gcd(num, den2) != 1:
                continue
            for cand in (Fraction(num, den2), Fraction(-num, den2)):
                if peval(list(p), cand) == 0:
                    return True
    return False


class FieldDescriptor:
    """A totally real Galois number field, fully explicit and validated.

    min_poly      : monic, degree d, ascending coefficients
    automorphisms : d polynomials in alpha, first one the identity X
    embeddings    : d isolating intervals pairing place i with automorphism i
    name          : symbol used when rendering elements
    """

    def __init__(self, min_poly, automorphisms, embeddings, name: str = "a"):
        self.min_poly: Poly = poly(min_poly)
        self.automorphisms: list[Poly] = [pmod(poly(a), self.min_poly) for a in automorphisms]
        self.embeddings: list[tuple[Fraction, Fraction]] = [
            (Fraction(lo), Fraction(hi)) for lo, hi in embeddings
        ]
        self.name = name
        self.degree = len(self.min_poly) - 1
        self._validate()
        self._compose_table = self._build_compose_table()
        self._inverse = [row.index(0) for row in self._compose_table]
        self._key = (
            tuple(self.min_poly),
            tuple(tuple(a) for a in self.automorphisms),
            tuple(self.embeddings),
        )

    # -- validation -------------------------------------------------------

    def _validate(self) -> None:
        d, p = self.degree, self.min_poly
        if d < 1:
            raise InvalidDescriptor("min_poly must have degree >= 1")
        if p[-1] != 1:
            raise InvalidDescriptor("min_poly must be monic")
        if not is_squarefree(p):
            raise InvalidDescriptor("min_poly has repeated roots")
        if 2 <= d <= 3 and _has_rational_root(p):
            raise InvalidDescriptor("min_poly is reducible (rational root)")
        if count_real_roots(p) != d:
            raise InvalidDescriptor("min_poly is not totally real")

        if len(self.automorphisms) != d:
            raise NonGaloisField(f"need exactly {d} automorphisms, got {len(self.automorphisms)}")
        if self.automorphisms[0] != poly([0, 1]) and d > 1:
            raise InvalidDescriptor("first automorphism must be the identity X")
        if d == 1 and pmod(poly([0, 1]), p) != self.automorphisms[0]:
            raise InvalidDescriptor("first automorphism must be the identity X")
        seen = set()
        for a in self.automorphisms:
            if pmod(pcompose(p, a), p):
                raise NonGaloisField(f"{render(a)} does not map alpha to a root")
            key = tuple(a)
            if key in seen:
                raise NonGaloisField("automorphisms are not pairwise distinct")
            seen.add(key)

        if len(self.embeddings) != d:
            raise InvalidDescriptor(f"need exactly {d} isolating intervals, got {len(self.embeddings)}")
        for lo, hi in self.embeddings:
            if not lo < hi:
                raise InvalidDescriptor(f"empty interval ({lo}, {hi})")
            if peval(p, lo) * peval(p, hi) >= 0:
                raise InvalidDescriptor(f"min_poly does not change sign on ({lo}, {hi})")
            if count_roots_in(p, lo, hi) != 1:
                raise InvalidDescriptor(f"interval ({lo}, {hi}) does not isolate one root")
        ordered = sorted(self.embeddings)
        for (_, h1), (l2, _) in zip(ordered, ordered[1:]):
            if h1 > l2:
                raise InvalidDescriptor("isolating intervals overlap")

        # place i must see automorphism i: the value of automorphisms[i](alpha)
        # under the first embedding has to land in interval i.
        for i, a in enumerate(self.automorphisms):
            lo, hi = self.embeddings[i]
            above = self._sign_at_poly(trim(self._shift(a, -lo)), 0)
            below = self._sign_at_poly(trim(self._shift([-c for c in a], hi)), 0)
            if above <= 0 or below <= 0:
                raise InvalidDescriptor(
                    f"interval {i + 1} does not isolate the image of automorphism {i + 1}; "
                    "list intervals in automorphism order, distinguished place first"
                )

    @staticmethod
    def _shift(coeffs: Sequence[Fraction], c: Fraction) -> Poly:
        out = list(coeffs) if coeffs else [Fraction(0)]
        out[0] = out[0] + c
        return trim(out)

    def _build_compose_table(self) -> list[list[int]]:
        table = []
        index = {tuple(a): i for i, a in enumerate(self.automorphisms)}
        for i, ai in enumerate(self.automorphisms):
            row = []
            for j, aj in enumerate(self.automorphisms):
                # (sigma_i o sigma_j)(alpha) = aj(ai(alpha))
                comp = tuple(pmod(pcompose(aj, ai), self.min_poly))
                if comp not in index:
                    raise NonGaloisField("automorphisms are not closed under composition")
                row.append(index[comp])
            table.append(row)
        for row in table:
            if sorted(row) != list(range(self.degree)):
                raise NonGaloisField("composition table rows are not permutations")
        return table

    # -- basic structure ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def zero(self) -> "FieldElem":
        return FieldElem(self, [0] * self.degree)

    def one(self) -> "FieldElem":
        return self.rational(1)

    def rational(self, c) -> "FieldElem":
        coeffs = [Fraction(c)] + [Fraction(0)] * (self.degree - 1)
        return FieldElem(self, coeffs)

    def gen(self) -> "FieldElem":
        return self.elem([0, 1])

    def elem(self, coeffs: Iterable) -> "FieldElem":
        cs = pmod(poly(coeffs), self.min_poly)
        cs = list(cs) + [Fraction(0)] * (self.degree - len(cs))
        return FieldElem(self, cs)

    def compose(self, i: int, j: int) -> int:
        """1-based index of sigma_i o sigma_j."""
        self._check_index(i)
        self._check_index(j)
        return self._compose_table[i - 1][j - 1] + 1

    def inverse_automorphism(self, i: int) -> int:
        self._check_index(i)
        return self._inverse[i - 1] + 1

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.degree:
            raise IndexError(f"automorphism/embedding index {i} outside 1..{self.degree}")

    # -- sign machinery ----------------------------------------------------

    def _sign_at_poly(self, g: Poly, idx0: int) -> int:
        """Exact sign of g(alpha) under the (idx0+1)-th real embedding."""
        g = trim(g)
        if not g:
            return 0
        lo, hi = self.embeddings[idx0]
        p = self.min_poly
        slo = _sign(peval(p, lo))
        for _ in range(_BISECTION_CAP):
            vlo, vhi = interval_eval(g, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            mid = (lo + hi) / 2
            sm = _sign(peval(p, mid))
            if sm == 0:
                # the root itself is rational (degree-1 fields)
                return _sign(peval(g, mid))
            if slo * sm < 0:
                hi = mid
            else:
                lo, slo = mid, sm
        raise ArithmeticError("sign bisection did not converge; is min_poly irreducible?")

    # -- equality / presentation -------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldDescriptor) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"FieldDescriptor(Q[{self.name}]/({render(self.min_poly)}))"

    def describe(self) -> str:
        return f"Q({self.name}) with {self.name} a root of {render(self.min_poly)}, degree {self.degree}"


class FieldElem:
    """A residue g(alpha) mod min_poly; immutable, hashable, exact."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: Sequence):
        cs = [Fraction(c) for c in coeffs]
        assert len(cs) == field.degree, "coefficient vector must have length d"
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("FieldElem is immutable")

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other) -> "FieldElem | None":
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch("operands live in different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = pmod(pmul(list(self.coeffs), list(o.coeffs)), self.field.min_poly)
        prod = list(prod) + [Fraction(0)] * (self.field.degree - len(prod))
        return FieldElem(self.field, prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        d, u, _ = ext_gcd(list(self.coeffs), self.field.min_poly)
        if len(d) != 1:
            raise ArithmeticError("nontrivial gcd with min_poly; descriptor is not a field")
        return self.field.elem(u)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates ----------------------------------------------------------

    def __bool__(self) -> bool:
        return any(c != 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except FieldMismatch:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        assert self.is_rational(), "element is not rational"
        return self.coeffs[0]

    # -- presentation ----------------------------------------------------------

    def __repr__(self) -> str:
        return render(list(self.coeffs), self.field.name)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


# -- module-level operations (the public surface) ------------------------------


def field_arith(x: FieldElem, y: FieldElem, op: str) -> FieldElem:
    """Dispatch add/sub/mul/div; the dunder operators do the work."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def apply_automorphism(x: FieldElem, i: int) -> FieldElem:
    """sigma_i(x), 1-based; sigma_1 is the identity."""
    x.field._check_index(i)
    image = pcompose(list(x.coeffs), x.field.automorphisms[i - 1])
    return x.field.elem(image)


def norm(x: FieldElem) -> Fraction:
    """Field norm down to Q: resultant of min_poly with the representative.

    Since min_poly is monic this is exactly the product of the conjugates
    sigma_i(x).
    """
    g = trim(list(x.coeffs))
    if not g:
        return Fraction(0)
    r = resultant(x.field.min_poly, g)
    assert isinstance(r, Fraction)
    return r


def sign_at_embedding(x: FieldElem, i: int) -> int:
    """Sign of x under the i-th real embedding: -1, 0 or +1; exact."""
    x.field._check_index(i)
    return x.field._sign_at_poly(list(x.coeffs), i - 1)


def conjugates(x: FieldElem) -> list[FieldElem]:
    return [apply_automorphism(x, i) for i in range(1, x.field.degree + 1)]


def quadratic_is_square(x: FieldElem) -> FieldElem | None:
    """Solve y^2 = x exactly in a degree-2 field; None if no root exists.

    Works for any monic quadratic min_poly X^2 + pX + q by rewriting over
    sqrt(D) with D = p^2 - 4q, then solving the two-coordinate system.
    """
    f = x.field
    if f.degree != 2:
        raise UnsupportedDegree("quadratic_is_square needs a degree-2 field")
    pc, qc = f.min_poly[1], f.min_poly[0]
    disc = pc * pc - 4 * qc
    a, b = x.coeffs  # x = a + b*alpha, alpha = (-p + sqrt(D))/2
    big_a = a - b * pc / 2
    big_b = b / 2  # x = big_a + big_b*sqrt(D)

    def back(s: Fraction, t: Fraction) -> FieldElem:
        # y = s + t*sqrt(D) = (s + t*p) + 2 t alpha
        y = f.elem([s + t * pc, 2 * t])
        assert y * y == x
        return y

    if big_b == 0:
        if big_a == 0:
            return f.zero()
        r = rational_sqrt(big_a)
        if r is not None:
            return back(r, Fraction(0))
        r = rational_sqrt(big_a / disc)
        if r is not None:
            return back(Fraction(0), r)
        return None
    n = big_a * big_a - disc * big_b * big_b
    r = rational_sqrt(n)
    if r is None:
        return None
    for s2 in ((big_a + r) / 2, (big_a - r) / 2):
        if s2 == 0:
            continue
        s = rational_sqrt(s2)
        if s is not None:
            return back(s, big_b / (2 * s))
    return None


# -- stock fields ---------------------------------------------------------------


def rational_field() -> FieldDescriptor:
    """Q itself, as the degree-1 field with min_poly X (generator 0)."""
    return FieldDescriptor([0, 1], [[0, 1]], [(Fraction(-1, 2), Fraction(1, 2))], name="r")


RATIONAL_FIELD = rational_field()


def quadratic_field(m) -> FieldDescriptor:
    """Q(sqrt(m)) for a positive non-square integer m.

    The distinguished place sends the generator to the positive root, so it
    is listed first; the second interval isolates -sqrt(m) and pairs with
    the conjugation automorphism.
    """
    m = Fraction(m)
    if m.denominator != 1 or m <= 0:
        raise InvalidDescriptor("quadratic_field wants a positive integer")
    mi = m.numerator
    r = isqrt(mi)
    if r * r == mi:
        raise InvalidDescriptor(f"{mi} is a perfect square; X^2 - {mi} is reducible")
    return FieldDescriptor(
        [-mi, 0, 1],
        [[0, 1], [0, -1]],
        [(r, r + 1), (-r - 1, -r)],
        name=f"sqrt{mi}",
    )


def cyclic_cubic_field() -> FieldDescriptor:
    """The cyclic cubic field Q[X]/(X^3 - 3X - 1), discriminant 81.

    Automorphisms: X, 2 - X^2, X^2 - X - 2.  The distinguished place is the
    smallest root (~ -1.53); the listed interval order is automorphism-
    compatible for this choice.
    """
    return FieldDescriptor(
        [-1, -3, 0, 1],
        [[0, 1], [2, 0, -1], [-2, -1, 1]],
        [(-2, -1), (-1, 0), (1, 2)],
    )


# -- JSON (de)serialization -------------------------------------------------------


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(value, key: str) -> Fraction:
    """Accept ints and 'p/q' strings; reject floats (exactness contract)."""
    if isinstance(value, bool):
        raise MalformedInput(f"key {key!r}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"key {key!r}: cannot parse rational {value!r}") from exc
    raise MalformedInput(f"key {key!r}: expected int or 'p/q' string, got {type(value).__name__}")


def field_to_json_dict(f: FieldDescriptor) -> dict:
    return {
        "min_poly": [format_rational(c) for c in f.min_poly],
        "automorphisms": [
            [format_rational(c) for c in a] if a else ["0"] for a in f.automorphisms
        ],
        "embeddings": [[format_rational(lo), format_rational(hi)] for lo, hi in f.embeddings],
        "name": f.name,
    }


def field_from_json_dict(doc: dict) -> FieldDescriptor:
    if not isinstance(doc, dict):
        raise MalformedInput("field descriptor must be a JSON object")
    if "quadratic_d" in doc:
        m = parse_rational(doc["quadratic_d"], "quadratic_d")
        try:
            return quadratic_field(m)
        except InvalidDescriptor as exc:
            raise MalformedInput(f"key 'quadratic_d': {exc}") from exc
    for key in ("min_poly", "automorphisms", "embeddings"):
        if key not in doc:
            raise MalformedInput(f"field descriptor is missing key {key!r}")
    min_poly = [parse_rational(c, "min_poly") for c in doc["min_poly"]]
    autos = [[parse_rational(c, "automorphisms") for c in a] for a in doc["automorphisms"]]
    embs = []
    for pair in doc["embeddings"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise MalformedInput("key 'embeddings': each entry must be [lo, hi]")
        embs.append((parse_rational(pair[0], "embeddings"), parse_rational(pair[1], "embeddings")))
    name = doc.get("name", "a")
    if not isinstance(name, str):
        raise MalformedInput("key 'name': expected a string")
    try:
        return FieldDescriptor(min_poly, autos, embs, name=name)
    except (InvalidDescriptor, NonGaloisField) as exc:
        raise MalformedInput(f"invalid field descriptor: {exc}") from exc
