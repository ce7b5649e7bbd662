"""Exact exterior algebra on an n-dimensional space over Q(sqrt2).

Basis convention, fixed once for the whole package: the degree-k space has
the ordered basis e^{i1...ik} with 1 <= i1 < ... < ik <= n, enumerated
lexicographically.  Wedging basis elements carries the parity sign of the
merge permutation.  All golden values elsewhere depend on this convention.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from . import linalg
from .errors import DegreeError, DimensionMismatchError, FormSyntaxError
from .scalar import ONE, SQRT2, ZERO, Scalar, _ScalarScanner, as_scalar, format_scalar


@lru_cache(maxsize=None)
def basis_indices(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing k-tuples in 1..n, lexicographically ordered."""
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def basis_position(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {idx: i for i, idx in enumerate(basis_indices(n, k))}


def merge_indices(left: tuple[int, ...], right: tuple[int, ...]):
    """Merge two sorted index tuples; return (sign, merged) or (0, None).

    The sign is the parity of the permutation sorting the concatenation;
    a repeated index yields (0, None).
    """
    merged = []
    sign = 1
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            return 0, None
        if a < b:
            merged.append(a)
            i += 1
        else:
            merged.append(b)
            j += 1
            if (len(left) - i) % 2:
                sign = -sign
    merged.extend(left[i:])
    merged.extend(right[j:])
    return sign, tuple(merged)


def sort_indices(indices: tuple[int, ...]):
    """Sort a tuple of distinct indices, returning (parity sign, sorted tuple)."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class KForm:
    """A homogeneous degree-k exterior form with Q(sqrt2) coefficients.

    Zero coefficients are never stored.  Degrees beyond the ambient dimension
    are permitted but carry no terms (the space is zero), which keeps wedge
    total.  Instances are immutable.
    """

    __slots__ = ("n", "k", "coeffs")

    def __init__(self, n: int, k: int, coeffs: dict | None = None):
        if n < 1:
            raise DimensionMismatchError(f"ambient dimension {n} < 1")
        if k < 0:
            raise DegreeError(f"negative degree {k}")
        clean = {}
        for idx, c in (coeffs or {}).items():
            c = as_scalar(c)
            if not c:
                continue
            if len(idx) != k:
                raise DegreeError(f"index set {idx} has size {len(idx)}, not {k}")
            if k > n:
                raise DegreeError(f"degree {k} term in dimension {n}")
            if any(not 1 <= i <= n for i in idx) or any(
                idx[t] >= idx[t + 1] for t in range(len(idx) - 1)
            ):
                raise DegreeError(f"bad index set {idx} for n={n}")
            clean[idx] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("KForm is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def _raw(n: int, k: int, coeffs: dict) -> "KForm":
        """Internal: trusted coefficients (valid keys, no zeros stored)."""
        out = object.__new__(KForm)
        object.__setattr__(out, "n", n)
        object.__setattr__(out, "k", k)
        object.__setattr__(out, "coeffs", coeffs)
        return out

    @staticmethod
    def zero(n: int, k: int) -> "KForm":
        return KForm(n, k)

    @staticmethod
    def basis(n: int, indices: tuple[int, ...] | list[int]) -> "KForm":
        """The basis form e^{i1...ik}; unsorted indices contribute their parity."""
        indices = tuple(indices)
        if len(set(indices)) != len(indices):
            return KForm(n, len(indices))
        sign, idx = sort_indices(indices)
        return KForm(n, len(indices), {idx: Scalar(sign)})

    @staticmethod
    def scalar(n: int, value) -> "KForm":
        return KForm(n, 0, {(): as_scalar(value)})

    # -- linear structure ----------------------------------------------------

    def _check_compatible(self, other: "KForm"):
        if self.n != other.n:
            raise DimensionMismatchError(f"ambient {self.n} != {other.n}")
        if self.k != other.k:
            raise DegreeError(f"degree {self.k} != {other.k}")

    def __add__(self, other: "KForm") -> "KForm":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            prev = out.get(idx)
            if prev is None:
                out[idx] = c
            else:
                total = prev + c
                if total:
                    out[idx] = total
                else:
                    del out[idx]
        return KForm._raw(self.n, self.k, out)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return KForm._raw(self.n, self.k, {i: -c for i, c in self.coeffs.items()})

    def scale(self, c) -> "KForm":
        c = as_scalar(c)
        if not c:
            return KForm._raw(self.n, self.k, {})
        return KForm._raw(self.n, self.k, {i: c * v for i, v in self.coeffs.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, indices: tuple[int, ...]) -> Scalar:
        return self.coeffs.get(tuple(indices), ZERO)

    def terms(self):
        """Terms in the canonical basis order."""
        return sorted(self.coeffs.items())

    def wedge(self, other: "KForm") -> "KForm":
        if self.n != other.n:
            raise DimensionMismatchError(f"ambient {self.n} != {other.n}")
        out: dict = {}
        for i1, c1 in self.coeffs.items():
            for i2, c2 in other.coeffs.items():
                sign, merged = merge_indices(i1, i2)
                if sign == 0:
                    continue
                c = c1 * c2
                if sign < 0:
                    c = -c
                prev = out.get(merged)
                out[merged] = c if prev is None else prev + c
        return KForm._raw(
            self.n, self.k + other.k, {i: c for i, c in out.items() if c}
        )

    def contract(self, k: int) -> "KForm":
        """Interior product with the dual-basis vector e_k (degree -1)."""
        if self.k == 0:
            raise DegreeError("cannot contract a degree-0 form")
        if not 1 <= k <= self.n:
            raise DimensionMismatchError(f"generator index {k} out of 1..{self.n}")
        out = {}
        for idx, c in self.coeffs.items():
            if k in idx:
                pos = idx.index(k)
                rest = idx[:pos] + idx[pos + 1:]
                out[rest] = -c if pos % 2 else c
        return KForm._raw(self.n, self.k - 1, out)

    def contract_vector(self, components: list[Scalar]) -> "KForm":
        """Interior product with the vector sum_k components[k-1] * e_k."""
        out = KForm(self.n, self.k - 1)
        for k, c in enumerate(components, start=1):
            if c:
                out = out + self.contract(k).scale(c)
        return out

    # -- coordinates ----------------------------------------------------------

    def to_vector(self) -> list[Scalar]:
        order = basis_indices(self.n, self.k)
        return [self.coeffs.get(idx, ZERO) for idx in order]

    @staticmethod
    def from_vector(n: int, k: int, vec: list[Scalar]) -> "KForm":
        order = basis_indices(n, k)
        return KForm._raw(n, k, {idx: c for idx, c in zip(order, vec) if c})

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"KForm({self.n}, {self.k}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)


def wedge(a: KForm, b: KForm) -> KForm:
    return a.wedge(b)


def wedge_all(forms) -> KForm:
    forms = list(forms)
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def contract(k: int, a: KForm) -> KForm:
    return a.contract(k)


class Subspace:
    """A linear subspace of the degree-k forms, stored as an RREF basis.

    Two subspaces are equal iff their RREF matrices coincide, which makes
    equality a decision procedure for span equality.
    """

    __slots__ = ("n", "k", "rows", "pivots")

    def __init__(self, n: int, k: int, rows=None, _reduced=False):
        rows = [r[:] for r in rows] if rows else []
        if not _reduced:
            rows, pivots = linalg.rref(rows)
        else:
            pivots = [next(i for i, x in enumerate(r) if x) for r in rows]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def span(forms, n: int | None = None, k: int | None = None) -> "Subspace":
        forms = list(forms)
        if not forms:
            if n is None or k is None:
                raise DimensionMismatchError("empty span needs explicit (n, k)")
            return Subspace(n, k)
        n0, k0 = forms[0].n, forms[0].k
        for f in forms:
            if f.n != n0 or f.k != k0:
                raise DegreeError("span of forms of inconsistent degree")
        if (n is not None and n != n0) or (k is not None and k != k0):
            raise DimensionMismatchError("span does not match requested ambient")
        return Subspace(n0, k0, [f.to_vector() for f in forms])

    @staticmethod
    def full(n: int, k: int) -> "Subspace":
        return Subspace(n, k, linalg.identity(len(basis_indices(n, k))), _reduced=True)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient_dim(self) -> int:
        return len(basis_indices(self.n, self.k))

    def basis_forms(self) -> tuple[KForm, ...]:
        return tuple(KForm.from_vector(self.n, self.k, r) for r in self.rows)

    def reduce(self, form: KForm) -> KForm:
        """Residual of form after elimination against this subspace."""
        self._check(form)
        res = linalg.reduce_against(form.to_vector(), self.rows, self.pivots)
        return KForm.from_vector(self.n, self.k, res)

    def contains(self, form: KForm) -> bool:
        return self.reduce(form).is_zero

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(f) for f in other.basis_forms())

    def _check(self, form: KForm):
        if form.n != self.n or form.k != self.k:
            raise DegreeError(
                f"form of type ({form.n},{form.k}) vs subspace ({self.n},{self.k})"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        if (other.n, other.k) != (self.n, self.k):
            raise DegreeError("sum of subspaces of different type")
        return Subspace(self.n, self.k, self.rows + other.rows)

    def intersection(self, other: "Subspace") -> "Subspace":
        if (other.n, other.k) != (self.n, self.k):
            raise DegreeError("intersection of subspaces of different type")
        # Solve over coefficients of our basis: x = sum a_i row_i lies in
        # `other` iff the residual of x against `other` vanishes.
        residuals = [
            linalg.reduce_against(row, other.rows, other.pivots) for row in self.rows
        ]
        coeff_kernel = linalg.nullspace(linalg.transpose(residuals), len(self.rows))
        vecs = []
        for a in coeff_kernel:
            v = [ZERO] * self.ambient_dim
            for ai, row in zip(a, self.rows):
                if ai:
                    v = [x + ai * y for x, y in zip(v, row)]
            vecs.append(v)
        return Subspace(self.n, self.k, vecs)

    def complement_pivot_basis(self) -> tuple[KForm, ...]:
        """Canonical-basis forms spanning a complement: those avoiding pivots."""
        order = basis_indices(self.n, self.k)
        pivot_set = set(self.pivots)
        return tuple(
            KForm(self.n, self.k, {order[c]: ONE})
            for c in range(len(order))
            if c not in pivot_set
        )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.k, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        forms = ", ".join(str(f) for f in self.basis_forms())
        return f"Subspace({self.n}, {self.k}, [{forms}])"


def span(forms, n: int | None = None, k: int | None = None) -> Subspace:
    return Subspace.span(forms, n, k)


def member(s: Subspace, a: KForm) -> bool:
    return s.contains(a)


def kernel(images: list[KForm], n: int, k: int) -> Subspace:
    """Kernel of the linear map sending the i-th basis form of degree k to
    images[i]; the images fix the codomain."""
    expected = len(basis_indices(n, k))
    if len(images) != expected:
        raise DimensionMismatchError(
            f"need {expected} basis images for degree {k} in dimension {n}"
        )
    return kernel_on(Subspace.full(n, k), images)


def kernel_on(domain: Subspace, images: list[KForm]) -> Subspace:
    """Kernel of a map given by images of `domain`'s RREF basis."""
    coords = [f.to_vector() for f in images]
    coeff_kernel = linalg.nullspace(linalg.transpose(coords), len(images))
    vecs = []
    for a in coeff_kernel:
        v = [ZERO] * domain.ambient_dim
        for ai, row in zip(a, domain.rows):
            if ai:
                v = [x + ai * y for x, y in zip(v, row)]
        vecs.append(v)
    return Subspace(domain.n, domain.k, vecs)


def preimage_on(domain: Subspace, images: list[KForm], target: Subspace) -> Subspace:
    """{x in domain : map(x) in target}, with images given on domain's basis."""
    residuals = [target.reduce(f) for f in images]
    return kernel_on(domain, residuals)


def alternating_rank(a: KForm) -> int:
    """Rank of the alternating matrix of a 2-form.

    The i-th row of that matrix is the contraction e_i -| a, so the rank is
    the dimension of the span of all contractions.
    """
    if a.k != 2:
        raise DegreeError("alternating rank is defined for 2-forms")
    rows = [a.contract(i).to_vector() for i in range(1, a.n + 1)]
    return linalg.rank(rows)


def is_simple(a: KForm) -> bool:
    """Whether a 2-form is decomposable, decided by the Pluecker condition
    a ^ a = 0 (equivalent to alternating rank <= 2 in any dimension)."""
    if a.k != 2:
        raise DegreeError("is_simple expects a 2-form")
    return a.wedge(a).is_zero


def factor_simple(a: KForm) -> tuple[KForm, KForm] | None:
    """An explicit factorization a = xi ^ zeta for a simple 2-form.

    Returns None when a is not simple; the zero form factors as 0 ^ 0.  Any
    valid pair may be returned; the spanned 2-plane is the invariant part.
    """
    if a.k != 2:
        raise DegreeError("factor_simple expects a 2-form")
    if a.is_zero:
        z = KForm.zero(a.n, 1)
        return z, z
    rows = [a.contract(i) for i in range(1, a.n + 1)]
    plane = Subspace.span([r for r in rows if not r.is_zero])
    if plane.dim != 2:
        return None
    beta, gamma = plane.basis_forms()
    candidate = beta.wedge(gamma)
    idx, c0 = next(iter(candidate.coeffs.items()))
    factor = a.coeff(idx) / c0
    if a == candidate.scale(factor):
        return beta.scale(factor), gamma
    return None


# -- textual form syntax -------------------------------------------------------


def format_form(a: KForm) -> str:
    """Render a form as signed terms ``c*e^{i1..ik}`` with ``r2`` for sqrt2.

    Coefficients mixing rational and surd parts are split into two terms so
    that the output stays inside the simple term grammar and round-trips.
    """
    if a.k == 0:
        return format_scalar(a.coeff(()))
    pieces: list[tuple[int, str]] = []  # (sign, unsigned rendering)
    for idx, c in a.terms():
        body = "e^{" + "".join(str(i) for i in idx) + "}"
        for part in (Scalar(c.a), Scalar(0, c.b)):
            if not part:
                continue
            neg = (part.a < 0) or (part.b < 0)
            mag = -part if neg else part
            if mag == ONE:
                text = body
            else:
                text = format_scalar(mag) + "*" + body
            pieces.append((-1 if neg else 1, text))
    if not pieces:
        return "0"
    out = []
    for sign, text in pieces:
        if not out:
            out.append("-" + text if sign < 0 else text)
        else:
            out.append(("-" if sign < 0 else "+") + text)
    return "".join(out)


class _FormParser(_ScalarScanner):
    """Recursive-descent parser for form expressions.

    Grammar::

        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := factor ('*' factor)*
        factor := scalar | 'e' ['^'] ['{'] digit+ ['}'] | '(' expr ')'

    ``*`` multiplies scalars, scales forms, and wedges two forms.  Sums must
    be homogeneous; zero terms adapt to any degree.
    """

    def __init__(self, text: str, n: int):
        super().__init__(text)
        self.n = n

    def error(self, msg):
        raise FormSyntaxError(msg, self.pos, self.text)

    def parse(self) -> KForm:
        value = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return value

    def expr(self) -> KForm:
        self.skip_ws()
        sign = 1
        while self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -sign
            self.pos += 1
            self.skip_ws()
        total = self.term().scale(sign)
        self.skip_ws()
        while self.peek() in ("+", "-"):
            sign = 1 if self.peek() == "+" else -1
            self.pos += 1
            term = self.term().scale(sign)
            total = self._accumulate(total, term)
            self.skip_ws()
        return total

    def _accumulate(self, total: KForm, term: KForm) -> KForm:
        if total.is_zero and total.k != term.k:
            return term
        if term.is_zero and total.k != term.k:
            return total
        if total.k != term.k:
            self.error(f"mixed degrees {total.k} and {term.k} in a sum")
        return total + term

    def term(self) -> KForm:
        value = self.factor()
        self.skip_ws()
        while self.peek() == "*":
            self.pos += 1
            rhs = self.factor()
            value = value.wedge(rhs)
            self.skip_ws()
        return value

    def factor(self) -> KForm:
        self.skip_ws()
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            self.skip_ws()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if c == "e":
            return self._basis_atom()
        if self.at_scalar():
            # Disambiguate 'r2' the surd from a stray identifier.
            return KForm.scalar(self.n, self.scan_scalar())
        self.error("expected a scalar, 'e<indices>', or '('")

    def _basis_atom(self) -> KForm:
        self.pos += 1  # consume 'e'
        if self.peek() == "^":
            self.pos += 1
        braced = self.peek() == "{"
        if braced:
            self.pos += 1
        start = self.pos
        digits = []
        while self.peek().isdigit():
            digits.append(int(self.peek()))
            self.pos += 1
        if not digits:
            self.error("expected generator indices after 'e'")
        if braced:
            if self.peek() != "}":
                self.error("expected '}'")
            self.pos += 1
        for i, d in enumerate(digits):
            if not 1 <= d <= self.n:
                raise FormSyntaxError(
                    f"index {d} out of range 1..{self.n}", start + i, self.text
                )
        if len(set(digits)) != len(digits):
            self.error(f"repeated index in e{''.join(map(str, digits))}")
        return KForm.basis(self.n, tuple(digits))


def parse_form(text: str, n: int = 6) -> KForm:
    """Parse a form expression such as ``e1-e2``, ``r2*(e3-e5)``, ``1/2r2*e6``."""
    return _FormParser(text, n).parse()
