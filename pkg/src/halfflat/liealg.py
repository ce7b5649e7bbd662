"""Lie algebras presented through the differential of their dual space.

An algebra is entered in structure-constant notation: a comma-separated
tuple whose i-th entry is d(e^i) written as a signed sum of index pairs, so
``(0,12,13,14,15,16)`` means de^1 = 0 and de^i = e^1 ^ e^i.  A pair "ab" with
a > b denotes e^a ^ e^b = -e^{ba}.  The differential extends to all degrees
as an antiderivation; d.d = 0 is equivalent to the Jacobi identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import DegreeError, JacobiError, NotationError, NotSolvableError
from .exterior import KForm, Subspace, basis_indices, kernel_on, preimage_on, span
from .scalar import ONE, Scalar, _ScalarScanner


class LieAlgebra:
    """Dimension n plus the differential on degree-1 generators.

    Immutable after construction; derived data (differential matrices,
    cohomology) is memoized internally.
    """

    __slots__ = ("n", "d1", "_matrices", "_cohomology")

    def __init__(self, d1: list[KForm]):
        n = len(d1)
        if n < 2:
            raise NotationError("dimension must be at least 2", 0)
        for i, f in enumerate(d1):
            if f.n != n or f.k != 2:
                raise DegreeError(f"d(e^{i + 1}) must be a 2-form in dimension {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d1", tuple(d1))
        object.__setattr__(self, "_matrices", {})
        object.__setattr__(self, "_cohomology", [None])

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.n == other.n and self.d1 == other.d1

    def __hash__(self):
        return hash((self.n, self.d1))

    def __repr__(self):
        return f"LieAlgebra({format_notation(self)!r})"

    # -- differential ---------------------------------------------------------

    def d(self, a: KForm) -> KForm:
        """The antiderivation extending d on generators (degree +1)."""
        if a.n != self.n:
            raise DegreeError(f"form lives in dimension {a.n}, algebra in {self.n}")
        out = KForm.zero(self.n, a.k + 1)
        for idx, c in a.coeffs.items():
            for pos, i in enumerate(idx):
                di = self.d1[i - 1]
                if di.is_zero:
                    continue
                rest = KForm.basis(self.n, idx[:pos] + idx[pos + 1:])
                term = di.wedge(rest).scale(c)
                out = out + term if pos % 2 == 0 else out - term
        return out

    def d_matrix(self, k: int) -> list[list[Scalar]]:
        """Matrix of d : degree k -> degree k+1, columns indexed by basis forms."""
        if k not in self._matrices:
            cols = [self.d(KForm.basis(self.n, idx)).to_vector()
                    for idx in basis_indices(self.n, k)]
            self._matrices[k] = linalg.transpose(cols) if cols else []
        return self._matrices[k]

    def d_images(self, k: int) -> list[KForm]:
        """Images of the canonical degree-k basis under d."""
        return [self.d(KForm.basis(self.n, idx)) for idx in basis_indices(self.n, k)]


@dataclass(frozen=True)
class CohomologySummary:
    """Closed and exact subspaces per degree, with Betti numbers."""

    betti: tuple[int, ...]
    closed: tuple[Subspace, ...]
    exact: tuple[Subspace, ...]


def check_jacobi(g: LieAlgebra) -> bool:
    """d.d = 0 on generators, which is the Jacobi identity in dual form."""
    return all(g.d(di).is_zero for di in g.d1)


def differential(g: LieAlgebra, a: KForm) -> KForm:
    return g.d(a)


def closed_forms(g: LieAlgebra, k: int) -> Subspace:
    """Z^k, the kernel of d on degree k."""
    if k == 0:
        return Subspace.full(g.n, 0)
    return kernel_on(Subspace.full(g.n, k), g.d_images(k))


def exact_forms(g: LieAlgebra, k: int) -> Subspace:
    """B^k, the image of d from degree k-1."""
    if k == 0:
        return Subspace(g.n, 0)
    return span(g.d_images(k - 1), n=g.n, k=k)


def cohomology(g: LieAlgebra) -> CohomologySummary:
    if g._cohomology[0] is None:
        if not check_jacobi(g):
            raise JacobiError("d^2 != 0; not a Lie algebra differential")
        closed = tuple(closed_forms(g, k) for k in range(g.n + 1))
        exact = tuple(exact_forms(g, k) for k in range(g.n + 1))
        betti = tuple(z.dim - b.dim for z, b in zip(closed, exact))
        g._cohomology[0] = CohomologySummary(betti, closed, exact)
    return g._cohomology[0]


def is_nilpotent(g: LieAlgebra) -> bool:
    """Ascending filtration W_{i+1} = {a : da in Lambda^2 W_i} reaches g*."""
    w = Subspace(g.n, 1)
    images = g.d_images(1)
    one_forms = Subspace.full(g.n, 1)
    while True:
        if w.dim == g.n:
            return True
        wedge_w = span(
            [x.wedge(y) for x in w.basis_forms() for y in w.basis_forms()],
            n=g.n, k=2,
        )
        nxt = preimage_on(one_forms, images, wedge_w)
        if nxt.dim == w.dim:
            return False
        w = nxt


def is_unimodular(g: LieAlgebra) -> bool:
    """All (n-1)-forms closed; cross-checked against the top Betti number."""
    direct = linalg.is_zero_matrix(g.d_matrix(g.n - 1))
    via_betti = cohomology(g).betti[g.n] == 1
    if direct != via_betti:
        raise AssertionError("unimodularity checks disagree; internal error")
    return direct


def derived_length(g: LieAlgebra) -> int:
    """Least m with the m-th derived algebra zero, computed dually.

    The annihilator of the derived algebra is ker d; one step deeper, a form
    annihilates [D^m, D^m] iff its differential lies in the ideal generated
    by the annihilator of D^m.
    """
    ann = Subspace(g.n, 1)  # annihilator of D^0 = g
    images = g.d_images(1)
    one_forms = Subspace.full(g.n, 1)
    steps = 0
    while ann.dim < g.n:
        ideal_basis = [
            a.wedge(e)
            for a in ann.basis_forms()
            for e in (KForm.basis(g.n, (j,)) for j in range(1, g.n + 1))
        ]
        ideal = span(ideal_basis, n=g.n, k=2)
        nxt = preimage_on(one_forms, images, ideal)
        steps += 1
        if nxt.dim == ann.dim:
            raise NotSolvableError("derived series does not terminate")
        ann = nxt
    return steps


# -- structure-constant notation ------------------------------------------------


def parse_notation(s: str) -> LieAlgebra:
    """Parse structure-constant notation into a LieAlgebra.

    Whitespace and one pair of surrounding parentheses are ignored.  Each
    comma-separated entry is "0" or a signed sum of products
    ``[scalar *] digit digit``; a pair "ab" denotes e^a ^ e^b.
    """
    text = s
    sc = _ScalarScanner(text)
    sc.skip_ws()
    end = len(text)
    while end > 0 and text[end - 1].isspace():
        end -= 1
    if sc.peek() == "(" and end > 0 and text[end - 1] == ")":
        sc.pos += 1
        end -= 1

    entries: list[list[tuple[Scalar, int, int]]] = []
    while True:
        entries.append(_parse_entry(sc, end, text))
        sc.skip_ws()
        if sc.pos >= end:
            break
        if sc.peek() != ",":
            raise NotationError("expected ','", sc.pos, text)
        sc.pos += 1
    n = len(entries)
    if n < 2:
        raise NotationError("dimension must be at least 2", 0, text)
    if n > 9:
        raise NotationError("single-digit notation supports dimension <= 9", 0, text)

    d1 = []
    for terms in entries:
        form = KForm.zero(n, 2)
        for coeff, a, b in terms:
            for d in (a, b):
                if d > n:
                    raise NotationError(f"index {d} exceeds dimension {n}", 0, text)
            form = form + KForm.basis(n, (a, b)).scale(coeff)
        d1.append(form)
    return LieAlgebra(d1)


def _parse_entry(sc: _ScalarScanner, end: int, text: str):
    sc.skip_ws()
    if sc.pos >= end:
        raise NotationError("empty entry", sc.pos, text)
    if sc.peek() == "0" and not _continues_pair(text, sc.pos, end):
        sc.pos += 1
        return []
    terms = []
    first = True
    while True:
        sc.skip_ws()
        sign = 1
        if sc.peek() in ("+", "-"):
            if first and sc.peek() == "+":
                raise NotationError("unexpected leading '+'", sc.pos, text)
            sign = -1 if sc.peek() == "-" else 1
            sc.pos += 1
            sc.skip_ws()
        elif not first:
            break
        terms.append(_parse_product(sc, end, text, sign))
        first = False
        sc.skip_ws()
        if sc.pos >= end or sc.peek() == ",":
            break
        if sc.peek() not in ("+", "-"):
            raise NotationError("expected '+', '-' or ','", sc.pos, text)
    return terms


def _continues_pair(text: str, pos: int, end: int) -> bool:
    # A leading '0' is the zero entry only when not the first digit of a pair
    # like "02" (which would be an out-of-range index anyway).
    return pos + 1 < end and text[pos + 1].isdigit()


def _parse_product(sc: _ScalarScanner, end: int, text: str, sign: int):
    sc.skip_ws()
    coeff = Scalar(sign)
    # A product may start with a scalar literal followed by '*'; digits alone
    # are the index pair.  Lookahead decides: scalar iff a '*' or '/' or 'r2'
    # intervenes before two bare digits.
    start = sc.pos
    if text.startswith("r2", sc.pos):
        coeff = coeff * sc.scan_scalar()
        sc.skip_ws()
        if sc.peek() != "*":
            raise NotationError("expected '*' after coefficient", sc.pos, text)
        sc.pos += 1
        sc.skip_ws()
    elif sc.peek().isdigit():
        probe = sc.pos
        while probe < end and text[probe].isdigit():
            probe += 1
        if probe < end and text[probe] in "*/r":
            coeff = coeff * sc.scan_scalar()
            sc.skip_ws()
            if sc.peek() != "*":
                raise NotationError("expected '*' after coefficient", sc.pos, text)
            sc.pos += 1
            sc.skip_ws()
    if not sc.peek().isdigit():
        raise NotationError("expected an index pair", sc.pos, text)
    a = int(sc.peek())
    sc.pos += 1
    if not sc.peek().isdigit():
        raise NotationError("expected second index of pair", sc.pos, text)
    b = int(sc.peek())
    sc.pos += 1
    if sc.peek().isdigit():
        raise NotationError("index pairs have exactly two digits", sc.pos, text)
    if a == b:
        raise NotationError(f"repeated index in pair '{a}{b}'", start, text)
    if a == 0 or b == 0:
        raise NotationError("index 0 is not a generator", start, text)
    return coeff, a, b


def format_notation(g: LieAlgebra) -> str:
    """Canonical notation string: terms in basis order, no whitespace.

    Coefficients outside {-1, 0, +1} use the explicit ``c*ab`` syntax.
    """
    entries = []
    for form in g.d1:
        if form.is_zero:
            entries.append("0")
            continue
        parts = []
        for idx, c in form.terms():
            pair = f"{idx[0]}{idx[1]}"
            for piece in (Scalar(c.a), Scalar(0, c.b)):
                if not piece:
                    continue
                neg = (piece.a < 0) or (piece.b < 0)
                mag = -piece if neg else piece
                body = pair if mag == ONE else f"{mag}*{pair}"
                if not parts:
                    parts.append(("-" if neg else "") + body)
                else:
                    parts.append(("-" if neg else "+") + body)
        entries.append("".join(parts))
    return ",".join(entries)
