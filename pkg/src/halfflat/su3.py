"""SU(3)-structures presented by adapted coframes.

A structure enters only through a frame (eta^1, ..., eta^6): the defining
forms are

    omega = eta^{12} + eta^{34} + eta^{56},
    psi+ + i psi- = (eta^1 + i eta^2) ^ (eta^3 + i eta^4) ^ (eta^5 + i eta^6),

and the half-flat conditions are d(omega) ^ omega = 0 and d(psi+) = 0.
Reconstructing a structure from a raw (omega, psi+) pair is out of scope;
frames keep every computation exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import DegenerateFrameError, DegreeError
from .exterior import KForm, format_form, parse_form, wedge_all
from .liealg import LieAlgebra
from .scalar import Scalar


class Frame:
    """An ordered basis of six 1-forms."""

    __slots__ = ("eta", "_matrix", "_dual")

    def __init__(self, eta):
        eta = tuple(eta)
        if len(eta) != 6:
            raise DegenerateFrameError(f"need 6 one-forms, got {len(eta)}")
        for f in eta:
            if f.n != 6 or f.k != 1:
                raise DegreeError("frame entries must be 1-forms in dimension 6")
        matrix = [f.to_vector() for f in eta]
        dual = linalg.invert(linalg.transpose(matrix))
        if dual is None:
            raise DegenerateFrameError("the 6 one-forms are linearly dependent")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "_matrix", matrix)
        object.__setattr__(self, "_dual", dual)

    def __setattr__(self, name, value):
        raise AttributeError("Frame is immutable")

    @staticmethod
    def parse(text: str) -> "Frame":
        """Parse six comma-separated one-form expressions."""
        return Frame([parse_form(part, 6) for part in text.split(",")])

    @staticmethod
    def identity() -> "Frame":
        return Frame([KForm.basis(6, (i,)) for i in range(1, 7)])

    def dual_vector(self, i: int) -> list[Scalar]:
        """Components of the vector X_i dual to the frame (eta^j(X_i) = delta)."""
        return self._dual[i - 1]

    def coordinates(self, a: KForm) -> list[Scalar]:
        """Coefficients of a 1-form in this frame's basis."""
        if a.n != 6 or a.k != 1:
            raise DegreeError("expected a 1-form in dimension 6")
        coords = linalg.solve(linalg.transpose(self._matrix), a.to_vector())
        if coords is None:
            raise AssertionError("frame solve failed; internal error")
        return coords

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return self.eta == other.eta

    def __hash__(self):
        return hash(self.eta)

    def __repr__(self):
        return "Frame(" + ", ".join(format_form(f) for f in self.eta) + ")"


@dataclass(frozen=True)
class SU3Forms:
    """The defining forms (omega, psi+, psi-) of an SU(3)-structure."""

    omega: KForm
    psi_plus: KForm
    psi_minus: KForm


def forms_from_frame(f: Frame) -> SU3Forms:
    """Expand the normal form of an adapted frame.

    The real and imaginary parts of the complex volume form give

        psi+ = eta^{135} - eta^{146} - eta^{236} - eta^{245},
        psi- = eta^{136} + eta^{145} + eta^{235} - eta^{246}.
    """
    e = f.eta

    def h(i, j, *rest):
        parts = [e[i - 1], e[j - 1]] + [e[r - 1] for r in rest]
        return wedge_all(parts)

    omega = h(1, 2) + h(3, 4) + h(5, 6)
    psi_plus = h(1, 3, 5) - h(1, 4, 6) - h(2, 3, 6) - h(2, 4, 5)
    psi_minus = h(1, 3, 6) + h(1, 4, 5) + h(2, 3, 5) - h(2, 4, 6)
    return SU3Forms(omega, psi_plus, psi_minus)


@dataclass(frozen=True)
class HalfFlatCertificate:
    """Outcome of the half-flat test with both evaluated forms."""

    holds: bool
    domega_wedge_omega: KForm
    dpsi_plus: KForm

    def __bool__(self):
        return self.holds


def is_half_flat(g: LieAlgebra, forms: SU3Forms) -> HalfFlatCertificate:
    """d(omega) ^ omega = 0 and d(psi+) = 0, with the evaluations attached."""
    dw_w = g.d(forms.omega).wedge(forms.omega)
    dpsi = g.d(forms.psi_plus)
    return HalfFlatCertificate(dw_w.is_zero and dpsi.is_zero, dw_w, dpsi)


def gram_matrix(forms: SU3Forms, f: Frame) -> list[list[Scalar]]:
    """Gram matrix of the dual frame vectors in the metric of the structure.

    Entries satisfy G[i][j] * omega^3 = -3 (X_i -| omega)^(X_j -| psi+)^psi+
    with X_i dual to f.  Measuring a frame against a foreign structure
    detects scale and orthogonality defects; against its own structure the
    result is the identity.
    """
    omega, psi = forms.omega, forms.psi_plus
    vol = omega.wedge(omega).wedge(omega)
    top = (1, 2, 3, 4, 5, 6)
    vol_coeff = vol.coeff(top)
    if not vol_coeff:
        raise DegenerateFrameError("omega^3 = 0; structure is degenerate")
    contr_omega = [omega.contract_vector(f.dual_vector(i)) for i in range(1, 7)]
    contr_psi = [psi.contract_vector(f.dual_vector(i)) for i in range(1, 7)]
    gram = []
    for i in range(6):
        row = []
        for j in range(6):
            six_form = contr_omega[i].wedge(contr_psi[j]).wedge(psi)
            row.append(Scalar(-3) * six_form.coeff(top) / vol_coeff)
        gram.append(row)
    return gram


def gram_from_forms(f: Frame) -> list[list[Scalar]]:
    """Gram matrix of a frame against the structure it defines.

    Always the identity for a basis frame; re-deriving that over Q(sqrt2)
    pins the sign and normalization conventions exactly.
    """
    return gram_matrix(forms_from_frame(f), f)


def nondegeneracy(f: Frame, a: KForm) -> bool:
    """Whether a ^ (Ja) ^ omega^2 is nonzero.

    J acts frame-wise: J eta^{2k-1} = eta^{2k}, J eta^{2k} = -eta^{2k-1}.
    For an honest adapted frame this holds for every nonzero 1-form.
    """
    if a.k != 1 or a.n != 6:
        raise DegreeError("expected a 1-form in dimension 6")
    if a.is_zero:
        raise DegreeError("nondegeneracy of the zero form is undefined")
    coords = f.coordinates(a)
    ja = KForm.zero(6, 1)
    for k in range(3):
        c_odd, c_even = coords[2 * k], coords[2 * k + 1]
        if c_odd:
            ja = ja + f.eta[2 * k + 1].scale(c_odd)
        if c_even:
            ja = ja - f.eta[2 * k].scale(c_even)
    omega = forms_from_frame(f).omega
    return not a.wedge(ja).wedge(omega).wedge(omega).is_zero
