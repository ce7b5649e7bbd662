"""Coherent splittings and the cohomology of their double complex.

A splitting g* = V1 + V2 bigrades the exterior algebra by
Lambda^{p,q} = Lambda^p V1 ^ Lambda^q V2.  It is coherent when
d(Lambda^{p,q}) lands in Lambda^{p+1,q} + Lambda^{p+2,q-1}; the differential
then splits as d = delta1 + delta2 and the filtration by powers of V1 yields
the groups h^{p,q} refining the Betti numbers.  Everything below works for
dim V1 = 2 (the splittings generated by a simple 2-form) and equally for the
canonical splitting V1 = ker d of arbitrary dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .errors import (
    DerivedLengthError,
    IncoherentSplittingError,
    NotSimpleError,
    NotSolvableError,
    NotUnimodularError,
)
from .exterior import (
    KForm,
    Subspace,
    factor_simple,
    format_form,
    is_simple,
    preimage_on,
    span,
    wedge_all,
)
from .liealg import (
    LieAlgebra,
    cohomology,
    derived_length,
    is_nilpotent,
    is_unimodular,
)
from .scalar import ONE, Scalar


class CoherentSplitting:
    """An ordered decomposition g* = V1 + V2 with the induced bigrading.

    Instances are produced by :func:`splitting_from_generator` or
    :func:`splitting_from_v1`, which verify coherence; the bigraded bases and
    the split differential are memoized on the instance.
    """

    __slots__ = ("algebra", "v1", "v2", "generator", "_cache")

    def __init__(self, algebra: LieAlgebra, v1: Subspace, v2: Subspace):
        n = algebra.n
        if v1.k != 1 or v2.k != 1 or v1.n != n or v2.n != n:
            raise IncoherentSplittingError("V1 and V2 must be spaces of 1-forms")
        if v1.dim + v2.dim != n or v1.intersection(v2).dim != 0:
            raise IncoherentSplittingError("V1 and V2 must be complementary")
        if v1.dim == 0:
            raise IncoherentSplittingError("V1 must be nonzero")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)
        gen = wedge_all(v1.basis_forms()) if v1.dim == 2 else None
        object.__setattr__(self, "generator", gen)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("CoherentSplitting is immutable")

    @property
    def p_max(self) -> int:
        return self.v1.dim

    @property
    def q_max(self) -> int:
        return self.v2.dim

    def bigraded_basis(self, p: int, q: int) -> tuple[KForm, ...]:
        """Wedge basis of Lambda^{p,q} built from the V1 and V2 RREF bases."""
        key = ("basis", p, q)
        if key not in self._cache:
            if not (0 <= p <= self.p_max and 0 <= q <= self.q_max):
                self._cache[key] = ()
            else:
                ones = self.v1.basis_forms()
                twos = self.v2.basis_forms()
                forms = []
                for left in combinations(ones, p):
                    for right in combinations(twos, q):
                        parts = left + right
                        if parts:
                            forms.append(wedge_all(parts))
                        else:
                            forms.append(KForm.scalar(self.algebra.n, 1))
                self._cache[key] = tuple(forms)
        return self._cache[key]

    def bigraded_subspace(self, p: int, q: int) -> Subspace:
        key = ("space", p, q)
        if key not in self._cache:
            self._cache[key] = span(
                list(self.bigraded_basis(p, q)), n=self.algebra.n, k=p + q
            )
        return self._cache[key]

    def filtration(self, p: int, k: int) -> Subspace:
        """F_p of degree k: the span of all Lambda^{p',k-p'} with p' >= p."""
        key = ("filt", p, k)
        if key not in self._cache:
            forms: list[KForm] = []
            for pp in range(max(p, 0), min(self.p_max, k) + 1):
                forms.extend(self.bigraded_basis(pp, k - pp))
            self._cache[key] = span(forms, n=self.algebra.n, k=k)
        return self._cache[key]

    def _degree_decomposer(self, k: int):
        """Inverse change of basis from canonical degree-k coordinates to the
        concatenated bigraded ones; None outside 0..n."""
        key = ("decomp", k)
        if key not in self._cache:
            blocks = [(p, k - p) for p in range(0, min(self.p_max, k) + 1)
                      if 0 <= k - p <= self.q_max]
            cols: list[list[Scalar]] = []
            for p, q in blocks:
                cols.extend(f.to_vector() for f in self.bigraded_basis(p, q))
            matrix = linalg.transpose(cols)
            inv = linalg.invert(matrix)
            if inv is None:
                raise AssertionError("bigraded basis failed to span; internal error")
            self._cache[key] = (blocks, inv)
        return self._cache[key]

    def decompose(self, form: KForm) -> dict[tuple[int, int], list[Scalar]]:
        """Coefficients of a form over each bigraded block of its degree."""
        blocks, inv = self._degree_decomposer(form.k)
        vec = form.to_vector()
        hot = [(i, c) for i, c in enumerate(vec) if c]
        coeffs = []
        for row in inv:
            acc = Scalar(0)
            for i, c in hot:
                acc = acc + row[i] * c
            coeffs.append(acc)
        out = {}
        at = 0
        for p, q in blocks:
            size = len(self.bigraded_basis(p, q))
            out[(p, q)] = coeffs[at:at + size]
            at += size
        return out

    def component(self, form: KForm, p: int, q: int) -> KForm:
        """The Lambda^{p,q} component of a degree p+q form."""
        if form.is_zero:
            return form
        coeffs = self.decompose(form).get((p, q))
        out = KForm.zero(self.algebra.n, p + q)
        if coeffs:
            for c, b in zip(coeffs, self.bigraded_basis(p, q)):
                if c:
                    out = out + b.scale(c)
        return out


@dataclass(frozen=True)
class SplitDifferential:
    """d = delta1 + delta2 as matrices per bigraded component.

    ``delta1[(p, q)]`` maps Lambda^{p,q} to Lambda^{p+1,q} and
    ``delta2[(p, q)]`` to Lambda^{p+2,q-1}, both written in the splitting's
    bigraded bases (columns indexed by the source basis).
    """

    delta1: dict
    delta2: dict


def generator_space(g: LieAlgebra) -> Subspace:
    """Solutions of the linear system cutting out splitting generators.

    For nilpotent g these are the 2-forms in Lambda^2(ker d) wedging to zero
    with every de^i; each simple nonzero solution generates a coherent
    splitting and conversely.  For non-nilpotent g the same system is posed
    over closed 2-forms and yields candidates only: the factor plane of a
    simple solution may still fail coherence, which
    :func:`splitting_from_generator` re-checks directly.
    """
    coh = cohomology(g)
    if is_nilpotent(g):
        kerd = coh.closed[1]
        pool = span(
            [x.wedge(y) for x, y in combinations(kerd.basis_forms(), 2)],
            n=g.n, k=2,
        )
    else:
        pool = coh.closed[2]
    images = []
    for f in pool.basis_forms():
        total: list[Scalar] = []
        for di in g.d1:
            total.extend(f.wedge(di).to_vector())
        images.append(total)
    coeff_kernel = linalg.nullspace(linalg.transpose(images), pool.dim)
    vecs = []
    for a in coeff_kernel:
        v = [Scalar(0)] * pool.ambient_dim
        for ai, row in zip(a, pool.rows):
            if ai:
                v = [x + ai * y for x, y in zip(v, row)]
        vecs.append(v)
    return Subspace(g.n, 2, vecs)


def splitting_from_generator(g: LieAlgebra, alpha: KForm) -> CoherentSplitting:
    """The coherent splitting whose Lambda^{2,0} is spanned by alpha.

    V1 is the factor plane of alpha; V2 is the deterministic complement
    spanned by the canonical covectors avoiding V1's pivots.  Coherence is
    verified directly and certified by the split differential.
    """
    if alpha.k != 2 or alpha.is_zero:
        raise NotSimpleError("generator must be a nonzero 2-form")
    factors = factor_simple(alpha)
    if factors is None:
        raise NotSimpleError(f"generator {alpha} is not simple")
    v1 = span(list(factors))
    return splitting_from_v1(g, v1)


def splitting_from_v1(g: LieAlgebra, v1, v2: Subspace | None = None) -> CoherentSplitting:
    """Coherent splitting with the given V1 (a Subspace or list of 1-forms).

    V2 defaults to the canonical complement; any complement gives the same
    h^{p,q}.  Raises IncoherentSplittingError when coherence fails.
    """
    if not isinstance(v1, Subspace):
        v1 = span(list(v1), n=g.n, k=1)
    if v2 is None:
        v2 = span(list(v1.complement_pivot_basis()), n=g.n, k=1)
    s = CoherentSplitting(g, v1, v2)
    split_d(g, s)  # verifies coherence across every bigraded component
    return s


def split_d(g: LieAlgebra, s: CoherentSplitting) -> SplitDifferential:
    """Decompose d into delta1 + delta2 on every bigraded component.

    Raises IncoherentSplittingError if d has any component outside the
    coherent pattern; verifies delta1^2 = delta2^2 = 0 and anticommutation.
    """
    _check_same_algebra(g, s)
    if "split" in s._cache:
        return s._cache["split"]
    d1: dict = {}
    d2: dict = {}
    for p in range(0, s.p_max + 1):
        for q in range(0, s.q_max + 1):
            basis = s.bigraded_basis(p, q)
            if not basis:
                continue
            n1 = len(s.bigraded_basis(p + 1, q))
            n2 = len(s.bigraded_basis(p + 2, q - 1))
            m1 = linalg.zeros(n1, len(basis))
            m2 = linalg.zeros(n2, len(basis))
            for col, beta in enumerate(basis):
                image = g.d(beta)
                if image.is_zero:
                    continue
                comps = s.decompose(image)
                for (pp, qq), coeffs in comps.items():
                    if all(not c for c in coeffs):
                        continue
                    if (pp, qq) == (p + 1, q):
                        for row, c in enumerate(coeffs):
                            m1[row][col] = c
                    elif (pp, qq) == (p + 2, q - 1):
                        for row, c in enumerate(coeffs):
                            m2[row][col] = c
                    else:
                        raise IncoherentSplittingError(
                            f"d maps ({p},{q}) into ({pp},{qq}): "
                            f"d({beta}) = {image}"
                        )
            d1[(p, q)] = m1
            d2[(p, q)] = m2
    _verify_double_complex(s, d1, d2)
    result = SplitDifferential(d1, d2)
    s._cache["split"] = result
    return result


def _verify_double_complex(s: CoherentSplitting, d1, d2):
    for (p, q), m in d1.items():
        nxt = d1.get((p + 1, q))
        if nxt and m and not linalg.is_zero_matrix(linalg.mat_mul(nxt, m)):
            raise AssertionError("delta1^2 != 0; internal error")
    for (p, q), m in d2.items():
        nxt = d2.get((p + 2, q - 1))
        if nxt and m and not linalg.is_zero_matrix(linalg.mat_mul(nxt, m)):
            raise AssertionError("delta2^2 != 0; internal error")
    for (p, q), m1 in d1.items():
        m2 = d2.get((p, q))
        if m2 is None:
            continue
        a = d2.get((p + 1, q))
        b = d1.get((p + 2, q - 1))
        if a and b and m1 and m2:
            left = linalg.mat_mul(a, m1)
            right = linalg.mat_mul(b, m2)
            total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(left, right)]
            if not linalg.is_zero_matrix(total):
                raise AssertionError("delta1 delta2 + delta2 delta1 != 0")


def _check_same_algebra(g: LieAlgebra, s: CoherentSplitting):
    if s.algebra != g:
        raise IncoherentSplittingError("splitting was built for a different algebra")


@dataclass(frozen=True)
class HpqTable:
    """Dimensions h^{p,q} of the filtration quotients of H^{p+q}.

    ``filtration_dims[(k, p)]`` records (dim Z^k_p, dim H^k_p); the table
    spans 0 <= p <= p_max, 0 <= q <= q_max and refines the Betti numbers.
    """

    p_max: int
    q_max: int
    h: dict
    filtration_dims: dict
    betti: tuple

    def __getitem__(self, pq) -> int:
        return self.h.get(tuple(pq), 0)

    def row(self, p: int) -> list[int]:
        return [self[(p, q)] for q in range(self.q_max + 1)]

    def to_rows(self) -> list[list[int]]:
        return [self.row(p) for p in range(self.p_max + 1)]


def hpq(g: LieAlgebra, s: CoherentSplitting) -> HpqTable:
    """The groups h^{p,q} via the filtration by powers of V1.

    Z^k_p is the intersection of the closed k-forms with filtration level p;
    passing to cohomology and taking successive quotient dimensions gives
    h^{p,q}.  The result depends only on V1.
    """
    _check_same_algebra(g, s)
    if "hpq" in s._cache:
        return s._cache["hpq"]
    split_d(g, s)  # coherence gate
    coh = cohomology(g)
    n = g.n
    filtration_dims = {}
    hdims = {}
    for k in range(0, n + 1):
        zk = coh.closed[k]
        bk = coh.exact[k]
        for p in range(0, s.p_max + 2):
            if p == 0:
                # F_0 is everything and B^k lies inside Z^k.
                zdim, hdim = zk.dim, zk.dim - bk.dim
            else:
                fp = s.filtration(p, k)
                if fp.dim == 0:
                    zdim = hdim = 0
                else:
                    zkp = zk.intersection(fp)
                    zdim = zkp.dim
                    hdim = zdim - zkp.intersection(bk).dim
            filtration_dims[(k, p)] = (zdim, hdim)
            hdims[(k, p)] = hdim
    table = {}
    for p in range(0, s.p_max + 1):
        for q in range(0, s.q_max + 1):
            k = p + q
            if k > n:
                continue
            value = hdims[(k, p)] - hdims[(k, p + 1)]
            if value < 0:
                raise AssertionError("negative h^{p,q}; internal error")
            table[(p, q)] = value
    result = HpqTable(s.p_max, s.q_max, table, filtration_dims, coh.betti)
    for k in range(0, n + 1):
        total = sum(v for (p, q), v in table.items() if p + q == k)
        if total != coh.betti[k]:
            raise AssertionError(
                f"sum of h^(p,q) over p+q={k} is {total} != b_{k}"
            )
    s._cache["hpq"] = result
    return result


@dataclass(frozen=True)
class E1Table:
    """First spectral-sequence page of the double complex.

    ``dims[(p, q)]`` is dim E_1^{p,q}; the kernel of delta1 on Lambda^{0,2}
    is exported with an explicit basis.  ``e2_dims`` is the (collapsed)
    second page, which equals the h^{p,q}.
    """

    dims: dict
    basis_02: tuple
    e2_dims: dict

    @property
    def dim_02(self) -> int:
        return self.dims.get((0, 2), 0)


def e1_term(g: LieAlgebra, s: CoherentSplitting) -> E1Table:
    """Dimensions of E_1 and E_2, with the explicit E_1^{0,2} basis.

    E_1^{p,q} is the delta1-cohomology of Lambda^{p,q}; the induced delta2
    then computes E_2, which is checked to agree with the filtration groups
    h^{p,q} (the sequence collapses there).
    """
    _check_same_algebra(g, s)
    if "e1" in s._cache:
        return s._cache["e1"]
    split_d(g, s)
    n = g.n
    kernels: dict = {}
    images: dict = {}
    zero2 = {}
    for p in range(0, s.p_max + 1):
        for q in range(0, s.q_max + 1):
            if p + q > n:
                continue
            domain = s.bigraded_subspace(p, q)
            if domain.dim == 0:
                kernels[(p, q)] = domain
                continue
            # delta1 x = 0 iff dx already lies two filtration steps up.
            target = s.filtration(p + 2, p + q + 1)
            d_images = [g.d(f) for f in domain.basis_forms()]
            kernels[(p, q)] = preimage_on(domain, d_images, target)
            # the delta1-image inside Lambda^{p+1,q}
            img_forms = [s.component(img, p + 1, q) for img in d_images]
            images[(p + 1, q)] = span(img_forms, n=n, k=p + q + 1)
    dims = {}
    for (p, q), ker in kernels.items():
        img = images.get((p, q))
        dims[(p, q)] = ker.dim - (img.dim if img else 0)
        if dims[(p, q)] < 0:
            raise AssertionError("negative E_1 dimension; internal error")
    basis_02 = kernels.get((0, 2), Subspace(n, 2)).basis_forms()

    # Euler characteristics along each delta1 row are preserved.
    for q in range(0, s.q_max + 1):
        lhs = sum((-1) ** p * dims.get((p, q), 0) for p in range(s.p_max + 1))
        rhs = sum(
            (-1) ** p * len(s.bigraded_basis(p, q)) for p in range(s.p_max + 1)
        )
        if lhs != rhs:
            raise AssertionError("E_1 Euler characteristic mismatch")

    # Second page: on delta1-kernels the induced differential is just d.
    e2_dims = {}
    for (p, q), ker in kernels.items():
        img = images.get((p, q)) or Subspace(n, p + q)
        target_img = images.get((p + 2, q - 1)) or Subspace(n, p + q + 1)
        persists = preimage_on(ker, [g.d(f) for f in ker.basis_forms()], target_img)
        src = kernels.get((p - 2, q + 1))
        if src is None or src.dim == 0:
            incoming = Subspace(n, p + q)
        else:
            incoming = span([g.d(f) for f in src.basis_forms()], n=n, k=p + q)
        e2_dims[(p, q)] = persists.dim - (incoming + img).dim
        if e2_dims[(p, q)] < 0:
            raise AssertionError("negative E_2 dimension; internal error")

    table = hpq(g, s)
    for (p, q), value in e2_dims.items():
        if value != table[(p, q)]:
            raise AssertionError(
                f"E_2^{{{p},{q}}} = {value} != h^{{{p},{q}}} = {table[(p, q)]}"
            )
    result = E1Table(dims, basis_02, e2_dims)
    s._cache["e1"] = result
    return result


def prop2_h03(g: LieAlgebra, s: CoherentSplitting) -> int:
    """h^{0,3} for unimodular algebras via 1 - b1 + b2 - dim E_1^{0,2}.

    Cross-checked against the filtration value; raises NotUnimodularError
    when the shortcut is not licensed.
    """
    if not is_unimodular(g):
        raise NotUnimodularError("h^{0,3} shortcut requires a unimodular algebra")
    coh = cohomology(g)
    value = 1 - coh.betti[1] + coh.betti[2] - e1_term(g, s).dim_02
    direct = hpq(g, s)[(0, 3)]
    if value != direct:
        raise AssertionError(f"shortcut h03 {value} != filtration {direct}")
    return value


def prop2_h04_zero(g: LieAlgebra, s: CoherentSplitting) -> bool:
    """Whether h^{0,4} vanishes: exactly when the generator is exact."""
    if not is_unimodular(g):
        raise NotUnimodularError("h^{0,4} shortcut requires a unimodular algebra")
    if s.generator is None:
        raise NotSimpleError("shortcut needs a dim-2 splitting with a generator")
    exact = cohomology(g).exact[2].contains(s.generator)
    direct = hpq(g, s)[(0, 4)] == 0
    if exact != direct:
        raise AssertionError("h04 shortcut disagrees with filtration")
    return direct


def canonical_hpq(g: LieAlgebra) -> HpqTable:
    """h^{p,q} of the canonical splitting V1 = ker d.

    Defined whenever the derived algebra is abelian (derived length <= 2);
    for unimodular g the generalized duality h^{p,q} = h^{b1-p, (n-b1)-q} is
    asserted.
    """
    try:
        length = derived_length(g)
    except NotSolvableError as exc:
        raise DerivedLengthError(str(exc)) from exc
    if length > 2:
        raise DerivedLengthError(
            f"derived length {length} > 2: no canonical double complex"
        )
    v1 = cohomology(g).closed[1]
    s = splitting_from_v1(g, v1)
    table = hpq(g, s)
    if is_unimodular(g):
        b1 = v1.dim
        for p in range(0, table.p_max + 1):
            for q in range(0, table.q_max + 1):
                dual = table[(b1 - p, (g.n - b1) - q)]
                if table[(p, q)] != dual:
                    raise AssertionError("generalized duality fails; internal error")
    return table


def simple_generator_witnesses(g: LieAlgebra, gs: Subspace | None = None) -> list[KForm]:
    """Finite witness set of simple generators: the simple RREF basis vectors
    of the generator space together with their simple pairwise sums and
    differences."""
    if gs is None:
        gs = generator_space(g)
    basis = gs.basis_forms()
    seen: list[KForm] = []
    out: list[KForm] = []

    def push(f: KForm):
        if f.is_zero or not is_simple(f):
            return
        for prev in seen:
            if span([prev]) == span([f]):
                return
        seen.append(f)
        out.append(f)

    for f in basis:
        push(f)
    for a, b in combinations(basis, 2):
        push(a + b)
        push(a - b)
    return out


def hpq_to_json_obj(table: HpqTable, e1_basis=None) -> dict:
    """The documented JSON shape {"h": rows, "b": betti, "e1_02_basis": [...]}."""
    return {
        "h": table.to_rows(),
        "b": list(table.betti),
        "e1_02_basis": [format_form(f) for f in (e1_basis or ())],
    }
