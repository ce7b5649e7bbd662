"""Exact classification of half-flat SU(3)-structures on nilpotent Lie algebras.

The package computes, entirely over Q(sqrt2):

* exterior algebra and exact linear algebra on a low-dimensional space,
* Chevalley-Eilenberg cohomology of Lie algebras in structure-constant
  notation,
* coherent splittings, their double complex, the filtration groups h^{p,q}
  and spectral-sequence pages,
* half-flat verification of SU(3)-structures given by adapted frames,
* the full classification of the 34 six-dimensional nilpotent Lie algebras
  into half-flat and obstructed ones, with machine-checkable certificates.
"""

from .errors import (
    CertificateRefused,
    DegenerateFrameError,
    DegreeError,
    DerivedLengthError,
    DimensionMismatchError,
    FormSyntaxError,
    HalfFlatError,
    IncoherentSplittingError,
    JacobiError,
    NotationError,
    NotSimpleError,
    NotSolvableError,
    NotUnimodularError,
    UndecidedError,
)
from .scalar import ONE, SQRT2, ZERO, Scalar, parse_scalar_literal
from .exterior import (
    KForm,
    Subspace,
    alternating_rank,
    contract,
    factor_simple,
    format_form,
    is_simple,
    kernel,
    member,
    parse_form,
    span,
    wedge,
)
from .liealg import (
    CohomologySummary,
    LieAlgebra,
    check_jacobi,
    cohomology,
    derived_length,
    differential,
    format_notation,
    is_nilpotent,
    is_unimodular,
    parse_notation,
)
from .splitting import (
    CoherentSplitting,
    E1Table,
    HpqTable,
    SplitDifferential,
    canonical_hpq,
    e1_term,
    generator_space,
    hpq,
    prop2_h03,
    prop2_h04_zero,
    simple_generator_witnesses,
    split_d,
    splitting_from_generator,
    splitting_from_v1,
)
from .su3 import (
    Frame,
    HalfFlatCertificate,
    SU3Forms,
    forms_from_frame,
    gram_from_forms,
    gram_matrix,
    is_half_flat,
    nondegeneracy,
)
from .obstruction import (
    Lemma4Certificate,
    Verdict,
    classify,
    corollary_cond1,
    corollary_cond2,
    lemma4_verify,
    theorem1_obstructed,
    trilinear_vanishing,
)
from .catalog import (
    CATALOG,
    CatalogEntry,
    catalog_checksum,
    catalog_json,
    classify_all,
    load_catalog,
    partition_counts,
    verify_table1,
    verify_table2,
)

__version__ = "0.1.0"
