"""Exact conjugation invariants of d-tuples of 2x2 matrices.

The package evaluates trace/determinant invariant catalogs over exact
fields (Q, F_p, GF(2^k)), decides whether two tuples are separated by a
catalog, constructs minimality witnesses for every separating-catalog
element, and machine-verifies the shipped corpus of polynomial identity
certificates with a symbolic engine.  See the README for the CLI and the
acceptance suite.
"""

from .errors import MatInv2Error
from .fields import FieldSpec, field_create, gf2k, parse_field_spec, prime_field, rationals, sqrt_in_field
from .invariants import (
    Fingerprint,
    InvariantDescriptor,
    SeparationResult,
    catalog,
    det,
    eval_invariant,
    fingerprint,
    generating_set,
    oracle_separated,
    pairsum,
    parse_descriptor,
    prop4_check,
    separated_by,
    separating_set,
    tr_word,
    zero_separating_set,
)
from .matrices import (
    Mat2,
    MatrixTuple,
    NormalForm,
    clear_conjugator,
    conjugate,
    eval_word,
    mat2_algebra,
    normalize_leading,
    swap_conjugator,
)
from .cases import (
    CaseSpec,
    CertificateReport,
    builtin_case_suite,
    instantiate_case,
    load_case,
    parse_expression,
    substitute_chain,
    verify_case,
)
from .polys import F2, ZZ, ConditionId, FracPoly, Poly, condition_poly, generic_trace_word
from .witnesses import (
    GENERATOR_FAMILIES,
    WitnessPair,
    check_witness,
    conjugate_pair,
    draw_family_pairs,
    mirror_params,
    nonseparated_family,
    witness_for,
)
from .kernel import backend_name

__version__ = "0.1.0"
