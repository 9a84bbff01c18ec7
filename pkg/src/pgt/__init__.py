"""Centralizers, element centers and maximal abelian subgroups of finite groups."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    ExtField,
    PrimeField,
    Semifield,
    Subspace,
    semifield_from_field,
    semifield_validate,
    subspace_ops,
)
from .catalog import CATALOG, catalog_group  # noqa: E402
from .centralizers import (  # noqa: E402
    center,
    center_family,
    centralizer,
    class_size,
    class_size_multiset,
    conjugacy_classes,
    element_center,
    lemma_check_s2,
    parameters,
)
from .constructions import (  # noqa: E402
    A4,
    D4,
    Q8,
    S3,
    S4,
    CommutatorPresentation,
    example_n4,
    example_n5,
    extraspecial,
    from_commutator_relations,
    generalized_semifield_group,
    heisenberg,
    paper_H,
    semifield_heisenberg,
)
from .groups import (  # noqa: E402
    BilinearGroup,
    Subgroup,
    TableGroup,
    expand_bilinear_to_table,
    group_from_bilinear,
    group_from_permutations,
    group_from_table,
    subgroup_from_generators,
)
from .maxabelian import (  # noqa: E402
    bound_certificate,
    characterize_maximal_abelian,
    enumerate_maximal_abelian,
    extend_to_maximal_abelian,
    is_maximal_abelian,
    lemma_check_s3,
    product_of_centers,
)
from .ses import (  # noqa: E402
    fingerprint,
    fingerprint_compare,
    h_candidate_check,
    is_semi_extraspecial,
    is_special,
    is_ultraspecial,
    open_question_check,
    ses_certificate,
)
