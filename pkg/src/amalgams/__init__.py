"""Classification of amalgams of finite groups over a graph via pointings."""

from .amalgam import (
    Amalgam,
    AmalgamIsomorphism,
    AmalgamType,
    amalgams_isomorphic_oracle,
    make_amalgam,
    verify_amalgam_isomorphism,
)
from .coset import (
    GoldschmidtInstance,
    goldschmidt_classes,
    triangle_equivalence_classes,
    triangle_instance,
    xi_inverse,
    xi_map,
)
from .errors import (
    AmalgamError,
    BudgetExceeded,
    CapExceeded,
    InputError,
    NotRigid,
    ResourceError,
    SchemaError,
)
from .graph import OrientedGraph, build_graph, spanning_tree
from .groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    automorphism_group,
    generate_group,
    hom_from_gen_images,
)
from .paths import (
    PathWord,
    Verdict,
    canonicalize,
    fundamental_generators,
    same_fundamental_group_bounded,
)
from .pointing import (
    ClassificationReport,
    GraphOfGroups,
    Pointing,
    amalgam_from_pointing,
    classify,
    normalize_on_tree,
    pointing_from_amalgam,
    pointings_isomorphic,
    reference_graph,
)
from .rigid import check_rigidity, classify_rigid, is_rigid
from .schema import load_instance

__version__ = "0.1.0"
