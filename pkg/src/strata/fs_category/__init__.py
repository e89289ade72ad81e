"""Surjections, binary forests and truncated FS^op modules."""
from .forests import (
    BinaryForest,
    binary_trees,
    compose_forests,
    forest_fullness_check,
    forest_to_surjection,
    generate_forests,
    glue_forest_on_graph,
)
from .modules import (
    FSModuleData,
    counit_is_isomorphism,
    free_module,
    induce,
    induced_dims,
    restrict,
    unit_is_isomorphism,
    zero_module,
)
from .surjections import (
    Surjection,
    compose_surjections,
    count_surjections,
    count_surjections_inclusion_exclusion,
    enumerate_surjections,
    generators,
    permutation_of_cycle_type,
    stirling2,
)

__all__ = [
    "BinaryForest",
    "FSModuleData",
    "Surjection",
    "binary_trees",
    "compose_forests",
    "compose_surjections",
    "count_surjections",
    "count_surjections_inclusion_exclusion",
    "counit_is_isomorphism",
    "enumerate_surjections",
    "forest_fullness_check",
    "forest_to_surjection",
    "free_module",
    "generate_forests",
    "generators",
    "glue_forest_on_graph",
    "induce",
    "induced_dims",
    "permutation_of_cycle_type",
    "restrict",
    "stirling2",
    "unit_is_isomorphism",
    "zero_module",
]
