"""Exact computation with 2-representations of finite groups.

A 2-representation in the 2-category of 2-vector spaces is classified by a
finite G-set together with a degree-2 cohomology class of the group with
coefficients in the permutation module of roots of unity on that set.  This
package builds those objects explicitly — permutation groups, G-sets,
cochains with values in Q/Z, cohomology groups computed by exact integer
linear algebra — and evaluates their 2-characters exactly in rings of
cyclotomic integers.
"""

from .errors import NonCocycleError, SizeCapError, TworepsError, ValidationError
from .permgrp import (CosetReps, PermGroup, Subgroup, all_subgroups,
                      commuting_pairs, conjugacy_classes, cyclic_group,
                      dihedral_group, group_from_generators, klein_four_group,
                      left_coset_reps, named_group, parse_group_spec,
                      product_group, simultaneous_pair_classes,
                      subgroup_conjugacy_classes, subgroup_from_indices,
                      subgroup_generated, subgroup_group, symmetric_group)
from .gset import (GSet, OrbitDecomposition, coset_gset, empty_gset,
                   fixed_points, gset_from_action, gset_product, gset_sum,
                   induced_gset, orbits_with_stabilizers, regular_gset,
                   trivial_gset)
from .zlinalg import (SNFResult, divisible_preimage, left_kernel_basis,
                      smith_normal_form, solve_mod)
from .cohomology import (QZ, Cochain1, Cochain2, H2Group, act,
                         are_cohomologous, delta1, h2_compute, is_cocycle,
                         normalize_cocycle, shapiro_compare, zero_cochain1,
                         zero_cochain2)
from .tworep import (EquivalenceWitness, TwoRep, are_equivalent, decompose,
                     direct_sum, induce, tensor, tworep_new)
from .character import (CharacterTable, Cyclo, PsiMap, character_table,
                        character_via_psi, collision_search, cyclo_add,
                        cyclo_eq, cyclo_make, cyclo_mul, dim_sum, dim_tensor,
                        induced_character_check, psi_map, trace_dim,
                        two_character)

__version__ = "0.1.0"
