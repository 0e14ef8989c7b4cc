"""Building sets, nested sets and combinatorial blowups of finite meet-semilattices."""
from cblow.poset import (
    IsoWitness, Poset, SemiLattice, build_semilattice, direct_product, elementary_divisors,
    finest_factorization, irreducibles, is_irreducible, is_isomorphic,
)
from cblow.generators import (
    RankedSemiLattice, boolean_lattice, chain, coordinate_arrangement_lattice, divisor_lattice,
    partition_lattice, random_semilattice,
)
from cblow.building import (
    BuildingSet, building_set, check_building_cond2, check_building_cond3, check_building_cond4,
    check_building_def, check_geometric, enumerate_building_sets, factors, is_building_set,
    maximal_building_set, minimal_building_set, verify_factor_properties,
)
from cblow.nested import (
    NestedComplex, face_poset, is_nested, is_nested_via_chain, is_nested_via_factors,
    is_nested_via_lambda, nested_complex,
)
from cblow.blowup import (
    Marked, blowup_sequence, combinatorial_blowup, transfer_building_set, verify_blowup_joins,
    verify_main_theorem,
)
from cblow.fans import (
    FacePosetFan, fan_from_cones, simplicialize, stellar_subdivision, verify_simplicialize,
    verify_stellar_is_blowup,
)
from cblow.algebra import AlgebraPresentation, d_algebra, export_presentation, parse_presentation
from cblow.kernels import backend_name, set_backend, using_backend

__version__ = "0.1.0"
