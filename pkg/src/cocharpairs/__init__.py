"""Cocharacter pairs for products of restrictions of scalars of GL_n.

Root data and averaging maps, the partial order on pairs, isocrystal
classes, the signed sums over them, and a symbolic Grothendieck-group
layer that evaluates those sums on representations.
"""

from .groth import (
    CuspidalLine,
    EvalResult,
    FormalRep,
    GaloisTerm,
    bracket,
    branch_minuscule,
    check_harris,
    decompose,
    evaluate_M,
    galois_apply,
    induct,
    irreducible,
    jacquet,
    kottwitz_expected,
    ll_ss,
    shin_identity,
    supercuspidal,
)
from .kottwitz import (
    IsocrystalClass,
    T_map,
    b_transfer,
    basic_class,
    center_character_lattice,
    enumerate_B,
    find_class,
    in_B,
    kappa_at,
    test_open_question,
)
from .mant_sum import (
    I_set,
    M_sum,
    R_set,
    SignedPairSum,
    cube_cancellation,
    galois_orbit_partition,
    product_decompose,
    rel_set,
    tensor,
    unique_transfer,
    verify_I_transitivity,
    verify_induction_formula,
    verify_sum_formula,
    verify_sumrel_bijection,
    weyl_cosets,
)
from .pair_poset import (
    CocharacterPair,
    PairPoset,
    covers,
    cube,
    down_set,
    extension,
    hasse_dot,
    is_strictly_decreasing,
    leq,
    make_pair,
    sd_set,
    top_pair,
)
from .root_datum import DiagramDatum, GroupSpec, RootDatum, build_root_datum

__version__ = "0.1.0"
