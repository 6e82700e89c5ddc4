"""Exact desk-scale machinery for S-unit and Thue-Mahler equations over Q."""

from .errors import EnumerationCapExceeded, InternalConsistencyError
from .sarith import (
    SContext,
    SMembership,
    SUnit,
    enumerate_s_units,
    extend_s,
    is_s_integer,
    is_s_unit,
    s_membership,
    valuation,
)
from .projective import (
    Hyperplane,
    ProjPoint,
    ResiduePoint,
    change_coordinates,
    is_s_integral,
    normalize,
    quadratic_embed,
    reduce_mod_p,
)
from .unitsolve import (
    ClassRep,
    UnitTuple,
    lift_binomial,
    lift_gamma,
    normalize_class,
    solve_unit_equation,
    unit_tuple,
    vanishing_subsums,
)
from .thuemahler import (
    BinaryFormSpec,
    TMSolution,
    XYForm,
    classes_equivalent,
    eval_form,
    make_solution,
    shear_transform,
    siegel_residue,
    solve_thue_mahler,
    transport_thue_to_unit,
    transport_unit_to_thue,
    unit_point_dictionary,
)
from .approx import (
    ApproxReport,
    RootSet,
    forward_bound,
    isolate_roots,
    kappa_backward,
    verify_inequality,
)
from .hyperarr import (
    CoveringResult,
    LinearFormSystem,
    SubspaceModel,
    covering_hyperplanes,
    distinct_traces,
    rank_and_reorder,
    verify_covering,
)
from .curves import CurveSpec, Family, enumerate_points

__all__ = [name for name in dir() if not name.startswith("_")]
