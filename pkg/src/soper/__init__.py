"""Exact calculus on the super Riemann sphere: Grassmann-valued
superfields, the super Schwarzian, SPL2-superoper canonicalization, Miura
superopers with regular singularities, and the osp(2|1) Gaudin Bethe
system."""

__version__ = "0.1.0"

from .grassmann import GrassmannScalar
from .ratfunc import RationalFunction, TruncatedLaurent
from .superfield import (Superfield, SuperconformalMap, spl2_map,
                         super_schwarzian, transform_projective_connection,
                         check_superconformal)
from .osp import (SuperMatrix, basis_e, basis_f, basis_h, basis_E, basis_F,
                  super_bracket, supertrace, exp_nilpotent)
from .superoper import (SuperConnection, CanonicalOper, gauge_transform,
                        oper_condition_check, canonicalize,
                        square_connection, change_coordinates,
                        transform_to_infinity, residue_data)
from .gaudin import (BetheSystem, Site, Root, SolverConfig, HConnection,
                     build_gaudin_connection, miura_superoper,
                     bethe_residuals, solve_bethe, infinity_constraint,
                     apparent_singularity_check, body_oper_potential)
