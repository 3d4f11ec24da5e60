__version__ = "0.1.0"

from ._errors import (BirationalGrowthError, ZeroInverse, ReducibleModulus, NotDivisible, DegreeMismatch,
                      InvalidParameter, ResourceLimit, NonLinearFactor, NotCollapsed, NoInverseAvailable,
                      ExtensionNeeded, NonIsolatedFixedPoints, TowerTooDeep, NotOnCollapsedCurve, IndeterminateJet,
                      InconsistentChain, UnsupportedListSize, InsufficientData, UnclassifiableSpectrum,
                      DegenerateSolutionSpace, NotFiniteOrder, ParseError, ValidationError, BadReduction)
from ._field import QQ, NumberField, FieldElem, field_inv, as_fraction
from ._poly import (UPoly, HPoly, APoly, Interval, poly_gcd, poly_div_exact, poly_subst, apoly_gcd, squarefree_decomp,
                    cyclotomic_test, sturm_isolate)
from ._maps import (PPoint, BiMap, FamilyA, FamilyB, Raw, INDETERMINATE, make_family_A, make_family_B,
                    make_fractional_map, normalize_family_B, map_evaluate, map_compose, map_power, map_inverse,
                    degree_sequence, jacobian_determinant, exceptional_locus, collapse_image, fixed_points,
                    maps_equal, is_identity)
from ._factor import factor_in_field, roots_in_field
from ._orbits import JetPoint, BlowupRegistry, OrbitRecord, jet_evaluate, fiber_direction_image, track_orbit, se_profile
from ._entropy import (OrbitList, OrbitListSet, GrowthClass, DynamicalDegree, build_lists, list_polynomials,
                       char_poly_bk, fit_recurrence, largest_real_root, classify_growth, dynamical_degree,
                       degree_formula)
from ._fibrations import (Mobius, Fibration, check_fibration, check_first_integral, find_mobius,
                          build_first_integral, transversality_check, curve_pullback, search_invariant_curves,
                          check_periodicity, fibration_from_json)
from ._classifier import (CaseLabel, CatalogEntry, condition_k, find_k, find_p_A, find_p_B, classify_map,
                          zero_entropy_catalog, catalog_entry, match_catalog)
from ._specs import MapSpec, parse_map_spec, map_spec_of
from ._settings import Settings, load_settings
from ._terminal import command_line_interface, run_command
