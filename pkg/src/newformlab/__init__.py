"""Newform coefficient tables, Sato-Tate angles, and metric
Diophantine-approximation experiments on them."""

from .angles import (AngleRecord, angle, normalized_prime_coeff,
                     power_sequence, prime_power_coeff)
from .approx import (BadInfimum, BadPointReport, ScanReport, afz_scan,
                     bad_infimum, construct_bad_point, prime_power_search,
                     proof_lower_bound)
from .contfrac import (CertificationError, ContinuedFraction, expand,
                       is_badly_approximable_up_to, nearest_int_distance)
from .curves import ec_ap
from .equidist import (CM, CM_CONTINUOUS, SATO_TATE, MeasureSpec, cdf,
                       empirical_distribution, interval_count_ratio,
                       ks_statistic, plancherel, plancherel_density)
from .forms import (BUNDLED_FORMS, CURVE_11A, CURVE_32A, NewformSpec,
                    delta_form, elliptic_curve_form)
from .game import GameResult, GameState, avoidance_strategy, chase_strategy, play
from .inhomog import (ApproxWitness, fuchs_kim_partial_sums,
                      minkowski_witnesses, twisted_bad_inf)
from .rates import (Constant, InverseLinear, InverseLog, InverseLogPower,
                    InverseSquare, Squared, parse_rate)
from .series import tau_table
from .tables import CoefficientTable, build_table, divisor_function

__version__ = "0.1.0"
