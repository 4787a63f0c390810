"""fracpainleve: singularity screening and certified solving for scalar
Caputo fractional ODEs.

The package splits into small, independently testable layers:

* :mod:`~fracpainleve.specfun` -- signed-log Gamma machinery and the
  two-parameter Mittag-Leffler function.
* :mod:`~fracpainleve.fracops` -- the exact Caputo power rule plus discrete
  fractional operators used as cross-checks.
* :mod:`~fracpainleve.painleve` -- the singularity test engine (leading
  balance, resonances, compatibility recursion, multi-term cascade).
* :mod:`~fracpainleve.existence` -- contraction certificates for local
  existence and uniqueness.
* :mod:`~fracpainleve.solvers` -- certified Picard iteration, Mittag-Leffler
  closed forms and a predictor-corrector oracle.
* :mod:`~fracpainleve.cli` -- the ``fracpainleve`` command-line front end.
"""

__version__ = "0.1.0"

from .existence import (  # noqa: F401
    ExistenceCertificate,
    IvpProblem,
    certify_linear,
    certify_nonlinear,
)
from .fracops import (  # noqa: F401
    GridFunction,
    PowerTerm,
    caputo_l1,
    caputo_power,
    rl_integral,
)
from .painleve import (  # noqa: F401
    MultiTermLinearFde,
    PainleveReport,
    PowerLawFde,
    RhsTerm,
    analyze_multiterm,
    run_test,
)
from .solvers import (  # noqa: F401
    SolutionTrajectory,
    abm_solve,
    picard_solve,
    solve_linear_ml,
)
from .specfun import (  # noqa: F401
    GammaValue,
    MittagLefflerParams,
    gamma,
    gamma_ratio,
    mittag_leffler,
)
