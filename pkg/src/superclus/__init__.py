"""superclus: exact arithmetic for cluster superalgebras.

Supercommutative Laurent polynomials with Grassmann generators, extended
quiver mutation with the Laurent phenomenon checked by exact division,
mechanical invariance checks for the presymplectic 2-form, superfrieze
construction, and dual-number integer sequences.
"""

from .superring import (
    QQ,
    NotAUnitError,
    NotDivisibleError,
    ParseError,
    SuperPolynomial,
    SuperRational,
    derivative,
    exact_div,
    generators,
    invert,
    parse,
    render,
    substitute,
)
from .quiver import (
    ExtendedQuiver,
    Seed,
    RationalSeed,
    MutationForbiddenError,
    NonLaurentError,
    explore,
    lemma_check,
    odd_term,
    run_cyclic,
)
from .forms import (
    DifferentialForm,
    check_invariance,
    d,
    invariance_defect,
    omega_of,
    pullback,
    wedge,
)
from .frieze import (
    OSpMatrix,
    SchrodingerEq,
    SuperFrieze,
    build_frieze,
    check_glide,
    diamond_solve_east,
    frieze_vs_cluster,
    monodromy_expected,
    osp_complete,
    schrodinger_extract,
    verify_solutions,
)
from .sequences import (
    DualNumber,
    LinearForm,
    fib_ext,
    integrality_check,
    kronecker_family,
    somos4_ext,
    somos4_ext_variant,
)

__version__ = "0.1.0"
