"""telefid: two-qubit states as quantum-teleportation resources.

Canonical-form construction, closed-form maximal fidelity and fidelity
deviation, state properties (linear entropy, Bell-CHSH, concurrence,
negativity), optimal-state families for a fixed property value, and an
independent protocol-simulation oracle that cross-validates every
closed form.
"""

from .canonical import (
    CanonicalForm,
    canonical_state,
    canonicalize,
    compose_canonical,
)
from .errors import (
    DesignTooWeak,
    MismatchedProperty,
    NonHermitian,
    NotEntangled,
    NotPositive,
    OutOfRange,
    PreconditionFailed,
    StateFormatError,
    TelefidError,
    TraceNotOne,
)
from .kernel import (
    backend_name,
    hermitian_eig,
    is_rotation,
    is_special_unitary,
    rotation_to_spin,
    svd3_special,
)
from .metrics import TeleportMetrics, assess, fidelity_deviation, max_fidelity
from .optimal import (
    OptimalFamilySpec,
    OptimalityVerdict,
    SaturationCheck,
    check_fidelity_concurrence_saturation,
    check_optimal,
    largest_max_fidelity,
    optimal_for_chsh,
    optimal_for_concurrence,
    optimal_for_linear_entropy,
    unitary_covariance_check,
)
from .properties import (
    PropertyReport,
    chsh,
    concurrence,
    linear_entropy,
    negativity,
    property_report,
)
from .sim import (
    FidelityStats,
    QuadratureRule,
    fidelity_stats,
    fidelity_stats_mc,
    grid_verify_chsh_optimum,
    grid_verify_linear_entropy_optimum,
    icosahedron_rule,
    protocol_state,
    teleport_channel,
)
from .states import (
    HilbertSchmidt,
    hs_compose,
    hs_decompose,
    make_bell,
    make_pure_schmidt,
    make_werner,
    partial_transpose,
    random_unitary,
    read_state_file,
    sample_random_state,
    state_from_json,
    state_to_json,
    validate,
    write_state_file,
)

__version__ = "0.1.0"
