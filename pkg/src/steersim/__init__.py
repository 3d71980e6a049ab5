"""Multipartite steering and Svetlichny nonlocality of a damped GHZ mixture.

The package simulates a three-qubit noisy-GHZ mixture sent through a
memory-ful amplitude-damping reservoir on every qubit and an
accelerated-detector (Unruh) channel on the third, evaluates genuine
tripartite steering and Svetlichny nonlocality witnesses on the result, and
implements a weak-measurement/reversal protocol that partially recovers the
violations.  Independent closed-form references and a numeric reversal
optimizer cross-check each other; ``steersim verify`` runs the whole oracle
suite from the command line.
"""

from .analytic import (
    ClosedFormState,
    ReversalFormula,
    evolved_elements,
    gmn_closed_form,
    optimal_wmr_closed_form,
    recovered_elements,
    werner_reference_witnesses,
)
from .channels import (
    KrausChannel,
    RecoveryStrengths,
    ReservoirParams,
    UnruhParams,
    amplitude_damping,
    apply_selective,
    apply_tp,
    pt_coherence,
    unruh_channel,
    unruh_chi,
    wm_operator,
    wmr_operator,
)
from .errors import (
    ContractError,
    DensityMatrixError,
    DimensionError,
    DomainError,
    HermiticityError,
    PositivityError,
    PostSelectionError,
    TraceError,
)
from .pipeline import (
    ScenarioParams,
    SensitivityResult,
    baseline_state,
    evolve_baseline,
    evolve_recovery,
    optimal_wmr_numeric,
    recovery_state,
    scenario_state,
    sensitivity,
    violation_intervals,
)
from .qmat import DensityMatrix, check_density, embed_single, expval, tensor
from .states import ghz, werner
from .sweeps import Axis, SweepTable
from .figures import FIG_IDS, build_figure, render_svg
from .witnesses import GmnResult, GmsResult, gmn, gms, gms_spin_half, svetlichny_value

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "ClosedFormState",
    "ContractError",
    "DensityMatrix",
    "DensityMatrixError",
    "DimensionError",
    "DomainError",
    "FIG_IDS",
    "GmnResult",
    "GmsResult",
    "HermiticityError",
    "KrausChannel",
    "PositivityError",
    "PostSelectionError",
    "RecoveryStrengths",
    "ReservoirParams",
    "ReversalFormula",
    "ScenarioParams",
    "SensitivityResult",
    "SweepTable",
    "TraceError",
    "UnruhParams",
    "amplitude_damping",
    "apply_selective",
    "apply_tp",
    "baseline_state",
    "build_figure",
    "check_density",
    "embed_single",
    "evolve_baseline",
    "evolve_recovery",
    "evolved_elements",
    "expval",
    "ghz",
    "gmn",
    "gmn_closed_form",
    "gms",
    "gms_spin_half",
    "optimal_wmr_closed_form",
    "optimal_wmr_numeric",
    "pt_coherence",
    "recovered_elements",
    "recovery_state",
    "render_svg",
    "scenario_state",
    "sensitivity",
    "svetlichny_value",
    "tensor",
    "unruh_channel",
    "unruh_chi",
    "violation_intervals",
    "werner",
    "werner_reference_witnesses",
    "wm_operator",
    "wmr_operator",
    "__version__",
]
