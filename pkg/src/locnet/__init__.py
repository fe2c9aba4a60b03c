"""Functional-network early warning of vibration localization in Duffing rings.

The toolkit simulates a ring of mass-coupled Duffing oscillators,
infers a directed functional network from the displacement series of
each oscillator (cross-recurrence triangle closure), and tracks node
in-degrees and strongly connected components while one oscillator's
mass is swept downward.  A node whose in-degree cascades to zero and
which splits off the giant component marks imminent vibration
localization well before the oscillation amplitude betrays it.
"""

__version__ = "0.1.0"

from .model import (
    ModelParams,
    assemble_matrices,
    equations_of_motion,
    nonlinear_force,
    perturb_params,
)
from .integrate import (
    IntegrationError,
    IntegratorConfig,
    NonFiniteStateError,
    StepBudgetExceededError,
    StepSizeUnderflowError,
    Trajectory,
    integrate,
    integrate_system,
)
from .recurrence import (
    CrossRecurrenceMatrix,
    DegenerateSeriesError,
    RecurrenceConfig,
    coupling_measures,
    cross_clustering,
    cross_recurrence_matrix,
    cross_transitivity,
    embed,
    recurrence_matrix,
    threshold_for_rate,
)
from .netinfer import (
    CouplingDirection,
    FunctionalNetwork,
    PairMeasures,
    build_functional_network,
    infer_network,
    infer_pair_direction,
)
from .graph import (
    PartitionMismatchError,
    SCCPartition,
    condense,
    in_degrees,
    strongly_connected_components,
)
from .fixtures import FIXTURE_NAMES, reference_ic
from .experiment import (
    DetectionReport,
    EnsembleDegreeStats,
    ExperimentConfig,
    SweepResult,
    add_noise,
    degree_stats,
    detect_onset,
    localization_oracle,
    run_case,
    sample_initial_conditions,
    scc_trace,
    sweep,
)
from .config import ConfigError, dump_config, load_config, loads_config
from .manifest import RunManifest, atomic_write_text, sha256_file, write_outputs
from .charts import chart_degree_bands, chart_scc_trace
from .validate import SIGN_CONVENTION, FixtureResult, run_all

__all__ = [
    "__version__",
    "ModelParams",
    "assemble_matrices",
    "equations_of_motion",
    "nonlinear_force",
    "perturb_params",
    "IntegratorConfig",
    "Trajectory",
    "IntegrationError",
    "NonFiniteStateError",
    "StepSizeUnderflowError",
    "StepBudgetExceededError",
    "integrate",
    "integrate_system",
    "RecurrenceConfig",
    "CrossRecurrenceMatrix",
    "DegenerateSeriesError",
    "embed",
    "threshold_for_rate",
    "cross_recurrence_matrix",
    "recurrence_matrix",
    "cross_transitivity",
    "cross_clustering",
    "coupling_measures",
    "CouplingDirection",
    "PairMeasures",
    "FunctionalNetwork",
    "infer_pair_direction",
    "infer_network",
    "build_functional_network",
    "SCCPartition",
    "PartitionMismatchError",
    "in_degrees",
    "strongly_connected_components",
    "condense",
    "FIXTURE_NAMES",
    "reference_ic",
    "ExperimentConfig",
    "EnsembleDegreeStats",
    "SweepResult",
    "DetectionReport",
    "sample_initial_conditions",
    "add_noise",
    "localization_oracle",
    "run_case",
    "degree_stats",
    "sweep",
    "detect_onset",
    "scc_trace",
    "ConfigError",
    "load_config",
    "loads_config",
    "dump_config",
    "RunManifest",
    "atomic_write_text",
    "sha256_file",
    "write_outputs",
    "chart_degree_bands",
    "chart_scc_trace",
    "FixtureResult",
    "SIGN_CONVENTION",
    "run_all",
]
