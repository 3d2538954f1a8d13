"""mzlab: phase estimation in a two-mode Mach-Zehnder interferometer.

Truncated two-mode Fock simulation with exact block-diagonal optics,
photon-counting statistics (with loss and post-selection), and phase
uncertainty from both error propagation and the quantum Cramer-Rao bound.
"""

from .errors import (
    BasisMismatchError,
    ConfigError,
    DegenerateStateError,
    FilterExhaustedError,
    MzLabError,
    NoInformationError,
    NumericsError,
    TruncationError,
)
from .fock import (
    JmIndex,
    TwoModeState,
    basis_dim,
    counts_from_jm,
    inner,
    jm_from_counts,
    normalize,
    pair_index,
    total_photon_moments,
)
from .states import (
    SingleModeAmplitudes,
    SqueezeParams,
    auto_coherent,
    auto_squeezed,
    coherent_amplitudes,
    fock_after_symmetric_bs,
    noon_state,
    product_state,
    squeezed_vacuum_amplitudes,
    twin_fock,
)
from .optics import (
    BS1_SYMMETRIC,
    BS2_JX,
    BS2_JY,
    IDENTITY_BS,
    BeamSplitterSpec,
    WignerBlock,
    apply_angular,
    beam_splitter,
    expect_j,
    expect_j2,
    mode_matrix_of,
    phase_shift,
    wigner_d_block,
)
from .measurement import (
    CountDistribution,
    CountHistogram,
    ParityEstimate,
    jz_moments,
    lossy_distribution,
    parity_expectation,
    parity_from_histogram,
    photon_distribution,
    sample_counts,
    write_histogram_csv,
)
from .estimation import (
    SINGULAR,
    FisherReport,
    ObservableCurve,
    cramer_rao,
    delta_phi_error_propagation,
    is_singular,
    metric_distance,
    qfi_analytic,
    qfi_numeric,
    reference_limits,
    uncertainty_product,
)
from .scenarios import (
    NoonSamplingReport,
    QfiRow,
    ScenarioConfig,
    SweepRow,
    SweepTable,
    run_metric_check,
    run_noon_sampling,
    run_qfi_table,
    run_scenario_coherent,
    run_scenario_fock,
    run_scenario_noon,
    run_scenario_squeezed,
    run_scenario_twin_fock,
    run_sweep,
)

__version__ = "0.1.0"
