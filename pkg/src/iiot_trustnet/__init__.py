"""Trust-managed IIoT network simulator and analytics."""

from .coordinator import (
    AdmissionStatus,
    CoordinatorRegistry,
    ElectionError,
    RegistrationError,
    RegistryEntry,
    TxResult,
    elect_cid,
)
from .ledger import (
    Block,
    Ledger,
    LedgerIntegrityError,
    Phase,
    Record,
    TamperKind,
    dump_chain,
    hash_block,
    load_chain,
    tamper,
    validate_chain,
)
from .sim import (
    AlterationResult,
    ConfigError,
    RunMetrics,
    SimConfig,
    World,
    attempt_alteration,
    build_network,
    inject_new_device,
    run,
    step,
    sweep_attack_strength,
)
from .threat import (
    ChannelParams,
    ErrorModel,
    HypothesisModel,
    attack_strength,
    compromised_throughput,
    db_to_linear,
    hypothesis_probabilities,
    probability_of_error,
)
from .trust import (
    DeviceClass,
    DeviceStats,
    GracePeriodError,
    HealthColor,
    McVerdict,
    Presence,
    Role,
    Thresholds,
    TrustState,
    classify_existing_device,
    classify_health,
    classify_new_device,
    classify_presence,
    compute_energy,
    compute_monitoring_capability,
    compute_trust_factor,
    evaluate_mc,
    init_trust,
    update_misbehavior,
)

__version__ = "0.1.0"
