"""
Published device summaries: mean error <p> and spread sigma (percent) and
quantum volume, as reported for the honeycomb and Color-code hardware runs.

These are documentation, not test oracles: the raw snapshots behind them are
not available. The second table lists ibmq_montreal twice; both rows are kept.
"""
from typing import Optional

from pydantic import BaseModel, ConfigDict

from hexfloquet.models.codes import CodeFamily


class ReferenceEntry(BaseModel):
    """One row of a published device table."""
    model_config = ConfigDict(frozen=True)

    device: str
    mean_percent: float
    sigma_percent: float
    quantum_volume: Optional[int] = None


HONEYCOMB_DEVICES: tuple[ReferenceEntry, ...] = (
    ReferenceEntry(device="ibm_hanoi", mean_percent=1.32, sigma_percent=1.39, quantum_volume=64),
    ReferenceEntry(device="ibm_auckland", mean_percent=1.50, sigma_percent=1.71, quantum_volume=64),
    ReferenceEntry(device="ibmq_kolkata", mean_percent=1.76, sigma_percent=3.14, quantum_volume=128),
    ReferenceEntry(device="ibm_peekskill", mean_percent=1.81, sigma_percent=2.37),
    ReferenceEntry(device="ibmq_montreal", mean_percent=2.26, sigma_percent=2.09, quantum_volume=128),
    ReferenceEntry(device="ibmq_mumbai", mean_percent=3.00, sigma_percent=1.73, quantum_volume=128),
    ReferenceEntry(device="ibmq_brooklyn", mean_percent=3.02, sigma_percent=3.33, quantum_volume=32),
    ReferenceEntry(device="ibmq_washington", mean_percent=3.13, sigma_percent=5.39, quantum_volume=64),
    ReferenceEntry(device="ibmq_toronto", mean_percent=4.72, sigma_percent=6.37, quantum_volume=32),
)

COLOR_CODE_DEVICES: tuple[ReferenceEntry, ...] = (
    ReferenceEntry(device="ibm_hanoi", mean_percent=1.40, sigma_percent=1.63, quantum_volume=64),
    ReferenceEntry(device="ibmq_kolkata", mean_percent=1.47, sigma_percent=1.80, quantum_volume=128),
    ReferenceEntry(device="ibm_auckland", mean_percent=1.82, sigma_percent=3.36, quantum_volume=64),
    ReferenceEntry(device="ibm_peekskill", mean_percent=2.16, sigma_percent=3.06),
    ReferenceEntry(device="ibmq_montreal", mean_percent=2.26, sigma_percent=2.09, quantum_volume=128),
    ReferenceEntry(device="ibmq_mumbai", mean_percent=2.38, sigma_percent=2.04, quantum_volume=128),
    ReferenceEntry(device="ibmq_brooklyn", mean_percent=2.78, sigma_percent=2.96, quantum_volume=32),
    ReferenceEntry(device="ibm_washington", mean_percent=3.10, sigma_percent=4.78, quantum_volume=64),
    ReferenceEntry(device="ibmq_montreal", mean_percent=4.36, sigma_percent=7.82, quantum_volume=128),
)


def reference_table(code: CodeFamily) -> tuple[ReferenceEntry, ...]:
    return HONEYCOMB_DEVICES if code == CodeFamily.HONEYCOMB else COLOR_CODE_DEVICES
