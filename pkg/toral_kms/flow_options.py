"""Flow options shared by the pipeline flows and the subcommand CLI."""

from pathlib import Path

from ai_pipeline_core import FlowOptions
from pydantic import Field

from toral_kms.documents.manifest import ParameterValue
from toral_kms.kms_catalog.catalog import MIN_BETA


class ToralFlowOptions(FlowOptions):
    """Options provided to each flow of the toral-kms pipeline.

    Extends the base FlowOptions with the field specification and the search bounds.
    """

    field_spec: Path = Field(description="TOML or JSON field specification file")

    # Orbit and KMS bounds
    qmax: int = Field(default=3, ge=1, description="Largest orbit denominator")
    beta: float = Field(default=3.0, gt=MIN_BETA, description="Inverse temperature, β > 2")
    character_grid: int | None = Field(
        default=None, gt=0, description="Rational angles per free coordinate to sample χ at"
    )

    # Certification
    budget: int = Field(default=6, ge=1, description="Word-length budget of certificate searches")
    precision_bits: int = Field(default=64, ge=16, description="Starting working precision")
    max_precision_bits: int = Field(
        default=1024, ge=16, description="Precision at which certification gives up"
    )

    # Simulation
    seed: int = Field(default=0, description="Random walk seed")
    steps: int = Field(default=10_000, gt=0, description="Random walk length")

    threads: int = Field(default=1, ge=1, description="Worker threads across ideals")

    def report_parameters(self, *names: str) -> dict[str, ParameterValue]:
        """The named options as manifest parameters."""
        return {name: getattr(self, name) for name in names}
