"""Configuration management for the opinion calculator CLI."""

import logging
import os

from pydantic import BaseModel, Field

from .fission import DEFAULT_GAMMA_C
from .fusion import DEFAULT_GAMMA
from .models import DEFAULT_PRIOR_WEIGHT

logger = logging.getLogger(__name__)


class CalcConfig(BaseModel):
    """Defaults for the command-line front end."""

    prior_weight: float = Field(
        default=DEFAULT_PRIOR_WEIGHT, gt=0, description="Prior weight W used when evaluating via evidence"
    )
    gamma: float = Field(default=DEFAULT_GAMMA, ge=0.0, le=1.0, description="Default gamma for dogmatic fusion")
    gamma_c: float = Field(default=DEFAULT_GAMMA_C, ge=0.0, description="Default gamma_c for dogmatic fission")
    log_level: str = Field(default="WARNING", description="Logging level")

    @classmethod
    def from_env(cls) -> "CalcConfig":
        """Create configuration from environment variables."""
        config = cls(
            prior_weight=float(os.getenv("OPINION_CALC_PRIOR_WEIGHT", str(DEFAULT_PRIOR_WEIGHT))),
            gamma=float(os.getenv("OPINION_CALC_GAMMA", str(DEFAULT_GAMMA))),
            gamma_c=float(os.getenv("OPINION_CALC_GAMMA_C", str(DEFAULT_GAMMA_C))),
            log_level=os.getenv("OPINION_CALC_LOG_LEVEL", "WARNING").upper(),
        )

        logger.debug(
            f"Configuration loaded - prior_weight: {config.prior_weight}, gamma: {config.gamma}, "
            f"gamma_c: {config.gamma_c}, log_level: {config.log_level}"
        )

        return config
