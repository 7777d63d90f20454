"""
Noise model.
"""
from pydantic import BaseModel, ConfigDict, Field


class NoiseModel(BaseModel):
    """Error probabilities per fault location category."""
    model_config = ConfigDict(frozen=True)

    p_prep: float = Field(default=0.0, ge=0.0, le=1.0)
    p_meas: float = Field(default=0.0, ge=0.0, le=1.0)
    p_cx: float = Field(default=0.0, ge=0.0, le=1.0)
    p_idle: float = Field(default=0.0, ge=0.0, le=1.0)

    @classmethod
    def uniform(cls, p: float) -> "NoiseModel":
        """Every location fails with the same probability p."""
        return cls(p_prep=p, p_meas=p, p_cx=p, p_idle=p)

    @property
    def is_uniform(self) -> bool:
        return self.p_prep == self.p_meas == self.p_cx == self.p_idle

    @property
    def nominal_p(self) -> float:
        """The uniform p, or the mean of the four categories."""
        if self.is_uniform:
            return self.p_prep
        return (self.p_prep + self.p_meas + self.p_cx + self.p_idle) / 4

    @property
    def is_zero(self) -> bool:
        return self.p_prep == self.p_meas == self.p_cx == self.p_idle == 0.0
