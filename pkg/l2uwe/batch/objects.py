import json
from typing import Literal

from pydantic import BaseModel, Field, model_validator

from l2uwe.dehaze.objects import DehazeParams
from l2uwe.metrics.objects import MetricsReport


class EnhanceConfig(BaseModel):
    m_detail: int = Field(default=5, ge=1, description="Multiplication factor of the detail-preserving input")
    m_bright: int = Field(default=30, ge=1, description="Multiplication factor of the darkness-removing input")
    m_extra: list[int] = Field(
        default_factory=list,
        description="Further multiplication factors; each adds one more fusion input",
    )
    tolerance: float = Field(
        default=0.0,
        ge=0.0,
        description="Per-code discount of the window standard deviation favouring larger patches",
    )
    omega: float = Field(default=0.95, ge=0.0, le=1.0, description="Haze removal strength")
    t0: float = Field(default=0.1, gt=0.0, lt=1.0, description="Lower bound on transmission")
    levels: int = Field(default=5, ge=1, le=12, description="Fusion pyramid depth")
    lighting_mode: Literal["local_cg", "global"] = Field(
        default="local_cg",
        description="local_cg: contrast-guided local lighting field; global: single brightest-pixel light",
    )
    atmosphere_fraction: float = Field(
        default=0.002,
        gt=0.0,
        le=0.05,
        description="Share of brightest dark-channel pixels used by the global lighting model",
    )
    guided_radius: int = Field(default=16, ge=1, description="Guided filter window radius in pixels")
    guided_eps: float = Field(default=1e-3, gt=0.0, description="Guided filter regularizer")
    guided_subsample: int = Field(default=4, ge=1, description="Fast guided filter subsampling factor")
    dump_intermediates: bool = Field(default=False, description="Write every intermediate image")
    metrics: bool = Field(default=False, description="Score each output against its input")

    @model_validator(mode="before")
    @classmethod
    def parse_json_string(cls, data):
        """Accept a JSON string as well as a dict."""
        if isinstance(data, str):
            try:
                return json.loads(data)
            except json.JSONDecodeError as e:
                raise ValueError(f"Invalid JSON string: {e}")
        return data

    @model_validator(mode="after")
    def check_multiplication_factors(self):
        if self.m_detail >= self.m_bright:
            raise ValueError(f"m_detail ({self.m_detail}) must be smaller than m_bright ({self.m_bright})")
        factors = self.m_values()
        if any(m < 1 for m in self.m_extra):
            raise ValueError("m_extra values must be at least 1")
        if len(set(factors)) != len(factors):
            raise ValueError(f"multiplication factors must be distinct, got {factors}")
        return self

    def m_values(self) -> list[int]:
        return [self.m_detail, self.m_bright, *self.m_extra]

    def dehaze_params(self) -> DehazeParams:
        return DehazeParams(
            omega=self.omega,
            t0=self.t0,
            guided_radius=self.guided_radius,
            guided_eps=self.guided_eps,
            guided_subsample=self.guided_subsample,
        )


class ImageRecord(BaseModel):
    input_path: str
    output_path: str | None = None
    status: Literal["success", "error"] = "success"
    error: str | None = None
    config: EnhanceConfig | None = Field(default=None, description="Resolved configuration used for this image")
    metrics: MetricsReport | None = None


class RunManifest(BaseModel):
    """
    Record of one batch run.

    Timing lives in ``timings`` and ``created_at`` only, so two runs of the
    same inputs and config differ nowhere else.
    """

    config: EnhanceConfig
    records: list[ImageRecord] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict, description="Wall-clock seconds per input path")
    created_at: str | None = None

    @property
    def succeeded(self) -> int:
        return sum(1 for r in self.records if r.status == "success")

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if r.status == "error")
