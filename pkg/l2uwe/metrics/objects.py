from pydantic import BaseModel, Field


class MetricsReport(BaseModel):
    """
    Quality scores of one enhanced image.

    Attributes
    ----------
    gcf : float
        Global contrast factor of the enhanced image
    e_score : float, optional
        Relative increase of visible edges; None when the original has none
    r_score : float
        Geometric mean gradient ratio on visible edges of the enhanced image
    mean_luminance_in : float
        Mean luminance of the original
    mean_luminance_out : float
        Mean luminance of the enhanced image
    """

    gcf: float = Field(ge=0.0)
    e_score: float | None = Field(default=None, ge=-1.0)
    r_score: float = Field(gt=0.0)
    mean_luminance_in: float = Field(ge=0.0, le=1.0)
    mean_luminance_out: float = Field(ge=0.0, le=1.0)


class PairReport(BaseModel):
    name: str
    original_path: str
    enhanced_path: str
    metrics: MetricsReport
