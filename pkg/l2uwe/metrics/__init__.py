from l2uwe.metrics.objects import MetricsReport, PairReport
from l2uwe.metrics.scores import e_r_scores, gcf, mean_luminance, metrics_report

__all__ = ["MetricsReport", "PairReport", "e_r_scores", "gcf", "mean_luminance", "metrics_report"]
