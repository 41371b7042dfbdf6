from l2uwe.cci.contrast import ContrastCodeImage, compute_cci, local_std

__all__ = ["ContrastCodeImage", "compute_cci", "local_std"]
