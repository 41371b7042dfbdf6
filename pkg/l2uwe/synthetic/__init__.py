from l2uwe.synthetic.darken import darken, illumination_falloff, make_clean_scene, synthetic_suite

__all__ = ["darken", "illumination_falloff", "make_clean_scene", "synthetic_suite"]
