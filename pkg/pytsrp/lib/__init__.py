__doc__ = "Internal classes and functions."
