__doc__ = "Command line interface."
