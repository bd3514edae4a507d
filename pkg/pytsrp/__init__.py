__version__ = "0.1.0"
__doc__ = f"""
## API :: version {__version__}

Range-based precision and recall for time-series anomaly detection.
"""
__pdoc__ = {"tsrp": "Program entry point."}
