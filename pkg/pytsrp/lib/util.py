from typing import Optional

__doc__ = "Internal utilities."

# Number of decimals used when scores are printed or serialized
SCORE_DECIMALS = 6


class Singleton(type):
    """Metaclass to implement the singleton pattern for classes."""

    _instances = {}

    def __call__(cls, *args, **kwargs):
        if cls not in cls._instances:
            cls._instances[cls] = super(Singleton, cls).__call__(*args, **kwargs)
        return cls._instances[cls]


def round_score(value: Optional[float]) -> Optional[float]:
    """Round a score to the reporting precision; undefined scores stay None."""
    if value is None:
        return None
    return round(float(value), SCORE_DECIMALS)


def format_score(value: Optional[float]) -> str:
    """Format a score with a fixed number of decimals, or 'null' if undefined."""
    if value is None:
        return "null"
    return f"{value:.{SCORE_DECIMALS}f}"


def parse_beta_list(text: str) -> list[float]:
    """Parse a comma-separated list of positive beta values.

    Parameters
    ----------

    text: str
        Comma-separated values, e.g. "0.5,1,2".

    Returns
    -------

    betas: list[float]
        Parsed values, in the given order, without duplicates.
    """
    betas = []
    for token in text.split(","):
        token = token.strip()
        if token == "":
            continue
        beta = float(token)
        if not beta > 0:
            raise ValueError(f"Beta must be positive, got {token}.")
        if beta not in betas:
            betas.append(beta)
    if len(betas) == 0:
        raise ValueError("At least one beta value is required.")
    return betas
