"""Console logging through rich."""

import logging

from rich.logging import RichHandler

_ROOT = "taukernel"


def configure_logging(level: str | int = "WARNING") -> logging.Logger:
    """Attach a single rich handler to the package logger.

    Calling this more than once only updates the level.

    Parameters
    ----------
    level : str or int
        Standard logging level name or number.

    Returns
    -------
    logging.Logger
        The ``taukernel`` logger.
    """
    logger = logging.getLogger(_ROOT)
    if isinstance(level, str):
        level = level.upper()
    logger.setLevel(level)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(
            show_path=False, rich_tracebacks=False, markup=False, log_time_format="[%X]"
        )
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
    return logger


__all__ = ["configure_logging"]
