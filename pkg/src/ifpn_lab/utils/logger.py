import logging
import sys

_ROOT = "ifpn_lab"
_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def get_logger(name: str) -> logging.Logger:
    if not name.startswith(_ROOT):
        name = f"{_ROOT}.{name}"
    return logging.getLogger(name)


def configure_logging(verbosity: int = 0) -> logging.Logger:
    """Attach a single stderr handler; stdout stays reserved for reports."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG

    root = logging.getLogger(_ROOT)
    root.setLevel(level)
    if not any(getattr(h, "_ifpn_handler", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler._ifpn_handler = True
        root.addHandler(handler)
    return root
