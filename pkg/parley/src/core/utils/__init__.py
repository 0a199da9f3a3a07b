from parley.src.core.utils.logging_config import ColoredFormatter, setup_logging

__all__ = ["ColoredFormatter", "setup_logging"]
