"""
parley: two learning agents, a seeker and a provider, learning to talk to each other.

Trains tabular WoLF-PHC (or PHC / Q-learning) dialogue policies by self-play
over a noisy template-language channel and evaluates the resulting pairs.
"""

__version__ = "0.1.0"
__license__ = "MIT"

from parley.cli.main import cli

__all__ = ["cli", "__version__"]
