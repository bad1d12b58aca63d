"""Wi-Fi proximity as a second authentication factor, end to end.

A seedable RF simulator synthesizes beacon observations, six classifiers
(written from scratch) decide whether two devices are co-located, an
authentication service runs the login protocol with continuous
re-verification, and an attack bench measures robustness.
"""

__version__ = "0.1.0"

from .config import SimConfig, load_default_config
from .dataset import Dataset, Sample

__all__ = ["SimConfig", "load_default_config", "Dataset", "Sample", "__version__"]
