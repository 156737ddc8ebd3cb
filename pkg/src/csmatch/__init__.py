"""QoS-based cloud service matchmaking on a finite-domain constraint solver."""

__version__ = "0.1.0"
