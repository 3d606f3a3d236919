"""Path-map based vehicle tracking and spatiotemporal collision prediction."""

__version__ = "0.1.0"
