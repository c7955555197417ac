"""Γ-group presentations, cohomological multiplicities and random group models at desk scale."""

__version__ = "0.1.0"
