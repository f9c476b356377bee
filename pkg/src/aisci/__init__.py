"""Corpus analytics for measuring the direct and potential impact of AI on research fields."""

__version__ = "0.1.0"
